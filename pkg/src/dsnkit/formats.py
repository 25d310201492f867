"""Line-oriented instance files, DIMACS-adjacent.

DSN: `c key value` metadata, `p dsn n m q p` header, `a u v num/den` arcs,
`r s t` requests.  PSI: `p psi nG mG kH mH`, `eg u v`, `eh x y`, `map u x`.
Files are 1-based; in-memory objects are 0-based.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .dsn import DsnInstance
from .errors import ParseError
from .graphs import UndirectedGraph, WeightedDigraph
from .reduction import PsiInstance

Metadata = Dict[str, str]


def _tokenized(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        yield lineno, line.split()


def _int_field(tok: str, lineno: int, col: int, lo: int = None, hi: int = None) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, col)
    if lo is not None and value < lo:
        raise ParseError(f"value {value} below minimum {lo}", lineno, col)
    if hi is not None and value > hi:
        raise ParseError(f"value {value} above maximum {hi}", lineno, col)
    return value


def _weight_field(tok: str, lineno: int, col: int) -> Fraction:
    try:
        w = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational weight, got {tok!r}", lineno, col)
    if w <= 0:
        raise ParseError(f"weight must be positive, got {tok}", lineno, col)
    return w


def parse_dsn(text: str) -> Tuple[DsnInstance, Metadata]:
    meta: Metadata = {}
    header = None
    arcs: Dict[Tuple[int, int], Fraction] = {}
    requests = set()
    for lineno, toks in _tokenized(text):
        kind = toks[0]
        if kind == "c":
            if len(toks) >= 2:
                meta[toks[1]] = " ".join(toks[2:])
            continue
        if kind == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) != 6 or toks[1] != "dsn":
                raise ParseError("header must be `p dsn n m q p`", lineno)
            header = tuple(_int_field(t, lineno, i + 3, lo=0) for i, t in enumerate(toks[2:]))
            continue
        if header is None:
            raise ParseError(f"record {kind!r} before the header", lineno)
        n = header[0]
        if kind == "a":
            if len(toks) != 4:
                raise ParseError("arc record must be `a u v w`", lineno)
            u = _int_field(toks[1], lineno, 3, lo=1, hi=n)
            v = _int_field(toks[2], lineno, 5, lo=1, hi=n)
            if u == v:
                raise ParseError(f"loop arc at vertex {u}", lineno, 3)
            w = _weight_field(toks[3], lineno, 7)
            if (u - 1, v - 1) in arcs:
                raise ParseError(f"duplicate arc {u} {v}", lineno, 3)
            arcs[(u - 1, v - 1)] = w
        elif kind == "r":
            if len(toks) != 3:
                raise ParseError("request record must be `r s t`", lineno)
            s = _int_field(toks[1], lineno, 3, lo=1, hi=n)
            t = _int_field(toks[2], lineno, 5, lo=1, hi=n)
            if s == t:
                raise ParseError(f"request from {s} to itself", lineno, 3)
            requests.add((s - 1, t - 1))
        else:
            raise ParseError(f"unknown record kind {kind!r}", lineno)
    if header is None:
        raise ParseError("missing `p dsn` header", 1)
    n, m, q, p = header
    if len(arcs) != m:
        raise ParseError(f"header promises {m} arcs, file has {len(arcs)}", 1)
    if len(requests) != p:
        raise ParseError(f"header promises {p} requests, file has {len(requests)}", 1)
    inst = DsnInstance(WeightedDigraph(range(n), arcs), requests)
    if inst.q != q:
        raise ParseError(f"header promises {q} terminals, requests touch {inst.q}", 1)
    return inst, meta


def emit_dsn(inst: DsnInstance, meta: Metadata = None) -> str:
    verts = sorted(inst.host.vertices)
    index = {v: i + 1 for i, v in enumerate(verts)}
    lines: List[str] = []
    for key in sorted(meta or {}):
        lines.append(f"c {key} {meta[key]}".rstrip())
    lines.append(f"p dsn {len(verts)} {inst.host.m} {inst.q} {inst.p}")
    for (u, v), w in sorted(inst.host.arcs().items()):
        lines.append(f"a {index[u]} {index[v]} {w.numerator}/{w.denominator}")
    for s, t in inst.sorted_requests():
        lines.append(f"r {index[s]} {index[t]}")
    return "\n".join(lines) + "\n"


def parse_psi(text: str) -> Tuple[PsiInstance, Metadata]:
    meta: Metadata = {}
    header = None
    eg = set()
    eh = set()
    classmap: Dict[int, int] = {}
    for lineno, toks in _tokenized(text):
        kind = toks[0]
        if kind == "c":
            if len(toks) >= 2:
                meta[toks[1]] = " ".join(toks[2:])
            continue
        if kind == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) != 6 or toks[1] != "psi":
                raise ParseError("header must be `p psi nG mG kH mH`", lineno)
            header = tuple(_int_field(t, lineno, i + 3, lo=0) for i, t in enumerate(toks[2:]))
            continue
        if header is None:
            raise ParseError(f"record {kind!r} before the header", lineno)
        nG, _, kH, _ = header
        if kind == "eg" or kind == "eh":
            if len(toks) != 3:
                raise ParseError(f"edge record must be `{kind} u v`", lineno)
            hi = nG if kind == "eg" else kH
            u = _int_field(toks[1], lineno, 4, lo=1, hi=hi)
            v = _int_field(toks[2], lineno, 6, lo=1, hi=hi)
            if u == v:
                raise ParseError(f"loop edge at {u}", lineno, 4)
            (eg if kind == "eg" else eh).add((min(u, v) - 1, max(u, v) - 1))
        elif kind == "map":
            if len(toks) != 3:
                raise ParseError("class record must be `map u x`", lineno)
            u = _int_field(toks[1], lineno, 5, lo=1, hi=nG)
            x = _int_field(toks[2], lineno, 7, lo=1, hi=kH)
            if u - 1 in classmap:
                raise ParseError(f"vertex {u} mapped twice", lineno, 5)
            classmap[u - 1] = x - 1
        else:
            raise ParseError(f"unknown record kind {kind!r}", lineno)
    if header is None:
        raise ParseError("missing `p psi` header", 1)
    nG, mG, kH, mH = header
    if len(eg) != mG:
        raise ParseError(f"header promises {mG} host edges, file has {len(eg)}", 1)
    if len(eh) != mH:
        raise ParseError(f"header promises {mH} pattern edges, file has {len(eh)}", 1)
    if len(classmap) != nG:
        raise ParseError(f"{nG - len(classmap)} host vertices lack a class", 1)
    psi = PsiInstance(UndirectedGraph(range(nG), eg), UndirectedGraph(range(kH), eh), classmap)
    return psi, meta


def emit_psi(psi: PsiInstance, meta: Metadata = None) -> str:
    lines: List[str] = []
    for key in sorted(meta or {}):
        lines.append(f"c {key} {meta[key]}".rstrip())
    g, h = psi.hostG, psi.patternH
    lines.append(f"p psi {g.n} {g.m} {h.n} {h.m}")
    for u, v in sorted(g.edges):
        lines.append(f"eg {u + 1} {v + 1}")
    for u, v in sorted(h.edges):
        lines.append(f"eh {u + 1} {v + 1}")
    for u in sorted(psi.classmap):
        lines.append(f"map {u + 1} {psi.classmap[u] + 1}")
    return "\n".join(lines) + "\n"
