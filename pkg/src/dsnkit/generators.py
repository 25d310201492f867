"""Seeded instance generators: ladders, bidirected grids, random digraphs.

Every generator is a pure function of its arguments, so emitted files are
byte-stable across runs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .dsn import DsnInstance
from .errors import InputError
from .graphs import WeightedDigraph
from .ladders import LadderSpec, ladder_corner_requests, make_ladder

Metadata = Dict[str, str]


def gen_ladder(n: int, identified: Iterable[int] = ()) -> Tuple[DsnInstance, Metadata]:
    """Ladder host with the four-corner strongly-connected request set."""
    spec = LadderSpec(n, frozenset(identified))
    inst = DsnInstance(make_ladder(spec), ladder_corner_requests(spec))
    meta = {
        "generator": f"ladder n={n} I={sorted(spec.identified) or '[]'}",
        "genus": "0",
    }
    return inst, meta


def gen_grid(
    width: int, height: int, q: int = 3, p: Optional[int] = None, seed: int = 0
) -> Tuple[DsnInstance, Metadata]:
    """Bidirected width x height grid with unit weights and seeded random
    requests over q distinct terminals."""
    if width < 1 or height < 1:
        raise InputError("grid dimensions must be positive")
    n = width * height
    if not 2 <= q <= n:
        raise InputError(f"need 2 <= q <= {n} terminals")
    arcs = {}
    for y in range(height):
        for x in range(width):
            v = y * width + x
            if x + 1 < width:
                arcs[(v, v + 1)] = Fraction(1)
                arcs[(v + 1, v)] = Fraction(1)
            if y + 1 < height:
                arcs[(v, v + width)] = Fraction(1)
                arcs[(v + width, v)] = Fraction(1)
    rng = random.Random(seed)
    terminals = sorted(rng.sample(range(n), q))
    if p is None:
        # a request cycle through the terminals: strongly-connected flavour
        requests = {
            (terminals[i], terminals[(i + 1) % q]) for i in range(q)
        }
    else:
        pairs = [(s, t) for s in terminals for t in terminals if s != t]
        if p > len(pairs):
            raise InputError(f"at most {len(pairs)} distinct requests exist")
        requests = set(rng.sample(pairs, p))
    inst = DsnInstance(WeightedDigraph(range(n), arcs), requests)
    meta = {
        "generator": f"grid {width}x{height} q={q} seed={seed}",
        "genus": "0",
        "seed": str(seed),
    }
    return inst, meta


def gen_random(
    n: int, m: int, q: int, p: int, seed: int, max_weight: int = 9
) -> Tuple[DsnInstance, Metadata]:
    """Random simple digraph with integer weights in [1, max_weight]."""
    if n < 2:
        raise InputError("need at least 2 vertices")
    if not 0 <= m <= n * (n - 1):
        raise InputError(f"need 0 <= m <= {n * (n - 1)} arcs")
    if not 2 <= q <= n:
        raise InputError(f"need 2 <= q <= {n} terminals")
    if not 1 <= p <= q * (q - 1):
        raise InputError(f"need 1 <= p <= {q * (q - 1)} requests")
    rng = random.Random(seed)
    all_arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = rng.sample(all_arcs, m)
    arcs = {a: Fraction(rng.randint(1, max_weight)) for a in sorted(chosen)}
    terminals = sorted(rng.sample(range(n), q))
    pairs = [(s, t) for s in terminals for t in terminals if s != t]
    requests = set(rng.sample(pairs, p))
    inst = DsnInstance(WeightedDigraph(range(n), arcs), requests)
    meta = {
        "generator": f"random n={n} m={m} q={q} p={p} seed={seed}",
        "seed": str(seed),
    }
    return inst, meta
