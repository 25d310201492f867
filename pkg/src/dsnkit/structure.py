"""Structural pipeline over inclusion-minimal solutions.

Degree-2 suppression, important and marked vertices along request paths,
ladder-segment detection, protrusion replacement and the length-reduction
loop, ending in a treewidth/diameter certificate.  Everything here operates
on standalone digraphs because replacements introduce vertices that are not
part of any host graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .dsn import (
    DsnInstance,
    Request,
    SolutionSubgraph,
    is_inclusion_minimal_graph,
    normalize_requests_graph,
    violated_request,
)
from .errors import (
    CapacityError,
    InconsistencyError,
    InputError,
    InvariantError,
    PreconditionError,
)
from .graphs import (
    Arc,
    DirectedPath,
    WeightedDigraph,
    diameter,
    reaches,
    shortest_path,
    treewidth_exact,
    treewidth_upper_bound,
)
from .ladders import LadderSpec, LadderVerdict, is_ladder_subdivision, ladder_corners, make_ladder

PROTRUSION_MAX_INTERIOR = 14


# ---------------------------------------------------------------------------
# degree-2 suppression


def suppress_degree_two(
    graph: WeightedDigraph, terminals: Iterable[int]
) -> Tuple[WeightedDigraph, Dict[Arc, Tuple[int, ...]]]:
    """Exhaustively remove non-terminal pass-through vertices with exactly
    two neighbors, merging their arcs.

    Returns the suppressed graph and a map from created arcs to the vertex
    sequence of the subpath they replace, so results lift back.  Created
    arcs carry the summed weight of the replaced arcs."""
    T = set(terminals)
    g = graph
    expansion: Dict[Arc, Tuple[int, ...]] = {}

    def path_of(u: int, v: int) -> Tuple[int, ...]:
        return expansion.get((u, v), (u, v))

    while True:
        victim = None
        for v in g.vertices:
            if v in T:
                continue
            ns = g.neighbors(v)
            if len(ns) == 1:
                raise InconsistencyError(
                    f"non-terminal {v} has a single neighbor; input is not inclusion-minimal"
                )
            if len(ns) == 2:
                victim = v
                break
        if victim is None:
            return g, expansion
        v = victim
        u, w = g.neighbors(v)
        arcs = g.arcs()
        created: List[Tuple[Arc, Fraction, Tuple[int, ...]]] = []
        for x, y in ((u, w), (w, u)):
            if (x, v) in arcs and (v, y) in arcs:
                weight = arcs[(x, v)] + arcs[(v, y)]
                seq = path_of(x, v)[:-1] + path_of(v, y)
                created.append(((x, y), weight, seq))
        if not created:
            raise InconsistencyError(
                f"non-terminal {v} with two neighbors is a source/sink; input is not inclusion-minimal"
            )
        for key in ((u, v), (v, u), (v, w), (w, v)):
            arcs.pop(key, None)
        expansion.pop((u, v), None)
        expansion.pop((v, u), None)
        expansion.pop((v, w), None)
        expansion.pop((w, v), None)
        for arc, weight, seq in created:
            if arc in arcs:
                # A parallel arc cannot occur in a minimal solution; keep the
                # cheaper route so cost comparisons stay meaningful.
                if weight < arcs[arc]:
                    arcs[arc] = weight
                    expansion[arc] = seq
            else:
                arcs[arc] = weight
                expansion[arc] = seq
        g = WeightedDigraph(set(g.vertices) - {v}, arcs)


# ---------------------------------------------------------------------------
# path-avoiding searches


def avoiding_path(
    graph: WeightedDigraph, s: int, t: int, avoid: Iterable[int]
) -> Optional[DirectedPath]:
    """Shortest (fewest arcs) s-t path whose internal vertices avoid `avoid`;
    endpoints are exempt.  Nontrivial: s == t yields None."""
    if s == t:
        return None
    forb = set(avoid)
    parent = {s: None}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for v in graph.out_neighbors(u):
                if v in parent:
                    continue
                parent[v] = u
                if v == t:
                    seq = [v]
                    while parent[seq[-1]] is not None:
                        seq.append(parent[seq[-1]])
                    return DirectedPath(tuple(reversed(seq)))
                if v not in forb:
                    nxt.append(v)
        frontier = nxt
    return None


def _onto_path_reach(graph: WeightedDigraph, src: int, pset: Set[int]) -> Set[int]:
    """Vertices of `pset` hit by nontrivial paths from src with all internal
    vertices off `pset`."""
    hits: Set[int] = set()
    seen = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        for v in graph.out_neighbors(u):
            if v in pset:
                if v != src:
                    hits.add(v)
                continue
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return hits


def realize_request_path(
    graph: WeightedDigraph, terminals: Iterable[int], s: int, t: int
) -> Optional[DirectedPath]:
    """Minimum-weight T-avoiding s-t path (ties lexicographic)."""
    T = set(terminals)
    restricted = graph.without_vertices((T - {s, t}) & set(graph.vertices))
    found = shortest_path(restricted, s, t)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# important vertices


@dataclass(frozen=True)
class ImportantSet:
    path: DirectedPath
    important: Tuple[int, ...]  # in path order
    labels: Dict[int, FrozenSet[Tuple[int, str]]]  # vertex -> {(terminal, "<-"/"->")}
    anchor: Dict[int, int]  # g_P: important vertex -> terminal
    anchor_witness: Dict[int, DirectedPath]


def important_vertices(
    graph: WeightedDigraph, terminals: Iterable[int], P: DirectedPath
) -> ImportantSet:
    """Vertices of P with a P-avoiding connection to a terminal off P, with
    the closest-to-endpoint labelling and the anchor map g_P."""
    T = set(terminals)
    P.check_in(graph)
    if P.start not in T or P.end not in T:
        raise InputError("path endpoints must be terminals")
    if P.internal & T:
        raise InputError("path is not T-avoiding")
    pset = set(P.vertices)
    idx = {v: i for i, v in enumerate(P.vertices)}
    rev = graph.reverse()

    onto_fwd: Dict[int, Set[int]] = {}  # terminal -> P vertices reachable from it
    onto_bwd: Dict[int, Set[int]] = {}  # terminal -> P vertices that reach it
    for x in sorted(T):
        if not graph.has_vertex(x):
            onto_fwd[x] = set()
            onto_bwd[x] = set()
            continue
        onto_fwd[x] = _onto_path_reach(graph, x, pset)
        onto_bwd[x] = _onto_path_reach(rev, x, pset)
        if x in pset:
            onto_fwd[x].add(x)
            onto_bwd[x].add(x)

    important = tuple(
        v
        for v in P.vertices
        if any(
            (v in onto_fwd[x] or v in onto_bwd[x]) for x in T - pset if graph.has_vertex(x)
        )
    )

    labels: Dict[int, Set[Tuple[int, str]]] = {}
    for x in sorted(T):
        fwd = onto_fwd[x]
        if fwd:
            v = min(fwd, key=lambda u: idx[u])  # closest to s
            labels.setdefault(v, set()).add((x, "<-"))
        bwd = onto_bwd[x]
        if bwd:
            v = max(bwd, key=lambda u: idx[u])  # closest to t
            labels.setdefault(v, set()).add((x, "->"))

    frozen = {v: frozenset(ls) for v, ls in labels.items()}
    for v in important:
        if v not in frozen:
            raise InvariantError(f"important vertex {v} received no label")

    anchor: Dict[int, int] = {}
    witness: Dict[int, DirectedPath] = {}
    avoid = pset | T
    for v in important:
        for x, direction in sorted(frozen[v]):
            if direction == "<-":
                w = avoiding_path(graph, x, v, avoid)
            else:
                w = avoiding_path(graph, v, x, avoid)
            if w is not None:
                anchor[v] = x
                witness[v] = w
                break
        else:
            raise InvariantError(f"no (V(P) u T)-avoiding anchor witness for {v}")

    counts: Dict[int, int] = {}
    for x in anchor.values():
        counts[x] = counts.get(x, 0) + 1
    if any(cnt > 2 for cnt in counts.values()):
        raise InvariantError("anchor map hits a terminal more than twice")

    return ImportantSet(P, important, frozen, anchor, witness)


# ---------------------------------------------------------------------------
# marked vertices


@dataclass(frozen=True)
class MarkedQuadruple:
    center: int
    p1: int
    p2: int
    p3: int
    p4: int
    q31: Optional[DirectedPath]  # P-avoiding path p3 -> p1
    q42: Optional[DirectedPath]  # P-avoiding path p4 -> p2

    @property
    def degenerate(self) -> bool:
        return self.p1 == self.p2 == self.p3 == self.p4 == self.center


@dataclass(frozen=True)
class MarkedSet:
    path: DirectedPath
    quadruples: Tuple[MarkedQuadruple, ...]

    @property
    def marked(self) -> FrozenSet[int]:
        out: Set[int] = set()
        for q in self.quadruples:
            if not q.degenerate:
                out.update({q.p1, q.p2, q.p3, q.p4})
        return frozenset(out)


def marked_vertices(graph: WeightedDigraph, P: DirectedPath, imp: ImportantSet) -> MarkedSet:
    """The four extremal back-jump endpoints around every important vertex."""
    if imp.path != P:
        raise InputError("important set was computed for a different path")
    pset = set(P.vertices)
    idx = {v: i for i, v in enumerate(P.vertices)}
    r = len(P.vertices)
    # back[x] = indices reachable from P[x] by a nontrivial P-avoiding path
    back: Dict[int, Set[int]] = {}
    for x in range(r):
        back[x] = {idx[v] for v in _onto_path_reach(graph, P.vertices[x], pset)}

    quads: List[MarkedQuadruple] = []
    for pj in imp.important:
        j = idx[pj]
        endpoints = {w for x in range(j, r) for w in back[x]}
        if not endpoints or min(endpoints) > j:
            quads.append(MarkedQuadruple(pj, pj, pj, pj, pj, None, None))
            continue
        j1 = min(endpoints)
        j4 = max(x for x in range(j, r) if back[x] and min(back[x]) <= j)
        j3 = min(x for x in range(j, r) if j1 in back[x])
        j2 = max(w for w in back[j4] if w <= j)
        if not (j1 <= j2 <= j <= j3 <= j4):
            raise InvariantError(
                f"marked quadruple ordering violated at {pj}: {(j1, j2, j, j3, j4)}"
            )
        q31 = avoiding_path(graph, P.vertices[j3], P.vertices[j1], pset)
        q42 = avoiding_path(graph, P.vertices[j4], P.vertices[j2], pset)
        if q31 is None or q42 is None:
            raise InvariantError(f"missing back-jump witness at {pj}")
        quads.append(
            MarkedQuadruple(
                pj, P.vertices[j1], P.vertices[j2], P.vertices[j3], P.vertices[j4], q31, q42
            )
        )
    marked = MarkedSet(P, tuple(quads))
    if len(marked.marked) > 4 * len(imp.important):
        raise InvariantError("|Q_P| exceeds 4 |I_P|")
    return marked


# ---------------------------------------------------------------------------
# ladder segments


@dataclass(frozen=True)
class LadderSegment:
    start_index: int  # index of p_i on P
    end_index: int  # index of p_j on P
    boundary: Tuple[int, int, int, int]  # (p_{i+1}, p_{i+2}, p_{j-2}, p_{j-1})
    component: FrozenSet[int]
    verdict: LadderVerdict
    roles: Optional[Tuple[int, int, int, int]]  # (a, b, c, d) that recognized


def segment_markers(P: DirectedPath, imp: ImportantSet, mk: MarkedSet) -> List[int]:
    """I_P u Q_P plus the path endpoints, as ascending path indices."""
    idx = {v: i for i, v in enumerate(P.vertices)}
    marks = {idx[v] for v in imp.important} | {idx[v] for v in mk.marked}
    marks |= {0, len(P.vertices) - 1}
    return sorted(marks)


def detect_ladder_segments(
    graph: WeightedDigraph,
    terminals: Iterable[int],
    P: DirectedPath,
    markers: Sequence[int],
) -> List[LadderSegment]:
    """Between consecutive markers at distance >= 5, extract the component
    hanging between the four boundary vertices and test it for ladderness."""
    T = set(terminals)
    out: List[LadderSegment] = []
    for i, j in zip(markers, markers[1:]):
        if j - i < 5:
            continue
        pv = P.vertices
        boundary = (pv[i + 1], pv[i + 2], pv[j - 2], pv[j - 1])
        rest = graph.without_vertices(set(boundary))
        comp_of: Optional[List[int]] = None
        for comp in rest.sym().components():
            if pv[i + 3] in comp:
                comp_of = comp
                break
        if comp_of is None:
            continue
        component = frozenset(comp_of)
        if component & T:
            out.append(
                LadderSegment(
                    i, j, boundary, component,
                    LadderVerdict(False, 0, "component touches a terminal"), None,
                )
            )
            continue
        K = graph.induced(component | set(boundary))
        a, d = pv[i + 1], pv[j - 1]
        best: Optional[Tuple[LadderVerdict, Tuple[int, int, int, int]]] = None
        for b in (pv[i + 2], pv[i + 1]):
            for c in (pv[j - 2], pv[j - 1]):
                verdict = is_ladder_subdivision(K, a, b, c, d)
                if verdict.ok:
                    best = (verdict, (a, b, c, d))
                    break
            if best:
                break
        if best is None:
            verdict = is_ladder_subdivision(K, a, pv[i + 2], pv[j - 2], d)
            out.append(LadderSegment(i, j, boundary, component, verdict, None))
        else:
            out.append(LadderSegment(i, j, boundary, component, best[0], best[1]))
    return out


# ---------------------------------------------------------------------------
# protrusion replacement


def _replacement_length(n: int) -> int:
    return 6 if n % 2 == 0 else 7


def protrusion_replace(
    graph: WeightedDigraph,
    requests: Iterable[Request],
    F: Iterable[int],
    a: int,
    b: int,
    c: int,
    d: int,
) -> WeightedDigraph:
    """Swap a ladder-shaped component for a constant-length fresh ladder.

    Verified at runtime: the graph outside F is untouched, the fresh interior
    neighbors exactly {a, b, c, d}, and the result is a valid inclusion-
    minimal solution preserving the terminal reachability matrix."""
    reqs = frozenset(requests)
    T = {v for r in reqs for v in r}
    Fset = set(F)
    if Fset & T:
        raise PreconditionError("component contains a terminal")
    if Fset & {a, b, c, d}:
        raise PreconditionError("component overlaps its boundary")
    rest = graph.without_vertices({a, b, c, d})
    if sorted(Fset) not in rest.sym().components():
        raise PreconditionError("F is not a connected component of graph - {a,b,c,d}")
    if a != b and not graph.has_arc(a, b):
        raise PreconditionError("a != b but arc ab is missing")
    if c != d and not graph.has_arc(c, d):
        raise PreconditionError("c != d but arc cd is missing")
    K = graph.induced(Fset | {a, b, c, d})
    verdict = is_ladder_subdivision(K, a, b, c, d)
    if not verdict.ok:
        raise PreconditionError(f"component is not a ladder: {verdict.reason}")
    n = verdict.length
    n_new = _replacement_length(n)
    if n <= n_new:
        return graph

    ident = set()
    if a == b:
        ident.add(1)
    if c == d:
        ident.add(n_new)
    spec = LadderSpec(n_new, ident)
    ladder = make_ladder(spec)
    a1, b1, an, bn = ladder_corners(spec)
    if n_new % 2 == 0:
        corner_map = {a1: a, b1: b, bn: c, an: d}
    else:
        corner_map = {a1: a, b1: b, an: c, bn: d}

    fresh_base = max(graph.vertices) + 1
    vmap: Dict[int, int] = dict(corner_map)
    for v in ladder.vertices:
        if v not in vmap:
            vmap[v] = fresh_base
            fresh_base += 1
    interior = {vmap[v] for v in ladder.vertices} - {a, b, c, d}
    if len(interior) >= len(Fset):
        return graph

    arcs = {
        arc: w
        for arc, w in graph.arcs().items()
        if arc[0] not in Fset and arc[1] not in Fset
    }
    for (u, v), w in ladder.arcs().items():
        mu, mv = vmap[u], vmap[v]
        if (mu, mv) not in arcs:
            arcs[(mu, mv)] = Fraction(1)
    vertices = (set(graph.vertices) - Fset) | interior
    new_graph = WeightedDigraph(vertices, arcs)

    _verify_replacement(graph, new_graph, reqs, T, Fset, interior, (a, b, c, d))
    return new_graph


def _verify_replacement(
    old: WeightedDigraph,
    new: WeightedDigraph,
    reqs: FrozenSet[Request],
    T: Set[int],
    F: Set[int],
    F_new: Set[int],
    boundary: Tuple[int, int, int, int],
) -> None:
    outside_old = old.without_vertices(F)
    outside_new = new.without_vertices(F_new)
    if outside_old != outside_new:
        raise InvariantError("replacement changed the graph outside the component")
    nbrs = set()
    for v in F_new:
        nbrs.update(set(new.neighbors(v)) - F_new)
    if nbrs != set(boundary):
        raise InvariantError(f"fresh component neighbors {sorted(nbrs)} != boundary")
    if len(F_new) > PROTRUSION_MAX_INTERIOR:
        raise InvariantError("fresh component exceeds the size bound")
    if violated_request(new, reqs) is not None:
        raise InvariantError("replacement broke a request")
    if not is_inclusion_minimal_graph(new, reqs):
        raise InvariantError("replacement is not inclusion-minimal")
    for s in sorted(T):
        for t in sorted(T):
            if s == t:
                continue
            before = reaches(old, s, t, T - {s, t})
            after = reaches(new, s, t, T - {s, t})
            if before != after:
                raise InvariantError(f"terminal reachability changed for {s}->{t}")


# ---------------------------------------------------------------------------
# length-reduction pipeline


@dataclass
class PathRecord:
    request: Request
    path_vertices: Tuple[int, ...]
    length: int
    num_important: int
    num_marked: int
    ratio: float
    segments: List[LadderSegment] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "request": list(self.request),
            "path": list(self.path_vertices),
            "length": self.length,
            "important": self.num_important,
            "marked": self.num_marked,
            "ratio": self.ratio,
            "segments": [
                {
                    "span": [s.start_index, s.end_index],
                    "boundary": list(s.boundary),
                    "component": sorted(s.component),
                    "ladder": s.verdict.ok,
                    "ladder_length": s.verdict.length,
                    "roles": list(s.roles) if s.roles else None,
                    "reason": s.verdict.reason,
                }
                for s in self.segments
            ],
        }


@dataclass
class StructureReport:
    terminals: Tuple[int, ...]
    original_requests: Tuple[Request, ...]
    normalized_requests: Tuple[Request, ...]
    paths: List[PathRecord]
    rounds: int
    replacements: int
    vertices_before: int
    vertices_after: int
    max_ratio: float
    diameter_after: Optional[int]
    tw_before: Optional[int]
    tw_after: Optional[int]
    tw_before_exact: bool
    tw_after_exact: bool
    important_bound_ok: bool
    marked_bound_ok: bool
    diameter_bound_ok: Optional[bool]

    def to_json_dict(self) -> dict:
        return {
            "schema": "dsnkit/structure-report/1",
            "terminals": list(self.terminals),
            "requests": [list(r) for r in self.original_requests],
            "normalized_requests": [list(r) for r in self.normalized_requests],
            "paths": [p.to_json_dict() for p in self.paths],
            "rounds": self.rounds,
            "replacements": self.replacements,
            "vertices_before": self.vertices_before,
            "vertices_after": self.vertices_after,
            "max_ratio": self.max_ratio,
            "diameter_after": self.diameter_after,
            "treewidth_before": self.tw_before,
            "treewidth_after": self.tw_after,
            "treewidth_before_exact": self.tw_before_exact,
            "treewidth_after_exact": self.tw_after_exact,
            "bounds": {
                "important": self.important_bound_ok,
                "marked": self.marked_bound_ok,
                "diameter": self.diameter_bound_ok,
            },
        }


def _tw_maybe_exact(g: WeightedDigraph) -> Tuple[Optional[int], bool]:
    u = g.sym()
    if u.n == 0:
        return 0, True
    try:
        w, _ = treewidth_exact(u)
        return w, True
    except CapacityError:
        return treewidth_upper_bound(u), False


def reduce_length_graph(
    graph: WeightedDigraph, requests: Iterable[Request]
) -> Tuple[WeightedDigraph, StructureReport]:
    """Suppress, analyze and shrink ladder segments until every request path
    is short; returns the reduced graph plus the full report."""
    reqs = frozenset(requests)
    T = tuple(sorted({v for r in reqs for v in r}))
    if violated_request(graph, reqs) is not None:
        raise PreconditionError("input graph is not a valid solution")
    if not is_inclusion_minimal_graph(graph, reqs):
        raise PreconditionError("input graph is not inclusion-minimal")

    tw_before, tw_before_exact = _tw_maybe_exact(graph)
    current, _ = suppress_degree_two(graph, T)
    rounds = 0
    replacements = 0
    while True:
        rounds += 1
        norm = normalize_requests_graph(current, T)
        replaced = False
        for s, t in sorted(norm):
            P = realize_request_path(current, T, s, t)
            if P is None:
                raise InvariantError(f"normalized request {s}->{t} has no T-avoiding path")
            imp = important_vertices(current, T, P)
            mk = marked_vertices(current, P, imp)
            markers = segment_markers(P, imp, mk)
            for seg in detect_ladder_segments(current, T, P, markers):
                if not seg.verdict.ok or seg.roles is None:
                    continue
                if seg.verdict.length <= _replacement_length(seg.verdict.length):
                    continue
                before = current.n
                a, b, c, d = seg.roles
                candidate = protrusion_replace(current, norm, seg.component, a, b, c, d)
                if candidate.n >= before:
                    continue
                current = candidate
                replacements += 1
                replaced = True
                break
            if replaced:
                break
        if not replaced:
            break

    norm = normalize_requests_graph(current, T)
    q = len(T)
    records: List[PathRecord] = []
    important_ok = True
    marked_ok = True
    max_ratio = 0.0
    for s, t in sorted(norm):
        P = realize_request_path(current, T, s, t)
        if P is None:
            raise InvariantError(f"normalized request {s}->{t} has no T-avoiding path")
        imp = important_vertices(current, T, P)
        mk = marked_vertices(current, P, imp)
        markers = segment_markers(P, imp, mk)
        segs = detect_ladder_segments(current, T, P, markers)
        ratio = P.length / max(1, len(imp.important))
        max_ratio = max(max_ratio, ratio)
        if len(imp.important) > 2 * q - 2:
            important_ok = False
        if len(mk.marked) > 4 * len(imp.important):
            marked_ok = False
        records.append(
            PathRecord(
                (s, t), P.vertices, P.length, len(imp.important), len(mk.marked), ratio, segs
            )
        )

    sym_after = current.sym()
    diam: Optional[int] = None
    if sym_after.n > 0 and len(sym_after.components()) == 1:
        diam = diameter(sym_after)
    tw_after, tw_after_exact = _tw_maybe_exact(current)
    diam_ok = None if diam is None else diam <= 8 * max(1.0, max_ratio) * q

    report = StructureReport(
        terminals=T,
        original_requests=tuple(sorted(reqs)),
        normalized_requests=tuple(sorted(norm)),
        paths=records,
        rounds=rounds,
        replacements=replacements,
        vertices_before=graph.n,
        vertices_after=current.n,
        max_ratio=max_ratio,
        diameter_after=diam,
        tw_before=tw_before,
        tw_after=tw_after,
        tw_before_exact=tw_before_exact,
        tw_after_exact=tw_after_exact,
        important_bound_ok=important_ok,
        marked_bound_ok=marked_ok,
        diameter_bound_ok=diam_ok,
    )
    return current, report


def reduce_length(inst: DsnInstance, sol: SolutionSubgraph) -> Tuple[WeightedDigraph, StructureReport]:
    return reduce_length_graph(sol.as_graph(), inst.requests)


# ---------------------------------------------------------------------------
# certification


@dataclass
class TreewidthCertificate:
    declared_genus: int
    q: int
    tw_solution: Optional[int]
    tw_solution_exact: bool
    tw_reduced: Optional[int]
    tw_reduced_exact: bool
    tw_per_terminal: float
    pipeline_increased_tw: bool
    flagged: bool
    report: StructureReport

    def to_json_dict(self) -> dict:
        return {
            "schema": "dsnkit/treewidth-certificate/1",
            "declared_genus": self.declared_genus,
            "q": self.q,
            "treewidth_solution": self.tw_solution,
            "treewidth_solution_exact": self.tw_solution_exact,
            "treewidth_reduced": self.tw_reduced,
            "treewidth_reduced_exact": self.tw_reduced_exact,
            "treewidth_per_terminal": self.tw_per_terminal,
            "pipeline_increased_treewidth": self.pipeline_increased_tw,
            "flagged": self.flagged,
            "report": self.report.to_json_dict(),
        }


def certify_treewidth_bound(
    inst: DsnInstance, sol: SolutionSubgraph, declared_genus: int = 0
) -> TreewidthCertificate:
    """Run the reduction pipeline and compare treewidths before/after.

    No pass/fail against the asymptotic constant; flags only a pipeline that
    made treewidth grow beyond what the measured ratio explains."""
    reduced, report = reduce_length(inst, sol)
    q = max(1, inst.q)
    tw_sol = report.tw_before
    tw_red = report.tw_after
    increased = tw_red is not None and tw_sol is not None and tw_red > tw_sol
    scale = max(1.0, report.max_ratio)
    flagged = (
        tw_sol is not None
        and tw_red is not None
        and tw_sol > scale * max(1, tw_red)
    )
    return TreewidthCertificate(
        declared_genus=declared_genus,
        q=inst.q,
        tw_solution=tw_sol,
        tw_solution_exact=report.tw_before_exact,
        tw_reduced=tw_red,
        tw_reduced_exact=report.tw_after_exact,
        tw_per_terminal=(tw_sol / q) if tw_sol is not None else float("nan"),
        pipeline_increased_tw=increased,
        flagged=flagged,
        report=report,
    )
