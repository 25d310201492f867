"""Ladder graphs: generation, two-path decomposition and recognition.

A ladder of length n has two rails a_1..a_n and b_1..b_n with rungs whose
direction alternates with the parity of the position; positions listed in I
have their two rail vertices identified.  Ladders are exactly the shape the
structural pipeline is allowed to shrink.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .errors import InputError
from .graphs import Arc, DirectedPath, UndirectedGraph, WeightedDigraph, reaches


@dataclass(frozen=True)
class LadderSpec:
    """Length n plus the set of identified positions I."""

    n: int
    identified: FrozenSet[int] = frozenset()

    def __init__(self, n: int, identified=()):
        if n < 1:
            raise InputError("ladder length must be positive")
        ident = frozenset(identified)
        if not ident <= set(range(1, n + 1)):
            raise InputError(f"identified positions must lie in 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "identified", ident)

    def a(self, i: int) -> int:
        """Vertex id of a_i (even ids; b_i collapses onto a_i when i in I)."""
        return 2 * (i - 1)

    def b(self, i: int) -> int:
        return self.a(i) if i in self.identified else 2 * (i - 1) + 1


def _rung_and_rail_arcs(n: int) -> List[Tuple[str, int, str, int]]:
    """The six arc families as (rail, index, rail, index) atoms over a/b."""
    fams: List[Tuple[str, int, str, int]] = []
    i = 0
    while 2 * i + 1 <= n:  # a_{2i+1} b_{2i+1}, 0 <= i < n/2
        fams.append(("a", 2 * i + 1, "b", 2 * i + 1))
        i += 1
    i = 1
    while 2 * i <= n:  # b_{2i} a_{2i}, 1 <= i <= n/2
        fams.append(("b", 2 * i, "a", 2 * i))
        i += 1
    i = 1
    while 2 * i <= n:  # a_{2i} a_{2i-1}
        fams.append(("a", 2 * i, "a", 2 * i - 1))
        i += 1
    i = 1
    while 2 * i + 1 <= n:  # a_{2i} a_{2i+1}, 1 <= i < n/2
        fams.append(("a", 2 * i, "a", 2 * i + 1))
        i += 1
    i = 1
    while 2 * i + 1 <= n:  # b_{2i+1} b_{2i}, 1 <= i < n/2
        fams.append(("b", 2 * i + 1, "b", 2 * i))
        i += 1
    i = 1
    while 2 * i <= n:  # b_{2i-1} b_{2i}
        fams.append(("b", 2 * i - 1, "b", 2 * i))
        i += 1
    return fams


def make_ladder(spec: LadderSpec) -> WeightedDigraph:
    """Materialize G_{n,I} with unit weights; loops suppressed, parallel arcs
    merged."""
    vmap = {("a", i): spec.a(i) for i in range(1, spec.n + 1)}
    vmap.update({("b", i): spec.b(i) for i in range(1, spec.n + 1)})
    vertices = sorted(set(vmap.values()))
    arcs: Dict[Arc, int] = {}
    for ra, ia, rb, ib in _rung_and_rail_arcs(spec.n):
        u, v = vmap[(ra, ia)], vmap[(rb, ib)]
        if u != v:
            arcs[(u, v)] = 1
    return WeightedDigraph(vertices, arcs)


def ladder_corners(spec: LadderSpec) -> Tuple[int, int, int, int]:
    """(a_1, b_1, a_n, b_n) vertex ids."""
    return spec.a(1), spec.b(1), spec.a(spec.n), spec.b(spec.n)


def scss_requests(cycle: Sequence[int]) -> Set[Tuple[int, int]]:
    """Directed-cycle request set over the distinct vertices of `cycle`."""
    seen: List[int] = []
    for v in cycle:
        if v not in seen:
            seen.append(v)
    if len(seen) < 2:
        return set()
    return {(seen[i], seen[(i + 1) % len(seen)]) for i in range(len(seen))}


def ladder_corner_requests(spec: LadderSpec) -> Set[Tuple[int, int]]:
    """The 4-terminal SCSS request cycle a1 -> b1 -> an -> bn -> a1."""
    a1, b1, an, bn = ladder_corners(spec)
    return scss_requests([a1, b1, an, bn])


def _walk_to_path(vertex_seq: List[int]) -> DirectedPath:
    dedup: List[int] = []
    for v in vertex_seq:
        if not dedup or dedup[-1] != v:
            dedup.append(v)
    return DirectedPath(tuple(dedup))


def ladder_two_path_decomposition(g: WeightedDigraph, spec: LadderSpec) -> Tuple[DirectedPath, DirectedPath]:
    """The two explicit rail-to-rail paths whose arc union is all of G_{n,I}.

    For even n: P1 from a_1 to a_n and P2 from b_n to b_1; for odd n the
    endpoints swap rails at the far end."""
    if g != make_ladder(spec):
        raise InputError("graph does not match the ladder spec")
    n = spec.n
    # P1 alternates rung / forward-rail, P2 is its mirror; build by walking.
    seq1 = []
    for i in range(1, n + 1):
        if i % 2 == 1:
            seq1.extend([("a", i), ("b", i)])  # rung a_i -> b_i
        else:
            seq1.extend([("b", i), ("a", i)])  # rung b_i -> a_i
    # seq1 rail hops: b_{2i-1} -> b_{2i} and a_{2i} -> a_{2i+1} are implied by
    # adjacency of consecutive atoms; same construction works for P2 reversed.
    seq2 = []
    for i in range(n, 0, -1):
        if i % 2 == 0:
            seq2.extend([("b", i), ("a", i)])
        else:
            seq2.extend([("a", i), ("b", i)])
    vmap = {("a", i): spec.a(i) for i in range(1, n + 1)}
    vmap.update({("b", i): spec.b(i) for i in range(1, n + 1)})
    p1 = _walk_to_path([vmap[x] for x in seq1])
    p2 = _walk_to_path([vmap[x] for x in seq2])
    p1.check_in(g)
    p2.check_in(g)
    return p1, p2


# ---------------------------------------------------------------------------
# recognition


@dataclass(frozen=True)
class LadderVerdict:
    ok: bool
    length: int = 0
    reason: str = ""


def _hypotheses_failure(K: WeightedDigraph, a: int, b: int, c: int, d: int) -> Optional[str]:
    """Check the four hypothesis bullets; returns the failing one or None."""
    for v in (a, b, c, d):
        if not K.has_vertex(v):
            return f"boundary vertex {v} missing"
    if a != b:
        if not K.has_arc(a, b):
            return "arc ab missing"
        if K.in_neighbors(b) != (a,):
            return "a is not the only in-neighbor of b"
        if K.out_neighbors(a) != (b,):
            return "b is not the only out-neighbor of a"
    if c != d:
        if not K.has_arc(c, d):
            return "arc cd missing"
        if K.in_neighbors(d) != (c,):
            return "c is not the only in-neighbor of d"
        if K.out_neighbors(c) != (d,):
            return "d is not the only out-neighbor of c"
    if not reaches(K, a, d):
        return "no directed path from a to d"
    if not reaches(K, c, b):
        return "no directed path from c to b"
    for arc in sorted(K.arc_set()):
        if arc in {(a, b), (c, d)}:
            continue
        rest = K.without_arc(*arc)
        if reaches(rest, a, d) and reaches(rest, c, b):
            return f"not inclusion-minimal: arc {arc} is removable"
    iso = [v for v in K.vertices if K.total_degree(v) == 0 and v not in {a, b, c, d}]
    if iso:
        return f"isolated vertex {iso[0]}"
    return None


def _suppress_outside(K: WeightedDigraph, keep: Set[int]) -> Optional[WeightedDigraph]:
    """Suppress total-degree-2 pass-through vertices outside `keep`.

    Returns None if a vertex cannot be suppressed cleanly (rejection)."""
    g = K
    while True:
        target = None
        for v in g.vertices:
            if v in keep:
                continue
            if g.total_degree(v) == 2:
                target = v
                break
        if target is None:
            return g
        v = target
        ins, outs = g.in_neighbors(v), g.out_neighbors(v)
        if len(ins) != 1 or len(outs) != 1:
            return None  # source or sink of degree 2
        u, w = ins[0], outs[0]
        if u == w:
            return None  # dead-end two-cycle
        arcs = g.arcs()
        wt = arcs.pop((u, v)) + arcs.pop((v, w))
        if (u, w) in arcs:
            return None  # suppression would create a parallel arc
        arcs[(u, w)] = wt
        g = WeightedDigraph(set(g.vertices) - {v}, arcs)


def is_ladder_subdivision(K: WeightedDigraph, a: int, b: int, c: int, d: int) -> LadderVerdict:
    """Decide whether K with boundary roles (a, b, c, d) is a subdivision of
    a ladder, by the recursive suppress-and-peel procedure.

    The reported length is the length of the suppressed core ladder."""
    fail = _hypotheses_failure(K, a, b, c, d)
    if fail is not None:
        return LadderVerdict(False, 0, fail)
    g = _suppress_outside(K, {a, b, c, d})
    if g is None:
        return LadderVerdict(False, 0, "degree-2 vertex is not a pass-through")
    fail = _hypotheses_failure(g, a, b, c, d)
    if fail is not None:
        return LadderVerdict(False, 0, f"after suppression: {fail}")
    if g.n <= 4:
        return LadderVerdict(True, 1 if g.n == 1 else 2)
    if {a, b} & {c, d}:
        return LadderVerdict(False, 0, "boundary pairs overlap in a large graph")
    # Peel the (a, b) column and recurse on the rest.
    if a != b:
        a_in = set(g.in_neighbors(a)) - {b}
        a_out = set(g.out_neighbors(a)) - {b}
        b_in = set(g.in_neighbors(b)) - {a}
        b_out = set(g.out_neighbors(b)) - {a}
        if a_out or b_in:
            return LadderVerdict(False, 0, "corner has an extra arc")
        if len(a_in) != 1 or len(b_out) != 1:
            return LadderVerdict(False, 0, "corner column is not attached by two rails")
        abar, bbar = next(iter(a_in)), next(iter(b_out))
    else:
        a_in = set(g.in_neighbors(a))
        a_out = set(g.out_neighbors(a))
        if len(a_in) != 1 or len(a_out) != 1:
            return LadderVerdict(False, 0, "identified corner is not attached by two rails")
        abar, bbar = next(iter(a_in)), next(iter(a_out))
        if abar == bbar:
            return LadderVerdict(False, 0, "identified corner attached to a single vertex")
    rest = g.without_vertices({a, b})
    sub = is_ladder_subdivision(rest, bbar, abar, c, d)
    if not sub.ok:
        return LadderVerdict(False, 0, f"peel: {sub.reason}")
    return LadderVerdict(True, sub.length + 1)


def is_outerplanar(u: UndirectedGraph) -> bool:
    """A graph is outerplanar iff adding an apex adjacent to everything keeps
    it planar (equivalently: no K4 or K_{2,3} minor)."""
    G = nx.Graph()
    G.add_nodes_from(u.vertices)
    G.add_edges_from(u.edges)
    apex = (max(u.vertices) + 1) if u.vertices else 0
    G.add_node(apex)
    G.add_edges_from((apex, v) for v in u.vertices)
    ok, _ = nx.check_planarity(G)
    return bool(ok)


def is_ladder_undirected(u: UndirectedGraph, a: int, b: int, c: int, d: int) -> bool:
    """Underlying-undirected ladder test: 2-connected outerplanar, boundary
    vertices of degree 2 joined by the ab and cd edges, degree 3 elsewhere."""
    boundary = {a, b, c, d}
    for v in boundary:
        if not u.has_vertex(v):
            return False
    if u.n <= 2:
        # Degenerate ladders: a single edge or a single vertex.
        return boundary <= set(u.vertices)
    if a != b and not u.has_edge(a, b):
        return False
    if c != d and not u.has_edge(c, d):
        return False
    for v in u.vertices:
        want = 2 if v in boundary else 3
        if u.degree(v) != want:
            return False
    G = nx.Graph()
    G.add_nodes_from(u.vertices)
    G.add_edges_from(u.edges)
    if not nx.is_biconnected(G):
        return False
    return is_outerplanar(u)
