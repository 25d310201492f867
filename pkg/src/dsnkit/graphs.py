"""Directed and undirected graph data model plus the generic algorithms.

All graph values are immutable after construction and every operation is a
pure function, so shared instances are safe to use concurrently.  Vertex ids
are integers and every deterministic tie-break is by ascending id.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .errors import CapacityError, DomainError, InputError

Arc = Tuple[int, int]
Weight = Fraction

TREEWIDTH_EXACT_CAP = 22


def _as_weight(w) -> Fraction:
    f = Fraction(w)
    if f <= 0:
        raise InputError(f"arc weight must be positive, got {w}")
    return f


class WeightedDigraph:
    """Simple digraph with strictly positive rational arc weights."""

    __slots__ = ("_vertices", "_vset", "_arcs", "_out", "_in")

    def __init__(self, vertices: Iterable[int], arcs: Mapping[Arc, object]):
        vs = sorted(vertices)
        if len(set(vs)) != len(vs):
            raise InputError("duplicate vertex ids")
        vset = frozenset(vs)
        checked: Dict[Arc, Fraction] = {}
        out: Dict[int, List[int]] = {v: [] for v in vs}
        inn: Dict[int, List[int]] = {v: [] for v in vs}
        for (u, v), w in arcs.items():
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u not in vset or v not in vset:
                raise InputError(f"arc ({u}, {v}) has an unknown endpoint")
            checked[(u, v)] = _as_weight(w)
            out[u].append(v)
            inn[v].append(u)
        self._vertices: Tuple[int, ...] = tuple(vs)
        self._vset = vset
        self._arcs = checked
        self._out = {v: tuple(sorted(ns)) for v, ns in out.items()}
        self._in = {v: tuple(sorted(ns)) for v, ns in inn.items()}

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._arcs)

    def arcs(self) -> Dict[Arc, Fraction]:
        return dict(self._arcs)

    def arc_set(self) -> Set[Arc]:
        return set(self._arcs)

    def has_vertex(self, v: int) -> bool:
        return v in self._vset

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcs

    def weight(self, u: int, v: int) -> Fraction:
        try:
            return self._arcs[(u, v)]
        except KeyError:
            raise InputError(f"no arc ({u}, {v})") from None

    def out_neighbors(self, v: int) -> Tuple[int, ...]:
        self._check_vertex(v)
        return self._out[v]

    def in_neighbors(self, v: int) -> Tuple[int, ...]:
        self._check_vertex(v)
        return self._in[v]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(set(self._out[v]) | set(self._in[v])))

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors(v))

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors(v))

    def total_degree(self, v: int) -> int:
        return self.in_degree(v) + self.out_degree(v)

    def total_weight(self) -> Fraction:
        return sum(self._arcs.values(), Fraction(0))

    def _check_vertex(self, v: int) -> None:
        if v not in self._vset:
            raise InputError(f"unknown vertex id {v}")

    # -- derived graphs --------------------------------------------------

    def subgraph(self, arcs: Iterable[Arc], extra_vertices: Iterable[int] = ()) -> "WeightedDigraph":
        """Subgraph on the given arcs plus any extra (isolated) vertices."""
        arcset = set(arcs)
        for a in arcset:
            if a not in self._arcs:
                raise InputError(f"arc {a} not present in the graph")
        vs = {u for a in arcset for u in a}
        for v in extra_vertices:
            self._check_vertex(v)
            vs.add(v)
        return WeightedDigraph(vs, {a: self._arcs[a] for a in arcset})

    def induced(self, vertices: Iterable[int]) -> "WeightedDigraph":
        vs = set(vertices)
        for v in vs:
            self._check_vertex(v)
        arcs = {a: w for a, w in self._arcs.items() if a[0] in vs and a[1] in vs}
        return WeightedDigraph(vs, arcs)

    def without_vertices(self, vertices: Iterable[int]) -> "WeightedDigraph":
        drop = set(vertices)
        return self.induced(set(self._vertices) - drop)

    def without_arc(self, u: int, v: int) -> "WeightedDigraph":
        arcs = dict(self._arcs)
        del arcs[(u, v)]
        return WeightedDigraph(self._vertices, arcs)

    def reverse(self) -> "WeightedDigraph":
        return WeightedDigraph(self._vertices, {(v, u): w for (u, v), w in self._arcs.items()})

    def sym(self) -> "UndirectedGraph":
        """Underlying undirected graph; weights are discarded."""
        edges = {(min(u, v), max(u, v)) for (u, v) in self._arcs}
        return UndirectedGraph(self._vertices, edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedDigraph)
            and self._vertices == other._vertices
            and self._arcs == other._arcs
        )

    def __hash__(self):
        return hash((self._vertices, frozenset(self._arcs.items())))

    def __repr__(self) -> str:
        return f"WeightedDigraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DirectedPath:
    """A directed path; consecutive vertices must be joined by an arc of the
    carrier graph and all vertices are distinct."""

    vertices: Tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InputError("a path has at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("path vertices must be distinct")

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def internal(self) -> frozenset:
        return frozenset(self.vertices[1:-1])

    def arcs(self) -> List[Arc]:
        return list(zip(self.vertices, self.vertices[1:]))

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    def subpath(self, u: int, v: int) -> "DirectedPath":
        i, j = self.vertices.index(u), self.vertices.index(v)
        if i > j:
            raise InputError(f"{u} is not before {v} on the path")
        return DirectedPath(self.vertices[i : j + 1])

    def concat(self, other: "DirectedPath") -> "DirectedPath":
        if self.end != other.start:
            raise InputError("paths do not share an endpoint")
        return DirectedPath(self.vertices + other.vertices[1:])

    def check_in(self, g: WeightedDigraph) -> None:
        for u, v in self.arcs():
            if not g.has_arc(u, v):
                raise InputError(f"path arc ({u}, {v}) is not in the carrier graph")


class UndirectedGraph:
    """Simple undirected graph (no weights)."""

    __slots__ = ("_vertices", "_vset", "_edges", "_adj")

    def __init__(self, vertices: Iterable[int], edges: Iterable[Tuple[int, int]]):
        vs = sorted(vertices)
        if len(set(vs)) != len(vs):
            raise InputError("duplicate vertex ids")
        vset = frozenset(vs)
        norm = set()
        adj: Dict[int, Set[int]] = {v: set() for v in vs}
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u not in vset or v not in vset:
                raise InputError(f"edge ({u}, {v}) has an unknown endpoint")
            e = (min(u, v), max(u, v))
            norm.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self._vertices: Tuple[int, ...] = tuple(vs)
        self._vset = vset
        self._edges = frozenset(norm)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._vset

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def adjacent(self, v: int) -> Tuple[int, ...]:
        if v not in self._vset:
            raise InputError(f"unknown vertex id {v}")
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.adjacent(v))

    def without_vertices(self, vertices: Iterable[int]) -> "UndirectedGraph":
        drop = set(vertices)
        keep = [v for v in self._vertices if v not in drop]
        edges = [e for e in self._edges if e[0] not in drop and e[1] not in drop]
        return UndirectedGraph(keep, edges)

    def components(self) -> List[List[int]]:
        """Connected components, each sorted, ordered by smallest member."""
        seen: Set[int] = set()
        comps = []
        for v in self._vertices:
            if v in seen:
                continue
            comp = []
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UndirectedGraph)
            and self._vertices == other._vertices
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# reachability


def reaches(g: WeightedDigraph, s: int, t: int, forbidden_internal: Iterable[int] = ()) -> bool:
    """True iff a directed s-t path exists whose internal vertices avoid the
    forbidden set.  Endpoints are exempt from the forbidden set."""
    g._check_vertex(s)
    g._check_vertex(t)
    if s == t:
        return True
    forb = set(forbidden_internal)
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in g.out_neighbors(u):
            if v == t:
                return True
            if v in seen or v in forb:
                continue
            seen.add(v)
            stack.append(v)
    return False


def reachable_set(g: WeightedDigraph, s: int, forbidden: Iterable[int] = ()) -> Set[int]:
    """All vertices reachable from s along vertices outside `forbidden`.

    s itself is always included; forbidden vertices are never entered."""
    g._check_vertex(s)
    forb = set(forbidden)
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in g.out_neighbors(u):
            if v not in seen and v not in forb:
                seen.add(v)
                stack.append(v)
    return seen


def shortest_path(g: WeightedDigraph, s: int, t: int) -> Optional[Tuple[DirectedPath, Fraction]]:
    """Minimum-weight directed s-t path, or None if t is unreachable.

    Ties are broken by the lexicographically smallest vertex sequence, which
    makes the result deterministic."""
    g._check_vertex(s)
    g._check_vertex(t)
    # Uniform-cost search on (cost, vertex sequence).  Because all simple
    # paths to a vertex end in it, lexicographic comparison is stable under
    # extension, so the first pop per vertex is optimal.
    heap: List[Tuple[Fraction, Tuple[int, ...]]] = [(Fraction(0), (s,))]
    done: Set[int] = set()
    while heap:
        cost, seq = heapq.heappop(heap)
        u = seq[-1]
        if u in done:
            continue
        done.add(u)
        if u == t:
            return DirectedPath(seq), cost
        for v in g.out_neighbors(u):
            if v not in done:
                heapq.heappush(heap, (cost + g.weight(u, v), seq + (v,)))
    return None


def all_simple_paths(g: WeightedDigraph, s: int, t: int) -> List[DirectedPath]:
    """Every simple directed s-t path, in DFS order with ascending neighbor
    ids.  Desk-scale oracle helper."""
    g._check_vertex(s)
    g._check_vertex(t)
    out: List[DirectedPath] = []
    seq = [s]
    on_path = {s}

    def walk(u: int) -> None:
        if u == t:
            out.append(DirectedPath(tuple(seq)))
            return
        for v in g.out_neighbors(u):
            if v not in on_path:
                seq.append(v)
                on_path.add(v)
                walk(v)
                on_path.discard(v)
                seq.pop()

    walk(s)
    return out


def strongly_connected_components(g: WeightedDigraph) -> List[List[int]]:
    """SCC partition, components in topological order of the condensation.

    Iterative Tarjan with ascending-id scan order; fully deterministic."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack: Set[int] = set()
    stack: List[int] = []
    comps: List[List[int]] = []
    counter = [0]

    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.out_neighbors(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.out_neighbors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    # Tarjan emits components in reverse topological order of the condensation.
    comps.reverse()
    return comps


def underlying_undirected(g: WeightedDigraph) -> UndirectedGraph:
    return g.sym()


# ---------------------------------------------------------------------------
# treewidth and diameter


def diameter(g: UndirectedGraph) -> int:
    """Maximum unweighted shortest-path distance over vertex pairs."""
    comps = g.components()
    if len(comps) > 1:
        raise DomainError(
            f"graph is disconnected: components containing {comps[0][0]} and {comps[1][0]}"
        )
    if g.n == 0:
        raise DomainError("graph is empty")
    best = 0
    for s in g.vertices:
        dist = {s: 0}
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in g.adjacent(u):
                    if v not in dist:
                        dist[v] = d
                        nxt.append(v)
            frontier = nxt
        best = max(best, max(dist.values()))
    return best


def _greedy_min_fill_order(g: UndirectedGraph) -> Tuple[int, List[int]]:
    """Min-fill greedy elimination; returns (width, order)."""
    adj: Dict[int, Set[int]] = {v: set(g.adjacent(v)) for v in g.vertices}
    order: List[int] = []
    width = 0
    remaining = list(g.vertices)
    while remaining:
        best = None
        for v in remaining:
            ns = adj[v]
            fill = 0
            nl = sorted(ns)
            for i, a in enumerate(nl):
                for b in nl[i + 1 :]:
                    if b not in adj[a]:
                        fill += 1
            key = (fill, len(ns), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        ns = sorted(adj[v])
        width = max(width, len(ns))
        for i, a in enumerate(ns):
            for b in ns[i + 1 :]:
                adj[a].add(b)
                adj[b].add(a)
        for a in ns:
            adj[a].discard(v)
        del adj[v]
        remaining.remove(v)
        order.append(v)
    return width, order


def treewidth_upper_bound(g: UndirectedGraph) -> int:
    """Width of greedy min-fill elimination; an upper bound on treewidth."""
    if g.n == 0:
        return 0
    return _greedy_min_fill_order(g)[0]


def elimination_width(g: UndirectedGraph, order: Sequence[int]) -> int:
    """Width of a given elimination order (with fill-in); independent checker."""
    if sorted(order) != sorted(g.vertices):
        raise InputError("order must be a permutation of the vertices")
    adj: Dict[int, Set[int]] = {v: set(g.adjacent(v)) for v in g.vertices}
    width = 0
    for v in order:
        ns = sorted(adj[v])
        width = max(width, len(ns))
        for i, a in enumerate(ns):
            for b in ns[i + 1 :]:
                adj[a].add(b)
                adj[b].add(a)
        for a in ns:
            adj[a].discard(v)
        del adj[v]
    return width


def _component_tw_dp(vertices: List[int], adj_mask: Dict[int, int], bit: Dict[int, int]) -> Tuple[int, List[int]]:
    """Exact treewidth of one connected component by the elimination-ordering
    subset DP; returns (width, elimination order)."""
    k = len(vertices)
    full = (1 << k) - 1
    # relabel to 0..k-1
    local = {v: i for i, v in enumerate(vertices)}
    amask = [0] * k
    for v in vertices:
        m = 0
        vm = adj_mask[v]
        for w in vertices:
            if vm & bit[w]:
                m |= 1 << local[w]
        amask[local[v]] = m

    INF = k + 1
    tw = [0] * (1 << k)
    choice = [0] * (1 << k)
    for S in range(1, full + 1):
        best = INF
        best_v = -1
        rest = S
        while rest:
            vbit = rest & (-rest)
            rest ^= vbit
            v = vbit.bit_length() - 1
            prev = S ^ vbit
            # Q(prev, v): neighbors of v's closure through prev, outside prev+v
            seen = amask[v]
            grow = seen & prev
            closed = 0
            while grow:
                wbit = grow & (-grow)
                grow ^= wbit
                closed |= wbit
                w = wbit.bit_length() - 1
                seen |= amask[w]
                grow = (seen & prev) & ~closed
            q = bin(seen & ~prev & ~vbit).count("1")
            cand = tw[prev] if tw[prev] > q else q
            if cand < best or (cand == best and v < best_v):
                best = cand
                best_v = v
        tw[S] = best
        choice[S] = best_v
    order_rev = []
    S = full
    while S:
        v = choice[S]
        order_rev.append(vertices[v])
        S ^= 1 << v
    return tw[full], list(reversed(order_rev))


def treewidth_exact(g: UndirectedGraph) -> Tuple[int, List[int]]:
    """Exact treewidth with a witness elimination order.

    Safe reductions (simplicial vertices, degree-2 contraction) run first,
    then a 2^n subset dynamic program per remaining component.  Components
    still above 22 vertices after reduction exceed the cap; use
    treewidth_upper_bound for those graphs."""
    if g.n == 0:
        return 0, []

    adj: Dict[int, Set[int]] = {v: set(g.adjacent(v)) for v in g.vertices}
    order: List[int] = []
    width = 0

    def eliminate(v: int) -> None:
        ns = sorted(adj[v])
        for i, a in enumerate(ns):
            for b in ns[i + 1 :]:
                adj[a].add(b)
                adj[b].add(a)
        for a in ns:
            adj[a].discard(v)
        del adj[v]
        order.append(v)

    changed = True
    while changed and adj:
        changed = False
        for v in sorted(adj):
            ns = adj[v]
            is_clique = all(b in adj[a] for a in ns for b in ns if a < b)
            if is_clique:
                width = max(width, len(ns))
                eliminate(v)
                changed = True
                break
        else:
            for v in sorted(adj):
                if len(adj[v]) == 2:
                    width = max(width, 2)
                    eliminate(v)
                    changed = True
                    break

    if adj:
        remaining = sorted(adj)
        bit = {v: 1 << i for i, v in enumerate(remaining)}
        adj_mask = {v: sum(bit[w] for w in adj[v]) for v in remaining}
        seen: Set[int] = set()
        for v in remaining:
            if v in seen:
                continue
            comp = []
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comp.sort()
            if len(comp) > TREEWIDTH_EXACT_CAP:
                raise CapacityError(
                    f"irreducible component of {len(comp)} vertices exceeds the "
                    f"exact-treewidth cap of {TREEWIDTH_EXACT_CAP}"
                )
            w_comp, o_comp = _component_tw_dp(comp, adj_mask, bit)
            width = max(width, w_comp)
            order.extend(o_comp)

    return width, order
