"""Hardness-instance generation: pattern-embedding problems encoded as
directed Steiner network instances with a tight cost threshold.

The generator labels the pattern graph with three small colour families,
builds a stratified unit-weight digraph whose optimum cost hits the
threshold exactly when a class-respecting embedding exists, and can read an
embedding back out of a tight solution.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, isqrt
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .dsn import DsnInstance, Request, SolutionSubgraph, validate
from .errors import CapacityError, InputError, InvariantError, PreconditionError
from .graphs import UndirectedGraph
from .graphs import WeightedDigraph

Edge = Tuple[int, int]
PSI_BRUTEFORCE_MAX_K = 10


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PsiInstance:
    """Host graph, pattern graph and the class map from host to pattern
    vertices; an embedding must send each pattern vertex into its own class."""

    hostG: UndirectedGraph
    patternH: UndirectedGraph
    classmap: Dict[int, int]  # V(G) -> V(H)

    def __post_init__(self):
        g, h = self.hostG, self.patternH
        if h.n > g.n:
            raise InputError("pattern graph is larger than the host graph")
        if set(self.classmap) != set(g.vertices):
            raise InputError("class map must be total on the host vertices")
        if not set(self.classmap.values()) <= set(h.vertices):
            raise InputError("class map image must lie in the pattern graph")

    @property
    def k(self) -> int:
        return self.patternH.n

    def vertex_class(self, h: int) -> List[int]:
        return sorted(v for v, c in self.classmap.items() if c == h)


@dataclass(frozen=True)
class Labelling:
    """Three colour maps on the pattern graph:

    - alpha groups vertices into chunks of a greedy 4-colouring,
    - beta separates vertices sharing a chunk or an edge,
    - gamma separates edges whose endpoints share an alpha colour.

    Together (alpha, beta) identifies a vertex and (alpha-of-endpoint, gamma)
    identifies an edge."""

    r: int
    eta: Dict[int, int]  # greedy 4-colouring
    chunks: Tuple[Tuple[int, ...], ...]  # ordered nonempty chunks
    alpha: Dict[int, int]  # vertex -> chunk index
    beta: Dict[int, int]  # vertex -> colour in [0, r+2]
    gamma: Dict[Edge, int]  # pattern edge -> colour in [0, 6r-2]

    @property
    def num_x(self) -> int:
        return len(self.chunks)

    @property
    def num_y(self) -> int:
        return 1 + max(self.beta.values()) if self.beta else 0

    @property
    def num_z(self) -> int:
        return 1 + max(self.gamma.values()) if self.gamma else 0


def _greedy_vertex_colouring(g: UndirectedGraph) -> Dict[int, int]:
    colour: Dict[int, int] = {}
    for v in g.vertices:
        used = {colour[u] for u in g.adjacent(v) if u in colour}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    return colour


def check_labelling(h: UndirectedGraph, lab: Labelling) -> Optional[str]:
    """Exhaustive double-loop verification of the three separation
    conditions; returns a description of the first violation."""
    vs = list(h.vertices)
    for u in vs:
        for v in vs:
            if u < v and lab.alpha[u] == lab.alpha[v] and lab.beta[u] == lab.beta[v]:
                return f"vertices {u},{v} share both alpha and beta"
    for u, v in sorted(h.edges):
        if lab.alpha[u] == lab.alpha[v]:
            return f"edge {u},{v} has alpha-equal endpoints"
        if lab.beta[u] == lab.beta[v]:
            return f"edge {u},{v} has beta-equal endpoints"
    edges = sorted(h.edges)
    for e in edges:
        for f in edges:
            if e >= f:
                continue
            shares = any(
                lab.alpha[a] == lab.alpha[b] for a in e for b in f
            )
            if shares and lab.gamma[e] == lab.gamma[f]:
                return f"edges {e},{f} with alpha-linked endpoints share gamma"
    return None


def build_labelling(psi: PsiInstance) -> Labelling:
    """The three-stage labelling: greedy 4-colouring, chunking each colour
    class into groups of size r = ceil(sqrt(k)), then two more greedy
    colourings on the chunk-clique graph and the chunk-contracted multigraph."""
    h = psi.patternH
    if any(h.degree(v) > 3 for v in h.vertices):
        raise InputError("pattern graph must have maximum degree 3")
    if h.n > 0 and any(h.degree(v) != 3 for v in h.vertices):
        warnings.warn("pattern graph is not 3-regular; size bounds still hold", stacklevel=2)
    k = h.n
    r = max(1, ceil_sqrt(k))

    eta = _greedy_vertex_colouring(h)
    if eta and max(eta.values()) > 3:
        raise InvariantError("greedy colouring of a max-degree-3 graph used > 4 colours")

    chunk_list: List[Tuple[int, ...]] = []
    for colour in range(4):
        members = sorted(v for v, c in eta.items() if c == colour)
        for i in range(0, len(members), r):
            chunk_list.append(tuple(members[i : i + r]))
    chunks = tuple(chunk_list)
    alpha = {v: idx for idx, chunk in enumerate(chunks) for v in chunk}
    if len(chunks) > r + 4:
        raise InvariantError(f"{len(chunks)} alpha labels exceed r+4 = {r + 4}")

    # chunk-clique graph: the pattern plus a clique inside each chunk
    extra = {
        _edge(u, v)
        for chunk in chunks
        for i, u in enumerate(chunk)
        for v in chunk[i + 1 :]
    }
    h_prime = UndirectedGraph(h.vertices, set(h.edges) | extra)
    beta = _greedy_vertex_colouring(h_prime)
    if beta and max(beta.values()) > r + 2:
        raise InvariantError(f"beta used more than r+3 = {r + 3} colours")

    # chunk-contracted multigraph: colour pattern edges so that edges
    # touching a common chunk get distinct colours
    gamma: Dict[Edge, int] = {}
    for e in sorted(h.edges):
        cu, cv = alpha[e[0]], alpha[e[1]]
        used = set()
        for f, col in gamma.items():
            if {alpha[f[0]], alpha[f[1]]} & {cu, cv}:
                used.add(col)
        c = 0
        while c in used:
            c += 1
        gamma[e] = c
    if gamma and max(gamma.values()) > 6 * r - 2:
        raise InvariantError(f"gamma used more than 6r-1 = {6 * r - 1} colours")

    lab = Labelling(r, eta, chunks, alpha, beta, gamma)
    bad = check_labelling(h, lab)
    if bad is not None:
        raise InvariantError(f"labelling condition violated: {bad}")
    return lab


def ceil_sqrt(k: int) -> int:
    s = isqrt(k)
    return s if s * s == k else s + 1


@dataclass(frozen=True)
class ReductionOutput:
    psi: PsiInstance
    labelling: Labelling
    dsn: DsnInstance
    threshold: int  # 2 |V(H)| + 3 |E(H)|
    v_vertices: FrozenSet[int]
    w_vertex: Dict[Edge, int]  # host edge -> hub vertex
    x_vertex: Dict[int, int]  # alpha label -> terminal
    y_vertex: Dict[int, int]  # beta colour -> terminal
    z_vertex: Dict[int, int]  # gamma colour -> terminal
    a_v_arcs: FrozenSet[Tuple[int, int]]
    a_w_arcs: FrozenSet[Tuple[int, int]]
    a_y: FrozenSet[Request]
    a_z: FrozenSet[Request]


def build_dsn(psi: PsiInstance, lab: Labelling) -> ReductionOutput:
    """Materialize the stratified unit-weight digraph and its request set.

    Vertex strata: host vertices, one hub per host edge, and one terminal per
    alpha/beta/gamma colour.  Arcs run colour->vertex->colour and
    vertex->hub->colour only, so every terminal-to-terminal path has length
    exactly 2 (into the beta layer) or 3 (into the gamma layer)."""
    g, h = psi.hostG, psi.patternH
    nxt = (max(g.vertices) + 1) if g.n else 0

    w_vertex: Dict[Edge, int] = {}
    for e in sorted(g.edges):
        w_vertex[e] = nxt
        nxt += 1
    x_vertex = {i: nxt + i for i in range(lab.num_x)}
    nxt += lab.num_x
    y_vertex = {i: nxt + i for i in range(lab.num_y)}
    nxt += lab.num_y
    z_vertex = {i: nxt + i for i in range(lab.num_z)}
    nxt += lab.num_z

    a_v: Set[Tuple[int, int]] = set()
    for u in g.vertices:
        hu = psi.classmap[u]
        a_v.add((x_vertex[lab.alpha[hu]], u))
        a_v.add((u, y_vertex[lab.beta[hu]]))
    a_w: Set[Tuple[int, int]] = set()
    for (u, v), w in w_vertex.items():
        he = _edge(psi.classmap[u], psi.classmap[v])
        if he[0] == he[1] or he not in lab.gamma:
            # host edge inside a class or across non-adjacent classes: it can
            # never realize a pattern edge, so its hub gets no outlet
            a_w.add((u, w))
            a_w.add((v, w))
            continue
        a_w.add((u, w))
        a_w.add((v, w))
        a_w.add((w, z_vertex[lab.gamma[he]]))

    a_y = frozenset(
        (x_vertex[lab.alpha[u]], y_vertex[lab.beta[u]]) for u in h.vertices
    )
    if len(a_y) != h.n:
        raise InvariantError("vertex requests are not pairwise distinct")
    a_z_list = []
    for u, v in sorted(h.edges):
        ze = z_vertex[lab.gamma[_edge(u, v)]]
        a_z_list.append((x_vertex[lab.alpha[u]], ze))
        a_z_list.append((x_vertex[lab.alpha[v]], ze))
    a_z = frozenset(a_z_list)
    if len(a_z) != 2 * h.m:
        raise InvariantError("edge requests are not pairwise distinct")

    vertices = set(g.vertices) | set(w_vertex.values())
    vertices |= set(x_vertex.values()) | set(y_vertex.values()) | set(z_vertex.values())
    arcs = {arc: Fraction(1) for arc in a_v | a_w}
    host = WeightedDigraph(vertices, arcs)
    dsn = DsnInstance(host, a_y | a_z)

    out = ReductionOutput(
        psi=psi,
        labelling=lab,
        dsn=dsn,
        threshold=2 * h.n + 3 * h.m,
        v_vertices=frozenset(g.vertices),
        w_vertex=w_vertex,
        x_vertex=x_vertex,
        y_vertex=y_vertex,
        z_vertex=z_vertex,
        a_v_arcs=frozenset(a_v),
        a_w_arcs=frozenset(a_w),
        a_y=a_y,
        a_z=a_z,
    )
    _audit_strata(out)
    return out


def _audit_strata(out: ReductionOutput) -> None:
    """Every arc must step down exactly one stratum, which forces the
    length-2 / length-3 shape of all terminal-to-terminal paths."""
    V = out.v_vertices
    W = set(out.w_vertex.values())
    X = set(out.x_vertex.values())
    Y = set(out.y_vertex.values())
    Z = set(out.z_vertex.values())
    if out.a_v_arcs & out.a_w_arcs:
        raise InvariantError("arc strata overlap")
    for u, v in out.a_v_arcs:
        if not ((u in X and v in V) or (u in V and v in Y)):
            raise InvariantError(f"misplaced vertex-stratum arc {(u, v)}")
    for u, v in out.a_w_arcs:
        if not ((u in V and v in W) or (u in W and v in Z)):
            raise InvariantError(f"misplaced hub-stratum arc {(u, v)}")
    for s, t in out.dsn.requests:
        if s not in X or t not in (Y | Z):
            raise InvariantError(f"request {(s, t)} leaves the terminal strata")


def generate_hardness_instance(psi: PsiInstance) -> ReductionOutput:
    return build_dsn(psi, build_labelling(psi))


# ---------------------------------------------------------------------------
# deciding and extracting


def decide_psi_via_dsn(psi: PsiInstance, solver=None) -> bool:
    """Generate, solve exactly, and compare the optimum to the threshold.

    The default engine exhausts per-request path combinations, which is fast
    on generated instances because their stratified shape leaves each
    request only a handful of simple paths."""
    if solver is None:
        from .solvers import _solve_path_union

        solver = _solve_path_union
    out = generate_hardness_instance(psi)
    result = solver(out.dsn)
    if not result.feasible:
        return False
    return result.cost <= out.threshold


def solve_psi_bruteforce(psi: PsiInstance) -> Optional[Dict[int, int]]:
    """Backtracking over class-respecting assignments; embeddings are
    injective for free because classes are disjoint."""
    h = psi.patternH
    if h.n > PSI_BRUTEFORCE_MAX_K:
        raise CapacityError(f"pattern has {h.n} vertices; brute-force cap is {PSI_BRUTEFORCE_MAX_K}")
    order = list(h.vertices)
    classes = {v: psi.vertex_class(v) for v in order}
    if any(not classes[v] for v in order):
        return None
    phi: Dict[int, int] = {}

    def ok(v: int, gv: int) -> bool:
        for u in h.adjacent(v):
            if u in phi and not psi.hostG.has_edge(phi[u], gv):
                return False
        return True

    def go(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for gv in classes[v]:
            if ok(v, gv):
                phi[v] = gv
                if go(i + 1):
                    return True
                del phi[v]
        return False

    if not go(0):
        return None
    verify_embedding(psi, phi)
    return dict(phi)


def verify_embedding(psi: PsiInstance, phi: Dict[int, int]) -> None:
    """Independent re-check: injective, class-respecting, edge-preserving."""
    h = psi.patternH
    if set(phi) != set(h.vertices):
        raise InvariantError("embedding is not total")
    if len(set(phi.values())) != len(phi):
        raise InvariantError("embedding is not injective")
    for v, gv in phi.items():
        if psi.classmap[gv] != v:
            raise InvariantError(f"embedding leaves class at {v}")
    for u, v in h.edges:
        if not psi.hostG.has_edge(phi[u], phi[v]):
            raise InvariantError(f"pattern edge {(u, v)} not realized")


def embedding_solution(out: ReductionOutput, phi: Dict[int, int]) -> SolutionSubgraph:
    """Encode an embedding as the canonical tight solution."""
    verify_embedding(out.psi, phi)
    lab = out.labelling
    arcs: Set[Tuple[int, int]] = set()
    for u, gu in phi.items():
        arcs.add((out.x_vertex[lab.alpha[u]], gu))
        arcs.add((gu, out.y_vertex[lab.beta[u]]))
    for u, v in out.psi.patternH.edges:
        ge = _edge(phi[u], phi[v])
        w = out.w_vertex[ge]
        arcs.add((phi[u], w))
        arcs.add((phi[v], w))
        arcs.add((w, out.z_vertex[lab.gamma[_edge(u, v)]]))
    return SolutionSubgraph(out.dsn.host, frozenset(arcs))


def extract_embedding(out: ReductionOutput, sol: SolutionSubgraph) -> Dict[int, int]:
    """Read the embedding off a tight solution: for each pattern vertex the
    unique class member carrying its colour-to-colour path."""
    if validate(out.dsn, sol) is not None:
        raise PreconditionError("solution does not satisfy the requests")
    if sol.cost() > out.threshold:
        raise PreconditionError(
            f"solution cost {sol.cost()} exceeds the threshold {out.threshold}"
        )
    lab = out.labelling
    arcs = set(sol.arcs)
    phi: Dict[int, int] = {}
    for u in out.psi.patternH.vertices:
        x = out.x_vertex[lab.alpha[u]]
        y = out.y_vertex[lab.beta[u]]
        cands = [
            gv
            for gv in out.psi.vertex_class(u)
            if (x, gv) in arcs and (gv, y) in arcs
        ]
        if len(cands) > 1:
            raise InvariantError(
                f"two class members {cands} realize the path for pattern vertex {u}"
            )
        if not cands:
            raise InvariantError(f"no class member realizes the path for pattern vertex {u}")
        phi[u] = cands[0]
    for u, v in out.psi.patternH.edges:
        z = out.z_vertex[lab.gamma[_edge(u, v)]]
        ge = _edge(phi[u], phi[v])
        w = out.w_vertex.get(ge)
        if (
            w is None
            or (phi[u], w) not in arcs
            or (phi[v], w) not in arcs
            or (w, z) not in arcs
        ):
            raise InvariantError(f"pattern edge {(u, v)} lacks a shared hub in the solution")
    verify_embedding(out.psi, phi)
    return phi
