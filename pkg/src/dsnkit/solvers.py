"""Exact solvers at desk scale.

`solve_exhaustive` is the ground-truth oracle, `solve_bnb` a branch-and-bound
with an admissible shortest-path bound, `solve_dst` the 3^|T| dynamic program
for out-star requests.  Infeasibility is a first-class result, never an
exception.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .dsn import (
    DsnInstance,
    Request,
    SolutionSubgraph,
    is_solution_graph,
    minimize,
    minimize_graph,
    validate,
)
from .errors import CapacityError, DomainError
from .graphs import Arc, DirectedPath, WeightedDigraph, reaches, shortest_path
from .structure import TreewidthCertificate, certify_treewidth_bound

EXHAUSTIVE_MAX_ARCS = 24
SUBSET_SCAN_MAX_ARCS = 20
DST_MAX_LEAVES = 12


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    optimum: Optional[SolutionSubgraph]
    cost: Optional[Fraction]
    node_count: int
    proved_optimal: bool
    method: str

    def to_json_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "cost": [self.cost.numerator, self.cost.denominator] if self.cost is not None else None,
            "arcs": sorted(self.optimum.arcs) if self.optimum else None,
            "nodes": self.node_count,
            "proved_optimal": self.proved_optimal,
            "method": self.method,
        }


def _infeasible(method: str, nodes: int = 0) -> SolveResult:
    return SolveResult(False, None, None, nodes, True, method)


def _finish(inst: DsnInstance, arcs: Set[Arc], nodes: int, method: str) -> SolveResult:
    sol = minimize(inst, SolutionSubgraph(inst.host, frozenset(arcs)))
    assert validate(inst, sol) is None
    return SolveResult(True, sol, sol.cost(), nodes, True, method)


def _unreachable_request(inst: DsnInstance) -> Optional[Request]:
    for s, t in inst.sorted_requests():
        if not inst.host.has_vertex(s) or not inst.host.has_vertex(t):
            return (s, t)
        if not reaches(inst.host, s, t):
            return (s, t)
    return None


# ---------------------------------------------------------------------------
# exhaustive oracle


def _request_paths(inst: DsnInstance) -> List[List[DirectedPath]]:
    """All simple paths per request, cheapest first, requests sorted."""
    from .graphs import all_simple_paths

    out = []
    for s, t in inst.sorted_requests():
        paths = all_simple_paths(inst.host, s, t)
        paths.sort(key=lambda p: (sum(inst.host.weight(u, v) for u, v in p.arcs()), p.vertices))
        out.append(paths)
    return out


def solve_exhaustive(inst: DsnInstance) -> SolveResult:
    """Exact optimum by exhausting combinations of one simple path per
    request (every minimal solution is such a union), with cost pruning.

    Agrees with the plain subset scan everywhere both run; this form stays
    inside the arc cap without visiting all 2^m subsets."""
    if inst.host.m > EXHAUSTIVE_MAX_ARCS:
        raise CapacityError(
            f"host has {inst.host.m} arcs; exhaustive cap is {EXHAUSTIVE_MAX_ARCS}"
        )
    return _solve_path_union(inst)


def _solve_path_union(inst: DsnInstance) -> SolveResult:
    """Uncapped path-union search; suitable whenever simple paths per
    request stay few (e.g. stratified generated instances)."""
    if not inst.requests:
        return _finish(inst, set(), 1, "exhaustive")
    if _unreachable_request(inst) is not None:
        return _infeasible("exhaustive")
    per_request = _request_paths(inst)
    weights = inst.host.arcs()
    best_cost: Optional[Fraction] = None
    best_arcs: Optional[Set[Arc]] = None
    nodes = 0

    def go(i: int, chosen: Set[Arc], cost: Fraction) -> None:
        nonlocal best_cost, best_arcs, nodes
        nodes += 1
        if best_cost is not None and cost >= best_cost:
            return
        if i == len(per_request):
            best_cost = cost
            best_arcs = set(chosen)
            return
        for path in per_request[i]:
            extra = [a for a in path.arcs() if a not in chosen]
            add = sum((weights[a] for a in extra), Fraction(0))
            if best_cost is not None and cost + add >= best_cost:
                continue
            chosen.update(extra)
            go(i + 1, chosen, cost + add)
            chosen.difference_update(extra)

    go(0, set(), Fraction(0))
    if best_arcs is None:
        return _infeasible("exhaustive", nodes)
    return _finish(inst, best_arcs, nodes, "exhaustive")


def _solve_subset_scan(inst: DsnInstance) -> SolveResult:
    """Literal scan of all arc subsets; cross-check oracle for tiny hosts."""
    if inst.host.m > SUBSET_SCAN_MAX_ARCS:
        raise CapacityError(
            f"host has {inst.host.m} arcs; subset-scan cap is {SUBSET_SCAN_MAX_ARCS}"
        )
    arcs = sorted(inst.host.arcs())
    weights = inst.host.arcs()
    best: Optional[Tuple[Fraction, List[Arc]]] = None
    nodes = 0
    for k in range(len(arcs) + 1):
        for combo in combinations(arcs, k):
            nodes += 1
            cost = sum((weights[a] for a in combo), Fraction(0))
            if best is not None and cost >= best[0]:
                continue
            g = inst.host.subgraph(combo, extra_vertices=inst.terminals)
            if is_solution_graph(g, inst.requests):
                best = (cost, list(combo))
    if best is None:
        return _infeasible("subset-scan", nodes)
    return _finish(inst, set(best[1]), nodes, "subset-scan")


# ---------------------------------------------------------------------------
# branch and bound


def solve_bnb(inst: DsnInstance) -> SolveResult:
    """Branch on arcs by ascending id (include branch first).

    Lower bound at a node: cost of included arcs plus the largest
    shortest-path cost over unsatisfied requests, with included arcs free and
    excluded arcs removed.  The bound ignores sharing between requests, so it
    never overestimates.  Internally weights are scaled to integers to keep
    the inner Dijkstra cheap; reported costs are exact rationals."""
    if not inst.requests:
        return _finish(inst, set(), 1, "bnb")
    if _unreachable_request(inst) is not None:
        return _infeasible("bnb")
    host = inst.host
    arcs = sorted(host.arcs())
    weights = host.arcs()
    requests = inst.sorted_requests()

    scale = 1
    for w in weights.values():
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    iw = {a: int(w * scale) for a, w in weights.items()}
    adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in host.vertices}
    for (u, v), w in iw.items():
        adj[u].append((v, w))

    best_cost: Optional[int] = None
    best_arcs: Optional[FrozenSet[Arc]] = None
    nodes = 0

    def unsatisfied(included: FrozenSet[Arc]) -> List[Request]:
        out_map: Dict[int, List[int]] = {}
        for u, v in included:
            out_map.setdefault(u, []).append(v)
        missing = []
        for s, t in requests:
            seen = {s}
            stack = [s]
            hit = False
            while stack:
                u = stack.pop()
                if u == t:
                    hit = True
                    break
                for v in out_map.get(u, ()):
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            if not hit:
                missing.append((s, t))
        return missing

    def path_bound(s: int, t: int, included: FrozenSet[Arc], excluded: FrozenSet[Arc]) -> Optional[int]:
        dist = {s: 0}
        heap = [(0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if u == t:
                return d
            if d > dist.get(u, d):
                continue
            for v, w in adj[u]:
                if (u, v) in excluded:
                    continue
                nd = d if (u, v) in included else d + w
                if v not in dist or nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return None

    def go(idx: int, included: FrozenSet[Arc], excluded: FrozenSet[Arc], inc_cost: int) -> None:
        nonlocal best_cost, best_arcs, nodes
        nodes += 1
        missing = unsatisfied(included)
        if not missing:
            if best_cost is None or inc_cost < best_cost:
                best_cost = inc_cost
                best_arcs = included
            return
        worst = 0
        for s, t in missing:
            d = path_bound(s, t, included, excluded)
            if d is None:
                return  # request unsatisfiable in this subtree
            worst = max(worst, d)
        if best_cost is not None and inc_cost + worst >= best_cost:
            return
        if idx == len(arcs):
            return
        arc = arcs[idx]
        go(idx + 1, included | {arc}, excluded, inc_cost + iw[arc])
        go(idx + 1, included, excluded | {arc}, inc_cost)

    go(0, frozenset(), frozenset(), 0)
    if best_arcs is None:
        return _infeasible("bnb", nodes)
    return _finish(inst, set(best_arcs), nodes, "bnb")


# ---------------------------------------------------------------------------
# out-star dynamic program


def dst_root(inst: DsnInstance) -> int:
    """The root of an out-star request set, or DomainError."""
    if not inst.requests:
        raise DomainError("empty request set has no root; use solve_bnb")
    sources = {s for s, _ in inst.requests}
    targets = {t for _, t in inst.requests}
    if len(sources) != 1:
        raise DomainError("requests are not an out-star (multiple sources); use solve_bnb")
    (r,) = sources
    if r in targets:
        raise DomainError("requests are not an out-star (root is also a target); use solve_bnb")
    if inst.requests != frozenset((r, t) for t in targets):
        raise DomainError("requests are not an out-star; use solve_bnb")
    return r


def solve_dst(inst: DsnInstance) -> SolveResult:
    """Dynamic program over (terminal subset, vertex) states: a cheapest tree
    from v covering S either walks a shortest path to a vertex u and splits S
    there, or S is a single terminal reached by a shortest path."""
    r = dst_root(inst)
    leaves = sorted(t for _, t in inst.requests)
    if len(leaves) > DST_MAX_LEAVES:
        raise CapacityError(f"{len(leaves)} leaves; out-star cap is {DST_MAX_LEAVES}")
    if _unreachable_request(inst) is not None:
        return _infeasible("dst")
    host = inst.host
    verts = list(host.vertices)
    sp: Dict[Tuple[int, int], Tuple[DirectedPath, Fraction]] = {}
    for v in verts:
        for u in verts:
            found = shortest_path(host, v, u)
            if found is not None:
                sp[(v, u)] = found

    bit = {t: 1 << i for i, t in enumerate(leaves)}
    full = (1 << len(leaves)) - 1
    INF = None
    f: List[Dict[int, Fraction]] = [dict() for _ in range(full + 1)]
    choice: List[Dict[int, Tuple]] = [dict() for _ in range(full + 1)]
    nodes = 0

    for t in leaves:
        S = bit[t]
        for v in verts:
            if (v, t) in sp:
                f[S][v] = sp[(v, t)][1]
                choice[S][v] = ("leaf", t)

    masks = sorted(range(1, full + 1), key=lambda m: (bin(m).count("1"), m))
    for S in masks:
        if bin(S).count("1") < 2:
            continue
        low = S & (-S)
        local: Dict[int, Tuple[Fraction, Tuple]] = {}
        for u in verts:
            best = None
            S1 = (S - 1) & S
            while S1 > 0:
                if S1 & low:
                    S2 = S ^ S1
                    if u in f[S1] and u in f[S2]:
                        val = f[S1][u] + f[S2][u]
                        if best is None or val < best[0]:
                            best = (val, ("split", u, S1, S2))
                S1 = (S1 - 1) & S
            if best is not None:
                local[u] = best
        for v in verts:
            best = None
            for u in verts:
                nodes += 1
                if u not in local or (v, u) not in sp:
                    continue
                val = sp[(v, u)][1] + local[u][0]
                if best is None or val < best[0]:
                    best = (val, ("walk", u, local[u][1]))
            if best is not None:
                f[S][v] = best[0]
                choice[S][v] = best[1]

    if r not in f[full]:
        return _infeasible("dst", nodes)

    arcs: Set[Arc] = set()

    def build(S: int, v: int) -> None:
        ch = choice[S][v]
        if ch[0] == "leaf":
            arcs.update(sp[(v, ch[1])][0].arcs())
        elif ch[0] == "walk":
            _, u, inner = ch
            arcs.update(sp[(v, u)][0].arcs())
            _, _, S1, S2 = inner
            build(S1, u)
            build(S2, u)
        else:
            raise AssertionError(ch)

    build(full, r)
    result = _finish(inst, arcs, nodes, "dst")
    assert result.cost == f[full][r], "witness cost disagrees with the table"
    return result


# ---------------------------------------------------------------------------
# wrapper


def _is_out_star(inst: DsnInstance) -> bool:
    try:
        dst_root(inst)
        return True
    except DomainError:
        return False


def solve_with_certificate(
    inst: DsnInstance, declared_genus: int = 0, engine: str = "auto"
) -> Tuple[SolveResult, Optional[TreewidthCertificate]]:
    """Solve exactly, minimize, then certify the solution's structure."""
    if engine == "auto":
        if _is_out_star(inst) and len(inst.terminals) - 1 <= DST_MAX_LEAVES:
            engine = "dst"
        elif inst.host.m <= EXHAUSTIVE_MAX_ARCS:
            engine = "exhaustive"
        else:
            engine = "bnb"
    solver = {"exhaustive": solve_exhaustive, "bnb": solve_bnb, "dst": solve_dst}
    if engine not in solver:
        raise DomainError(f"unknown engine {engine!r}")
    result = solver[engine](inst)
    if not result.feasible or result.optimum is None or not inst.requests:
        return result, None
    cert = certify_treewidth_bound(inst, result.optimum, declared_genus)
    return result, cert
