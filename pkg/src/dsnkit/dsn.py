"""DSN problem model: instances, solutions, cost, validation, minimality.

Two layers: `DsnInstance`/`SolutionSubgraph` tie a solution to a host graph,
while the `*_graph` helpers work on standalone digraphs.  The structural
pipeline produces graphs that are not subgraphs of any host, so the graph
level is where the real logic lives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .errors import InputError, PreconditionError
from .graphs import Arc, WeightedDigraph, reaches

Request = Tuple[int, int]


def _normalize_requests_arg(requests: Iterable[Request]) -> FrozenSet[Request]:
    out = set()
    for s, t in requests:
        if s == t:
            raise InputError(f"request {s}->{t} has equal endpoints")
        out.add((s, t))
    return frozenset(out)


@dataclass(frozen=True)
class DsnInstance:
    """A DSN instance: host digraph plus a simple request digraph on the
    terminal set.  Terminals are exactly the request endpoints."""

    host: WeightedDigraph
    requests: FrozenSet[Request]

    def __init__(self, host: WeightedDigraph, requests: Iterable[Request]):
        reqs = _normalize_requests_arg(requests)
        for s, t in reqs:
            if not host.has_vertex(s) or not host.has_vertex(t):
                raise InputError(f"request {s}->{t} endpoint not in the host graph")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "requests", reqs)

    @property
    def terminals(self) -> Tuple[int, ...]:
        return tuple(sorted({v for r in self.requests for v in r}))

    @property
    def q(self) -> int:
        return len(self.terminals)

    @property
    def p(self) -> int:
        return len(self.requests)

    def sorted_requests(self) -> List[Request]:
        return sorted(self.requests)

    def reverse(self) -> "DsnInstance":
        return DsnInstance(self.host.reverse(), {(t, s) for s, t in self.requests})


@dataclass(frozen=True)
class SolutionSubgraph:
    """An arc subset of a host graph; the vertex set is implied by the arcs
    (plus any terminals the caller pins)."""

    host: WeightedDigraph
    arcs: FrozenSet[Arc]
    pinned: FrozenSet[int] = frozenset()

    def __init__(self, host: WeightedDigraph, arcs: Iterable[Arc], pinned: Iterable[int] = ()):
        arcset = frozenset(arcs)
        for a in arcset:
            if not host.has_arc(*a):
                raise InputError(f"arc {a} is not in the host graph")
        pin = frozenset(pinned)
        for v in pin:
            if not host.has_vertex(v):
                raise InputError(f"pinned vertex {v} is not in the host graph")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "arcs", arcset)
        object.__setattr__(self, "pinned", pin)

    def as_graph(self) -> WeightedDigraph:
        return self.host.subgraph(self.arcs, extra_vertices=self.pinned)

    def cost(self) -> Fraction:
        return sum((self.host.weight(*a) for a in self.arcs), Fraction(0))

    def reverse(self) -> "SolutionSubgraph":
        return SolutionSubgraph(
            self.host.reverse(), {(v, u) for u, v in self.arcs}, self.pinned
        )


# ---------------------------------------------------------------------------
# graph-level predicates


def violated_request(graph: WeightedDigraph, requests: Iterable[Request]) -> Optional[Request]:
    """Lexicographically first request with no s-t path, or None if valid."""
    for s, t in sorted(_normalize_requests_arg(requests)):
        if not graph.has_vertex(s) or not graph.has_vertex(t) or not reaches(graph, s, t):
            return (s, t)
    return None


def is_solution_graph(graph: WeightedDigraph, requests: Iterable[Request]) -> bool:
    return violated_request(graph, requests) is None


def is_inclusion_minimal_graph(graph: WeightedDigraph, requests: Iterable[Request]) -> bool:
    """True iff removing any single arc violates some request."""
    reqs = _normalize_requests_arg(requests)
    if violated_request(graph, reqs) is not None:
        raise PreconditionError("graph is not a valid solution")
    for a in graph.arc_set():
        if violated_request(graph.without_arc(*a), reqs) is None:
            return False
    return True


def minimize_graph(graph: WeightedDigraph, requests: Iterable[Request]) -> WeightedDigraph:
    """Remove arcs while the graph stays a valid solution.

    Arcs are attempted in descending weight, ties by ascending arc id, so the
    result is deterministic.  Isolated non-terminals are dropped."""
    reqs = _normalize_requests_arg(requests)
    if violated_request(graph, reqs) is not None:
        raise PreconditionError("graph is not a valid solution")
    terminals = {v for r in reqs for v in r}
    current = graph
    for arc in sorted(graph.arc_set(), key=lambda a: (-graph.weight(*a), a)):
        if not current.has_arc(*arc):
            continue
        candidate = current.without_arc(*arc)
        if violated_request(candidate, reqs) is None:
            current = candidate
    used = {v for a in current.arc_set() for v in a} | terminals
    return current.induced(used & set(current.vertices))


def normalize_requests_graph(graph: WeightedDigraph, terminals: Iterable[int]) -> FrozenSet[Request]:
    """R' on the terminal set: st in R' iff a T-avoiding s-t path exists."""
    ts = sorted(set(terminals))
    out = set()
    for s in ts:
        for t in ts:
            if s == t or not graph.has_vertex(s) or not graph.has_vertex(t):
                continue
            if reaches(graph, s, t, set(ts) - {s, t}):
                out.add((s, t))
    return frozenset(out)


# ---------------------------------------------------------------------------
# instance-level operations


def validate(inst: DsnInstance, sol: SolutionSubgraph) -> Optional[Request]:
    """None if every request is satisfied, else the first violated request."""
    if sol.host is not inst.host and sol.host != inst.host:
        raise InputError("solution host differs from the instance host")
    return violated_request(sol.as_graph(), inst.requests)


def cost(sol: SolutionSubgraph) -> Fraction:
    return sol.cost()


def is_inclusion_minimal(inst: DsnInstance, sol: SolutionSubgraph) -> bool:
    if validate(inst, sol) is not None:
        raise PreconditionError("solution is not valid")
    return is_inclusion_minimal_graph(sol.as_graph(), inst.requests)


def minimize(inst: DsnInstance, sol: SolutionSubgraph) -> SolutionSubgraph:
    if validate(inst, sol) is not None:
        raise PreconditionError("solution is not valid")
    reduced = minimize_graph(sol.as_graph(), inst.requests)
    return SolutionSubgraph(inst.host, reduced.arc_set(), pinned=inst.terminals)


def normalize_requests(sol: SolutionSubgraph, terminals: Iterable[int]) -> FrozenSet[Request]:
    return normalize_requests_graph(sol.as_graph(), terminals)


def reverse_instance(inst: DsnInstance) -> DsnInstance:
    return inst.reverse()


def reverse_solution(sol: SolutionSubgraph) -> SolutionSubgraph:
    return sol.reverse()
