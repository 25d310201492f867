"""Shared corpus builders: seeded random instances, ladder hosts with
terminals attached, and the small 3-regular pattern corpus."""

import random
from fractions import Fraction

import pytest

from dsnkit.dsn import DsnInstance
from dsnkit.graphs import UndirectedGraph, WeightedDigraph
from dsnkit.ladders import LadderSpec, ladder_corners, make_ladder
from dsnkit.reduction import PsiInstance


def random_instance(seed, n_range=(4, 8), density=0.35, max_requests=4, max_arcs=20):
    """Seeded random DSN instance, or None when the draw exceeds max_arcs."""
    rng = random.Random(seed)
    n = rng.randint(*n_range)
    arcs = {}
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < density:
                arcs[(u, v)] = Fraction(rng.randint(1, 9))
    if len(arcs) > max_arcs:
        return None
    g = WeightedDigraph(range(n), arcs)
    requests = set()
    target = rng.randint(1, max_requests)
    while len(requests) < target:
        s, t = rng.sample(range(n), 2)
        requests.add((s, t))
    return DsnInstance(g, requests)


def random_instances(count, base_seed=0, **kw):
    out = []
    seed = base_seed
    while len(out) < count:
        inst = random_instance(seed, **kw)
        seed += 1
        if inst is not None:
            out.append(inst)
    return out


def ladder_with_terminals(n, identified=()):
    """A ladder plus two fresh terminals wired so that the two request paths
    traverse the two rails; requests make the whole graph one minimal
    solution."""
    spec = LadderSpec(n, frozenset(identified))
    g = make_ladder(spec)
    a1, b1, an, bn = ladder_corners(spec)
    s, t = 1000, 1001
    arcs = dict(g.arcs())
    if n % 2 == 0:
        arcs[(s, a1)] = Fraction(1)
        arcs[(an, t)] = Fraction(1)
        arcs[(t, bn)] = Fraction(1)
        arcs[(b1, s)] = Fraction(1)
    else:
        arcs[(s, a1)] = Fraction(1)
        arcs[(bn, t)] = Fraction(1)
        arcs[(t, an)] = Fraction(1)
        arcs[(b1, s)] = Fraction(1)
    host = WeightedDigraph(set(g.vertices) | {s, t}, arcs)
    return DsnInstance(host, {(s, t), (t, s)})


K4 = UndirectedGraph(range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)])
K33 = UndirectedGraph(range(6), [(i, j + 3) for i in range(3) for j in range(3)])
CUBE = UndirectedGraph(
    range(8),
    [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7),
     (0, 4), (1, 5), (2, 6), (3, 7)],
)
PATTERNS = {"K4": K4, "K33": K33, "cube": CUBE}


def random_psi_host(pattern, seed, max_n=12, planted=None):
    """Random host around a 3-regular pattern; half the seeds plant a
    ground-truth embedding so both answers appear in the corpus."""
    rng = random.Random(seed)
    if planted is None:
        planted = seed % 2 == 0
    k = pattern.n
    nG = min(max_n, k + rng.randint(0, 3))
    classmap = {i: i for i in range(k)}
    for v in range(k, nG):
        classmap[v] = rng.randrange(k)
    edges = set()
    if planted:
        edges |= set(pattern.edges)
    pairs = [
        (u, v)
        for u in range(nG)
        for v in range(u + 1, nG)
        if classmap[u] != classmap[v]
    ]
    edges |= set(rng.sample(pairs, min(len(pairs), rng.randint(4, 12))))
    return PsiInstance(UndirectedGraph(range(nG), edges), pattern, classmap)


@pytest.fixture
def triangle_scss():
    host = WeightedDigraph(range(3), {(u, v): 1 for u in range(3) for v in range(3) if u != v})
    return DsnInstance(host, {(0, 1), (1, 2), (2, 0)})
