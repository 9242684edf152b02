"""Seeded instance generators for the randomized suites.

Every generator takes a ``random.Random`` so runs are reproducible from one
seed.  Degree-deficient instances are built by deleting random cross edges
while each endpoint still has deletion budget left.
"""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from .bipartite import SplitDistanceReport, SplitWitness
from .graph import BLUE, RED, ColouredGraph, classes_for_shape, cross_pairs
from .matchings import delete_edges


def _split_colour(side0: set, A: set, C: set):
    """Blue on A-C and B-D, red on A-D and B-C, where A, B partition ``side0``."""

    def colour(u, v):
        if u not in side0:
            u, v = v, u
        return BLUE if (u in A) == (v in C) else RED

    return colour


def _delete_within_budget(g: ColouredGraph, budget: Sequence[int], rng: random.Random) -> ColouredGraph:
    """Delete random cross edges until no edge has budget left at both ends."""
    left = list(budget)
    pairs = cross_pairs(g.classes)
    rng.shuffle(pairs)
    gone = []
    for u, v in pairs:
        if left[u] > 0 and left[v] > 0:
            left[u] -= 1
            left[v] -= 1
            gone.append((u, v))
    return delete_edges(g, gone)


def tripartite_sizes(n: int, eps: float, rng: random.Random) -> tuple[int, int, int]:
    """Random fair class sizes, each at least ``3 eps n``."""
    floor = math.ceil(3 * eps * n)
    if 3 * floor > n:
        raise ValueError(f"no tripartite shape on {n} vertices has classes of size {floor}")
    while True:
        a = rng.randint(floor, min(n // 2, n - 2 * floor))
        b = rng.randint(floor, min(n // 2, n - a - floor))
        c = n - a - b
        if c >= floor and 2 * max(a, b, c) <= n:
            return tuple(sorted((a, b, c), reverse=True))


def robust_tripartite_instance(n: int, eps: float, rng: random.Random, style: str = "random") -> ColouredGraph:
    """Fair tripartite graph with every cross degree at least ``(1 - eps)(n - |V_i|)``.

    ``style`` is ``random`` (independent colours with a random red density) or
    ``split-like`` (a split colouring between ``V_1`` and the other two classes).
    """
    classes = classes_for_shape(tripartite_sizes(n, eps, rng))
    if style == "random":
        p = rng.uniform(0.1, 0.9)
        g = ColouredGraph.from_function(classes, lambda u, v: RED if rng.random() < p else BLUE)
    elif style == "split-like":
        V1 = classes[0]
        A = set(rng.sample(V1, rng.randint(1, len(V1) - 1)))
        rest = classes[1] + classes[2]
        C = set(rng.sample(rest, rng.randint(1, len(rest) - 1)))
        inside = set(rest)
        split = _split_colour(set(V1), A, C)

        def colour(u, v):
            if u in inside and v in inside:
                return RED if rng.random() < 0.5 else BLUE
            return split(u, v)

        g = ColouredGraph.from_function(classes, colour)
    else:
        raise ValueError(f"unknown style {style!r}")
    budget = [math.floor(eps * (n - len(classes[g.class_of[v]]))) for v in range(n)]
    return _delete_within_budget(g, budget, rng)


def robust_bipartite_instance(n: int, eps: float, rng: random.Random, style: str = "random") -> ColouredGraph:
    """Balanced bipartite graph with minimum degree at least ``(1 - eps) n / 2``.

    Styles: ``random``, ``near-split`` (a split colouring with 1% of the edges
    recoloured, at least one) and ``split`` (an exact split colouring).
    """
    m = n // 2
    classes = classes_for_shape((m, m))
    U, V = classes
    if style == "random":
        p = rng.uniform(0.1, 0.9)
        g = ColouredGraph.from_function(classes, lambda u, v: RED if rng.random() < p else BLUE)
    elif style in ("near-split", "split"):
        A = set(rng.sample(U, rng.randint(1, m - 1)))
        C = set(rng.sample(V, rng.randint(1, m - 1)))
        split = _split_colour(set(U), A, C)
        flips = set()
        if style == "near-split":
            pairs = cross_pairs(classes)
            flips = set(rng.sample(pairs, max(1, len(pairs) // 100)))

        def colour(u, v):
            c = split(u, v)
            return c.other if (min(u, v), max(u, v)) in flips else c

        g = ColouredGraph.from_function(classes, colour)
    else:
        raise ValueError(f"unknown style {style!r}")
    return _delete_within_budget(g, [math.floor(eps * m)] * n, rng)


def delta_close_instance(n: int, delta: float, rng: random.Random, hubs: Optional[int] = None):
    """A colouring of ``K_{n/2, n/2}`` within ``delta`` of a split, with a planted distance report.

    About half of the allowed ``delta |E|`` recolourings go to a few hub
    vertices, so trimming has something to remove; the rest are spread out.
    Returns ``(graph, report)``; the report lists the recoloured edges.
    """
    m = n // 2
    classes = classes_for_shape((m, m))
    U, V = classes
    A = set(rng.sample(U, rng.randint(1, m - 1)))
    C = set(rng.sample(V, rng.randint(1, m - 1)))
    split = _split_colour(set(U), A, C)
    allowed = int(delta * m * m)
    hubs = rng.randint(1, 3) if hubs is None else hubs
    flips: set[tuple[int, int]] = set()
    for h in rng.sample(range(n), hubs):
        others = V if h < m else U
        for o in rng.sample(others, min(len(others), allowed // (2 * hubs))):
            flips.add((min(h, o), max(h, o)))
    pairs = cross_pairs(classes)
    while len(flips) < allowed:
        flips.add(rng.choice(pairs))

    def colour(u, v):
        c = split(u, v)
        return c.other if (min(u, v), max(u, v)) in flips else c

    g = ColouredGraph.from_function(classes, colour)
    witness = SplitWitness(sorted(A), sorted(set(U) - A), sorted(C), sorted(set(V) - C))
    sides = [0] * m + [1] * m
    report = SplitDistanceReport(sorted(flips), sides, witness, exact=False)
    return g, report
