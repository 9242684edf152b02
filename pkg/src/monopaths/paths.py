"""Partitions of fair complete multipartite graphs into a red and a blue path.

The driver reduces to three classes and dispatches on the class sizes
``n_1 >= n_2 >= n_3``:

* ``n_1 = n/2``: ``equality_case``, via the bipartite graph ``(V_1, V_2+V_3)``;
* ``n_1 = n_2`` and ``n_3 = 1``: ``notsofair_case``, via ``V_1+V_2`` and the vertex ``z``;
* otherwise ``veryfair_case``: peel one vertex off each of the two larger
  classes, solve the rest, and splice the two vertices back in.

Every routine returns a ``SharedPathState``: both paths end in a common vertex.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .bipartite import SplitWitness, partition_bipartite_paths, zigzag
from .graph import (
    BLUE,
    RED,
    ColouredGraph,
    Colour,
    DefectError,
    HypothesisError,
    MonoCycle,
    MonoPath,
    PathPair,
    is_fair,
    reduce_to_tripartite,
    require_valid,
    validate_cover,
)
from .splice import SharedPathState, absorb_pair, closure_candidates, make_shared

Trace = Optional[list]


def _emit(trace: Trace, **event) -> None:
    if trace is not None:
        trace.append(event)


def to_path_pair(state: SharedPathState, keep_shared: bool = False) -> PathPair:
    """Disjoint red and blue paths; the shared vertex stays on the red one unless ``keep_shared``."""
    if keep_shared:
        return PathPair(MonoPath(RED, state.red), MonoPath(BLUE, state.blue), state.x)
    return PathPair(MonoPath(RED, state.red), MonoPath(BLUE, state.blue[:-1]))


def _certify(g: ColouredGraph, state: SharedPathState, vertices=None, where: str = "") -> SharedPathState:
    want = set(range(g.n)) if vertices is None else set(vertices)
    if state.vertices != want or not state.is_valid(g):
        raise DefectError(f"{where} produced an invalid shared pair", g, red=list(state.red), blue=list(state.blue))
    return state


def _lift(state: SharedPathState, old: Sequence[int]) -> SharedPathState:
    return SharedPathState(tuple(old[v] for v in state.red), tuple(old[v] for v in state.blue))


# ---------------------------------------------------------------------------
# driver


def satisfies_veryfair(n1: int, n2: int, n3: int) -> bool:
    """Hypothesis of the peeling induction, with ``V_3`` the smallest class and ``V_1, V_2`` in any order."""
    if n3 > n1 or n3 > n2:
        return False
    for a, b in ((n1, n2), (n2, n1)):
        if not (a <= b + n3 - 2 or (a == b + n3 - 1 and n3 > 1)):
            return False
    return True


def partition_paths(g: ColouredGraph, trace: Trace = None) -> PathPair:
    """A red and a blue path partitioning a fair complete k-partite graph, k >= 3."""
    require_valid(g)
    if g.k < 3:
        raise HypothesisError("partition_paths needs at least three classes; use the bipartite engine")
    if not is_fair(g):
        raise HypothesisError("unfair")
    h = reduce_to_tripartite(g)
    _emit(trace, step="reduce", classes=[list(c) for c in h.classes])
    state = shared_partition(h, trace)
    pair = to_path_pair(state)
    rep = validate_cover(g, [pair])
    if not rep:
        raise DefectError(f"partition failed validation: {rep.violation}", g, detail=rep.detail)
    return pair


def shared_partition(h: ColouredGraph, trace: Trace = None) -> SharedPathState:
    """Dispatch a fair tripartite graph to the matching case."""
    n1, n2, n3 = (len(c) for c in h.classes)
    n = n1 + n2 + n3
    if 2 * n1 == n:
        _emit(trace, step="dispatch", case="equality", sizes=[n1, n2, n3])
        return equality_case(h, trace)
    if n1 == n2 and n3 == 1 and not satisfies_veryfair(n1, n2, n3):
        _emit(trace, step="dispatch", case="notsofair", sizes=[n1, n2, n3])
        return notsofair_case(h, trace)
    _emit(trace, step="dispatch", case="veryfair", sizes=[n1, n2, n3])
    return veryfair_case(h, trace)


# ---------------------------------------------------------------------------
# n_1 = n/2


def equality_case(g: ColouredGraph, trace: Trace = None) -> SharedPathState:
    """Shared pair when the largest class holds half the vertices."""
    if g.k != 3 or 2 * len(g.classes[0]) != g.n:
        raise HypothesisError("equality case needs a tripartite graph with n_1 = n/2")
    V1 = list(g.classes[0])
    rest = sorted(g.classes[1] + g.classes[2])
    H = g.with_classes([V1, rest])
    got = partition_bipartite_paths(H)
    if isinstance(got, PathPair):
        state = make_shared(g, got.red.vertices, got.blue.vertices, frozenset(range(g.n)))
        _emit(trace, step="equality", branch="engine")
        if state is None:
            raise DefectError("no link between the engine's paths", g)
        return _certify(g, state, where="equality case")
    _emit(trace, step="equality", branch="split", witness=got.to_json())
    return _certify(g, _equality_split(g, got), where="equality case")


def _equality_split(g: ColouredGraph, w: SplitWitness, edge: tuple[int, int] | None = None) -> SharedPathState:
    # pick u in C, v in D from different classes; their colour decides which
    # pair of blocks carries the long path
    u, v = edge or next((u, v) for u in w.C for v in w.D if g.adjacent(u, v))
    if g.colour(u, v) == RED:
        swapped = _equality_split(g.swap_colours(), SplitWitness(w.A, w.B, w.D, w.C), (v, u))
        return swapped.swapped()
    A, B, C, D = list(w.A), list(w.B), list(w.C), list(w.D)
    # blue blocks are (A, C) and (B, D); longest blue paths with an even
    # number of vertices starting in u and v
    pu = _even_alternating(u, [c for c in C if c != u], A)
    pv = _even_alternating(v, [d for d in D if d != v], B)
    blue = pu[::-1] + pv
    used = set(blue)
    left_v1 = [x for x in A + B if x not in used]
    left_v2 = [x for x in C + D if x not in used]
    red = zigzag(left_v1, left_v2)
    state = make_shared(g, red, blue, frozenset(range(g.n)))
    if state is None:
        raise DefectError("split construction left no linking edge", g, witness=w.to_json())
    return state


def _even_alternating(start: int, same_side: Sequence[int], other_side: Sequence[int]) -> list[int]:
    """``start, o_1, s_1, o_2, ...`` through a complete bipartite block, stopping at an even count."""
    out = [start]
    k = min(len(same_side) + 1, len(other_side))
    for i in range(k):
        out.append(other_side[i])
        if i + 1 < k:
            out.append(same_side[i])
    return out


# ---------------------------------------------------------------------------
# n_1 = n_2, n_3 = 1


def notsofair_case(g: ColouredGraph, trace: Trace = None) -> SharedPathState:
    """Shared pair for two equal classes plus a single vertex ``z``."""
    if g.k != 3 or len(g.classes[0]) != len(g.classes[1]) or len(g.classes[2]) != 1:
        raise HypothesisError("notsofair case needs class sizes (m, m, 1)")
    (z,) = g.classes[2]
    H, old = g.induced([v for v in range(g.n) if v != z])
    got = partition_bipartite_paths(H)
    if isinstance(got, PathPair):
        red = [old[v] for v in got.red.vertices]
        blue = [old[v] for v in got.blue.vertices]
        _emit(trace, step="notsofair", branch="engine")
        return _certify(g, _attach_single(g, red, blue, z), where="notsofair case")
    w = SplitWitness(*([old[v] for v in part] for part in (got.A, got.B, got.C, got.D)))
    _emit(trace, step="notsofair", branch="split", witness=w.to_json())
    return _certify(g, _notsofair_split(g, w, z), where="notsofair case")


def _attach_single(g: ColouredGraph, red: list[int], blue: list[int], z: int) -> SharedPathState:
    """Add ``z`` to a red/blue partition of the rest so the paths share an endvertex."""
    target = frozenset(range(g.n))
    # r end of red, b end of blue with rb coloured: extend through z
    for r in {red[0], red[-1]} if red else ():
        for b in {blue[0], blue[-1]} if blue else ():
            rr = red if red[-1] == r else red[::-1]
            bb = blue if blue[-1] == b else blue[::-1]
            if g.has_edge(r, z, RED) and g.has_edge(b, z, BLUE):
                return SharedPathState(rr + [z], bb + [z])
    for move in closure_candidates(g, red, blue, [z]):
        state = make_shared(g, move.red, move.blue, target)
        if state is not None:
            return state
    raise DefectError("could not attach the singleton class", g, red=red, blue=blue, z=z)


def _notsofair_split(g: ColouredGraph, w: SplitWitness, z: int) -> SharedPathState:
    A, B, C, D = list(w.A), list(w.B), list(w.C), list(w.D)
    comps = {BLUE: [(A, C), (B, D)], RED: [(A, D), (B, C)]}
    for c in (RED, BLUE):
        ends = []
        for side1, side2 in comps[c]:
            hit = [p for p in side1 + side2 if g.has_edge(p, z, c)]
            if hit:
                ends.append((min(hit), side1, side2))
        if len(ends) < 2:
            continue
        (p, P1, P2), (q, Q1, Q2) = ends
        X = _even_from(p, P1, P2)
        Y = _even_from(q, Q1, Q2)
        long_path = X[::-1] + [z] + Y
        used = set(long_path)
        left1 = [v for v in A + B if v not in used]
        left2 = [v for v in C + D if v not in used]
        other = zigzag(left1, left2)
        red, blue = (long_path, other) if c == RED else (other, long_path)
        state = make_shared(g, red, blue, frozenset(range(g.n)))
        if state is not None:
            return state
    raise DefectError("split branch found no construction", g, witness=w.to_json(), z=z)


def _even_from(p: int, side1: Sequence[int], side2: Sequence[int]) -> list[int]:
    if p in side1:
        return _even_alternating(p, [v for v in side1 if v != p], side2)
    return _even_alternating(p, [v for v in side2 if v != p], side1)


# ---------------------------------------------------------------------------
# the peeling induction


def veryfair_case(g: ColouredGraph, trace: Trace = None) -> SharedPathState:
    """Shared pair by peeling ``v_1 in V_1, v_2 in V_2`` and splicing them back.

    ``V_3`` is kept as the smallest class; ``v_1, v_2`` are the lowest ids.
    """
    if g.k != 3:
        raise HypothesisError("veryfair case needs a tripartite graph")
    classes = [list(c) for c in g.classes]
    V1, V2, V3 = classes
    if not satisfies_veryfair(len(V1), len(V2), len(V3)):
        raise HypothesisError(f"class sizes {[len(c) for c in classes]} outside the peeling hypothesis")
    removed: list[tuple[int, int]] = []
    while satisfies_veryfair(len(V1), len(V2), len(V3)):
        v1, v2 = V1[0], V2[0]
        removed.append((v1, v2))
        V1, V2 = V1[1:], V2[1:]
        # keep V3 the smallest class; it keeps its role on ties
        if min(len(V1), len(V2)) < len(V3):
            if len(V1) <= len(V2):
                V1, V3 = V3, V1
            else:
                V2, V3 = V3, V2
    rest = sorted(V1 + V2 + V3)
    H, old = g.induced(rest)
    if not is_fair(H) or H.k != 3:
        raise DefectError("peeling reached a base that is not fair and tripartite", g, base=[len(V1), len(V2), len(V3)])
    _emit(trace, step="veryfair-base", sizes=[len(V1), len(V2), len(V3)], depth=len(removed))
    state = _lift(shared_partition(H, trace), old)
    covered = set(rest)
    for depth in range(len(removed) - 1, -1, -1):
        v1, v2 = removed[depth]
        got = absorb_pair(g, state, v1, v2)
        if got is None:
            raise DefectError(
                "candidate set exhausted",
                g,
                red=list(state.red),
                blue=list(state.blue),
                v1=v1,
                v2=v2,
            )
        state, template = got
        covered |= {v1, v2}
        _emit(trace, step="absorb", depth=depth, v1=v1, v2=v2, template=template)
        _certify(g, state, covered, where="absorption")
    return _certify(g, state, where="veryfair case")


# ---------------------------------------------------------------------------
# Hamilton paths and the V_{3-i}V_3 edge


def find_cross_edge_on_path(g: ColouredGraph, p: Sequence[int], i: int, classes: Sequence[Sequence[int]] | None = None):
    """First edge of ``p`` between ``V_{3-i}`` and ``V_3``, or the endpoint certificate.

    ``classes`` names ``(V_1, V_2, V_3)`` explicitly; default is the graph's order.
    Returns ``("edge", (u, v))`` or ``("certificate", (first, last))``.
    """
    V = [set(c) for c in (g.classes if classes is None else classes)]
    if len(V) != 3 or i not in (1, 2):
        raise HypothesisError("need three classes and i in {1, 2}")
    ni, nj, n3 = len(V[i - 1]), len(V[2 - i]), len(V[2])
    if ni > nj + n3 - 1:
        raise HypothesisError("needs n_i <= n_{3-i} + n_3 - 1")
    if sorted(p) != list(range(g.n)) or any(not g.adjacent(a, b) for a, b in zip(p, p[1:])):
        raise HypothesisError("not a Hamilton path")
    other, third = V[2 - i], V[2]
    for a, b in zip(p, p[1:]):
        if (a in other and b in third) or (a in third and b in other):
            return "edge", (a, b)
    ends = (p[0], p[-1])
    if ni == nj + n3 - 1 and all(e in other or e in third for e in ends):
        return "certificate", ends
    raise DefectError("Hamilton path has no cross edge and no endpoint certificate", g, path=list(p), i=i)


# ---------------------------------------------------------------------------
# complete graphs


def complete_graph_partition(g: ColouredGraph) -> SharedPathState:
    """Greedy shared pair on a 2-coloured complete graph (all classes singletons)."""
    if any(len(c) != 1 for c in g.classes):
        raise HypothesisError("complete graph expected: every class a single vertex")
    if g.n == 0:
        raise HypothesisError("empty graph")
    order = sorted(v for c in g.classes for v in c)
    red, blue = [order[0]], [order[0]]
    for v in order[1:]:
        x = red[-1]
        if g.has_edge(x, v, RED):
            red, blue = _greedy_step(g, red, blue, v, RED)
        else:
            blue, red = _greedy_step(g, blue, red, v, BLUE)
    return _certify(g, SharedPathState(red, blue), where="complete graph greedy")


def _greedy_step(g, same, other, v, c):
    # ``same`` has colour c and x v is c; ``other`` is the other colour
    if len(other) == 1:
        return same + [v], [v]
    y = other[-2]
    if g.has_edge(y, v, c.other):
        return same + [v], other[:-1] + [v]
    return same + [v, y], other[:-1]


# ---------------------------------------------------------------------------
# a path and a cycle


def _red_grow(g: ColouredGraph, state: SharedPathState) -> SharedPathState:
    """Apply red-lengthening moves until none applies."""
    while True:
        R, B = list(state.red), list(state.blue)
        if len(B) < 2:
            return state
        x, v1, w1, bt = R[-1], B[0], R[0], B[-2]
        if g.has_edge(x, v1, RED):
            # x v1 red: red runs on to v1, blue is read backwards
            state = SharedPathState(R + [v1], B[:-1][::-1])
        elif g.has_edge(w1, v1, RED):
            state = SharedPathState([v1] + R, B[1:])
        elif g.has_edge(w1, bt, RED):
            state = SharedPathState(R[::-1] + [bt], B[:-1])
        else:
            return state


def _path_cycle_candidates(P: list[int], Q: list[int], c: Colour):
    """(cycle colour, cycle, path) candidates from a pair ``P`` (colour c), ``Q`` sharing the last vertex."""
    d = c.other
    q_open = Q[:-1]
    yield c, P, q_open
    yield c, P[1:], q_open
    yield c, P[:-1], Q
    yield c, P[1:-1], Q
    if len(Q) >= 2:
        yield c, [Q[0]] + P, Q[1:-1]
    if len(Q) >= 3:
        yield c, [Q[1]] + P, Q[2:-1]
        yield d, [P[0]] + Q[1:-1], P[1:]
        yield d, [P[0]] + Q[:-1], P[1:]
        yield d, Q[1:-1], P
    yield d, Q, P[:-1]
    yield d, Q[:-1], P
    yield d, [P[0]] + Q, P[1:-1]


def path_cycle_from_state(g: ColouredGraph, state: SharedPathState, missing: int = 1):
    """Try the endgame constructions on a shared pair; None if none certifies.

    Candidates covering everything are preferred over those missing a vertex.
    """
    for allowed in sorted({0, missing}):
        for st in (_red_grow(g, state), state):
            for P, Q, c in ((list(st.red), list(st.blue), RED), (list(st.blue), list(st.red), BLUE)):
                for cc, cyc, path in _path_cycle_candidates(P, Q, c):
                    cycle = MonoCycle(cc, tuple(cyc))
                    p = MonoPath(cc.other, tuple(path))
                    if validate_cover(g, [p, cycle], mode="cover", missing=allowed):
                        return p, cycle
    return None


def partition_path_cycle(g: ColouredGraph, trace: Trace = None):
    """A path and a cycle of distinct colours covering all but at most one vertex.

    Returns ``(path, cycle, uncovered)``.
    """
    require_valid(g)
    if g.k < 3 or not is_fair(g):
        raise HypothesisError("needs a fair graph with at least three classes")
    h = reduce_to_tripartite(g)
    attempts = [("direct", h, False), ("colours-swapped", h.swap_colours(), True)]
    fallback = None
    for label, graph, flipped in attempts:
        state = shared_partition(graph, trace)
        if flipped:
            state = state.swapped()
        got = path_cycle_from_state(g, state)
        if got is None:
            continue
        path, cycle = got
        covered = set(path.vertices) | set(cycle.vertices)
        uncovered = [v for v in range(g.n) if v not in covered]
        if not uncovered:
            _emit(trace, step="path-cycle", route=label)
            return path, cycle, uncovered
        if fallback is None:
            fallback = (label, path, cycle, uncovered)
    if fallback is None:
        raise DefectError("no path and cycle found", g)
    label, path, cycle, uncovered = fallback
    _emit(trace, step="path-cycle", route=label)
    return path, cycle, uncovered
