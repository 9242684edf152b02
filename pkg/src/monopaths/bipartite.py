"""Split colourings of complete bipartite graphs and two-path partitions.

A split colouring of a bipartite graph with sides ``U`` and ``V`` is given by
``U = A + B`` and ``V = C + D`` with blue exactly on ``(A,C)`` and ``(B,D)``.
In a balanced graph a split with all four parts non-empty blocks every
partition into a red and a blue path.  A *proper* split (additionally
``||A|-|C|| >= 2``) blocks even two monochromatic paths of the same colour.
Every other colouring has a red and a blue path partition, found by search
and validated.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .graph import (
    BLUE,
    RED,
    ColouredGraph,
    Colour,
    DefectError,
    HypothesisError,
    MonoPath,
    PathPair,
    iter_bits,
    validate_cover,
)
from .splice import assemble, closure_candidates


@dataclass(frozen=True)
class SplitWitness:
    """Parts ``A, B`` of the first side and ``C, D`` of the second; blue on (A,C) and (B,D)."""

    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    D: tuple[int, ...]
    orientation: str = "blue:AC+BD"

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))

    @property
    def imbalance(self) -> int:
        """Side imbalance of the blue blocks A+C and B+D."""
        return abs(len(self.A) - len(self.C))

    @property
    def red_imbalance(self) -> int:
        """Side imbalance of the red blocks A+D and B+C."""
        return abs(len(self.A) - len(self.D))

    def holds_on(self, g: ColouredGraph) -> bool:
        """True when every surviving edge between the parts has the prescribed colour."""
        for xs, ys, c in ((self.A, self.C, BLUE), (self.B, self.D, BLUE), (self.A, self.D, RED), (self.B, self.C, RED)):
            for u in xs:
                for v in ys:
                    col = g.colour(u, v)
                    if col is not None and col != c:
                        return False
        return True

    def to_json(self) -> dict:
        return {"A": list(self.A), "B": list(self.B), "C": list(self.C), "D": list(self.D), "orientation": self.orientation}


def _require_bipartite(g: ColouredGraph) -> None:
    if g.k != 2:
        raise HypothesisError(f"expected a bipartite graph, got {g.k} classes")


def detect_split(g: ColouredGraph) -> Optional[SplitWitness]:
    """Recover a split witness from the blue neighbourhood patterns of the first side."""
    _require_bipartite(g)
    U, V = g.classes
    vmask = sum(1 << v for v in V)
    groups: dict[int, list[int]] = {}
    for u in U:
        groups.setdefault(g.neighbours(u, BLUE) & vmask, []).append(u)
    if len(groups) > 2:
        return None
    pats = list(groups)
    if len(pats) == 2 and pats[0] ^ pats[1] != vmask:
        return None
    # first group met becomes A, so the witness is deterministic in vertex order
    first = groups[pats[0]]
    second = groups[pats[1]] if len(pats) == 2 else []
    C = list(iter_bits(pats[0]))
    D = [v for v in V if v not in set(C)]
    return SplitWitness(first, second, C, D)


def is_proper_split(w: Optional[SplitWitness]) -> bool:
    if w is None:
        return False
    if not (w.A and w.B and w.C and w.D):
        return False
    # a block with side imbalance <= 1 has a Hamilton path, so both colours must be off by 2
    return min(w.imbalance, w.red_imbalance) >= 2


def _hamilton_zigzag(big: Sequence[int], small: Sequence[int]) -> list[int]:
    """Alternate ``big`` and ``small`` starting from ``big``; uses ``len(small)+1`` of ``big`` at most."""
    out = []
    for i in range(len(small)):
        out.append(big[i])
        out.append(small[i])
    if len(big) > len(small):
        out.append(big[len(small)])
    return out


def zigzag(xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Path alternating between two sides of a complete bipartite graph, as long as possible."""
    if len(xs) >= len(ys):
        return _hamilton_zigzag(xs, ys)
    return _hamilton_zigzag(ys, xs)


# ---------------------------------------------------------------------------
# the two-path search


def _check_pair(g: ColouredGraph, red, blue) -> PathPair:
    pair = PathPair(MonoPath(RED, tuple(red)), MonoPath(BLUE, tuple(blue)))
    rep = validate_cover(g, [pair])
    if not rep:
        raise DefectError(f"engine produced an invalid pair: {rep.violation}", g, detail=rep.detail)
    return pair


def _exact_pair(g: ColouredGraph, vertices: Sequence[int] | None = None) -> Optional[tuple[list[int], list[int]]]:
    """Depth-first search for a red path followed by a blue path covering ``vertices``.

    States are (covered set, phase, current end); failed states are memoised.
    """
    verts = list(range(g.n)) if vertices is None else list(vertices)
    full = sum(1 << v for v in verts)
    red_rows = g.colour_rows(RED)
    blue_rows = g.colour_rows(BLUE)
    dead: set = set()

    def blue_phase(mask: int, end: int, seq: list[int]) -> Optional[list[int]]:
        if mask == full:
            return seq
        key = (mask, 1, end)
        if key in dead:
            return None
        for w in iter_bits(blue_rows[end] & full & ~mask):
            seq.append(w)
            got = blue_phase(mask | 1 << w, w, seq)
            if got is not None:
                return got
            seq.pop()
        dead.add(key)
        return None

    def start_blue(mask: int) -> Optional[list[int]]:
        if mask == full:
            return []
        key = (mask, 2, -1)
        if key in dead:
            return None
        for w in iter_bits(full & ~mask):
            got = blue_phase(mask | 1 << w, w, [w])
            if got is not None:
                return got
        dead.add(key)
        return None

    def red_phase(mask: int, end: int, seq: list[int]):
        key = (mask, 0, end)
        if key in dead:
            return None
        blue = start_blue(mask)
        if blue is not None:
            return list(seq), blue
        for w in iter_bits(red_rows[end] & full & ~mask):
            seq.append(w)
            got = red_phase(mask | 1 << w, w, seq)
            if got is not None:
                return got
            seq.pop()
        dead.add(key)
        return None

    blue_only = start_blue(0)
    if blue_only is not None:
        return [], blue_only
    for v in verts:
        got = red_phase(1 << v, v, [v])
        if got is not None:
            return got
    return None


TWIN_BUDGET = 200_000


class _OutOfBudget(Exception):
    pass


def _twin_classes(g: ColouredGraph) -> list[list[int]]:
    """Vertices grouped by side and red neighbourhood; members of a class are interchangeable."""
    groups: dict[tuple[int, int], list[int]] = {}
    for v in range(g.n):
        groups.setdefault((g.class_of[v], g.red[v]), []).append(v)
    return list(groups.values())


def twin_state_bound(g: ColouredGraph) -> int:
    """Number of count vectors the twin search may visit."""
    total = 1
    for members in _twin_classes(g):
        total *= len(members) + 1
    return total


def _exact_pair_twins(g: ColouredGraph, budget: int | None = None) -> Optional[tuple[list[int], list[int]]]:
    """Exact red-then-blue path search over twin-class counts instead of vertex sets.

    Raises ``_OutOfBudget`` after ``budget`` expanded states.
    """
    classes = _twin_classes(g)
    k = len(classes)
    size = [len(c) for c in classes]
    radix = [1] * k
    for i in range(1, k):
        radix[i] = radix[i - 1] * (size[i - 1] + 1)
    full = sum(size[i] * radix[i] for i in range(k))
    rep = [c[0] for c in classes]
    nbr = {
        c: [[j for j in range(k) if g.class_of[rep[i]] != g.class_of[rep[j]] and g.colour(rep[i], rep[j]) is c] for i in range(k)]
        for c in (RED, BLUE)
    }
    dead: set = set()
    steps = [0]

    def left(used: int, j: int) -> bool:
        return (used // radix[j]) % (size[j] + 1) < size[j]

    def walk(used: int, end: int, colour, seq: list[int], after):
        # extend a ``colour`` path ending in class ``end``; ``after`` finishes the partition
        key = (used, colour, end)
        if key in dead:
            return None
        steps[0] += 1
        if budget is not None and steps[0] > budget:
            raise _OutOfBudget
        got = after(used)
        if got is not None:
            return seq[:], got
        for j in nbr[colour][end]:
            if left(used, j):
                seq.append(j)
                got = walk(used + radix[j], j, colour, seq, after)
                if got is not None:
                    return got
                seq.pop()
        dead.add(key)
        return None

    def finish_blue(used: int):
        if used == full:
            return []
        key = (used, None, -1)
        if key in dead:
            return None
        for j in range(k):
            if left(used, j):
                got = walk(used + radix[j], j, BLUE, [j], lambda u: [] if u == full else None)
                if got is not None:
                    return got[0]
        dead.add(key)
        return None

    found = None
    blue_only = finish_blue(0)
    if blue_only is not None:
        found = ([], blue_only)
    else:
        for j in range(k):
            got = walk(radix[j], j, RED, [j], finish_blue)
            if got is not None:
                found = got
                break
    if found is None:
        return None
    pools = [list(c) for c in classes]
    return [pools[j].pop() for j in found[0]], [pools[j].pop() for j in found[1]]


def _twin_attempt(g: ColouredGraph) -> Optional[tuple[list[int], list[int]]]:
    try:
        return _exact_pair_twins(g, budget=TWIN_BUDGET)
    except _OutOfBudget:
        return None


def _twin_order(g: ColouredGraph, side: Sequence[int]) -> list[int]:
    """Vertices of ``side`` with the most colour twins first (rare ones are popped first)."""
    counts: dict[int, int] = {}
    for v in side:
        counts[g.red[v]] = counts.get(g.red[v], 0) + 1
    return sorted(side, key=lambda v: (-counts[g.red[v]], v))


def _absorb_pairs(g: ColouredGraph, rng: random.Random, attempts: int) -> Optional[tuple[list[int], list[int]]]:
    """Grow a disjoint red/blue pair by adding one vertex of each side per step."""
    U, V = (list(c) for c in g.classes)
    for attempt in range(attempts):
        if attempt == 0:
            us, vs = _twin_order(g, U), _twin_order(g, V)
        else:
            us, vs = U[:], V[:]
            rng.shuffle(us)
            rng.shuffle(vs)
        u, v = us.pop(), vs.pop()
        red, blue = ([u, v], []) if g.has_edge(u, v, RED) else ([], [u, v])
        stuck = False
        while us:
            placed = False
            # try a few choices of the next pair before giving up on this order
            for j in range(min(len(us), 3)):
                for l in range(min(len(vs), 3)):
                    a, b = us[-1 - j], vs[-1 - l]
                    move = next(iter(_absorb_step(g, red, blue, [a, b])), None)
                    if move is not None:
                        red, blue = move
                        us.remove(a)
                        vs.remove(b)
                        placed = True
                        break
                if placed:
                    break
            if not placed:
                stuck = True
                break
        if not stuck:
            return red, blue
    return None


def _insert_pair(g: ColouredGraph, path: list[int], c: Colour, a: int, b: int) -> Optional[list[int]]:
    """Put the ``c``-edge ``ab`` between two consecutive vertices of the ``c``-path ``path``."""
    if not g.has_edge(a, b, c):
        return None
    for i in range(len(path) - 1):
        p, q = path[i], path[i + 1]
        for x, y in ((a, b), (b, a)):
            if g.has_edge(p, x, c) and g.has_edge(y, q, c):
                return path[:i + 1] + [x, y] + path[i + 1:]
    return None


def _absorb_step(g: ColouredGraph, red, blue, new):
    # cheap splices first: put the new vertices as free singles next to whole paths
    pieces_r = [tuple(red)] if len(red) > 1 else []
    pieces_b = [tuple(blue)] if len(blue) > 1 else []
    free = list(new) + [p[0] for p in (red, blue) if len(p) == 1]
    for r, b in assemble(g, pieces_r, pieces_b, free, limit=4):
        yield list(r), list(b)
        return
    a, b = new
    got = _insert_pair(g, list(red), RED, a, b)
    if got is not None:
        yield got, list(blue)
        return
    got = _insert_pair(g, list(blue), BLUE, a, b)
    if got is not None:
        yield list(red), got
        return
    singles = list(new)
    for move in closure_candidates(g, red, blue, singles):
        yield list(move.red), list(move.blue)
        return


def partition_bipartite_paths(g: ColouredGraph, seed: int | None = None):
    """Red and blue path partitioning a balanced complete bipartite graph, or a split obstruction.

    Returns a ``PathPair``, or the ``SplitWitness`` when the colouring is a
    split with all four parts non-empty.  Such colourings never admit a red
    and a blue path (each path stays inside one colour component and any
    two components miss a part); the proper ones do not even admit two
    monochromatic paths of equal colour.  In a balanced graph every returned
    partition has an endvertex of each path in different classes.
    """
    _require_bipartite(g)
    U, V = g.classes
    if len(U) != len(V):
        raise HypothesisError("bipartite graph must be balanced")
    w = detect_split(g)
    if w is not None and w.A and w.B and w.C and w.D:
        return w
    if w is not None:
        return _check_pair(g, *_split_pair(w))
    n = g.n
    if n <= 12:
        got = _exact_pair(g)
    else:
        got = None
        # near-split colourings have few twin classes and are solved exactly here
        few_twins = 2 * len(_twin_classes(g)) <= n
        if few_twins:
            got = _twin_attempt(g)
        if got is None:
            got = _absorb_pairs(g, random.Random(_seed(seed)), attempts=20)
        if got is None and not few_twins:
            got = _twin_attempt(g)
        if got is None and n <= 18:
            got = _exact_pair(g)
    if got is None:
        raise DefectError("two-path search exhausted on a colouring that is not a split", g)
    return _check_pair(g, *got)


def partition_two_monochromatic_paths(g: ColouredGraph, seed: int | None = None):
    """Two monochromatic paths (colours not necessarily distinct) or the proper split witness."""
    got = partition_bipartite_paths(g, seed)
    if isinstance(got, PathPair):
        return [got.red, got.blue]
    if is_proper_split(got):
        return got
    if got.imbalance <= 1:
        paths = [MonoPath(BLUE, tuple(zigzag(got.A, got.C))), MonoPath(BLUE, tuple(zigzag(got.B, got.D)))]
    else:
        paths = [MonoPath(RED, tuple(zigzag(got.A, got.D))), MonoPath(RED, tuple(zigzag(got.B, got.C)))]
    rep = validate_cover(g, paths)
    if not rep:
        raise DefectError(f"two same-colour zig-zags failed: {rep.violation}", g)
    return paths


def _seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    return int(os.environ.get("MONO_SEED", "0"))


def _split_pair(w: SplitWitness) -> tuple[list[int], list[int]]:
    """Red and blue path for a split colouring with an empty part."""
    A, B, C, D = w.A, w.B, w.C, w.D
    if not B and not D:
        return [], zigzag(A, C)
    if not A and not C:
        return [], zigzag(B, D)
    if not A and not D:
        return zigzag(B, C), []
    if not B and not C:
        return zigzag(A, D), []
    # exactly one part empty: the full side is shared by a blue and a red block
    if not B:
        blue = thread(C, A)
        return thread(D, [a for a in A if a not in set(blue)]), blue
    if not A:
        blue = thread(D, B)
        return thread(C, [b for b in B if b not in set(blue)]), blue
    if not D:
        blue = thread(A, C)
        return thread(B, [c for c in C if c not in set(blue)]), blue
    blue = thread(B, D)
    return thread(A, [d for d in D if d not in set(blue)]), blue


def thread(hub: Sequence[int], pool: Sequence[int]) -> list[int]:
    """Path ``pool[0], hub[0], pool[1], hub[1], ...`` through all of ``hub``."""
    out = []
    for i, h in enumerate(hub):
        out.append(pool[i])
        out.append(h)
    return out


def split_three_paths(g: ColouredGraph, w: SplitWitness) -> list[MonoPath]:
    """Three monochromatic paths covering a split-coloured balanced bipartite graph.

    Blue zig-zags through (A,C) and (B,D) each take all of the smaller part;
    the leftovers lie in two parts joined completely in red and have equal size.
    """
    _require_bipartite(g)
    if not w.holds_on(g) or set(w.A) | set(w.B) | set(w.C) | set(w.D) != set(range(g.n)):
        raise HypothesisError("witness does not describe this colouring")
    if not is_proper_split(w):
        got = partition_two_monochromatic_paths(g)
        if isinstance(got, list):
            paths = [p for p in got if p.vertices]
            return paths + [MonoPath(RED)] * (3 - len(paths))
    A, B, C, D = (list(p) for p in (w.A, w.B, w.C, w.D))
    p1 = zigzag(A, C)
    p2 = zigzag(B, D)
    used = set(p1) | set(p2)
    left1 = [v for v in A + C if v not in used]
    left2 = [v for v in B + D if v not in used]
    p3 = zigzag(left1, left2)
    paths = [MonoPath(BLUE, tuple(p1)), MonoPath(BLUE, tuple(p2)), MonoPath(RED, tuple(p3))]
    rep = validate_cover(g, paths)
    if not rep:
        raise DefectError(f"three-path construction failed: {rep.violation}", g, detail=rep.detail)
    return paths


# ---------------------------------------------------------------------------
# distance to a split colouring


@dataclass
class SplitDistanceReport:
    deleted: list[tuple[int, int]]
    sides: list[int]
    witness: SplitWitness
    exact: bool

    @property
    def count(self) -> int:
        return len(self.deleted)

    def to_json(self) -> dict:
        return {
            "v": 1,
            "deleted_count": self.count,
            "deleted": [list(e) for e in self.deleted],
            "sides": self.sides,
            "witness": self.witness.to_json(),
            "exactness": "exact" if self.exact else "heuristic-upper-bound",
        }

    def surviving_graph(self, g: ColouredGraph) -> ColouredGraph:
        gone = {frozenset(e) for e in self.deleted}
        side0 = [v for v in range(g.n) if self.sides[v] == 0]
        side1 = [v for v in range(g.n) if self.sides[v] == 1]
        defined = list(g.defined)
        for u, v in self.deleted:
            defined[u] &= ~(1 << v)
            defined[v] &= ~(1 << u)
        h = ColouredGraph.__new__(ColouredGraph)
        # bipartite view; pairs inside a side are absent by construction
        m0 = sum(1 << v for v in side0)
        m1 = sum(1 << v for v in side1)
        full_d = [defined[v] & (m1 if self.sides[v] == 0 else m0) for v in range(g.n)]
        if any(frozenset((u, v)) not in gone for u in range(g.n) for v in iter_bits(defined[u] & ~full_d[u])):
            raise HypothesisError("report leaves an edge inside a side")
        classes = [c for c in (side0, side1) if c]
        return ColouredGraph(classes if len(classes) == 2 else [side0, side1], full_d, g.red)

    def is_valid_for(self, g: ColouredGraph) -> bool:
        try:
            h = self.surviving_graph(g)
        except (HypothesisError, ValueError):
            return False
        w = self.witness
        side_of = {v: 0 for v in w.A + w.B}
        side_of.update({v: 1 for v in w.C + w.D})
        if any(side_of.get(v) != self.sides[v] for v in range(g.n)):
            return False
        return w.holds_on(h)


def _labels_cost(g: ColouredGraph, labels: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    for u, v, c in g.edges():
        lu, lv = labels[u], labels[v]
        if lu >> 1 == lv >> 1:
            out.append((u, v))
        elif (c == BLUE) != ((lu & 1) == (lv & 1)):
            out.append((u, v))
    return out


def _report(g: ColouredGraph, labels: Sequence[int], exact: bool) -> SplitDistanceReport:
    parts = {0: [], 1: [], 2: [], 3: []}
    for v, l in enumerate(labels):
        parts[l].append(v)
    w = SplitWitness(parts[0], parts[1], parts[2], parts[3])
    return SplitDistanceReport(_labels_cost(g, labels), [l >> 1 for l in labels], w, exact)


EXACT_LIMIT = 20
RESTARTS = 50


def _local_search(g: ColouredGraph, restarts: int, rng: random.Random, initial: Sequence[int] | None = None) -> list[int]:
    n = g.n
    blue = np.zeros((n, n), dtype=np.int32)
    redm = np.zeros((n, n), dtype=np.int32)
    for u, v, c in g.edges():
        m = blue if c == BLUE else redm
        m[u, v] = m[v, u] = 1
    # pen[v, l] = sum over labels L of cb[v, L] * cost_blue(l, L) + cr[v, L] * cost_red(l, L)
    cost_b = np.zeros((4, 4), dtype=np.int32)
    cost_r = np.zeros((4, 4), dtype=np.int32)
    for l in range(4):
        for L in range(4):
            if l >> 1 == L >> 1:
                cost_b[l, L] = cost_r[l, L] = 1
            else:
                same = (l & 1) == (L & 1)
                cost_b[l, L] = 0 if same else 1
                cost_r[l, L] = 1 if same else 0
    best_labels, best_cost = None, None
    for r in range(max(1, restarts)):
        if r == 0 and initial is not None:
            lab = np.array(initial, dtype=np.int64)
        else:
            lab = np.array([rng.randrange(4) for _ in range(n)], dtype=np.int64)
        onehot = np.zeros((n, 4), dtype=np.int32)
        onehot[np.arange(n), lab] = 1
        cb = blue @ onehot
        cr = redm @ onehot
        while True:
            pen = cb @ cost_b.T + cr @ cost_r.T
            cur = pen[np.arange(n), lab]
            gain = cur - pen.min(axis=1)
            v = int(np.argmax(gain))
            if gain[v] <= 0:
                break
            new = int(np.argmin(pen[v]))
            old = int(lab[v])
            lab[v] = new
            cb[:, old] -= blue[:, v]
            cb[:, new] += blue[:, v]
            cr[:, old] -= redm[:, v]
            cr[:, new] += redm[:, v]
        pen = cb @ cost_b.T + cr @ cost_r.T
        cost = int(pen[np.arange(n), lab].sum()) // 2
        if best_cost is None or cost < best_cost:
            best_cost, best_labels = cost, lab.tolist()
    return best_labels


def split_distance(g: ColouredGraph, mode: str = "exact", restarts: int = RESTARTS, seed: int | None = None, initial: Sequence[int] | None = None) -> SplitDistanceReport:
    """Fewest edge deletions leaving a bipartite graph with a split colouring.

    ``initial`` optionally warm-starts the local search with labels ``2*side+group``.
    """
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    if g.n == 0:
        return SplitDistanceReport([], [], SplitWitness((), (), (), ()), True)
    rng = random.Random(_seed(seed))
    if mode == "heuristic":
        return _report(g, _local_search(g, restarts, rng, initial), False)
    if g.n > EXACT_LIMIT:
        raise HypothesisError(f"exact split distance limited to {EXACT_LIMIT} vertices, got {g.n}")
    start = _local_search(g, min(restarts, 8), rng, initial)
    ub = len(_labels_cost(g, start))
    cost, labels = kernels.split_bb(g.n, list(g.cross), list(g.red), ub)
    if labels is None:
        labels = start
    rep = _report(g, labels, True)
    assert rep.count == min(cost, ub)
    return rep
