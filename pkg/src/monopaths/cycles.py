"""Cycle covers: three cycles for colourings close to a split, and a two-cycle search.

Long cycles are grown by rotation-extension: extend the path at an end while
possible, otherwise rotate it about a chord at the end, and finally close it
(or its longest closable stretch) into a cycle.  Every result is validated.
"""

from __future__ import annotations

import hashlib
import math
import random
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import kernels
from .bipartite import SplitDistanceReport, _seed, partition_bipartite_paths
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
    iter_bits,
    validate_cover,
)

ROTATIONS = 200


def _bit(v: int) -> int:
    return 1 << v


def _extend(rows, alive: int, path: list[int], rng: random.Random, rotations: int) -> list[int]:
    """Grow ``path`` by extension at either end and by rotations at the far end."""
    on = 0
    for v in path:
        on |= _bit(v)
    while True:
        ext = rows[path[-1]] & alive & ~on
        if not ext:
            ext0 = rows[path[0]] & alive & ~on
            if ext0:
                path.reverse()
                ext = ext0
        if ext:
            # prefer the neighbour with fewest free neighbours left
            best, best_deg = None, None
            for w in iter_bits(ext):
                d = bin(rows[w] & alive & ~on).count("1")
                if best is None or d < best_deg:
                    best, best_deg = w, d
            path.append(best)
            on |= _bit(best)
            continue
        pos = {v: i for i, v in enumerate(path)}
        grown = False
        for _ in range(rotations):
            end = path[-1]
            chords = [pos[u] for u in iter_bits(rows[end] & on) if pos[u] < len(path) - 2]
            if not chords:
                break
            i = rng.choice(chords)
            path[i + 1:] = path[i + 1:][::-1]
            for j in range(i + 1, len(path)):
                pos[path[j]] = j
            if rows[path[-1]] & alive & ~on:
                grown = True
                break
        if not grown:
            return path


def _close(rows, path: list[int], rng: random.Random, rotations: int) -> list[int]:
    """Longest cycle found on the vertices of ``path`` (rotations, then the longest chord)."""
    if len(path) <= 2:
        return list(path)
    on = 0
    for v in path:
        on |= _bit(v)
    path = list(path)
    pos = {v: i for i, v in enumerate(path)}
    for _ in range(rotations):
        if (rows[path[-1]] >> path[0]) & 1:
            return path
        end = path[-1]
        chords = [pos[u] for u in iter_bits(rows[end] & on) if pos[u] < len(path) - 2]
        if not chords:
            break
        i = rng.choice(chords)
        path[i + 1:] = path[i + 1:][::-1]
        for j in range(i + 1, len(path)):
            pos[path[j]] = j
    if (rows[path[-1]] >> path[0]) & 1:
        return path
    best = (0, 1)
    for i, u in enumerate(path):
        for w in iter_bits(rows[u] & on):
            j = pos[w]
            if j - i > best[1] - best[0]:
                best = (i, j)
    i, j = best
    if j - i == 1 and not (rows[path[i]] >> path[j]) & 1:
        return [path[0]]
    return path[i:j + 1]


def long_cycle(rows, alive: int, rng: random.Random, target_missing: int = 0, restarts: int = 4, rotations: int = ROTATIONS) -> list[int]:
    """A long cycle in the graph on ``alive`` given by adjacency bitmasks ``rows``.

    Stops early once at most ``target_missing`` vertices are off the cycle.
    """
    size = bin(alive).count("1")
    if size == 0:
        return []
    verts = list(iter_bits(alive))
    best: list[int] = [verts[0]]
    for r in range(restarts):
        start = verts[0] if r == 0 else rng.choice(verts)
        cyc = _close(rows, _extend(rows, alive, [start], rng, rotations), rng, rotations)
        # re-open the cycle at a vertex with an outside neighbour and grow again
        stale = 0
        while size - len(cyc) > target_missing and stale < 3 and len(cyc) >= 1:
            on = 0
            for v in cyc:
                on |= _bit(v)
            outside = alive & ~on
            opened = None
            for idx, c in enumerate(cyc):
                nb = rows[c] & outside
                if nb:
                    w = next(iter_bits(nb))
                    opened = [w] + cyc[idx:] + cyc[:idx]
                    break
            if opened is None:
                break
            nxt = _close(rows, _extend(rows, alive, opened, rng, rotations), rng, rotations)
            if len(nxt) > len(cyc):
                cyc, stale = nxt, 0
            else:
                stale += 1
        if len(cyc) > len(best):
            best = cyc
        if size - len(best) <= target_missing:
            break
    return best


# ---------------------------------------------------------------------------
# three cycles for colourings close to a split


@dataclass
class ThreeCycleCover:
    cycles: list[MonoCycle]
    uncovered: list[int]
    trimmed: list[int]
    bound: float

    def to_json(self) -> dict:
        return {
            "v": 1,
            "cycles": [{"colour": c.colour.symbol, "vertices": list(c.vertices)} for c in self.cycles],
            "uncovered": self.uncovered,
            "trimmed": self.trimmed,
            "bound": self.bound,
        }


def split_three_cycle_cover(g: ColouredGraph, delta: float, report: SplitDistanceReport, seed: Optional[int] = None) -> ThreeCycleCover:
    """Three disjoint monochromatic cycles missing at most ``8 sqrt(delta) n`` vertices."""
    if not report.is_valid_for(g):
        raise HypothesisError("split distance report does not re-validate")
    edges = sum(bin(d).count("1") for d in g.defined) // 2
    if report.count > delta * edges + 1e-9:
        raise HypothesisError(f"report deletes {report.count} edges, above delta*|E| = {delta * edges:.2f}")
    rng = random.Random(_seed(seed))
    n = g.n
    h = report.surviving_graph(g)
    w = report.witness
    slack = math.sqrt(delta) * n
    side = [sum(_bit(v) for v in w.A + w.B), sum(_bit(v) for v in w.C + w.D)]
    alive = side[0] | side[1]

    def non_deg(v: int) -> int:
        other = side[1 - report.sides[v]] & alive
        return bin(other & ~h.defined[v]).count("1")

    trimmed: list[int] = []
    while True:
        worst = max(iter_bits(alive), key=lambda v: (non_deg(v), -v), default=None)
        if worst is None or non_deg(worst) <= slack:
            break
        alive &= ~_bit(worst)
        trimmed.append(worst)
    # balance the two sides, dropping the least connected vertices first
    while True:
        s0, s1 = bin(alive & side[0]).count("1"), bin(alive & side[1]).count("1")
        if s0 == s1:
            break
        big = side[0] if s0 > s1 else side[1]
        v = max(iter_bits(alive & big), key=lambda v: (non_deg(v), v))
        alive &= ~_bit(v)
        trimmed.append(v)

    def part(xs):
        return [v for v in xs if (alive >> v) & 1]

    A, B, C, D = part(w.A), part(w.B), part(w.C), part(w.D)
    groups = []
    spill_red = []
    for X, Y in ((A, C), (B, D)):
        k = min(len(X), len(Y))
        # the excess goes to the red graph; lowest ids stay
        groups.append((BLUE, X[:k], Y[:k]))
        spill_red += X[k:] + Y[k:]
    left = [v for v in spill_red if report.sides[v] == 0]
    right = [v for v in spill_red if report.sides[v] == 1]
    k = min(len(left), len(right))
    groups.append((RED, left[:k], right[:k]))
    excess = left[k:] + right[k:]

    target = int(2 * slack)
    cycles = []
    for c, X, Y in groups:
        mask = sum(_bit(v) for v in X + Y)
        rows = [0] * n
        for v in X + Y:
            rows[v] = h.neighbours(v, c) & mask
        cyc = long_cycle(rows, mask, rng, target_missing=target)
        cycles.append(MonoCycle(c, tuple(cyc)))
    covered = {v for cy in cycles for v in cy.vertices}
    uncovered = [v for v in range(n) if v not in covered]
    bound = 8 * slack
    rep = validate_cover(g, cycles, mode="cover", missing=n)
    if not rep:
        raise DefectError(f"three-cycle cover invalid: {rep.violation}", g, detail=rep.detail)
    if len(uncovered) > bound:
        raise DefectError(f"three-cycle cover leaves {len(uncovered)} uncovered, above {bound:.2f}", g, trimmed=trimmed, excess=excess)
    return ThreeCycleCover(cycles, uncovered, sorted(trimmed), bound)


# ---------------------------------------------------------------------------
# two-cycle partitions


EXHAUSTIVE_LIMIT = 14


@dataclass
class TwoCycleResult:
    status: str  # "found", "proven-none" or "budget"
    cycles: tuple = ()
    explored: int = 0
    transcript_hash: str = ""
    notes: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "found"

    def _first(self, c: Colour) -> Optional[MonoCycle]:
        return next((cyc for cyc in self.cycles if cyc.colour == c), None)

    @property
    def red(self) -> Optional[MonoCycle]:
        return self._first(RED)

    @property
    def blue(self) -> Optional[MonoCycle]:
        return self._first(BLUE)

    def to_json(self) -> dict:
        out = {"v": 1, "status": self.status, "explored": self.explored, "transcript_hash": self.transcript_hash}
        if self.found:
            out["cycles"] = [{"colour": c.colour.symbol, "vertices": list(c.vertices)} for c in self.cycles]
        return out


def _hamilton_cycle(rows, mask: int) -> Optional[list[int]]:
    """Backtracking Hamilton cycle on ``mask`` (vertex, edge and empty count as cycles)."""
    size = bin(mask).count("1")
    if size == 0:
        return []
    start = (mask & -mask).bit_length() - 1
    if size == 1:
        return [start]
    if size == 2:
        other = (mask & ~_bit(start)).bit_length() - 1
        return [start, other] if (rows[start] >> other) & 1 else None
    for v in iter_bits(mask):
        if bin(rows[v] & mask).count("1") < 2:
            return None
    seq = [start]

    def rec(v: int, used: int) -> bool:
        if used == mask:
            return bool((rows[v] >> start) & 1)
        free = mask & ~used
        # every free vertex must keep a way in and out
        for u in iter_bits(free):
            if not rows[u] & (free | _bit(v) | _bit(start)) & ~_bit(u):
                return False
        for u in iter_bits(rows[v] & free):
            seq.append(u)
            if rec(u, used | _bit(u)):
                return True
            seq.pop()
        return False

    return seq if rec(start, _bit(start)) else None


def two_cycle_partition_search(g: ColouredGraph, budget: float = 10.0, seed: Optional[int] = None, distinct: bool = True) -> TwoCycleResult:
    """Partition into two monochromatic cycles: exhaustive up to 14 vertices, heuristic beyond.

    ``distinct`` asks for one red and one blue cycle; otherwise the colours are free.
    """
    if not is_fair(g):
        raise HypothesisError("unfair")
    if g.n <= EXHAUSTIVE_LIMIT:
        return _exhaustive_two_cycles(g, distinct)
    return _heuristic_two_cycles(g, budget, random.Random(_seed(seed)))


def _exhaustive_two_cycles(g: ColouredGraph, distinct: bool = True) -> TwoCycleResult:
    n = g.n
    full = (1 << n) - 1
    rows = {c: g.colour_rows(c) for c in (RED, BLUE)}
    flags = {c: kernels.cycle_flags(n, rows[c], kernels.rooted_path_table(n, rows[c])) for c in (RED, BLUE)}
    combos = [(RED, BLUE)] if distinct else [(RED, BLUE), (RED, RED), (BLUE, BLUE)]
    digest = hashlib.sha256()
    explored = 0
    # largest first part first, so a Hamilton cycle wins over a split one
    for mask in range(full, -1, -1):
        explored += 1
        for c1, c2 in combos:
            if c1 == c2 and mask < full & ~mask:
                continue  # unordered pair of same-colour parts
            if not flags[c1][mask]:
                digest.update(b"%s%x;" % (c1.symbol.encode(), mask))
                continue
            if not flags[c2][full & ~mask]:
                digest.update(b"%s%s%x;" % (c1.symbol.encode(), c2.symbol.encode(), mask))
                continue
            first = _hamilton_cycle(rows[c1], mask)
            second = _hamilton_cycle(rows[c2], full & ~mask)
            if first is None or second is None:
                raise DefectError("cycle tables and backtracking disagree", g, mask=mask)
            out = (MonoCycle(c1, tuple(first)), MonoCycle(c2, tuple(second)))
            rep = validate_cover(g, out)
            if not rep:
                raise DefectError(f"two-cycle witness invalid: {rep.violation}", g)
            return TwoCycleResult("found", out, explored, digest.hexdigest())
    return TwoCycleResult("proven-none", explored=explored, transcript_hash=digest.hexdigest())


def _heuristic_two_cycles(g: ColouredGraph, budget: float, rng: random.Random) -> TwoCycleResult:
    from .paths import partition_path_cycle  # local: paths imports heavy machinery

    deadline = time.monotonic() + budget
    n = g.n
    rows = {c: g.colour_rows(c) for c in (RED, BLUE)}
    seeds = []
    try:
        if g.k >= 3:
            path, cycle, uncovered = partition_path_cycle(g)
            seeds.append((list(path.vertices), path.colour, list(cycle.vertices), cycle.colour, list(uncovered)))
        else:
            got = partition_bipartite_paths(g)
            if isinstance(got, PathPair):
                seeds.append((list(got.red.vertices), RED, list(got.blue.vertices), BLUE, []))
    except (HypothesisError, DefectError) as exc:
        return TwoCycleResult("budget", notes=[f"no seed: {exc}"])
    explored = 0
    while seeds and time.monotonic() < deadline:
        p, pc, q, qc, extra = seeds.pop()
        explored += 1
        p = _absorb(rows[pc], p, extra, rows[qc], q)
        if p is None:
            continue
        pmask = sum(_bit(v) for v in p)
        qmask = sum(_bit(v) for v in q)
        if pmask | qmask != (1 << n) - 1:
            continue
        cp = _close(rows[pc], p, rng, ROTATIONS * 5)
        cq = q if len(q) <= 2 or (rows[qc][q[-1]] >> q[0]) & 1 else _close(rows[qc], q, rng, ROTATIONS * 5)
        if len(cp) == len(p) and len(cq) == len(q):
            red, blue = (cp, cq) if pc == RED else (cq, cp)
            out = (MonoCycle(RED, tuple(red)), MonoCycle(BLUE, tuple(blue)))
            if validate_cover(g, out):
                return TwoCycleResult("found", out, explored)
        # retry from a rotated copy of the path
        if len(p) > 2:
            i = rng.randrange(1, len(p) - 1)
            if (rows[pc][p[-1]] >> p[i - 1]) & 1:
                seeds.append((p[:i] + p[i:][::-1], pc, q, qc, []))
    return TwoCycleResult("budget", explored=explored)


def _absorb(prow, p: list[int], extra: list[int], qrow, q: list[int]) -> Optional[list[int]]:
    """Put leftover vertices on the ends of ``p`` or inside the cycle ``q``."""
    p = list(p)
    for w in extra:
        if not p or (prow[p[-1]] >> w) & 1:
            p.append(w)
        elif (prow[p[0]] >> w) & 1:
            p.insert(0, w)
        else:
            for i in range(len(q)):
                a, b = q[i], q[(i + 1) % len(q)]
                if (qrow[a] >> w) & 1 and (qrow[b] >> w) & 1:
                    q.insert(i + 1, w)
                    break
            else:
                return None
    return p


def _proper_split_sides(m: int):
    """(|A|, |C|) for which the split colouring of K_{m,m} is proper."""
    for a in range(1, m):
        for c in range(1, m):
            if abs(a - c) >= 2 and abs(a - (m - c)) >= 2:
                yield a, c


def section_seven_family(sides=(6,)) -> list[tuple[str, ColouredGraph]]:
    """Proper split colourings of K_{m,m} with one or two extra singleton classes.

    The first singleton ``v_3`` sees only one colour, the optional second
    ``v_4`` only the other, and the edge ``v_3 v_4`` takes either colour.
    K_{6,6} is the smallest balanced graph carrying a proper split.
    """
    out = []
    for m in sides:
        U = list(range(m))
        V = list(range(m, 2 * m))
        for a, c in _proper_split_sides(m):
            A, C = set(U[:a]), set(V[:c])
            for c3 in (RED, BLUE):
                for c34 in (None, RED, BLUE):

                    def col(u, v, A=A, C=C, m=m, c3=c3, c34=c34):
                        u, v = min(u, v), max(u, v)
                        if v == 2 * m:
                            return c3
                        if v == 2 * m + 1:
                            return c34 if u == 2 * m else c3.other
                        return BLUE if (u in A) == (v in C) else RED

                    classes = [U, V, [2 * m]] + ([[2 * m + 1]] if c34 is not None else [])
                    name = f"m{m}-A{a}-C{c}-v3{c3.symbol}" + ("" if c34 is None else f"-v34{c34.symbol}")
                    out.append((name, ColouredGraph.from_function(classes, col)))
    return out
