"""Exhaustive deciders for small instances.

These share no code with the constructive routines beyond the graph model
and the bitmask kernels.  Path questions are answered from ``path_end_table``
(which vertex sets span a monochromatic path, and where it can end), cycle
questions from ``rooted_path_table`` plus ``cycle_flags``.
"""

from __future__ import annotations

import itertools
from typing import Optional

from . import kernels
from .graph import BLUE, RED, ColouredGraph, Colour, HypothesisError, MonoCycle, MonoPath, iter_bits

PATH_LIMIT = 12
CYCLE_LIMIT = 14
MATCHING_LIMIT = 10


def _guard(g: ColouredGraph, limit: int, what: str) -> None:
    if g.n > limit:
        raise HypothesisError(f"{what} oracle limited to {limit} vertices, got {g.n}")


class PathTables:
    """Per-colour path tables of one graph, with witness recovery."""

    def __init__(self, g: ColouredGraph):
        self.g = g
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.rows = {c: g.colour_rows(c) for c in (RED, BLUE)}
        self.ends = {c: kernels.path_end_table(g.n, self.rows[c]) for c in (RED, BLUE)}

    def spans(self, c: Colour, mask: int) -> bool:
        return mask == 0 or self.ends[c][mask] != 0

    def path(self, c: Colour, mask: int, end: Optional[int] = None) -> tuple[int, ...]:
        if mask == 0:
            return ()
        ends, rows = self.ends[c], self.rows[c]
        if end is None:
            end = next(iter_bits(ends[mask]))
        seq = [end]
        while mask != 1 << end:
            rest = mask & ~(1 << end)
            prev = next(iter_bits(ends[rest] & rows[end]))
            seq.append(prev)
            mask, end = rest, prev
        return tuple(seq[::-1])


def brute_force_path_partition(g: ColouredGraph, shared: bool = False, distinct: bool = True, parts: int = 2, method: str = "dp"):
    """Decide whether ``g`` splits into monochromatic paths; return a witness or None.

    ``distinct``: exactly one red and one blue path (``parts`` must be 2).
    ``shared``: the red and blue path also share their last vertex.
    Otherwise up to ``parts`` paths of any colours.
    ``method="naive"`` runs a plain backtracking search instead of the tables.
    """
    _guard(g, PATH_LIMIT, "path")
    if method == "naive":
        return _naive_paths(g, shared, distinct, parts)
    t = PathTables(g)
    full = t.full
    if distinct or shared:
        red_ends, blue_ends = t.ends[RED], t.ends[BLUE]
        if shared:
            for mask in range(1, full + 1):
                e = red_ends[mask]
                while e:
                    low = e & -e
                    x = low.bit_length() - 1
                    e ^= low
                    other = (full & ~mask) | low
                    if (blue_ends[other] >> x) & 1:
                        return (MonoPath(RED, t.path(RED, mask, x)), MonoPath(BLUE, t.path(BLUE, other, x)))
            return None
        for mask in range(full + 1):
            if t.spans(RED, mask) and t.spans(BLUE, full & ~mask):
                return (MonoPath(RED, t.path(RED, mask)), MonoPath(BLUE, t.path(BLUE, full & ~mask)))
        return None
    return _cover_any(full, parts, lambda m: RED if t.spans(RED, m) else (BLUE if t.spans(BLUE, m) else None), lambda c, m: MonoPath(c, t.path(c, m)))


def _cover_any(full: int, parts: int, colour_of, build):
    """Fewest pieces (at most ``parts``) covering ``full``; each piece must get a colour."""
    if parts == 2:
        for mask in range(full + 1):
            c1 = colour_of(mask)
            if c1 is None:
                continue
            c2 = colour_of(full & ~mask)
            if c2 is not None:
                return (build(c1, mask), build(c2, full & ~mask))
        return None
    best = {0: ()}
    frontier = [0]
    for _ in range(parts):
        nxt = []
        for covered in frontier:
            free = full & ~covered
            low = free & -free
            rest = free ^ low
            sub = rest
            while True:
                piece = sub | low
                if covered | piece not in best:
                    c = colour_of(piece)
                    if c is not None:
                        best[covered | piece] = best[covered] + ((c, piece),)
                        nxt.append(covered | piece)
                if sub == 0:
                    break
                sub = (sub - 1) & rest
        if full in best:
            return tuple(build(c, m) for c, m in best[full])
        frontier = nxt
    return None


def _naive_paths(g: ColouredGraph, shared: bool, distinct: bool, parts: int):
    n = g.n
    if not (distinct or shared):
        raise HypothesisError("naive method covers the red/blue variants only")
    for perm in itertools.permutations(range(n)):
        cuts = range(n + 1) if not shared else range(1, n + 1)
        for cut in cuts:
            red = perm[:cut]
            blue = perm[cut:] + (red[-1],) if shared else perm[cut:]
            if shared and blue[0] == red[-1] and len(blue) > 1:
                continue
            if all(g.has_edge(a, b, RED) for a, b in zip(red, red[1:])) and all(g.has_edge(a, b, BLUE) for a, b in zip(blue, blue[1:])):
                return (MonoPath(RED, red), MonoPath(BLUE, blue))
    return None


# ---------------------------------------------------------------------------
# cycles


class CycleTables:
    def __init__(self, g: ColouredGraph):
        self.g = g
        self.full = (1 << g.n) - 1
        self.rows = {c: g.colour_rows(c) for c in (RED, BLUE)}
        self.h = {c: kernels.rooted_path_table(g.n, self.rows[c]) for c in (RED, BLUE)}
        self.flags = {c: kernels.cycle_flags(g.n, self.rows[c], self.h[c]) for c in (RED, BLUE)}

    def spans(self, c: Colour, mask: int) -> bool:
        return bool(self.flags[c][mask])

    def cycle(self, c: Colour, mask: int) -> tuple[int, ...]:
        if mask == 0:
            return ()
        if mask & (mask - 1) == 0:
            return (mask.bit_length() - 1,)
        h, rows = self.h[c], self.rows[c]
        s = (mask & -mask).bit_length() - 1
        if bin(mask).count("1") == 2:
            return tuple(iter_bits(mask))
        end = next(iter_bits(h[mask] & rows[s]))
        seq = [end]
        while mask != 1 << s:
            rest = mask & ~(1 << end)
            prev = next(iter_bits(h[rest] & rows[end]))
            seq.append(prev)
            mask, end = rest, prev
        return tuple(seq[::-1])


def brute_force_cycle_partition(g: ColouredGraph, max_cycles: int = 2, distinct: bool = True):
    """Partition into monochromatic cycles (empty, a vertex or an edge allowed).

    With ``distinct`` and ``max_cycles == 2``: one red and one blue cycle.
    """
    _guard(g, CYCLE_LIMIT, "cycle")
    t = CycleTables(g)
    full = t.full
    if distinct:
        if max_cycles != 2:
            raise HypothesisError("distinct colours means exactly two cycles")
        for mask in range(full + 1):
            if t.spans(RED, mask) and t.spans(BLUE, full & ~mask):
                return (MonoCycle(RED, t.cycle(RED, mask)), MonoCycle(BLUE, t.cycle(BLUE, full & ~mask)))
        return None
    return _cover_any(full, max_cycles, lambda m: RED if t.spans(RED, m) else (BLUE if t.spans(BLUE, m) else None), lambda c, m: MonoCycle(c, t.cycle(c, m)))


def brute_force_path_cycle(g: ColouredGraph, missing: int = 1):
    """A path and a cycle of distinct colours covering all but ``missing`` vertices, or None."""
    _guard(g, CYCLE_LIMIT, "path-cycle")
    pt = PathTables(g)
    ct = CycleTables(g)
    full = pt.full
    for cyc_colour in (RED, BLUE):
        path_colour = cyc_colour.other
        for mask in range(full + 1):
            if not ct.spans(cyc_colour, mask):
                continue
            rest = full & ~mask
            drop_sets = [0] + [1 << v for v in iter_bits(rest)] if missing >= 1 else [0]
            for drop in drop_sets:
                if pt.spans(path_colour, rest & ~drop):
                    return (MonoPath(path_colour, pt.path(path_colour, rest & ~drop)), MonoCycle(cyc_colour, ct.cycle(cyc_colour, mask)))
    return None


# ---------------------------------------------------------------------------
# connected matchings


def _components(n: int, rows) -> list[int]:
    comp = [0] * n
    seen = 0
    for v in range(n):
        if (seen >> v) & 1:
            continue
        mask = 1 << v
        frontier = mask
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= rows[u]
            nxt &= ~mask
            mask |= nxt
            frontier = nxt
        seen |= mask
        for u in iter_bits(mask):
            comp[u] = mask
    return comp


def _perfect_table(n: int, rows) -> bytearray:
    size = 1 << n
    pm = bytearray(size)
    pm[0] = 1
    for mask in range(1, size):
        if bin(mask).count("1") & 1:
            continue
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        cand = rows[v] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            if pm[rest ^ b]:
                pm[mask] = 1
                break
    return pm


def _matching(rows, mask: int, pm) -> list[tuple[int, int]]:
    out = []
    while mask:
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        for u in iter_bits(rows[v] & rest):
            if pm[rest & ~(1 << u)]:
                out.append((v, u))
                mask = rest & ~(1 << u)
                break
        else:  # pragma: no cover - table says a matching exists
            raise AssertionError("perfect matching table inconsistent")
    return out


def brute_force_connected_matchings(g: ColouredGraph):
    """Red and blue connected matchings that together cover every vertex, or None.

    Returns ``(red_edges, blue_edges)``.
    """
    _guard(g, MATCHING_LIMIT, "matching")
    if g.n % 2:
        raise HypothesisError("connected matching cover needs an even number of vertices")
    n, full = g.n, (1 << g.n) - 1
    rows = {c: g.colour_rows(c) for c in (RED, BLUE)}
    comp = {c: _components(n, rows[c]) for c in (RED, BLUE)}
    pm = {c: _perfect_table(n, rows[c]) for c in (RED, BLUE)}

    def ok(c: Colour, mask: int) -> bool:
        if mask == 0:
            return True
        low = (mask & -mask).bit_length() - 1
        return pm[c][mask] and mask & ~comp[c][low] == 0

    for mask in range(full + 1):
        if ok(RED, mask) and ok(BLUE, full & ~mask):
            return _matching(rows[RED], mask, pm[RED]), _matching(rows[BLUE], full & ~mask, pm[BLUE])
    return None


def hamilton_paths(g: ColouredGraph):
    """Every Hamilton path of the uncoloured graph, each once up to reversal."""
    n = g.n
    adj = g.cross

    def rec(seq, mask):
        if mask == (1 << n) - 1:
            if seq[0] < seq[-1] or n == 1:
                yield tuple(seq)
            return
        for w in iter_bits(adj[seq[-1]] & ~mask):
            seq.append(w)
            yield from rec(seq, mask | 1 << w)
            seq.pop()

    for v in range(n):
        yield from rec([v], 1 << v)


def has_hamilton_cycle(g: ColouredGraph) -> bool:
    """Uncoloured Hamilton cycle test by plain backtracking (n >= 3)."""
    n = g.n
    adj = g.cross
    full = (1 << n) - 1

    def rec(v, mask):
        if mask == full:
            return bool((adj[v] >> 0) & 1)
        for w in iter_bits(adj[v] & ~mask):
            if rec(w, mask | 1 << w):
                return True
        return False

    return rec(0, 1)
