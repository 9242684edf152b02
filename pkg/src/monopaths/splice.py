"""Splice moves: reassembling a red/blue path pair around newly added vertices.

A state is a red path ``(r_1, ..., r_s, x)`` and a blue path ``(b_1, ..., b_t, x)``
meeting only in ``x``.  Absorbing two new vertices ``v_1, v_2`` means finding a
red path and a blue path that partition the enlarged vertex set and share an
endvertex.  Candidates come from two sources, tried in order:

1. a fixed catalogue of reassembly templates written in a small path notation
   (``"v_2,v_1,r_i..r_s,x,r_1..r_{i-1}"``), instantiated for every cut index ``i``;
2. the closure: cut each path at up to two places and search all ways of
   gluing the pieces, the new vertices and ``x`` back into two monochromatic
   paths.

Template candidates are only guaranteed to be permutations of the vertex set;
the consumer checks colours.  Closure candidates are colour-valid by construction.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .graph import BLUE, RED, ColouredGraph, Colour


@dataclass(frozen=True)
class SharedPathState:
    """Red path ``red`` and blue path ``blue``, both ending at ``x``, meeting only there."""

    red: tuple[int, ...]
    blue: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "red", tuple(self.red))
        object.__setattr__(self, "blue", tuple(self.blue))
        if not self.red or not self.blue or self.red[-1] != self.blue[-1]:
            raise ValueError("both paths must end at the shared vertex")
        if set(self.red) & set(self.blue) != {self.red[-1]}:
            raise ValueError("paths may only meet at the shared vertex")

    @property
    def x(self) -> int:
        return self.red[-1]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.red) | frozenset(self.blue)

    def swapped(self) -> "SharedPathState":
        return SharedPathState(self.blue, self.red)

    def is_valid(self, g: ColouredGraph) -> bool:
        return all(g.has_edge(u, v, RED) for u, v in zip(self.red, self.red[1:])) and all(
            g.has_edge(u, v, BLUE) for u, v in zip(self.blue, self.blue[1:])
        )


@dataclass(frozen=True)
class SpliceMove:
    """One candidate reassembly; ``template`` names its origin."""

    template: str
    red: tuple[int, ...]
    blue: tuple[int, ...]


# ---------------------------------------------------------------------------
# template notation
#
# A pattern is a comma separated list of atoms.  Atoms are ``x``, ``v_1``,
# ``v_2``, ``r_<idx>``, ``b_<idx>`` and ranges ``r_<idx>..r_<idx>``.  Indices
# are ``1``, ``2``, ``3``, ``s``, ``t``, ``i`` with an optional ``+k``/``-k``.
# A range runs in the direction it is written for generic index values; if the
# concrete end is one step past the start it is empty.

_ATOM = re.compile(r"^(r|b)_\{?([1-9]|[sti])([+-]\d)?\}?$")


def _index(base: str, off: str | None):
    return (base, int(off) if off else 0)


def _eval(idx, s, t, i):
    base, off = idx
    val = {"s": s, "t": t, "i": i}.get(base)
    if val is None:
        val = int(base)
    return val + off


def _parse_atom(tok: str):
    tok = tok.strip()
    if tok in ("x", "v_1", "v_2"):
        return ("v", tok)
    m = _ATOM.match(tok)
    if not m:
        raise ValueError(f"bad template atom {tok!r}")
    return ("p", m.group(1), _index(m.group(2), m.group(3)))


def parse_pattern(text: str):
    """Parse a path pattern into a list of atoms and ranges."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            a, b = _parse_atom(lo), _parse_atom(hi)
            if a[0] != "p" or b[0] != "p" or a[1] != b[1]:
                raise ValueError(f"bad range {part!r}")
            generic_a = _eval(a[2], 1000, 1000, 500)
            generic_b = _eval(b[2], 1000, 1000, 500)
            step = 1 if generic_b >= generic_a else -1
            out.append(("range", a[1], a[2], b[2], step))
        else:
            out.append(_parse_atom(part))
    return out


def instantiate(pattern, red_body: Sequence[int], blue_body: Sequence[int], named: dict, i: int) -> Optional[list[int]]:
    """Expand a parsed pattern; None when an index falls outside its path."""
    s, t = len(red_body), len(blue_body)
    seq: list[int] = []
    for item in pattern:
        kind = item[0]
        if kind == "v":
            seq.append(named[item[1]])
        elif kind == "p":
            body = red_body if item[1] == "r" else blue_body
            k = _eval(item[2], s, t, i)
            if not 1 <= k <= len(body):
                return None
            seq.append(body[k - 1])
        else:
            _, letter, a_idx, b_idx, step = item
            body = red_body if letter == "r" else blue_body
            a, b = _eval(a_idx, s, t, i), _eval(b_idx, s, t, i)
            if (b - a) * step < 0:
                if b == a - step:
                    continue
                return None
            if not (1 <= a <= len(body) and 1 <= b <= len(body)):
                return None
            seq.extend(body[k - 1] for k in range(a, b + step, step))
    return seq


# Reassemblies of (r_1..r_s, x), (b_1..b_t, x) plus v_1, v_2.  Each entry is
# (name, red pattern, blue pattern); an empty pattern is the empty path.
_RAW_TEMPLATES = [
    ("red-prepend-v2v1", "v_2,v_1,r_1..r_s,x", ""),
    ("red-prepend-v1v2", "v_1,v_2,r_1..r_s,x", ""),
    ("blue-prepend-v1v2", "", "v_2,v_1,b_1..b_t,x"),
    ("blue-prepend-v2v1", "", "v_1,v_2,b_1..b_t,x"),
    ("red-append-x-v1v2", "r_1..r_s,x,v_1,v_2", "b_1..b_t"),
    ("red-append-x-v2v1", "r_1..r_s,x,v_2,v_1", "b_1..b_t"),
    ("red-v2v1-b1", "v_2,v_1,b_1", "b_1..b_t,x"),
    ("red-v2v1-blue-v1", "v_2,v_1", "v_1,b_1..b_t,x"),
    ("red-v2v1-r1", "v_2,v_1,r_1..r_s,x", "b_1..b_t,x"),
    ("T004", "r_2..r_s,x", "v_1,r_1,v_2"),
    ("T005", "r_2..r_s", "v_1,r_1,x,v_2"),
    ("R-rotate-through-x", "v_2,v_1,r_i..r_s,x,r_1..r_{i-1}", ""),
    ("T007", "r_{i+1}..r_s,x,r_1..r_{i-1}", "v_1,r_i,v_2"),
    ("T008", "v_1,v_2,r_2..r_s,x", "v_1,r_1"),
    ("T009", "r_3..r_s", "v_2,r_2,x,v_1,r_1"),
    ("T010", "v_2,v_1,r_i..r_s,x,r_2..r_{i-1}", "r_1"),
    ("T011", "r_{i+1}..r_s,x,r_2..r_{i-1}", "v_2,r_i,v_1,r_1"),
    ("T012", "r_1..r_s,v_2,v_1", "v_1,x,b_t..b_1"),
    ("T013", "r_1..r_s", "v_2,x,b_t..b_1,v_1"),
    ("T014", "r_s..r_1,b_1,v_1,v_2", "v_2,x,b_t..b_2"),
    ("T015", "r_2..r_s", "v_1,x,b_t..b_1,r_1,v_2"),
    ("T016", "r_1..r_s", "v_1,x,b_t..b_1,v_2"),
    ("T017", "r_1..r_s,x,b_1,v_2,v_1", "b_2..b_t"),
    ("T018", "r_2..r_s", "v_1,x,b_1..b_t,r_1,v_2"),
    ("T019", "x,r_s..r_1,b_t,v_1,v_2", "x,b_1..b_t"),
    ("T020", "r_1..r_s,x,v_2,v_1", "v_1,b_t..b_1"),
    ("T021", "r_1..r_s", "v_2,x,v_1,b_t..b_1"),
    ("T022", "r_s..r_1", "r_s,v_2,b_t..b_1,x,v_1"),
    ("T023", "v_2,v_1,r_2..r_s", "v_2,r_1,x,b_t..b_1"),
    ("T024", "v_1,v_2,b_t,r_2..r_s,x", "r_1,x"),
    ("T025", "v_1,v_2,b_t,r_2..r_s", "r_1,x,b_1..b_{t-1}"),
    ("T026", "r_3..r_s", "r_s,v_2,r_1,x,v_1,r_2,b_t..b_1"),
    ("T027", "v_1,v_2,r_i..r_1,x,r_s..r_{i+1}", "b_1..b_t"),
    ("T028", "v_1,v_2,b_1,r_{i+1}..r_s,x,r_1..r_i", "b_2..b_t"),
    ("T029", "r_{i+2}..r_s,x,r_1..r_{i-1}", "v_2,r_i,v_1,r_{i+1},b_1..b_t"),
    ("T030", "v_2,v_1,b_i,r_1..r_s", "b_{i-1}..b_1,x,b_t..b_{i+1}"),
    ("T031", "r_1..r_s", "v_2,b_i,v_1,b_{i-1}..b_1,x,b_t..b_{i+1}"),
    ("T032", "v_2,v_1,b_{i-1},r_1..r_s", "b_i..b_t,x,b_1..b_{i-2}"),
    ("T033", "r_2..r_s", "v_2,r_1,b_i..b_t,x,b_1..b_{i-1},v_1"),
    ("T034", "r_2..r_s", "v_2,r_1,b_{i-1}..b_1,x,b_t..b_i,v_1"),
    ("T035", "r_2..r_{s-1}", "v_1,x,b_t..b_i,r_1,v_2,r_s,b_{i-1}..b_1"),
    ("T036", "v_1,b_{i-1},r_s..r_2", "b_{i-2}..b_1,x,v_2,r_1,b_i..b_t"),
    ("T037", "r_2..r_{s-1}", "v_2,r_1,r_s,v_1,x,b_t..b_1"),
    ("T038", "r_2..r_s", "r_s,v_1,x,b_t..b_1,r_1,v_2"),
    ("T039", "x,r_s..r_1,b_1,v_1,v_2", "x,b_t..b_2"),
    ("T040", "r_1..r_s", "r_s,v_1,x,b_t..b_1,v_2"),
    ("T041", "r_1..r_s,b_1,v_2,v_1", "v_1,x,b_t..b_1"),
    ("T042", "v_1,v_2,r_i..r_2,r_1,r_s..r_{i+1}", "b_1..b_t,x"),
    ("T043", "r_{i-1}..r_1,r_s..r_{i+1}", "v_2,r_i,v_1,x,b_t..b_1"),
    ("T044", "r_1..r_{s-1}", "v_2,b_i..b_t,x,v_1,r_s,b_1..b_{i-1}"),
    ("T045", "r_2..r_{s-1}", "v_2,r_1,b_i..b_t,x,v_1,r_s,b_1..b_{i-1}"),
    ("T046", "v_2,b_i,r_1..r_{s-1}", "b_{i+1}..b_t,x,v_1,r_s,b_1..b_{i-1}"),
    ("T047", "v_1,v_2,x,r_s..r_1", "b_1..b_t"),
    ("T048", "r_1..r_s,v_1,v_2", "x,b_1..b_t"),
    ("T049", "r_2..r_s", "v_1,r_1,v_2,x,b_t..b_1"),
    ("T050", "r_2..r_s", "v_1,r_1,b_1..b_t,x,v_2"),
    ("T051", "v_1,v_2,b_1,r_1..r_s", "x,b_t..b_2"),
    ("T052", "r_2..r_{s-1}", "r_1,v_1,r_s,b_1..b_t,x,v_2"),
    ("T053", "r_2..r_{s-1}", "r_1,v_1,b_t..b_1,v_2,x"),
    ("T054", "v_2,v_1,b_t,b_1,r_1..r_s,x", "b_2..b_{t-1}"),
    ("T055", "v_2,v_1,r_i..r_1,x,r_s..r_{i-1}", "b_1..b_t"),
    ("T056", "r_{i+1}..r_s,x,r_1..r_{i-1}", "v_1,r_i,v_2,b_1..b_t"),
    ("T057", "v_1,b_i,r_1..r_s", "b_{i+1}..b_t,x,v_2,b_1..b_{i-1}"),
    ("T058", "r_2..r_s", "v_1,r_1,b_i,b_{i+1}..b_t,x,v_2,b_1..b_{i-1}"),
    ("T059", "v_2,v_1,b_1,r_1..r_s", "x,b_t..b_1"),
    ("T060", "r_1..r_s,x,b_1,v_1,v_2", "b_2..b_t"),
    ("T061", "r_1..r_s", "v_2,x,b_1..b_t,v_1"),
    ("T062", "r_1..r_s,b_t,v_1,v_2", "x,b_1..b_t"),
    ("T063", "r_1..r_{s-1}", "v_1,r_s,b_t..b_1,x,v_2"),
    ("T064", "r_1..r_s,v_2,v_1", "x,b_t..b_1"),
    ("T065", "r_1..r_{s-1}", "v_1,r_s,v_2,x,b_t..b_1"),
    ("T066", "v_2,v_1,b_t,r_2..r_s,x", "b_1..b_{t-1},r_1"),
    ("T067", "b_t,v_1,v_2,b_{t-1},r_1..r_s,x", "b_1..b_{t-2}"),
    ("T068", "v_2,v_1,b_t,r_2..r_s,b_{t-1},r_1", "x,b_1..b_{t-2}"),
    ("T069", "b_t,r_2..r_{s-1}", "r_1,v_1,r_s,b_{t-1},v_2,x,b_1..b_{t-2}"),
    ("T070", "r_{s-1}..r_3", "r_1,v_1,r_s,r_2,b_t..b_1,x,v_2"),
    ("T071", "r_{i-1}..r_2,r_s..r_{i+1}", "r_1,v_1,r_i,v_2,x,b_t..b_1"),
    ("T072", "v_2,v_1,r_i..r_2,r_s..r_{i+1}", "r_1,x,b_t..b_1"),
    ("T073", "v_2,v_1,r_i..r_1,x,r_s..r_{i+1}", "b_1..b_t"),
    ("T074", "r_3..r_s", "r_1,v_1,b_i..b_t,r_2,v_2,x,b_1..b_{i-1}"),
    ("T075", "v_2,r_2..r_s", "r_1,v_1,b_i..b_t,x,b_1..b_{i-1}"),
    ("T076", "v_2,v_1,b_i,r_1..r_s", "b_{i+1}..b_t,b_1..b_{i-1}"),
    ("T077", "v_1,v_2,r_2..r_s", "r_1,b_i..b_t,x,b_1..b_{i-1}"),
    ("T078", "r_3..r_{s-1}", "r_s,v_1,r_1,b_i..b_t,r_2,v_2,x,b_1..b_{i-1}"),
    ("T079", "v_1,r_2..r_s", "r_1,v_2,b_1..b_t,x"),
    ("T080", "r_{s-1}..r_3", "r_s,v_1,r_2,b_1..b_t,x,v_2,r_1"),
    ("T081", "r_{s-1}..r_2,b_1", "r_s,v_1,b_2..b_t,x,v_2,r_1"),
    ("T082", "v_1,r_i..r_2,b_1,r_s..r_{i+1}", "r_1,v_2,x,b_t..b_2"),
    ("T083", "v_1,b_2,r_i..r_s,b_1,r_2..r_{i-1}", "r_1,v_2,x,b_t..b_3"),
    ("T084", "r_{i-1}..r_2,b_1,r_s..r_{i+1}", "r_1,v_2,x,b_t..b_2,r_i,v_1"),
    ("T085", "r_1..r_s", "v_1,b_i,b_{i+1}..b_t,x,v_2,b_1..b_{i-1}"),
    ("T086", "v_1,b_i,r_1..r_s", "b_{i-1}..b_1,v_2,x,b_t..b_{i+1}"),
    ("T087", "r_3..r_s", "v_1,r_2,b_i,r_1,b_{i-1}..b_1,v_2,x,b_t..b_{i+1}"),
    ("T088", "v_1,b_i,r_2..r_s", "r_1,b_{i-1}..b_1,v_2,x,b_t..b_{i+1}"),
    ("T089", "v_2,v_1,b_1,r_s..r_1", "b_2..b_t,x"),
    ("T090", "r_{s-1}..r_1", "v_1,r_s,b_1,b_2..b_t,x,v_2"),
    ("T091", "r_1..r_{s-1}", "b_1..b_t,x,v_2,r_s,v_1"),
    ("T092", "r_1..r_s", "v_1,b_1..b_t,x,v_2"),
    ("T093", "r_2..r_s", "v_1,b_t,x,v_2,r_1,b_1..b_{t-1}"),
    ("T094", "v_2,v_1,b_t,r_1..r_s,x", "b_{t-1}..b_1"),
    ("T095", "v_2,v_1,b_1,x,r_s..r_1", "b_t..b_2"),
    ("T096", "v_2,v_1,r_i..r_s,r_1..r_{i-1}", "x,b_t..b_1"),
    ("T097", "r_2..r_s", "v_1,b_i..b_1,r_1,v_2,x,b_t..b_{i+1}"),
    ("T098", "v_2,v_1,b_i,r_1..r_s", "b_{i-1}..b_1,x,b_t..b_{i+1}"),
    ("T099", "r_2..r_{s-1}", "v_1,r_s,b_i..b_t,x,v_2,r_1,b_1..b_{i-1}"),
    ("T100", "v_2,v_1,b_i,r_s..r_1", "b_{i+1}..b_t,x,b_1..b_{i-1}"),
    ("T101", "r_1..r_s,x,b_1,v_1,v_2", "b_2..b_t"),
    ("T102", "r_1..r_s,v_1,v_2", "x,b_1..b_t"),
]


def _mirror_pattern(text: str) -> str:
    """Reflect offsets around the cut index: ``r_{i+k}`` becomes ``r_{i-k}``."""

    def flip(m):
        sign = "-" if m.group(2) == "+" else "+"
        return f"{m.group(1)}_{{i{sign}{m.group(3)}}}"

    return re.sub(r"([rb])_\{i([+-])(\d)\}", flip, text)


def _swap_new(text: str) -> str:
    return text.replace("v_1", "v_#").replace("v_2", "v_1").replace("v_#", "v_2")


def _build_catalogue():
    seen = set()
    out = []
    variants = []
    for name, red, blue in _RAW_TEMPLATES:
        variants.append((name, red, blue))
    for name, red, blue in _RAW_TEMPLATES:
        variants.append((name + "/swap-v", _swap_new(red), _swap_new(blue)))
    for name, red, blue in _RAW_TEMPLATES:
        if "i" in red + blue:
            variants.append((name + "/mirror", _mirror_pattern(red), _mirror_pattern(blue)))
            variants.append((name + "/mirror/swap-v", _swap_new(_mirror_pattern(red)), _swap_new(_mirror_pattern(blue))))
    for name, red, blue in variants:
        key = (red, blue)
        if key in seen:
            continue
        seen.add(key)
        out.append((name, parse_pattern(red), parse_pattern(blue), "i" in red + blue))
    return out


TEMPLATES = _build_catalogue()


def template_candidates(state: SharedPathState, v1: int, v2: int) -> Iterator[SpliceMove]:
    red_body, blue_body = state.red[:-1], state.blue[:-1]
    named = {"x": state.x, "v_1": v1, "v_2": v2}
    total = len(state.vertices) + 2
    top = max(len(red_body), len(blue_body))
    for uses_i in (False, True):
        for name, rp, bp, has_i in TEMPLATES:
            if has_i != uses_i:
                continue
            for i in range(1, top + 1) if has_i else (0,):
                red = instantiate(rp, red_body, blue_body, named, i)
                if red is None:
                    continue
                blue = instantiate(bp, red_body, blue_body, named, i)
                if blue is None:
                    continue
                if len(set(red) | set(blue)) != total:
                    continue
                yield SpliceMove(f"{name}[i={i}]" if has_i else name, tuple(red), tuple(blue))


# ---------------------------------------------------------------------------
# closure


def _segments(body: Sequence[int], cuts: Sequence[int]) -> list[tuple[int, ...]]:
    out, prev = [], 0
    for c in cuts:
        out.append(tuple(body[prev:c]))
        prev = c
    out.append(tuple(body[prev:]))
    return [seg for seg in out if seg]


def _orderings(g: ColouredGraph, pieces: Sequence[tuple[int, ...]], colour: Colour, limit: int) -> list[tuple[int, ...]]:
    """All ways (up to ``limit``) to chain every piece into one ``colour`` path."""
    if not pieces:
        return [()]
    k = len(pieces)
    found: list[tuple[int, ...]] = []
    # (used pieces, current end) states that cannot be completed
    dead: set[tuple[int, int]] = set()

    def rec(used: int, seq: list[int]):
        if len(found) >= limit:
            return
        if used == (1 << k) - 1:
            found.append(tuple(seq))
            return
        key = (used, seq[-1] if seq else -1)
        if key in dead:
            return
        before = len(found)
        for j in range(k):
            if used >> j & 1:
                continue
            piece = pieces[j]
            for orient in (piece, piece[::-1]) if len(piece) > 1 else (piece,):
                if seq and not g.has_edge(seq[-1], orient[0], colour):
                    continue
                rec(used | 1 << j, seq + list(orient))
        if len(found) == before:
            dead.add(key)

    rec(0, [])
    if len(found) > 1:
        # a path and its reverse are the same path
        uniq = {}
        for p in found:
            uniq.setdefault(min(p, p[::-1]), p)
        found = list(uniq.values())
    return found


def assemble(g: ColouredGraph, red_pieces, blue_pieces, free: Sequence[int], limit: int = 16) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Glue pieces into a red and a blue path; free single vertices go to either side."""
    for mask in range(1 << len(free)):
        to_red = [(free[j],) for j in range(len(free)) if mask >> j & 1]
        to_blue = [(free[j],) for j in range(len(free)) if not mask >> j & 1]
        reds = _orderings(g, list(red_pieces) + to_red, RED, limit)
        if not reds:
            continue
        blues = _orderings(g, list(blue_pieces) + to_blue, BLUE, limit)
        for r in reds:
            for b in blues:
                yield r, b


def _cut_sets(length: int, max_cuts: int):
    positions = range(1, length)
    for k in range(max_cuts + 1):
        yield from itertools.combinations(positions, k)


def closure_candidates(g: ColouredGraph, red_body, blue_body, singles: Sequence[int], max_cuts: int = 2) -> Iterator[SpliceMove]:
    red_cut_sets = list(_cut_sets(len(red_body), max_cuts))
    blue_cut_sets = list(_cut_sets(len(blue_body), max_cuts))
    # cheapest combinations first
    combos = sorted(itertools.product(red_cut_sets, blue_cut_sets), key=lambda rb: len(rb[0]) + len(rb[1]))
    for rc, bc in combos:
        red_segs = _segments(red_body, rc)
        blue_segs = _segments(blue_body, bc)
        free = list(singles)
        red_fixed, blue_fixed = [], []
        for seg in red_segs:
            (red_fixed if len(seg) > 1 else free).append(seg if len(seg) > 1 else seg[0])
        for seg in blue_segs:
            (blue_fixed if len(seg) > 1 else free).append(seg if len(seg) > 1 else seg[0])
        for red, blue in assemble(g, red_fixed, blue_fixed, free):
            yield SpliceMove(f"closure[r={list(rc)},b={list(bc)}]", red, blue)


def splice_candidates(g: ColouredGraph, state: SharedPathState, v1: int, v2: int, closure: bool = True) -> Iterator[SpliceMove]:
    """Deterministic stream: every template instance, then the two-cut closure."""
    yield from template_candidates(state, v1, v2)
    if closure:
        yield from closure_candidates(g, state.red[:-1], state.blue[:-1], [state.x, v1, v2])


# ---------------------------------------------------------------------------
# turning a candidate into a shared-endvertex pair


def _is_path(g: ColouredGraph, seq: Sequence[int], colour: Colour) -> bool:
    return all(g.has_edge(u, v, colour) for u, v in zip(seq, seq[1:]))


def make_shared(g: ColouredGraph, red: Sequence[int], blue: Sequence[int], vertex_set: frozenset[int] | None = None) -> Optional[SharedPathState]:
    """Turn a red/blue path partition into a pair sharing an endvertex, if possible.

    Accepts paths that already share one common endvertex.  Disjoint paths are
    joined through an edge between an endvertex of each: the path of that
    edge's colour absorbs the other endvertex.
    """
    red, blue = list(red), list(blue)
    if not _is_path(g, red, RED) or not _is_path(g, blue, BLUE):
        return None
    common = set(red) & set(blue)
    if vertex_set is not None and (set(red) | set(blue)) != vertex_set:
        return None
    if len(set(red)) != len(red) or len(set(blue)) != len(blue):
        return None
    if len(common) > 1:
        return None
    if len(common) == 1:
        (y,) = common
        if red[0] == y:
            red.reverse()
        if blue[0] == y:
            blue.reverse()
        if red[-1] != y or blue[-1] != y:
            return None
        return SharedPathState(red, blue)
    if not red and not blue:
        return None
    if not red:
        return SharedPathState((blue[-1],), blue)
    if not blue:
        return SharedPathState(red, (red[-1],))
    for r in ({red[0], red[-1]}):
        for b in ({blue[0], blue[-1]}):
            c = g.colour(r, b)
            if c is None:
                continue
            rr = red if red[-1] == r else red[::-1]
            bb = blue if blue[-1] == b else blue[::-1]
            if c == RED:
                return SharedPathState(rr + [b], bb)
            return SharedPathState(rr, bb + [r])
    return None


def absorb_pair(g: ColouredGraph, state: SharedPathState, v1: int, v2: int, closure: bool = True, trace=None) -> Optional[tuple[SharedPathState, str]]:
    """First candidate that yields a valid shared pair on ``state`` plus ``v1, v2``.

    When ``v1v2`` is blue the search runs with colours exchanged, so the red
    templates do the work for either colour.
    """
    target = state.vertices | {v1, v2}
    attempts = [(False, g, state)]
    swapped = (True, g.swap_colours(), state.swapped())
    if g.has_edge(v1, v2, BLUE):
        attempts.insert(0, swapped)
    else:
        attempts.append(swapped)
    # templates for both orientations before falling back to the closure
    for stage in ("templates", "closure"):
        for flipped, h, st in attempts:
            stream = template_candidates(st, v1, v2) if stage == "templates" else closure_candidates(h, st.red[:-1], st.blue[:-1], [st.x, v1, v2])
            if stage == "closure" and not closure:
                continue
            for move in stream:
                out = make_shared(h, move.red, move.blue, target)
                if out is None:
                    continue
                if flipped:
                    out = out.swapped()
                if trace is not None:
                    trace.append({"template": move.template, "colours_swapped": flipped})
                return out, move.template
    return None
