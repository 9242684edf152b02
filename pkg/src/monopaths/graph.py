"""Coloured complete multipartite graphs and the path/cycle structures living on them.

Colours are stored per vertex as two integer bitmasks: ``defined[v]`` has bit
``u`` set when the pair ``uv`` carries a colour and ``red[v]`` has bit ``u`` set
when that colour is red.  A valid graph has ``defined[v]`` equal to the set of
vertices outside the class of ``v``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union


class Colour(enum.IntEnum):
    RED = 0
    BLUE = 1

    @property
    def other(self) -> "Colour":
        return Colour(1 - self)

    @property
    def symbol(self) -> str:
        return "R" if self is Colour.RED else "B"

    @classmethod
    def parse(cls, s: str) -> "Colour":
        try:
            return {"R": cls.RED, "B": cls.BLUE}[s]
        except KeyError:
            raise ValueError(f"unknown colour {s!r}, expected 'R' or 'B'") from None


RED = Colour.RED
BLUE = Colour.BLUE


class HypothesisError(ValueError):
    """Input does not meet the hypotheses of the requested routine."""


class DefectError(RuntimeError):
    """A routine failed where a theorem guarantees success.

    Carries the offending instance so it can be serialized and replayed.
    """

    def __init__(self, message: str, graph: "ColouredGraph | None" = None, **context):
        super().__init__(message)
        self.graph = graph
        self.context = context


@dataclass(frozen=True)
class ClassShape:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) < 1:
            raise ValueError("a shape needs at least one class")
        if any(s < 1 for s in sizes):
            raise ValueError(f"class sizes must be positive, got {sizes}")
        object.__setattr__(self, "sizes", tuple(sorted(sizes, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "ClassShape":
        return cls(tuple(int(p) for p in text.replace(" ", "").split(",") if p))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def is_fair(self) -> bool:
        return 2 * self.sizes[0] <= self.n

    @property
    def edge_count(self) -> int:
        n = self.n
        return (n * n - sum(s * s for s in self.sizes)) // 2

    def __str__(self) -> str:
        return ",".join(map(str, self.sizes))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ColouredGraph:
    """A complete multipartite graph with a red/blue colouring of its cross pairs.

    Instances are immutable.  ``classes`` is ordered by non-increasing size;
    ties keep input order.  Vertex ids are ``0..n-1``.
    """

    __slots__ = ("n", "classes", "class_of", "cross", "defined", "red", "_hash")

    def __init__(self, classes: Sequence[Sequence[int]], defined: Sequence[int], red: Sequence[int]):
        order = sorted(range(len(classes)), key=lambda i: (-len(classes[i]), i))
        self.classes: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(classes[i])) for i in order)
        self.n = sum(len(c) for c in self.classes)
        class_of = [-1] * self.n
        for idx, cls in enumerate(self.classes):
            for v in cls:
                if not 0 <= v < self.n or class_of[v] != -1:
                    raise ValueError(f"classes must partition 0..{self.n - 1}; bad vertex {v}")
                class_of[v] = idx
        self.class_of: tuple[int, ...] = tuple(class_of)
        full = (1 << self.n) - 1
        class_masks = [sum(1 << v for v in cls) for cls in self.classes]
        self.cross: tuple[int, ...] = tuple(full & ~class_masks[class_of[v]] for v in range(self.n))
        if len(defined) != self.n or len(red) != self.n:
            raise ValueError("colour rows must have one entry per vertex")
        self.defined: tuple[int, ...] = tuple(int(m) for m in defined)
        self.red: tuple[int, ...] = tuple(int(r) & int(d) for r, d in zip(red, defined))
        self._hash = None

    # construction ------------------------------------------------------

    @classmethod
    def from_function(cls, classes: Sequence[Sequence[int]], colour: Callable[[int, int], Colour]) -> "ColouredGraph":
        n = sum(len(c) for c in classes)
        class_of = {}
        for i, c in enumerate(classes):
            for v in c:
                class_of[v] = i
        defined = [0] * n
        red = [0] * n
        for u in range(n):
            for v in range(u + 1, n):
                if class_of[u] != class_of[v]:
                    defined[u] |= 1 << v
                    defined[v] |= 1 << u
                    if colour(u, v) == RED:
                        red[u] |= 1 << v
                        red[v] |= 1 << u
        return cls(classes, defined, red)

    @classmethod
    def from_shape(cls, shape: Union[ClassShape, Sequence[int]], colour: Callable[[int, int], Colour] = lambda u, v: RED) -> "ColouredGraph":
        return cls.from_function(classes_for_shape(shape), colour)

    @classmethod
    def from_edges(cls, classes: Sequence[Sequence[int]], edges: Iterable[tuple[int, int, Colour]]) -> "ColouredGraph":
        n = sum(len(c) for c in classes)
        defined = [0] * n
        red = [0] * n
        for u, v, c in edges:
            defined[u] |= 1 << v
            defined[v] |= 1 << u
            if c == RED:
                red[u] |= 1 << v
                red[v] |= 1 << u
        return cls(classes, defined, red)

    @classmethod
    def from_code(cls, classes: Sequence[Sequence[int]], code: int, edge_order: Sequence[tuple[int, int]] | None = None) -> "ColouredGraph":
        """Build from a colour bitstring; bit ``i`` set means edge ``i`` is blue."""
        if edge_order is None:
            edge_order = cross_pairs(classes)
        n = sum(len(c) for c in classes)
        defined = [0] * n
        red = [0] * n
        for i, (u, v) in enumerate(edge_order):
            defined[u] |= 1 << v
            defined[v] |= 1 << u
            if not (code >> i) & 1:
                red[u] |= 1 << v
                red[v] |= 1 << u
        return cls(classes, defined, red)

    # queries -------------------------------------------------------------

    @property
    def shape(self) -> ClassShape:
        return ClassShape(tuple(len(c) for c in self.classes))

    @property
    def k(self) -> int:
        return len(self.classes)

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.cross[u] >> v) & 1)

    def colour(self, u: int, v: int) -> Optional[Colour]:
        if not (self.defined[u] >> v) & 1:
            return None
        return RED if (self.red[u] >> v) & 1 else BLUE

    def has_edge(self, u: int, v: int, c: Colour) -> bool:
        if not (self.defined[u] >> v) & 1:
            return False
        return bool((self.red[u] >> v) & 1) == (c == RED)

    def neighbours(self, v: int, c: Colour) -> int:
        """Bitmask of ``c``-coloured neighbours of ``v``."""
        if c == RED:
            return self.red[v]
        return self.defined[v] & ~self.red[v]

    def colour_rows(self, c: Colour) -> list[int]:
        return [self.neighbours(v, c) for v in range(self.n)]

    def edges(self) -> Iterator[tuple[int, int, Colour]]:
        for u in range(self.n):
            m = self.defined[u] & ~((1 << (u + 1)) - 1)
            for v in iter_bits(m):
                yield u, v, (RED if (self.red[u] >> v) & 1 else BLUE)

    def code(self, edge_order: Sequence[tuple[int, int]] | None = None) -> int:
        if edge_order is None:
            edge_order = cross_pairs(self.classes)
        out = 0
        for i, (u, v) in enumerate(edge_order):
            if not (self.red[u] >> v) & 1:
                out |= 1 << i
        return out

    # derived graphs ------------------------------------------------------

    def swap_colours(self) -> "ColouredGraph":
        return ColouredGraph(self.classes, self.defined, [d & ~r for d, r in zip(self.defined, self.red)])

    def with_classes(self, classes: Sequence[Sequence[int]]) -> "ColouredGraph":
        """Same vertex set with a coarser class partition; pairs now inside a class lose their colour."""
        n = self.n
        class_of = [0] * n
        for i, c in enumerate(classes):
            for v in c:
                class_of[v] = i
        masks = [0] * len(classes)
        for v in range(n):
            masks[class_of[v]] |= 1 << v
        full = (1 << n) - 1
        defined = [self.defined[v] & full & ~masks[class_of[v]] for v in range(n)]
        return ColouredGraph(classes, defined, [r & d for r, d in zip(self.red, defined)])

    def induced(self, keep: Iterable[int], classes: Sequence[Sequence[int]] | None = None) -> tuple["ColouredGraph", list[int]]:
        """Subgraph on ``keep`` relabelled to ``0..m-1``; also returns new-to-old ids.

        ``classes`` (old ids) optionally coarsens the partition as in ``with_classes``.
        """
        old = sorted(set(keep))
        new_of = {v: i for i, v in enumerate(old)}
        src = self.classes if classes is None else classes
        sub_classes = [[new_of[v] for v in c if v in new_of] for c in src]
        sub_classes = [c for c in sub_classes if c]
        class_of = {}
        for i, c in enumerate(sub_classes):
            for v in c:
                class_of[v] = i
        m = len(old)
        defined = [0] * m
        red = [0] * m
        for i, u in enumerate(old):
            for j in range(i + 1, m):
                if class_of[i] == class_of[j]:
                    continue
                c = self.colour(u, old[j])
                if c is None:
                    continue
                defined[i] |= 1 << j
                defined[j] |= 1 << i
                if c == RED:
                    red[i] |= 1 << j
                    red[j] |= 1 << i
        return ColouredGraph(sub_classes, defined, red), old

    def relabel(self, perm: Sequence[int]) -> "ColouredGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        n = self.n

        def move(mask: int) -> int:
            out = 0
            for u in iter_bits(mask):
                out |= 1 << perm[u]
            return out

        defined = [0] * n
        red = [0] * n
        for v in range(n):
            defined[perm[v]] = move(self.defined[v])
            red[perm[v]] = move(self.red[v])
        return ColouredGraph([[perm[v] for v in c] for c in self.classes], defined, red)

    def __eq__(self, other):
        if not isinstance(other, ColouredGraph):
            return NotImplemented
        return self.classes == other.classes and self.defined == other.defined and self.red == other.red

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.classes, self.defined, self.red))
        return self._hash

    def __repr__(self):
        return f"ColouredGraph(shape={self.shape}, n={self.n})"


def classes_for_shape(shape: Union[ClassShape, Sequence[int]]) -> list[list[int]]:
    sizes = shape.sizes if isinstance(shape, ClassShape) else ClassShape(tuple(shape)).sizes
    out, start = [], 0
    for s in sizes:
        out.append(list(range(start, start + s)))
        start += s
    return out


def cross_pairs(classes: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Cross-class pairs ``(u, v)`` with ``u < v`` in lexicographic order."""
    class_of = {}
    for i, c in enumerate(classes):
        for v in c:
            class_of[v] = i
    n = len(class_of)
    return [(u, v) for u in range(n) for v in range(u + 1, n) if class_of[u] != class_of[v]]


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True)
class MonoPath:
    colour: Colour
    vertices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self):
        return len(self.vertices)

    @property
    def ends(self) -> tuple[int, ...]:
        if not self.vertices:
            return ()
        return (self.vertices[0], self.vertices[-1])

    def reversed(self) -> "MonoPath":
        return MonoPath(self.colour, self.vertices[::-1])


@dataclass(frozen=True)
class MonoCycle:
    colour: Colour
    vertices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class PathPair:
    """A red and a blue path; ``shared`` is their common last vertex, if any."""

    red: MonoPath
    blue: MonoPath
    shared: Optional[int] = None

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(self.red.vertices) | frozenset(self.blue.vertices)


Structure = Union[MonoPath, MonoCycle, PathPair]


@dataclass
class Report:
    ok: bool
    violation: str = ""
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


OK = Report(True)


# ---------------------------------------------------------------------------
# validation


def validate(g: ColouredGraph) -> Report:
    n = g.n
    for v in range(n):
        extra = g.defined[v] & ~g.cross[v]
        if extra:
            u = next(iter_bits(extra))
            return Report(False, "intra-class edge", {"pair": sorted((u, v))})
        if g.defined[v] >> n:
            return Report(False, "vertex out of range", {"vertex": v})
    for v in range(n):
        missing = g.cross[v] & ~g.defined[v]
        if missing:
            u = next(iter_bits(missing))
            return Report(False, "missing colour", {"pair": sorted((u, v))})
    for v in range(n):
        for u in iter_bits(g.defined[v]):
            if ((g.defined[u] >> v) & 1) == 0 or ((g.red[u] >> v) & 1) != ((g.red[v] >> u) & 1):
                return Report(False, "asymmetric colour", {"pair": sorted((u, v))})
    return OK


def require_valid(g: ColouredGraph) -> None:
    rep = validate(g)
    if not rep:
        raise HypothesisError(f"invalid graph: {rep.violation} {rep.detail}")


def is_fair(g: ColouredGraph) -> bool:
    return 2 * len(g.classes[0]) <= g.n


def reduce_to_tripartite(g: ColouredGraph) -> ColouredGraph:
    """Merge the two smallest classes until three remain (fairness is preserved)."""
    if g.k < 3:
        raise HypothesisError("reduction needs at least three classes")
    if not is_fair(g):
        raise HypothesisError("unfair")
    classes = [list(c) for c in g.classes]
    while len(classes) > 3:
        a = classes.pop()
        b = classes.pop()
        classes.append(sorted(a + b))
        # stable re-sort, merged class goes after equal-sized older ones
        classes.sort(key=len, reverse=True)
    if len(classes) == g.k:
        return g
    out = g.with_classes(classes)
    assert is_fair(out)
    return out


def _check_path(g: ColouredGraph, colour: Colour, seq: Sequence[int], closed: bool) -> Optional[str]:
    if len(set(seq)) != len(seq):
        return "repeated vertex"
    for v in seq:
        if not 0 <= v < g.n:
            return f"vertex {v} out of range"
    pairs = list(zip(seq, seq[1:]))
    if closed and len(seq) >= 3:
        pairs.append((seq[-1], seq[0]))
    for u, v in pairs:
        if not g.adjacent(u, v):
            return f"non-adjacent consecutive pair {u},{v}"
        if not g.has_edge(u, v, colour):
            return f"edge {u},{v} is not {colour.name.lower()}"
    return None


def structure_vertex_sets(structures: Iterable[Structure]) -> list[tuple[int, ...]]:
    out = []
    for s in structures:
        if isinstance(s, PathPair):
            red, blue = s.red.vertices, s.blue.vertices
            if s.shared is not None:
                out.append(red)
                out.append(tuple(v for v in blue if v != s.shared))
            else:
                out.extend([red, blue])
        else:
            out.append(s.vertices)
    return out


def validate_cover(g: ColouredGraph, structures: Sequence[Structure], mode: str = "partition", missing: int = 0) -> Report:
    """Certify that ``structures`` are disjoint monochromatic paths/cycles covering ``g``.

    ``mode`` is ``"partition"`` (every vertex exactly once) or ``"cover"``
    (at most ``missing`` vertices left out).
    """
    for s in structures:
        if isinstance(s, PathPair):
            for p in (s.red, s.blue):
                err = _check_path(g, p.colour, p.vertices, False)
                if err:
                    return Report(False, "bad path", {"colour": p.colour.symbol, "reason": err})
            if s.red.colour != RED or s.blue.colour != BLUE:
                return Report(False, "bad path", {"reason": "path pair colours must be red then blue"})
            common = set(s.red.vertices) & set(s.blue.vertices)
            if s.shared is None:
                if common:
                    return Report(False, "vertex reuse", {"vertices": sorted(common)})
            else:
                if common != {s.shared} or s.red.vertices[-1] != s.shared or s.blue.vertices[-1] != s.shared:
                    return Report(False, "bad shared endvertex", {"shared": s.shared, "common": sorted(common)})
        else:
            err = _check_path(g, s.colour, s.vertices, isinstance(s, MonoCycle))
            if err:
                kind = "cycle" if isinstance(s, MonoCycle) else "path"
                return Report(False, f"bad {kind}", {"colour": s.colour.symbol, "reason": err})
    seen: dict[int, int] = {}
    for idx, vs in enumerate(structure_vertex_sets(structures)):
        for v in vs:
            if v in seen:
                return Report(False, "vertex reuse", {"vertex": v})
            seen[v] = idx
    uncovered = g.n - len(seen)
    allowed = 0 if mode == "partition" else missing
    if uncovered > allowed:
        return Report(False, "coverage deficit", {"uncovered": uncovered, "allowed": allowed})
    return OK


def uncovered_vertices(g: ColouredGraph, structures: Sequence[Structure]) -> list[int]:
    seen = set()
    for vs in structure_vertex_sets(structures):
        seen.update(vs)
    return [v for v in range(g.n) if v not in seen]
