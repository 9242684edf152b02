"""Exhaustive sweeps over all 2-colourings of a fixed shape, modulo symmetry.

A colouring is the integer code whose bit ``i`` says that the ``i``-th cross
pair (lexicographic order) is blue.  The symmetry group consists of
permutations inside classes together with permutations of equal-sized
classes; a code is canonical when no group image (optionally composed with
the colour swap) is smaller.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernels
from .bipartite import SplitWitness, detect_split, is_proper_split, partition_bipartite_paths, partition_two_monochromatic_paths
from .graph import (
    ClassShape,
    ColouredGraph,
    DefectError,
    HypothesisError,
    MonoCycle,
    PathPair,
    classes_for_shape,
    cross_pairs,
    is_fair,
    validate_cover,
)

EDGE_GUARD = 36
MAX_DUMPS = 20


def automorphisms(shape: ClassShape) -> list[tuple[int, ...]]:
    """Class-preserving vertex permutations, ordered by how many vertices they move."""
    classes = classes_for_shape(shape)
    by_size: dict[int, list[int]] = {}
    for i, c in enumerate(classes):
        by_size.setdefault(len(c), []).append(i)
    class_perms = []
    for idxs in by_size.values():
        class_perms.append([(idxs, p) for p in itertools.permutations(idxs)])
    inner = [list(itertools.permutations(c)) for c in classes]
    out = []
    for arrangement in itertools.product(*class_perms):
        target = list(range(len(classes)))
        for idxs, p in arrangement:
            for src, dst in zip(idxs, p):
                target[src] = dst
        for choice in itertools.product(*inner):
            perm = [0] * shape.n
            for i, c in enumerate(classes):
                dst = classes[target[i]]
                for v, img in zip(c, choice[i]):
                    perm[v] = dst[classes[i].index(img)]
            out.append(tuple(perm))
    ident = tuple(range(shape.n))
    out = [p for p in out if p != ident]
    out.sort(key=lambda p: (sum(1 for i, x in enumerate(p) if i != x), p))
    return out


_TABLES: dict = {}


def orbit_tables(shape: ClassShape, perms: Optional[list] = None) -> tuple[np.ndarray, int]:
    """Flat ``uint64`` byte-image tables for ``canonical_codes`` and the number of permutations."""
    if perms is None:
        if shape.sizes not in _TABLES:
            _TABLES[shape.sizes] = _orbit_tables(shape, automorphisms(shape))
        return _TABLES[shape.sizes]
    return _orbit_tables(shape, perms)


def _orbit_tables(shape: ClassShape, perms: list) -> tuple[np.ndarray, int]:
    classes = classes_for_shape(shape)
    pairs = cross_pairs(classes)
    m = len(pairs)
    if m > 64:
        raise HypothesisError("codes limited to 64 edges")
    index = {p: i for i, p in enumerate(pairs)}
    P = len(perms)
    nbytes = (m + 7) // 8
    if P == 0:
        return np.zeros(0, dtype=np.uint64), 0
    img = np.zeros((P, nbytes * 8), dtype=np.int64)
    valid = np.zeros(nbytes * 8, dtype=bool)
    valid[:m] = True
    for p, perm in enumerate(perms):
        for e, (u, v) in enumerate(pairs):
            a, b = perm[u], perm[v]
            img[p, e] = index[(a, b) if a < b else (b, a)]
    bitvals = np.where(valid[None, :], np.left_shift(np.uint64(1), img.astype(np.uint64)), np.uint64(0)).astype(np.uint64)
    bits = ((np.arange(256)[:, None] >> np.arange(8)[None, :]) & 1).astype(np.uint64)  # 256 x 8
    tab = np.zeros((P, nbytes, 256), dtype=np.uint64)
    for j in range(nbytes):
        block = bitvals[:, 8 * j:8 * j + 8]  # P x 8
        tab[:, j, :] = block @ bits.T
    return np.ascontiguousarray(tab.reshape(-1)), P


def canonical_colourings(shape: ClassShape, swap: bool = True, symmetry: bool = True, lo: int = 0, hi: Optional[int] = None, tables=None) -> list[int]:
    m = shape.edge_count
    hi = (1 << m) if hi is None else hi
    if not symmetry:
        return list(range(lo, hi))
    tab, P = tables if tables is not None else orbit_tables(shape)
    return kernels.canonical_codes(m, tab, P, lo, hi, swap)


# ---------------------------------------------------------------------------
# theorem checkers: each returns (constructive_ok, oracle_ok, detail)


def _check_t14(g: ColouredGraph):
    from .oracle import brute_force_path_partition
    from .paths import partition_paths

    try:
        pair = partition_paths(g)
        built = bool(validate_cover(g, [pair]))
    except DefectError as exc:
        built, pair = False, str(exc)
    exists = brute_force_path_partition(g) is not None
    return built, exists, None


def _check_t13_iff(g: ColouredGraph):
    from .oracle import brute_force_path_partition

    w = detect_split(g)
    proper = is_proper_split(w)
    non_degenerate = w is not None and all((w.A, w.B, w.C, w.D))
    any_colour = brute_force_path_partition(g, distinct=False, parts=2) is not None
    red_blue = brute_force_path_partition(g) is not None
    try:
        got = partition_bipartite_paths(g)
        engine = isinstance(got, PathPair) and bool(validate_cover(g, [got]))
        engine_witness = isinstance(got, SplitWitness) and got.holds_on(g)
        two = partition_two_monochromatic_paths(g)
        two_ok = isinstance(two, list) and bool(validate_cover(g, two))
    except DefectError:
        engine, engine_witness, two_ok = False, False, False
    ok_oracle = any_colour == (not proper) and red_blue == (not non_degenerate)
    ok_engine = engine == red_blue and (engine or engine_witness) and two_ok == any_colour
    return ok_engine, ok_oracle, {"proper": proper, "any_colour": any_colour, "red_blue": red_blue}


def _check_c15(g: ColouredGraph):
    from .oracle import brute_force_path_cycle
    from .paths import partition_path_cycle

    try:
        path, cycle, uncovered = partition_path_cycle(g)
        built = path.colour != cycle.colour and len(uncovered) <= 1 and bool(validate_cover(g, [path, cycle], mode="cover", missing=1))
    except DefectError:
        built = False
    exists = brute_force_path_cycle(g) is not None
    return built, exists, None


def _check_l41(g: ColouredGraph):
    from .matchings import cover_matchings_exact, validate_matching_cover
    from .oracle import brute_force_connected_matchings

    try:
        red, blue = cover_matchings_exact(g)
        built = bool(validate_matching_cover(g, red, blue))
    except DefectError:
        built = False
    exists = brute_force_connected_matchings(g) is not None
    return built, exists, None


def _check_gg(g: ColouredGraph):
    from .oracle import brute_force_path_partition
    from .paths import complete_graph_partition, to_path_pair

    try:
        state = complete_graph_partition(g)
        built = bool(validate_cover(g, [to_path_pair(state)]))
    except DefectError:
        built = False
    exists = brute_force_path_partition(g, shared=True) is not None
    return built, exists, None


def _check_t12(g: ColouredGraph):
    from .oracle import brute_force_cycle_partition

    exists = brute_force_cycle_partition(g) is not None
    return True, exists, None


def _check_p71(g: ColouredGraph):
    from .cycles import two_cycle_partition_search
    from .oracle import brute_force_cycle_partition

    res = two_cycle_partition_search(g)
    exists = brute_force_cycle_partition(g) is not None
    agree = (res.status == "found") == exists and res.status != "budget"
    # nothing is asserted about existence: the oracle side always "holds"
    return agree, True, {"status": res.status}


@dataclass(frozen=True)
class Theorem:
    id: str
    check: Callable
    precondition: Callable[[ClassShape], Optional[str]]
    colour_symmetric: bool = True


def _pre_multipartite(shape: ClassShape) -> Optional[str]:
    if shape.k < 3:
        return "needs k >= 3"
    if not shape.is_fair:
        return "unfair"
    return None


def _pre_balanced_bipartite(shape: ClassShape) -> Optional[str]:
    if shape.k != 2 or shape.sizes[0] != shape.sizes[1]:
        return "needs a balanced bipartite shape"
    return None


def _pre_l41(shape: ClassShape) -> Optional[str]:
    if shape.k != 3 or not shape.is_fair or shape.n % 2:
        return "needs a fair tripartite shape with n even"
    return None


def _pre_complete(shape: ClassShape) -> Optional[str]:
    return None if all(s == 1 for s in shape.sizes) else "needs a complete graph (all classes singletons)"


def _pre_fair(shape: ClassShape) -> Optional[str]:
    if not shape.is_fair:
        return "unfair"
    if shape.n > 9:
        return "limited to 9 vertices"
    return None


THEOREMS = {
    "t14": Theorem("t14", _check_t14, _pre_multipartite),
    "t13-iff": Theorem("t13-iff", _check_t13_iff, _pre_balanced_bipartite),
    "c15": Theorem("c15", _check_c15, _pre_multipartite),
    "l41": Theorem("l41", _check_l41, _pre_l41),
    "gg": Theorem("gg", _check_gg, _pre_complete),
    "t12": Theorem("t12", _check_t12, _pre_complete),
    "p71": Theorem("p71", _check_p71, _pre_fair),
}


@dataclass
class SweepReport:
    shape: str
    theorem: str
    raw_total: int
    total: int = 0
    agreements: int = 0
    constructive_failures: int = 0
    oracle_counterexamples: int = 0
    failures: list = field(default_factory=list)
    symmetry: bool = True
    workers: int = 1
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.constructive_failures == 0 and self.oracle_counterexamples == 0

    def report_hash(self) -> str:
        core = {
            "shape": self.shape,
            "theorem": self.theorem,
            "raw_total": self.raw_total,
            "total": self.total,
            "agreements": self.agreements,
            "constructive_failures": self.constructive_failures,
            "oracle_counterexamples": self.oracle_counterexamples,
            "symmetry": self.symmetry,
        }
        return hashlib.sha256(json.dumps(core, sort_keys=True).encode()).hexdigest()

    def to_json(self) -> dict:
        return {
            "v": 1,
            "shape": self.shape,
            "theorem": self.theorem,
            "raw_total": self.raw_total,
            "total": self.total,
            "agreements": self.agreements,
            "constructive_failures": self.constructive_failures,
            "oracle_counterexamples": self.oracle_counterexamples,
            "failures": self.failures,
            "symmetry": self.symmetry,
            "workers": self.workers,
            "wall_time": round(self.wall_time, 3),
            "report_hash": self.report_hash(),
        }


def _run_chunk(args):
    sizes, theorem_id, lo, hi, symmetry, swap = args
    shape = ClassShape(tuple(sizes))
    thm = THEOREMS[theorem_id]
    classes = classes_for_shape(shape)
    tables = orbit_tables(shape) if symmetry else None
    codes = canonical_colourings(shape, swap, symmetry, lo, hi, tables)
    out = {"total": 0, "agreements": 0, "constructive_failures": 0, "oracle_counterexamples": 0, "failures": []}
    for code in codes:
        g = ColouredGraph.from_code(classes, code)
        built, holds, detail = thm.check(g)
        out["total"] += 1
        if built and holds:
            out["agreements"] += 1
        if not built:
            out["constructive_failures"] += 1
        if not holds:
            out["oracle_counterexamples"] += 1
        if (not built or not holds) and len(out["failures"]) < MAX_DUMPS:
            out["failures"].append({"code": code, "classes": classes, "built": built, "oracle": holds, "detail": detail})
    return out


def sweep(shape: ClassShape, theorem: str, jobs: int = 1, symmetry: bool = True, chunks: Optional[int] = None) -> SweepReport:
    if theorem not in THEOREMS:
        raise HypothesisError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    thm = THEOREMS[theorem]
    why = thm.precondition(shape)
    if why:
        raise HypothesisError(f"{theorem}: {why}")
    m = shape.edge_count
    if m > EDGE_GUARD or (not symmetry and m > 28):
        raise ValueError(f"shape has {m} edges, above the sweep guard")
    start = time.monotonic()
    raw = 1 << m
    chunks = chunks or max(1, min(64, raw // 4096), jobs * 4)
    step = -(-raw // chunks)
    swap = symmetry and thm.colour_symmetric
    tasks = [(shape.sizes, theorem, lo, min(raw, lo + step), symmetry, swap) for lo in range(0, raw, step)]
    rep = SweepReport(str(shape), theorem, raw, symmetry=symmetry, workers=jobs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, tasks))
    else:
        parts = [_run_chunk(t) for t in tasks]
    for part in parts:
        rep.total += part["total"]
        rep.agreements += part["agreements"]
        rep.constructive_failures += part["constructive_failures"]
        rep.oracle_counterexamples += part["oracle_counterexamples"]
        rep.failures.extend(part["failures"])
    rep.failures = rep.failures[:MAX_DUMPS]
    rep.wall_time = time.monotonic() - start
    return rep


def fair_shapes(max_n: int, min_k: int = 3, max_k: Optional[int] = None) -> list[ClassShape]:
    """Every fair shape (non-increasing class sizes) with ``n <= max_n`` and ``k >= min_k``."""
    out = []

    def rec(prefix, remaining, cap):
        if len(prefix) >= min_k and (max_k is None or len(prefix) <= max_k):
            n = sum(prefix)
            if 2 * prefix[0] <= n:
                out.append(ClassShape(tuple(prefix)))
        if max_k is not None and len(prefix) >= max_k:
            return
        for s in range(min(cap, remaining), 0, -1):
            rec(prefix + [s], remaining - s, s)

    rec([], max_n, max_n)
    return sorted(out, key=lambda s: (s.n, s.sizes))


def orbit_size_estimate(shape: ClassShape) -> float:
    group = 1
    counts: dict[int, int] = {}
    for s in shape.sizes:
        group *= math.factorial(s)
        counts[s] = counts.get(s, 0) + 1
    for c in counts.values():
        group *= math.factorial(c)
    return (1 << shape.edge_count) / group
