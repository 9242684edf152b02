"""Timing of the compiled kernels against the pure-Python fallback."""

from __future__ import annotations

import random
import time
from typing import Optional

from . import _pykernels
from .graph import BLUE, RED, ColouredGraph, ClassShape, classes_for_shape, cross_pairs


def _time(fn, repeat: int) -> float:
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best


def _cases(seed: int):
    from .sweep import orbit_tables

    rng = random.Random(seed)
    shape = ClassShape((4, 4, 3))
    classes = classes_for_shape(shape)
    g = ColouredGraph.from_code(classes, rng.getrandbits(shape.edge_count))
    rows = g.colour_rows(RED)
    h = _pykernels.rooted_path_table(g.n, rows)
    tab_shape = ClassShape((2, 2, 2, 1))
    tab, P = orbit_tables(tab_shape)
    m = tab_shape.edge_count
    bb_classes = classes_for_shape((7, 7))
    bb = ColouredGraph.from_function(bb_classes, lambda u, v: RED if rng.random() < 0.5 else BLUE)
    return {
        "path_end_table": lambda k: k.path_end_table(g.n, rows),
        "rooted_path_table": lambda k: k.rooted_path_table(g.n, rows),
        "cycle_flags": lambda k: k.cycle_flags(g.n, rows, h),
        "canonical_codes": lambda k: k.canonical_codes(m, tab, P, 0, 1 << 14, True),
        "split_bb": lambda k: k.split_bb(bb.n, list(bb.cross), list(bb.red), len(cross_pairs(bb_classes))),
    }


def run(repeat: int = 3, seed: int = 0, compiled=None) -> dict:
    """Best-of-``repeat`` seconds per kernel for both backends, with the speed-up."""
    if compiled is None:
        try:
            from . import _ckernels as compiled
        except ImportError:
            compiled = None
    out = {"v": 1, "repeat": repeat, "compiled_available": compiled is not None, "kernels": {}}
    for name, call in _cases(seed).items():
        row = {"python": _time(lambda: call(_pykernels), repeat)}
        if compiled is not None:
            same = call(compiled) == call(_pykernels)
            row["cython"] = _time(lambda: call(compiled), repeat)
            row["speedup"] = row["python"] / row["cython"] if row["cython"] > 0 else None
            row["agree"] = bool(same)
        out["kernels"][name] = row
    return out
