import random

import pytest
from hypothesis import given, settings, strategies as st

from monopaths.graph import BLUE, RED, ColouredGraph, classes_for_shape
from monopaths.splice import (
    TEMPLATES,
    SharedPathState,
    absorb_pair,
    instantiate,
    make_shared,
    parse_pattern,
    splice_candidates,
    template_candidates,
)


def test_state_requires_shared_end():
    with pytest.raises(ValueError):
        SharedPathState((0, 1), (2, 3))
    with pytest.raises(ValueError):
        SharedPathState((0, 1, 2), (1, 2))
    s = SharedPathState((0, 1, 2), (3, 2))
    assert s.x == 2 and s.vertices == {0, 1, 2, 3}
    assert s.swapped().red == (3, 2)


def test_rotate_through_x_pattern():
    pat = parse_pattern("v_2,v_1,r_i..r_s,x,r_1..r_{i-1}")
    named = {"x": 6, "v_1": 7, "v_2": 8}
    assert instantiate(pat, (0, 1, 2), (3, 4, 5), named, 2) == [8, 7, 1, 2, 6, 0]
    assert instantiate(pat, (0, 1, 2), (3, 4, 5), named, 1) == [8, 7, 0, 1, 2, 6]


def test_bad_atom_rejected():
    with pytest.raises(ValueError):
        parse_pattern("q_1")


def test_catalogue_distinct():
    keys = [(str(r), str(b)) for _, r, b, _ in TEMPLATES]
    assert len(keys) == len(set(keys))


def test_template_count_frozen():
    # frozen from a separate string-substitution expansion of the catalogue
    s = SharedPathState((0, 1, 2, 6), (3, 4, 5, 6))
    assert sum(1 for _ in template_candidates(s, 7, 8)) == 398


def test_candidates_are_permutations():
    s = SharedPathState((0, 1, 2, 6), (3, 4, 5, 6))
    for move in template_candidates(s, 7, 8):
        assert set(move.red) | set(move.blue) == set(range(9))


def test_candidates_deterministic():
    g = ColouredGraph.from_shape((1,) * 9)
    s = SharedPathState((0, 1, 2, 6), (3, 4, 5, 6))
    a = [m.template for m in splice_candidates(g, s, 7, 8)]
    b = [m.template for m in splice_candidates(g, s, 7, 8)]
    assert a == b and a


def test_trivial_state_absorbs():
    # single shared vertex, everything red
    g = ColouredGraph.from_shape((1, 1, 1))
    out, name = absorb_pair(g, SharedPathState((0,), (0,)), 1, 2)
    assert out.vertices == {0, 1, 2} and out.is_valid(g)


def test_make_shared_single_path_and_bad_colour():
    g = ColouredGraph.from_shape((1, 1, 1, 1))
    out = make_shared(g, [0, 1], [], frozenset({0, 1}))
    assert out is not None and out.red == (0, 1) and out.blue == (1,)
    assert make_shared(g, [0, 1], [1, 2]) is None  # blue edge missing


@settings(max_examples=60)
@given(st.integers(0, 2 ** 32 - 1), st.integers(3, 7))
def test_absorb_on_complete_graphs(seed, n):
    rng = random.Random(seed)
    g = ColouredGraph.from_function(classes_for_shape((1,) * (n + 2)), lambda u, v: RED if rng.random() < 0.5 else BLUE)
    # grow a shared state greedily from vertex 0 by absorbing pairs
    state = SharedPathState((0,), (0,))
    for v in range(1, n + 1, 2):
        if v + 1 > n + 1:
            break
        got = absorb_pair(g, state, v, v + 1)
        assert got is not None
        state, _ = got
        assert state.is_valid(g)
        assert state.vertices == frozenset(range(v + 2))


def test_absorb_records_trace():
    g = ColouredGraph.from_shape((1, 1, 1))
    trace = []
    absorb_pair(g, SharedPathState((0,), (0,)), 1, 2, trace=trace)
    assert trace and "template" in trace[0]
