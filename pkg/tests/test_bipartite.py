import random

import pytest
from hypothesis import given, settings, strategies as st

from monopaths.bipartite import (
    SplitWitness,
    detect_split,
    is_proper_split,
    partition_bipartite_paths,
    partition_two_monochromatic_paths,
    split_distance,
    split_three_paths,
)
from monopaths.graph import BLUE, RED, ColouredGraph, HypothesisError, MonoPath, PathPair, classes_for_shape, cross_pairs, validate_cover
from monopaths.oracle import brute_force_path_partition

from conftest import split_graph


def _quadruple_split(g):
    """Any (A, B, C, D) realising a split colouring, by enumeration."""
    U, V = g.classes
    for bits_u in range(1 << len(U)):
        A = [u for i, u in enumerate(U) if bits_u >> i & 1]
        for bits_v in range(1 << len(V)):
            C = [v for i, v in enumerate(V) if bits_v >> i & 1]
            w = SplitWitness(A, [u for u in U if u not in A], C, [v for v in V if v not in C])
            if w.holds_on(g):
                return w
    return None


def test_detect_split_monochromatic():
    w = detect_split(ColouredGraph.from_shape((2, 2)))
    assert w is not None and w.holds_on(ColouredGraph.from_shape((2, 2)))
    assert (not w.B and not w.C) or (not w.A and not w.D)


def test_detect_split_recovers_definition_instance():
    g = split_graph((2, 2), A=[0], C=[2])
    w = detect_split(g)
    assert {frozenset(w.A), frozenset(w.B)} == {frozenset([0]), frozenset([1])}
    assert w.holds_on(g)


def test_detect_split_single_flip_none():
    g = split_graph((3, 3), A=[0, 1], C=[3], flips=[(0, 3)])
    assert detect_split(g) is None
    assert _quadruple_split(g) is None


@pytest.mark.parametrize("m", [1, 2, 3])
def test_detect_split_sound_and_complete(m):
    classes = classes_for_shape((m, m))
    for code in range(1 << (m * m)):
        g = ColouredGraph.from_code(classes, code)
        w = detect_split(g)
        assert (w is not None) == (_quadruple_split(g) is not None)
        if w is not None:
            assert w.holds_on(g)
            assert len(w.A) - len(w.C) == -(len(w.B) - len(w.D))


def test_detect_split_rejects_tripartite():
    with pytest.raises(HypothesisError):
        detect_split(ColouredGraph.from_shape((1, 1, 1)))


@pytest.mark.parametrize(
    "a,b,c,d,proper",
    [
        (1, 5, 3, 3, True),
        (5, 1, 3, 3, True),
        (3, 1, 1, 3, False),
        (2, 2, 2, 2, False),
        (2, 1, 1, 2, False),
        (4, 0, 0, 4, False),
    ],
)
def test_is_proper_split(a, b, c, d, proper):
    w = SplitWitness(list(range(a)), list(range(a, a + b)), list(range(10, 10 + c)), list(range(20, 20 + d)))
    assert is_proper_split(w) is proper


def test_non_proper_split_k33_has_two_paths():
    g = split_graph((3, 3), A=[0, 1], C=[3])
    assert not is_proper_split(detect_split(g))
    assert brute_force_path_partition(g, distinct=False, parts=2) is not None
    paths = partition_two_monochromatic_paths(g)
    assert validate_cover(g, paths)


def test_monochromatic_engine():
    g = ColouredGraph.from_shape((4, 4))
    pair = partition_bipartite_paths(g)
    assert isinstance(pair, PathPair) and len(pair.red.vertices) == 8 and not pair.blue.vertices


def test_one_sided_imbalance_is_not_an_obstruction():
    # blue blocks are off by 2 but the red blocks A+D and B+C are balanced
    g = split_graph((4, 4), A=[0, 1, 2], C=[4])
    w = detect_split(g)
    assert w.imbalance == 2 and not is_proper_split(w)
    assert brute_force_path_partition(g, distinct=False, parts=2) is not None
    paths = partition_two_monochromatic_paths(g)
    assert validate_cover(g, paths) and {p.colour for p in paths} == {RED}


def test_proper_split_obstruction_k66():
    g = split_graph((6, 6), A=[0], C=[6, 7, 8])
    got = partition_bipartite_paths(g)
    assert isinstance(got, SplitWitness) and is_proper_split(got) and got.holds_on(g)
    assert isinstance(partition_two_monochromatic_paths(g), SplitWitness)
    assert brute_force_path_partition(g, distinct=False, parts=2) is None


def test_nondegenerate_split_blocks_red_blue_pair():
    # non-proper but all four parts present: two blue paths exist, no red+blue pair
    g = split_graph((3, 3), A=[0, 1], C=[3])
    assert brute_force_path_partition(g) is None
    assert isinstance(partition_bipartite_paths(g), SplitWitness)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_engine_exhaustive(m):
    classes = classes_for_shape((m, m))
    for code in range(1 << (m * m)):
        g = ColouredGraph.from_code(classes, code)
        got = partition_bipartite_paths(g)
        w = detect_split(g)
        if isinstance(got, PathPair):
            assert validate_cover(g, [got])
        else:
            assert got.holds_on(g) and all((got.A, got.B, got.C, got.D))
        two = partition_two_monochromatic_paths(g)
        if is_proper_split(w):
            assert isinstance(two, SplitWitness)
        else:
            assert validate_cover(g, two)


@settings(max_examples=30)
@given(st.integers(5, 30), st.integers(0, 2 ** 32 - 1), st.floats(0.05, 0.95))
def test_engine_random_large(m, seed, p):
    rng = random.Random(seed)
    classes = classes_for_shape((m, m))
    g = ColouredGraph.from_function(classes, lambda u, v: RED if rng.random() < p else BLUE)
    got = partition_bipartite_paths(g, seed=seed)
    if isinstance(got, PathPair):
        assert validate_cover(g, [got])
    else:
        assert got.holds_on(g)


@settings(max_examples=40)
@given(st.integers(6, 22), st.data())
def test_engine_near_split(m, data):
    a = data.draw(st.integers(0, m))
    c = data.draw(st.integers(0, m))
    pairs = cross_pairs(classes_for_shape((m, m)))
    flips = data.draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=3, unique=True))
    g = split_graph((m, m), A=range(a), C=range(m, m + c), flips=flips)
    got = partition_bipartite_paths(g)
    if isinstance(got, PathPair):
        assert validate_cover(g, [got])
    else:
        assert got.holds_on(g)


def test_engine_rejects():
    with pytest.raises(HypothesisError):
        partition_bipartite_paths(ColouredGraph.from_shape((3, 2)))
    with pytest.raises(HypothesisError):
        partition_bipartite_paths(ColouredGraph.from_shape((1, 1, 1)))


def test_split_three_paths_proper():
    g = split_graph((6, 6), A=[0], C=[6, 7, 8])
    paths = split_three_paths(g, detect_split(g))
    assert len(paths) == 3 and validate_cover(g, paths)


def test_split_three_paths_non_proper_and_mono():
    g = split_graph((3, 3), A=[0, 1], C=[3])
    paths = split_three_paths(g, detect_split(g))
    assert len(paths) == 3 and validate_cover(g, paths)
    mono = ColouredGraph.from_shape((3, 3))
    paths = split_three_paths(mono, detect_split(mono))
    assert validate_cover(mono, paths)
    assert sum(1 for p in paths if p.vertices) == 1


def test_split_three_paths_rejects_bad_witness():
    g = split_graph((4, 4), A=[0, 1, 2], C=[4])
    with pytest.raises(HypothesisError):
        split_three_paths(g, SplitWitness([0], [1, 2, 3], [4], [5, 6, 7]))


@pytest.mark.parametrize("m", [6, 7, 8, 9])
def test_split_three_paths_every_split(m):
    seen_proper = 0
    for a in range(1, m):
        for c in range(1, m):
            g = split_graph((m, m), A=range(a), C=range(m, m + c))
            w = detect_split(g)
            seen_proper += is_proper_split(w)
            paths = split_three_paths(g, w)
            assert len(paths) == 3 and validate_cover(g, paths)
    assert seen_proper


def test_split_distance_examples():
    g = split_graph((4, 4), A=[0, 1, 2], C=[4])
    assert split_distance(g).count == 0
    assert split_distance(ColouredGraph.from_shape((1, 1, 1))).count >= 1


def test_split_distance_three_flips_frozen():
    # value confirmed by enumerating all 4^8 labellings
    g = split_graph((4, 4), A=[0, 1, 2], C=[4], flips=[(0, 4), (1, 5), (3, 7)])
    exact = split_distance(g)
    assert exact.count == 3 and exact.exact
    assert exact.is_valid_for(g)
    heur = split_distance(g, "heuristic")
    assert heur.count >= exact.count and not heur.exact
    assert heur.to_json()["exactness"] == "heuristic-upper-bound"


@settings(max_examples=25)
@given(st.integers(0, 2 ** 20))
def test_split_distance_exact_le_heuristic(code):
    classes = classes_for_shape((2, 2, 1, 1))
    g = ColouredGraph.from_code(classes, code % (1 << len(cross_pairs(classes))))
    exact = split_distance(g)
    assert exact.is_valid_for(g)
    assert exact.count <= split_distance(g, "heuristic", restarts=5).count


def test_split_distance_guard():
    with pytest.raises(HypothesisError):
        split_distance(ColouredGraph.from_shape((11, 11)))


def test_split_distance_json():
    rep = split_distance(split_graph((2, 2), A=[0], C=[2]))
    js = rep.to_json()
    assert js["v"] == 1 and js["deleted_count"] == 0 and js["exactness"] == "exact"


# twin-class search


def test_twin_search_agrees_with_vertex_search_k44():
    from monopaths.bipartite import _exact_pair, _exact_pair_twins

    classes = classes_for_shape((4, 4))
    for code in range(0, 1 << 16, 3):
        g = ColouredGraph.from_code(classes, code)
        got = _exact_pair_twins(g)
        assert (got is None) == (_exact_pair(g) is None), code
        if got is not None:
            assert validate_cover(g, [PathPair(MonoPath(RED, tuple(got[0])), MonoPath(BLUE, tuple(got[1])))])


@pytest.mark.parametrize(
    "m,a,c,flips",
    [(19, 4, 10, [(9, 37), (11, 31), (18, 32)]), (23, 19, 11, [(8, 33), (12, 25)]), (22, 11, 13, [(13, 25), (16, 22), (21, 27)])],
)
def test_near_split_solved_within_twin_budget(m, a, c, flips):
    # these used to stall the absorption search for tens of seconds
    from monopaths.bipartite import TWIN_BUDGET, _exact_pair_twins

    g = split_graph((m, m), A=range(a), C=range(m, m + c), flips=flips)
    got = _exact_pair_twins(g, budget=TWIN_BUDGET)
    assert got is not None
    assert validate_cover(g, [partition_bipartite_paths(g)])
