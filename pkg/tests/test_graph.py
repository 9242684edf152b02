import itertools

import pytest
from hypothesis import given, strategies as st

from monopaths.graph import (
    BLUE,
    RED,
    ClassShape,
    ColouredGraph,
    Colour,
    HypothesisError,
    MonoCycle,
    MonoPath,
    PathPair,
    classes_for_shape,
    cross_pairs,
    is_fair,
    reduce_to_tripartite,
    validate,
    validate_cover,
)
from monopaths.graphio import InputError, graph_from_json, graph_to_json, parse_graph_text
from monopaths.oracle import has_hamilton_cycle
from monopaths.sweep import fair_shapes

from conftest import coloured_graphs


def test_colour_complement():
    assert RED.other == BLUE and BLUE.other == RED
    assert Colour.parse("R") == RED
    with pytest.raises(ValueError):
        Colour.parse("G")


def test_shape_sorted_and_positive():
    assert ClassShape((1, 3, 2)).sizes == (3, 2, 1)
    with pytest.raises(ValueError):
        ClassShape((2, 0))


def test_validate_all_red_triangle():
    assert validate(ColouredGraph.from_shape((1, 1, 1)))


def test_validate_missing_colour():
    g = ColouredGraph.from_shape((1, 1, 1))
    defined = list(g.defined)
    defined[0] &= ~(1 << 1)
    defined[1] &= ~(1 << 0)
    bad = ColouredGraph(g.classes, defined, g.red)
    rep = validate(bad)
    assert not rep and rep.violation == "missing colour"
    assert rep.detail["pair"] == [0, 1]


def test_validate_intra_class_edge():
    g = ColouredGraph.from_shape((2, 1))
    defined = list(g.defined)
    defined[0] |= 1 << 1
    defined[1] |= 1 << 0
    rep = validate(ColouredGraph(g.classes, defined, g.red))
    assert not rep and rep.violation == "intra-class edge"


@pytest.mark.parametrize("sizes,fair", [((2, 1, 1), True), ((3, 1, 1), False), ((2, 2), True), ((3, 2), False)])
def test_is_fair(sizes, fair):
    assert is_fair(ColouredGraph.from_shape(sizes)) is fair


def test_fair_iff_hamiltonian():
    # uncoloured Hamilton cycle exists exactly for fair shapes (n >= 3)
    for n in range(3, 10):
        for k in range(2, n + 1):
            for sizes in _partitions(n, k):
                g = ColouredGraph.from_shape(sizes)
                assert has_hamilton_cycle(g) == is_fair(g), sizes


def _partitions(n, k, cap=None):
    cap = n if cap is None else cap
    if k == 0:
        if n == 0:
            yield ()
        return
    for s in range(min(cap, n - k + 1), 0, -1):
        for rest in _partitions(n - s, k - 1, s):
            yield (s,) + rest


@pytest.mark.parametrize("sizes,expected", [((2, 2, 2, 2), (4, 2, 2)), ((3, 3, 2, 2), (4, 3, 3)), ((2, 2, 1), (2, 2, 1))])
def test_reduce_examples(sizes, expected):
    g = ColouredGraph.from_shape(sizes)
    h = reduce_to_tripartite(g)
    assert h.shape.sizes == expected
    assert is_fair(h)
    if len(sizes) == 3:
        assert h is g


def test_reduce_rejects():
    with pytest.raises(HypothesisError):
        reduce_to_tripartite(ColouredGraph.from_shape((2, 2)))
    with pytest.raises(HypothesisError):
        reduce_to_tripartite(ColouredGraph.from_shape((4, 1, 1)))


def test_reduce_keeps_colours_and_ids():
    g = ColouredGraph.from_code(classes_for_shape((2, 2, 1, 1)), 0b1011001110101)
    h = reduce_to_tripartite(g)
    assert h.n == g.n
    for u, v, c in h.edges():
        assert g.colour(u, v) == c


def test_reduce_fair_up_to_twenty():
    for shape in fair_shapes(20, min_k=3, max_k=6):
        sizes = list(shape.sizes)
        while len(sizes) > 3:
            a, b = sizes.pop(), sizes.pop()
            sizes.append(a + b)
            sizes.sort(reverse=True)
        assert 2 * sizes[0] <= shape.n


def test_validate_cover_examples():
    g = ColouredGraph.from_shape((1, 1, 1))
    pair = PathPair(MonoPath(RED, (0, 1, 2)), MonoPath(BLUE, ()))
    assert validate_cover(g, [pair])
    reuse = PathPair(MonoPath(RED, (0, 1, 2)), MonoPath(BLUE, (2,)))
    assert not validate_cover(g, [reuse])
    shared = PathPair(MonoPath(RED, (0, 1, 2)), MonoPath(BLUE, (2,)), shared=2)
    assert validate_cover(g, [shared])

    k22 = ColouredGraph.from_shape((2, 2))
    assert validate_cover(k22, [MonoCycle(RED, (0, 2)), MonoCycle(RED, (1, 3))])
    assert validate_cover(k22, [MonoCycle(RED, (0, 2, 1, 3))])

    k4 = ColouredGraph.from_shape((1, 1, 1, 1))
    rep = validate_cover(k4, [MonoPath(RED, (0, 1))], mode="cover", missing=1)
    assert not rep and rep.violation == "coverage deficit"


def test_validate_cover_wrong_colour():
    g = ColouredGraph.from_shape((1, 1, 1))
    rep = validate_cover(g, [MonoPath(BLUE, (0, 1, 2))])
    assert not rep and rep.violation == "bad path"


def test_code_round_trip():
    classes = classes_for_shape((2, 2, 1))
    for code in (0, 1, 77, (1 << 8) - 1):
        assert ColouredGraph.from_code(classes, code).code() == code


@given(coloured_graphs())
def test_json_round_trip(g):
    assert graph_from_json(graph_to_json(g)) == g


@given(coloured_graphs(), st.randoms(use_true_random=False))
def test_relabel_and_swap_preserve_validity(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert validate(g.relabel(perm))
    s = g.swap_colours()
    for u, v, c in g.edges():
        assert s.colour(u, v) == c.other


def test_json_errors_carry_position():
    with pytest.raises(InputError, match="line 2"):
        parse_graph_text('{"v": 1,\n "classes": [[0], [1]] "edges": []}')
    with pytest.raises(InputError, match="missing colour"):
        graph_from_json({"v": 1, "classes": [[0], [1]], "edges": []})
    with pytest.raises(InputError):
        graph_from_json({"v": 2, "classes": [[0], [1]], "edges": []})


def test_cross_pairs_lexicographic():
    assert cross_pairs(classes_for_shape((2, 1))) == [(0, 2), (1, 2)]
