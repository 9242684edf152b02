import os
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from monopaths.graph import BLUE, RED, ClassShape, ColouredGraph, classes_for_shape, cross_pairs

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SEED = int(os.environ.get("MONO_SEED", "0"))


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_graph(rng, sizes, p_red=0.5):
    classes = classes_for_shape(ClassShape(tuple(sizes)))
    return ColouredGraph.from_function(classes, lambda u, v: RED if rng.random() < p_red else BLUE)


def split_graph(sizes, A, C, flips=()):
    """Balanced bipartite graph, blue on A-C and B-D, with the pairs in ``flips`` recoloured."""
    classes = classes_for_shape(ClassShape(tuple(sizes)))
    A, C, flips = set(A), set(C), {tuple(sorted(f)) for f in flips}

    def colour(u, v):
        blue = (u in A) == (v in C)
        if (u, v) in flips:
            blue = not blue
        return BLUE if blue else RED

    return ColouredGraph.from_function(classes, colour)


@st.composite
def fair_shapes(draw, min_k=3, max_k=5, max_size=4):
    k = draw(st.integers(min_k, max_k))
    sizes = sorted((draw(st.integers(1, max_size)) for _ in range(k)), reverse=True)
    if 2 * sizes[0] > sum(sizes):
        sizes[0] = sum(sizes[1:])
        sizes.sort(reverse=True)
    return ClassShape(tuple(sizes))


@st.composite
def coloured_graphs(draw, min_k=3, max_k=5, max_size=4):
    shape = draw(fair_shapes(min_k, max_k, max_size))
    classes = classes_for_shape(shape)
    code = draw(st.integers(0, (1 << len(cross_pairs(classes))) - 1))
    return ColouredGraph.from_code(classes, code)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
        terminalreporter.write_line(ACCEPTANCE[key])
