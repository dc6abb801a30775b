import os

import pytest

from hkernels.entities import Pattern, complete_reflexive
from hkernels.formats.text import read_digraph, read_pattern
from hkernels.patterns.named import f1_pattern

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def f1():
    return f1_pattern()


@pytest.fixture
def k3():
    return complete_reflexive(("a", "b", "c"))


@pytest.fixture
def three_k1():
    return read_pattern(fixture_path("three_k1.txt"))


@pytest.fixture
def k1():
    return read_pattern(fixture_path("k1.txt"))


@pytest.fixture
def p3():
    return Pattern(("a", "b", "c"), [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")])


@pytest.fixture
def transition():
    return read_pattern(fixture_path("transition.txt"))


@pytest.fixture
def path_witness():
    """{u, v} is a kernel by H-paths, and there is no kernel by H-walks."""
    return read_digraph(fixture_path("path_kernel_no_walk_kernel.txt"))


@pytest.fixture
def walk_witness():
    """{v} is a kernel by H-walks, and there is no kernel by H-paths."""
    return read_digraph(fixture_path("walk_kernel_no_path_kernel.txt"))


@pytest.fixture
def odd_cycle():
    return read_digraph(fixture_path("odd_cycle.txt"))


@pytest.fixture
def f1_parallel():
    return read_digraph(fixture_path("f1_parallel.txt"))


@pytest.fixture
def gadget_triple():
    return read_digraph(fixture_path("gadget_triple.txt"))
