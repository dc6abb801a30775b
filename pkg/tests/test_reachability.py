import itertools

import pytest

from hkernels.entities import ColouredMultidigraph, complete_reflexive
from hkernels.enumeration import enumerate_coloured_digraphs, reflexive_patterns
from hkernels.errors import BudgetExceeded, CertificateError, NotTransitive, SameVertex
from hkernels.patterns import is_transitive
from hkernels.reachability import (
    PathCertificate,
    Semantics,
    WalkCertificate,
    extract_path_from_walk,
    path_reachable,
    reach_digraph,
    reachable_from,
    walk_reachable,
)
from hkernels.search import SearchMode, SearchTarget
from hkernels.search.handler import sample_block
from hkernels.util import BUDGET_ENV_VAR, path_budget

PATH_REACH = {
    ("u", "y"), ("u", "z"),
    ("v", "x"),
    ("x", "u"), ("x", "y"), ("x", "z"),
    ("y", "z"), ("y", "v"),
    ("z", "y"), ("z", "v"),
}


def test_walk_revisits_where_path_cannot(walk_witness):
    walk = walk_reachable(walk_witness, "u", "v")
    assert walk.vertices == ("u", "x", "y", "x", "v")
    assert walk.colours == ("a", "b", "b", "c")
    assert len(walk) == 4
    assert path_reachable(walk_witness, "u", "v") is None


def test_path_certificate(walk_witness):
    path = path_reachable(walk_witness, "y", "v")
    assert isinstance(path, PathCertificate)
    assert path.vertices == ("y", "x", "v")
    assert path.render(walk_witness) == "y > x : b\nx > v : c"


def test_reachability_needs_distinct_vertices(walk_witness):
    with pytest.raises(SameVertex):
        walk_reachable(walk_witness, "u", "u")
    with pytest.raises(SameVertex):
        path_reachable(walk_witness, "u", "u")


def test_reach_digraphs(path_witness):
    path = reach_digraph(path_witness, Semantics.PATH)
    walk = reach_digraph(path_witness, "walk")
    assert set(path.arcs) == PATH_REACH
    assert set(walk.arcs) - set(path.arcs) == {("u", "v")}
    assert reachable_from(path_witness, "x") == {"u", "y", "z"}
    assert path.reaches("z", "v") and not path.reaches("u", "v")


def test_budget_exceeded_means_unknown(path_witness):
    with pytest.raises(BudgetExceeded) as e:
        path_reachable(path_witness, "u", "v", budget=1)
    assert e.value.budget == 1
    assert path_reachable(path_witness, "z", "v", budget=1) is not None


def test_budget_from_environment(monkeypatch, path_witness):
    monkeypatch.setenv(BUDGET_ENV_VAR, "1")
    assert path_budget() == 1
    with pytest.raises(BudgetExceeded):
        path_reachable(path_witness, "u", "v")
    monkeypatch.setenv(BUDGET_ENV_VAR, "lots")
    with pytest.raises(ValueError):
        path_budget()
    with pytest.raises(ValueError):
        path_budget(0)


def test_certificate_verification_catches_tampering(walk_witness):
    walk = walk_reachable(walk_witness, "u", "v")
    forged = WalkCertificate(walk.vertices, walk.arcs, ("a", "b", "c", "c"))
    with pytest.raises(CertificateError):
        forged.verify(walk_witness)
    repeated = PathCertificate(walk.vertices, walk.arcs, walk.colours)
    with pytest.raises(CertificateError):
        repeated.verify(walk_witness)


def test_extract_path_from_walk():
    h = complete_reflexive(("a", "b"))
    d = ColouredMultidigraph(["p", "q", "r"], [("p", "q", "a"), ("q", "p", "a"), ("p", "r", "b")], h)
    walk = WalkCertificate(("p", "q", "p", "r"), (0, 1, 2), ("a", "a", "b"))
    path = extract_path_from_walk(d, walk)
    assert path.vertices == ("p", "r")
    assert path.arcs == (2,)


def test_extract_path_needs_transitive_pattern(walk_witness):
    walk = walk_reachable(walk_witness, "u", "v")
    with pytest.raises(NotTransitive):
        extract_path_from_walk(walk_witness, walk)


@pytest.mark.slow
def test_walks_and_paths_agree_for_transitive_patterns():
    for pattern in reflexive_patterns(1) + reflexive_patterns(2):
        for d in enumerate_coloured_digraphs(pattern, max_vertices=3):
            assert reach_digraph(d, Semantics.PATH).arcs == reach_digraph(d, Semantics.WALK).arcs


@pytest.mark.slow
def test_walks_and_paths_agree_for_transitive_three_colour_patterns():
    transitive = [p for p in reflexive_patterns(3) if is_transitive(p)]
    assert len(transitive) == 9
    for index, pattern in enumerate(transitive):
        exhaustive = enumerate_coloured_digraphs(pattern, max_vertices=4, max_arcs=3)
        target = SearchTarget("no-path-kernel", pattern=pattern, min_vertices=4, max_vertices=4,
                              mode=SearchMode.RANDOM, seed=index, density=0.3)
        sampled = (d for _, d in sample_block((pattern,), target, 0, 200))
        for d in itertools.chain(exhaustive, sampled):
            assert reach_digraph(d, Semantics.PATH).arcs == reach_digraph(d, Semantics.WALK).arcs
