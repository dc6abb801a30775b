import pytest

from hkernels.canonical import canonical_code, is_isomorphic
from hkernels.constructions import obstruction_digraph
from hkernels.entities import Pattern
from hkernels.enumeration import enumerate_patterns, reflexive_patterns
from hkernels.errors import NotReflexive, NotTwins
from hkernels.kernels import KernelStatus, find_kernel
from hkernels.patterns import (
    B2Reason,
    Panchromatic,
    blow_up,
    classify_b2,
    complement_odd_cycle,
    contract_true_twins,
    find_obstruction,
    in_B2,
    is_induced_subpattern,
    is_nontransitive_triple,
    is_transitive,
    minimal_nontransitive_family,
    structural_panchromatic,
    three_vertex_catalogue,
    true_twins,
    walk_panchromatic,
)
from hkernels.patterns.b2 import complement_layers, layer_parts
from hkernels.patterns.catalogue import (
    EVIDENCE_OBSTRUCTION,
    EVIDENCE_TWIN_GADGET,
    catalogue_entry,
    catalogue_table,
    check_structural_agreement,
)
from hkernels.patterns.named import f4_pattern, f5_pattern, separation_pattern, three_vertex_named
from hkernels.patterns.structural import PartitionCase, structural_partition
from hkernels.patterns.transitivity import is_family_free
from hkernels.reachability import Semantics


def test_transitivity(f1, k3, p3):
    assert is_transitive(k3)
    assert not is_transitive(f1)
    assert is_nontransitive_triple(f1) == ("b", "r", "g")
    assert is_nontransitive_triple(p3) == ("a", "b", "c")
    assert is_nontransitive_triple(k3) is None


def test_induced_subpattern_test(f1, p3):
    single_arc = Pattern(("x", "y"), [("x", "x"), ("y", "y"), ("x", "y")])
    assert is_induced_subpattern(single_arc, f1)
    assert is_induced_subpattern(single_arc, p3)
    assert not is_induced_subpattern(f1, p3)


def test_minimal_nontransitive_family():
    family = minimal_nontransitive_family()
    assert len(family) == 7
    assert all(len(p) == 3 and not is_transitive(p) for p in family)
    named = three_vertex_named()
    codes = {canonical_code(p) for p in family}
    for name in ("P3", "C3", "F1", "F4", "F5"):
        assert canonical_code(named[name]) in codes


def test_b2_classification(f1, three_k1, transition):
    assert classify_b2(f1).member
    assert classify_b2(f1).reason is B2Reason.MEMBER
    odd = classify_b2(three_k1)
    assert not odd.member
    assert odd.reason is B2Reason.ODD_CYCLE
    assert odd.cycle == ("a", "b", "c")
    assert classify_b2(transition).reason is B2Reason.NOT_REFLEXIVE
    assert in_B2(separation_pattern())


def test_complement_odd_cycle_is_directed():
    c3 = three_vertex_named()["C3"]
    assert complement_odd_cycle(c3) == ("a", "c", "b")


def test_complement_layers(f1):
    assert complement_layers(f1) == [("r",), ("b",), ("g",)]
    assert layer_parts(f1, ("r",)) == (("r",), ())
    separation = separation_pattern()
    layers = complement_layers(separation)
    assert ("b", "g") in layers
    first, second = layer_parts(separation, ("b", "g"))
    assert {first, second} == {("b",), ("g",)}


def test_true_twins(k3, f1, transition):
    assert true_twins(k3) == {("a", "b"), ("a", "c"), ("b", "c")}
    assert contract_true_twins(k3, "a", "b").colours == ("a", "c")
    with pytest.raises(NotTwins):
        contract_true_twins(f1, "r", "g")
    with pytest.raises(NotReflexive):
        true_twins(transition)


def test_blow_up_then_contract(f1):
    blown = blow_up(f1, "r", 2)
    assert blown.colours == ("r1", "r2", "g", "b")
    assert ("r1", "r2") in true_twins(blown)
    assert is_isomorphic(contract_true_twins(blown, "r1", "r2"), f1)
    assert blow_up(f1, "g", 1) is f1
    with pytest.raises(ValueError):
        blow_up(f1, "g", 0)


def test_obstructions(p3, k3, f1):
    witness = find_obstruction(p3)
    assert witness.walk == ("a", "b")
    assert witness.blockers == ("c",)
    assert witness.closing == ("b", "a")
    assert find_obstruction(k3) is None
    assert find_obstruction(f1) is None
    loopless = find_obstruction(Pattern(("a",)))
    assert loopless.walk == ("a",)
    assert loopless.blockers == ()


def test_structural_partition(f1, k3, three_k1):
    partition = structural_partition(f1, f1_is_panchromatic=True)
    assert partition.first == ("g",)
    assert partition.second == ("r", "b")
    assert partition.case is PartitionCase.FORWARD_WITH_BACK
    assert structural_panchromatic(f1, False) is Panchromatic.NO
    assert structural_panchromatic(k3, False) is Panchromatic.YES
    assert walk_panchromatic(three_k1) is Panchromatic.NO
    assert structural_panchromatic(f4_pattern(), True) is Panchromatic.NO
    assert structural_panchromatic(f5_pattern(), True) is Panchromatic.NO


def test_three_vertex_catalogue():
    entries = three_vertex_catalogue()
    assert len(entries) == 16
    assert sum(e.transitive for e in entries) == 9
    open_entries = [e for e in entries if e.panchromatic_by_paths is Panchromatic.OPEN_F1]
    assert len(open_entries) == 1
    assert "F1" in open_entries[0].names
    assert sum(e.evidence == EVIDENCE_TWIN_GADGET for e in entries) == 2
    assert sum(e.evidence == EVIDENCE_OBSTRUCTION for e in entries) == 4
    assert catalogue_entry(f4_pattern()).evidence == EVIDENCE_TWIN_GADGET
    assert catalogue_entry(three_vertex_named()["K3"]).panchromatic_by_paths is Panchromatic.YES


def test_catalogue_table_has_a_row_per_entry():
    lines = catalogue_table().splitlines()
    assert lines[0].startswith("code\tnames")
    assert len(lines) == 17


@pytest.mark.parametrize("f1_is_panchromatic", [True, False])
def test_structural_test_agrees_with_settled_entries(f1_is_panchromatic):
    assert check_structural_agreement(f1_is_panchromatic) == []


@pytest.mark.slow
def test_family_freeness_is_transitivity():
    family = minimal_nontransitive_family()
    for p in enumerate_patterns(4):
        assert is_family_free(p, family) == is_transitive(p)


def test_catalogue_obstructions_give_kernel_free_digraphs():
    entries = [e for e in three_vertex_catalogue() if e.evidence == EVIDENCE_OBSTRUCTION]
    assert len(entries) == 4
    for entry in entries:
        d = obstruction_digraph(entry.pattern)
        assert find_kernel(d, Semantics.PATH).status is KernelStatus.NONE_EXISTS


@pytest.mark.slow
def test_every_obstruction_gives_a_kernel_free_digraph():
    patterns = list(enumerate_patterns(3, reflexive=False)) + list(reflexive_patterns(4))
    checked = 0
    for p in patterns:
        witness = find_obstruction(p)
        if witness is None or len(witness.walk) > 2:
            continue
        d = obstruction_digraph(p, witness)
        assert find_kernel(d, Semantics.PATH).status is KernelStatus.NONE_EXISTS, p
        checked += 1
    assert checked > 100
    with pytest.raises(ValueError):
        obstruction_digraph(three_vertex_named()["K3"])
