import json
import os
from dataclasses import replace

import pytest

from hkernels.canonical import canonical_code
from hkernels.entities import is_reflexive
from hkernels.errors import BoundTooLarge, Interrupted, StaleState
from hkernels.kernels import find_kernel
from hkernels.patterns import is_transitive
from hkernels.search import (
    Cursor,
    SearchMode,
    SearchPredicate,
    SearchState,
    SearchStatus,
    SearchTarget,
    Verdict,
    build_witness,
    load_state,
    obstruction_vertex_bound,
    read_bundle,
    resume,
    run_search,
    save_state,
    write_bundle,
)
from hkernels.search.handler import BLOCK_SIZE, evaluate_block, sample_block
from hkernels.search.runner import search_patterns


@pytest.fixture
def cycle_target(three_k1):
    return SearchTarget("no-path-kernel", pattern=three_k1, max_vertices=3)


def test_registry():
    assert {
        "path-kernel-no-walk-kernel",
        "walk-kernel-no-path-kernel",
        "no-path-kernel",
        "no-independent-absorbent",
        "minimal-nontransitive-member",
    } <= set(SearchPredicate.registry)
    assert SearchPredicate.get("minimal-nontransitive-member").pattern_only
    SearchPredicate.get("no-path-kernel").debug()
    with pytest.raises(ValueError):
        SearchPredicate.get("no-such-target")


def test_registry_rejects_duplicates_and_non_functions():
    with pytest.raises(ValueError):
        SearchPredicate("no-path-kernel")(lambda pattern, digraph, budget=None: None)
    with pytest.raises(TypeError):
        SearchPredicate("not-a-function")(42)


def test_separation_predicates(transition, path_witness, walk_witness):
    path_first = SearchPredicate.get("path-kernel-no-walk-kernel")
    walk_first = SearchPredicate.get("walk-kernel-no-path-kernel")
    hit = path_first.evaluate(transition, path_witness)
    assert hit.verdict is Verdict.HIT
    assert hit.transcript == ("kernel by paths: found {u, v}", "kernel by walks: none-exists")
    assert path_first.evaluate(transition, walk_witness).verdict is Verdict.MISS
    assert walk_first.evaluate(transition, walk_witness).verdict is Verdict.HIT
    miss = walk_first.evaluate(transition, path_witness)
    assert miss.verdict is Verdict.MISS
    assert miss.transcript == ("kernel by walks: none-exists",)
    unknown = walk_first.evaluate(transition, walk_witness, budget=1)
    assert unknown.verdict is Verdict.UNKNOWN
    assert unknown.transcript[0] == "kernel by walks: found {v}"


def test_target_validation(three_k1):
    with pytest.raises(ValueError):
        SearchTarget("no-such-target")
    with pytest.raises(ValueError):
        SearchTarget("no-path-kernel", max_vertices=0)
    with pytest.raises(ValueError):
        SearchTarget("no-path-kernel", min_vertices=3, max_vertices=2)
    with pytest.raises(ValueError):
        SearchTarget("no-path-kernel", mode=SearchMode.RANDOM, count=0)
    with pytest.raises(ValueError):
        SearchTarget("no-path-kernel", density=0.0)
    with pytest.raises(ValueError):
        SearchTarget("no-path-kernel", seed=-1)


def test_target_dict_and_fingerprint(cycle_target):
    again = SearchTarget.from_dict(json.loads(json.dumps(cycle_target.to_dict())))
    assert again == cycle_target
    assert again.fingerprint() == cycle_target.fingerprint()
    assert replace(cycle_target, max_vertices=4).fingerprint() != cycle_target.fingerprint()


def test_obstruction_vertex_bound(p3, k3):
    assert obstruction_vertex_bound(p3) == 6
    assert obstruction_vertex_bound(k3) is None


def test_separation_kinds_search_patterns_without_loops(transition):
    patterns = search_patterns(SearchTarget("walk-kernel-no-path-kernel", max_colours=3))
    assert [len(p) for p in patterns] == [1] * 2 + [2] * 10 + [3] * 104
    assert canonical_code(transition) in {canonical_code(p) for p in patterns}
    assert not SearchPredicate.get("path-kernel-no-walk-kernel").reflexive_only

    reflexive = search_patterns(SearchTarget("no-path-kernel", max_colours=3))
    assert len(reflexive) == 20
    assert all(is_reflexive(p) for p in reflexive)


@pytest.mark.slow
def test_walk_separation_found_on_transition_pattern(transition, walk_witness):
    target = SearchTarget("walk-kernel-no-path-kernel", pattern=transition, max_vertices=5, max_arcs=5)
    outcome = run_search(target)
    assert outcome.found
    witness = outcome.witness
    assert witness.digraph.order == 4
    assert len(witness.digraph.arcs) == 5
    assert witness.digraph_code == canonical_code(walk_witness)
    assert witness.transcript[-1] == "re-verified: yes"


def test_pattern_only_search():
    outcome = run_search(SearchTarget("minimal-nontransitive-member"))
    assert outcome.found
    witness = outcome.witness
    assert witness.digraph is None
    assert len(witness.pattern) == 3
    assert not is_transitive(witness.pattern)
    assert witness.transcript[-1] == "re-verified: yes"
    assert outcome.state.status is SearchStatus.FOUND


def test_first_witness_is_an_odd_cycle(cycle_target):
    outcome = run_search(cycle_target)
    witness = outcome.witness
    assert witness.digraph.order == 3
    assert len(witness.digraph.arcs) == 3
    assert {a.colour for a in witness.digraph.arcs} == {"a", "b", "c"}
    assert not find_kernel(witness.digraph).found
    assert witness.digraph_code == canonical_code(witness.digraph)
    assert "obstruction bound: none" in witness.transcript
    assert "kernel by paths: none-exists" in witness.transcript
    assert outcome.certificate is None


def test_exhausted_search_certificate(k1):
    outcome = run_search(SearchTarget("no-path-kernel", pattern=k1, max_vertices=3))
    assert not outcome.found
    certificate = outcome.certificate
    assert certificate.clean
    assert certificate.instances == 20
    assert outcome.state.stats.instances == 20
    assert outcome.state.status is SearchStatus.EXHAUSTED
    assert "bound: no counterexample with <= 3 vertices" in certificate.describe()


def test_parallel_search_matches_serial(cycle_target):
    serial = run_search(cycle_target)
    threaded = run_search(cycle_target, parallel_config={"backend": "threading", "n_jobs": 2})
    assert threaded.witness.digraph_code == serial.witness.digraph_code
    assert threaded.state.stats == serial.state.stats
    assert threaded.state.cursor == serial.state.cursor


@pytest.mark.parametrize("mode", [SearchMode.EXHAUSTIVE, SearchMode.RANDOM])
def test_one_and_eight_workers_agree(tmp_path, three_k1, mode):
    target = SearchTarget("no-path-kernel", pattern=three_k1, max_vertices=3, mode=mode, seed=3, count=600,
                          density=0.3)
    outcomes, saved = [], []
    for n_jobs in (1, 8):
        checkpoint = os.path.join(tmp_path, f"state-{n_jobs}.json")
        outcomes.append(run_search(target, parallel_config={"backend": "threading", "n_jobs": n_jobs},
                                   checkpoint=checkpoint))
        saved.append(load_state(checkpoint))
    one, eight = outcomes
    assert one.found == eight.found
    if one.found:
        assert one.witness.digraph_code == eight.witness.digraph_code
        assert one.witness.transcript == eight.witness.transcript
    assert one.state.stats == eight.state.stats
    assert one.state.cursor == eight.state.cursor
    assert replace(saved[0], updated=None) == replace(saved[1], updated=None)


def test_interrupt_and_resume(tmp_path, cycle_target):
    full = run_search(cycle_target)
    checkpoint = os.path.join(tmp_path, "state.json")
    with pytest.raises(Interrupted) as e:
        run_search(cycle_target, checkpoint=checkpoint, max_blocks=1)
    assert e.value.checkpoint == checkpoint
    saved = load_state(checkpoint)
    assert saved.status is SearchStatus.RUNNING
    assert saved.stats == e.value.state.stats

    resumed = resume(checkpoint, target=cycle_target)
    assert resumed.witness.digraph_code == full.witness.digraph_code
    assert resumed.state.stats == full.state.stats
    assert resumed.state.cursor == full.state.cursor
    assert load_state(checkpoint).status is SearchStatus.FOUND

    again = resume(checkpoint)
    assert again.witness.digraph_code == full.witness.digraph_code


def test_resume_after_interrupt_on_exhausted_search(tmp_path, k1):
    target = SearchTarget("no-path-kernel", pattern=k1, max_vertices=3)
    full = run_search(target)
    checkpoint = os.path.join(tmp_path, "state.json")
    with pytest.raises(Interrupted):
        run_search(target, checkpoint=checkpoint, max_blocks=1)
    resumed = resume(checkpoint)
    assert not resumed.found
    assert resumed.state.status is SearchStatus.EXHAUSTED
    assert resumed.state.stats == full.state.stats
    assert resumed.state.cursor == full.state.cursor
    assert resumed.certificate == full.certificate


def test_resume_rejects_edited_fingerprint(tmp_path, cycle_target):
    checkpoint = os.path.join(tmp_path, "state.json")
    with pytest.raises(Interrupted):
        run_search(cycle_target, checkpoint=checkpoint, max_blocks=1)
    with open(checkpoint) as f:
        data = json.load(f)
    data["fingerprint"] = replace(cycle_target, max_vertices=4).fingerprint()
    with open(checkpoint, "w") as f:
        json.dump(data, f)
    with pytest.raises(StaleState):
        load_state(checkpoint)
    with pytest.raises(StaleState):
        resume(checkpoint)


def test_stale_checkpoints(tmp_path, cycle_target, k1):
    checkpoint = os.path.join(tmp_path, "state.json")
    save_state(SearchState.initial(cycle_target), checkpoint)
    other = SearchTarget("no-path-kernel", pattern=k1, max_vertices=3)
    with pytest.raises(StaleState):
        resume(checkpoint, target=other)

    older = replace(load_state(checkpoint), code_version="0.0.1")
    with pytest.raises(StaleState):
        older.check_target(cycle_target)

    with open(checkpoint, "w") as f:
        f.write("{not json")
    with pytest.raises(StaleState):
        load_state(checkpoint)

    data = SearchState.initial(cycle_target).to_dict()
    data["fingerprint"] = "0" * 64
    with pytest.raises(StaleState):
        SearchState.from_dict(data)


def test_state_round_trip(cycle_target):
    state = SearchState.initial(cycle_target).advanced(Cursor(0, 3, 2, 5), SearchState.initial(cycle_target).stats)
    assert SearchState.from_dict(state.to_dict()) == state
    assert state.cursor.vertices == 3
    assert not state.finished


def test_bound_guard(k3):
    with pytest.raises(BoundTooLarge):
        run_search(SearchTarget("no-path-kernel", pattern=k3, max_vertices=6))


def test_random_blocks_are_reproducible(three_k1):
    target = SearchTarget("no-path-kernel", pattern=three_k1, mode=SearchMode.RANDOM, max_vertices=3, max_arcs=2,
                          seed=11, count=100)
    first = sample_block((three_k1,), target, 3, BLOCK_SIZE)
    second = sample_block((three_k1,), target, 3, BLOCK_SIZE)
    assert first == second
    assert all(len(d.arcs) <= 2 and d.arc_counts().max(initial=0) <= 1 for _, d in first)
    assert sample_block((three_k1,), target, 4, BLOCK_SIZE) != first


def test_random_search_is_deterministic(three_k1):
    target = SearchTarget("no-path-kernel", pattern=three_k1, mode=SearchMode.RANDOM, max_vertices=3, seed=5,
                          count=150, density=0.5)
    serial = run_search(target)
    threaded = run_search(target, parallel_config={"backend": "threading", "n_jobs": 3})
    assert serial.state.stats == threaded.state.stats
    assert serial.found == threaded.found
    if serial.found:
        assert serial.witness.digraph_code == threaded.witness.digraph_code
    assert serial.certificate is None


def test_block_stops_at_first_hit(transition, path_witness, walk_witness):
    predicate = SearchPredicate.get("walk-kernel-no-path-kernel")
    instances = [(transition, path_witness), (transition, walk_witness), (transition, walk_witness)]
    result = evaluate_block(predicate, 0, instances)
    assert result.hit == 1
    assert result.evaluated == 2
    assert result.instance == (transition, walk_witness)


def test_build_witness_re_verifies(transition, path_witness, walk_witness):
    target = SearchTarget("path-kernel-no-walk-kernel", pattern=transition, max_vertices=5)
    witness = build_witness(target, transition, path_witness)
    assert witness.digraph.order == 5
    assert witness.transcript[-1] == "re-verified: yes"
    with pytest.raises(AssertionError):
        build_witness(target, transition, walk_witness)


def test_bundles(tmp_path, cycle_target, k1):
    found = run_search(cycle_target)
    directory = os.path.join(tmp_path, "witness")
    assert write_bundle(found, directory) == directory
    bundle = read_bundle(directory)
    assert bundle.pattern == found.witness.pattern
    assert bundle.digraph == found.witness.digraph
    assert bundle.transcript == found.witness.transcript
    with open(os.path.join(directory, "digraph.txt")) as f:
        assert "pattern: pattern.txt" in f.read()

    exhausted = run_search(SearchTarget("no-path-kernel", pattern=k1, max_vertices=2))
    write_bundle(exhausted, directory)
    assert sorted(os.listdir(directory)) == ["certificate.txt"]
    assert read_bundle(directory).certificate == exhausted.certificate.describe()
