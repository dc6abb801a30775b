import os

import pytest

from hkernels.cli import EXIT_DATAERR, EXIT_NEGATIVE, EXIT_NOINPUT, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, main, run
from hkernels.formats import parse_report, read_gadget_map
from hkernels.formats.text import read_digraph

from .conftest import fixture_path


def machine(*argv):
    code, output = run(["--format", "machine", *argv])
    report = parse_report(output)
    assert report.exit_code == code
    return report


def test_classify_f1():
    report = machine("classify", fixture_path("f1.txt"))
    assert report.exit_code == EXIT_OK
    assert report.get("colours") == "3"
    assert report.get("transitive") == "no"
    assert report.get("transitivity-violation") == "b r g"
    assert report.get("b2") == "yes"
    assert report.get("panchromatic") == "open"
    assert report.get("panchromatic-evidence") == "open-problem"
    assert report.get("structural-if-f1-panchromatic") == "yes"
    assert report.get("structural-if-f1-not-panchromatic") == "no"


def test_classify_three_k1():
    report = machine("classify", fixture_path("three_k1.txt"))
    assert report.get("b2") == "no"
    assert report.get("b2-reason") == "odd-cycle-in-complement"
    assert report.get("complement-odd-cycle") == "a b c"
    assert report.get("panchromatic") == "no"


def test_classify_non_reflexive():
    report = machine("classify", fixture_path("nonreflexive.txt"))
    assert report.get("reflexive") == "no"
    assert report.get("b2-reason") == "not-reflexive"
    assert report.get("panchromatic") == "no"
    assert report.get("panchromatic-reason") == "NotReflexive"


def test_classify_human_output():
    code, output = run(["classify", fixture_path("f1.txt")])
    assert code == EXIT_OK
    assert "panchromatic: open\n" in output


def test_reach():
    digraph = fixture_path("walk_kernel_no_path_kernel.txt")
    walk = machine("reach", digraph, "u", "v", "--semantics", "walk")
    assert walk.exit_code == EXIT_OK
    assert walk.get("status") == "reachable"
    assert walk.get("length") == "4"
    assert walk.get_all("arc") == ["u > x : a", "x > y : b", "y > x : b", "x > v : c"]
    path = machine("reach", digraph, "u", "v")
    assert path.exit_code == EXIT_NEGATIVE
    assert path.get("status") == "unreachable"


def test_reach_exit_codes():
    digraph = fixture_path("path_kernel_no_walk_kernel.txt")
    assert machine("reach", digraph, "u", "u").exit_code == EXIT_USAGE
    unknown = machine("--budget", "1", "reach", digraph, "u", "v")
    assert unknown.exit_code == EXIT_UNKNOWN
    assert unknown.get("status") == "unknown"


def test_reach_with_pattern_override():
    report = machine("reach", fixture_path("odd_cycle.txt"), "x0", "x2", "--pattern", fixture_path("k1.txt"))
    assert report.exit_code == EXIT_DATAERR


def test_kernel():
    digraph = fixture_path("path_kernel_no_walk_kernel.txt")
    by_paths = machine("kernel", digraph)
    assert by_paths.exit_code == EXIT_OK
    assert by_paths.get("kernel") == "u v"
    by_walks = machine("kernel", digraph, "--semantics", "walk")
    assert by_walks.exit_code == EXIT_NEGATIVE
    assert by_walks.get("status") == "none-exists"
    assert machine("--budget", "1", "kernel", digraph).exit_code == EXIT_UNKNOWN


def test_independent_absorbent_sets():
    odd = fixture_path("odd_cycle.txt")
    assert machine("kernel", odd, "--b2-set").exit_code == EXIT_NEGATIVE
    report = machine("kernel", odd, "--constructive")
    assert report.exit_code == EXIT_NEGATIVE
    assert report.get("status") == "not-applicable"
    built = machine("kernel", fixture_path("f1_parallel.txt"), "--constructive")
    assert built.exit_code == EXIT_OK
    assert built.get("set") == "v"


def test_construct_family(tmp_path):
    out = os.path.join(tmp_path, "d2")
    report = machine("construct", "family-D", "2", "-o", out)
    assert report.exit_code == EXIT_OK
    assert report.get("verified") == "yes"
    assert report.get("vertices") == "6"
    assert read_digraph(os.path.join(out, "digraph.txt")).order == 6
    assert machine("construct", "family-E", "x", "-o", out).exit_code == EXIT_USAGE


def test_construct_linear_sum(tmp_path):
    out = os.path.join(tmp_path, "sum")
    report = machine("construct", "linear-sum", fixture_path("single_arc.txt"), fixture_path("path_two_arcs.txt"),
                     "-o", out)
    assert report.get("vertices") == "5"
    assert report.get("arcs") == "9"
    assert report.get("added") == "2"
    assert os.path.exists(os.path.join(out, "map.txt"))


def test_construct_gadget_and_pullback(tmp_path):
    out = os.path.join(tmp_path, "f4")
    report = machine("construct", "gadget-f4", fixture_path("gadget_triple.txt"), "-o", out)
    assert report.get("vertices") == "4"
    assert report.get("arcs") == "6"
    assert report.get("added") == "1"
    map_path = os.path.join(out, "map.txt")
    assert read_gadget_map(map_path).added_vertices("S_hat") == ("s^",)
    pulled = machine("construct", "pullback", map_path, "--kernel", "s^,r")
    assert pulled.get("kernel") == "r s"


def test_construct_f1_simplify(tmp_path):
    out = os.path.join(tmp_path, "f1")
    report = machine("construct", "f1-simplify", fixture_path("f1_parallel.txt"), "-o", out)
    assert report.get("added") == "2"
    assert report.get("arcs") == "4"


def test_construct_odd_cycle_witness(tmp_path):
    out = os.path.join(tmp_path, "odd")
    report = machine("construct", "odd-cycle-witness", fixture_path("three_k1.txt"), "-o", out)
    assert report.get("cycle") == "a b c"
    assert machine("kernel", os.path.join(out, "digraph.txt"), "--b2-set").exit_code == EXIT_NEGATIVE
    none = machine("construct", "odd-cycle-witness", fixture_path("f1.txt"), "-o", out)
    assert none.exit_code == EXIT_NEGATIVE
    assert none.get("status") == "no-odd-cycle"


def test_construct_needs_output():
    assert machine("construct", "family-D", "1").exit_code == EXIT_USAGE


def test_catalogue():
    report = machine("catalogue", "three-vertex")
    assert report.get("rows") == "16"
    assert report.get("open") == "1"
    assert len(report.get_all("row")) == 16
    family = machine("catalogue", "nontransitive-family")
    assert family.get("members") == "7"
    code, output = run(["catalogue", "three-vertex"])
    assert code == EXIT_OK
    assert "code\tnames\ttransitive" in output


def test_search_witness_and_bundle(tmp_path):
    bundle = os.path.join(tmp_path, "bundle")
    report = machine("search", "--target", "no-path-kernel", "--pattern", fixture_path("three_k1.txt"),
                     "--max-n", "3", "--bundle", bundle)
    assert report.exit_code == EXIT_OK
    assert report.get("status") == "found"
    assert "re-verified: yes" in report.get_all("transcript")
    assert sorted(os.listdir(bundle)) == ["digraph.txt", "pattern.txt", "transcript.txt"]


def test_search_none_in_bounds():
    report = machine("search", "--target", "no-path-kernel", "--pattern", fixture_path("k1.txt"), "--max-n", "3")
    assert report.exit_code == EXIT_NEGATIVE
    assert report.get("status") == "none-in-bounds"
    assert report.get("clean") == "yes"
    assert report.get("instances") == "20"


def test_search_interrupt_and_resume(tmp_path):
    checkpoint = os.path.join(tmp_path, "state.json")
    interrupted = machine("search", "--target", "no-path-kernel", "--pattern", fixture_path("three_k1.txt"),
                          "--max-n", "3", "--checkpoint", checkpoint, "--max-blocks", "1")
    assert interrupted.exit_code == EXIT_UNKNOWN
    assert interrupted.get("status") == "interrupted"
    assert interrupted.get("checkpoint") == checkpoint
    resumed = machine("search", "--resume", checkpoint)
    assert resumed.exit_code == EXIT_OK
    assert resumed.get("status") == "found"


def test_search_usage_errors():
    assert machine("search").exit_code == EXIT_USAGE
    assert machine("search", "--target", "no-such-target").exit_code == EXIT_USAGE
    assert machine("search", "--target", "no-path-kernel", "--max-n", "9").exit_code == EXIT_USAGE


def test_input_errors(tmp_path):
    assert machine("classify", fixture_path("malformed.txt")).exit_code == EXIT_DATAERR
    assert machine("classify", os.path.join(tmp_path, "missing.txt")).exit_code == EXIT_NOINPUT
    assert machine().exit_code == EXIT_USAGE
    assert machine("frobnicate").exit_code == EXIT_USAGE


def test_main_exits_with_the_command_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["kernel", fixture_path("walk_kernel_no_path_kernel.txt"), "--semantics", "walk"])
    assert e.value.code == EXIT_OK
    assert "kernel: v" in capsys.readouterr().out


def test_usage_errors_use_the_requested_format():
    digraph = fixture_path("walk_kernel_no_path_kernel.txt")
    code, output = run(["reach", digraph, "machine", "v", "--no-such-flag"])
    assert code == EXIT_USAGE
    assert not output.startswith("hkernels-report")
    code, output = run(["--format=machine", "reach", digraph, "machine", "v", "--no-such-flag"])
    assert code == EXIT_USAGE
    assert parse_report(output).exit_code == EXIT_USAGE
