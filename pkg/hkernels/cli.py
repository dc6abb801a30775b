"""
Command-line interface.

Exit codes:
    0   success, or a positive answer (reachable, kernel found, witness found)
    1   negative answer (unreachable, no kernel, search exhausted without witness)
    2   unknown: a path-search budget was exceeded, or the search was interrupted
    64  usage error
    65  malformed input
    66  unreadable input
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .constructions import (
    f1_simplify,
    family_path_not_walk,
    family_walk_not_path,
    gadget_f4,
    gadget_f5,
    kernel_pullback,
    linear_sum_with_map,
    odd_cycle_witness,
)
from .constructions.witnesses import BaseWitness, separates
from .entities import is_reflexive
from .errors import (
    BoundTooLarge,
    BudgetExceeded,
    HKernelError,
    Interrupted,
    NotReflexive,
    OddCycleInComplement,
    SameVertex,
)
from .formats.gadgetmap import read_gadget_map, write_gadget_map
from .formats.report import Report, render_report
from .formats.text import parse_digraph, parse_pattern, serialize_pattern, write_digraph, write_pattern
from .kernels import KernelStatus, constructive_b2_set, find_independent_H_absorbent, find_kernel
from .patterns import (
    catalogue_table,
    classify_b2,
    find_obstruction,
    is_nontransitive_triple,
    is_transitive,
    minimal_nontransitive_family,
    structural_panchromatic,
    three_vertex_catalogue,
    walk_panchromatic,
)
from .patterns.catalogue import catalogue_entry
from .reachability import Semantics, extract_path_from_walk, path_reachable, walk_reachable
from .search import SearchMode, SearchPredicate, SearchTarget, resume, run_search, write_bundle
from .util import setup_logging
from .version import __version__

if TYPE_CHECKING:
    from typing import List, Optional, Tuple

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66


class UsageError(HKernelError):
    pass


@dataclass
class CommandResult:
    command: str
    exit_code: int = EXIT_OK
    fields: List[Tuple[str, str]] = field(default_factory=list)
    text: List[str] = field(default_factory=list)

    def add(self, key: str, value) -> CommandResult:
        self.fields.append((key, str(value)))
        return self

    def report(self) -> Report:
        return Report(self.command, self.exit_code, tuple(self.fields))

    def render(self, output_format: str) -> str:
        if output_format == "machine":
            return render_report(self.report())
        lines = [f"{key}: {value}" for key, value in self.fields] + self.text
        return "".join(f"{line}\n" for line in lines)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _read_text(path: str) -> Tuple[str, Optional[str]]:
    """File contents and the directory pattern references resolve against; `-` reads standard input."""
    if path == "-":
        return sys.stdin.read(), os.getcwd()
    with open(path, "r", encoding="utf-8") as f:
        return f.read(), os.path.dirname(os.path.abspath(path))


def _load_pattern(path: str):
    text, _ = _read_text(path)
    return parse_pattern(text)


def _load_digraph(path: str, pattern_path: Optional[str] = None):
    pattern = _load_pattern(pattern_path) if pattern_path is not None else None
    text, base_dir = _read_text(path)
    return parse_digraph(text, pattern, base_dir)


def _write_outputs(out: str, d, gadget_map=None):
    os.makedirs(out, exist_ok=True)
    write_pattern(d.pattern, os.path.join(out, "pattern.txt"))
    write_digraph(d, os.path.join(out, "digraph.txt"), pattern_ref="pattern.txt")
    if gadget_map is not None:
        write_gadget_map(gadget_map, os.path.join(out, "map.txt"))


def cmd_classify(args) -> CommandResult:
    p = _load_pattern(args.pattern)
    result = CommandResult("classify").add("colours", len(p))
    reflexive = is_reflexive(p)
    result.add("reflexive", _yes(reflexive))
    triple = is_nontransitive_triple(p)
    result.add("transitive", _yes(triple is None))
    if triple is not None:
        result.add("transitivity-violation", " ".join(triple))

    b2 = classify_b2(p)
    result.add("b2", _yes(b2.member))
    if not b2.member:
        result.add("b2-reason", b2.reason.value)
    if b2.cycle is not None:
        result.add("complement-odd-cycle", " ".join(b2.cycle))

    if not reflexive:
        result.add("panchromatic", "no").add("panchromatic-reason", NotReflexive.__name__)
        return result

    if len(p) == 3:
        entry = catalogue_entry(p)
        verdict, evidence = entry.panchromatic_by_paths.value, entry.evidence
    elif is_transitive(p):
        verdict, evidence = walk_panchromatic(p).value, "transitive+walk-partition"
    elif find_obstruction(p) is not None:
        verdict, evidence = "no", "obstruction-walk"
    else:
        verdict, evidence = "unknown", "none"
    result.add("panchromatic", verdict).add("panchromatic-evidence", evidence)
    witness = find_obstruction(p)
    if witness is not None:
        result.add("obstruction-walk", " ".join(witness.walk))
        result.add("obstruction-blockers", " ".join(witness.blockers))
    result.add("structural-if-f1-panchromatic", structural_panchromatic(p, True).value)
    result.add("structural-if-f1-not-panchromatic", structural_panchromatic(p, False).value)
    return result


def cmd_reach(args) -> CommandResult:
    d = _load_digraph(args.digraph, args.pattern)
    semantics = Semantics.of(args.semantics)
    result = CommandResult("reach").add("semantics", semantics.value).add("from", args.u).add("to", args.v)
    if args.u == args.v:
        raise SameVertex(f"Reachability is defined for distinct vertices, got {args.u!r} twice")
    try:
        if semantics is Semantics.WALK:
            certificate = walk_reachable(d, args.u, args.v)
            if certificate is not None and args.as_path:
                certificate = extract_path_from_walk(d, certificate)
        else:
            certificate = path_reachable(d, args.u, args.v, args.budget)
    except BudgetExceeded as e:
        result.exit_code = EXIT_UNKNOWN
        return result.add("status", "unknown").add("budget", e.budget)
    if certificate is None:
        result.exit_code = EXIT_NEGATIVE
        return result.add("status", "unreachable")
    result.add("status", "reachable").add("length", len(certificate))
    for i in certificate.arcs:
        arc = d.arcs[i]
        result.add("arc", f"{arc.tail} > {arc.head} : {arc.colour}")
    return result


def _kernel_fields(result: CommandResult, report) -> CommandResult:
    result.add("status", report.status.value)
    if report.witness is not None:
        result.add("kernel", " ".join(report.witness))
    if report.certificate is not None:
        result.add("certificate", report.certificate)
    result.add("candidates", report.candidates)
    result.exit_code = {
        KernelStatus.FOUND: EXIT_OK, KernelStatus.NONE_EXISTS: EXIT_NEGATIVE, KernelStatus.UNKNOWN: EXIT_UNKNOWN,
    }[report.status]
    return result


def cmd_kernel(args) -> CommandResult:
    d = _load_digraph(args.digraph, args.pattern)
    if args.constructive:
        result = CommandResult("kernel").add("query", "constructive-b2-set")
        try:
            chosen = constructive_b2_set(d)
        except (NotReflexive, OddCycleInComplement) as e:
            result.exit_code = EXIT_NEGATIVE
            return result.add("status", "not-applicable").add("reason", str(e))
        return result.add("status", "found").add("set", " ".join(v for v in d.vertices if v in chosen))
    if args.b2_set:
        result = CommandResult("kernel").add("query", "independent-absorbent")
        return _kernel_fields(result, find_independent_H_absorbent(d, args.budget))
    semantics = Semantics.of(args.semantics)
    result = CommandResult("kernel").add("query", "kernel").add("semantics", semantics.value)
    return _kernel_fields(result, find_kernel(d, semantics, args.budget))


def _require_inputs(args, count: int):
    if len(args.inputs) != count:
        raise UsageError(f"construct {args.kind} takes {count} input(s), got {len(args.inputs)}")


def cmd_construct(args) -> CommandResult:
    result = CommandResult("construct").add("kind", args.kind)
    kind = args.kind
    if kind == "pullback":
        _require_inputs(args, 1)
        gadget_map = read_gadget_map(args.inputs[0])
        kernel = args.kernel.split(",") if args.kernel else []
        pulled = kernel_pullback(kernel, gadget_map)
        return result.add("kernel", " ".join(v for v in gadget_map.original_vertices if v in pulled))

    if args.out is None:
        raise UsageError(f"construct {kind} needs -o/--out")
    gadget_map = None
    if kind == "linear-sum":
        _require_inputs(args, 2)
        d1, d2 = _load_digraph(args.inputs[0]), _load_digraph(args.inputs[1])
        c0 = None if args.c0 in (None, "fresh") else args.c0
        d, gadget_map = linear_sum_with_map(d1, d2, c0)
    elif kind in ("family-D", "family-E"):
        _require_inputs(args, 1)
        try:
            j = int(args.inputs[0])
        except ValueError:
            raise UsageError(f"family index must be an integer, got {args.inputs[0]!r}")
        build, witness_kind = {
            "family-D": (family_path_not_walk, BaseWitness.PATH_KERNEL_NO_WALK_KERNEL),
            "family-E": (family_walk_not_path, BaseWitness.WALK_KERNEL_NO_PATH_KERNEL),
        }[kind]
        _, d = build(j)
        verified = separates(d, witness_kind)
        result.add("verified", _yes(verified))
        if not verified:
            result.exit_code = EXIT_NEGATIVE
    elif kind == "odd-cycle-witness":
        _require_inputs(args, 1)
        p = _load_pattern(args.inputs[0])
        cycle = args.cycle.split(",") if args.cycle else classify_b2(p).cycle
        if cycle is None:
            result.exit_code = EXIT_NEGATIVE
            return result.add("status", "no-odd-cycle")
        result.add("cycle", " ".join(cycle))
        d = odd_cycle_witness(p, cycle)
    elif kind in ("gadget-f4", "gadget-f5"):
        _require_inputs(args, 1)
        d, gadget_map = (gadget_f4 if kind == "gadget-f4" else gadget_f5)(_load_digraph(args.inputs[0]))
    elif kind == "f1-simplify":
        _require_inputs(args, 1)
        d, gadget_map = f1_simplify(_load_digraph(args.inputs[0]))
    else:
        raise UsageError(f"Unknown construction {kind!r}")

    _write_outputs(args.out, d, gadget_map)
    result.add("vertices", d.order).add("arcs", len(d.arcs))
    if gadget_map is not None:
        result.add("added", len(gadget_map.all_added()))
    return result.add("out", args.out)


def cmd_catalogue(args) -> CommandResult:
    result = CommandResult("catalogue").add("table", args.which)
    if args.which == "three-vertex":
        entries = three_vertex_catalogue()
        result.add("rows", len(entries))
        result.add("open", sum(1 for e in entries if e.panchromatic_by_paths.value == "open"))
        for entry in entries:
            result.add("row", entry.row().replace("\t", " "))
        if args.format == "human":
            result.fields = [f for f in result.fields if f[0] != "row"]
            result.text = catalogue_table(entries).splitlines()
        return result
    family = minimal_nontransitive_family()
    result.add("members", len(family))
    for p in family:
        result.add("member", " ".join(f"{t}>{h}" for t, h in p.arc_list()))
    if args.format == "human":
        result.fields = [f for f in result.fields if f[0] != "member"]
        for p in family:
            result.text.extend(serialize_pattern(p).splitlines() + [""])
    return result


def _search_target(args) -> SearchTarget:
    if args.target is None:
        raise UsageError("search needs --target or --resume")
    pattern = _load_pattern(args.pattern) if args.pattern is not None else None
    return SearchTarget(
        kind=args.target,
        pattern=pattern,
        min_vertices=args.min_n,
        max_vertices=args.max_n,
        max_colours=args.max_colours,
        max_parallel=args.max_parallel,
        max_arcs=args.max_arcs,
        mode=SearchMode(args.mode),
        seed=args.seed,
        count=args.count,
    )


def cmd_search(args) -> CommandResult:
    result = CommandResult("search")
    parallel_config = {"backend": "loky", "n_jobs": args.workers} if args.workers > 1 else None
    options = dict(parallel_config=parallel_config, max_blocks=args.max_blocks, budget=args.budget,
                   show_progress=args.progress)
    try:
        if args.resume is not None:
            outcome = resume(args.resume, **options)
        else:
            outcome = run_search(_search_target(args), checkpoint=args.checkpoint, **options)
    except Interrupted as e:
        result.exit_code = EXIT_UNKNOWN
        result.add("status", "interrupted")
        if e.state is not None:
            result.add("instances", e.state.stats.instances)
        if e.checkpoint is not None:
            result.add("checkpoint", e.checkpoint)
        return result

    target = outcome.state.target
    result.add("target", target.kind).add("mode", target.mode.value)
    stats = outcome.state.stats
    result.add("instances", stats.instances).add("dedup-hits", stats.dedup_hits).add("unknown", stats.unknown)
    if outcome.witness is not None:
        result.add("status", "found")
        for line in outcome.witness.transcript:
            result.add("transcript", line)
    elif outcome.certificate is not None:
        certificate = outcome.certificate
        result.add("status", "none-in-bounds").add("clean", _yes(certificate.clean))
        result.add("bound", certificate.max_vertices)
        result.exit_code = EXIT_NEGATIVE if certificate.clean else EXIT_UNKNOWN
    else:
        result.add("status", "not-found")
        result.exit_code = EXIT_NEGATIVE
    if args.bundle is not None and write_bundle(outcome, args.bundle) is not None:
        result.add("bundle", args.bundle)
    return result


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hkernels", description="Kernels by H-paths and H-walks in arc-coloured digraphs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--format", choices=["human", "machine"], default="human")
    parser.add_argument("--budget", type=int, default=None, help="path-search expansion budget")
    sub = parser.add_subparsers(dest="cmd", parser_class=_Parser)

    p_classify = sub.add_parser("classify", help="class memberships of a pattern")
    p_classify.add_argument("pattern")
    p_classify.set_defaults(func=cmd_classify)

    p_reach = sub.add_parser("reach", help="H-walk or H-path reachability certificate")
    p_reach.add_argument("digraph")
    p_reach.add_argument("u")
    p_reach.add_argument("v")
    p_reach.add_argument("--semantics", choices=["walk", "path"], default="path")
    p_reach.add_argument("--pattern", default=None, help="pattern file overriding the digraph's reference")
    p_reach.add_argument("--as-path", action="store_true", help="shortcut a walk certificate (transitive patterns)")
    p_reach.set_defaults(func=cmd_reach)

    p_kernel = sub.add_parser("kernel", help="kernel by H-paths or H-walks")
    p_kernel.add_argument("digraph")
    p_kernel.add_argument("--semantics", choices=["walk", "path"], default="path")
    p_kernel.add_argument("--pattern", default=None)
    p_kernel.add_argument("--b2-set", action="store_true", help="independent H-absorbent set instead")
    p_kernel.add_argument("--constructive", action="store_true", help="build the set layer by layer")
    p_kernel.set_defaults(func=cmd_kernel)

    p_construct = sub.add_parser("construct", help="derived digraphs")
    p_construct.add_argument("kind", choices=["linear-sum", "family-D", "family-E", "odd-cycle-witness", "gadget-f4",
                                              "gadget-f5", "f1-simplify", "pullback"])
    p_construct.add_argument("inputs", nargs="*")
    p_construct.add_argument("-o", "--out", default=None, help="output directory")
    p_construct.add_argument("--c0", default=None, help="cross-arc colour of a linear sum, or 'fresh'")
    p_construct.add_argument("--cycle", default=None, help="comma-separated odd cycle of the complement")
    p_construct.add_argument("--kernel", default=None, help="comma-separated kernel to pull back")
    p_construct.set_defaults(func=cmd_construct)

    p_catalogue = sub.add_parser("catalogue", help="pattern catalogues")
    p_catalogue.add_argument("which", choices=["three-vertex", "nontransitive-family"])
    p_catalogue.set_defaults(func=cmd_catalogue)

    p_search = sub.add_parser("search", help="exhaustive or random witness search")
    p_search.add_argument("--target", choices=sorted(SearchPredicate.registry), default=None)
    p_search.add_argument("--pattern", default=None)
    p_search.add_argument("--min-n", type=int, default=1)
    p_search.add_argument("--max-n", type=int, default=4)
    p_search.add_argument("--max-colours", type=int, default=3)
    p_search.add_argument("--max-parallel", type=int, default=1)
    p_search.add_argument("--max-arcs", type=int, default=None)
    p_search.add_argument("--mode", choices=[m.value for m in SearchMode], default=SearchMode.EXHAUSTIVE.value)
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--count", type=int, default=1000)
    p_search.add_argument("--workers", type=int, default=1)
    p_search.add_argument("--checkpoint", default=None)
    p_search.add_argument("--resume", default=None, help="checkpoint to continue from")
    p_search.add_argument("--bundle", default=None, help="directory for the witness bundle or certificate")
    p_search.add_argument("--max-blocks", type=int, default=None)
    p_search.add_argument("--progress", action="store_true")
    p_search.set_defaults(func=cmd_search)
    return parser


def _requested_format(argv: List[str]) -> str:
    """Output format asked for on the command line, for errors raised before parsing completes."""
    for i, arg in enumerate(argv):
        if arg == "--":
            break
        if arg == "--format" and i + 1 < len(argv):
            value = argv[i + 1]
        elif arg.startswith("--format="):
            value = arg.split("=", 1)[1]
        else:
            continue
        return "machine" if value == "machine" else "human"
    return "human"


def run(argv: Optional[List[str]] = None) -> Tuple[int, str]:
    """Run a command and return (exit code, output) without touching sys.exit."""
    argv = sys.argv[1:] if argv is None else list(argv)
    output_format = _requested_format(argv)
    try:
        args = build_parser().parse_args(argv)
        output_format = args.format
        if args.verbose:
            setup_logging(logging.DEBUG if args.verbose > 1 else logging.INFO)
        if args.cmd is None:
            raise UsageError("a command is required")
        result = args.func(args)
    except (UsageError, SameVertex, BoundTooLarge) as e:
        result = CommandResult("error", EXIT_USAGE).add("error", str(e))
    except (HKernelError, ValueError) as e:
        result = CommandResult("error", EXIT_DATAERR).add("error", f"{type(e).__name__}: {e}")
    except OSError as e:
        result = CommandResult("error", EXIT_NOINPUT).add("error", f"{e.filename}: {e.strerror}")
    return result.exit_code, result.render(output_format)


def main(argv: Optional[List[str]] = None):
    code, output = run(argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN) else sys.stderr
    stream.write(output)
    sys.exit(code)
