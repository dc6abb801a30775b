from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import joblib

from ..canonical import canonical_code, canonical_form
from ..enumeration import check_raw_space, digraph_levels, enumerate_patterns, raw_digraph_count
from ..errors import CertificateError, Interrupted
from ..util import progress
from .handler import BLOCK_SIZE, joblib_handler, sample_block
from .state import Cursor, SearchState, SearchStats, SearchStatus, load_state, save_state
from .targets import SearchMode, Verdict, obstruction_vertex_bound

if TYPE_CHECKING:
    from typing import Any, Dict, Iterator, List, Optional, Tuple, Union
    from ..canonical import CanonicalCode
    from ..entities import ColouredMultidigraph, Pattern
    from .targets import SearchTarget

logger = logging.getLogger(__name__)

BLOCKS_PER_WORKER = 4


@dataclass(frozen=True)
class Witness:
    pattern: Pattern
    digraph: Optional[ColouredMultidigraph]
    transcript: Tuple[str, ...]
    pattern_code: CanonicalCode
    digraph_code: Optional[CanonicalCode]


@dataclass(frozen=True)
class NoneInBounds:
    """Exhaustive completion without a witness. Only a certificate with zero unknown instances is clean."""
    kind: str
    max_vertices: int
    max_colours: int
    max_parallel: int
    max_arcs: Optional[int]
    pattern_code: Optional[CanonicalCode]
    instances: int
    unknown: int

    @property
    def clean(self) -> bool:
        return self.unknown == 0

    def describe(self) -> Tuple[str, ...]:
        lines = [f"target: {self.kind}"]
        if self.pattern_code is not None:
            lines.append(f"pattern: {self.pattern_code.hex()}")
            lines.append(f"bound: no counterexample with <= {self.max_vertices} vertices")
        else:
            lines.append(f"bound: no counterexample with <= {self.max_colours} colours and "
                         f"<= {self.max_vertices} vertices")
        lines.append(f"max parallel: {self.max_parallel}")
        if self.max_arcs is not None:
            lines.append(f"max arcs: {self.max_arcs}")
        lines.append(f"instances: {self.instances}")
        lines.append(f"unknown: {self.unknown}")
        lines.append(f"clean: {'yes' if self.clean else 'no'}")
        return tuple(lines)


@dataclass(frozen=True)
class SearchOutcome:
    witness: Optional[Witness]
    certificate: Optional[NoneInBounds]
    state: SearchState

    @property
    def found(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class _Unit:
    cursor: Cursor
    end: Cursor
    parameters: Dict[str, Any]
    dedup_hits: int = 0

    def hit_cursor(self, offset: int, target: SearchTarget) -> Cursor:
        c = self.cursor
        if target.mode is SearchMode.RANDOM:
            return Cursor(c.pattern, c.vertices, c.arcs, c.index + offset)
        if target.predicate.pattern_only:
            return Cursor(c.pattern + offset, c.vertices, c.arcs, c.index)
        return Cursor(c.pattern, c.vertices, c.arcs, c.index + offset)


def search_patterns(target: SearchTarget) -> Tuple[Pattern, ...]:
    """
    Patterns in enumeration order: the fixed pattern, or every class by (colour count, canonical code). Classes
    with missing loops are included when the predicate is not restricted to reflexive patterns.
    """
    if target.pattern is not None:
        return (target.pattern,)
    return tuple(enumerate_patterns(target.max_colours, target.min_colours, target.predicate.reflexive_only))


def exhaustive_estimate(target: SearchTarget, patterns: Tuple[Pattern, ...]) -> int:
    if target.predicate.pattern_only:
        return len(patterns)
    return sum(
        raw_digraph_count(n, len(p), target.max_parallel, target.max_arcs)
        for p in patterns for n in range(target.min_vertices, target.max_vertices + 1)
    )


def _exhaustive_units(target: SearchTarget, patterns: Tuple[Pattern, ...], cursor: Cursor,
                      budget: Optional[int]) -> Iterator[_Unit]:
    for pi in range(cursor.pattern, len(patterns)):
        pattern = patterns[pi]
        first_n = cursor.vertices if pi == cursor.pattern else target.min_vertices
        for n in range(first_n, target.max_vertices + 1):
            resuming_level = pi == cursor.pattern and n == cursor.vertices
            for m, level, generated in digraph_levels(pattern, n, target.max_parallel, target.max_arcs):
                if resuming_level and m < cursor.arcs:
                    continue
                start = cursor.index if resuming_level and m == cursor.arcs else 0
                for s in range(start, len(level), BLOCK_SIZE):
                    chunk = level[s:s + BLOCK_SIZE]
                    yield _Unit(
                        Cursor(pi, n, m, s),
                        Cursor(pi, n, m, s + len(chunk)),
                        {"block": s // BLOCK_SIZE, "instances": [(pattern, d) for d in chunk], "budget": budget},
                        generated - len(level) if s == 0 else 0,
                    )


def _pattern_units(patterns: Tuple[Pattern, ...], cursor: Cursor, budget: Optional[int]) -> Iterator[_Unit]:
    for s in range(cursor.pattern, len(patterns), BLOCK_SIZE):
        chunk = patterns[s:s + BLOCK_SIZE]
        yield _Unit(
            Cursor(s, cursor.vertices, 0, 0),
            Cursor(s + len(chunk), cursor.vertices, 0, 0),
            {"block": s // BLOCK_SIZE, "instances": [(p, None) for p in chunk], "budget": budget},
        )


def _random_units(target: SearchTarget, patterns: Tuple[Pattern, ...], cursor: Cursor,
                  budget: Optional[int]) -> Iterator[_Unit]:
    for s in range(cursor.index, target.count, BLOCK_SIZE):
        size = min(BLOCK_SIZE, target.count - s)
        yield _Unit(
            Cursor(0, 0, 0, s),
            Cursor(0, 0, 0, s + size),
            {"block": s // BLOCK_SIZE, "size": size, "patterns": patterns, "target": target, "budget": budget},
        )


def _units(target: SearchTarget, patterns: Tuple[Pattern, ...], cursor: Cursor,
           budget: Optional[int]) -> Iterator[_Unit]:
    if target.predicate.pattern_only:
        return _pattern_units(patterns, cursor, budget)
    if target.mode is SearchMode.RANDOM:
        return _random_units(target, patterns, cursor, budget)
    return _exhaustive_units(target, patterns, cursor, budget)


def _dispatch(target: SearchTarget, batch: List[_Unit], parallel_config: Optional[Dict], debug: bool):
    jobs = [(target.predicate, unit.parameters) for unit in batch]
    if debug or parallel_config is None:
        # Run in the main thread for debugging
        return [joblib_handler(job) for job in jobs]
    with joblib.parallel_config(**parallel_config):
        jl = joblib.Parallel()
        return jl([joblib.delayed(joblib_handler)(job) for job in jobs])


def locate_instance(target: SearchTarget, cursor: Cursor) -> Tuple[Pattern, Optional[ColouredMultidigraph]]:
    """The instance a cursor points at, regenerated from the enumeration."""
    patterns = search_patterns(target)
    if target.predicate.pattern_only:
        return patterns[cursor.pattern], None
    if target.mode is SearchMode.RANDOM:
        block, offset = divmod(cursor.index, BLOCK_SIZE)
        return sample_block(patterns, target, block, offset + 1)[offset]
    pattern = patterns[cursor.pattern]
    for m, level, _ in digraph_levels(pattern, cursor.vertices, target.max_parallel, target.max_arcs):
        if m == cursor.arcs:
            return pattern, level[cursor.index]
    raise IndexError(f"Cursor {cursor} is outside the enumeration")


def build_witness(target: SearchTarget, pattern: Pattern, digraph: Optional[ColouredMultidigraph],
                  budget: Optional[int] = None) -> Witness:
    """Canonicalise a hit and re-run its predicate from scratch; only a confirmed hit becomes a Witness."""
    if digraph is not None:
        digraph, digraph_code = canonical_form(digraph)
    else:
        digraph_code = None
    evaluation = target.predicate.evaluate(pattern, digraph, budget)
    if evaluation.verdict is not Verdict.HIT:
        raise CertificateError(f"Witness for {target.kind} did not re-verify: {evaluation.transcript}")

    pattern_code = canonical_code(pattern)
    transcript = [f"target: {target.kind}", f"pattern code: {pattern_code.hex()}"]
    if digraph_code is not None:
        transcript.append(f"digraph code: {digraph_code.hex()}")
        transcript.append(f"vertices: {digraph.order}")
        transcript.append(f"arcs: {len(digraph.arcs)}")
    if target.kind == "no-path-kernel":
        bound = obstruction_vertex_bound(pattern)
        transcript.append(f"obstruction bound: {bound if bound is not None else 'none'}")
    transcript.extend(evaluation.transcript)
    transcript.append("re-verified: yes")
    return Witness(pattern, digraph, tuple(transcript), pattern_code, digraph_code)


def _certificate(target: SearchTarget, stats: SearchStats) -> Optional[NoneInBounds]:
    if target.mode is SearchMode.RANDOM:
        return None
    return NoneInBounds(
        target.kind, target.max_vertices, target.max_colours, target.max_parallel, target.max_arcs,
        canonical_code(target.pattern) if target.pattern is not None else None,
        stats.instances, stats.unknown,
    )


def _conclude(target: SearchTarget, state: SearchState, budget: Optional[int]) -> SearchOutcome:
    if state.status is SearchStatus.FOUND:
        pattern, digraph = locate_instance(target, state.cursor)
        return SearchOutcome(build_witness(target, pattern, digraph, budget), None, state)
    return SearchOutcome(None, _certificate(target, state.stats), state)


def run_search(
        target: SearchTarget,
        parallel_config: Optional[Dict] = None,
        checkpoint: Optional[str] = None,
        state: Optional[SearchState] = None,
        max_blocks: Optional[int] = None,
        budget: Optional[int] = None,
        debug: bool = False,
        show_progress: bool = False,
) -> SearchOutcome:
    """
    Search for the first instance satisfying the target's predicate.

    Exhaustive mode walks patterns by (colour count, canonical code) and digraphs by (vertex count, arc count,
    canonical code), so the first witness is well defined. Random mode draws `count` samples in blocks keyed by
    (seed, block). Work is split into fixed-size blocks that are evaluated in batches through joblib and merged in
    block order; a checkpoint is written after every batch when `checkpoint` is given.

    :param parallel_config: keyword arguments for joblib.parallel_config; None evaluates in-process
    :param state: checkpointed state to continue from
    :param max_blocks: stop with Interrupted once this many blocks ran in this call
    :raises Interrupted: on max_blocks or KeyboardInterrupt; the checkpoint is persisted first
    """
    if state is None:
        state = SearchState.initial(target)
    else:
        state.check_target(target)
    if state.finished:
        return _conclude(target, state, budget)

    patterns = search_patterns(target)
    if target.mode is SearchMode.EXHAUSTIVE:
        check_raw_space(exhaustive_estimate(target, patterns))

    n_jobs = (parallel_config or {}).get("n_jobs", 1)
    batch_size = BLOCKS_PER_WORKER * max(1, n_jobs if n_jobs and n_jobs > 0 else 1)
    units = _units(target, patterns, state.cursor, budget)
    stats = state.stats
    blocks_run = 0
    logger.info("Searching for %s from %s (%d patterns)", target.kind, state.cursor, len(patterns))

    bar = progress(None, desc=target.kind, enabled=show_progress)
    try:
        while True:
            batch = list(itertools.islice(units, batch_size))
            if not batch:
                break
            if max_blocks is not None and blocks_run >= max_blocks:
                raise Interrupted(f"Stopped after {blocks_run} blocks", checkpoint, state)
            results = _dispatch(target, batch, parallel_config, debug)
            for unit, result in zip(batch, results):
                stats = stats + SearchStats(result.evaluated, unit.dedup_hits, result.unknown, 1)
                if result.hit is not None:
                    state = state.advanced(unit.hit_cursor(result.hit, target), stats, SearchStatus.FOUND)
                    if checkpoint is not None:
                        save_state(state, checkpoint)
                    pattern, digraph = result.instance
                    witness = build_witness(target, pattern, digraph, budget)
                    logger.info("Witness found after %d instances", stats.instances)
                    return SearchOutcome(witness, None, state)
            state = state.advanced(batch[-1].end, stats)
            blocks_run += len(batch)
            bar.update(len(batch))
            if checkpoint is not None:
                save_state(state, checkpoint)
    except KeyboardInterrupt:
        if checkpoint is not None:
            save_state(state, checkpoint)
        raise Interrupted("Search interrupted", checkpoint, state)
    finally:
        bar.close()

    state = state.advanced(state.cursor, stats, SearchStatus.EXHAUSTED)
    if checkpoint is not None:
        save_state(state, checkpoint)
    certificate = _certificate(target, stats)
    logger.info("Search finished without witness after %d instances (%d unknown)", stats.instances, stats.unknown)
    return SearchOutcome(None, certificate, state)


def resume(state: Union[SearchState, str], target: Optional[SearchTarget] = None, **kwargs) -> SearchOutcome:
    """
    Continue a checkpointed search. `state` is a SearchState or a checkpoint path; a path keeps being used as the
    checkpoint. Passing `target` checks the checkpoint belongs to it.
    """
    if isinstance(state, str):
        kwargs.setdefault("checkpoint", state)
        state = load_state(state)
    if target is not None:
        state.check_target(target)
    return run_search(state.target, state=state, **kwargs)
