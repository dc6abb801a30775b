from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from .canonical import canonical_counts, canonical_form, colour_name, vertex_name
from .entities import ColouredMultidigraph, Pattern
from .errors import BoundTooLarge

if TYPE_CHECKING:
    from typing import Dict, Iterator, List, Optional, Tuple

logger = logging.getLogger(__name__)

RAW_SPACE_LIMIT = 10**10
MAX_PATTERN_COLOURS = 5
MAX_LOOPED_PATTERN_COLOURS = 4


def raw_pattern_count(colours: int, reflexive: bool = True) -> int:
    """
    Patterns on labelled colours. Reflexive ones choose each non-loop ordered pair; otherwise loops are free too.
    """
    if reflexive:
        return 2 ** (colours * (colours - 1))
    return 2 ** (colours * colours)


def raw_digraph_count(vertices: int, colours: int, max_parallel: int, max_arcs: Optional[int] = None) -> int:
    """
    Labelled coloured multidigraphs on `vertices` vertices with at most `max_parallel` arcs per ordered pair and
    colour, and at most `max_arcs` arcs in total.
    """
    slots = vertices * (vertices - 1) * colours
    top = slots * max_parallel if max_arcs is None else min(max_arcs, slots * max_parallel)
    # Coefficients of (1 + x + ... + x^q)^slots truncated at x^top
    counts = [1] + [0] * top
    for _ in range(slots):
        updated = [0] * (top + 1)
        for total, ways in enumerate(counts):
            if not ways:
                continue
            for extra in range(max_parallel + 1):
                if total + extra > top:
                    break
                updated[total + extra] += ways
        counts = updated
    return sum(counts)


def check_raw_space(estimate: int, limit: int = RAW_SPACE_LIMIT):
    if estimate > limit:
        raise BoundTooLarge(
            f"Raw search space of {estimate:.3e} instances exceeds the exhaustive limit of {limit:.0e}; "
            f"tighten the bounds or use random mode",
            estimate,
        )


def _pattern_from_matrix(matrix: np.ndarray) -> Pattern:
    return Pattern.from_matrix([colour_name(i) for i in range(matrix.shape[0])], matrix)


def _grow_patterns(start: np.ndarray, pairs: List[Tuple[int, int]]) -> Tuple[Pattern, ...]:
    """Every class reachable from `start` by adding arcs from `pairs`, sorted by canonical code."""
    form, code = canonical_form(_pattern_from_matrix(start))
    found: Dict = {code: form}
    level = [form]
    while level:
        following: Dict = {}
        for p in level:
            matrix = p.matrix
            for a, b in pairs:
                if matrix[a, b]:
                    continue
                grown = matrix.copy()
                grown[a, b] = True
                form, code = canonical_form(_pattern_from_matrix(grown))
                if code not in found and code not in following:
                    following[code] = form
        found.update(following)
        level = list(following.values())
    return tuple(found[code] for code in sorted(found))


@lru_cache(maxsize=None)
def reflexive_patterns(colours: int) -> Tuple[Pattern, ...]:
    """Canonical reflexive patterns on exactly `colours` colours, sorted by canonical code."""
    if colours > MAX_PATTERN_COLOURS:
        raise BoundTooLarge(f"Pattern enumeration supports at most {MAX_PATTERN_COLOURS} colours", None)
    pairs = [(a, b) for a in range(colours) for b in range(colours) if a != b]
    patterns = _grow_patterns(np.eye(colours, dtype=bool), pairs)
    logger.debug("%d reflexive pattern classes on %d colours", len(patterns), colours)
    return patterns


@lru_cache(maxsize=None)
def all_patterns(colours: int) -> Tuple[Pattern, ...]:
    """Canonical patterns on exactly `colours` colours with loops optional, sorted by canonical code."""
    if colours > MAX_LOOPED_PATTERN_COLOURS:
        raise BoundTooLarge(
            f"Enumeration of patterns with optional loops supports at most {MAX_LOOPED_PATTERN_COLOURS} colours", None
        )
    pairs = [(a, b) for a in range(colours) for b in range(colours)]
    patterns = _grow_patterns(np.zeros((colours, colours), dtype=bool), pairs)
    logger.debug("%d pattern classes on %d colours", len(patterns), colours)
    return patterns


def enumerate_patterns(max_colours: int, min_colours: int = 1, reflexive: bool = True) -> Iterator[Pattern]:
    """
    Each pattern class with min_colours..max_colours colours exactly once, by colour count and then code.
    With `reflexive=False` patterns without some or all loops are included.
    """
    limit = MAX_PATTERN_COLOURS if reflexive else MAX_LOOPED_PATTERN_COLOURS
    if max_colours > limit:
        raise BoundTooLarge(f"Pattern enumeration supports at most {limit} colours", None)
    source = reflexive_patterns if reflexive else all_patterns
    for colours in range(max(min_colours, 1), max_colours + 1):
        yield from source(colours)


def digraph_from_counts(pattern: Pattern, counts: np.ndarray) -> ColouredMultidigraph:
    n = counts.shape[0]
    arcs = []
    for t, h, c in itertools.product(range(n), range(n), range(len(pattern))):
        arcs.extend([(vertex_name(t), vertex_name(h), pattern.colours[c])] * int(counts[t, h, c]))
    return ColouredMultidigraph([vertex_name(i) for i in range(n)], arcs, pattern)


def digraph_levels(
        pattern: Pattern, vertices: int, max_parallel: int = 1, max_arcs: Optional[int] = None
) -> Iterator[Tuple[int, List[ColouredMultidigraph], int]]:
    """
    Canonical coloured digraphs on exactly `vertices` vertices, one arc count at a time.

    Level m is grown from level m - 1 by adding one arc in every admissible slot and keeping one representative
    per canonical code. Yields (m, representatives sorted by code, candidates generated before deduplication).
    Candidates are canonicalised as count tensors; digraphs are only built for the representatives.
    """
    k = len(pattern)
    slots = [(t, h, c) for t in range(vertices) for h in range(vertices) if t != h for c in range(k)]
    top = len(slots) * max_parallel if max_arcs is None else min(max_arcs, len(slots) * max_parallel)

    code, counts = canonical_counts(np.zeros((vertices, vertices, k), dtype=np.uint8))
    level = {code: counts}
    generated = 1
    m = 0
    while level:
        yield m, [digraph_from_counts(pattern, level[c]) for c in sorted(level)], generated
        if m == top:
            return
        following: Dict = {}
        generated = 0
        for counts in level.values():
            for t, h, c in slots:
                if counts[t, h, c] >= max_parallel:
                    continue
                grown = counts.copy()
                grown[t, h, c] += 1
                code, relabelled = canonical_counts(grown)
                generated += 1
                if code not in following:
                    following[code] = relabelled
        level = following
        m += 1


def enumerate_coloured_digraphs(
        pattern: Pattern,
        max_vertices: int,
        max_parallel: int = 1,
        min_vertices: int = 1,
        max_arcs: Optional[int] = None,
        limit: int = RAW_SPACE_LIMIT,
) -> Iterator[ColouredMultidigraph]:
    """Each vertex-relabelling class once, ordered by (vertex count, arc count, canonical code)."""
    if max_vertices < 1 or max_parallel < 1 or min_vertices < 1:
        raise ValueError("Vertex and parallel-arc bounds must be positive")
    estimate = sum(
        raw_digraph_count(n, len(pattern), max_parallel, max_arcs) for n in range(min_vertices, max_vertices + 1)
    )
    check_raw_space(estimate, limit)
    for n in range(min_vertices, max_vertices + 1):
        for _, level, _ in digraph_levels(pattern, n, max_parallel, max_arcs):
            yield from level


def brute_force_digraphs(pattern: Pattern, vertices: int, max_parallel: int = 1) -> Iterator[ColouredMultidigraph]:
    """Every labelled coloured digraph on `vertices` vertices, without deduplication."""
    k = len(pattern)
    slots = [(t, h, c) for t in range(vertices) for h in range(vertices) if t != h for c in range(k)]
    for multiplicities in itertools.product(range(max_parallel + 1), repeat=len(slots)):
        counts = np.zeros((vertices, vertices, k), dtype=np.uint8)
        for (t, h, c), times in zip(slots, multiplicities):
            counts[t, h, c] = times
        yield digraph_from_counts(pattern, counts)
