from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ..enumeration import digraph_from_counts
from .targets import Verdict

if TYPE_CHECKING:
    from typing import List, Optional, Sequence, Tuple
    from ..entities import ColouredMultidigraph, Pattern
    from .targets import SearchPredicate, SearchTarget

    Instance = Tuple[Pattern, Optional[ColouredMultidigraph]]

logger = logging.getLogger(__name__)

BLOCK_SIZE = 64


@dataclass(frozen=True)
class BlockResult:
    """Outcome of one block. Counts stop at the first hit so that merged statistics do not depend on sharding."""
    block: int
    evaluated: int
    unknown: int
    hit: Optional[int] = None
    instance: Optional[Instance] = None
    transcript: Tuple[str, ...] = ()


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, block], dtype=np.uint64)))


def random_instance(rng: np.random.Generator, patterns: Sequence[Pattern], target: SearchTarget) -> Instance:
    pattern = patterns[int(rng.integers(len(patterns)))]
    n = int(rng.integers(target.min_vertices, target.max_vertices + 1))
    k = len(pattern)
    present = rng.random((n, n, k)) < target.density
    multiplicity = rng.integers(1, target.max_parallel + 1, size=(n, n, k))
    counts = np.where(present, multiplicity, 0)
    diagonal = np.arange(n)
    counts[diagonal, diagonal, :] = 0
    if target.max_arcs is not None:
        flat = counts.reshape(-1)
        before = np.cumsum(flat) - flat
        counts = np.clip(target.max_arcs - before, 0, flat).reshape(counts.shape)
    return pattern, digraph_from_counts(pattern, counts.astype(np.uint8))


def sample_block(patterns: Sequence[Pattern], target: SearchTarget, block: int, size: int) -> List[Instance]:
    rng = block_generator(target.seed, block)
    return [random_instance(rng, patterns, target) for _ in range(size)]


def evaluate_block(predicate: SearchPredicate, block: int, instances: Sequence[Instance],
                   budget: Optional[int] = None) -> BlockResult:
    unknown = 0
    for offset, (pattern, digraph) in enumerate(instances):
        evaluation = predicate.evaluate(pattern, digraph, budget)
        if evaluation.verdict is Verdict.UNKNOWN:
            unknown += 1
        elif evaluation.verdict is Verdict.HIT:
            logger.debug("Block %d hit at offset %d", block, offset)
            return BlockResult(block, offset + 1, unknown, offset, (pattern, digraph), evaluation.transcript)
    return BlockResult(block, len(instances), unknown)


def joblib_handler(args):
    # Joblib delayed function expect only one argument, so we need to unpack the arguments
    predicate, parameters = args
    instances = parameters.get("instances")
    if instances is None:
        # Random blocks are sampled inside the worker from their (seed, block) key
        instances = sample_block(parameters["patterns"], parameters["target"], parameters["block"],
                                 parameters["size"])
    return evaluate_block(predicate, parameters["block"], instances, parameters.get("budget"))
