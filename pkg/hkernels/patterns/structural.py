from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from ..entities import is_reflexive

if TYPE_CHECKING:
    from typing import Iterator, Optional, Tuple
    from ..entities import Pattern

logger = logging.getLogger(__name__)


class Panchromatic(str, Enum):
    YES = "yes"
    NO = "no"
    OPEN_F1 = "open"


class PartitionCase(str, Enum):
    NO_ARCS_BETWEEN = "no-arcs-between"
    FORWARD_ONLY = "forward-only"
    FORWARD_WITH_BACK = "forward-with-back"


@dataclass(frozen=True)
class StructuralPartition:
    first: Tuple[str, ...]
    second: Tuple[str, ...]
    case: PartitionCase


def _bipartitions(n: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Ordered (V1, V2) with V1 nonempty; V2 may be empty."""
    for mask in range(1, 1 << n):
        first = tuple(i for i in range(n) if mask >> i & 1)
        second = tuple(i for i in range(n) if not mask >> i & 1)
        yield first, second


def _case(m: np.ndarray, first, second, f1_is_panchromatic: bool) -> Optional[PartitionCase]:
    if not np.all(m[np.ix_(first, first)]) or not np.all(m[np.ix_(second, second)]):
        return None
    forward = m[np.ix_(first, second)]
    back = m[np.ix_(second, first)]
    if not np.any(forward) and not np.any(back):
        return PartitionCase.NO_ARCS_BETWEEN
    if np.all(forward) and not np.any(back):
        return PartitionCase.FORWARD_ONLY
    if np.all(forward) and f1_is_panchromatic:
        return PartitionCase.FORWARD_WITH_BACK
    return None


def structural_partition(p: Pattern, f1_is_panchromatic: bool) -> Optional[StructuralPartition]:
    """
    First partition (V1, V2) into complete reflexive parts with no arcs between them, or every V1 -> V2 arc and no
    back arc, or (only when F1 is assumed panchromatic by paths) every V1 -> V2 arc and any back arcs.
    """
    if not is_reflexive(p):
        return None
    m = p.matrix
    for first, second in _bipartitions(len(p)):
        case = _case(m, first, second, f1_is_panchromatic)
        if case is not None:
            return StructuralPartition(
                tuple(p.colours[i] for i in first), tuple(p.colours[i] for i in second), case
            )
    return None


def structural_panchromatic(p: Pattern, f1_is_panchromatic: bool) -> Panchromatic:
    return Panchromatic.YES if structural_partition(p, f1_is_panchromatic) is not None else Panchromatic.NO


def walk_panchromatic(p: Pattern) -> Panchromatic:
    """Walk form of the partition test. F1 is panchromatic by walks, so back arcs are always admitted."""
    return structural_panchromatic(p, f1_is_panchromatic=True)
