from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from ..entities import Pattern, induced_subpattern, is_reflexive
from ..errors import NotReflexive, NotTwins

if TYPE_CHECKING:
    from typing import List, Optional, Sequence, Set, Tuple

logger = logging.getLogger(__name__)


def _are_twins(p: Pattern, i: int, j: int) -> bool:
    m = p.matrix
    return bool(np.array_equal(m[i], m[j]) and np.array_equal(m[:, i], m[:, j]))


def true_twins(p: Pattern) -> Set[Tuple[str, str]]:
    """Pairs (x, y), x before y, with N+(x) = N+(y) and N-(x) = N-(y), loops included."""
    if not is_reflexive(p):
        raise NotReflexive("True twins are defined for reflexive patterns")
    n = len(p)
    return {(p.colours[i], p.colours[j]) for i in range(n) for j in range(i + 1, n) if _are_twins(p, i, j)}


def contract_true_twins(p: Pattern, x: str, y: str) -> Pattern:
    """H_xy: merge y into x. For true twins this is the induced subpattern on V_H - {y}."""
    i, j = p.index(x), p.index(y)
    if i == j or not _are_twins(p, i, j):
        raise NotTwins(f"{x!r} and {y!r} are not true twins")
    return induced_subpattern(p, [c for c in p.colours if c != y])


def _copy_names(p: Pattern, v: str, k: int, names: Optional[Sequence[str]]) -> List[str]:
    if names is not None:
        if len(names) != k:
            raise ValueError(f"Expected {k} names for the copies of {v!r}, got {len(names)}")
        return list(names)
    taken = set(p.colours) - {v}
    result = []
    for i in range(1, k + 1):
        name = f"{v}{i}"
        while name in taken:
            name += "'"
        taken.add(name)
        result.append(name)
    return result


def blow_up(p: Pattern, v: str, k: int, names: Optional[Sequence[str]] = None) -> Pattern:
    """Replace colour v by k copies that are mutual true twins; the copies take v's place in colour order."""
    position = p.index(v)
    if k < 1:
        raise ValueError("Blow-up needs at least one copy")
    if k == 1 and names is None:
        return p
    copies = _copy_names(p, v, k, names)
    source = []
    colours = []
    for i, c in enumerate(p.colours):
        if i == position:
            colours.extend(copies)
            source.extend([i] * k)
        else:
            colours.append(c)
            source.append(i)
    matrix = p.matrix[np.ix_(source, source)]
    return Pattern.from_matrix(colours, matrix)
