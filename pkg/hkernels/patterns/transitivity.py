from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from ..canonical import canonical_code
from ..entities import induced_subpattern

if TYPE_CHECKING:
    from typing import Iterable, Optional, Tuple
    from ..entities import Pattern

logger = logging.getLogger(__name__)


def _violations(p: Pattern) -> np.ndarray:
    m = p.matrix.astype(np.int64)
    return ((m @ m) > 0) & ~p.matrix


def is_transitive(p: Pattern) -> bool:
    """(a, b) and (b, c) in A_H imply (a, c) in A_H."""
    return not bool(np.any(_violations(p)))


def is_nontransitive_triple(p: Pattern) -> Optional[Tuple[str, str, str]]:
    """The first (a, b, c) in colour order with (a, b), (b, c) arcs and (a, c) missing."""
    m = p.matrix
    for a, c in zip(*np.nonzero(_violations(p))):
        b = next(b for b in range(len(p)) if m[a, b] and m[b, c])
        return p.colours[a], p.colours[b], p.colours[c]
    return None


def is_induced_subpattern(sub: Pattern, p: Pattern) -> bool:
    """True if some induced subpattern of `p` is isomorphic to `sub`."""
    if len(sub) > len(p):
        return False
    code = canonical_code(sub)
    return any(
        canonical_code(induced_subpattern(p, colours)) == code
        for colours in itertools.combinations(p.colours, len(sub))
    )


def is_family_free(p: Pattern, family: Iterable[Pattern]) -> bool:
    return not any(is_induced_subpattern(member, p) for member in family)


@lru_cache(maxsize=None)
def minimal_nontransitive_family() -> Tuple[Pattern, ...]:
    """
    Canonical reflexive patterns that are not transitive while every proper induced subpattern is.
    Reflexive patterns on at most two colours are always transitive, so every member has exactly three colours.
    """
    from ..enumeration import enumerate_patterns

    family = []
    for p in enumerate_patterns(3, min_colours=3):
        if is_transitive(p):
            continue
        if all(is_transitive(induced_subpattern(p, s)) for s in itertools.combinations(p.colours, 2)):
            family.append(p)
    logger.debug("Minimal non-transitive family has %d members", len(family))
    return tuple(family)
