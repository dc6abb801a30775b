from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ..errors import CertificateError

if TYPE_CHECKING:
    from typing import Optional, Tuple
    from ..entities import Pattern

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ObstructionWitness:
    """
    A walk (x_0, ..., x_k) in H where every x_j with j < k misses some colour c_j, and (x_k, x_0) is not an arc.
    Such a walk rules the pattern out of the panchromatic-by-paths class.
    """
    walk: Tuple[str, ...]
    blockers: Tuple[str, ...]

    @property
    def closing(self) -> Tuple[str, str]:
        return self.walk[-1], self.walk[0]

    def verify(self, p: Pattern):
        if len(self.blockers) != len(self.walk) - 1:
            raise CertificateError("Obstruction needs one blocker per non-final walk colour")
        for first, second in zip(self.walk, self.walk[1:]):
            if not p.has_arc(first, second):
                raise CertificateError(f"({first}, {second}) is not an arc of the pattern")
        for colour, blocker in zip(self.walk, self.blockers):
            if p.has_arc(colour, blocker):
                raise CertificateError(f"Blocker {blocker} of {colour} is an arc of the pattern")
        if p.has_arc(*self.closing):
            raise CertificateError(f"Closing pair {self.closing} is an arc of the pattern")


def find_obstruction(p: Pattern) -> Optional[ObstructionWitness]:
    """
    Shortest obstruction walk, by breadth-first search over (current colour, start colour). A loopless colour is an
    obstruction on its own (walk of length zero).
    """
    m = p.matrix
    n = len(p)
    blocked = ~np.all(m, axis=1)
    best = None
    for start in range(n):
        parent = {start: None}
        queue = deque([start])
        found = None
        while queue:
            current = queue.popleft()
            if not m[current, start]:
                found = current
                break
            if not blocked[current]:
                continue
            for nxt in np.flatnonzero(m[current]).tolist():
                if nxt not in parent:
                    parent[nxt] = current
                    queue.append(nxt)
        if found is None:
            continue
        walk = []
        cursor = found
        while cursor is not None:
            walk.append(cursor)
            cursor = parent[cursor]
        walk.reverse()
        if best is None or len(walk) < len(best):
            best = walk

    if best is None:
        return None
    blockers = tuple(p.colours[int(np.flatnonzero(~m[x])[0])] for x in best[:-1])
    witness = ObstructionWitness(tuple(p.colours[x] for x in best), blockers)
    witness.verify(p)
    logger.debug("Obstruction walk %s", witness.walk)
    return witness
