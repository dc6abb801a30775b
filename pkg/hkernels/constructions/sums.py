from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from ..entities import ColouredMultidigraph, Pattern
from ..errors import PatternMismatch
from .gadgetmap import ConstructionKind, GadgetMap

if TYPE_CHECKING:
    from typing import Iterable, Optional, Set, Tuple

logger = logging.getLogger(__name__)

SUM_COLOUR = "c0"


def _fresh(name: str, taken: Set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def linear_sum_patterns(h1: Pattern, h2: Pattern) -> Pattern:
    """H1 • H2: both patterns plus every arc from a colour of H1 to a colour of H2. Clashing H2 colours get primes."""
    taken = set(h1.colours)
    renamed = {}
    for c in h2.colours:
        new = _fresh(c, taken)
        taken.add(new)
        renamed[c] = new
    h2 = h2.rename(renamed)
    n1, n2 = len(h1), len(h2)
    matrix = np.zeros((n1 + n2, n1 + n2), dtype=bool)
    matrix[:n1, :n1] = h1.matrix
    matrix[n1:, n1:] = h2.matrix
    matrix[:n1, n1:] = True
    return Pattern.from_matrix(h1.colours + h2.colours, matrix)


def is_isolated_reflexive(p: Pattern, colour: str) -> bool:
    i = p.index(colour)
    row, column = p.matrix[i].copy(), p.matrix[:, i].copy()
    row[i] = column[i] = False
    return bool(p.matrix[i, i]) and not row.any() and not column.any()


def sum_colour(p: Pattern, c0: Optional[str] = None) -> Tuple[Pattern, str]:
    """
    Colour for the cross arcs of a linear sum. An explicit c0 must be in the pattern. By default an isolated
    reflexive colour named c0 is appended, or reused when the pattern already carries one.
    """
    if c0 is not None:
        p.index(c0)
        return p, c0
    candidate = SUM_COLOUR
    while candidate in p and not is_isolated_reflexive(p, candidate):
        candidate += "'"
    if candidate in p:
        return p, candidate
    return Pattern(p.colours + (candidate,), p.arc_list() + [(candidate, candidate)]), candidate


def linear_sum_with_map(
        d1: ColouredMultidigraph, d2: ColouredMultidigraph, c0: Optional[str] = None
) -> Tuple[ColouredMultidigraph, GadgetMap]:
    """
    D1 • D2 with cross arcs coloured c0. Vertices of D1 that clash with D2 are renamed, so D2 keeps its names and
    a kernel of the sum pulls back to D2 by intersection.
    """
    if d1.pattern != d2.pattern:
        raise PatternMismatch("Both summands must be coloured with the same pattern")
    pattern, colour = sum_colour(d1.pattern, c0)

    taken = set(d2.vertices)
    renamed = {}
    for v in d1.vertices:
        new = _fresh(v, taken)
        taken.add(new)
        renamed[v] = new

    vertices = [renamed[v] for v in d1.vertices] + list(d2.vertices)
    arcs = [(renamed[a.tail], renamed[a.head], a.colour) for a in d1.arcs]
    arcs.extend(d2.arcs)
    arcs.extend((renamed[u], v, colour) for u in d1.vertices for v in d2.vertices)
    result = ColouredMultidigraph(vertices, arcs, pattern)
    gadget_map = GadgetMap(
        ConstructionKind.LINEAR_SUM,
        d2.vertices,
        added={"V1": tuple(renamed[v] for v in d1.vertices)},
        correspondence={renamed[v]: (v,) for v in d1.vertices},
    )
    logger.debug("Linear sum of %d and %d vertices with cross colour %s", d1.order, d2.order, colour)
    return result, gadget_map


def linear_sum_digraphs(d1: ColouredMultidigraph, d2: ColouredMultidigraph,
                        c0: Optional[str] = None) -> ColouredMultidigraph:
    return linear_sum_with_map(d1, d2, c0)[0]


def single_vertex(pattern: Pattern, name: str = "w") -> ColouredMultidigraph:
    return ColouredMultidigraph([name], [], pattern)


def empty_digraph(pattern: Pattern, vertices: Iterable[str] = ()) -> ColouredMultidigraph:
    return ColouredMultidigraph(vertices, [], pattern)
