from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from ..entities import ColouredMultidigraph, dedupe
from ..errors import UnknownColour
from .gadgetmap import ConstructionKind, GadgetMap

if TYPE_CHECKING:
    from typing import Dict, List, Set, Tuple

logger = logging.getLogger(__name__)

F1_COLOURS = ("r", "g", "b")


def _fresh(name: str, taken: Set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def f1_simplify(d: ColouredMultidigraph) -> Tuple[ColouredMultidigraph, GadgetMap]:
    """
    Remove parallel arcs from an F1-coloured multidigraph while keeping F1-path reachability between its vertices.

    Same-coloured duplicates are collapsed first. A pair u -> v carrying an r arc keeps a single r arc. A pair
    carrying exactly g and b becomes u -> v coloured g plus u -> z1 (b), z1 -> z2 (g), z1 -> v (b); the z2
    vertices are sinks.
    """
    for colour in d.pattern.colours:
        if colour not in F1_COLOURS:
            raise UnknownColour(f"F1 digraphs are coloured with {F1_COLOURS}, got {colour!r}")

    d = dedupe(d)
    by_pair: Dict[Tuple[str, str], List[str]] = {}
    for arc in d.arcs:
        by_pair.setdefault((arc.tail, arc.head), []).append(arc.colour)

    taken = set(d.vertices)
    arcs = []
    z1, z2 = [], []
    correspondence = {}
    done = set()
    for arc in d.arcs:
        pair = (arc.tail, arc.head)
        colours = by_pair[pair]
        if len(colours) == 1:
            arcs.append(tuple(arc))
            continue
        if pair in done:
            continue
        done.add(pair)
        u, v = pair
        if "r" in colours:
            arcs.append((u, v, "r"))
            continue
        first = _fresh(f"z1_{u}_{v}", taken)
        second = _fresh(f"z2_{u}_{v}", taken)
        z1.append(first)
        z2.append(second)
        correspondence[first] = correspondence[second] = (u, v)
        arcs.extend([(u, v, "g"), (u, first, "b"), (first, second, "g"), (first, v, "b")])

    simplified = ColouredMultidigraph(list(d.vertices) + z1 + z2, arcs, d.pattern)
    gadget_map = GadgetMap(
        ConstructionKind.F1_SIMPLIFY, d.vertices, added={"Z1": tuple(z1), "Z2": tuple(z2)},
        correspondence=correspondence,
    )
    logger.debug("F1 simplification added %d vertex pairs", len(z1))
    return simplified, gadget_map


def lift_kernel(k, gadget_map: GadgetMap):
    """A kernel K of the original digraph extends to K + Z2 in the simplified one."""
    return frozenset(k) | frozenset(gadget_map.added_vertices("Z2"))
