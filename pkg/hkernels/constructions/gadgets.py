from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from ..entities import ColouredMultidigraph
from ..errors import UnknownColour
from .gadgetmap import ConstructionKind, GadgetMap

if TYPE_CHECKING:
    from typing import Dict, List, Optional, Set, Tuple
    from ..entities import Pattern

logger = logging.getLogger(__name__)

GADGET_COLOURS = ("x", "y", "z", "w")


def _transition_targets(d: ColouredMultidigraph) -> Dict[str, List[str]]:
    """For each middle vertex s of a path (r, s, t) coloured (x, w), the heads t in arc order."""
    targets: Dict[str, List[str]] = {}
    for s in d.vertices:
        si = d.index(s)
        tails = {d.arcs[a].tail for a in d.in_arcs(si) if d.arcs[a].colour == "x"}
        if not tails:
            continue
        heads = []
        for a in d.out_arcs(si):
            arc = d.arcs[a]
            if arc.colour == "w" and tails - {arc.head} and arc.head not in heads:
                heads.append(arc.head)
        if heads:
            targets[s] = heads
    return targets


def _gadget(d: ColouredMultidigraph, pattern: Pattern, kind: ConstructionKind,
            forward_colours: Tuple[str, ...]) -> Tuple[ColouredMultidigraph, GadgetMap]:
    for colour in d.pattern.colours:
        if colour not in GADGET_COLOURS:
            raise UnknownColour(f"Gadget digraphs are coloured with {GADGET_COLOURS}, got {colour!r}")
    for colour in GADGET_COLOURS:
        pattern.index(colour)

    taken: Set[str] = set(d.vertices)
    vertices = list(d.vertices)
    arcs = [tuple(a) for a in d.arcs]
    hats = []
    correspondence = {}
    for s, heads in _transition_targets(d).items():
        hat = f"{s}^"
        while hat in taken:
            hat += "'"
        taken.add(hat)
        vertices.append(hat)
        hats.append(hat)
        correspondence[hat] = (s,)
        arcs.extend((s, hat, colour) for colour in forward_colours)
        arcs.append((hat, s, "y"))
        arcs.extend((hat, t, "w") for t in heads)

    derived = ColouredMultidigraph(vertices, arcs, pattern)
    gadget_map = GadgetMap(kind, d.vertices, added={"S_hat": tuple(hats)}, correspondence=correspondence)
    logger.debug("%s gadget added %d vertices", kind.value, len(hats))
    return derived, gadget_map


def gadget_f4(d: ColouredMultidigraph, pattern: Optional[Pattern] = None) -> Tuple[ColouredMultidigraph, GadgetMap]:
    """
    For every vertex s in the middle of an (x, w)-coloured path (r, s, t), add s_hat with arcs s -> s_hat coloured
    y and w, s_hat -> s coloured y, and s_hat -> t coloured w. The result is coloured with the F4 gadget's H.
    """
    if pattern is None:
        from ..patterns.named import f4_gadget_patterns
        pattern = f4_gadget_patterns()[0]
    return _gadget(d, pattern, ConstructionKind.F4, ("y", "w"))


def gadget_f5(d: ColouredMultidigraph, pattern: Optional[Pattern] = None) -> Tuple[ColouredMultidigraph, GadgetMap]:
    """As gadget_f4, with a single y-coloured arc from s to s_hat."""
    if pattern is None:
        from ..patterns.named import f5_gadget_patterns
        pattern = f5_gadget_patterns()[0]
    return _gadget(d, pattern, ConstructionKind.F5, ("y",))
