from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import networkx as nx

from ..entities import complement, is_reflexive

if TYPE_CHECKING:
    from typing import List, Optional, Tuple
    from ..entities import Pattern

logger = logging.getLogger(__name__)


class B2Reason(str, Enum):
    MEMBER = "member"
    NOT_REFLEXIVE = "not-reflexive"
    ODD_CYCLE = "odd-cycle-in-complement"


@dataclass(frozen=True)
class B2Classification:
    member: bool
    reason: B2Reason
    cycle: Optional[Tuple[str, ...]] = None


def complement_digraph(p: Pattern) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(p.colours)
    g.add_edges_from(complement(p).arc_list())
    return g


def _shortest_odd_cycle(g: nx.DiGraph, start: str) -> Optional[List[str]]:
    """Shortest odd closed directed walk through `start`; being shortest, it is a cycle."""
    parent = {(start, 0): None}
    queue = deque([(start, 0)])
    while queue:
        node, parity = queue.popleft()
        for succ in g.successors(node):
            state = (succ, 1 - parity)
            if state in parent:
                continue
            parent[state] = (node, parity)
            if state == (start, 1):
                cycle = []
                cursor = parent[state]
                while cursor is not None:
                    cycle.append(cursor[0])
                    cursor = parent[cursor]
                return cycle[::-1]
            queue.append(state)
    return None


def complement_odd_cycle(p: Pattern) -> Optional[Tuple[str, ...]]:
    """A shortest odd directed cycle of the complement, listed without repeating its first colour."""
    g = complement_digraph(p)
    best = None
    for component in nx.strongly_connected_components(g):
        if len(component) < 2:
            continue
        sub = g.subgraph(component)
        if nx.is_bipartite(sub.to_undirected()):
            continue
        for start in sorted(component, key=p.index):
            cycle = _shortest_odd_cycle(sub, start)
            if cycle is not None and (best is None or len(cycle) < len(best)):
                best = cycle
    return tuple(best) if best is not None else None


def classify_b2(p: Pattern) -> B2Classification:
    if not is_reflexive(p):
        return B2Classification(False, B2Reason.NOT_REFLEXIVE)
    cycle = complement_odd_cycle(p)
    if cycle is not None:
        return B2Classification(False, B2Reason.ODD_CYCLE, cycle)
    return B2Classification(True, B2Reason.MEMBER)


def in_B2(p: Pattern) -> bool:
    return classify_b2(p).member


def complement_layers(p: Pattern) -> List[Tuple[str, ...]]:
    """
    Strong components of the complement, each taken as an initial component of what remains.
    Ties go to the component holding the smallest colour index.
    """
    g = complement_digraph(p)
    condensed = nx.condensation(g)
    members = condensed.graph["mapping"]
    first_index = {
        node: min(p.index(c) for c in data["members"]) for node, data in condensed.nodes(data=True)
    }
    order = nx.lexicographical_topological_sort(condensed, key=lambda node: first_index[node])
    layers = []
    for node in order:
        colours = [c for c in p.colours if members[c] == node]
        layers.append(tuple(colours))
    return layers


def layer_parts(p: Pattern, layer: Tuple[str, ...]) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    """Bipartition of a complement layer; the second part is empty for a single colour."""
    if len(layer) == 1:
        return layer, ()
    g = complement_digraph(p).subgraph(layer).to_undirected()
    side = nx.bipartite.color(g)
    first = side[layer[0]]
    return (
        tuple(c for c in layer if side[c] == first),
        tuple(c for c in layer if side[c] != first),
    )
