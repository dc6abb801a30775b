from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import networkx as nx

from .entities import is_reflexive
from .errors import BudgetExceeded, CertificateError, NotReflexive, OddCycleInComplement
from .reachability import ReachDigraph, Semantics, reach_digraph, reachable_from

if TYPE_CHECKING:
    from typing import FrozenSet, Iterable, List, Optional, Tuple, Union
    from .entities import ColouredMultidigraph

logger = logging.getLogger(__name__)


class KernelStatus(str, Enum):
    FOUND = "found"
    NONE_EXISTS = "none-exists"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class KernelReport:
    status: KernelStatus
    witness: Optional[Tuple[str, ...]] = None
    certificate: Optional[str] = None
    budget: Optional[int] = None
    candidates: int = 0

    @property
    def found(self) -> bool:
        return self.status is KernelStatus.FOUND


def _checked(d: ColouredMultidigraph, s: Iterable[str]) -> FrozenSet[str]:
    s = frozenset(s)
    for v in s:
        d.index(v)
    return s


def _ordered(vertices: Tuple[str, ...], s: Iterable[str]) -> Tuple[str, ...]:
    s = set(s)
    return tuple(v for v in vertices if v in s)


def _least(vertices: Tuple[str, ...], candidates: Iterable[FrozenSet[str]]):
    """Least by (size, sorted vertex indices)."""
    position = {v: i for i, v in enumerate(vertices)}
    return min(candidates, key=lambda s: (len(s), sorted(position[v] for v in s)), default=None)


def is_independent(d: ColouredMultidigraph, s: Iterable[str], semantics: Union[str, Semantics] = Semantics.PATH,
                   budget: Optional[int] = None) -> bool:
    s = _checked(d, s)
    return all(not (reachable_from(d, u, semantics, budget) & s) for u in s)


def is_absorbent(d: ColouredMultidigraph, s: Iterable[str], semantics: Union[str, Semantics] = Semantics.PATH,
                 budget: Optional[int] = None) -> bool:
    s = _checked(d, s)
    return all(reachable_from(d, x, semantics, budget) & s for x in d.vertices if x not in s)


def is_kernel(d: ColouredMultidigraph, s: Iterable[str], semantics: Union[str, Semantics] = Semantics.PATH,
              budget: Optional[int] = None) -> bool:
    return is_independent(d, s, semantics, budget) and is_absorbent(d, s, semantics, budget)


def is_plain_independent(d: ColouredMultidigraph, s: Iterable[str]) -> bool:
    s = _checked(d, s)
    return not any(a.tail in s and a.head in s for a in d.arcs)


def is_independent_H_absorbent(d: ColouredMultidigraph, s: Iterable[str], budget: Optional[int] = None) -> bool:
    return is_plain_independent(d, s) and is_absorbent(d, s, Semantics.PATH, budget)


def _maximal_independent_sets(vertices: Tuple[str, ...], edges: Iterable[Tuple[str, str]]) -> List[FrozenSet[str]]:
    if not vertices:
        return [frozenset()]
    underlying = nx.Graph()
    underlying.add_nodes_from(vertices)
    underlying.add_edges_from((u, v) for u, v in edges if u != v)
    return [frozenset(c) for c in nx.find_cliques(nx.complement(underlying))]


def _absorbs(r: ReachDigraph, s: FrozenSet[str]) -> bool:
    successors = {}
    for u, v in r.arcs:
        successors.setdefault(u, set()).add(v)
    return all(successors.get(x, set()) & s for x in r.vertices if x not in s)


def _is_kernel_of(r: ReachDigraph, s: FrozenSet[str]) -> bool:
    return not any(u in s and v in s for u, v in r.arcs) and _absorbs(r, s)


def kernel_of_plain_digraph(r: ReachDigraph) -> Optional[FrozenSet[str]]:
    """
    Least kernel of a simple digraph, or None. Every kernel is a maximal independent set, so those are the only
    candidates checked.
    """
    candidates = [s for s in _maximal_independent_sets(r.vertices, r.arcs) if _absorbs(r, s)]
    return _least(r.vertices, candidates)


def kernel_report_from_reach(r: ReachDigraph) -> KernelReport:
    candidates = _maximal_independent_sets(r.vertices, r.arcs)
    kernels = [s for s in candidates if _absorbs(r, s)]
    witness = _least(r.vertices, kernels)
    if witness is None:
        return KernelReport(
            KernelStatus.NONE_EXISTS,
            certificate=f"all {len(candidates)} maximal independent sets of the {r.semantics.value} reach digraph "
                        f"fail absorbance",
            candidates=len(candidates),
        )
    return KernelReport(KernelStatus.FOUND, _ordered(r.vertices, witness), candidates=len(candidates))


def find_kernel(d: ColouredMultidigraph, semantics: Union[str, Semantics] = Semantics.PATH,
                budget: Optional[int] = None) -> KernelReport:
    semantics = Semantics.of(semantics)
    try:
        r = reach_digraph(d, semantics, budget)
    except BudgetExceeded as e:
        logger.warning("Kernel query left unknown: %s", e)
        return KernelReport(KernelStatus.UNKNOWN, certificate=str(e), budget=e.budget)
    report = kernel_report_from_reach(r)
    if report.found and not _is_kernel_of(r, frozenset(report.witness)):
        raise CertificateError("Kernel witness does not verify against the reach digraph")
    return report


def find_independent_H_absorbent(d: ColouredMultidigraph, budget: Optional[int] = None) -> KernelReport:
    """
    Least maximal plain-independent set of D that is absorbent by H-paths. Absorbance survives growing the set,
    so one exists exactly when a maximal one does.
    """
    try:
        r = reach_digraph(d, Semantics.PATH, budget)
    except BudgetExceeded as e:
        logger.warning("Independent absorbent query left unknown: %s", e)
        return KernelReport(KernelStatus.UNKNOWN, certificate=str(e), budget=e.budget)
    candidates = _maximal_independent_sets(d.vertices, ((a.tail, a.head) for a in d.arcs))
    witness = _least(d.vertices, [s for s in candidates if _absorbs(r, s)])
    if witness is None:
        return KernelReport(
            KernelStatus.NONE_EXISTS,
            certificate=f"all {len(candidates)} maximal independent sets of D fail absorbance by H-paths",
            candidates=len(candidates),
        )
    return KernelReport(KernelStatus.FOUND, _ordered(d.vertices, witness), candidates=len(candidates))


def _terminal_component_set(layer: ColouredMultidigraph) -> FrozenSet[str]:
    """One vertex, the first in vertex order, from each terminal strong component."""
    g = nx.DiGraph()
    g.add_nodes_from(layer.vertices)
    g.add_edges_from((a.tail, a.head) for a in layer.arcs)
    condensed = nx.condensation(g)
    chosen = set()
    for node in condensed.nodes:
        if condensed.out_degree(node) == 0:
            members = condensed.nodes[node]["members"]
            chosen.add(min(members, key=layer.index))
    return frozenset(chosen)


def _two_part_set(layer: ColouredMultidigraph, first: Tuple[str, ...]) -> FrozenSet[str]:
    """
    Kernel by monochromatic paths after merging each part into one colour. Two-coloured digraphs always have one,
    and its monochromatic paths are H-paths of the layer because each part is complete reflexive.
    """
    part = set(first)
    reach = set()
    for colour_side in (True, False):
        g = nx.DiGraph()
        g.add_nodes_from(layer.vertices)
        g.add_edges_from((a.tail, a.head) for a in layer.arcs if (a.colour in part) == colour_side)
        for u in layer.vertices:
            reach.update((u, v) for v in nx.descendants(g, u))
    kernel = kernel_of_plain_digraph(ReachDigraph(layer.vertices, frozenset(reach), Semantics.PATH))
    if kernel is None:
        raise CertificateError("Two-coloured layer has no kernel by monochromatic paths")
    return kernel


def constructive_b2_set(d: ColouredMultidigraph, verify: bool = True) -> FrozenSet[str]:
    """
    Independent H-absorbent set built layer by layer over the strong components of the complement of H.

    Layers are visited from the last initial component back to the first. Each layer keeps only its own colours
    and the vertices chosen so far; a single-colour layer keeps one vertex per terminal strong component, a
    two-part layer keeps a kernel by monochromatic paths of its parts.
    """
    from .patterns.b2 import complement_layers, complement_odd_cycle, layer_parts

    h = d.pattern
    if not is_reflexive(h):
        raise NotReflexive("Independent H-absorbent sets are only guaranteed for reflexive patterns")
    cycle = complement_odd_cycle(h)
    if cycle is not None:
        raise OddCycleInComplement(f"Complement of the pattern has the odd cycle {' -> '.join(cycle)}", list(cycle))

    chosen = frozenset(d.vertices)
    for layer_colours in reversed(complement_layers(h)):
        layer = d.subdigraph(chosen, layer_colours)
        first, second = layer_parts(h, layer_colours)
        if not second:
            chosen = _terminal_component_set(layer)
        else:
            chosen = _two_part_set(layer, first)
        logger.debug("Layer %s keeps %d vertices", layer_colours, len(chosen))

    if verify and not is_independent_H_absorbent(d, chosen):
        raise CertificateError(f"Constructed set {sorted(chosen)} is not independent and H-absorbent")
    return chosen
