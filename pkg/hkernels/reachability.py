from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

import networkx as nx
import numpy as np

from .errors import BudgetExceeded, CertificateError, NotTransitive, SameVertex
from .util import path_budget

if TYPE_CHECKING:
    from typing import Dict, FrozenSet, List, Optional, Set, Tuple, Union
    from .entities import ColouredMultidigraph

logger = logging.getLogger(__name__)


class Semantics(str, Enum):
    WALK = "walk"
    PATH = "path"

    @classmethod
    def of(cls, value: Union[str, Semantics]) -> Semantics:
        return value if isinstance(value, Semantics) else cls(value)


@dataclass
class ReachStats:
    """Expansion counter shared by the walk and path searches."""
    expansions: int = 0


@dataclass(frozen=True)
class WalkCertificate:
    vertices: Tuple[str, ...]
    arcs: Tuple[int, ...]
    colours: Tuple[str, ...]

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.arcs)

    def verify(self, d: ColouredMultidigraph):
        if len(self.vertices) != len(self.arcs) + 1 or len(self.arcs) != len(self.colours) or not self.arcs:
            raise CertificateError(f"Malformed certificate {self}")
        for i, index in enumerate(self.arcs):
            arc = d.arcs[index]
            if (arc.tail, arc.head, arc.colour) != (self.vertices[i], self.vertices[i + 1], self.colours[i]):
                raise CertificateError(f"Arc {index} of the certificate does not match the digraph")
        for first, second in zip(self.colours, self.colours[1:]):
            if not d.pattern.has_arc(first, second):
                raise CertificateError(f"Colour transition ({first}, {second}) is not an arc of the pattern")

    def render(self, d: ColouredMultidigraph) -> str:
        return "\n".join(f"{d.arcs[i].tail} > {d.arcs[i].head} : {d.arcs[i].colour}" for i in self.arcs)


@dataclass(frozen=True)
class PathCertificate(WalkCertificate):
    def verify(self, d: ColouredMultidigraph):
        super().verify(d)
        if len(set(self.vertices)) != len(self.vertices):
            raise CertificateError(f"Path certificate repeats a vertex: {self.vertices}")


@dataclass(frozen=True)
class ReachDigraph:
    vertices: Tuple[str, ...]
    arcs: FrozenSet[Tuple[str, str]]
    semantics: Semantics = field(default=Semantics.PATH)

    def __post_init__(self):
        declared = set(self.vertices)
        for u, v in self.arcs:
            if u == v or u not in declared or v not in declared:
                raise ValueError(f"Invalid reach arc ({u}, {v})")

    def matrix(self) -> np.ndarray:
        index = {v: i for i, v in enumerate(self.vertices)}
        m = np.zeros((len(self.vertices), len(self.vertices)), dtype=bool)
        for u, v in self.arcs:
            m[index[u], index[v]] = True
        return m

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(sorted(self.arcs))
        return g

    def reaches(self, u: str, v: str) -> bool:
        return (u, v) in self.arcs


def _endpoints(d: ColouredMultidigraph, u: str, v: str) -> Tuple[int, int]:
    ui, vi = d.index(u), d.index(v)
    if ui == vi:
        raise SameVertex(f"Reachability is defined for distinct vertices, got {u!r} twice")
    return ui, vi


def _walk_bfs(d: ColouredMultidigraph, source: int, target: Optional[int], stats: ReachStats):
    """
    Breadth-first search over (vertex, colour of the last arc) states from `source`.
    Returns the parent map and the first state found at `target` (None when target is None or unreachable).
    """
    matrix = d.pattern.matrix
    parent: Dict[Tuple[int, int], Tuple[Optional[Tuple[int, int]], int]] = {}
    queue = deque()
    for a in d.out_arcs(source):
        stats.expansions += 1
        _, head, colour = d.indexed_arcs[a]
        state = (head, colour)
        if state not in parent:
            parent[state] = (None, a)
            if head == target:
                return parent, state
            queue.append(state)
    while queue:
        state = queue.popleft()
        x, h = state
        for a in d.out_arcs(x):
            stats.expansions += 1
            _, head, colour = d.indexed_arcs[a]
            if not matrix[h, colour]:
                continue
            nxt = (head, colour)
            if nxt in parent:
                continue
            parent[nxt] = (state, a)
            if head == target:
                return parent, nxt
            queue.append(nxt)
    return parent, None


def _trace(d: ColouredMultidigraph, parent, state, cls):
    arcs = []
    while state is not None:
        previous, a = parent[state]
        arcs.append(a)
        state = previous
    arcs.reverse()
    vertices = [d.arcs[arcs[0]].tail] + [d.arcs[a].head for a in arcs]
    colours = [d.arcs[a].colour for a in arcs]
    return cls(tuple(vertices), tuple(arcs), tuple(colours))


def walk_reachable(d: ColouredMultidigraph, u: str, v: str,
                   stats: Optional[ReachStats] = None) -> Optional[WalkCertificate]:
    """
    Shortest H-walk from u to v, or None. The search expands at most |A_D| * (|V_H| + 1) arcs.
    """
    ui, vi = _endpoints(d, u, v)
    stats = stats if stats is not None else ReachStats()
    parent, found = _walk_bfs(d, ui, vi, stats)
    if found is None:
        return None
    certificate = _trace(d, parent, found, WalkCertificate)
    certificate.verify(d)
    return certificate


def _co_reachable_states(d: ColouredMultidigraph, target: int) -> Set[Tuple[int, int]]:
    """States (x, h) from which an H-walk continuing after colour h reaches `target`."""
    matrix = d.pattern.matrix
    k = len(d.pattern)
    good = {(target, c) for c in range(k)}
    queue = deque(good)
    while queue:
        z, c = queue.popleft()
        for a in d.in_arcs(z):
            y, _, colour = d.indexed_arcs[a]
            if colour != c:
                continue
            for h in np.flatnonzero(matrix[:, colour]).tolist():
                if (y, h) not in good:
                    good.add((y, h))
                    queue.append((y, h))
    return good


def path_reachable(d: ColouredMultidigraph, u: str, v: str, budget: Optional[int] = None,
                   stats: Optional[ReachStats] = None) -> Optional[PathCertificate]:
    """
    Depth-first search for an H-path from u to v, pruned by walk co-reachability of v.

    Raises BudgetExceeded when more than `budget` states are expanded; that outcome means "unknown".
    """
    ui, vi = _endpoints(d, u, v)
    budget = path_budget(budget)
    stats = stats if stats is not None else ReachStats()
    matrix = d.pattern.matrix
    good = _co_reachable_states(d, vi)
    visited = [False] * d.order
    visited[ui] = True
    trail: List[int] = []

    def search(x: int, h: Optional[int]) -> bool:
        for a in d.out_arcs(x):
            _, head, colour = d.indexed_arcs[a]
            if visited[head] or (h is not None and not matrix[h, colour]):
                continue
            if head == vi:
                trail.append(a)
                return True
            if (head, colour) not in good:
                continue
            stats.expansions += 1
            if stats.expansions > budget:
                raise BudgetExceeded(budget, stats.expansions)
            visited[head] = True
            trail.append(a)
            if search(head, colour):
                return True
            trail.pop()
            visited[head] = False
        return False

    if not search(ui, None):
        return None
    vertices = [u] + [d.arcs[a].head for a in trail]
    certificate = PathCertificate(tuple(vertices), tuple(trail), tuple(d.arcs[a].colour for a in trail))
    certificate.verify(d)
    return certificate


def _path_closure(d: ColouredMultidigraph, source: int, budget: int, stats: ReachStats) -> Set[int]:
    """Every vertex reachable from `source` by H-paths, memoised on (vertex, last colour, visited set)."""
    matrix = d.pattern.matrix
    reached: Set[int] = set()
    seen: Set[Tuple[int, int, int]] = set()
    stack = [(source, -1, 1 << source)]
    while stack:
        x, h, mask = stack.pop()
        for a in d.out_arcs(x):
            _, head, colour = d.indexed_arcs[a]
            if mask >> head & 1 or (h >= 0 and not matrix[h, colour]):
                continue
            reached.add(head)
            state = (head, colour, mask | 1 << head)
            if state in seen:
                continue
            seen.add(state)
            stats.expansions += 1
            if stats.expansions > budget:
                raise BudgetExceeded(budget, stats.expansions)
            stack.append(state)
    return reached


def reachable_from(d: ColouredMultidigraph, u: str, semantics: Union[str, Semantics] = Semantics.PATH,
                   budget: Optional[int] = None, stats: Optional[ReachStats] = None) -> Set[str]:
    """Every vertex other than u that u reaches under `semantics`."""
    semantics = Semantics.of(semantics)
    stats = stats if stats is not None else ReachStats()
    ui = d.index(u)
    if semantics is Semantics.WALK:
        parent, _ = _walk_bfs(d, ui, None, stats)
        return {d.vertices[x] for x, _ in parent if x != ui}
    return {d.vertices[x] for x in _path_closure(d, ui, path_budget(budget), stats)}


def reach_digraph(d: ColouredMultidigraph, semantics: Union[str, Semantics] = Semantics.PATH,
                  budget: Optional[int] = None, stats: Optional[ReachStats] = None) -> ReachDigraph:
    semantics = Semantics.of(semantics)
    stats = stats if stats is not None else ReachStats()
    if semantics is Semantics.PATH:
        budget = path_budget(budget)
    arcs = set()
    for u in d.vertices:
        arcs.update((u, v) for v in reachable_from(d, u, semantics, budget, stats))
    logger.debug("Reach digraph (%s) with %d arcs after %d expansions", semantics.value, len(arcs), stats.expansions)
    return ReachDigraph(d.vertices, frozenset(arcs), semantics)


def extract_path_from_walk(d: ColouredMultidigraph, w: WalkCertificate) -> PathCertificate:
    """Shortcut a walk at repeated vertices. Sound only for transitive patterns."""
    from .patterns.transitivity import is_transitive

    if not is_transitive(d.pattern):
        raise NotTransitive("Shortcutting a walk into a path requires a transitive pattern")
    w.verify(d)
    vertices, arcs, colours = list(w.vertices), list(w.arcs), list(w.colours)
    while len(set(vertices)) != len(vertices):
        i = next(i for i, x in enumerate(vertices) if vertices.count(x) > 1)
        j = len(vertices) - 1 - vertices[::-1].index(vertices[i])
        vertices = vertices[:i + 1] + vertices[j + 1:]
        arcs = arcs[:i] + arcs[j:]
        colours = colours[:i] + colours[j:]
    path = PathCertificate(tuple(vertices), tuple(arcs), tuple(colours))
    path.verify(d)
    return path
