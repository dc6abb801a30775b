from __future__ import annotations

import logging
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from .errors import DuplicateColour, DuplicateVertex, LoopArc, UnknownColour, UnknownVertex

if TYPE_CHECKING:
    from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

logger = logging.getLogger(__name__)


class Arc(NamedTuple):
    tail: str
    head: str
    colour: str


def _index_of(identifiers: Tuple[str, ...], duplicate_error, what: str) -> Dict[str, int]:
    index = {}
    for i, ident in enumerate(identifiers):
        if not isinstance(ident, str) or not ident:
            raise TypeError(f"{what} identifiers must be non-empty strings, got {ident!r}")
        if ident in index:
            raise duplicate_error(f"Duplicate {what} {ident!r}")
        index[ident] = i
    return index


class Pattern:
    """
    A pattern of colours: a digraph on colour identifiers, loops allowed, no parallel arcs.

    Adjacency is kept as a read-only boolean matrix indexed by colour position.
    """

    def __init__(self, colours: Iterable[str], arcs: Iterable[Tuple[str, str]] = ()):
        self._colours: Tuple[str, ...] = tuple(colours)
        self._index = _index_of(self._colours, DuplicateColour, "colour")
        matrix = np.zeros((len(self._colours), len(self._colours)), dtype=bool)
        for tail, head in arcs:
            for end in (tail, head):
                if end not in self._index:
                    raise UnknownColour(f"Arc ({tail!r}, {head!r}) references undeclared colour {end!r}")
            matrix[self._index[tail], self._index[head]] = True
        matrix.setflags(write=False)
        self._matrix = matrix

    @classmethod
    def from_matrix(cls, colours: Iterable[str], matrix) -> Pattern:
        colours = tuple(colours)
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.shape != (len(colours), len(colours)):
            raise ValueError(f"Matrix shape {matrix.shape} does not match {len(colours)} colours")
        tails, heads = np.nonzero(matrix)
        return cls(colours, [(colours[t], colours[h]) for t, h in zip(tails.tolist(), heads.tolist())])

    @property
    def colours(self) -> Tuple[str, ...]:
        return self._colours

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def arcs(self) -> FrozenSet[Tuple[str, str]]:
        return frozenset(self.arc_list())

    def arc_list(self) -> List[Tuple[str, str]]:
        """Arcs in colour-index order, the order the serializer uses."""
        tails, heads = np.nonzero(self._matrix)
        return [(self._colours[t], self._colours[h]) for t, h in zip(tails.tolist(), heads.tolist())]

    def index(self, colour: str) -> int:
        try:
            return self._index[colour]
        except KeyError:
            raise UnknownColour(f"Colour {colour!r} is not in the pattern")

    def has_arc(self, tail: str, head: str) -> bool:
        return bool(self._matrix[self.index(tail), self.index(head)])

    def out_neighbours(self, colour: str) -> Set[str]:
        row = self._matrix[self.index(colour)]
        return {self._colours[i] for i in np.flatnonzero(row).tolist()}

    def in_neighbours(self, colour: str) -> Set[str]:
        column = self._matrix[:, self.index(colour)]
        return {self._colours[i] for i in np.flatnonzero(column).tolist()}

    def rename(self, mapping: Dict[str, str]) -> Pattern:
        colours = [mapping.get(c, c) for c in self._colours]
        return Pattern.from_matrix(colours, self._matrix)

    def __contains__(self, colour) -> bool:
        return colour in self._index

    def __len__(self) -> int:
        return len(self._colours)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self._colours == other._colours and bool(np.array_equal(self._matrix, other._matrix))

    def __hash__(self) -> int:
        return hash((self._colours, self._matrix.tobytes()))

    def __repr__(self):
        arcs = " ".join(f"{t}>{h}" for t, h in self.arc_list())
        return f"{self.__class__.__name__}(colours={list(self._colours)}, arcs=[{arcs}])"


class ColouredMultidigraph:
    """
    A loopless multidigraph whose arcs are coloured with the colours of a pattern.

    Arcs keep their position in the input as a stable index; parallel arcs, including same-coloured
    duplicates, are preserved.
    """

    def __init__(self, vertices: Iterable[str], arcs: Iterable[Tuple[str, str, str]], pattern: Pattern):
        self._vertices: Tuple[str, ...] = tuple(vertices)
        self._index = _index_of(self._vertices, DuplicateVertex, "vertex")
        self._pattern = pattern

        arc_list = []
        indexed = []
        out_arcs: List[List[int]] = [[] for _ in self._vertices]
        in_arcs: List[List[int]] = [[] for _ in self._vertices]
        for position, (tail, head, colour) in enumerate(arcs):
            for end in (tail, head):
                if end not in self._index:
                    raise UnknownVertex(f"Arc ({tail!r}, {head!r}) references undeclared vertex {end!r}")
            if tail == head:
                raise LoopArc(f"Arc ({tail!r}, {head!r}) is a loop")
            if colour not in pattern:
                raise UnknownColour(f"Arc ({tail!r}, {head!r}) has colour {colour!r} outside the pattern")
            t, h, c = self._index[tail], self._index[head], pattern.index(colour)
            arc_list.append(Arc(tail, head, colour))
            indexed.append((t, h, c))
            out_arcs[t].append(position)
            in_arcs[h].append(position)

        self._arcs: Tuple[Arc, ...] = tuple(arc_list)
        self._indexed: Tuple[Tuple[int, int, int], ...] = tuple(indexed)
        self._out_arcs = tuple(tuple(a) for a in out_arcs)
        self._in_arcs = tuple(tuple(a) for a in in_arcs)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    @property
    def arcs(self) -> Tuple[Arc, ...]:
        return self._arcs

    @property
    def indexed_arcs(self) -> Tuple[Tuple[int, int, int], ...]:
        """Arcs as (tail index, head index, colour index)."""
        return self._indexed

    @property
    def pattern(self) -> Pattern:
        return self._pattern

    @property
    def order(self) -> int:
        return len(self._vertices)

    def index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise UnknownVertex(f"Vertex {vertex!r} is not in the digraph")

    def out_arcs(self, vertex_index: int) -> Tuple[int, ...]:
        return self._out_arcs[vertex_index]

    def in_arcs(self, vertex_index: int) -> Tuple[int, ...]:
        return self._in_arcs[vertex_index]

    def arc_counts(self) -> np.ndarray:
        """Array of shape (n, n, k) counting arcs per ordered vertex pair and colour."""
        counts = np.zeros((self.order, self.order, len(self._pattern)), dtype=np.uint8)
        for t, h, c in self._indexed:
            counts[t, h, c] += 1
        return counts

    def adjacency(self) -> np.ndarray:
        """Underlying simple digraph as a boolean matrix."""
        adj = np.zeros((self.order, self.order), dtype=bool)
        for t, h, _ in self._indexed:
            adj[t, h] = True
        return adj

    def has_parallel_arcs(self) -> bool:
        seen = set()
        for t, h, _ in self._indexed:
            if (t, h) in seen:
                return True
            seen.add((t, h))
        return False

    def with_pattern(self, pattern: Pattern) -> ColouredMultidigraph:
        return ColouredMultidigraph(self._vertices, self._arcs, pattern)

    def subdigraph(self, vertices: Iterable[str], colours: Optional[Iterable[str]] = None) -> ColouredMultidigraph:
        """Induced on `vertices`, keeping only arcs whose colour is in `colours` (all colours by default)."""
        keep = set(vertices)
        for v in keep:
            self.index(v)
        allowed = set(self._pattern.colours if colours is None else colours)
        ordered = [v for v in self._vertices if v in keep]
        arcs = [a for a in self._arcs if a.tail in keep and a.head in keep and a.colour in allowed]
        return ColouredMultidigraph(ordered, arcs, self._pattern)

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColouredMultidigraph):
            return NotImplemented
        return (
            self._vertices == other._vertices and self._arcs == other._arcs and self._pattern == other._pattern
        )

    def __hash__(self) -> int:
        return hash((self._vertices, self._arcs, self._pattern))

    def __repr__(self):
        return f"{self.__class__.__name__}(vertices={len(self._vertices)}, arcs={len(self._arcs)}, " \
               f"colours={list(self._pattern.colours)})"


def new_pattern(colours: Iterable[str], arcs: Iterable[Tuple[str, str]]) -> Pattern:
    return Pattern(colours, arcs)


def new_coloured_digraph(
        vertices: Iterable[str], arcs: Iterable[Tuple[str, str, str]], pattern: Pattern
) -> ColouredMultidigraph:
    return ColouredMultidigraph(vertices, arcs, pattern)


def is_reflexive(p: Pattern) -> bool:
    return bool(np.all(np.diagonal(p.matrix)))


def complement(p: Pattern) -> Pattern:
    """Loopless complement on the same colours."""
    matrix = ~p.matrix
    np.fill_diagonal(matrix, False)
    return Pattern.from_matrix(p.colours, matrix)


def induced_subpattern(p: Pattern, colours: Iterable[str]) -> Pattern:
    keep = set(colours)
    for colour in keep:
        p.index(colour)
    ordered = [c for c in p.colours if c in keep]
    positions = [p.index(c) for c in ordered]
    return Pattern.from_matrix(ordered, p.matrix[np.ix_(positions, positions)])


def complete_reflexive(colours: Iterable[str]) -> Pattern:
    colours = tuple(colours)
    return Pattern.from_matrix(colours, np.ones((len(colours), len(colours)), dtype=bool))


def disjoint_union_patterns(h1: Pattern, h2: Pattern) -> Pattern:
    """H1 + H2: both patterns side by side with no arcs between them."""
    clash = set(h1.colours) & set(h2.colours)
    if clash:
        raise DuplicateColour(f"Patterns share colours {sorted(clash)}")
    return Pattern(h1.colours + h2.colours, h1.arc_list() + h2.arc_list())


def is_spanning_subpattern(sub: Pattern, p: Pattern) -> bool:
    """True if `sub` has the same colours as `p` and every arc of `sub` is an arc of `p`."""
    if set(sub.colours) != set(p.colours):
        return False
    return all(p.has_arc(t, h) for t, h in sub.arc_list())


def dedupe(d: ColouredMultidigraph) -> ColouredMultidigraph:
    """Collapse same-coloured parallel arcs, keeping the first occurrence."""
    seen = set()
    arcs = []
    for arc in d.arcs:
        if arc not in seen:
            seen.add(arc)
            arcs.append(arc)
    return ColouredMultidigraph(d.vertices, arcs, d.pattern)
