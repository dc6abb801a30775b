from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .entities import ColouredMultidigraph, Pattern

if TYPE_CHECKING:
    from typing import Callable, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def from_hex(cls, text: str) -> CanonicalCode:
        return cls(bytes.fromhex(text))

    def __str__(self):
        return self.hex()


def colour_name(i: int) -> str:
    """Canonical colour names: a .. z, then c26, c27, ..."""
    return chr(ord("a") + i) if i < 26 else f"c{i}"


def vertex_name(i: int) -> str:
    return f"v{i}"


def _twin_classes(cells: np.ndarray) -> List[int]:
    """
    Representative index per vertex: u and w share a representative when swapping them is an automorphism.
    `cells` has shape (n, n, ...).
    """
    n = cells.shape[0]
    rep = list(range(n))
    for u in range(n):
        if rep[u] != u:
            continue
        for w in range(u + 1, n):
            if rep[w] != w:
                continue
            others = [x for x in range(n) if x not in (u, w)]
            if not np.array_equal(cells[u, others], cells[w, others]):
                continue
            if not np.array_equal(cells[others, u], cells[others, w]):
                continue
            if not np.array_equal(cells[u, w], cells[w, u]):
                continue
            if not np.array_equal(cells[u, u], cells[w, w]):
                continue
            rep[w] = u
    return rep


def _best_ordering(cells: np.ndarray, invariants: Sequence[Tuple]) -> Tuple[bytes, Tuple[int, ...]]:
    """
    Minimum shell-order encoding over vertex orderings that list vertices by ascending invariant.

    At position t the encoding appends cell(o_t, o_s) for s < t, then cell(o_s, o_t) for s < t, then cell(o_t, o_t).
    """
    n = cells.shape[0]
    if n == 0:
        return b"", ()
    required = sorted(invariants)
    rep = _twin_classes(cells)
    cell_bytes = [[cells[i, j].tobytes() for j in range(n)] for i in range(n)]

    best: List[Optional[bytes]] = [None]
    best_order: List[Tuple[int, ...]] = [()]
    order: List[int] = []
    used = [False] * n

    def segment(v: int) -> bytes:
        return b"".join(
            [cell_bytes[v][s] for s in order] + [cell_bytes[s][v] for s in order] + [cell_bytes[v][v]]
        )

    def extend(prefix: bytes):
        t = len(order)
        if t == n:
            if best[0] is None or prefix < best[0]:
                best[0] = prefix
                best_order[0] = tuple(order)
            return
        tried = set()
        for v in range(n):
            if used[v] or invariants[v] != required[t] or rep[v] in tried:
                continue
            tried.add(rep[v])
            candidate = prefix + segment(v)
            if best[0] is not None and candidate > best[0][:len(candidate)]:
                continue
            used[v] = True
            order.append(v)
            extend(candidate)
            order.pop()
            used[v] = False

    extend(b"")
    return best[0], best_order[0]


def _pattern_cells(p: Pattern) -> Tuple[np.ndarray, List[Tuple]]:
    cells = p.matrix.astype(np.uint8)
    outdeg = cells.sum(axis=1).tolist()
    indeg = cells.sum(axis=0).tolist()
    invariants = [(int(cells[i, i]), outdeg[i], indeg[i]) for i in range(len(p))]
    return cells, invariants


def _count_invariants(cells: np.ndarray) -> List[Tuple]:
    out_profile = cells.sum(axis=1).tolist()
    in_profile = cells.sum(axis=0).tolist()
    return [tuple(out_profile[i]) + tuple(in_profile[i]) for i in range(cells.shape[0])]


def _digraph_cells(d: ColouredMultidigraph) -> Tuple[np.ndarray, List[Tuple]]:
    cells = d.arc_counts()
    return cells, _count_invariants(cells)


def _pattern_ordering(p: Pattern) -> Tuple[CanonicalCode, Tuple[int, ...]]:
    cells, invariants = _pattern_cells(p)
    data, order = _best_ordering(cells, invariants)
    return CanonicalCode(bytes([len(p)]) + data), order


def _digraph_ordering(d: ColouredMultidigraph) -> Tuple[CanonicalCode, Tuple[int, ...]]:
    cells, invariants = _digraph_cells(d)
    data, order = _best_ordering(cells, invariants)
    return CanonicalCode(bytes([d.order, len(d.pattern)]) + data), order


def canonical_counts(cells: np.ndarray) -> Tuple[CanonicalCode, np.ndarray]:
    """
    Code of the coloured digraph whose arc multiplicities are `cells` (shape (n, n, k)), with the tensor
    relabelled into canonical vertex order. Equals `canonical_code` of the digraph built from `cells`.
    """
    data, order = _best_ordering(cells, _count_invariants(cells))
    index = np.asarray(order, dtype=np.intp)
    return CanonicalCode(bytes([cells.shape[0], cells.shape[2]]) + data), cells[np.ix_(index, index)]


def canonical_code(obj: Union[Pattern, ColouredMultidigraph]) -> CanonicalCode:
    """
    Isomorphism-class key. Patterns are taken up to colour renaming, coloured digraphs up to vertex renaming
    with colour names fixed.
    """
    if isinstance(obj, Pattern):
        return _pattern_ordering(obj)[0]
    if isinstance(obj, ColouredMultidigraph):
        return _digraph_ordering(obj)[0]
    raise TypeError(f"Cannot compute a canonical code for {type(obj).__name__}")


def canonical_form(obj: Union[Pattern, ColouredMultidigraph]):
    """
    Canonical representative together with its code.

    Patterns get colours a, b, c, ... in canonical order. Coloured digraphs get vertices v0, v1, ... and arcs
    sorted by (tail, head, colour index); their pattern is kept as is.
    """
    if isinstance(obj, Pattern):
        code, order = _pattern_ordering(obj)
        names = {obj.colours[old]: colour_name(new) for new, old in enumerate(order)}
        arcs = sorted(((names[t], names[h]) for t, h in obj.arc_list()), key=lambda a: (a[0], a[1]))
        return Pattern([colour_name(i) for i in range(len(obj))], arcs), code
    if isinstance(obj, ColouredMultidigraph):
        code, order = _digraph_ordering(obj)
        position = {old: new for new, old in enumerate(order)}
        arcs = sorted(
            ((position[t], position[h], c) for t, h, c in obj.indexed_arcs),
        )
        colours = obj.pattern.colours
        relabelled = ColouredMultidigraph(
            [vertex_name(i) for i in range(obj.order)],
            [(vertex_name(t), vertex_name(h), colours[c]) for t, h, c in arcs],
            obj.pattern,
        )
        return relabelled, code
    raise TypeError(f"Cannot compute a canonical form for {type(obj).__name__}")


def is_isomorphic(a: Union[Pattern, ColouredMultidigraph], b: Union[Pattern, ColouredMultidigraph]) -> bool:
    return canonical_code(a) == canonical_code(b)


def sort_by_code(objects, key: Optional[Callable] = None):
    key = key or (lambda o: o)
    return sorted(objects, key=lambda o: canonical_code(key(o)))
