from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Dict, FrozenSet, Iterable, Tuple

logger = logging.getLogger(__name__)


class ConstructionKind(str, Enum):
    F4 = "F4"
    F5 = "F5"
    F1_SIMPLIFY = "F1Simplify"
    LINEAR_SUM = "LinearSum"


@dataclass(frozen=True)
class GadgetMap:
    """
    Bookkeeping of a construction: the original vertex set, the named sets of added vertices, and for each derived
    vertex that is not an original one, the original vertices it stands for.
    """
    kind: ConstructionKind
    original_vertices: Tuple[str, ...]
    added: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    correspondence: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        originals = set(self.original_vertices)
        for name, vertices in self.added.items():
            clash = originals & set(vertices)
            if clash:
                raise ValueError(f"Added set {name} overlaps the original vertices: {sorted(clash)}")

    def added_vertices(self, name: str) -> Tuple[str, ...]:
        return self.added.get(name, ())

    def all_added(self) -> FrozenSet[str]:
        return frozenset(v for vertices in self.added.values() for v in vertices)


def kernel_pullback(k_prime: Iterable[str], gadget_map: GadgetMap) -> FrozenSet[str]:
    """
    Carry a kernel of the derived digraph back to the original one.

    F4/F5: K = (K' + {s : s_hat in K'}) - S_hat. F1 simplification: K = K' restricted to V_D.
    Linear sum: the part of the kernel inside the second summand.
    """
    k_prime = frozenset(k_prime)
    originals = set(gadget_map.original_vertices)
    kind = gadget_map.kind
    if kind in (ConstructionKind.F4, ConstructionKind.F5):
        hats = set(gadget_map.added_vertices("S_hat"))
        lifted = {s for hat in k_prime & hats for s in gadget_map.correspondence[hat]}
        return frozenset((k_prime | lifted) - hats)
    if kind in (ConstructionKind.F1_SIMPLIFY, ConstructionKind.LINEAR_SUM):
        return frozenset(k_prime & originals)
    raise ValueError(f"Unknown construction kind {kind}")
