from __future__ import annotations

import hashlib
import inspect
import itertools
import json
import logging
from dataclasses import dataclass
from enum import Enum
from pprint import pprint
from typing import TYPE_CHECKING

from ..entities import induced_subpattern
from ..formats.text import parse_pattern, serialize_pattern
from ..kernels import KernelStatus, find_independent_H_absorbent, find_kernel
from ..patterns.obstruction import find_obstruction
from ..patterns.transitivity import is_transitive
from ..reachability import Semantics
from ..version import __version__

if TYPE_CHECKING:
    from typing import Any, Callable, Dict, Optional, Tuple
    from ..entities import ColouredMultidigraph, Pattern

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    HIT = "hit"
    MISS = "miss"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Evaluation:
    verdict: Verdict
    transcript: Tuple[str, ...] = ()


class SearchPredicate:
    """
    Decorator class registering a search predicate under an id.

    The decorated function takes (pattern, digraph, budget) and returns an Evaluation. Pattern-only predicates
    receive digraph=None and are evaluated once per pattern. Without a fixed pattern, searches run over reflexive
    patterns only unless the predicate is registered with reflexive_only=False.
    """
    registry: Dict[str, SearchPredicate] = {}

    def __init__(self, predicate_id: str, pattern_only: bool = False, reflexive_only: bool = True,
                 description: str = ""):
        self.predicate_id = predicate_id
        self.pattern_only = pattern_only
        self.reflexive_only = reflexive_only
        self.description = description
        self.func: Optional[Callable] = None

    def __call__(self, func: Callable):
        if not inspect.isfunction(func):
            raise TypeError(f"SearchPredicate expects a function, not {type(func)}")
        if self.func is not None:
            raise Exception(f"Can't overwrite decorator, now is {self.func}")
        if self.predicate_id in SearchPredicate.registry:
            raise ValueError(f"Search predicate {self.predicate_id!r} is already registered")
        self.func = func
        SearchPredicate.registry[self.predicate_id] = self
        return self

    def evaluate(self, pattern: Pattern, digraph: Optional[ColouredMultidigraph],
                 budget: Optional[int] = None) -> Evaluation:
        return self.func(pattern, digraph, budget)

    @classmethod
    def get(cls, predicate_id: str) -> SearchPredicate:
        try:
            return cls.registry[predicate_id]
        except KeyError:
            raise ValueError(f"Unknown search predicate {predicate_id!r}; registered: {sorted(cls.registry)}")

    def debug(self):
        pprint({
            "predicate_id": self.predicate_id,
            "pattern_only": self.pattern_only,
            "reflexive_only": self.reflexive_only,
            "description": self.description,
            "func": self.func,
        })

    def __repr__(self):
        return f"{self.__class__.__name__}({self.predicate_id!r})"


def _kernel_line(semantics: Semantics, status: KernelStatus, witness) -> str:
    suffix = f" {{{', '.join(witness)}}}" if witness is not None else ""
    return f"kernel by {semantics.value}s: {status.value}{suffix}"


def _separation(d: ColouredMultidigraph, budget: Optional[int], want_path: bool) -> Evaluation:
    """Checks the kernel that must exist first, and the excluded one only when the first is found."""
    has_semantics, lacks_semantics = Semantics.PATH, Semantics.WALK
    if not want_path:
        has_semantics, lacks_semantics = lacks_semantics, has_semantics
    has = find_kernel(d, has_semantics, budget)
    transcript = (_kernel_line(has_semantics, has.status, has.witness),)
    if has.status is KernelStatus.UNKNOWN:
        return Evaluation(Verdict.UNKNOWN, transcript)
    if has.status is not KernelStatus.FOUND:
        return Evaluation(Verdict.MISS, transcript)
    lacks = find_kernel(d, lacks_semantics, budget)
    transcript += (_kernel_line(lacks_semantics, lacks.status, lacks.witness),)
    if lacks.status is KernelStatus.UNKNOWN:
        return Evaluation(Verdict.UNKNOWN, transcript)
    return Evaluation(Verdict.HIT if lacks.status is KernelStatus.NONE_EXISTS else Verdict.MISS, transcript)


@SearchPredicate("path-kernel-no-walk-kernel", reflexive_only=False,
                 description="an H-kernel and no kernel by H-walks")
def path_kernel_no_walk_kernel(pattern, digraph, budget=None):
    return _separation(digraph, budget, want_path=True)


@SearchPredicate("walk-kernel-no-path-kernel", reflexive_only=False,
                 description="a kernel by H-walks and no H-kernel")
def walk_kernel_no_path_kernel(pattern, digraph, budget=None):
    return _separation(digraph, budget, want_path=False)


@SearchPredicate("no-path-kernel", description="no H-kernel")
def no_path_kernel(pattern, digraph, budget=None):
    report = find_kernel(digraph, Semantics.PATH, budget)
    transcript = (_kernel_line(Semantics.PATH, report.status, report.witness),)
    if report.status is KernelStatus.UNKNOWN:
        return Evaluation(Verdict.UNKNOWN, transcript)
    return Evaluation(Verdict.HIT if report.status is KernelStatus.NONE_EXISTS else Verdict.MISS, transcript)


@SearchPredicate("no-independent-absorbent", description="no independent H-absorbent set")
def no_independent_absorbent(pattern, digraph, budget=None):
    report = find_independent_H_absorbent(digraph, budget)
    transcript = (f"independent H-absorbent set: {report.status.value}",)
    if report.status is KernelStatus.UNKNOWN:
        return Evaluation(Verdict.UNKNOWN, transcript)
    return Evaluation(Verdict.HIT if report.status is KernelStatus.NONE_EXISTS else Verdict.MISS, transcript)


@SearchPredicate("minimal-nontransitive-member", pattern_only=True,
                 description="non-transitive pattern whose proper induced subpatterns are transitive")
def minimal_nontransitive_member(pattern, digraph=None, budget=None):
    if is_transitive(pattern):
        return Evaluation(Verdict.MISS, ("transitive: yes",))
    for size in range(1, len(pattern)):
        for colours in itertools.combinations(pattern.colours, size):
            if not is_transitive(induced_subpattern(pattern, colours)):
                return Evaluation(Verdict.MISS, (f"non-transitive induced subpattern on {' '.join(colours)}",))
    return Evaluation(Verdict.HIT, ("transitive: no", "every proper induced subpattern is transitive"))


class SearchMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"


@dataclass(frozen=True)
class SearchTarget:
    kind: str
    pattern: Optional[Pattern] = None
    min_vertices: int = 1
    max_vertices: int = 4
    max_colours: int = 3
    max_parallel: int = 1
    max_arcs: Optional[int] = None
    mode: SearchMode = SearchMode.EXHAUSTIVE
    seed: int = 0
    count: int = 1000
    density: float = 0.25
    min_colours: int = 1

    def __post_init__(self):
        SearchPredicate.get(self.kind)
        if min(self.min_vertices, self.max_vertices, self.max_colours, self.max_parallel, self.min_colours) < 1:
            raise ValueError("Search bounds must be positive")
        if self.min_vertices > self.max_vertices or self.min_colours > self.max_colours:
            raise ValueError("Lower bounds exceed upper bounds")
        if self.max_arcs is not None and self.max_arcs < 0:
            raise ValueError("max_arcs must be non-negative")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.mode is SearchMode.RANDOM and self.count < 1:
            raise ValueError("Random mode needs a positive sample count")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must be in (0, 1]")

    @property
    def predicate(self) -> SearchPredicate:
        return SearchPredicate.get(self.kind)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "pattern": serialize_pattern(self.pattern) if self.pattern is not None else None,
            "min_vertices": self.min_vertices,
            "max_vertices": self.max_vertices,
            "max_colours": self.max_colours,
            "max_parallel": self.max_parallel,
            "max_arcs": self.max_arcs,
            "mode": self.mode.value,
            "seed": self.seed,
            "count": self.count,
            "density": self.density,
            "min_colours": self.min_colours,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> SearchTarget:
        data = dict(data)
        if data.get("pattern") is not None:
            data["pattern"] = parse_pattern(data["pattern"])
        data["mode"] = SearchMode(data["mode"])
        return cls(**data)

    def fingerprint(self) -> str:
        payload = json.dumps({"target": self.to_dict(), "version": __version__}, sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def obstruction_vertex_bound(p: Pattern) -> Optional[int]:
    """Vertex bound for a no-kernel search guided by an obstruction walk with k arcs: 3 * (k + 1)."""
    witness = find_obstruction(p)
    if witness is None:
        return None
    return 3 * len(witness.walk)


__all__ = [
    "Evaluation", "SearchMode", "SearchPredicate", "SearchTarget", "Verdict", "obstruction_vertex_bound",
]
