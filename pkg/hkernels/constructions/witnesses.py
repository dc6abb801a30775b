from __future__ import annotations

import logging
from enum import Enum
from typing import TYPE_CHECKING

from ..entities import ColouredMultidigraph, complement
from ..errors import MissingBaseWitness, NotInComplement, NotOddCycle
from ..formats.text import parse_digraph, parse_pattern
from ..kernels import find_kernel
from ..reachability import Semantics
from .sums import linear_sum_digraphs, single_vertex

if TYPE_CHECKING:
    from typing import Dict, Optional, Sequence, Tuple
    from ..entities import Pattern
    from ..patterns.obstruction import ObstructionWitness

logger = logging.getLogger(__name__)


class BaseWitness(str, Enum):
    PATH_KERNEL_NO_WALK_KERNEL = "path-kernel-no-walk-kernel"
    WALK_KERNEL_NO_PATH_KERNEL = "walk-kernel-no-path-kernel"


TRANSITION_PATTERN = """\
pattern
colours: a b c
a > b
b > b
b > c
"""

# {u, v} is a kernel by H-paths; u walk-reaches v through the b-coloured 2-cycle, which kills every walk-kernel
PATH_KERNEL_NO_WALK_KERNEL = """\
digraph
vertices: u v x y z
u > y : a
y > z : b
z > y : b
y > v : c
v > x : c
x > u : c
x > y : c
x > z : c
"""

# {v} is a kernel by H-walks; u walk-reaches v only by revisiting x
WALK_KERNEL_NO_PATH_KERNEL = """\
digraph
vertices: u v x y
u > x : a
x > y : b
y > x : b
x > v : c
v > u : c
"""

_BASE_TEXTS: Dict[BaseWitness, Tuple[str, str]] = {
    BaseWitness.PATH_KERNEL_NO_WALK_KERNEL: (TRANSITION_PATTERN, PATH_KERNEL_NO_WALK_KERNEL),
    BaseWitness.WALK_KERNEL_NO_PATH_KERNEL: (TRANSITION_PATTERN, WALK_KERNEL_NO_PATH_KERNEL),
}


def separates(d: ColouredMultidigraph, kind: BaseWitness) -> bool:
    """Recompute both kernel queries and check the separation the witness claims."""
    path_found = find_kernel(d, Semantics.PATH).found
    walk_found = find_kernel(d, Semantics.WALK).found
    if kind is BaseWitness.PATH_KERNEL_NO_WALK_KERNEL:
        return path_found and not walk_found
    return walk_found and not path_found


def base_witness(kind: BaseWitness) -> ColouredMultidigraph:
    try:
        pattern_text, digraph_text = _BASE_TEXTS[kind]
    except KeyError:
        raise MissingBaseWitness(f"No stored base witness for {kind}")
    d = parse_digraph(digraph_text, parse_pattern(pattern_text))
    if not separates(d, kind):
        raise MissingBaseWitness(f"Stored base witness for {kind.value} does not verify")
    return d


def _family(kind: BaseWitness, j: int, base: Optional[ColouredMultidigraph]) -> Tuple[Pattern, ColouredMultidigraph]:
    if j < 1:
        raise ValueError("Family index starts at 1")
    if base is None:
        d = base_witness(kind)
    else:
        if not separates(base, kind):
            raise MissingBaseWitness(f"Given base digraph does not separate as {kind.value}")
        d = base
    for step in range(2, j + 1):
        d = linear_sum_digraphs(single_vertex(d.pattern, f"w{step}"), d)
    return d.pattern, d


def family_path_not_walk(j: int, base: Optional[ColouredMultidigraph] = None) -> Tuple[Pattern, ColouredMultidigraph]:
    """D^1 = base, D^(j+1) = K1 • D^j: an H-kernel and no kernel by H-walks at every j."""
    return _family(BaseWitness.PATH_KERNEL_NO_WALK_KERNEL, j, base)


def family_walk_not_path(j: int, base: Optional[ColouredMultidigraph] = None) -> Tuple[Pattern, ColouredMultidigraph]:
    """E^1 = base, E^(j+1) = K1 • E^j: a kernel by H-walks and no H-kernel at every j."""
    return _family(BaseWitness.WALK_KERNEL_NO_PATH_KERNEL, j, base)


def _closed_cycle(cycle: Sequence[str]) -> Tuple[str, ...]:
    cycle = tuple(cycle)
    if len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle = cycle[:-1]
    return cycle


def odd_cycle_witness(h: Pattern, cycle: Sequence[str]) -> ColouredMultidigraph:
    """
    The cycle x_0 ... x_2k with arc (x_i, x_i+1) coloured by the i-th colour of an odd cycle of the complement.
    Consecutive colours are non-arcs of H, so every H-path is a single arc.
    """
    cycle = _closed_cycle(cycle)
    if len(cycle) < 3 or len(cycle) % 2 == 0 or len(set(cycle)) != len(cycle):
        raise NotOddCycle(f"{cycle} is not an odd cycle")
    co = complement(h)
    for i, colour in enumerate(cycle):
        following = cycle[(i + 1) % len(cycle)]
        if not co.has_arc(colour, following):
            raise NotInComplement(f"({colour}, {following}) is not an arc of the complement")
    vertices = [f"x{i}" for i in range(len(cycle))]
    arcs = [(vertices[i], vertices[(i + 1) % len(cycle)], colour) for i, colour in enumerate(cycle)]
    return ColouredMultidigraph(vertices, arcs, h)


def obstruction_instance(h: Pattern, start: str, middle: str, blocker: str) -> ColouredMultidigraph:
    """
    Three linked copies of a two-colour obstruction walk (start, middle) whose first colour misses `blocker`:
    v_i -start-> w_i -middle-> v_(i+1) and w_i -blocker-> w_(i+1), indices mod 3. When `middle` may not follow
    `blocker`, every w_i also gets w_i -middle-> v_(i+2), so the w's still reach two of the v's.
    """
    for first, second in ((start, middle), (blocker, blocker)):
        if not h.has_arc(first, second):
            raise ValueError(f"({first}, {second}) must be an arc of the pattern")
    if h.has_arc(middle, start) or h.has_arc(start, blocker):
        raise ValueError("Pattern does not block the instance as required")
    shortcut = not h.has_arc(blocker, middle)
    vertices = [f"v{i}" for i in range(3)] + [f"w{i}" for i in range(3)]
    arcs = []
    for i in range(3):
        following = (i + 1) % 3
        arcs.append((f"v{i}", f"w{i}", start))
        arcs.append((f"w{i}", f"v{following}", middle))
        arcs.append((f"w{i}", f"w{following}", blocker))
        if shortcut:
            arcs.append((f"w{i}", f"v{(i + 2) % 3}", middle))
    return ColouredMultidigraph(vertices, arcs, h)


def obstruction_digraph(h: Pattern, witness: Optional[ObstructionWitness] = None) -> ColouredMultidigraph:
    """
    Digraph without an H-kernel built from an obstruction walk of at most two colours. A loopless colour gives a
    directed triangle in that colour; a walk (start, middle) gives `obstruction_instance`.

    :raises ValueError: if the pattern has no obstruction or the walk is longer
    """
    from ..patterns.obstruction import find_obstruction

    witness = witness if witness is not None else find_obstruction(h)
    if witness is None:
        raise ValueError("Pattern admits no obstruction walk")
    witness.verify(h)
    if len(witness.walk) == 1:
        colour = witness.walk[0]
        vertices = [f"x{i}" for i in range(3)]
        return ColouredMultidigraph(vertices, [(vertices[i], vertices[(i + 1) % 3], colour) for i in range(3)], h)
    if len(witness.walk) == 2:
        start, middle = witness.walk
        return obstruction_instance(h, start, middle, witness.blockers[0])
    raise ValueError(f"Instances are built for obstruction walks of at most two colours, got {len(witness.walk)}")
