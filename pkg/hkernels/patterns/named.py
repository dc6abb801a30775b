"""Named patterns: the three-colour reflexive classes, F1, the F4/F5 gadget pairs and the B2-not-B3 separator."""
from __future__ import annotations

from typing import TYPE_CHECKING

from ..constructions.sums import linear_sum_patterns
from ..entities import Pattern, complete_reflexive, disjoint_union_patterns

if TYPE_CHECKING:
    from typing import Dict, Tuple


def _k(*colours: str) -> Pattern:
    return complete_reflexive(colours)


def _loops(colours, arcs) -> Pattern:
    return Pattern(colours, [(c, c) for c in colours] + list(arcs))


def f1_pattern() -> Pattern:
    """Reflexive on r, g, b with every arc except (b, g)."""
    colours = ("r", "g", "b")
    return Pattern(colours, [(t, h) for t in colours for h in colours if (t, h) != ("b", "g")])


def f4_gadget_patterns() -> Tuple[Pattern, Pattern]:
    """
    (H, H') for the F4 gadget. y dominates every colour and is entered only from x, z and w are true twins whose
    contraction is F4, and H' adds (x, w).
    """
    colours = ("x", "y", "z", "w")
    h = _loops(colours, [("y", "x"), ("y", "z"), ("y", "w"), ("x", "y"), ("z", "w"), ("w", "z")])
    return h, Pattern(colours, h.arc_list() + [("x", "w")])


def f5_gadget_patterns() -> Tuple[Pattern, Pattern]:
    """(H, H') for the F5 gadget: y universal, z and w true twins contracting to F5, and H' adds (x, w)."""
    colours = ("x", "y", "z", "w")
    h = _loops(colours, [("y", "x"), ("x", "y"), ("y", "z"), ("z", "y"), ("y", "w"), ("w", "y"),
                         ("z", "w"), ("w", "z")])
    return h, Pattern(colours, h.arc_list() + [("x", "w")])


def f4_pattern() -> Pattern:
    return _loops(("x", "y", "z"), [("y", "x"), ("x", "y"), ("y", "z")])


def f5_pattern() -> Pattern:
    return _loops(("x", "y", "z"), [("y", "x"), ("x", "y"), ("y", "z"), ("z", "y")])


def separation_pattern() -> Pattern:
    """Complete reflexive on u, u', b, g without (b, u), (g, u'), (b, g) and (g, b): in B2 but not panchromatic."""
    colours = ("u", "u'", "b", "g")
    missing = {("b", "u"), ("g", "u'"), ("b", "g"), ("g", "b")}
    return Pattern(colours, [(t, h) for t in colours for h in colours if (t, h) not in missing])


def two_isolated_reflexive() -> Pattern:
    return disjoint_union_patterns(_k("a"), _k("b"))


def three_vertex_named() -> Dict[str, Pattern]:
    """One representative per named reflexive class on three colours."""
    return {
        "K3": _k("a", "b", "c"),
        "K1•K2": linear_sum_patterns(_k("a"), _k("b", "c")),
        "K2•K1": linear_sum_patterns(_k("a", "b"), _k("c")),
        "K2+K1": disjoint_union_patterns(_k("a", "b"), _k("c")),
        "2K1•K1": linear_sum_patterns(disjoint_union_patterns(_k("a"), _k("b")), _k("c")),
        "T3": _loops(("a", "b", "c"), [("a", "b"), ("a", "c"), ("b", "c")]),
        "(K1•K1)+K1": disjoint_union_patterns(linear_sum_patterns(_k("a"), _k("b")), _k("c")),
        "K1•2K1": linear_sum_patterns(_k("a"), disjoint_union_patterns(_k("b"), _k("c"))),
        "3K1": disjoint_union_patterns(disjoint_union_patterns(_k("a"), _k("b")), _k("c")),
        "P3": _loops(("a", "b", "c"), [("a", "b"), ("b", "c")]),
        "C3": _loops(("a", "b", "c"), [("a", "b"), ("b", "c"), ("c", "a")]),
        "F1": f1_pattern(),
        "F4": f4_pattern(),
        "F5": f5_pattern(),
    }
