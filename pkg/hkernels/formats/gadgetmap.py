"""
Gadget map files:

    gadgetmap
    kind: F4
    original: u v w
    added S_hat: v^
    maps v^: v
"""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from ..constructions.gadgetmap import ConstructionKind, GadgetMap
from ..errors import ParseError
from .text import IDENT, _column, _header, _keyword_line, _lines

if TYPE_CHECKING:
    from typing import Dict, List, Tuple

logger = logging.getLogger(__name__)


def serialize_gadget_map(gadget_map: GadgetMap) -> str:
    out = ["gadgetmap", f"kind: {gadget_map.kind.value}",
           ("original: " + " ".join(gadget_map.original_vertices)).rstrip()]
    for name, vertices in gadget_map.added.items():
        out.append((f"added {name}: " + " ".join(vertices)).rstrip())
    for vertex, originals in gadget_map.correspondence.items():
        out.append((f"maps {vertex}: " + " ".join(originals)).rstrip())
    return "\n".join(out) + "\n"


def _labelled(line: int, content: str, keyword: str) -> Tuple[str, List[str]]:
    head, sep, rest = content.strip().partition(":")
    parts = head.split()
    if not sep or len(parts) != 2 or parts[0] != keyword or not IDENT.fullmatch(parts[1]):
        raise ParseError(f"expected '{keyword} <name>:' line", line, 1)
    values = rest.split()
    for value in values:
        if not IDENT.fullmatch(value):
            raise ParseError(f"invalid identifier {value!r}", line, _column(content, value))
    return parts[1], values


def parse_gadget_map(text: str) -> GadgetMap:
    lines = list(_lines(text))
    _header(lines, "gadgetmap")
    if len(lines) < 3:
        raise ParseError("gadget map needs 'kind:' and 'original:' lines", lines[-1][0] + 1, 1)
    kind_line, kind_content = lines[1]
    kind_values = _keyword_line(kind_line, kind_content, "kind")
    try:
        kind = ConstructionKind(" ".join(kind_values))
    except ValueError:
        raise ParseError(f"unknown construction kind {' '.join(kind_values)!r}", kind_line, 7)
    original = _keyword_line(lines[2][0], lines[2][1], "original")

    added: Dict[str, Tuple[str, ...]] = {}
    correspondence: Dict[str, Tuple[str, ...]] = {}
    for line, content in lines[3:]:
        keyword = content.split(None, 1)[0]
        if keyword == "added":
            name, values = _labelled(line, content, "added")
            added[name] = tuple(values)
        elif keyword == "maps":
            name, values = _labelled(line, content, "maps")
            correspondence[name] = tuple(values)
        else:
            raise ParseError(f"unexpected line starting with {keyword!r}", line, _column(content, keyword))
    try:
        return GadgetMap(kind, tuple(original), added, correspondence)
    except ValueError as e:
        raise ParseError(str(e), lines[2][0], 1)


def read_gadget_map(path: str) -> GadgetMap:
    with open(path, "r", encoding="utf-8") as f:
        return parse_gadget_map(f.read())


def write_gadget_map(gadget_map: GadgetMap, path: str):
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_gadget_map(gadget_map))
    logger.debug("Wrote %s gadget map to %s", gadget_map.kind.value, path)
