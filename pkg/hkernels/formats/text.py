from __future__ import annotations

import logging
import os
import re
from typing import TYPE_CHECKING

from ..entities import ColouredMultidigraph, Pattern
from ..errors import ParseError

if TYPE_CHECKING:
    from typing import Iterator, List, Optional, Tuple, Union

logger = logging.getLogger(__name__)

IDENT = re.compile(r"[^\s>:#]+")
ARC = re.compile(r"\s*(?P<tail>[^\s>:#]+)\s*>\s*(?P<head>[^\s>:#]+)\s*(?::\s*(?P<colour>[^\s>:#]+))?\s*$")


def _lines(text: str) -> Iterator[Tuple[int, str]]:
    """Yield (line number, content) with comments and blank lines removed."""
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if content.strip():
            yield number, content


def _column(raw: str, fragment: str) -> int:
    pos = raw.find(fragment)
    return pos + 1 if pos >= 0 else 1


def _keyword_line(line: int, content: str, keyword: str) -> List[str]:
    stripped = content.strip()
    if not stripped.startswith(keyword + ":"):
        raise ParseError(f"expected '{keyword}:' line", line, _column(content, stripped))
    values = stripped[len(keyword) + 1:].split()
    for value in values:
        if not IDENT.fullmatch(value):
            raise ParseError(f"invalid identifier {value!r}", line, _column(content, value))
    return values


def _header(lines: List[Tuple[int, str]], expected: str) -> None:
    if not lines:
        raise ParseError(f"empty input, expected '{expected}' header", 1, 1)
    line, content = lines[0]
    if content.strip() != expected:
        found = content.strip()
        raise ParseError(f"expected '{expected}' header, got {found!r}", line, _column(content, found))


def _arc(line: int, content: str, with_colour: bool) -> Tuple[str, ...]:
    match = ARC.match(content)
    if match is None:
        raise ParseError("malformed arc, expected 'tail > head" + (" : colour'" if with_colour else "'"),
                         line, _column(content, content.strip()))
    colour = match.group("colour")
    if with_colour and colour is None:
        raise ParseError("digraph arcs need a colour", line, len(content) + 1)
    if not with_colour and colour is not None:
        raise ParseError("pattern arcs take no colour", line, match.start("colour") + 1)
    if with_colour:
        return match.group("tail"), match.group("head"), colour
    return match.group("tail"), match.group("head")


def parse_pattern(text: str) -> Pattern:
    lines = list(_lines(text))
    _header(lines, "pattern")
    if len(lines) < 2:
        raise ParseError("missing 'colours:' line", lines[0][0] + 1, 1)
    colours_line, colours_content = lines[1]
    colours = _keyword_line(colours_line, colours_content, "colours")
    if len(set(colours)) != len(colours):
        duplicate = next(c for c in colours if colours.count(c) > 1)
        raise ParseError(f"duplicate colour {duplicate!r}", colours_line, _column(colours_content, duplicate))

    declared = set(colours)
    arcs = []
    for line, content in lines[2:]:
        tail, head = _arc(line, content, with_colour=False)
        for end in (tail, head):
            if end not in declared:
                raise ParseError(f"undeclared colour {end!r}", line, _column(content, end))
        arcs.append((tail, head))
    return Pattern(colours, arcs)


def serialize_pattern(p: Pattern) -> str:
    out = ["pattern", "colours: " + " ".join(p.colours)]
    out.extend(f"{t} > {h}" for t, h in p.arc_list())
    return "\n".join(out) + "\n"


def parse_digraph(
        text: str, pattern: Optional[Pattern] = None, base_dir: Optional[str] = None
) -> ColouredMultidigraph:
    """
    Parse a digraph file. The pattern comes from the `pattern` argument, or else from the file's
    `pattern: <path>` reference, resolved relative to `base_dir`.
    """
    lines = list(_lines(text))
    _header(lines, "digraph")
    body = lines[1:]
    if body and body[0][1].strip().startswith("pattern:"):
        line, content = body[0]
        reference = _keyword_line(line, content, "pattern")
        if len(reference) != 1:
            raise ParseError("expected exactly one pattern reference", line, 1)
        if pattern is None:
            path = reference[0] if base_dir is None else os.path.join(base_dir, reference[0])
            try:
                pattern = read_pattern(path)
            except OSError as e:
                raise ParseError(f"cannot read referenced pattern {reference[0]!r}: {e.strerror}", line,
                                 _column(content, reference[0])) from e
        body = body[1:]
    if pattern is None:
        raise ParseError("no pattern given and no 'pattern:' reference in the file", lines[0][0], 1)
    if not body:
        raise ParseError("missing 'vertices:' line", lines[-1][0] + 1, 1)

    vertices_line, vertices_content = body[0]
    vertices = _keyword_line(vertices_line, vertices_content, "vertices")
    if len(set(vertices)) != len(vertices):
        duplicate = next(v for v in vertices if vertices.count(v) > 1)
        raise ParseError(f"duplicate vertex {duplicate!r}", vertices_line, _column(vertices_content, duplicate))

    declared = set(vertices)
    arcs = []
    for line, content in body[1:]:
        tail, head, colour = _arc(line, content, with_colour=True)
        for end in (tail, head):
            if end not in declared:
                raise ParseError(f"undeclared vertex {end!r}", line, _column(content, end))
        if tail == head:
            raise ParseError(f"loop arc at {tail!r}", line, _column(content, tail))
        if colour not in pattern:
            raise ParseError(f"colour {colour!r} is not in the pattern", line, content.rfind(colour) + 1)
        arcs.append((tail, head, colour))
    return ColouredMultidigraph(vertices, arcs, pattern)


def serialize_digraph(d: ColouredMultidigraph, pattern_ref: Optional[str] = None) -> str:
    out = ["digraph"]
    if pattern_ref is not None:
        out.append(f"pattern: {pattern_ref}")
    out.append(("vertices: " + " ".join(d.vertices)).rstrip())
    out.extend(f"{a.tail} > {a.head} : {a.colour}" for a in d.arcs)
    return "\n".join(out) + "\n"


def parse(text: str, pattern: Optional[Pattern] = None, base_dir: Optional[str] = None):
    """Parse either kind of file, dispatching on its header."""
    lines = list(_lines(text))
    if lines and lines[0][1].strip() == "digraph":
        return parse_digraph(text, pattern, base_dir)
    return parse_pattern(text)


def serialize(obj: Union[Pattern, ColouredMultidigraph], pattern_ref: Optional[str] = None) -> str:
    if isinstance(obj, Pattern):
        return serialize_pattern(obj)
    if isinstance(obj, ColouredMultidigraph):
        return serialize_digraph(obj, pattern_ref)
    raise TypeError(f"Cannot serialize {type(obj).__name__}")


def read_pattern(path: str) -> Pattern:
    with open(path, "r", encoding="utf-8") as f:
        return parse_pattern(f.read())


def read_digraph(path: str, pattern: Optional[Pattern] = None) -> ColouredMultidigraph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_digraph(f.read(), pattern, os.path.dirname(os.path.abspath(path)))


def write_pattern(p: Pattern, path: str):
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_pattern(p))
    logger.debug("Wrote pattern with %d colours to %s", len(p), path)


def write_digraph(d: ColouredMultidigraph, path: str, pattern_ref: Optional[str] = None):
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_digraph(d, pattern_ref))
    logger.debug("Wrote digraph with %d vertices and %d arcs to %s", d.order, len(d.arcs), path)
