from .text import (
    parse,
    parse_digraph,
    parse_pattern,
    read_digraph,
    read_pattern,
    serialize,
    serialize_digraph,
    serialize_pattern,
    write_digraph,
    write_pattern,
)
from .gadgetmap import parse_gadget_map, read_gadget_map, serialize_gadget_map, write_gadget_map
from .report import Report, parse_report, render_report
