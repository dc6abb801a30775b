"""
Machine-readable command reports.

    hkernels-report 1
    command: kernel
    exit: 0
    status: found
    kernel: u v

Every line after the header is `key: value`. Keys may repeat; their values keep their order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

from ..errors import ParseError

if TYPE_CHECKING:
    from typing import List, Optional, Tuple

REPORT_HEADER = "hkernels-report"
REPORT_VERSION = 1
KEY = re.compile(r"[a-z0-9][a-z0-9-]*")


@dataclass(frozen=True)
class Report:
    command: str
    exit_code: int
    fields: Tuple[Tuple[str, str], ...] = ()

    def get(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return next((value for k, value in self.fields if k == key), default)

    def get_all(self, key: str) -> List[str]:
        return [value for k, value in self.fields if k == key]


def render_report(report: Report) -> str:
    out = [f"{REPORT_HEADER} {REPORT_VERSION}", f"command: {report.command}", f"exit: {report.exit_code}"]
    for key, value in report.fields:
        if not KEY.fullmatch(key):
            raise ValueError(f"Invalid report key {key!r}")
        if "\n" in value:
            raise ValueError(f"Report value for {key!r} spans several lines")
        out.append(f"{key}: {value}".rstrip())
    return "\n".join(out) + "\n"


def parse_report(text: str) -> Report:
    lines = text.splitlines()
    if not lines or lines[0].strip() != f"{REPORT_HEADER} {REPORT_VERSION}":
        raise ParseError(f"expected '{REPORT_HEADER} {REPORT_VERSION}' header", 1, 1)
    pairs = []
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        key, sep, value = line.partition(":")
        if not sep or not KEY.fullmatch(key):
            raise ParseError("expected 'key: value'", number, 1)
        pairs.append((key, value[1:] if value.startswith(" ") else value))
    if len(pairs) < 2 or pairs[0][0] != "command" or pairs[1][0] != "exit":
        raise ParseError("report must start with 'command:' and 'exit:' lines", 2, 1)
    try:
        exit_code = int(pairs[1][1])
    except ValueError:
        raise ParseError(f"exit code {pairs[1][1]!r} is not an integer", 3, 7)
    return Report(pairs[0][1], exit_code, tuple(pairs[2:]))
