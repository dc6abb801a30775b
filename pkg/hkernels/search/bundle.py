"""
Witness bundles: a directory holding `pattern.txt`, `digraph.txt` (referencing `pattern.txt`) and `transcript.txt`
for a witness, or `certificate.txt` for an exhausted search. Bundles carry no timestamps, so equal outcomes give
byte-identical directories.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import TYPE_CHECKING

from ..formats.text import read_digraph, read_pattern, write_digraph, write_pattern
from ..util import force_delete_path

if TYPE_CHECKING:
    from typing import Optional, Tuple
    from ..entities import ColouredMultidigraph, Pattern
    from .runner import SearchOutcome

logger = logging.getLogger(__name__)

PATTERN_FILE = "pattern.txt"
DIGRAPH_FILE = "digraph.txt"
TRANSCRIPT_FILE = "transcript.txt"
CERTIFICATE_FILE = "certificate.txt"


@dataclass(frozen=True)
class Bundle:
    pattern: Optional[Pattern] = None
    digraph: Optional[ColouredMultidigraph] = None
    transcript: Tuple[str, ...] = ()
    certificate: Tuple[str, ...] = ()


def _write_lines(path: str, lines):
    with open(path, "w", encoding="utf-8") as f:
        f.write("".join(f"{line}\n" for line in lines))


def _read_lines(path: str) -> Tuple[str, ...]:
    with open(path, "r", encoding="utf-8") as f:
        return tuple(line.rstrip("\n") for line in f)


def write_bundle(outcome: SearchOutcome, directory: str) -> Optional[str]:
    """Replace `directory` with the bundle for `outcome`. Returns None when there is nothing to write."""
    if outcome.witness is None and outcome.certificate is None:
        return None
    force_delete_path(directory)
    os.makedirs(directory)
    if outcome.witness is not None:
        witness = outcome.witness
        write_pattern(witness.pattern, os.path.join(directory, PATTERN_FILE))
        if witness.digraph is not None:
            write_digraph(witness.digraph, os.path.join(directory, DIGRAPH_FILE), pattern_ref=PATTERN_FILE)
        _write_lines(os.path.join(directory, TRANSCRIPT_FILE), witness.transcript)
    else:
        _write_lines(os.path.join(directory, CERTIFICATE_FILE), outcome.certificate.describe())
    logger.info("Bundle written to %s", directory)
    return directory


def read_bundle(directory: str) -> Bundle:
    def path(name):
        return os.path.join(directory, name)

    if os.path.exists(path(CERTIFICATE_FILE)):
        return Bundle(certificate=_read_lines(path(CERTIFICATE_FILE)))
    pattern = read_pattern(path(PATTERN_FILE))
    digraph = read_digraph(path(DIGRAPH_FILE), pattern) if os.path.exists(path(DIGRAPH_FILE)) else None
    return Bundle(pattern, digraph, _read_lines(path(TRANSCRIPT_FILE)))
