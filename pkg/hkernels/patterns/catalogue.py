from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

from ..canonical import canonical_code
from ..enumeration import reflexive_patterns
from .b2 import in_B2
from .named import f4_pattern, f5_pattern, three_vertex_named
from .obstruction import find_obstruction
from .structural import Panchromatic, structural_panchromatic, walk_panchromatic
from .transitivity import is_transitive

if TYPE_CHECKING:
    from typing import List, Tuple
    from ..canonical import CanonicalCode
    from ..entities import Pattern

logger = logging.getLogger(__name__)

EVIDENCE_TRANSITIVE_WALKS = "transitive+walk-partition"
EVIDENCE_OBSTRUCTION = "obstruction-walk"
EVIDENCE_TWIN_GADGET = "twin-gadget"
EVIDENCE_OPEN = "open-problem"


@dataclass(frozen=True)
class CatalogueEntry:
    pattern: Pattern
    code: CanonicalCode
    names: Tuple[str, ...]
    transitive: bool
    in_B2: bool
    panchromatic_by_paths: Panchromatic
    evidence: str

    def row(self) -> str:
        names = ",".join(self.names) if self.names else "-"
        return (
            f"{self.code.hex()}\t{names}\ttransitive={'yes' if self.transitive else 'no'}\t"
            f"B2={'yes' if self.in_B2 else 'no'}\tpanchromatic={self.panchromatic_by_paths.value}\t{self.evidence}"
        )


def _classify(p: Pattern, names: Tuple[str, ...], code: CanonicalCode,
              twin_codes: Tuple[CanonicalCode, ...], f1_code: CanonicalCode) -> CatalogueEntry:
    transitive = is_transitive(p)
    if transitive:
        # Transitive patterns are panchromatic by paths exactly when they are panchromatic by walks
        verdict = walk_panchromatic(p)
        evidence = EVIDENCE_TRANSITIVE_WALKS
    elif find_obstruction(p) is not None:
        verdict, evidence = Panchromatic.NO, EVIDENCE_OBSTRUCTION
    elif code in twin_codes:
        verdict, evidence = Panchromatic.NO, EVIDENCE_TWIN_GADGET
    elif code == f1_code:
        verdict, evidence = Panchromatic.OPEN_F1, EVIDENCE_OPEN
    else:
        raise ValueError(f"No classification rule covers pattern {p}")
    return CatalogueEntry(p, code, names, transitive, in_B2(p), verdict, evidence)


@lru_cache(maxsize=None)
def three_vertex_catalogue() -> Tuple[CatalogueEntry, ...]:
    """All 16 reflexive patterns on three colours, in canonical order, with their classification."""
    names_by_code = {}
    for name, p in three_vertex_named().items():
        names_by_code.setdefault(canonical_code(p), []).append(name)
    twin_codes = (canonical_code(f4_pattern()), canonical_code(f5_pattern()))
    f1_code = next(code for code, names in names_by_code.items() if "F1" in names)

    entries = []
    for p in reflexive_patterns(3):
        code = canonical_code(p)
        entries.append(_classify(p, tuple(names_by_code.get(code, ())), code, twin_codes, f1_code))
    logger.debug("Catalogue built with %d entries", len(entries))
    return tuple(entries)


def catalogue_table(entries=None) -> str:
    entries = three_vertex_catalogue() if entries is None else entries
    header = "code\tnames\ttransitive\tB2\tpanchromatic\tevidence"
    return "\n".join([header] + [entry.row() for entry in entries]) + "\n"


def catalogue_entry(p: Pattern) -> CatalogueEntry:
    code = canonical_code(p)
    for entry in three_vertex_catalogue():
        if entry.code == code:
            return entry
    raise KeyError(f"Pattern is not a reflexive three-colour pattern: {p}")


def check_structural_agreement(f1_is_panchromatic: bool) -> List[CatalogueEntry]:
    """Entries whose settled verdict disagrees with the partition test under the given F1 hypothesis."""
    return [
        entry for entry in three_vertex_catalogue()
        if entry.panchromatic_by_paths is not Panchromatic.OPEN_F1
        and structural_panchromatic(entry.pattern, f1_is_panchromatic) is not entry.panchromatic_by_paths
    ]