"""
Search checkpoints.

A checkpoint is a JSON document:

    {
      "format": "hkernels-search-state",
      "version": 1,
      "code_version": "<package version>",
      "fingerprint": "<sha256 of the target and code version>",
      "target": {<SearchTarget.to_dict()>},
      "status": "running" | "found" | "exhausted",
      "cursor": {"pattern": i, "vertices": n, "arcs": m, "index": j},
      "stats": {"instances": ..., "dedup_hits": ..., "unknown": ..., "blocks": ...},
      "updated": "<UTC timestamp>"
    }

The cursor names the next instance to evaluate: the j-th representative (by canonical code) with m arcs on n
vertices, coloured with the i-th pattern of the enumeration. In random mode only "index" is used and it counts
samples. When the status is "found" the cursor points at the witness itself.
"""
from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import TYPE_CHECKING

from ..errors import StaleState
from ..version import __version__
from .targets import SearchTarget

if TYPE_CHECKING:
    from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

STATE_FORMAT = "hkernels-search-state"
STATE_VERSION = 1


class SearchStatus(str, Enum):
    RUNNING = "running"
    FOUND = "found"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class Cursor:
    pattern: int = 0
    vertices: int = 0
    arcs: int = 0
    index: int = 0


@dataclass(frozen=True)
class SearchStats:
    instances: int = 0
    dedup_hits: int = 0
    unknown: int = 0
    blocks: int = 0

    def __add__(self, other: SearchStats) -> SearchStats:
        return SearchStats(
            self.instances + other.instances,
            self.dedup_hits + other.dedup_hits,
            self.unknown + other.unknown,
            self.blocks + other.blocks,
        )


@dataclass(frozen=True)
class SearchState:
    target: SearchTarget
    cursor: Cursor = field(default_factory=Cursor)
    stats: SearchStats = field(default_factory=SearchStats)
    status: SearchStatus = SearchStatus.RUNNING
    updated: Optional[str] = None
    code_version: str = __version__

    @classmethod
    def initial(cls, target: SearchTarget) -> SearchState:
        return cls(target, Cursor(vertices=target.min_vertices))

    @property
    def finished(self) -> bool:
        return self.status is not SearchStatus.RUNNING

    def advanced(self, cursor: Cursor, stats: SearchStats, status: SearchStatus = SearchStatus.RUNNING) -> SearchState:
        return replace(self, cursor=cursor, stats=stats, status=status,
                       updated=datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def check_target(self, target: SearchTarget):
        if self.code_version != __version__:
            raise StaleState(f"Checkpoint written by version {self.code_version}, running {__version__}")
        if self.target.fingerprint() != target.fingerprint():
            raise StaleState("Checkpoint belongs to a different search target")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format": STATE_FORMAT,
            "version": STATE_VERSION,
            "code_version": self.code_version,
            "fingerprint": self.target.fingerprint(),
            "target": self.target.to_dict(),
            "status": self.status.value,
            "cursor": asdict(self.cursor),
            "stats": asdict(self.stats),
            "updated": self.updated,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> SearchState:
        if data.get("format") != STATE_FORMAT or data.get("version") != STATE_VERSION:
            raise StaleState(f"Unsupported checkpoint format {data.get('format')!r} version {data.get('version')!r}")
        try:
            target = SearchTarget.from_dict(data["target"])
            state = cls(
                target=target,
                cursor=Cursor(**data["cursor"]),
                stats=SearchStats(**data["stats"]),
                status=SearchStatus(data["status"]),
                updated=data.get("updated"),
                code_version=data["code_version"],
            )
        except (KeyError, TypeError, ValueError) as e:
            raise StaleState(f"Malformed checkpoint: {e}")
        if data.get("fingerprint") != target.fingerprint():
            raise StaleState("Checkpoint fingerprint does not match its target")
        return state


def save_state(state: SearchState, path: str):
    """Write the checkpoint atomically; checkpoints have a single writer."""
    tmp_path = f"{path}.tmp"
    with open(tmp_path, "w", encoding="utf-8") as f:
        json.dump(state.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")
    os.replace(tmp_path, path)
    logger.info("Checkpoint written to %s at %s", path, state.cursor)


def load_state(path: str) -> SearchState:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise StaleState(f"Checkpoint {path} is not valid JSON: {e}")
    state = SearchState.from_dict(data)
    logger.debug("Loaded checkpoint %s: %s", path, state.cursor)
    return state
