# memory/artifact_store.py
"""
ArtifactStore: every file a run produces goes through here, so the agents
share one record of what exists and the writers stay byte-stable.
"""

import os
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
import ujson

from utils.errors import ConfigError
from utils.logger import get_logger

logger = get_logger("memory.artifacts")

JSON_INDENT = 2


def write_json(path: str, payload: Any) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(ujson.dumps(payload, indent=JSON_INDENT, sort_keys=True, ensure_ascii=False, escape_forward_slashes=False))
        f.write("\n")
    return path


def write_csv(path: str, rows: Sequence[Dict[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    frame = pd.DataFrame(list(rows), columns=list(columns) if columns else None)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return ujson.load(f)
    except (OSError, ValueError) as e:
        raise ConfigError(f"cannot read {path!r}: {e}") from e


class ArtifactStore:
    def __init__(self, out_dir: str = "out"):
        self.out_dir = out_dir
        self.store: List[Dict[str, Any]] = []

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    def add(self, name: str, payload: Any, kind: str, metadata: Optional[Dict[str, Any]] = None, columns: Optional[Sequence[str]] = None) -> str:
        """Write ``payload`` under out_dir; a ``.csv`` name takes a list of row dicts."""
        path = self.path(name)
        if name.endswith(".csv"):
            write_csv(path, payload, columns)
        else:
            write_json(path, payload)
        self.store.append({"name": name, "path": path, "kind": kind, "metadata": metadata or {}})
        logger.debug("wrote %s (%s)", path, kind)
        return path

    def paths(self) -> List[str]:
        return [item["path"] for item in self.store]
