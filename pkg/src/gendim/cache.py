"""On-disk cache of analysis results keyed by group content."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .budget import Budgets, DEFAULT_BUDGETS
from .perm import PermGroup
from .report import GroupResult, analyze


def content_hash(G: PermGroup) -> str:
    deg, gens = G.content_key()
    blob = json.dumps([deg, [list(g) for g in gens]], separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: str | Path, version: str = __version__):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.version = version
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def get(self, G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS) -> GroupResult | None:
        path = self._path(content_hash(G))
        try:
            data = json.loads(path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        if data.get("version") != self.version or data.get("budgets") != asdict(budgets):
            return None
        return GroupResult.from_json(data["result"])

    def put(self, G: PermGroup, result: GroupResult, budgets: Budgets = DEFAULT_BUDGETS) -> None:
        data = {"version": self.version, "budgets": asdict(budgets), "result": result.to_json()}
        self._path(content_hash(G)).write_text(json.dumps(data, sort_keys=True))

    def analyze(self, G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS, name: str | None = None) -> GroupResult:
        hit = self.get(G, budgets)
        if hit is not None:
            self.hits += 1
            if name:
                hit.name = name
            return hit
        self.misses += 1
        res = analyze(G, budgets, name)
        self.put(G, res, budgets)
        return res
