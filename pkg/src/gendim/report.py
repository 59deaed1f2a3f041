"""Per-group analysis records and CSV/JSON tables."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .budget import Budgets, BudgetExceeded, DEFAULT_BUDGETS
from .classify import ClassificationReport, classify
from .dimensions import UNKNOWN, DimensionReport, dimension_report
from .perm import PermGroup

FLAGS = ("abelian", "nilpotent", "solvable", "supersolvable", "frattini_free", "phi_meets_derived_trivial", "flat")
CSV_FIELDS = ["name", "order", "r", "m", "i", "maxdim", *FLAGS, "seconds"]


@dataclass
class GroupResult:
    name: str
    order: int
    degree: int
    dims: DimensionReport
    flags: dict
    timings: dict = field(default_factory=dict)

    def row(self) -> dict:
        out = {"name": self.name, "order": self.order, **self.dims.values()}
        out.update({k: _flag(self.flags.get(k)) for k in FLAGS})
        out["seconds"] = f"{sum(self.timings.values()):.3f}"
        return out

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "name": self.name,
            "order": self.order,
            "degree": self.degree,
            **self.dims.values(),
            "bounds": self.dims.bounds,
            "flags": self.flags,
            "witnesses": self.dims.witnesses,
        }
        if timings:
            out["timings"] = self.timings
        return out

    @classmethod
    def from_json(cls, d: dict) -> "GroupResult":
        dims = DimensionReport(d["r"], d["m"], d["i"], d["maxdim"], dict(d.get("bounds", {})),
                               dict(d.get("witnesses", {})))
        return cls(d["name"], d["order"], d["degree"], dims, dict(d["flags"]), dict(d.get("timings", {})))


def _flag(v) -> str:
    return "unknown" if v is None else str(v).lower()


def analyze(G: PermGroup, budgets: Budgets = DEFAULT_BUDGETS, name: str | None = None) -> GroupResult:
    t0 = time.perf_counter()
    try:
        dims = dimension_report(G, budgets)
    except BudgetExceeded:
        dims = DimensionReport(UNKNOWN, UNKNOWN, UNKNOWN, UNKNOWN)
    t1 = time.perf_counter()
    m = dims.m if dims.known("m") else None
    i = dims.i if dims.known("i") else None
    cls: ClassificationReport = classify(G, budgets, m=m, i=i)
    t2 = time.perf_counter()
    return GroupResult(name or G.name or "group", G.order, G.degree, dims, cls.as_dict(),
                       {"dimensions": round(t1 - t0, 6), "classify": round(t2 - t1, 6)})


def sort_rows(results: list[GroupResult]) -> list[GroupResult]:
    return sorted(results, key=lambda r: (r.order, r.name))


def to_csv(results: list[GroupResult]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in sort_rows(results):
        w.writerow(r.row())
    return buf.getvalue()


def to_json(results: list[GroupResult], timings: bool = True) -> str:
    return json.dumps([r.to_json(timings) for r in sort_rows(results)], indent=2, sort_keys=True) + "\n"


def write_report(results: list[GroupResult], fmt: str, destination: str | Path | None) -> str:
    if fmt == "csv":
        text = to_csv(results)
    elif fmt == "json":
        text = to_json(results)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if destination is not None and str(destination) != "-":
        Path(destination).write_text(text)
    return text
