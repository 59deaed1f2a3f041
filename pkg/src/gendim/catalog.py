"""Built-in catalog of constructed groups plus shipped group files."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from . import constructions as C
from .perm import PermGroup
from .records import GroupRecord, parse_record

import json


@dataclass
class CatalogEntry:
    name: str
    build: Callable[[], PermGroup]
    tags: frozenset = field(default_factory=frozenset)
    record: GroupRecord | None = None
    _group: PermGroup | None = field(default=None, repr=False)

    def group(self) -> PermGroup:
        if self._group is None:
            G = self.build()
            G.name = self.name
            self._group = G
        return self._group


def _entry(name, build, *tags):
    return CatalogEntry(name, build, frozenset(tags))


def data_records() -> list[GroupRecord]:
    out = []
    for f in sorted(resources.files("gendim.data").iterdir(), key=lambda p: p.name):
        if f.name.endswith(".json"):
            out.append(parse_record(json.loads(f.read_text()), f.name))
    return out


def builtin_entries() -> list[CatalogEntry]:
    e = []
    for n in list(range(1, 13)) + [16, 27, 32, 64]:
        e.append(_entry(f"C{n}", lambda n=n: C.cyclic(n), "abelian", "cyclic"))
    for p, k in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2)]:
        e.append(_entry(f"E{p}^{k}", lambda p=p, k=k: C.elementary_abelian(p, k), "abelian", "elementary"))
    for ns in [(2, 4), (2, 8), (4, 4), (2, 2, 4), (3, 9), (2, 6), (2, 2, 2, 4), (4, 8), (2, 4, 4)]:
        e.append(_entry("x".join(f"C{n}" for n in ns), lambda ns=ns: C.abelian(*ns), "abelian"))
    for n in [3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 32]:
        e.append(_entry(f"D{2 * n}", lambda n=n: C.dihedral(n), "dihedral"))
    for o in [8, 16, 32, 64]:
        e.append(_entry(f"Q{o}", lambda o=o: C.quaternion(o), "quaternion"))
    for n in [3, 4, 5, 6]:
        e.append(_entry(f"S{n}", lambda n=n: C.symmetric(n), "symmetric"))
    for n in [4, 5, 6]:
        e.append(_entry(f"A{n}", lambda n=n: C.alternating(n), "alternating"))
    for p in [2, 3]:
        e.append(_entry(f"C{p} wr C{p}", lambda p=p: C.wreath_cyclic(C.cyclic(p), p), "wreath"))
    products = {
        "C2 x S3": lambda: C.direct(C.cyclic(2), C.symmetric(3)),
        "C3 x S3": lambda: C.direct(C.cyclic(3), C.symmetric(3)),
        "S3 x S3": lambda: C.direct(C.symmetric(3), C.symmetric(3)),
        "C2 x A4": lambda: C.direct(C.cyclic(2), C.alternating(4)),
        "C2 x Q8": lambda: C.direct(C.cyclic(2), C.quaternion(8)),
        "C2 x D8": lambda: C.direct(C.cyclic(2), C.dihedral(4)),
        "C4 x S3": lambda: C.direct(C.cyclic(4), C.symmetric(3)),
        "C5 x D10": lambda: C.direct(C.cyclic(5), C.dihedral(5)),
        "S3 x D10": lambda: C.direct(C.symmetric(3), C.dihedral(5)),
        "C3 x Q8": lambda: C.direct(C.cyclic(3), C.quaternion(8)),
    }
    for name, build in products.items():
        e.append(_entry(name, build, "product"))
    kto = {"KtoG(C2)": C.cyclic(2), "KtoG(C6)": C.cyclic(6), "KtoG(S3)": C.symmetric(3),
           "KtoG(C2xC2)": C.abelian(2, 2), "KtoG(C4)": C.cyclic(4)}
    for name, K in kto.items():
        e.append(_entry(name, lambda K=K: C.ktog_construct(K)[0], "ktog"))
    return e


def catalog(include_data: bool = True) -> list[CatalogEntry]:
    entries = builtin_entries()
    if include_data:
        for rec in data_records():
            entries.append(CatalogEntry(rec.name, rec.group, frozenset({"data"}), rec))
    return entries


def find(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(name)
