"""Group files: JSON records with generators, optional declared maximal subgroups and metadata.

Format (0-based points)::

    {
      "name": "S3",
      "degree": 3,
      "generators": [[1, 0, 2], [1, 2, 0]],
      "declared_maximal": [{"generators": [[1, 0, 2]]}, {"stabilized_points": [0]}],
      "metadata": {"expected": {"m": 2}}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .lattice import SubgroupSpec, set_stabilizer
from .perm import Permutation, PermGroup, PermutationError

SCHEMA = {
    "type": "object",
    "required": ["degree", "generators"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "degree": {"type": "integer", "minimum": 1},
        "generators": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
        "declared_maximal": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "generators": {"type": "array",
                                   "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
                    "stabilized_points": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
                "oneOf": [{"required": ["generators"]}, {"required": ["stabilized_points"]}],
            },
        },
        "metadata": {"type": "object"},
    },
}


class GroupFileError(ValueError):
    pass


@dataclass
class GroupRecord:
    name: str
    degree: int
    generators: list[list[int]]
    declared_maximal: list[dict] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def group(self) -> PermGroup:
        return PermGroup(self.degree, [Permutation(g) for g in self.generators], name=self.name)

    def declared_specs(self, G: PermGroup | None = None) -> list[SubgroupSpec]:
        G = G or self.group()
        out = []
        for k, d in enumerate(self.declared_maximal):
            name = d.get("name", f"declared[{k}]")
            if "generators" in d:
                spec = SubgroupSpec([Permutation(g) for g in d["generators"]], name=name)
            else:
                spec = set_stabilizer(G, d["stabilized_points"])
                spec.name = name
            out.append(spec)
        return out

    @property
    def expected(self) -> dict:
        return self.metadata.get("expected", {})

    def to_json(self) -> dict:
        out = {"name": self.name, "degree": self.degree, "generators": self.generators}
        if self.declared_maximal:
            out["declared_maximal"] = self.declared_maximal
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    @classmethod
    def from_group(cls, G: PermGroup, **kw) -> "GroupRecord":
        return cls(G.name or "group", G.degree, [list(g.images) for g in G.gens], **kw)


def parse_record(data: dict, source: str = "<record>") -> GroupRecord:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise GroupFileError(f"{source}: {exc.message}") from None
    deg = data["degree"]
    gens = data["generators"]
    for g in gens:
        _check_perm(g, deg, source)
    rec = GroupRecord(data.get("name", Path(source).stem), deg, gens,
                      data.get("declared_maximal", []), data.get("metadata", {}))
    G = rec.group()
    for k, d in enumerate(rec.declared_maximal):
        if "generators" in d:
            for g in d["generators"]:
                _check_perm(g, deg, source)
                if not G.contains(Permutation(g)):
                    raise GroupFileError(f"{source}: declared subgroup {k} is not a subgroup of the group")
        elif any(x >= deg for x in d["stabilized_points"]):
            raise GroupFileError(f"{source}: declared subgroup {k} names a point outside the domain")
    return rec


def _check_perm(images: list[int], degree: int, source: str) -> None:
    if len(images) != degree:
        raise GroupFileError(f"{source}: image array of length {len(images)} for degree {degree}")
    try:
        Permutation(images)
    except PermutationError as exc:
        raise GroupFileError(f"{source}: {exc}") from None


def load_group(path: str | Path) -> GroupRecord:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise GroupFileError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}: malformed JSON ({exc.msg})") from None
    return parse_record(data, str(path))


def save_group(record: GroupRecord, path: str | Path) -> None:
    Path(path).write_text(json.dumps(record.to_json(), indent=2) + "\n")
