"""
CoL Toolkit - Shallow Cirquents
===============================
The CCC/CL5 cirquent: a pool of oformulas plus a sequence of ogroups, each
ogroup a set of pool positions. A cirquent is true when every ogroup
contains a true oformula, so it reads as the conjunction over ogroups of
the disjunction of their members.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from src.logic.classical import eval_classical
from src.logic.errors import CoLError, SchemaError
from src.logic.formula import Atom, FalseConst, Formula, Pand, Por, TrueConst
from src.logic.normalizer import normalize
from src.logic.occurrences import Path, literal_sites
from src.logic.parsers.formula_parser import parse, render

Port = Tuple[int, Path]


@dataclass(frozen=True)
class ShallowCirquent:
    pool: Tuple[Formula, ...] = ()
    groups: Tuple[FrozenSet[int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pool", tuple(self.pool))
        object.__setattr__(self, "groups", tuple(frozenset(g) for g in self.groups))
        for group in self.groups:
            for member in group:
                if not 0 <= member < len(self.pool):
                    raise ValueError(f"ogroup member {member} is not a pool position")

    def __len__(self) -> int:
        return len(self.pool)

    @property
    def is_empty(self) -> bool:
        return not self.pool and not self.groups

    def groups_containing(self, position: int) -> List[int]:
        return [i for i, group in enumerate(self.groups) if position in group]

    def as_formula(self) -> Formula:
        """Conjunction over ogroups of the disjunction of their members"""
        clauses = [_join(Por, [self.pool[i] for i in sorted(g)], FalseConst()) for g in self.groups]
        return _join(Pand, clauses, TrueConst())

    def __str__(self) -> str:
        pool = ", ".join(render(f) for f in self.pool)
        groups = " ".join("{" + ",".join(str(i) for i in sorted(g)) + "}" for g in self.groups)
        return f"<{pool}> [{groups}]"


def _join(node, parts: Sequence[Formula], unit: Formula) -> Formula:
    if not parts:
        return unit
    if len(parts) == 1:
        return parts[0]
    return node(tuple(parts))


EMPTY = ShallowCirquent()


def singleton(f: Formula) -> ShallowCirquent:
    """The cirquent with a single ogroup that contains just f"""
    return ShallowCirquent((normalize(f),), (frozenset({0}),))


def cirquent_true(c: ShallowCirquent, model: Mapping[Atom, bool]) -> bool:
    return all(any(eval_classical(c.pool[i], model) for i in group) for group in c.groups)


def ports(c: ShallowCirquent) -> List[Tuple[Port, Formula]]:
    """Every literal occurrence as ((pool position, path), literal), in pool then path order"""
    out = []
    for position, f in enumerate(c.pool):
        for site in literal_sites(f):
            out.append(((position, site.path), site.subformula))
    return out


def cirquent_to_json(c: ShallowCirquent) -> Dict[str, Any]:
    return {"pool": [render(f) for f in c.pool], "groups": [sorted(g) for g in c.groups]}


def cirquent_from_json(data: Any) -> ShallowCirquent:
    try:
        pool = tuple(normalize(parse(text)) for text in data["pool"])
        groups = tuple(frozenset(int(i) for i in g) for g in data["groups"])
        return ShallowCirquent(pool, groups)
    except CoLError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed cirquent: {exc}") from exc


def dumps(c: ShallowCirquent) -> str:
    return json.dumps(cirquent_to_json(c), ensure_ascii=False)


def to_dot(c: ShallowCirquent, name: str = "cirquent") -> str:
    """Bullet-and-arc picture: ogroups as bullets on top, the pool on the bottom row."""
    lines = [f"graph {name} {{", "  rankdir=TB;", "  node [fontname=\"Helvetica\"];"]
    lines.append("  { rank=min; " + " ".join(f"g{i};" for i in range(len(c.groups))) + " }")
    lines.append("  { rank=max; " + " ".join(f"f{i};" for i in range(len(c.pool))) + " }")
    for i in range(len(c.groups)):
        lines.append(f"  g{i} [shape=point, width=0.12];")
    for i, f in enumerate(c.pool):
        lines.append(f"  f{i} [shape=plaintext, label={json.dumps(render(f, style='unicode'), ensure_ascii=False)}];")
    for i, group in enumerate(c.groups):
        for member in sorted(group):
            lines.append(f"  g{i} -- f{member};")
    # keeps the pool in left-to-right order
    if len(c.pool) > 1:
        lines.append("  " + " -- ".join(f"f{i}" for i in range(len(c.pool))) + " [style=invis];")
    lines.append("}")
    return "\n".join(lines)


def from_groups(pool: Iterable[Formula], groups: Iterable[Iterable[int]]) -> ShallowCirquent:
    return ShallowCirquent(tuple(pool), tuple(frozenset(g) for g in groups))
