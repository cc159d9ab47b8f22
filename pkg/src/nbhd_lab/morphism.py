"""Maps between finite neighborhood spaces and continuity."""
from __future__ import annotations

import json
from typing import Mapping

from .pstack import Carrier, DomainError, format_label, image_stack, refines
from .space import NbdStructure


class SpaceMap:
    """A total function ``dom -> cod`` between finite carriers."""

    __slots__ = ("dom", "cod", "table", "_img", "_pre")

    def __init__(self, dom: Carrier, cod: Carrier, table: Mapping):
        missing = [x for x in dom if x not in table]
        if missing:
            raise DomainError(f"map undefined at {missing!r}")
        extra = [x for x in table if x not in dom]
        if extra:
            raise DomainError(f"map defined outside its domain at {extra!r}")
        self.dom = dom
        self.cod = cod
        self.table = {x: table[x] for x in dom}
        self._img = [cod.point(self.table[x]) for x in dom]
        pre = [0] * len(cod)
        for i, x in enumerate(dom):
            pre[cod.index(self.table[x])] |= 1 << i
        self._pre = pre

    @classmethod
    def identity(cls, carrier: Carrier) -> "SpaceMap":
        return cls(carrier, carrier, {x: x for x in carrier})

    @classmethod
    def constant(cls, dom: Carrier, cod: Carrier, y) -> "SpaceMap":
        return cls(dom, cod, {x: y for x in dom})

    def __call__(self, x):
        return self.table[x]

    def __eq__(self, other):
        return (
            isinstance(other, SpaceMap)
            and self.dom == other.dom
            and self.cod == other.cod
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.dom, self.cod, tuple(self.table.values())))

    def __repr__(self):
        body = ", ".join(f"{x}->{y}" for x, y in self.table.items())
        return f"SpaceMap({body})"

    def image_mask(self, mask: int) -> int:
        out = 0
        img = self._img
        i = 0
        while mask:
            if mask & 1:
                out |= img[i]
            mask >>= 1
            i += 1
        return out

    def preimage_mask(self, mask: int) -> int:
        out = 0
        pre = self._pre
        j = 0
        while mask:
            if mask & 1:
                out |= pre[j]
            mask >>= 1
            j += 1
        return out

    def fiber(self, y) -> tuple:
        return self.dom.labels(self._pre[self.cod.index(y)])

    def is_surjective(self) -> bool:
        return all(self._pre)

    def then(self, g: "SpaceMap") -> "SpaceMap":
        """Composite ``g o self``."""
        if self.cod != g.dom:
            raise DomainError("maps are not composable")
        return SpaceMap(self.dom, g.cod, {x: g.table[y] for x, y in self.table.items()})

    def to_dict(self) -> dict:
        return {format_label(x): format_label(y) for x, y in self.table.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, dom: Carrier, cod: Carrier, data: Mapping[str, str]) -> "SpaceMap":
        dom_names = {format_label(x): x for x in dom}
        cod_names = {format_label(y): y for y in cod}
        table = {}
        for k, v in data.items():
            if k not in dom_names:
                raise DomainError(f"{k!r} is not a point of the domain")
            if v not in cod_names:
                raise DomainError(f"{v!r} is not a point of the codomain")
            table[dom_names[k]] = cod_names[v]
        return cls(dom, cod, table)


def compose(f: SpaceMap, g: SpaceMap) -> SpaceMap:
    """``g o f``."""
    return f.then(g)


def _check(f: SpaceMap, nuX: NbdStructure, nuY: NbdStructure):
    if nuX.carrier != f.dom or nuY.carrier != f.cod:
        raise DomainError("structures do not live on the map's domain/codomain")


def is_continuous_at(f: SpaceMap, nuX: NbdStructure, nuY: NbdStructure, x) -> bool:
    _check(f, nuX, nuY)
    return refines(image_stack(f, nuX(x)), nuY(f(x)))


def is_continuous(f: SpaceMap, nuX: NbdStructure, nuY: NbdStructure) -> bool:
    _check(f, nuX, nuY)
    for x, s in zip(f.dom, nuX.stacks):
        target = nuY.stacks[f.cod.index(f.table[x])]
        if not refines(image_stack(f, s), target):
            return False
    return True
