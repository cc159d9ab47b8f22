"""Neighborhood structures on a fixed carrier and their lattice."""
from __future__ import annotations

import json
from functools import reduce
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .pstack import (
    Carrier,
    DomainError,
    PStack,
    format_label,
    is_nbd_stack,
    join_stacks,
    meet_stacks,
    refines,
)


class NbdStructure:
    """An assignment of a p-stack to every point of a carrier.

    Construction does not validate; run :func:`validate_structure` on
    candidates of unknown provenance (``from_json`` does so itself).
    """

    __slots__ = ("carrier", "stacks")

    def __init__(self, carrier: Carrier, stacks: Sequence[PStack] | Mapping):
        if isinstance(stacks, Mapping):
            stacks = [stacks[x] for x in carrier]
        stacks = tuple(stacks)
        if len(stacks) != len(carrier):
            raise DomainError("one stack per point is required")
        for s in stacks:
            if s.carrier != carrier:
                raise DomainError("stack lives on a different carrier")
        self.carrier = carrier
        self.stacks = stacks

    @classmethod
    def discrete(cls, carrier: Carrier) -> "NbdStructure":
        return cls(carrier, [PStack.principal(carrier, x) for x in carrier])

    @classmethod
    def indiscrete(cls, carrier: Carrier) -> "NbdStructure":
        return cls(carrier, [PStack.indiscrete(carrier)] * len(carrier))

    def __call__(self, x) -> PStack:
        return self.stacks[self.carrier.index(x)]

    def __eq__(self, other):
        return (
            isinstance(other, NbdStructure)
            and self.carrier == other.carrier
            and self.stacks == other.stacks
        )

    def __hash__(self):
        return hash((self.carrier, self.stacks))

    def __repr__(self):
        body = ", ".join(f"{x}: {s.text()}" for x, s in zip(self.carrier, self.stacks))
        return f"NbdStructure({{{body}}})"

    def to_dict(self) -> dict:
        return {format_label(x): s.text() for x, s in zip(self.carrier, self.stacks)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping[str, str]) -> "NbdStructure":
        if not data:
            raise DomainError("structure needs at least one point")
        carrier = Carrier(data.keys())
        nu = cls(carrier, [PStack.parse(carrier, data[x]) for x in carrier])
        check = validate_structure(nu)
        if not check:
            raise DomainError(f"invalid structure: {check.message}")
        return nu

    @classmethod
    def from_json(cls, text: str) -> "NbdStructure":
        return cls.from_dict(json.loads(text))


class Validation(NamedTuple):
    ok: bool
    point: Optional[object] = None
    bad_set: Optional[frozenset] = None
    message: str = ""

    def __bool__(self):
        return self.ok


def validate_structure(nu: NbdStructure) -> Validation:
    """Check the nbd axioms pointwise; report the first failure."""
    for x, s in zip(nu.carrier, nu.stacks):
        if is_nbd_stack(s, x):
            continue
        if s.is_empty():
            return Validation(False, x, None, f"stack at {x!r} is empty")
        bit = nu.carrier.point(x)
        bad = next(m for m in s.minimal if not m & bit)
        bad_set = frozenset(nu.carrier.labels(bad))
        return Validation(False, x, bad_set, f"member {sorted(map(str, bad_set))} of stack at {x!r} misses {x!r}")
    return Validation(True)


def _check_carriers(structures: Iterable[NbdStructure]):
    carriers = {s.carrier for s in structures}
    if len(carriers) > 1:
        raise DomainError("structures live on different carriers")


def structure_leq(nu: NbdStructure, nu2: NbdStructure) -> bool:
    """``nu <= nu2``: every stack of ``nu2`` refines the matching stack of ``nu``."""
    _check_carriers([nu, nu2])
    return all(refines(b, a) for a, b in zip(nu.stacks, nu2.stacks))


def structure_meet(structures: Sequence[NbdStructure], carrier: Carrier | None = None) -> NbdStructure:
    """Pointwise intersection; the empty meet is the discrete structure."""
    structures = list(structures)
    if not structures:
        if carrier is None:
            raise DomainError("empty meet needs an explicit carrier")
        return NbdStructure.discrete(carrier)
    _check_carriers(structures)
    c = structures[0].carrier
    return NbdStructure(c, [reduce(meet_stacks, col) for col in zip(*(s.stacks for s in structures))])


def structure_join(structures: Sequence[NbdStructure], carrier: Carrier | None = None) -> NbdStructure:
    """Pointwise union; the empty join is the indiscrete structure."""
    structures = list(structures)
    if not structures:
        if carrier is None:
            raise DomainError("empty join needs an explicit carrier")
        return NbdStructure.indiscrete(carrier)
    _check_carriers(structures)
    c = structures[0].carrier
    return NbdStructure(c, [reduce(join_stacks, col) for col in zip(*(s.stacks for s in structures))])


def is_pretopological(nu: NbdStructure) -> bool:
    for s in nu.stacks:
        ms = s.minimal
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if not s.contains_mask(a & b):
                    return False
    return True


def pretop_modification(nu: NbdStructure) -> NbdStructure:
    """Close every stack under finite intersections.

    On a finite carrier the closure is the principal filter of the
    intersection of all minimal sets, which still contains the base point.
    """
    out = []
    for s in nu.stacks:
        core = reduce(lambda a, b: a & b, s.minimal, nu.carrier.full)
        out.append(PStack(nu.carrier, (core,)))
    return NbdStructure(nu.carrier, out)
