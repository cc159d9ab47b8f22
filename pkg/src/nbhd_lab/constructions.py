"""Initial and final lifts: products, quotients and the quotient-map test.

Every lift is computed on minimal-set antichains. The final lift at ``y``
is the intersection of the image stacks of all fibre points, since
``f^-1(A) ⊇ m`` holds exactly when ``A ⊇ f(m)``.
"""
from __future__ import annotations

from typing import Sequence, Tuple

from .morphism import SpaceMap
from .pstack import Carrier, DomainError, PStack, image_stack, meet_stacks, minimal_antichain
from .space import NbdStructure

CYLINDER = "cylinder"
BOX = "box"
PRODUCT_MODES = (CYLINDER, BOX)

Source = Sequence[Tuple[SpaceMap, NbdStructure]]
Sink = Sequence[Tuple[SpaceMap, NbdStructure]]


def initial_lift(carrier: Carrier, source: Source) -> NbdStructure:
    """Coarsest structure on ``carrier`` making every ``f_i`` continuous.

    An empty source gives the indiscrete structure.
    """
    for f, nu in source:
        if f.dom != carrier:
            raise DomainError("source map does not start at the lifted carrier")
        if nu.carrier != f.cod:
            raise DomainError("source structure does not live on the map's codomain")
    stacks = []
    for x in carrier:
        gens = [carrier.full]
        for f, nu in source:
            gens.extend(f.preimage_mask(m) for m in nu(f(x)).minimal)
        stacks.append(PStack(carrier, minimal_antichain(gens)))
    return NbdStructure(carrier, stacks)


def final_lift(carrier: Carrier, sink: Sink) -> NbdStructure:
    """Finest structure on ``carrier`` making every ``f_i`` continuous.

    Points outside every image get the principal stack.
    """
    for f, nu in sink:
        if f.cod != carrier:
            raise DomainError("sink map does not end at the lifted carrier")
        if nu.carrier != f.dom:
            raise DomainError("sink structure does not live on the map's domain")
    stacks = []
    for y in carrier:
        s = PStack.principal(carrier, y)
        for f, nu in sink:
            for x in f.fiber(y):
                s = meet_stacks(s, image_stack(f, nu(x)))
        stacks.append(s)
    return NbdStructure(carrier, stacks)


def quotient_structure(f: SpaceMap, nuX: NbdStructure) -> NbdStructure:
    """Structure induced on the codomain of a surjection."""
    if not f.is_surjective():
        raise DomainError("quotient_structure needs a surjective map")
    return final_lift(f.cod, [(f, nuX)])


def is_quotient_map(f: SpaceMap, nuX: NbdStructure, nuY: NbdStructure) -> bool:
    return f.is_surjective() and quotient_structure(f, nuX) == nuY


def product_carrier(c1: Carrier, c2: Carrier) -> Carrier:
    return Carrier((a, b) for a in c1 for b in c2)


def _rect(m1: int, m2: int, n2: int) -> int:
    # row-major layout: point (i, j) sits at bit i * n2 + j
    out = 0
    i = 0
    while m1:
        if m1 & 1:
            out |= m2 << (i * n2)
        m1 >>= 1
        i += 1
    return out


def projections(c1: Carrier, c2: Carrier) -> tuple[SpaceMap, SpaceMap]:
    p = product_carrier(c1, c2)
    return (
        SpaceMap(p, c1, {xy: xy[0] for xy in p}),
        SpaceMap(p, c2, {xy: xy[1] for xy in p}),
    )


def product_space(s1: NbdStructure, s2: NbdStructure, mode: str = CYLINDER) -> NbdStructure:
    """Product structure on ``X1 x X2``.

    ``cylinder`` is the categorical product (initial lift of the two
    projections). ``box`` is generated by rectangles ``A x B``.
    """
    c1, c2 = s1.carrier, s2.carrier
    n2 = len(c2)
    p = product_carrier(c1, c2)
    if mode == CYLINDER:
        return initial_lift(p, list(zip(projections(c1, c2), (s1, s2))))
    if mode != BOX:
        raise DomainError(f"unknown product mode {mode!r}")
    stacks = []
    for a in s1.stacks:
        for b in s2.stacks:
            gens = [_rect(m1, m2, n2) for m1 in a.minimal for m2 in b.minimal]
            stacks.append(PStack(p, minimal_antichain(gens)))
    return NbdStructure(p, stacks)


def product_map(f1: SpaceMap, f2: SpaceMap) -> SpaceMap:
    """``f1 x f2`` between product carriers."""
    dom = product_carrier(f1.dom, f2.dom)
    cod = product_carrier(f1.cod, f2.cod)
    return SpaceMap(dom, cod, {(a, b): (f1.table[a], f2.table[b]) for a, b in dom})


def pairing(g1: SpaceMap, g2: SpaceMap) -> SpaceMap:
    """``<g1, g2> : Z -> X1 x X2``."""
    if g1.dom != g2.dom:
        raise DomainError("pairing needs a common domain")
    cod = product_carrier(g1.cod, g2.cod)
    return SpaceMap(g1.dom, cod, {z: (g1.table[z], g2.table[z]) for z in g1.dom})
