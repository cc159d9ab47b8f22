import itertools

import pytest

from nbhd_lab.constructions import (
    BOX,
    CYLINDER,
    final_lift,
    initial_lift,
    is_quotient_map,
    pairing,
    product_map,
    product_space,
    projections,
    quotient_structure,
)
from nbhd_lab.enumerate import all_maps, enumerate_structures, standard_carrier, surjections
from nbhd_lab.morphism import SpaceMap, is_continuous
from nbhd_lab.pstack import Carrier, DomainError, PStack
from nbhd_lab.space import NbdStructure, structure_leq, validate_structure

from conftest import stack, structure


def quotient_by_formula(f, nuX):
    """{A ⊆ Y : for all x in f^-1(y), f^-1(A) ∈ nu_X(x)}, by powerset scan."""
    Y = f.cod
    out = []
    for y in Y:
        fibre = f.fiber(y)
        fam = [A for A in Y.subsets() if all(nuX(x).contains_mask(f.preimage_mask(A)) for x in fibre)]
        if not fibre:
            fam = [A for A in fam if A & Y.point(y)]
        out.append(PStack.from_masks(Y, fam))
    return NbdStructure(Y, out)


def initial_by_formula(X, source):
    """Upward closure of all preimages of all members, by powerset scan."""
    out = []
    for x in X:
        gens = [X.full]
        for f, nu in source:
            gens += [f.preimage_mask(A) for A in nu(f(x)).family()]
        out.append(PStack.from_masks(X, gens))
    return NbdStructure(X, out)


class TestInitialLift:
    def test_identity(self, abc):
        nu = structure(abc, a=("ab", "ac"))
        assert initial_lift(abc, [(SpaceMap.identity(abc), nu)]) == nu

    def test_empty_source(self, abc):
        assert initial_lift(abc, []) == NbdStructure.indiscrete(abc)

    def test_collapse_to_point(self, ab):
        u = Carrier("u")
        f = SpaceMap.constant(ab, u, "u")
        disc = NbdStructure.discrete(u)
        assert initial_lift(ab, [(f, disc), (f, disc)]) == NbdStructure.indiscrete(ab)

    def test_mismatch(self, ab, uv):
        f = SpaceMap(ab, uv, {"a": "u", "b": "v"})
        with pytest.raises(DomainError):
            initial_lift(uv, [(f, NbdStructure.discrete(uv))])

    def test_matches_formula(self):
        X = standard_carrier(3)
        for ny in (1, 2):
            Y = standard_carrier(ny, "uv")
            for f in all_maps(X, Y):
                for nu in enumerate_structures(Y):
                    assert initial_lift(X, [(f, nu)]) == initial_by_formula(X, [(f, nu)])


class TestFinalLift:
    def test_identity(self, abc):
        nu = structure(abc, b=("ab", "bc"))
        assert final_lift(abc, [(SpaceMap.identity(abc), nu)]) == nu

    def test_collapse(self, ab):
        c = Carrier("c")
        f = SpaceMap.constant(ab, c, "c")
        nuX = NbdStructure(ab, [stack(ab, "a"), stack(ab, "ab")])
        assert final_lift(c, [(f, nuX)])("c") == PStack.principal(c, "c")

    def test_empty_sink(self):
        u = Carrier("u")
        assert final_lift(u, []) == NbdStructure.discrete(u)

    def test_point_outside_images_is_principal(self, ab, uv):
        f = SpaceMap.constant(ab, uv, "u")
        lift = final_lift(uv, [(f, NbdStructure.indiscrete(ab))])
        assert lift("v") == PStack.principal(uv, "v")
        assert lift("u") == stack(uv, "u")

    def test_two_map_sink_is_meet(self, ab, uv):
        f = SpaceMap(ab, uv, {"a": "u", "b": "v"})
        g = SpaceMap(ab, uv, {"a": "v", "b": "u"})
        nu = structure(ab, a=("ab",))
        lift = final_lift(uv, [(f, nu), (g, nu)])
        for h in (f, g):
            assert is_continuous(h, nu, lift)
        for mu in enumerate_structures(uv):
            if is_continuous(f, nu, mu) and is_continuous(g, nu, mu):
                assert structure_leq(mu, lift)


class TestQuotient:
    def test_identity(self, abc):
        for nu in enumerate_structures(abc):
            assert quotient_structure(SpaceMap.identity(abc), nu) == nu

    def test_collapse_abc(self, abc, uv):
        f = SpaceMap(abc, uv, {"a": "u", "b": "u", "c": "v"})
        q = quotient_structure(f, NbdStructure.discrete(abc))
        assert q == NbdStructure.discrete(uv)

    def test_not_surjective(self, ab, uv):
        with pytest.raises(DomainError):
            quotient_structure(SpaceMap.constant(ab, uv, "u"), NbdStructure.discrete(ab))

    def test_matches_formula_and_validates(self):
        for nx, ny in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]:
            X, Y = standard_carrier(nx), standard_carrier(ny, "uvw")
            for f in surjections(X, Y):
                for nu in enumerate_structures(X):
                    q = quotient_structure(f, nu)
                    assert q == quotient_by_formula(f, nu)
                    assert validate_structure(q)

    def test_is_quotient_map(self, ab):
        ident = SpaceMap.identity(ab)
        disc, ind = NbdStructure.discrete(ab), NbdStructure.indiscrete(ab)
        assert is_quotient_map(ident, disc, disc)
        assert not is_quotient_map(ident, disc, ind)
        c = Carrier("c")
        f = SpaceMap.constant(ab, c, "c")
        assert is_quotient_map(f, disc, NbdStructure(c, [PStack.principal(c, "c")]))
        assert not is_quotient_map(SpaceMap.constant(ab, Carrier("uv"), "u"), disc, NbdStructure.discrete(Carrier("uv")))


class TestProduct:
    def test_discrete_modes_differ(self, ab, uv):
        d1, d2 = NbdStructure.discrete(ab), NbdStructure.discrete(uv)
        box = product_space(d1, d2, BOX)
        cyl = product_space(d1, d2, CYLINDER)
        assert box == NbdStructure.discrete(box.carrier)
        assert box(("a", "u")).minimal_sets() == [{("a", "u")}]
        assert cyl(("a", "u")).minimal_sets() == [{("a", "u"), ("a", "v")}, {("a", "u"), ("b", "u")}]
        assert structure_leq(cyl, box) and cyl != box

    def test_indiscrete(self, ab, uv):
        for mode in (BOX, CYLINDER):
            p = product_space(NbdStructure.indiscrete(ab), NbdStructure.indiscrete(uv), mode)
            assert p == NbdStructure.indiscrete(p.carrier)

    def test_singleton_factor(self, abc):
        one = Carrier("u")
        for nu in enumerate_structures(abc)[::9]:
            for mode in (BOX, CYLINDER):
                p = product_space(nu, NbdStructure.discrete(one), mode)
                assert [s.minimal for s in p.stacks] == [s.minimal for s in nu.stacks]

    def test_unknown_mode(self, ab):
        with pytest.raises(DomainError):
            product_space(NbdStructure.discrete(ab), NbdStructure.discrete(ab), "smash")

    def test_cylinder_below_box(self):
        for n1, n2 in [(2, 2), (3, 2)]:
            X1, X2 = standard_carrier(n1), standard_carrier(n2, "uv")
            for s1 in enumerate_structures(X1)[:: 1 if n1 < 3 else 13]:
                for s2 in enumerate_structures(X2):
                    assert structure_leq(product_space(s1, s2, CYLINDER), product_space(s1, s2, BOX))

    def test_universal_property(self, ab, uv):
        pr1, pr2 = projections(ab, uv)
        Z = Carrier("pq")
        for s1, s2 in itertools.product(enumerate_structures(ab), enumerate_structures(uv)):
            p = product_space(s1, s2, CYLINDER)
            assert is_continuous(pr1, p, s1) and is_continuous(pr2, p, s2)
            for zeta in enumerate_structures(Z):
                for g1, g2 in itertools.product(all_maps(Z, ab), all_maps(Z, uv)):
                    both = is_continuous(g1, zeta, s1) and is_continuous(g2, zeta, s2)
                    assert is_continuous(pairing(g1, g2), zeta, p) == both
                    # the pairing followed by projections recovers the components
                    assert pairing(g1, g2).then(pr1) == g1

    def test_product_map(self, ab, uv):
        f = SpaceMap(ab, uv, {"a": "u", "b": "u"})
        g = SpaceMap.identity(uv)
        F = product_map(f, g)
        assert F(("b", "v")) == ("u", "v")
        assert len(F.dom) == 4 and len(F.cod) == 4
