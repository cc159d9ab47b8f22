import itertools

import pytest

from nbhd_lab.enumerate import all_maps, enumerate_structures, standard_carrier
from nbhd_lab.morphism import SpaceMap, compose, is_continuous, is_continuous_at
from nbhd_lab.pstack import Carrier, DomainError
from nbhd_lab.space import NbdStructure, structure_leq


def continuous_by_families(f, nuX, nuY):
    """f(nu(x)) ⊇ nu'(f(x)) compared as explicit families."""
    for x in f.dom:
        img = {f.image_mask(a) for a in nuX(x).family()}
        img_up = {t for t in f.cod.subsets() if any(i & t == i for i in img)}
        if not img_up >= nuY(f(x)).family():
            return False
    return True


class TestContinuity:
    def test_identity(self, abc):
        ident = SpaceMap.identity(abc)
        for nu in enumerate_structures(abc):
            assert all(is_continuous_at(ident, nu, nu, x) for x in abc)

    def test_into_indiscrete(self, ab, uv):
        for f in all_maps(ab, uv):
            for nu in enumerate_structures(ab):
                assert is_continuous(f, nu, NbdStructure.indiscrete(uv))

    def test_indiscrete_to_discrete_bijection(self, ab, uv):
        f = SpaceMap(ab, uv, {"a": "u", "b": "v"})
        assert not is_continuous_at(f, NbdStructure.indiscrete(ab), NbdStructure.discrete(uv), "a")

    def test_constant_to_singleton(self, abc):
        one = Carrier("u")
        f = SpaceMap.constant(abc, one, "u")
        for nu in enumerate_structures(abc):
            assert is_continuous(f, nu, NbdStructure.discrete(one))

    def test_carrier_mismatch(self, ab, uv):
        f = SpaceMap(ab, uv, {"a": "u", "b": "v"})
        with pytest.raises(DomainError):
            is_continuous(f, NbdStructure.discrete(uv), NbdStructure.discrete(uv))

    def test_order_is_identity_continuity(self, ab):
        for nu, nu2 in itertools.product(enumerate_structures(ab), repeat=2):
            if structure_leq(nu, nu2):
                assert is_continuous(SpaceMap.identity(ab), nu2, nu)

    @pytest.mark.parametrize("nx,ny", [(2, 2), (3, 2), (2, 3)])
    def test_matches_family_oracle(self, nx, ny):
        X, Y = standard_carrier(nx), standard_carrier(ny, "uvw")
        for f in all_maps(X, Y):
            for nuX in enumerate_structures(X)[:: 1 if nx < 3 else 11]:
                for nuY in enumerate_structures(Y)[:: 1 if ny < 3 else 11]:
                    assert is_continuous(f, nuX, nuY) == continuous_by_families(f, nuX, nuY)


def test_category_axioms_size_two():
    carriers = [standard_carrier(n) for n in (1, 2)]
    for X, Y, Z in itertools.product(carriers, repeat=3):
        for f, g in itertools.product(all_maps(X, Y), all_maps(Y, Z)):
            gf = compose(f, g)
            assert gf.table == {x: g(f(x)) for x in X}
            for a, b, c in itertools.product(enumerate_structures(X), enumerate_structures(Y), enumerate_structures(Z)):
                if is_continuous(f, a, b) and is_continuous(g, b, c):
                    assert is_continuous(gf, a, c)


def test_monotone_in_structures():
    X = Y = standard_carrier(2)
    ss = enumerate_structures(X)
    for f in all_maps(X, Y):
        for nx, ny in itertools.product(ss, repeat=2):
            if not is_continuous(f, nx, ny):
                continue
            for nx2, ny2 in itertools.product(ss, repeat=2):
                if structure_leq(nx, nx2) and structure_leq(ny2, ny):
                    assert is_continuous(f, nx2, ny2)


def test_map_validation_and_json(ab, uv):
    with pytest.raises(DomainError):
        SpaceMap(ab, uv, {"a": "u"})
    with pytest.raises(DomainError):
        SpaceMap(ab, uv, {"a": "u", "b": "w"})
    f = SpaceMap(ab, uv, {"a": "v", "b": "v"})
    assert SpaceMap.from_dict(ab, uv, f.to_dict()) == f
    assert not f.is_surjective()
    assert f.fiber("v") == ("a", "b") and f.fiber("u") == ()
