import pytest

from nbhd_lab.constructions import BOX, CYLINDER, quotient_structure
from nbhd_lab.enumerate import (
    SearchReport,
    brute_force_stack_count,
    check_coreflection,
    check_final_lift_universal,
    check_initial_lift_universal,
    check_product_universal,
    enumerate_nbd_stacks,
    enumerate_structures,
    product_quotient_counterexample,
    reverify_counterexample,
    search_product_quotient,
    standard_carrier,
    surjections,
)
from nbhd_lab.morphism import SpaceMap
from nbhd_lab.pstack import Carrier, ResourceError, is_nbd_stack
from nbhd_lab.space import NbdStructure


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 5), (4, 19)])
def test_stacks_per_point(n, expected):
    c = standard_carrier(n)
    for x in c:
        stacks = enumerate_nbd_stacks(c, x)
        assert len(stacks) == expected
        assert len(set(stacks)) == expected
        assert all(is_nbd_stack(s, x) for s in stacks)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_brute_force_oracle(n):
    assert brute_force_stack_count(n) == len(enumerate_nbd_stacks(standard_carrier(n), "a"))


def test_five_points():
    # upper sets of the Boolean lattice on 4 atoms: Dedekind number 168, minus the empty family
    assert len(enumerate_nbd_stacks(standard_carrier(5), "c")) == 167


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 4), (3, 125)])
def test_structure_counts(n, expected):
    ss = enumerate_structures(standard_carrier(n))
    assert len(ss) == expected == len(set(ss))


def test_limits():
    with pytest.raises(ResourceError):
        enumerate_nbd_stacks(standard_carrier(6), "a")
    with pytest.raises(ResourceError):
        enumerate_structures(standard_carrier(4))
    with pytest.raises(ResourceError):
        check_final_lift_universal(4, 2)


def test_deterministic_order():
    c = standard_carrier(3)
    assert enumerate_structures(c) == enumerate_structures(Carrier("abc"))
    assert [s.text() for s in enumerate_nbd_stacks(c, "a")] == [
        "[[a]]",
        "[[a,b]]",
        "[[a,b,c]]",
        "[[a,c]]",
        "[[a,b],[a,c]]",
    ]


def test_surjection_count():
    assert len(surjections(standard_carrier(3), standard_carrier(2, "uv"))) == 6


@pytest.mark.parametrize("bounds", [(2, 2), (3, 2)])
def test_final_lift_universal(bounds):
    r = check_final_lift_universal(*bounds)
    assert r.counterexamples == [] and r.certified_none
    if bounds == (3, 2):
        assert r.counts["surjections_3_to_2"] == 6


def test_initial_lift_universal():
    r = check_initial_lift_universal(3, 2)
    assert r.ok and r.counts["sources"] > 0


def test_product_universal():
    r = check_product_universal(2)
    assert r.ok and r.counts["pairing_candidates"] > 1000


def test_coreflection():
    assert check_coreflection(2).ok


class TestSearch:
    def test_identities_never_fail(self):
        for n in (1, 2):
            c = standard_carrier(n)
            c2 = Carrier(f"{x}'" for x in c)
            for nu in enumerate_structures(c):
                nu2 = NbdStructure(c2, [s.__class__(c2, s.minimal) for s in nu.stacks])
                for mode in (BOX, CYLINDER):
                    assert product_quotient_counterexample(
                        SpaceMap.identity(c), nu, nu, SpaceMap.identity(c2), nu2, nu2, mode
                    ) is None

    def test_indiscrete_domains_never_fail(self):
        X = standard_carrier(2)
        X2 = Carrier("pq")
        Y, Y2 = Carrier("u"), Carrier("v")
        f = SpaceMap.constant(X, Y, "u")
        g = SpaceMap.constant(X2, Y2, "v")
        a, b = NbdStructure.indiscrete(X), NbdStructure.indiscrete(X2)
        for mode in (BOX, CYLINDER):
            assert product_quotient_counterexample(
                f, a, quotient_structure(f, a), g, b, quotient_structure(g, b), mode
            ) is None

    @pytest.mark.parametrize("mode", [CYLINDER, BOX])
    def test_small_bounds(self, mode):
        r = search_product_quotient(2, 2, mode)
        assert r.counts["quotient_presentations"] == 13
        assert r.certified_none == (not r.counterexamples)
        assert all(reverify_counterexample(c, mode) for c in r.counterexamples)
        assert r.to_dict() == search_product_quotient(2, 2, mode).to_dict()

    def test_parallel_matches_serial(self, monkeypatch):
        serial = search_product_quotient(2, 1, CYLINDER).to_dict()
        monkeypatch.setenv("NBHD_LAB_THREADS", "2")
        assert search_product_quotient(2, 1, CYLINDER).to_dict() == serial


def test_report_flags():
    r = SearchReport("x", {}, counterexamples=[{"a": 1}])
    assert not r.certified_none and not r.ok
    assert not SearchReport("x", {}, exhausted=False).certified_none
