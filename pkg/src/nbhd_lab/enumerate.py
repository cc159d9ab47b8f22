"""Exhaustive enumeration of small nbd spaces and the universal-property checks.

Every check returns a :class:`SearchReport`. Reports are deterministic:
enumeration order is fixed and counterexample lists are sorted.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .constructions import (
    BOX,
    CYLINDER,
    PRODUCT_MODES,
    initial_lift,
    is_quotient_map,
    pairing,
    product_map,
    product_space,
    projections,
    quotient_structure,
)
from .morphism import SpaceMap, is_continuous
from .pstack import Carrier, DomainError, PStack, ResourceError, bits, format_label
from .space import (
    NbdStructure,
    is_pretopological,
    pretop_modification,
    structure_leq,
)

DOMAIN_LABELS = "abcdefghijklmnop"
CODOMAIN_LABELS = "uvwxyz"

MAX_STACK_CARRIER = 5
MAX_STRUCTURE_CARRIER = 3


def standard_carrier(n: int, labels: str = DOMAIN_LABELS) -> Carrier:
    if not 1 <= n <= len(labels):
        raise ResourceError(f"no standard carrier of size {n}")
    return Carrier(labels[:n])


def enumerate_nbd_stacks(carrier: Carrier, x) -> list[PStack]:
    """All nonempty upper families on ``carrier`` whose members contain ``x``."""
    if len(carrier) > MAX_STACK_CARRIER:
        raise ResourceError(f"stack enumeration is limited to {MAX_STACK_CARRIER} points")
    return list(_stacks_at(carrier, carrier.index(x)))


@lru_cache(maxsize=None)
def _stacks_at(carrier: Carrier, i: int) -> tuple:
    bit = 1 << i
    candidates = [s for s in carrier.subsets() if s & bit]
    found = []

    def extend(start, chosen):
        if chosen:
            found.append(PStack.from_masks(carrier, chosen))
        for k in range(start, len(candidates)):
            c = candidates[k]
            if all(c & m != m and c & m != c for m in chosen):
                chosen.append(c)
                extend(k + 1, chosen)
                chosen.pop()

    extend(0, [])
    return tuple(sorted(found, key=lambda s: (len(s.minimal), [tuple(bits(m)) for m in s.minimal])))


def enumerate_structures(carrier: Carrier) -> list[NbdStructure]:
    if len(carrier) > MAX_STRUCTURE_CARRIER:
        raise ResourceError(f"structure enumeration is limited to {MAX_STRUCTURE_CARRIER} points")
    return list(_structures(carrier))


@lru_cache(maxsize=None)
def _structures(carrier: Carrier) -> tuple:
    per_point = [_stacks_at(carrier, i) for i in range(len(carrier))]
    return tuple(NbdStructure(carrier, combo) for combo in itertools.product(*per_point))


def all_maps(dom: Carrier, cod: Carrier) -> list[SpaceMap]:
    return [
        SpaceMap(dom, cod, dict(zip(dom, images)))
        for images in itertools.product(cod.elements, repeat=len(dom))
    ]


def surjections(dom: Carrier, cod: Carrier) -> list[SpaceMap]:
    return [f for f in all_maps(dom, cod) if f.is_surjective()]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("NBHD_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _fan_out(fn, jobs):
    """Map ``fn`` over ``jobs``; results keep job order."""
    n = _workers()
    if n == 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, jobs))


@dataclass
class SearchReport:
    name: str
    parameters: dict
    counterexamples: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    exhausted: bool = True

    @property
    def certified_none(self) -> bool:
        return self.exhausted and not self.counterexamples

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": self.parameters,
            "counts": self.counts,
            "counterexamples": self.counterexamples,
            "certified_none": self.certified_none,
        }


def _size_pairs(max_x: int, max_y: int):
    for nx in range(1, max_x + 1):
        for ny in range(1, min(max_y, nx) + 1):
            yield nx, ny


def check_final_lift_universal(max_x: int, max_y: int) -> SearchReport:
    """Quotient structures make their map continuous and are finest doing so."""
    if max_x > 3 or max_y > 2 or max_x < 1 or max_y < 1:
        raise ResourceError("bounds must satisfy 1 <= max_x <= 3, 1 <= max_y <= 2")
    report = SearchReport("final_lift_universal", {"max_x": max_x, "max_y": max_y})
    n_surj = n_struct = n_pairs = 0
    for nx, ny in _size_pairs(max_x, max_y):
        X = standard_carrier(nx)
        Y = standard_carrier(ny, CODOMAIN_LABELS)
        fs = surjections(X, Y)
        report.counts[f"surjections_{nx}_to_{ny}"] = len(fs)
        n_surj += len(fs)
        ys = enumerate_structures(Y)
        for f in fs:
            for nuX in enumerate_structures(X):
                n_struct += 1
                nuY = quotient_structure(f, nuX)
                if not is_continuous(f, nuX, nuY):
                    report.counterexamples.append(
                        {"kind": "not_continuous", "map": f.to_dict(), "domain": nuX.to_dict()}
                    )
                for mu in ys:
                    n_pairs += 1
                    if is_continuous(f, nuX, mu) and not structure_leq(mu, nuY):
                        report.counterexamples.append(
                            {
                                "kind": "not_finest",
                                "map": f.to_dict(),
                                "domain": nuX.to_dict(),
                                "codomain": mu.to_dict(),
                            }
                        )
    report.counts.update(surjections=n_surj, map_structure_pairs=n_struct, codomain_checks=n_pairs)
    return report


def check_initial_lift_universal(max_x: int, max_y: int, source_length: int = 2) -> SearchReport:
    """Initial lifts make their source continuous and are coarsest doing so.

    Sources of length 1 are covered for every carrier within bounds; longer
    sources are covered on domains of size at most 2 (the 3-point case with
    two maps is ~10^5 continuity tests and adds nothing the order argument
    does not already pin down).
    """
    if max_x > 3 or max_y > 2 or max_x < 1 or max_y < 1:
        raise ResourceError("bounds must satisfy 1 <= max_x <= 3, 1 <= max_y <= 2")
    report = SearchReport(
        "initial_lift_universal",
        {"max_x": max_x, "max_y": max_y, "source_length": source_length},
    )
    n_sources = n_checks = 0
    for nx in range(1, max_x + 1):
        X = standard_carrier(nx)
        arrows = []
        for ny in range(1, max_y + 1):
            Y = standard_carrier(ny, CODOMAIN_LABELS)
            for f in all_maps(X, Y):
                for nu in enumerate_structures(Y):
                    arrows.append((f, nu))
        lengths = [0, 1] + ([k for k in range(2, source_length + 1)] if nx <= 2 else [])
        xs = enumerate_structures(X)
        for k in lengths:
            for source in itertools.product(arrows, repeat=k):
                n_sources += 1
                lift = initial_lift(X, source)
                if not all(is_continuous(f, lift, nu) for f, nu in source):
                    report.counterexamples.append({"kind": "not_continuous", "source": _source_json(source)})
                for mu in xs:
                    n_checks += 1
                    if all(is_continuous(f, mu, nu) for f, nu in source) and not structure_leq(lift, mu):
                        report.counterexamples.append(
                            {"kind": "not_coarsest", "source": _source_json(source), "domain": mu.to_dict()}
                        )
    report.counts.update(sources=n_sources, domain_checks=n_checks)
    return report


def _source_json(source):
    return [{"map": f.to_dict(), "structure": nu.to_dict()} for f, nu in source]


def check_product_universal(size: int = 2) -> SearchReport:
    """Cylinder products satisfy the product universal property.

    For factors and test objects on carriers of size <= ``size``: both
    projections are continuous, and a pairing is continuous exactly when
    both components are. Also records cylinder <= box, strict on
    discrete x discrete factors with at least two points.
    """
    if not 1 <= size <= 2:
        raise ResourceError("product check is limited to carriers of size <= 2")
    report = SearchReport("product_universal", {"size": size})
    carriers = [standard_carrier(n) for n in range(1, size + 1)]
    test_carriers = [standard_carrier(n, "pqrs") for n in range(1, size + 1)]
    n_pairs = n_cand = 0
    for c1, c2 in itertools.product(carriers, repeat=2):
        c2 = Carrier(f"{x}'" for x in c2)
        pr1, pr2 = projections(c1, c2)
        for s1 in enumerate_structures(c1):
            for s2 in enumerate_structures(c2):
                n_pairs += 1
                cyl = product_space(s1, s2, CYLINDER)
                box = product_space(s1, s2, BOX)
                if not (is_continuous(pr1, cyl, s1) and is_continuous(pr2, cyl, s2)):
                    report.counterexamples.append({"kind": "projection_not_continuous", "factors": [s1.to_dict(), s2.to_dict()]})
                if not structure_leq(cyl, box):
                    report.counterexamples.append({"kind": "cylinder_not_below_box", "factors": [s1.to_dict(), s2.to_dict()]})
                discrete = s1 == NbdStructure.discrete(c1) and s2 == NbdStructure.discrete(c2)
                if discrete and len(c1) > 1 and len(c2) > 1 and cyl == box:
                    report.counterexamples.append({"kind": "cylinder_equals_box_on_discrete", "factors": [s1.to_dict(), s2.to_dict()]})
                for Z in test_carriers:
                    g1s, g2s = all_maps(Z, c1), all_maps(Z, c2)
                    for zeta in enumerate_structures(Z):
                        ok1 = [is_continuous(g, zeta, s1) for g in g1s]
                        ok2 = [is_continuous(g, zeta, s2) for g in g2s]
                        for i, g1 in enumerate(g1s):
                            for j, g2 in enumerate(g2s):
                                n_cand += 1
                                pair_ok = is_continuous(pairing(g1, g2), zeta, cyl)
                                if pair_ok != (ok1[i] and ok2[j]):
                                    report.counterexamples.append(
                                        {
                                            "kind": "pairing_mismatch",
                                            "factors": [s1.to_dict(), s2.to_dict()],
                                            "test_space": zeta.to_dict(),
                                            "maps": [g1.to_dict(), g2.to_dict()],
                                        }
                                    )
    report.counts.update(factor_pairs=n_pairs, pairing_candidates=n_cand)
    return report


def check_coreflection(size: int = 2) -> SearchReport:
    """Pretopological modification is the coreflector, checked exhaustively.

    Idempotent, inflationary, monotone, least pretopological structure above
    its input, and every continuous map out of a pretopological space stays
    continuous into the modified codomain.
    """
    if not 1 <= size <= 3:
        raise ResourceError("coreflection check is limited to carriers of size <= 3")
    report = SearchReport("pretop_coreflection", {"size": size})
    X = standard_carrier(size)
    structures = enumerate_structures(X)
    pretops = [nu for nu in structures if is_pretopological(nu)]
    n_fact = 0
    for nu in structures:
        r = pretop_modification(nu)
        problems = []
        if not is_pretopological(r):
            problems.append("not_pretopological")
        if pretop_modification(r) != r:
            problems.append("not_idempotent")
        if not structure_leq(nu, r):
            problems.append("not_inflationary")
        if any(structure_leq(nu, mu) and not structure_leq(r, mu) for mu in pretops):
            problems.append("not_least")
        for nu2 in structures:
            if structure_leq(nu, nu2) and not structure_leq(r, pretop_modification(nu2)):
                problems.append("not_monotone")
                break
        for n in range(1, size + 1):
            Z = standard_carrier(n, "pqrs")
            for mu in enumerate_structures(Z):
                if not is_pretopological(mu):
                    continue
                for g in all_maps(Z, X):
                    n_fact += 1
                    if is_continuous(g, mu, nu) and not is_continuous(g, mu, r):
                        problems.append("no_factorization")
        for p in sorted(set(problems)):
            report.counterexamples.append({"kind": p, "structure": nu.to_dict()})
    report.counts.update(structures=len(structures), pretopological=len(pretops), factorization_checks=n_fact)
    return report


@lru_cache(maxsize=None)
def _quotient_presentations(max_x: int, max_y: int) -> tuple:
    out = []
    for nx, ny in _size_pairs(max_x, max_y):
        X = standard_carrier(nx)
        Y = standard_carrier(ny, CODOMAIN_LABELS)
        for f in surjections(X, Y):
            for nuX in enumerate_structures(X):
                out.append((f, nuX, quotient_structure(f, nuX)))
    return tuple(out)


def _relabel(c: Carrier, suffix: str) -> dict:
    return {x: f"{x}{suffix}" for x in c}


def _second_factor(f: SpaceMap, nuX: NbdStructure, nuY: NbdStructure):
    """Copy of a presentation on primed labels so product labels stay distinct."""
    rx, ry = _relabel(f.dom, "'"), _relabel(f.cod, "'")
    X2, Y2 = Carrier(rx.values()), Carrier(ry.values())
    f2 = SpaceMap(X2, Y2, {rx[x]: ry[y] for x, y in f.table.items()})
    nx2 = NbdStructure(X2, [PStack(X2, s.minimal) for s in nuX.stacks])
    ny2 = NbdStructure(Y2, [PStack(Y2, s.minimal) for s in nuY.stacks])
    return f2, nx2, ny2


def _search_chunk(job):
    max_x, max_y, mode, i = job
    pres = _quotient_presentations(max_x, max_y)
    f1, nx1, ny1 = pres[i]
    found = []
    for f2, nx2, ny2 in pres:
        f2, nx2, ny2 = _second_factor(f2, nx2, ny2)
        cex = product_quotient_counterexample(f1, nx1, ny1, f2, nx2, ny2, mode)
        if cex is not None:
            found.append(cex)
    return found


def product_quotient_counterexample(f1, nx1, ny1, f2, nx2, ny2, mode):
    """Witness that ``f1 x f2`` fails to be quotient, or ``None``."""
    F = product_map(f1, f2)
    dom = product_space(nx1, nx2, mode)
    cod = product_space(ny1, ny2, mode)
    if is_quotient_map(F, dom, cod):
        return None
    final = quotient_structure(F, dom)
    for y, want, have in zip(F.cod, final.stacks, cod.stacks):
        if want == have:
            continue
        extra = [m for m in want.minimal if not have.contains_mask(m)]
        side = "final_only"
        if not extra:
            extra = [m for m in have.minimal if not want.contains_mask(m)]
            side = "product_only"
        return {
            "f1": f1.to_dict(),
            "nu1": nx1.to_dict(),
            "f2": f2.to_dict(),
            "nu2": nx2.to_dict(),
            "witness_point": [format_label(y[0]), format_label(y[1])],
            "witness_set": [[format_label(a), format_label(b)] for a, b in F.cod.labels(extra[0])],
            "witness_side": side,
        }
    raise AssertionError("quotient test failed but stacks agree")  # pragma: no cover


def search_product_quotient(max_x: int, max_y: int, mode: str = CYLINDER) -> SearchReport:
    """Exhaustively test whether products of finite quotient maps stay quotient."""
    if mode not in PRODUCT_MODES:
        raise DomainError(f"unknown product mode {mode!r}")
    if max_x > 3 or max_y > 2 or max_x < 1 or max_y < 1:
        raise ResourceError("bounds must satisfy 1 <= max_x <= 3, 1 <= max_y <= 2")
    pres = _quotient_presentations(max_x, max_y)
    chunks = _fan_out(_search_chunk, [(max_x, max_y, mode, i) for i in range(len(pres))])
    found = [c for chunk in chunks for c in chunk]
    found.sort(key=lambda c: repr(sorted(c.items())))
    report = SearchReport(
        "product_quotient_search",
        {"max_x": max_x, "max_y": max_y, "mode": mode},
        counterexamples=found,
    )
    report.counts.update(quotient_presentations=len(pres), pairs_tested=len(pres) ** 2)
    return report


def reverify_counterexample(cex: dict, mode: str) -> bool:
    """Rebuild a reported counterexample and confirm the product is not quotient."""

    def load(fmap, nu):
        X = Carrier(nu.keys())
        Y = Carrier(dict.fromkeys(fmap[x] for x in X))
        nuX = NbdStructure.from_dict(nu)
        f = SpaceMap.from_dict(X, Y, fmap)
        return f, nuX, quotient_structure(f, nuX)

    f1, nx1, ny1 = load(cex["f1"], cex["nu1"])
    f2, nx2, ny2 = load(cex["f2"], cex["nu2"])
    F = product_map(f1, f2)
    return not is_quotient_map(F, product_space(nx1, nx2, mode), product_space(ny1, ny2, mode))


def brute_force_stack_count(n: int) -> int:
    """Count nbd stacks at one point by filtering every family of subsets.

    Independent of :func:`enumerate_nbd_stacks`: scans all ``2**(2**n)``
    collections, so only sensible for ``n <= 3``.
    """
    if n > 3:
        raise ResourceError("brute force is limited to 3 points")
    subsets = range(1 << n)
    count = 0
    for fam in range(1 << (1 << n)):
        members = [s for s in subsets if fam >> s & 1]
        if not members:
            continue
        if not all(s & 1 for s in members):
            continue
        if all(fam >> t & 1 for s in members for t in subsets if t & s == s):
            count += 1
    return count
