"""Exact-rational model of the map  R x Q -> R/Z x Q  that collapses the integers.

Points of R are modelled by rationals; every membership question the
argument needs, and every witness it produces, lives at rational points.
No floating point is used anywhere in this module.

Base point ``q`` is a parameter. The two sets of interest are

* ``A_q``: the union over integers ``z`` of the boxes
  ``(z - 1/2, z + 1/2) x (q - 1/(1+|z|), q + 1/(1+|z|))``;
* ``B_q = Z x (q - 1, q + 1)``.

Basic neighborhoods of the collapsed class ``[0]`` in ``R/Z`` are images of
``U(eps) = union of (z - eps_z, z + eps_z)``. Radii are capped at 1/2; every
basic neighborhood contains one of these, so nothing is lost for the
negative claim (a box not contained in the image set).
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .pstack import DomainError

Rat = Fraction
HALF = Fraction(1, 2)

_RATIONAL = re.compile(r"^-?\d+(?:/\d+)?$")


class ConfigError(ValueError):
    """Invalid verification configuration."""


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p`` (optional leading ``-``)."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(r: Fraction) -> str:
    return str(Fraction(r))


@dataclass(frozen=True)
class PointRQ:
    """A point of R x Q, both coordinates rational."""

    x: Fraction
    r: Fraction

    def to_dict(self) -> dict:
        return {"x": format_rational(self.x), "r": format_rational(self.r)}


class _IntegerClass:
    """The class of the integers in R/Z."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "[0]"

    def __reduce__(self):
        return (_IntegerClass, ())

    def to_dict(self) -> dict:
        return {"class": "integers"}


INTEGER_CLASS = _IntegerClass()


@dataclass(frozen=True)
class NonInt:
    """The singleton class of a non-integral real."""

    x: Fraction

    def __post_init__(self):
        if not isinstance(self.x, Fraction):
            object.__setattr__(self, "x", Fraction(self.x))
        if self.x.denominator == 1:
            raise DomainError(f"{self.x} is an integer; use INTEGER_CLASS")

    def to_dict(self) -> dict:
        return {"class": "point", "x": format_rational(self.x)}


def phi(x: Fraction):
    """Collapse the integers: the quotient map R -> R/Z."""
    x = Fraction(x)
    return INTEGER_CLASS if x.denominator == 1 else NonInt(x)


def Phi(p: PointRQ):
    return phi(p.x), p.r


# --- integer-level helpers -------------------------------------------------

def _nearest_integer(x: Fraction) -> Optional[int]:
    """The integer ``z`` with ``|x - z| < 1/2``; ``None`` at half-integers."""
    n, d = x.numerator, x.denominator
    if d == 2:
        return None
    return (2 * n + d) // (2 * d)


def _abs_offset(r: Fraction, q: Fraction) -> tuple[int, int]:
    """``|r - q|`` as an unreduced (numerator, denominator) pair."""
    b, e = r.denominator, q.denominator
    return abs(r.numerator * e - q.numerator * b), b * e


def _within(r: Fraction, q: Fraction, radius: Fraction) -> bool:
    """``|r - q| < radius``."""
    n, d = _abs_offset(r, q)
    return n * radius.denominator < radius.numerator * d


def _within_inverse(r: Fraction, q: Fraction, z: int) -> bool:
    """``|r - q| < 1 / (1 + |z|)``."""
    n, d = _abs_offset(r, q)
    return n * (1 + abs(z)) < d


def box_radius(z: int) -> Fraction:
    """Vertical half-height of the ``z``-th box of ``A_q``."""
    return Fraction(1, 1 + abs(z))


# --- membership predicates ---------------------------------------------------

def membership_Aq(q: Fraction, p: PointRQ) -> bool:
    n, d = p.x.numerator, p.x.denominator
    lo = n // d
    for z in (lo, lo + 1) if d > 1 else (lo,):
        if 2 * abs(n - z * d) < d and _within_inverse(p.r, q, z):
            return True
    return False


def membership_Bq(q: Fraction, p: PointRQ, radius: Fraction = Fraction(1)) -> bool:
    return p.x.denominator == 1 and _within(p.r, q, radius)


def membership_PhiAq(q: Fraction, c, r: Fraction) -> bool:
    """Is ``(c, r)`` in the image of ``A_q``?"""
    if c is INTEGER_CLASS:
        # the z = 0 box has the largest radius, 1
        return _within_inverse(r, q, 0)
    z = _nearest_integer(c.x)
    return z is not None and _within_inverse(r, q, z)


@dataclass(frozen=True)
class EpsFamily:
    """Per-integer radii ``eps_z``: a default plus finitely many overrides."""

    default: Fraction = HALF
    overrides: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for z, e in [(None, self.default), *self.overrides.items()]:
            if not 0 < e <= HALF:
                where = "default" if z is None else f"override at {z}"
                raise DomainError(f"eps {where} = {e} is outside (0, 1/2]")

    def radius(self, z: int) -> Fraction:
        return self.overrides.get(z, self.default)

    def to_dict(self) -> dict:
        return {
            "default": format_rational(self.default),
            "overrides": {str(z): format_rational(e) for z, e in sorted(self.overrides.items())},
        }


@dataclass(frozen=True)
class BoxSpec:
    """The basic product neighborhood ``phi(U(eps)) x (q - delta, q + delta)``."""

    eps: EpsFamily
    delta: Fraction

    def __post_init__(self):
        if self.delta <= 0:
            raise DomainError(f"delta must be positive, got {self.delta}")


def in_quotient_nbhd(eps: EpsFamily, c) -> bool:
    """Is ``c`` in ``phi(U(eps))``?"""
    if c is INTEGER_CLASS:
        return True
    z = _nearest_integer(c.x)
    if z is None:
        return False
    return abs(c.x - z) < eps.radius(z)


def in_product_box(q: Fraction, box: BoxSpec, c, r: Fraction) -> bool:
    return in_quotient_nbhd(box.eps, c) and _within(r, q, box.delta)


# --- decision procedures and witnesses ------------------------------------

def mediant(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


@dataclass(frozen=True)
class BoxDecision:
    contained: bool
    witness: Optional[PointRQ]
    reason: str

    def __bool__(self):
        return self.contained


def decide_box_containment(q: Fraction, z: int, eps: Fraction, delta: Fraction) -> BoxDecision:
    """Is ``(z - eps, z + eps) x (q - delta, q + delta)`` inside ``A_q ∪ B_q``?

    Exactly when ``delta <= 1/(1+|z|)``: with ``eps <= 1/2`` every
    non-integral abscissa in the strip has nearest integer ``z``, and the
    single integral abscissa ``z`` is covered by ``B_q`` because
    ``delta <= 1``. Otherwise a rational counter-point is returned.
    """
    eps, delta = Fraction(eps), Fraction(delta)
    if not 0 < eps <= HALF:
        raise DomainError(f"eps must lie in (0, 1/2], got {eps}")
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")
    bound = box_radius(z)
    if delta <= bound:
        return BoxDecision(
            True,
            None,
            f"delta = {delta} <= 1/(1+|z|) = {bound}: non-integral x in the strip lie in the z-th box of A_q, "
            f"x = z lies in B_q since delta <= 1",
        )
    p = PointRQ(z + eps / 2, q + mediant(bound, delta))
    if membership_Aq(q, p) or membership_Bq(q, p):  # pragma: no cover
        raise AssertionError(f"counter-point {p} is covered")
    return BoxDecision(False, p, f"delta = {delta} > 1/(1+|z|) = {bound}")


def witness_product_side(q: Fraction, box: BoxSpec) -> tuple:
    """A point of the box that is not in the image of ``A_q``.

    The boxes of ``A_q`` shrink as ``|z|`` grows, so past ``z* = ceil(1/delta)``
    the box ``box`` is taller than them.
    """
    delta = box.delta
    z = math.ceil(1 / delta)
    bound = box_radius(z)
    x = z + min(box.eps.radius(z), HALF) / 2
    r = q + (bound + delta) / 2
    c = NonInt(x)
    if not (in_quotient_nbhd(box.eps, c) and _within(r, q, delta) and not membership_PhiAq(q, c, r)):
        raise AssertionError(f"witness construction failed for delta={delta}")  # pragma: no cover
    return c, r


# --- checks ------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: object = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "details": self.details,
            "witness": self.witness,
        }


def adversarial_points(q: Fraction, z_values: Sequence[int] = tuple(range(-6, 7)) + (99, -1000, 1000)) -> list:
    """Boundary-hugging points: integers, half-integers, box edges."""
    tiny = Fraction(1, 10**6)
    pts = []
    for z in z_values:
        xs = [Fraction(z), z + HALF, z - HALF, z + Fraction(1, 4), z - Fraction(1, 4), z + HALF - tiny, z - HALF + tiny]
        rad = box_radius(z)
        offs = [Fraction(0), rad, rad - tiny, rad + tiny, Fraction(1), 1 - tiny, HALF, HALF - tiny, Fraction(2)]
        for x in xs:
            for o in offs:
                pts.append(PointRQ(x, q + o))
                pts.append(PointRQ(x, q - o))
    return pts


def check_preimage_identity(
    q: Fraction,
    sample_count: int,
    window: Fraction = Fraction(16),
    seed: int = 42,
    membership_b: Callable = membership_Bq,
) -> Check:
    """Pointwise check that the saturation of ``A_q`` is ``A_q ∪ B_q``.

    ``membership_b`` is injectable so a deliberately broken ``B_q`` can be
    shown to make this check fail.
    """
    if sample_count < 1:
        raise ConfigError("sample_count must be >= 1")
    q = Fraction(q)
    rng = random.Random(seed)
    adv = adversarial_points(q)
    lo_r = q - 2
    violation = None
    checked = 0

    def agree(p):
        c = INTEGER_CLASS if p.x.denominator == 1 else NonInt(p.x)
        return membership_PhiAq(q, c, p.r) == (membership_Aq(q, p) or membership_b(q, p))

    for p in adv:
        checked += 1
        if not agree(p):
            violation = p
            break
    if violation is None:
        wn, wd = window.numerator, window.denominator
        qn, qd = lo_r.numerator, lo_r.denominator
        draw = rng.random
        for _ in range(sample_count):
            d = 1 + int(draw() * 64)
            span = wn * d // wd
            x = Fraction(int(draw() * (2 * span + 1)) - span, d)
            e = 1 + int(draw() * 64)
            k = int(draw() * (4 * e + 1))
            p = PointRQ(x, Fraction(qn * e + k * qd, qd * e))
            checked += 1
            if not agree(p):
                violation = p
                break
    return Check(
        "preimage_identity",
        violation is None,
        {
            "samples": sample_count,
            "adversarial_points": len(adv),
            "points_checked": checked,
            "window": format_rational(window),
        },
        None if violation is None else violation.to_dict(),
    )


def check_quotient_side(q: Fraction, z_range: int, spot_checks: int = 100, seed: int = 42, spot_max: int = 10**6) -> Check:
    """Every fibre point ``(z, q)`` has a box inside ``A_q ∪ B_q``.

    Explicit sweep over ``|z| <= z_range``; beyond it, the characterization
    ``delta <= 1/(1+|z|)`` is instantiated at random large ``|z|``, both at
    the radius (contained) and just above it (refuted with a witness).
    """
    if z_range < 1:
        raise ConfigError("z_range must be >= 1")
    q = Fraction(q)
    failure = None
    for z in range(-z_range, z_range + 1):
        if not decide_box_containment(q, z, HALF, box_radius(z)):
            failure = {"z": z, "stage": "sweep"}
            break
    rng = random.Random(seed)
    spots = []
    if failure is None:
        for _ in range(spot_checks):
            z = rng.randint(1, spot_max) * rng.choice((-1, 1))
            spots.append(z)
            at = decide_box_containment(q, z, HALF, box_radius(z))
            above = decide_box_containment(q, z, HALF, mediant(box_radius(z), Fraction(1, abs(z))))
            if not at or above or membership_Aq(q, above.witness) or membership_Bq(q, above.witness):
                failure = {"z": z, "stage": "certificate"}
                break
    return Check(
        "quotient_side",
        failure is None,
        {
            "boxes_swept": 2 * z_range + 1,
            "z_range": z_range,
            "certificate_spot_checks": len(spots),
            "largest_spot_z": max((abs(z) for z in spots), default=0),
        },
        failure,
    )


def random_eps_family(rng: random.Random, z_spread: int = 150) -> EpsFamily:
    default = Fraction(1, rng.randint(2, 1000))
    overrides = {}
    for _ in range(rng.randint(0, 8)):
        overrides[rng.randint(-z_spread, z_spread)] = Fraction(rng.randint(1, 50), rng.randint(100, 10000))
    return EpsFamily(default, overrides)


def check_product_side(q: Fraction, delta_grid: Sequence[Fraction], eps_trials: int, seed: int = 42) -> Check:
    """No basic box around ``([0], q)`` lies inside the image of ``A_q``."""
    q = Fraction(q)
    rng = random.Random(seed)
    families = [EpsFamily()] + [random_eps_family(rng) for _ in range(eps_trials - 1)]
    samples = []
    failure = None
    n = 0
    for delta in delta_grid:
        for k, eps in enumerate(families):
            box = BoxSpec(eps, Fraction(delta))
            if not in_product_box(q, box, INTEGER_CLASS, q):
                failure = {"delta": format_rational(delta), "reason": "base point outside box"}
                break
            c, r = witness_product_side(q, box)
            n += 1
            if not in_product_box(q, box, c, r) or membership_PhiAq(q, c, r):
                failure = {"delta": format_rational(delta), "point": c.to_dict(), "r": format_rational(r)}
                break
            if k == 0:
                samples.append({"delta": format_rational(delta), "point": c.to_dict(), "r": format_rational(r)})
        if failure:
            break
    return Check(
        "product_side",
        failure is None,
        {"boxes_refuted": n, "deltas": len(delta_grid), "eps_trials": eps_trials},
        failure if failure else samples,
    )


def default_delta_grid(k_max: int = 100) -> tuple:
    return tuple(Fraction(1, k) for k in range(1, k_max + 1))


R_MODE_NOTE = (
    "mode R: the second factor is R instead of Q. Every predicate and witness used here is "
    "evaluated at rational points, so the computation is unchanged."
)


@dataclass
class PaperConfig:
    q: Fraction = Fraction(0)
    z_range: int = 1000
    delta_grid: tuple = field(default_factory=default_delta_grid)
    eps_trials: int = 100
    samples: int = 100_000
    seed: int = 42
    mode: str = "Q"
    window: Fraction = Fraction(16)
    spot_checks: int = 100

    def validate(self):
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.z_range < 1:
            raise ConfigError("z_range must be >= 1")
        if self.eps_trials < 1:
            raise ConfigError("eps_trials must be >= 1")
        if not self.delta_grid or any(d <= 0 for d in self.delta_grid):
            raise ConfigError("delta_grid must be a nonempty list of positive rationals")
        if self.mode not in ("Q", "R"):
            raise ConfigError(f"mode must be Q or R, got {self.mode!r}")
        if self.window <= 0:
            raise ConfigError("window must be positive")
        if self.spot_checks < 0:
            raise ConfigError("spot_checks must be >= 0")

    def to_dict(self) -> dict:
        return {
            "q": format_rational(self.q),
            "z_range": self.z_range,
            "delta_grid": [format_rational(d) for d in self.delta_grid],
            "eps_trials": self.eps_trials,
            "samples": self.samples,
            "seed": self.seed,
            "mode": self.mode,
            "window": format_rational(self.window),
            "spot_checks": self.spot_checks,
        }


@dataclass
class VerificationReport:
    command: str
    config: dict
    checks: list
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "notes": self.notes,
            "overall": "pass" if self.passed else "fail",
        }


def run_paper_verification(config: PaperConfig | None = None) -> VerificationReport:
    """Run the preimage, quotient-side and product-side checks in order."""
    config = config or PaperConfig()
    config.validate()
    q = Fraction(config.q)
    checks = [
        check_preimage_identity(q, config.samples, config.window, config.seed),
        check_quotient_side(q, config.z_range, config.spot_checks, config.seed),
        check_product_side(q, config.delta_grid, config.eps_trials, config.seed),
    ]
    notes = [
        "The image of A_q is in the quotient stack at ([0], q): every fibre point (z, q) has a box in the union of A_q and B_q.",
        "The image of A_q contains no basic box around ([0], q); every basic cylinder contains such a box, "
        "so it is in neither the box-generated nor the cylinder-generated product stack.",
    ]
    if config.mode == "R":
        notes.append(R_MODE_NOTE)
    return VerificationReport("verify-paper", config.to_dict(), checks, notes)
