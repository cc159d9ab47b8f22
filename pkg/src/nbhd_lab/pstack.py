"""p-stacks on finite carriers.

Subsets of a carrier are stored as integer bitmasks over the carrier's
element order. A :class:`PStack` keeps only its antichain of minimal sets;
the family it represents is the upward closure of that antichain.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Iterator, Sequence

MAX_CARRIER = 16


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceError(ValueError):
    """A request exceeds the enumeration limits."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def format_label(label) -> str:
    if isinstance(label, tuple):
        return "|".join(format_label(part) for part in label)
    return str(label)


class Carrier:
    """A finite, ordered set of point labels (at most 16 of them)."""

    __slots__ = ("elements", "_index", "full")

    def __init__(self, elements: Iterable[Hashable]):
        elements = tuple(elements)
        if not elements:
            raise DomainError("carrier must be nonempty")
        if len(elements) > MAX_CARRIER:
            raise ResourceError(f"carrier has {len(elements)} points, limit is {MAX_CARRIER}")
        index = {}
        for i, e in enumerate(elements):
            if e in index:
                raise DomainError(f"duplicate label {e!r}")
            index[e] = i
        self.elements = elements
        self._index = index
        self.full = (1 << len(elements)) - 1

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        return isinstance(other, Carrier) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Carrier({list(self.elements)!r})"

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"{label!r} is not a point of {self!r}") from None

    def point(self, label) -> int:
        """Bitmask of the singleton ``{label}``."""
        return 1 << self.index(label)

    def mask(self, labels: Iterable[Hashable]) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: int) -> tuple:
        if mask & ~self.full:
            raise DomainError(f"mask {mask:#x} is not a subset of {self!r}")
        return tuple(self.elements[i] for i in bits(mask))

    def subsets(self) -> range:
        """All subsets, as masks ``0 .. 2**n - 1``."""
        return range(self.full + 1)


def _set_key(mask: int) -> tuple:
    return tuple(bits(mask))


def minimal_antichain(masks: Iterable[int]) -> tuple:
    """The inclusion-minimal members of ``masks``, in canonical order."""
    kept: list[int] = []
    for m in sorted(set(masks), key=popcount):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(sorted(kept, key=_set_key))


class PStack:
    """An upward-closed family of subsets, stored as its minimal sets.

    ``PStack`` does not itself enforce the pairwise intersection property;
    the empty family and non-PIP families are representable so that
    intermediate computations stay total. Use :func:`satisfies_pip` and
    :func:`is_nbd_stack` to test.
    """

    __slots__ = ("carrier", "minimal")

    def __init__(self, carrier: Carrier, minimal: Sequence[int]):
        # callers pass an already reduced antichain; see upward_closure
        self.carrier = carrier
        self.minimal = tuple(minimal)

    @classmethod
    def from_masks(cls, carrier: Carrier, masks: Iterable[int]) -> "PStack":
        masks = list(masks)
        for m in masks:
            if m & ~carrier.full:
                raise DomainError(f"generator {m:#x} is not a subset of {carrier!r}")
        return cls(carrier, minimal_antichain(masks))

    @classmethod
    def principal(cls, carrier: Carrier, x) -> "PStack":
        """The finest stack at ``x``: every subset containing ``x``."""
        return cls(carrier, (carrier.point(x),))

    @classmethod
    def indiscrete(cls, carrier: Carrier) -> "PStack":
        return cls(carrier, (carrier.full,))

    def __eq__(self, other):
        return (
            isinstance(other, PStack)
            and self.carrier == other.carrier
            and self.minimal == other.minimal
        )

    def __hash__(self):
        return hash((self.carrier, self.minimal))

    def __repr__(self):
        return f"PStack({self.text()})"

    def __contains__(self, subset) -> bool:
        if not isinstance(subset, int):
            subset = self.carrier.mask(subset)
        return self.contains_mask(subset)

    def contains_mask(self, mask: int) -> bool:
        return any(m & mask == m for m in self.minimal)

    def family(self) -> frozenset:
        """Every member of the family as a mask (powerset scan)."""
        return frozenset(s for s in self.carrier.subsets() if self.contains_mask(s))

    def minimal_sets(self) -> list:
        return [frozenset(self.carrier.labels(m)) for m in self.minimal]

    def is_empty(self) -> bool:
        return not self.minimal

    def text(self) -> str:
        """Canonical text form, e.g. ``[[a],[b,c]]``."""
        inner = ",".join(
            "[" + ",".join(format_label(lbl) for lbl in self.carrier.labels(m)) + "]"
            for m in self.minimal
        )
        return "[" + inner + "]"

    @classmethod
    def parse(cls, carrier: Carrier, text: str) -> "PStack":
        """Inverse of :meth:`text` for carriers with plain string labels."""
        by_name = {format_label(e): e for e in carrier}
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise DomainError(f"malformed stack text {text!r}")
        body = body[1:-1].strip()
        masks = []
        while body:
            if not body.startswith("["):
                raise DomainError(f"malformed stack text {text!r}")
            end = body.find("]")
            if end < 0:
                raise DomainError(f"malformed stack text {text!r}")
            names = [n.strip() for n in body[1:end].split(",") if n.strip()]
            try:
                masks.append(carrier.mask(by_name[n] for n in names))
            except KeyError as exc:
                raise DomainError(f"unknown label {exc.args[0]!r} in {text!r}") from None
            body = body[end + 1:].lstrip()
            if body.startswith(","):
                body = body[1:].lstrip()
        return cls.from_masks(carrier, masks)


def upward_closure(carrier: Carrier, generators: Iterable) -> PStack:
    """The p-stack (upper family) generated by ``generators``.

    Generators may be label collections or raw masks.
    """
    masks = []
    for g in generators:
        if isinstance(g, int):
            if g & ~carrier.full:
                raise DomainError(f"generator {g:#x} is not a subset of {carrier!r}")
            masks.append(g)
        else:
            masks.append(carrier.mask(g))
    return PStack(carrier, minimal_antichain(masks))


def satisfies_pip(s: PStack) -> bool:
    ms = s.minimal
    for i, a in enumerate(ms):
        for b in ms[i:]:
            if not a & b:
                return False
    return True


def is_nbd_stack(s: PStack, x) -> bool:
    """Nonempty, and every member contains ``x``."""
    bit = s.carrier.point(x)
    return bool(s.minimal) and all(m & bit for m in s.minimal)


def _same_carrier(s: PStack, t: PStack):
    if s.carrier != t.carrier:
        raise DomainError(f"carrier mismatch: {s.carrier!r} vs {t.carrier!r}")


def refines(s: PStack, t: PStack) -> bool:
    """True iff the family of ``s`` contains the family of ``t``."""
    _same_carrier(s, t)
    return all(any(m & n == m for m in s.minimal) for n in t.minimal)


def meet_stacks(s: PStack, t: PStack) -> PStack:
    """Intersection of the two families."""
    _same_carrier(s, t)
    return PStack(s.carrier, minimal_antichain(m | n for m in s.minimal for n in t.minimal))


def join_stacks(s: PStack, t: PStack) -> PStack:
    """Union of the two families."""
    _same_carrier(s, t)
    return PStack(s.carrier, minimal_antichain(s.minimal + t.minimal))


def image_stack(f, s: PStack) -> PStack:
    """Stack on ``f.cod`` generated by the images of the members of ``s``."""
    if f.dom != s.carrier:
        raise DomainError("image_stack: stack does not live on the map's domain")
    return PStack(f.cod, minimal_antichain(f.image_mask(m) for m in s.minimal))


def preimage_stack(f, s: PStack) -> PStack:
    """Stack on ``f.dom`` generated by the preimages of the members of ``s``."""
    if f.cod != s.carrier:
        raise DomainError("preimage_stack: stack does not live on the map's codomain")
    return PStack(f.dom, minimal_antichain(f.preimage_mask(m) for m in s.minimal))
