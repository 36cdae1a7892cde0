"""Weight systems: ordered positive weights with a degree.

A weight system (a_1, ..., a_n; h) assigns weight a_i to the i-th variable
and fixes a total degree h.  The virtual weight a_0 := h - sum(a_i) is
always derived, never stored.  Two systems are equivalent when one is a
permutation of a rational rescaling of the other; each class with an
integer representative of weight-gcd dividing its degree has a unique
reduced (gcd 1, ascending) representative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ParseError, ValidationError

MIN_WEIGHTS = 2
MAX_WEIGHTS = 4

_GRAMMAR = re.compile(r"(\d+(?:\s*,\s*\d+)*)\s*;\s*(\d+)")


@dataclass(frozen=True)
class WeightSystem:
    """Weights (a_1, ..., a_n) of degree h, written ``a1,...,an;h``.

    Weights are positive by default.  A single zero weight is tolerated on
    instances built with ``allows_zero_weight=True``; such systems are
    quarantined from scaling equivalence and from every operation that
    divides by a weight.
    """

    weights: tuple[int, ...]
    degree: int
    allows_zero_weight: bool = False

    def __post_init__(self):
        ws = tuple(int(a) for a in self.weights)
        object.__setattr__(self, "weights", ws)
        n = len(ws)
        if not MIN_WEIGHTS <= n <= MAX_WEIGHTS:
            raise ValidationError(
                f"need between {MIN_WEIGHTS} and {MAX_WEIGHTS} weights, got {n}"
            )
        if self.degree <= 0:
            raise ValidationError(f"degree must be positive, got {self.degree}")
        if any(a < 0 for a in ws):
            raise ValidationError(f"negative weight in {ws}")
        zeros = sum(1 for a in ws if a == 0)
        if zeros == n:
            raise ValidationError("all weights are zero")
        if zeros > 1:
            raise ValidationError("at most one weight may be zero")
        if zeros and not self.allows_zero_weight:
            raise ValidationError(
                f"zero weight in {ws} requires allows_zero_weight=True"
            )

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def a0(self) -> int:
        """Virtual weight h - sum(a_i); may be zero or negative."""
        return self.degree - sum(self.weights)

    @property
    def is_reduced(self) -> bool:
        """True when gcd of the weights is 1 and they are sorted ascending."""
        ws = self.weights
        return gcd(*ws) == 1 and all(ws[i] <= ws[i + 1] for i in range(len(ws) - 1))

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.weights) + f";{self.degree}"

    def full_form(self) -> str:
        """Layout with the virtual weight printed first: ``a0,a1,...,an;h``."""
        return f"{self.a0}," + str(self)


@dataclass(frozen=True)
class Reduction:
    """A reduced ascending representative plus how it was obtained."""

    system: WeightSystem
    permutation: tuple[int, ...]  # reduced weight i came from input position permutation[i]
    scale: Fraction  # reduced weights = scale * original weights


def parse_weight_system(text: str, allow_zero_weight: bool = False) -> WeightSystem:
    """Parse ``a1,...,an;h`` into a WeightSystem, order preserved."""
    m = _GRAMMAR.fullmatch(text.strip())
    if not m:
        raise ParseError(f"weight system must match 'a1,...,an;h', got {text!r}")
    ws = tuple(int(p) for p in re.split(r"\s*,\s*", m.group(1)))
    try:
        return WeightSystem(ws, int(m.group(2)), allows_zero_weight=allow_zero_weight)
    except ValidationError as exc:
        raise ParseError(f"invalid weight system {text!r}: {exc}") from exc


def reduce_system(w: WeightSystem) -> Reduction:
    """Divide out the weight gcd and sort ascending; record both steps."""
    g = gcd(*w.weights)
    if w.degree % g:
        raise ValidationError(
            f"weight gcd {g} does not divide the degree {w.degree}; the "
            f"equivalence class of {w} has no reduced integer representative"
        )
    order = sorted(range(w.n), key=lambda i: w.weights[i])
    reduced = WeightSystem(
        tuple(w.weights[i] // g for i in order),
        w.degree // g,
        allows_zero_weight=w.allows_zero_weight,
    )
    return Reduction(reduced, tuple(order), Fraction(1, g))


def parse_and_reduce(text: str) -> WeightSystem:
    """Parse then return the unique reduced ascending representative."""
    return reduce_system(parse_weight_system(text)).system


def equivalent(w1: WeightSystem, w2: WeightSystem) -> bool:
    """True iff some permutation and positive rational rescaling map w1 to w2.

    Implemented by cross-multiplying the sorted weight tuples, so no
    divisibility assumptions are needed.  Zero-weight systems are refused:
    a zero weight is preserved by every rescaling, which would make the
    check silently weaker than it looks.
    """
    if 0 in w1.weights or 0 in w2.weights:
        raise ValidationError(
            "scaling equivalence is not defined for zero-weight systems"
        )
    if w1.n != w2.n:
        return False
    s1, s2 = sorted(w1.weights), sorted(w2.weights)
    h1, h2 = w1.degree, w2.degree
    return all(a * h2 == b * h1 for a, b in zip(s1, s2))


def is_calabi_yau(w: WeightSystem) -> bool:
    """True when the virtual weight is positive and divides the degree."""
    return w.a0 > 0 and w.degree % w.a0 == 0
