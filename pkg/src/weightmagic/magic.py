"""Weighted magic squares.

A square C couples a weight pair (W_a of degree h, W_b of degree k) when
every a-weighted row sum equals h and every b-weighted column sum equals
k, i.e. C.a = (h,...,h)^t and b.C = (k,...,k).  This module validates and
classifies such squares, inverts C - 1 exactly, recovers both weight
systems from that inverse, and handles the monomial notation used to
write the rows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import linalg
from .errors import ParseError, SingularMatrixError, ValidationError
from .weights import WeightSystem, reduce_system

PRIMITIVE = "primitive"
ALMOST_PRIMITIVE = "almost_primitive"
PLAIN = "plain"

CLASSIFICATIONS = (PRIMITIVE, ALMOST_PRIMITIVE, PLAIN)

_VARS = "xyzt"
_TOKEN = re.compile(r"([xyzt])([1-4])?(?:\^(?:\{(\d+)\}|(\d+)))?")


@dataclass(frozen=True)
class MagicSquare:
    """A validated weighted magic square bound to its weight pair.

    Construction runs the defining relations, so an instance is valid by
    the time it exists.
    """

    entries: tuple[tuple[int, ...], ...]
    wa: WeightSystem
    wb: WeightSystem

    def __post_init__(self):
        entries = tuple(tuple(int(c) for c in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        n = self.wa.n
        if self.wb.n != n:
            raise ValidationError(
                f"weight systems disagree on size: {self.wa.n} vs {self.wb.n}"
            )
        if len(entries) != n or any(len(r) != n for r in entries):
            raise ValidationError(f"matrix must be {n}x{n} to match the weights")
        if any(c < 0 for row in entries for c in row):
            raise ValidationError("matrix entries must be non-negative")
        h, k = self.wa.degree, self.wb.degree
        for i, row in enumerate(entries):
            s = sum(c * a for c, a in zip(row, self.wa.weights))
            if s != h:
                raise ValidationError(
                    f"row {i + 1} has a-weighted sum {s}, expected the degree {h}"
                )
        for j in range(n):
            s = sum(self.wb.weights[i] * entries[i][j] for i in range(n))
            if s != k:
                raise ValidationError(
                    f"column {j + 1} has b-weighted sum {s}, expected the degree {k}"
                )

    @property
    def n(self) -> int:
        return len(self.entries)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def monomials(self) -> str:
        return format_monomial_matrix(self.entries)

    def __str__(self) -> str:
        return self.monomials()


def validate(entries, wa: WeightSystem, wb: WeightSystem) -> MagicSquare:
    """Check both defining relations and return the validated square."""
    return MagicSquare(tuple(tuple(row) for row in entries), wa, wb)


@dataclass(frozen=True)
class CouplingReport:
    """Determinant-level classification and zero-pattern summary."""

    determinant: int
    classification: str
    strong: bool
    row_has_zero: tuple[bool, ...]
    col_has_zero: tuple[bool, ...]


def classify(ms: MagicSquare) -> CouplingReport:
    """Classify |det C| against h, k and the two virtual weights.

    primitive:        |det C| = h = k
    almost_primitive: |det C| = h * b0 = k * a0
    plain:            anything else

    A square is *strong* when every row and every column contains a zero.
    Primitive implies the almost-primitive equalities with a0 = b0 = 1,
    so the strongest applicable label is reported.
    """
    det = linalg.determinant(ms.entries)
    h, k = ms.wa.degree, ms.wb.degree
    a0, b0 = ms.wa.a0, ms.wb.a0
    if abs(det) == h == k:
        label = PRIMITIVE
    elif abs(det) == h * b0 and abs(det) == k * a0:
        label = ALMOST_PRIMITIVE
    else:
        label = PLAIN
    rows = tuple(0 in row for row in ms.entries)
    cols = tuple(0 in ms.column(j) for j in range(ms.n))
    return CouplingReport(det, label, all(rows) and all(cols), rows, cols)


@dataclass(frozen=True)
class InverseData:
    """B = C - 1, its exact rational inverse A, and the weight systems
    recovered from the row and column sums of A."""

    b: tuple[tuple[int, ...], ...]
    a: tuple[tuple[Fraction, ...], ...]
    recovered_wa: WeightSystem
    recovered_wb: WeightSystem


def _system_from_ratios(ratios) -> WeightSystem:
    """Rebuild a reduced weight system from the ratios weight_i / virtual.

    The ratios determine (a0, a_1, ..., a_n) up to one rational scale;
    we pick the integer representative with positive weights and reduce.
    """
    ratios = [Fraction(r) for r in ratios]
    q = lcm(*(r.denominator for r in ratios))
    if all(r <= 0 for r in ratios):
        q = -q  # negative virtual weight: flip the whole tuple positive
    ws = [r * q for r in ratios]
    try:
        system = WeightSystem(
            tuple(int(w) for w in ws),
            q + sum(int(w) for w in ws),
            allows_zero_weight=any(w == 0 for w in ws),
        )
        return reduce_system(system).system
    except ValidationError as exc:
        raise ValidationError(
            f"ratios {tuple(str(r) for r in ratios)} do not come from a weight system: {exc}"
        ) from exc


def inverse_data(ms: MagicSquare) -> InverseData:
    """Invert B = C - 1 exactly and recover both weight systems from A.

    Row sums of A are a_i / a0 and column sums are b_j / b0; both
    recovered systems must reduce to the bound ones, otherwise the square
    or its binding is corrupted.
    """
    b = tuple(tuple(c - 1 for c in row) for row in ms.entries)
    try:
        a = linalg.inverse(b)
    except SingularMatrixError:
        raise SingularMatrixError(
            "C - 1 is singular, so the inverse data does not exist"
        ) from None
    n = ms.n
    row_sums = [sum(a[i][j] for j in range(n)) for i in range(n)]
    col_sums = [sum(a[i][j] for i in range(n)) for j in range(n)]
    recovered_wa = _system_from_ratios(row_sums)
    recovered_wb = _system_from_ratios(col_sums)
    if recovered_wa != reduce_system(ms.wa).system:
        raise ValidationError(
            f"recovered row weights {recovered_wa} do not reduce to {ms.wa}"
        )
    if recovered_wb != reduce_system(ms.wb).system:
        raise ValidationError(
            f"recovered column weights {recovered_wb} do not reduce to {ms.wb}"
        )
    return InverseData(b, a, recovered_wa, recovered_wb)


def recover_partner(entries, wa: WeightSystem) -> MagicSquare:
    """Recover the column weight system of ``entries`` from C - 1 alone.

    Column sums of (C - 1)^-1 are b_j / b0, which fixes the column system
    up to one rational scale; the smallest integer representative is kept
    in column order (not sorted), so the returned square validates as-is.
    """
    b = tuple(tuple(c - 1 for c in row) for row in entries)
    try:
        a = linalg.inverse(b)
    except SingularMatrixError:
        raise SingularMatrixError(
            "C - 1 is singular, so the column weights cannot be recovered"
        ) from None
    n = len(entries)
    ratios = [sum(a[i][j] for i in range(n)) for j in range(n)]
    q = lcm(*(r.denominator for r in ratios))
    if all(r <= 0 for r in ratios):
        q = -q  # negative virtual weight: flip the whole tuple positive
    ws = [int(r * q) for r in ratios]
    g = gcd(q, *ws)
    b0, ws = q // g, [w // g for w in ws]
    wb = WeightSystem(tuple(ws), b0 + sum(ws),
                      allows_zero_weight=any(w == 0 for w in ws))
    return validate(entries, wa, wb)


def transpose(ms: MagicSquare) -> MagicSquare:
    """Swap rows with columns and the two weight systems; always valid."""
    return MagicSquare(linalg.transpose(ms.entries), ms.wb, ms.wa)


# ---------------------------------------------------------------------------
# Monomial and matrix notation


def parse_monomial_matrix(text: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Parse ``x^5z, xy^3, z^2`` (or x1..xn style) into exponent rows.

    Variables are x, y, z, t for the first, ..., fourth column, or x1..xn;
    the two styles cannot be mixed.  Exponents use ^e or ^{e}, default 1.
    Monomial i becomes row i.
    """
    if not 2 <= n <= 4:
        raise ParseError(f"monomial matrices need n between 2 and 4, got {n}")
    monomials = [m.strip() for m in text.split(",")]
    if len(monomials) != n:
        raise ParseError(f"expected {n} monomials, got {len(monomials)} in {text!r}")
    rows = []
    indexed: bool | None = None
    for mono in monomials:
        s = re.sub(r"\s+", "", mono)
        if not s:
            raise ParseError(f"empty monomial in {text!r}")
        row = [0] * n
        seen: set[int] = set()
        pos = 0
        while pos < len(s):
            m = _TOKEN.match(s, pos)
            if not m:
                raise ParseError(f"cannot read monomial {mono!r} at {s[pos:]!r}")
            letter, idx, brace_exp, plain_exp = m.groups()
            if idx is not None:
                if letter != "x":
                    raise ParseError(
                        f"indexed variables must be x1..x{n}, got {letter}{idx}"
                    )
                style, var = True, int(idx) - 1
            else:
                style, var = False, _VARS.index(letter)
            if indexed is None:
                indexed = style
            elif indexed != style:
                raise ParseError(f"mixed variable styles in {text!r}")
            if var >= n:
                raise ParseError(
                    f"variable {m.group(0)!r} out of range for {n} variables"
                )
            if var in seen:
                raise ParseError(f"variable repeated in monomial {mono!r}")
            seen.add(var)
            row[var] = int(brace_exp or plain_exp or 1)
            pos = m.end()
        rows.append(tuple(row))
    return tuple(rows)


def format_monomial_matrix(entries) -> str:
    """Render exponent rows in the notation ``x^{21}z, y^3, z^2``.

    Single-digit exponents are bare, multi-digit ones braced, exponent-1
    variables unadorned; rows are joined by a comma and a space.
    """
    parts = []
    for row in entries:
        factors = []
        for var, exp in zip(_VARS, row):
            if exp == 0:
                continue
            if exp == 1:
                factors.append(var)
            elif exp < 10:
                factors.append(f"{var}^{exp}")
            else:
                factors.append(f"{var}^{{{exp}}}")
        parts.append("".join(factors) or "1")
    return ", ".join(parts)


def parse_matrix_rows(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse semicolon-separated integer rows, e.g. ``5,0,1;1,3,0;0,0,2``."""
    try:
        rows = tuple(
            tuple(int(p) for p in re.split(r"\s*,\s*", part.strip()))
            for part in text.split(";")
        )
    except ValueError as exc:
        raise ParseError(f"cannot read integer matrix {text!r}: {exc}") from exc
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"ragged matrix {text!r}")
    return rows


def parse_matrix(text: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Accept either monomial notation or semicolon-separated integer rows."""
    if ";" in text:
        rows = parse_matrix_rows(text)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ParseError(f"expected a {n}x{n} matrix, got {text!r}")
        return rows
    return parse_monomial_matrix(text, n)
