"""Newton diagrams, the extended simplex of a weight system, and exact
polar duality.

The extended simplex cones the full Newton diagram at the origin and
shifts everything by (-1, ..., -1).  Its polar dual is computed vertex
by vertex through exact rational linear solves, and the closed form
(e_1, ..., e_n, (-a_1/a_0, ..., -a_n/a_0)) is available for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, magic
from .errors import DomainError, SingularMatrixError, ValidationError
from .weights import WeightSystem

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalSimplex:
    """A diagram (n vertices) or full simplex (n+1 vertices) with exact
    rational coordinates in dimension n."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vertices = tuple(
            tuple(Fraction(x) for x in v) for v in self.vertices
        )
        object.__setattr__(self, "vertices", vertices)
        if not vertices:
            raise ValidationError("a simplex needs at least one vertex")
        n = len(vertices[0])
        if any(len(v) != n for v in vertices):
            raise ValidationError("vertices must share one dimension")
        if len(vertices) not in (n, n + 1):
            raise ValidationError(
                f"expected {n} or {n + 1} vertices in dimension {n}, "
                f"got {len(vertices)}"
            )
        if len(set(vertices)) != len(vertices):
            raise ValidationError("vertices must be pairwise distinct")

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def __str__(self) -> str:
        return "{" + ", ".join(
            "(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices
        ) + "}"


def extended_diagram(wa: WeightSystem) -> RationalSimplex:
    """The full Newton diagram coned at the origin and shifted by -1.

    Vertices are (-1 + h/a_i) e_i - (1,...,1) for each weight, followed
    by (-1, ..., -1) for the coned origin.
    """
    if 0 in wa.weights:
        raise ValidationError("the extended diagram needs strictly positive weights")
    if wa.a0 == 0:
        raise ValidationError(
            f"{wa} has virtual weight 0; the origin degenerates onto a facet"
        )
    n = wa.n
    h = wa.degree
    vertices = [
        tuple(
            Fraction(h, a) - 1 if j == i else Fraction(-1)
            for j in range(n)
        )
        for i, a in enumerate(wa.weights)
    ]
    vertices.append(tuple(Fraction(-1) for _ in range(n)))
    return RationalSimplex(tuple(vertices))


def _barycentric_of_origin(s: RationalSimplex) -> tuple[Fraction, ...]:
    """Coefficients lam with sum(lam) = 1 and sum(lam_i v_i) = 0."""
    n = s.dimension
    rows = [
        tuple(s.vertices[i][coord] for i in range(n + 1))
        for coord in range(n)
    ]
    rows.append(tuple(Fraction(1) for _ in range(n + 1)))
    rhs = [Fraction(0)] * n + [Fraction(1)]
    try:
        return linalg.solve(tuple(rows), tuple(rhs))
    except SingularMatrixError:
        raise ValidationError(
            "degenerate simplex: vertices are affinely dependent"
        ) from None


def polar_dual(s: RationalSimplex) -> RationalSimplex:
    """The polar dual simplex, dual vertex i opposite primal vertex i.

    Requires a full simplex (n+1 vertices) with the origin strictly
    inside.  Dual vertex i solves <v_j, y> = -1 for every j != i; the
    result is checked a posteriori against the defining inequalities.
    """
    n = s.dimension
    if len(s.vertices) != n + 1:
        raise ValidationError(
            f"polar duals are computed for full simplices only "
            f"({n + 1} vertices in dimension {n}, got {len(s.vertices)})"
        )
    lam = _barycentric_of_origin(s)
    if any(l <= 0 for l in lam):
        raise DomainError(
            "the origin is not in the interior of the simplex, "
            "so the polar dual is not a simplex"
        )
    minus_one = tuple(Fraction(-1) for _ in range(n))
    duals = []
    for i in range(n + 1):
        rows = tuple(v for j, v in enumerate(s.vertices) if j != i)
        duals.append(linalg.solve(rows, minus_one))
    for v in s.vertices:
        for y in duals:
            if sum(a * b for a, b in zip(v, y)) < -1:
                raise DomainError("polar dual violates its defining inequalities")
    return RationalSimplex(tuple(duals))


def closed_form_dual(wa: WeightSystem) -> RationalSimplex:
    """The closed form of polar_dual(extended_diagram(wa)): the standard
    basis vectors followed by (-a_1/a_0, ..., -a_n/a_0)."""
    if 0 in wa.weights:
        raise ValidationError("the closed form needs strictly positive weights")
    if wa.a0 == 0:
        raise ValidationError(f"{wa} has virtual weight 0; the dual is unbounded")
    n = wa.n
    vertices = [
        tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
        for i in range(n)
    ]
    vertices.append(tuple(Fraction(-a, wa.a0) for a in wa.weights))
    return RationalSimplex(tuple(vertices))


def verify_duality_identity(ms: magic.MagicSquare) -> bool:
    """True iff A*C equals E + A*1 exactly, for A the inverse of C - 1.

    Entry (i, j) of the right-hand side is delta_ij + a_i/a_0, so the
    check says the columns of C, expressed in the basis of A's rows,
    form a Newton diagram of the partner weight system.
    """
    data = magic.inverse_data(ms)
    product = linalg.mat_mul(data.a, ms.entries)
    a0 = ms.wa.a0
    n = ms.n
    expected = tuple(
        tuple(
            (1 if i == j else 0) + Fraction(ms.wa.weights[i], a0)
            for j in range(n)
        )
        for i in range(n)
    )
    return product == expected
