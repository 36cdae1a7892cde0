"""Exhaustive search for weighted magic squares coupling a weight pair.

Rows are enumerated as the non-negative integer solutions of the row
relation, assembled depth-first into squares with prefix pruning against
the column relation, and reported once per row multiset in a canonical
arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from . import magic
from .errors import SearchCapExceeded, ValidationError
from .weights import WeightSystem

FILTERS = ("any", "almost_primitive", "primitive")


@dataclass(frozen=True)
class SearchQuery:
    """Parameters for one search over a fixed weight pair."""

    wa: WeightSystem
    wb: WeightSystem
    filter: str = "any"
    strong_only: bool = False
    cap: int = 10**6

    def __post_init__(self):
        if self.filter not in FILTERS:
            raise ValidationError(
                f"filter must be one of {FILTERS}, got {self.filter!r}"
            )
        if 0 in self.wa.weights or 0 in self.wb.weights:
            raise ValidationError("search requires strictly positive weights")
        if self.wa.n != self.wb.n:
            raise ValidationError(
                f"weight systems disagree on size: {self.wa.n} vs {self.wb.n}"
            )
        if self.cap < 1:
            raise ValidationError(f"cap must be positive, got {self.cap}")


def enumerate_rows(wa: WeightSystem) -> list[tuple[int, ...]]:
    """All non-negative integer rows c with sum(c_j * a_j) = h,
    lexicographically descending."""
    if 0 in wa.weights:
        raise ValidationError("row enumeration requires strictly positive weights")
    n = wa.n
    out: list[tuple[int, ...]] = []

    def extend(j: int, remaining: int, prefix: tuple[int, ...]) -> None:
        if j == n - 1:
            if remaining % wa.weights[j] == 0:
                out.append(prefix + (remaining // wa.weights[j],))
            return
        for c in range(remaining // wa.weights[j], -1, -1):
            extend(j + 1, remaining - c * wa.weights[j], prefix + (c,))

    extend(0, wa.degree, ())
    return out


def _columns_valid(rows, wb: WeightSystem) -> bool:
    k = wb.degree
    return all(
        sum(b * row[j] for b, row in zip(wb.weights, rows)) == k
        for j in range(len(rows[0]))
    )


def canonicalize(rows, wb: WeightSystem) -> tuple[tuple[int, ...], ...] | None:
    """The lexicographically greatest arrangement of the given rows that
    satisfies the column relation for wb, or None if no arrangement does.

    The row relation is arrangement-independent, but the column relation
    weights row i by b_i, so not every ordering of a valid multiset is
    valid; the greatest valid ordering is the reported representative.
    """
    for cand in sorted(set(permutations(rows)), reverse=True):
        if _columns_valid(cand, wb):
            return cand
    return None


def find_magic_squares(q: SearchQuery) -> list[magic.MagicSquare]:
    """Every magic square coupling (q.wa, q.wb), one per row multiset.

    Results are deduplicated by row multiset, rendered in canonical
    arrangement, filtered by classification and strongness, and sorted
    descending by flattened entries.  Exceeding the result cap raises
    SearchCapExceeded carrying the results collected so far.
    """
    rows = enumerate_rows(q.wa)
    n = q.wa.n
    k = q.wb.degree
    b = q.wb.weights
    seen: set[tuple[tuple[int, ...], ...]] = set()
    accepted: list[magic.MagicSquare] = []

    def admit(arrangement: tuple[tuple[int, ...], ...]) -> None:
        key = tuple(sorted(arrangement))
        if key in seen:
            return
        seen.add(key)
        canonical = canonicalize(key, q.wb)
        ms = magic.MagicSquare(canonical, q.wa, q.wb)
        report = magic.classify(ms)
        if q.filter == "primitive" and report.classification != magic.PRIMITIVE:
            return
        if q.filter == "almost_primitive" and report.classification not in (
            magic.PRIMITIVE,
            magic.ALMOST_PRIMITIVE,
        ):
            return
        if q.strong_only and not report.strong:
            return
        if len(accepted) >= q.cap:
            raise SearchCapExceeded(
                f"more than {q.cap} squares couple {q.wa} and {q.wb}",
                partial=sorted(accepted, key=lambda m: m.entries, reverse=True),
            )
        accepted.append(ms)

    def assemble(i: int, chosen: tuple[tuple[int, ...], ...], col_sums) -> None:
        if i == n:
            if all(s == k for s in col_sums):
                admit(chosen)
            return
        for row in rows:
            sums = tuple(s + b[i] * c for s, c in zip(col_sums, row))
            if all(s <= k for s in sums):
                assemble(i + 1, chosen + (row,), sums)

    assemble(0, (), (0,) * n)
    return sorted(accepted, key=lambda m: m.entries, reverse=True)


def column_orbits(
    results: list[magic.MagicSquare],
) -> list[list[magic.MagicSquare]]:
    """Group results into orbits under column permutations preserving wa.

    Permuting columns by a permutation that fixes the row weight system
    (weight-for-weight) maps coupled squares to coupled squares, so the
    fine-grained result list may contain several columnwise-equivalent
    squares; reports note these orbits without collapsing them.
    """
    if not results:
        return []
    wa = results[0].wa
    n = wa.n
    stabilizer = [
        p
        for p in permutations(range(n))
        if all(wa.weights[p[j]] == wa.weights[j] for j in range(n))
    ]
    orbit_key: dict[tuple[tuple[int, ...], ...], int] = {}
    orbits: list[list[magic.MagicSquare]] = []
    for ms in results:
        images = {
            tuple(tuple(row[p[j]] for j in range(n)) for row in ms.entries)
            for p in stabilizer
        }
        hit = next((orbit_key[img] for img in images if img in orbit_key), None)
        if hit is None:
            hit = len(orbits)
            orbits.append([])
        for img in images:
            orbit_key[img] = hit
        orbits[hit].append(ms)
    return [orbit for orbit in orbits if orbit]
