"""Embedded dataset of coupled weight-system pairs and recomputation reports.

The catalog ships as a JSON resource inside the package.  Each entry records a
weight system, the monomial matrix coupling it to a partner system, and (for
the rows of the Fuchsian table) the lattice invariants the entry is expected
to reproduce.  Loading re-validates every entry; :func:`verify_entry` and
:func:`fuchsian_report` recompute the numeric claims from scratch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import magic, polytope, zeta
from .errors import CatalogError
from .magic import MagicSquare
from .weights import WeightSystem, equivalent

SCHEMA_VERSION = 1
TABLES = ("T1", "T2", "T3", "T4", "Fuchs", "NonMirror")
KNOWN_FLAGS = frozenset({"zero_weight", "non_mirror_example", "not_strong"})
_FIXED_COUNTS = {"T1": 3, "T4": 16, "Fuchs": 8}


@dataclass(frozen=True)
class FuchsExpected:
    """Stored invariant columns for one row of the Fuchsian table.

    ``d`` is kept verbatim; it is recomputable from the zeta value at 1 only
    when ``mu0`` vanishes, which fails for every left-hand entry here.
    """

    mu: int
    mu0: int
    rho: int
    d: int
    b0: int
    d_star: int
    mu0_star: int
    mu_star: int
    nu_star: int

    @classmethod
    def from_mapping(cls, data: dict) -> FuchsExpected:
        try:
            return cls(**{f: int(data[f]) for f in (
                "mu", "mu0", "rho", "d", "b0",
                "d_star", "mu0_star", "mu_star", "nu_star")})
        except KeyError as exc:
            raise CatalogError(f"expected-values record is missing {exc}") from exc

    @property
    def d_recomputable(self) -> bool:
        return self.mu0 == 0


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row: a weight system coupled to a partner by a matrix."""

    table: str
    seq: int
    index: int | None
    name: str | None
    weights: WeightSystem
    monomials: str
    partner: int | str
    partner_table: str
    partner_weights: WeightSystem
    expected: FuchsExpected | None
    flags: tuple[str, ...]

    @property
    def key(self) -> int | str:
        """Index when present, otherwise the name; used for partner links."""
        return self.index if self.index is not None else self.name

    @property
    def label(self) -> str:
        bits = [f"{self.table}#{self.seq}"]
        if self.index is not None:
            bits.append(f"no. {self.index}")
        if self.name:
            bits.append(self.name)
        return " ".join(bits)

    def square(self) -> MagicSquare:
        """Parse the stored monomials and bind them to the weight pair."""
        rows = magic.parse_monomial_matrix(self.monomials, self.weights.n)
        return magic.validate(rows, self.weights, self.partner_weights)


class Catalog:
    """Loaded, validated catalog with lookup and partner resolution."""

    def __init__(self, entries: tuple[CatalogEntry, ...]):
        self.entries = tuple(entries)
        self._by_table: dict[str, list[CatalogEntry]] = {}
        for entry in self.entries:
            self._by_table.setdefault(entry.table, []).append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def table(self, name: str) -> tuple[CatalogEntry, ...]:
        if name not in TABLES:
            raise CatalogError(f"unknown table {name!r}")
        return tuple(self._by_table.get(name, ()))

    def lookup(self, key: int | str) -> tuple[CatalogEntry, ...]:
        """All entries whose index (int key) or name (str key) matches."""
        if isinstance(key, str):
            hits = tuple(e for e in self.entries if e.name == key)
        else:
            hits = tuple(e for e in self.entries if e.index == key)
        if not hits:
            raise CatalogError(f"no catalog entry matches {key!r}")
        return hits

    def partner_of(self, entry: CatalogEntry) -> CatalogEntry:
        """The unique reciprocal partner entry in ``entry.partner_table``."""
        hits = [c for c in self._by_table.get(entry.partner_table, ())
                if c.key == entry.partner and c.partner == entry.key]
        if len(hits) != 1:
            raise CatalogError(
                f"partner reference of {entry.label} resolves to "
                f"{len(hits)} entries")
        return hits[0]


def _entry_from_record(record: dict) -> CatalogEntry:
    try:
        table = record["table"]
        if table not in TABLES:
            raise CatalogError(f"unknown table {table!r}")
        flags = tuple(record["flags"])
        unknown = set(flags) - KNOWN_FLAGS
        if unknown:
            raise CatalogError(f"unknown flags {sorted(unknown)}")
        allow_zero = "zero_weight" in flags
        weights = WeightSystem(tuple(record["weights"]), record["degree"],
                               allows_zero_weight=allow_zero)
        partner_weights = WeightSystem(
            tuple(record["partner_weights"]), record["partner_degree"],
            allows_zero_weight=allow_zero)
        if weights.a0 != record["a0"]:
            raise CatalogError(
                f"stored a0 {record['a0']} disagrees with derived "
                f"{weights.a0} for {table}#{record['seq']}")
        expected = (FuchsExpected.from_mapping(record["expected"])
                    if record["expected"] is not None else None)
        return CatalogEntry(
            table=table,
            seq=record["seq"],
            index=record["index"],
            name=record["name"],
            weights=weights,
            monomials=record["monomials"],
            partner=record["partner"],
            partner_table=record["partner_table"],
            partner_weights=partner_weights,
            expected=expected,
            flags=flags,
        )
    except KeyError as exc:
        raise CatalogError(f"catalog record is missing field {exc}") from exc


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Load and validate the embedded catalog (or one from ``path``).

    Validation covers the schema version, fixed table counts, the virtual
    weight of every entry, the row/column relations of every matrix, partner
    resolution, and consistency of the Fuchsian rows with their sources.
    """
    if path is None:
        text = (resources.files("weightmagic") / "data" / "catalog.json"
                ).read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except ValueError as exc:
        raise CatalogError(f"catalog file is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise CatalogError("catalog file must hold a JSON object")
    if document.get("schema_version") != SCHEMA_VERSION:
        raise CatalogError(
            f"unsupported catalog schema version "
            f"{document.get('schema_version')!r}; expected {SCHEMA_VERSION}")
    records = document.get("entries")
    if not isinstance(records, list):
        raise CatalogError("catalog file lacks an entry list")

    catalog = Catalog(tuple(_entry_from_record(r) for r in records))

    for name, count in _FIXED_COUNTS.items():
        have = len(catalog.table(name))
        if have != count:
            raise CatalogError(
                f"table {name} has {have} entries; expected {count}")
    for entry in catalog:
        try:
            entry.square()
        except Exception as exc:
            raise CatalogError(
                f"matrix of {entry.label} fails validation: {exc}") from exc
        catalog.partner_of(entry)
    by_pair = {}
    for entry in catalog.table("T3"):
        by_pair[(entry.index, entry.partner)] = entry
    for entry in catalog.table("Fuchs"):
        source = by_pair.get((entry.index, entry.partner))
        if source is None:
            raise CatalogError(
                f"{entry.label} has no matching source row in T3")
        if (source.weights != entry.weights
                or source.monomials != entry.monomials):
            raise CatalogError(
                f"{entry.label} disagrees with its T3 source row")
    return catalog


def _expected_strong(entry: CatalogEntry) -> bool | None:
    """Whether the entry's square should be strong; None = no expectation."""
    if entry.table in ("T2", "T3", "Fuchs", "NonMirror"):
        return True
    if entry.table == "T4":
        return "not_strong" not in entry.flags
    return None


def _expected_classification(entry: CatalogEntry) -> str:
    if entry.table in ("T1", "T4", "NonMirror"):
        return magic.PRIMITIVE
    if entry.weights.a0 == 1 and entry.partner_weights.a0 == 1:
        return magic.PRIMITIVE
    return magic.ALMOST_PRIMITIVE


def _weights_agree(left: WeightSystem, right: WeightSystem) -> bool:
    """Equality of weight systems up to order and overall scale."""
    if 0 in left.weights or 0 in right.weights:
        return (sorted(left.weights) == sorted(right.weights)
                and left.degree == right.degree)
    return equivalent(
        WeightSystem(tuple(sorted(left.weights)), left.degree),
        WeightSystem(tuple(sorted(right.weights)), right.degree))


@dataclass(frozen=True)
class VerificationReport:
    """Recomputed facts about one entry, compared with its stated claims."""

    label: str
    table: str
    valid: bool
    classification: str
    classification_ok: bool
    strong: bool
    strong_ok: bool
    strongness_discrepancy: bool
    inverse_identity_ok: bool
    partner_match_ok: bool
    zeta_duality_applicable: bool
    zeta_duality_ok: bool
    exponent_range_ok: bool | None
    invariants_match: bool | None
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def verify_entry(entry: CatalogEntry, catalog: Catalog) -> VerificationReport:
    """Recompute every claim the catalog makes about ``entry``."""
    problems: list[str] = []
    try:
        square = entry.square()
        valid = True
    except Exception as exc:  # failure is report content, not an exception
        return VerificationReport(
            label=entry.label, table=entry.table, valid=False,
            classification="", classification_ok=False, strong=False,
            strong_ok=False, strongness_discrepancy=False,
            inverse_identity_ok=False, partner_match_ok=False,
            zeta_duality_applicable=False, zeta_duality_ok=False,
            exponent_range_ok=None, invariants_match=None,
            problems=(f"matrix fails validation: {exc}",))

    report = magic.classify(square)
    classification_ok = report.classification == _expected_classification(entry)
    if not classification_ok:
        problems.append(
            f"classified {report.classification}, expected "
            f"{_expected_classification(entry)}")

    expected_strong = _expected_strong(entry)
    strong_ok = expected_strong is None or report.strong == expected_strong
    if not strong_ok:
        problems.append(
            f"strong={report.strong}, expected {expected_strong}")
    strongness_discrepancy = entry.table == "T4" and not report.strong

    try:
        inverse_identity_ok = polytope.verify_duality_identity(square)
    except Exception:
        inverse_identity_ok = False
    if not inverse_identity_ok:
        problems.append("inverse-product identity fails")

    partner = catalog.partner_of(entry)
    partner_match_ok = (
        _weights_agree(entry.partner_weights, partner.weights)
        and _weights_agree(entry.weights, partner.partner_weights))
    if not partner_match_ok:
        problems.append("transpose weight pair disagrees with partner entry")

    positive = 0 not in entry.weights.weights
    zeta_duality_applicable = (
        positive and square.n == 3
        and report.classification == magic.PRIMITIVE
        and entry.weights.a0 == 1 and entry.partner_weights.a0 == 1)
    zeta_duality_ok = True
    if zeta_duality_applicable:
        z = zeta.reduced_zeta(square)
        dual = zeta.saito_dual(z, entry.weights.degree)
        zeta_duality_ok = zeta.reduced_zeta(magic.transpose(square)) == dual
        if not zeta_duality_ok:
            problems.append("transpose zeta is not the Saito dual")

    exponent_range_ok: bool | None = None
    if entry.table == "T4" and positive:
        z = zeta.reduced_zeta(square)
        exponent_range_ok = all(a in (-1, 0, 1) for _, a in z.factors)
        if not exponent_range_ok:
            problems.append("zeta exponent outside {-1, 0, 1}")

    invariants_match: bool | None = None
    if entry.expected is not None:
        inv = zeta.lattice_invariants(square)
        expected = entry.expected
        invariants_match = (
            (inv.mu, inv.mu0, inv.rho) == (expected.mu, expected.mu0,
                                           expected.rho)
            and entry.partner_weights.a0 == expected.b0)
        if not invariants_match:
            problems.append(
                f"computed (mu, mu0, rho, b0) = "
                f"({inv.mu}, {inv.mu0}, {inv.rho}, "
                f"{entry.partner_weights.a0}) disagree with stored values")

    return VerificationReport(
        label=entry.label, table=entry.table, valid=valid,
        classification=report.classification,
        classification_ok=classification_ok,
        strong=report.strong, strong_ok=strong_ok,
        strongness_discrepancy=strongness_discrepancy,
        inverse_identity_ok=inverse_identity_ok,
        partner_match_ok=partner_match_ok,
        zeta_duality_applicable=zeta_duality_applicable,
        zeta_duality_ok=zeta_duality_ok,
        exponent_range_ok=exponent_range_ok,
        invariants_match=invariants_match,
        problems=tuple(problems))


@dataclass(frozen=True)
class FuchsRow:
    """One recomputed row of the Fuchsian table."""

    label: str
    name: str
    partner_name: str | None
    mu: int
    mu0: int
    rho: int
    b0: int
    mu_star: int
    mu0_star: int
    nu_star: int
    d_star_abs: int
    expected: FuchsExpected
    errors: tuple[str, ...]

    @property
    def matches(self) -> bool:
        e = self.expected
        return not self.errors and (
            (self.mu, self.mu0, self.rho, self.b0) == (e.mu, e.mu0, e.rho,
                                                       e.b0)
            and (self.mu_star, self.mu0_star) == (e.mu_star, e.mu0_star)
            and self.nu_star == e.nu_star
            and self.d_star_abs == abs(e.d_star))


def fuchsian_report(catalog: Catalog) -> tuple[FuchsRow, ...]:
    """Recompute all invariant columns of the Fuchsian table.

    Per row: (mu, mu0, rho) come from the entry's own square, (mu*, mu0*)
    from the partner's square, nu* from the covering identity
    mu* + nu* + 1 = b0 (rho + 3), and |d*| from the partner zeta function
    evaluated at 1 (well defined because mu0* vanishes).
    """
    rows = []
    for entry in catalog.table("Fuchs"):
        errors: list[str] = []
        expected = entry.expected
        partner = catalog.partner_of(entry)
        inv = zeta.lattice_invariants(entry.square())
        partner_square = partner.square()
        partner_inv = zeta.lattice_invariants(partner_square)
        b0 = entry.partner_weights.a0
        rho = inv.rho if inv.rho is not None else 0
        if inv.rho is None:
            errors.append("Picard number undefined for this weight system")
        nu_star = b0 * (rho + 3) - partner_inv.mu - 1
        d_star_abs = 0
        try:
            value, _ = zeta.evaluate_at_one(zeta.reduced_zeta(partner_square))
            if value.denominator != 1:
                errors.append(f"partner zeta value at 1 is {value}")
            else:
                d_star_abs = abs(int(value))
        except Exception as exc:
            errors.append(f"partner zeta value at 1: {exc}")
        rows.append(FuchsRow(
            label=f"{entry.index}/{partner.index}",
            name=entry.name or str(entry.index),
            partner_name=partner.name,
            mu=inv.mu, mu0=inv.mu0, rho=rho, b0=b0,
            mu_star=partner_inv.mu, mu0_star=partner_inv.mu0,
            nu_star=nu_star, d_star_abs=d_star_abs,
            expected=expected, errors=tuple(errors)))
    return tuple(rows)
