"""Finite histories theories with exact arithmetic.

A histories theory is a triple of a finite sample space of histories, the
event algebra, and a generalized measure.  The event algebra is the full
power set of the sample space viewed as a ring over Z2: symmetric difference
is addition and intersection is multiplication.  Events are stored as
bitmasks over the canonical history order, so ring operations are single
integer operations and all outputs can be sorted by ascending mask for
determinism.

The measure is supplied in one of three forms:

* ``table``: an explicit map from every event to a nonnegative rational;
* ``decoherence``: a Hermitian matrix ``D`` over history pairs with exact
  complex-rational entries, the measure of an event being the (real) sum of
  the matrix block over the event;
* ``weights``: per-history nonnegative rationals defining an additive
  (classical, level-one) measure.  This form exists so that large repeated
  trial spaces (thousands of histories) can be analysed without a table of
  2**n entries; additivity is part of the constructor's contract.

Interference is measured by the inclusion-exclusion hierarchy ``I_k``; a
theory is of level ``k`` when ``I_{k+1}`` vanishes on all disjoint tuples,
which also forces all higher terms to vanish.  Classical probability theory
is level one; measures arising from unitary quantum theories are level two.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import CZERO, ComplexRational, format_rational, parse_rational

#: Brute-force scans over all 2**n events are refused above this size unless
#: the caller passes ``override_cap=True``.
ENUM_CAP = 16

#: Hard ceiling for any operation that materializes the full event lattice.
STORAGE_CAP = 24

ZERO = Fraction(0)
ONE = Fraction(1)


class SizeCapError(RuntimeError):
    """Raised when an operation would enumerate or store too large a lattice."""


def _check_enum_cap(n: int, override_cap: bool) -> None:
    if n > STORAGE_CAP:
        raise SizeCapError(
            f"{n} histories means 2**{n} events; beyond the hard cap of {STORAGE_CAP}"
        )
    if n > ENUM_CAP and not override_cap:
        raise SizeCapError(
            f"{n} histories exceeds the enumeration cap of {ENUM_CAP}; "
            "pass override_cap=True (CLI: --override-cap) to force the scan"
        )


def format_mask(mask: int) -> str:
    """Canonical hex spelling of an event bitmask, e.g. ``0x5``."""
    return hex(mask)


def parse_mask(text: str) -> int:
    """Parse a bitmask from its hex spelling."""
    try:
        mask = int(text, 16)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"not a hex bitmask: {text!r}") from exc
    if mask < 0:
        raise ValueError(f"bitmask must be nonnegative: {text!r}")
    return mask


@dataclass(frozen=True)
class SampleSpace:
    """An ordered finite set of history names.

    The index order is fixed at construction and used for every canonical
    encoding: bit ``i`` of an event mask records membership of label ``i``.
    """

    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("sample space needs at least one history")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("history labels must be distinct")

    @classmethod
    def of(cls, *labels: str) -> "SampleSpace":
        return cls(tuple(labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown history {label!r}") from None

    def event_from_mask(self, mask: int) -> "Event":
        if not 0 <= mask < (1 << self.n):
            raise ValueError(f"mask {hex(mask)} out of range for {self.n} histories")
        return Event(self, mask)

    def event(self, *labels: str) -> "Event":
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return Event(self, mask)

    @property
    def empty(self) -> "Event":
        return Event(self, 0)

    @property
    def omega(self) -> "Event":
        return Event(self, (1 << self.n) - 1)

    def singletons(self) -> tuple["Event", ...]:
        return tuple(Event(self, 1 << i) for i in range(self.n))

    def all_events(self):
        """Iterate every event in ascending mask order (2**n of them)."""
        for mask in range(1 << self.n):
            yield Event(self, mask)

    def parse_event(self, text: str) -> "Event":
        return self.event_from_mask(parse_mask(text))


@dataclass(frozen=True)
class Event:
    """A subset of the sample space; an element of the Z2 event ring."""

    space: SampleSpace
    mask: int

    def _same_space(self, other: "Event") -> None:
        if self.space != other.space:
            raise ValueError("events belong to different sample spaces")

    def __add__(self, other: "Event") -> "Event":
        """Ring addition: symmetric difference."""
        self._same_space(other)
        return Event(self.space, self.mask ^ other.mask)

    def __mul__(self, other: "Event") -> "Event":
        """Ring multiplication: intersection."""
        self._same_space(other)
        return Event(self.space, self.mask & other.mask)

    def __or__(self, other: "Event") -> "Event":
        self._same_space(other)
        return Event(self.space, self.mask | other.mask)

    def complement(self) -> "Event":
        return Event(self.space, self.mask ^ ((1 << self.space.n) - 1))

    def issubset(self, other: "Event") -> bool:
        self._same_space(other)
        return self.mask | other.mask == other.mask

    def ispropersubset(self, other: "Event") -> bool:
        return self.issubset(other) and self.mask != other.mask

    def isdisjoint(self, other: "Event") -> bool:
        self._same_space(other)
        return self.mask & other.mask == 0

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def members(self) -> tuple[str, ...]:
        return tuple(
            label for i, label in enumerate(self.space.labels) if self.mask >> i & 1
        )

    @property
    def hex_mask(self) -> str:
        return format_mask(self.mask)

    def label(self) -> str:
        return "{" + ",".join(self.members()) + "}"

    def __repr__(self) -> str:
        return f"Event({self.label()})"


def event_add(a: Event, b: Event) -> Event:
    """Symmetric difference, the ring addition of the event algebra."""
    return a + b


def event_mul(a: Event, b: Event) -> Event:
    """Intersection, the ring multiplication of the event algebra."""
    return a * b


# ---------------------------------------------------------------------------
# Measure sources
# ---------------------------------------------------------------------------


class TableMeasure:
    """Explicit measure: one exact rational per event mask (all 2**n present)."""

    kind = "table"

    def __init__(self, n: int, values: dict[int, Fraction]):
        if n > STORAGE_CAP:
            raise SizeCapError(f"table measure over {n} histories exceeds cap {STORAGE_CAP}")
        size = 1 << n
        if set(values) != set(range(size)):
            missing = sorted(set(range(size)) - set(values))[:3]
            extra = sorted(set(values) - set(range(size)))[:3]
            raise ValueError(
                f"table must cover every event exactly once "
                f"(missing {[hex(m) for m in missing]}, extra {[hex(m) for m in extra]})"
            )
        self.values = {mask: parse_rational(v) for mask, v in values.items()}


class DecoherenceMeasure:
    """Hermitian matrix over history pairs; measure = block sums of entries."""

    kind = "decoherence"

    def __init__(self, n: int, matrix):
        rows = tuple(tuple(entry for entry in row) for row in matrix)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"decoherence matrix must be {n}x{n}")
        for row in rows:
            for entry in row:
                if not isinstance(entry, ComplexRational):
                    raise TypeError("decoherence entries must be ComplexRational")
        self.matrix = rows


class WeightsMeasure:
    """Additive classical measure given by per-history weights.

    The measure of an event is the sum of its members' weights.  This form
    supports large sample spaces (repeated trials) where the full event table
    cannot be materialized; the measure is level one by construction.
    """

    kind = "weights"

    def __init__(self, weights):
        self.weights = tuple(parse_rational(w) for w in weights)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1


# ---------------------------------------------------------------------------
# Validation report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[AxiomViolation, ...]
    warnings: tuple[str, ...]
    null_events: tuple[int, ...] | None  # masks of measure-zero events, when enumerable

    def summary(self) -> str:
        if self.valid:
            lines = ["valid"]
        else:
            lines = ["invalid"]
            for v in self.violations:
                lines.append(f"  {v.axiom} violated at {v.witness}: {v.detail}")
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Histories theory
# ---------------------------------------------------------------------------


class HistoriesTheory:
    """A sample space together with an exact generalized measure."""

    def __init__(self, space: SampleSpace, measure):
        if not isinstance(measure, (TableMeasure, DecoherenceMeasure, WeightsMeasure)):
            raise TypeError("measure must be a TableMeasure, DecoherenceMeasure, or WeightsMeasure")
        self.space = space
        self.measure = measure
        self._table: list[Fraction] | None = None
        self._negligible_cache: dict[Fraction, bytearray] = {}

    # -- constructors --------------------------------------------------

    @classmethod
    def from_table(cls, space: SampleSpace, values) -> "HistoriesTheory":
        """Build from a mapping of Event/mask to rational over all 2**n events."""
        masks: dict[int, Fraction] = {}
        for key, value in values.items():
            mask = key.mask if isinstance(key, Event) else int(key)
            masks[mask] = parse_rational(value)
        return cls(space, TableMeasure(space.n, masks))

    @classmethod
    def from_decoherence(cls, space: SampleSpace, matrix) -> "HistoriesTheory":
        rows = []
        for row in matrix:
            entries = []
            for entry in row:
                if isinstance(entry, ComplexRational):
                    entries.append(entry)
                else:
                    re, im = entry
                    entries.append(ComplexRational.of(re, im))
            rows.append(tuple(entries))
        return cls(space, DecoherenceMeasure(space.n, tuple(rows)))

    @classmethod
    def from_weights(cls, space: SampleSpace, weights) -> "HistoriesTheory":
        ws = tuple(weights)
        if len(ws) != space.n:
            raise ValueError("one weight per history required")
        return cls(space, WeightsMeasure(ws))

    @property
    def kind(self) -> str:
        return self.measure.kind

    # -- the measure ----------------------------------------------------

    def _check_event(self, event: Event) -> None:
        if event.space != self.space:
            raise ValueError("event belongs to a different sample space")

    def mu_mask(self, mask: int) -> Fraction:
        if self._table is not None:
            return self._table[mask]
        m = self.measure
        if m.kind == "table":
            return m.values[mask]
        if m.kind == "weights":
            total = ZERO
            rest = mask
            while rest:
                bit = rest & -rest
                total += m.weights[bit.bit_length() - 1]
                rest ^= bit
            return total
        # decoherence: block sum over the event, which must come out real
        members = [i for i in range(self.space.n) if mask >> i & 1]
        acc = CZERO
        for i in members:
            for j in members:
                acc = acc + m.matrix[i][j]
        if acc.imag != 0:
            raise ValueError(
                "decoherence block sum has nonzero imaginary part; "
                "the matrix is not Hermitian (run validate)"
            )
        return acc.real

    def mu(self, event: Event) -> Fraction:
        """The exact measure of an event."""
        self._check_event(event)
        return self.mu_mask(event.mask)

    def decoherence_value(self, x: Event, y: Event) -> ComplexRational:
        """The matrix block sum D(X, Y); requires the decoherence form."""
        self._check_event(x)
        self._check_event(y)
        if self.kind != "decoherence":
            raise ValueError("off-diagonal values need a decoherence-form theory")
        acc = CZERO
        matrix = self.measure.matrix
        for i in range(self.space.n):
            if not x.mask >> i & 1:
                continue
            for j in range(self.space.n):
                if y.mask >> j & 1:
                    acc = acc + matrix[i][j]
        return acc

    def full_table(self, override_cap: bool = False) -> list[Fraction]:
        """The measure of every event, indexed by mask (capped)."""
        if self._table is None:
            n = self.space.n
            size = 1 << n
            m = self.measure
            if m.kind == "table":
                self._table = [m.values[mask] for mask in range(size)]
            elif m.kind == "weights":
                _check_enum_cap(n, override_cap)
                table = [ZERO] * size
                for mask in range(1, size):
                    low = mask & -mask
                    table[mask] = table[mask ^ low] + m.weights[low.bit_length() - 1]
                self._table = table
            else:
                _check_enum_cap(n, override_cap)
                # incremental block sums: adding history k to the block adds
                # D_kk plus both cross strips against the existing members
                ctable: list[ComplexRational] = [CZERO] * size
                matrix = m.matrix
                for mask in range(1, size):
                    low = mask & -mask
                    k = low.bit_length() - 1
                    rest = mask ^ low
                    acc = ctable[rest] + matrix[k][k]
                    rr = rest
                    while rr:
                        bit = rr & -rr
                        j = bit.bit_length() - 1
                        acc = acc + matrix[k][j] + matrix[j][k]
                        rr ^= bit
                    ctable[mask] = acc
                bad = next((mask for mask in range(size) if ctable[mask].imag != 0), None)
                if bad is not None:
                    raise ValueError(
                        f"measure of event {hex(bad)} is not real; "
                        "the decoherence matrix is not Hermitian (run validate)"
                    )
                self._table = [c.real for c in ctable]
        return self._table

    # -- null and negligible families ------------------------------------

    def null_family(self, override_cap: bool = False) -> tuple[int, ...]:
        """Masks of all events of measure exactly zero (capped scan)."""
        table = self.full_table(override_cap)
        return tuple(mask for mask, v in enumerate(table) if v == 0)

    def _negligible_masks(self, eps: Fraction, override_cap: bool) -> bytearray:
        key = Fraction(eps)
        cached = self._negligible_cache.get(key)
        if cached is not None:
            return cached
        n = self.space.n
        _check_enum_cap(n, override_cap)
        table = self.full_table(override_cap)
        size = 1 << n
        fam = bytearray(size)
        if eps == 0:
            for mask in range(size):
                if table[mask] == 0:
                    fam[mask] = 1
        else:
            for mask in range(size):
                if table[mask] < eps:
                    fam[mask] = 1
        # downward closure: marked events mark all single-deletion children;
        # descending cardinality order propagates through chains
        by_cardinality: list[list[int]] = [[] for _ in range(n + 1)]
        for mask in range(size):
            by_cardinality[mask.bit_count()].append(mask)
        for cardinality in range(n, 0, -1):
            for mask in by_cardinality[cardinality]:
                if fam[mask]:
                    rest = mask
                    while rest:
                        bit = rest & -rest
                        fam[mask ^ bit] = 1
                        rest ^= bit
        self._negligible_cache[key] = fam
        return fam

    def is_null(self, event: Event, eps: Fraction = ZERO) -> bool:
        """measure == 0 at eps == 0; measure < eps at eps > 0."""
        self._check_event(event)
        value = self.mu(event)
        return value == 0 if eps == 0 else value < eps

    def is_negligible(self, event: Event, eps: Fraction = ZERO, override_cap: bool = False) -> bool:
        """Is the event a subset of an (eps-)null event?

        For an additive weights measure this reduces to the event's own
        measure being (eps-)null, since supersets can only grow.
        """
        self._check_event(event)
        eps = parse_rational(eps)
        if eps < 0:
            raise ValueError("eps must be nonnegative")
        if self.kind == "weights":
            return self.is_null(event, eps)
        fam = self._negligible_masks(eps, override_cap)
        return bool(fam[event.mask])

    def minimal_nonnegligible(self, eps: Fraction = ZERO, override_cap: bool = False) -> tuple[int, ...]:
        """Masks that are minimal under inclusion among non-(eps-)negligible
        events, in ascending mask order.  These are the duals of the primitive
        preclusive multiplicative co-events."""
        eps = parse_rational(eps)
        n = self.space.n
        if self.kind == "weights":
            _check_enum_cap(n, override_cap)
            table = self.full_table(override_cap)
            if eps == 0:
                negligible = [v == 0 for v in table]
            else:
                negligible = [v < eps for v in table]
        else:
            fam = self._negligible_masks(eps, override_cap)
            negligible = [bool(b) for b in fam]
        out = []
        for mask in range(1, 1 << n):
            if negligible[mask]:
                continue
            rest = mask
            minimal = True
            while rest:
                bit = rest & -rest
                if not negligible[mask ^ bit]:
                    minimal = False
                    break
                rest ^= bit
            if minimal:
                out.append(mask)
        return tuple(out)

    # -- interference hierarchy ------------------------------------------

    def interference(self, *events: Event) -> Fraction:
        """The order-k interference term of k pairwise-disjoint events.

        Computed by inclusion-exclusion: the alternating sum over nonempty
        subfamilies of the measure of their disjoint union.  Order one is the
        measure itself; order two measures the failure of additivity.
        """
        k = len(events)
        if k < 1:
            raise ValueError("interference needs at least one event")
        for event in events:
            self._check_event(event)
        for a, b in combinations(events, 2):
            if not a.isdisjoint(b):
                raise ValueError("interference arguments must be pairwise disjoint")
        total = ZERO
        for subset in range(1, 1 << k):
            mask = 0
            for i in range(k):
                if subset >> i & 1:
                    mask |= events[i].mask
            sign = -1 if (k - subset.bit_count()) % 2 else 1
            total += sign * self.mu_mask(mask)
        return total

    def level(self, override_cap: bool = False) -> int:
        """The smallest k such that all interference terms of order k+1 vanish.

        Uses the subset Moebius transform: the order-|S| interference of the
        singletons of S is the alternating subset sum of the measure over S,
        and every higher-order term on disjoint tuples is a signed sum of
        such singleton terms.  The level is therefore the largest |S| whose
        transform is nonzero (at least one).
        """
        n = self.space.n
        _check_enum_cap(n, override_cap)
        table = self.full_table(override_cap)
        transform = list(table)
        size = 1 << n
        for i in range(n):
            bit = 1 << i
            for mask in range(size):
                if mask & bit:
                    transform[mask] = transform[mask] - transform[mask ^ bit]
        level = 1
        for mask in range(size):
            if transform[mask] != 0:
                level = max(level, mask.bit_count())
        return level

    # -- coarse graining ---------------------------------------------------

    def coarse_grain(self, blocks) -> "HistoriesTheory":
        """The theory induced on a partition: histories are the blocks and the
        measure of a union of blocks is the measure of the corresponding
        fine-grained event.  Delivered in table form."""
        blocks = tuple(getattr(blocks, "blocks", blocks))
        _validate_partition_blocks(self.space, blocks)
        k = len(blocks)
        if k > STORAGE_CAP:
            raise SizeCapError(f"coarse graining to {k} blocks exceeds cap {STORAGE_CAP}")
        labels = tuple(block.label() for block in blocks)
        new_space = SampleSpace(labels)
        values: dict[int, Fraction] = {}
        for mask in range(1 << k):
            fine = 0
            for i in range(k):
                if mask >> i & 1:
                    fine |= blocks[i].mask
            values[mask] = self.mu_mask(fine)
        return HistoriesTheory(new_space, TableMeasure(k, values))

    # -- validation ---------------------------------------------------------

    def validate(self, strict_normalization: bool = True, override_cap: bool = False) -> ValidationReport:
        """Check the measure axioms and populate the null family.

        Table form: zero on the empty event, positivity everywhere, unit
        total.  Decoherence form: Hermiticity, positivity of every block sum,
        unit normalization (downgradable to a warning).  Weights form:
        nonnegative weights summing to one.
        """
        violations: list[AxiomViolation] = []
        warnings: list[str] = []
        n = self.space.n
        m = self.measure

        if m.kind == "decoherence":
            for i in range(n):
                for j in range(n):
                    if m.matrix[i][j] != m.matrix[j][i].conjugate():
                        violations.append(AxiomViolation(
                            "hermiticity", f"({i},{j})",
                            "entry is not the conjugate of its transpose",
                        ))
            total = CZERO
            for row in m.matrix:
                for entry in row:
                    total = total + entry
            if total.imag != 0 or total.real != 1:
                message = f"D(Omega,Omega) = {total!r}, expected 1"
                if strict_normalization:
                    violations.append(AxiomViolation("normalization", "Omega", message))
                else:
                    warnings.append(message)

        if m.kind == "weights":
            for i, w in enumerate(m.weights):
                if w < 0:
                    violations.append(AxiomViolation(
                        "positivity", format_mask(1 << i), f"weight {format_rational(w)} < 0"
                    ))
            total = sum(m.weights, ZERO)
            if total != 1:
                violations.append(AxiomViolation(
                    "unitality", "Omega", f"weights sum to {format_rational(total)}"
                ))

        null_events: tuple[int, ...] | None = None
        hermitian_broken = any(v.axiom == "hermiticity" for v in violations)
        table = None
        if not hermitian_broken:  # else the block sums are not even real
            try:
                table = self.full_table(override_cap)
            except SizeCapError:
                warnings.append(
                    "event lattice beyond enumeration cap; positivity checked per query only"
                )
        if table is not None:
            if table[0] != 0:
                violations.append(AxiomViolation(
                    "empty-set", "0x0", f"measure of the empty event is {format_rational(table[0])}"
                ))
            full = (1 << n) - 1
            if m.kind == "table" and table[full] != 1:
                violations.append(AxiomViolation(
                    "unitality", format_mask(full), f"measure of Omega is {format_rational(table[full])}"
                ))
            if m.kind != "weights":
                # nonnegative weights already force nonnegative sums
                for mask, value in enumerate(table):
                    if value < 0:
                        violations.append(AxiomViolation(
                            "positivity", format_mask(mask), f"measure {format_rational(value)} < 0"
                        ))
            null_events = tuple(mask for mask, value in enumerate(table) if value == 0)

        valid = not violations
        if valid and null_events is not None:
            # prime the exact negligible family while the table is warm
            self._negligible_masks(ZERO, override_cap)
        return ValidationReport(valid, tuple(violations), tuple(warnings), null_events)


def _validate_partition_blocks(space: SampleSpace, blocks) -> None:
    if not blocks:
        raise ValueError("a partition needs at least one block")
    seen = 0
    for block in blocks:
        if block.space != space:
            raise ValueError("partition block from a different sample space")
        if block.mask == 0:
            raise ValueError("partition blocks must be nonempty")
        if block.mask & seen:
            raise ValueError("partition blocks must be pairwise disjoint")
        seen |= block.mask
    if seen != (1 << space.n) - 1:
        raise ValueError("partition blocks must cover the sample space")


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------


def theory_to_json(theory: HistoriesTheory) -> dict:
    """Serialize a theory; weights-backed theories are emitted in table form."""
    doc: dict = {"histories": list(theory.space.labels)}
    kind = theory.kind
    if kind == "decoherence":
        doc["measure"] = {
            "type": "decoherence",
            "matrix": [
                [[format_rational(e.real), format_rational(e.imag)] for e in row]
                for row in theory.measure.matrix
            ],
        }
    else:
        table = theory.full_table()
        doc["measure"] = {
            "type": "table",
            "values": {format_mask(mask): format_rational(v) for mask, v in enumerate(table)},
        }
    return doc


def theory_from_json(doc: dict) -> HistoriesTheory:
    """Parse a theory document: {"histories": [...], "measure": {...}}."""
    if not isinstance(doc, dict):
        raise ValueError("theory document must be a JSON object")
    histories = doc.get("histories")
    if not isinstance(histories, list) or not all(isinstance(h, str) for h in histories):
        raise ValueError("'histories' must be an array of strings")
    space = SampleSpace(tuple(histories))
    measure = doc.get("measure")
    if not isinstance(measure, dict):
        raise ValueError("'measure' must be an object")
    mtype = measure.get("type")
    if mtype == "table":
        raw = measure.get("values")
        if not isinstance(raw, dict):
            raise ValueError("table measure needs a 'values' object")
        values = {parse_mask(key): parse_rational(v) for key, v in raw.items()}
        return HistoriesTheory(space, TableMeasure(space.n, values))
    if mtype == "decoherence":
        raw = measure.get("matrix")
        if not isinstance(raw, list):
            raise ValueError("decoherence measure needs a 'matrix' array")
        matrix = []
        for row in raw:
            entries = []
            for entry in row:
                if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                    raise ValueError("matrix entries must be [re, im] pairs")
                entries.append(ComplexRational.of(entry[0], entry[1]))
            matrix.append(entries)
        return HistoriesTheory.from_decoherence(space, matrix)
    raise ValueError(f"unknown measure type: {mtype!r}")


def load_theory(path) -> HistoriesTheory:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON in {path}: {exc}") from exc
    return theory_from_json(doc)
