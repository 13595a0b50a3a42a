"""Probability measures on spaces of co-events.

Moving the dynamics from the event algebra onto the co-events means finding a
probability assignment over a set S of multiplicative co-events such that,
for every event A, the total probability of the co-events affirming A equals
the measure of A.  The constraint set is linear with 0/1 coefficients and
exact rational right-hand sides, so feasibility and extremal probabilities
are decided by exact rational elimination and simplex; no floating point is
involved, which matters because the headline conclusion is an exact zero.

That conclusion: any co-event carrying positive probability in such an
assignment must satisfy the three-event symmetric-difference identity

    phi(A+B+C) = phi(A+B) + phi(B+C) + phi(C+A) + phi(A) + phi(B) + phi(C)

for all events A, B, C.  The identity needs checking on disjoint triples
only; its integer-lifted defect is always 0 or 1 for multiplicative
co-events, and its Z2 defect is the integer defect mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Event, HistoriesTheory, _check_enum_cap, format_mask, format_rational
from .coevents import CoEvent

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# The quadratic identity
# ---------------------------------------------------------------------------


def _check_disjoint_triple(a: Event, b: Event, c: Event) -> None:
    if a.space != b.space or a.space != c.space:
        raise ValueError("events belong to different sample spaces")
    if a.mask & b.mask or b.mask & c.mask or a.mask & c.mask:
        raise ValueError("the three events must be pairwise disjoint")


def _seven_values(phi: CoEvent, a: int, b: int, c: int) -> tuple[int, ...]:
    v = phi.value_mask
    return (v(a | b | c), v(a | b), v(b | c), v(c | a), v(a), v(b), v(c))


def quadratic_defect(phi: CoEvent, a: Event, b: Event, c: Event) -> int:
    """The Z2 defect of the three-event identity on a disjoint triple.

    Zero for every triple exactly when the co-event satisfies the identity on
    arbitrary (not necessarily disjoint) triples.
    """
    _check_disjoint_triple(a, b, c)
    if phi.space != a.space:
        raise ValueError("co-event over a different sample space")
    return sum(_seven_values(phi, a.mask, b.mask, c.mask)) % 2


def real_defect(phi: CoEvent, a: Event, b: Event, c: Event) -> int:
    """The integer-lifted defect: top term minus the three pair terms plus
    the three single terms, with 0/1 values read as integers.

    For multiplicative co-events the result is always 0 or 1; general
    co-events can produce other integers.  Reducing mod 2 recovers the Z2
    defect.
    """
    _check_disjoint_triple(a, b, c)
    if phi.space != a.space:
        raise ValueError("co-event over a different sample space")
    top, ab, bc, ca, va, vb, vc = _seven_values(phi, a.mask, b.mask, c.mask)
    return top - ab - bc - ca + va + vb + vc


@dataclass(frozen=True)
class QuadraticReport:
    quadratic: bool
    witness: tuple[Event, Event, Event] | None  # first failing disjoint triple

    def __post_init__(self):
        if self.quadratic == (self.witness is not None):
            raise ValueError("witness present exactly when the identity fails")


def _ascending_submasks(mask: int):
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def is_quadratic(phi: CoEvent, override_cap: bool = False) -> QuadraticReport:
    """Scan all disjoint triples for a failure of the three-event identity.

    Triples with an empty component never fail, so the scan is equivalent to
    the unrestricted identity.  The witness is the first failure in
    ascending (A, B, C) mask order.
    """
    n = phi.space.n
    _check_enum_cap(n, override_cap)
    full = (1 << n) - 1
    v = phi.value_mask
    for a in range(1 << n):
        for b in _ascending_submasks(full ^ a):
            rest = full ^ a ^ b
            for c in _ascending_submasks(rest):
                total = (
                    v(a | b | c) + v(a | b) + v(b | c) + v(c | a)
                    + v(a) + v(b) + v(c)
                )
                if total % 2:
                    space = phi.space
                    return QuadraticReport(False, (
                        Event(space, a), Event(space, b), Event(space, c)
                    ))
    return QuadraticReport(True, None)


# ---------------------------------------------------------------------------
# Feasibility systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityRow:
    event_mask: int
    coefficients: tuple[int, ...]  # 1 where the co-event affirms the event
    rhs: Fraction


@dataclass(frozen=True)
class FeasibilitySystem:
    """One equality row per event: the probabilities of the co-events
    affirming the event must sum to its measure; probabilities nonnegative."""

    coevents: tuple[CoEvent, ...]
    rows: tuple[FeasibilityRow, ...]

    def index_of(self, phi: CoEvent) -> int:
        target = phi.to_multiplicative().dual_mask
        for i, psi in enumerate(self.coevents):
            if psi.dual_mask == target:
                return i
        raise ValueError("co-event is not a column of this system")


def build_feasibility(theory: HistoriesTheory, coevents, *, events=None,
                      binary_only: bool = False,
                      override_cap: bool = False) -> FeasibilitySystem:
    """Build the constraint system for a set of multiplicative co-events.

    By default one row per event of the full algebra, in ascending mask
    order; the full-space row forces the probabilities to sum to one.  Two
    weaker row selections are available: ``events`` restricts the rows to a
    given family (e.g. the observable events), and ``binary_only`` keeps only
    the rows whose measure is 0 or 1.  Neither weaker mode carries the
    positive-probability conclusion of the full system.
    """
    cos = [phi.to_multiplicative() for phi in coevents]
    if not cos:
        raise ValueError("need at least one co-event")
    for phi in cos:
        if phi.space != theory.space:
            raise ValueError("co-event over a different sample space")
    cos.sort(key=lambda phi: phi.dual_mask)
    duals = [phi.dual_mask for phi in cos]
    if len(set(duals)) != len(duals):
        raise ValueError("duplicate co-events in the candidate set")

    if events is None:
        n = theory.space.n
        _check_enum_cap(n, override_cap)
        masks = range(1 << n)
    else:
        masks = sorted({e.mask for e in events})
    rows = []
    for mask in masks:
        rhs = theory.mu_mask(mask)
        if binary_only and rhs != 0 and rhs != 1:
            continue
        coeffs = tuple(1 if d & ~mask == 0 else 0 for d in duals)
        rows.append(FeasibilityRow(mask, coeffs, rhs))
    return FeasibilitySystem(tuple(cos), tuple(rows))


# ---------------------------------------------------------------------------
# Exact two-phase simplex
# ---------------------------------------------------------------------------


class _ExactSimplex:
    """Primal simplex over the rationals with Bland's rule (no cycling).

    Solves {A x = b, x >= 0}.  Phase one minimizes the sum of artificial
    variables; a positive optimum yields an exact Farkas certificate.  Phase
    two minimizes a given cost over the structural variables.
    """

    def __init__(self, rows, rhs, nvars: int):
        self.nvars = nvars
        self.nrows = len(rows)
        self.flipped = []
        tab = []
        for row, b in zip(rows, rhs):
            coeffs = [Fraction(x) for x in row]
            b = Fraction(b)
            if b < 0:
                coeffs = [-x for x in coeffs]
                b = -b
                self.flipped.append(True)
            else:
                self.flipped.append(False)
            tab.append(coeffs + [ZERO] * self.nrows + [b])
        for i in range(self.nrows):
            tab[i][nvars + i] = ONE
        self.tab = tab
        self.basis = [nvars + i for i in range(self.nrows)]
        self.ncols = nvars + self.nrows

    def _pivot(self, r: int, c: int, obj: list[Fraction]) -> None:
        tab = self.tab
        piv = tab[r][c]
        tab[r] = [x / piv for x in tab[r]]
        prow = tab[r]
        for i in range(self.nrows):
            if i != r and tab[i][c] != 0:
                f = tab[i][c]
                tab[i] = [x - f * y for x, y in zip(tab[i], prow)]
        if obj[c] != 0:
            f = obj[c]
            obj[:] = [x - f * y for x, y in zip(obj, prow)]
        self.basis[r] = c

    def _reduced_costs(self, costs: list[Fraction]) -> list[Fraction]:
        obj = list(costs) + [ZERO]
        for i, bvar in enumerate(self.basis):
            cb = costs[bvar]
            if cb != 0:
                obj = [x - cb * y for x, y in zip(obj, self.tab[i])]
        return obj

    def _minimize(self, costs: list[Fraction], allowed) -> list[Fraction]:
        obj = self._reduced_costs(costs)
        while True:
            enter = next((j for j in allowed if obj[j] < 0), None)
            if enter is None:
                return obj
            leave = None
            best = None
            for i in range(self.nrows):
                a = self.tab[i][enter]
                if a > 0:
                    ratio = self.tab[i][-1] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best = ratio
                        leave = i
            if leave is None:
                raise ArithmeticError("unbounded linear program")
            self._pivot(leave, enter, obj)

    def phase_one(self):
        """Returns (feasible, farkas-multipliers-or-None)."""
        costs = [ZERO] * self.nvars + [ONE] * self.nrows
        obj = self._minimize(costs, range(self.ncols))
        value = sum(
            self.tab[i][-1] for i in range(self.nrows) if self.basis[i] >= self.nvars
        )
        if value > 0:
            # multipliers from the final reduced costs of the artificials;
            # flip back the rows that were negated for a nonnegative rhs
            y = [ONE - obj[self.nvars + i] for i in range(self.nrows)]
            y = [-v if flip else v for v, flip in zip(y, self.flipped)]
            return False, y
        # drive any basic artificial out (it sits at zero)
        for i in range(self.nrows):
            if self.basis[i] >= self.nvars:
                enter = next(
                    (j for j in range(self.nvars) if self.tab[i][j] != 0), None
                )
                if enter is not None:
                    self._pivot(i, enter, obj)
        return True, None

    def solution(self) -> list[Fraction]:
        x = [ZERO] * self.nvars
        for i, bvar in enumerate(self.basis):
            if bvar < self.nvars:
                x[bvar] = self.tab[i][-1]
        return x

    def phase_two_min(self, costs: list[Fraction]) -> Fraction:
        self._minimize(list(costs) + [ZERO] * self.nrows, range(self.nvars))
        x = self.solution()
        return sum((c * v for c, v in zip(costs, x)), ZERO)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    assignment: tuple[Fraction, ...] | None
    inconsistent_row: int | None  # index into system.rows
    farkas: tuple[Fraction, ...] | None  # row multipliers certifying infeasibility


def _verify_assignment(system: FeasibilitySystem, x) -> None:
    for row in system.rows:
        total = sum((xi for xi, c in zip(x, row.coefficients) if c), ZERO)
        assert total == row.rhs, "assignment violates an equality row"
    assert all(xi >= 0 for xi in x), "assignment violates nonnegativity"


def _verify_farkas(system: FeasibilitySystem, y) -> None:
    k = len(system.coevents)
    for j in range(k):
        col = sum(
            (yi for yi, row in zip(y, system.rows) if row.coefficients[j]), ZERO
        )
        assert col <= 0, "certificate fails on a column"
    rhs = sum((yi * row.rhs for yi, row in zip(y, system.rows)), ZERO)
    assert rhs > 0, "certificate fails on the right-hand side"


def solve_feasibility(system: FeasibilitySystem) -> FeasibilityResult:
    """Decide whether a probability assignment exists.

    Returns an exact witness assignment, or an infeasibility certificate:
    either a single contradictory row (no co-event affirms the event but its
    measure is nonzero) or exact Farkas multipliers over the rows.
    """
    for idx, row in enumerate(system.rows):
        if not any(row.coefficients) and row.rhs != 0:
            return FeasibilityResult(False, None, idx, None)
    simplex = _ExactSimplex(
        [row.coefficients for row in system.rows],
        [row.rhs for row in system.rows],
        len(system.coevents),
    )
    feasible, farkas = simplex.phase_one()
    if not feasible:
        _verify_farkas(system, farkas)
        return FeasibilityResult(False, None, None, tuple(farkas))
    x = simplex.solution()
    _verify_assignment(system, x)
    return FeasibilityResult(True, tuple(x), None, None)


def max_probability(system: FeasibilitySystem, phi: CoEvent) -> Fraction:
    """The largest probability the co-event can carry over the feasible
    region.  When the underlying measure obeys the two-site sum rule (level
    at most two), zero is forced for any co-event failing the three-event
    identity; the converse does not hold."""
    j = system.index_of(phi)
    simplex = _ExactSimplex(
        [row.coefficients for row in system.rows],
        [row.rhs for row in system.rows],
        len(system.coevents),
    )
    feasible, _ = simplex.phase_one()
    if not feasible:
        raise ValueError("system is infeasible")
    costs = [ZERO] * len(system.coevents)
    costs[j] = -ONE
    return -simplex.phase_two_min(costs)


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------


def feasibility_result_to_json(system: FeasibilitySystem, result: FeasibilityResult) -> dict:
    if result.feasible:
        return {
            "status": "feasible",
            "assignment": {
                format_mask(phi.dual_mask): format_rational(x)
                for phi, x in zip(system.coevents, result.assignment)
            },
        }
    doc: dict = {"status": "infeasible"}
    if result.inconsistent_row is not None:
        row = system.rows[result.inconsistent_row]
        doc["certificate"] = {
            "row": result.inconsistent_row,
            "event": format_mask(row.event_mask),
        }
    else:
        doc["certificate"] = {
            "farkas": [format_rational(v) for v in result.farkas],
        }
    return doc
