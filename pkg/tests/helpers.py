"""Independent oracles used to freeze expected values.

These deliberately re-derive quantities from first principles (direct
superset scans, literal inclusion-exclusion formulas, explicit enumeration)
so the library paths they check stay independent of them.
"""

from __future__ import annotations

from fractions import Fraction

from qmeasure.core import HistoriesTheory, SampleSpace
from qmeasure.exact import ComplexRational


def submasks(mask: int):
    """All submasks of a mask, ascending."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def amplitude_theory(amplitudes) -> HistoriesTheory:
    """Decoherence functional of a pure amplitude vector (rank one)."""
    amps = [
        a if isinstance(a, ComplexRational) else ComplexRational.of(a)
        for a in amplitudes
    ]
    labels = tuple(chr(ord("a") + i) for i in range(len(amps)))
    matrix = [[x * y.conjugate() for y in amps] for x in amps]
    return HistoriesTheory.from_decoherence(SampleSpace(labels), matrix)


def amplitude_mu_oracle(amplitudes, mask: int) -> Fraction:
    """|sum of the amplitudes in the event|^2, computed directly."""
    re = Fraction(0)
    im = Fraction(0)
    for i, amp in enumerate(amplitudes):
        if mask >> i & 1:
            a = amp if isinstance(amp, ComplexRational) else ComplexRational.of(amp)
            re += a.real
            im += a.imag
    return re * re + im * im


def brute_negligible(theory: HistoriesTheory, mask: int, eps: Fraction) -> bool:
    """Direct definition: some superset is (eps-)null."""
    table = theory.full_table()
    n = theory.space.n
    rest = ((1 << n) - 1) ^ mask
    for extra in submasks(rest):
        value = table[mask | extra]
        if (eps == 0 and value == 0) or (eps > 0 and value < eps):
            return True
    return False


def brute_minimal_nonnegligible(theory: HistoriesTheory, eps: Fraction) -> tuple[int, ...]:
    """Minimal sets with no (eps-)null superset, by direct double scan."""
    n = theory.space.n
    out = []
    for mask in range(1, 1 << n):
        if brute_negligible(theory, mask, eps):
            continue
        rest = mask
        minimal = True
        while rest:
            bit = rest & -rest
            if not brute_negligible(theory, mask ^ bit, eps):
                minimal = False
                break
            rest ^= bit
        if minimal:
            out.append(mask)
    return tuple(out)


def literal_interference(theory: HistoriesTheory, *events) -> Fraction:
    """The order-1..3 terms written out literally."""
    mu = theory.mu
    if len(events) == 1:
        (x,) = events
        return mu(x)
    if len(events) == 2:
        x, y = events
        return mu(x | y) - mu(x) - mu(y)
    if len(events) == 3:
        x, y, z = events
        return (
            mu(x | y | z)
            - mu(x | y) - mu(y | z) - mu(z | x)
            + mu(x) + mu(y) + mu(z)
        )
    raise ValueError("literal forms written out up to order three only")


def disjoint_tuples(n: int, k: int, nonempty: bool = True):
    """All ordered k-tuples of pairwise-disjoint event masks over n histories."""
    full = (1 << n) - 1

    def rec(remaining: int, chosen: list[int]):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for mask in submasks(remaining) if not nonempty else _nonempty_submasks(remaining):
            chosen.append(mask)
            yield from rec(remaining ^ mask, chosen)
            chosen.pop()

    def _nonempty_submasks(mask: int):
        for sub in submasks(mask):
            if sub:
                yield sub

    yield from rec(full, [])


def level_oracle(theory: HistoriesTheory) -> int:
    """Smallest k such that all order-(k+1) terms on disjoint nonempty tuples
    vanish, by direct scan."""
    n = theory.space.n
    space = theory.space
    for k in range(1, n + 1):
        all_zero = True
        for masks in disjoint_tuples(n, k + 1):
            events = [space.event_from_mask(m) for m in masks]
            if theory.interference(*events) != 0:
                all_zero = False
                break
        if all_zero:
            return k
    return n
