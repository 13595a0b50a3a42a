"""Symbolic analytics for n-fold repeated coin trials.

An n-fold repeated trial of a coin with heads probability p carries the
product measure on the 2**n outcome sequences.  Everything here is computed
from big-integer binomial identities with a single common denominator, never
by enumerating the 2**n sequences: lower-tail masses, the greatest heads
count whose tail mass stays below a threshold eps, the cardinality of the
smallest event straddling the eps line, and the even/odd-position witness
showing that tail co-events of one sub-experiment answer both tail
propositions of the other with "no".

A small bridge to explicit theories is included for cross-checks: for a
modest number of tosses the full product space can be materialized as a
weights-backed histories theory whose histories are the outcome sequences.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Event, HistoriesTheory, SampleSpace, SizeCapError
from .exact import ceil_rational, parse_rational

#: Explicit product theories (2**n histories) are refused above this many tosses.
EXPLICIT_TOSS_CAP = 12


@dataclass(frozen=True)
class BernoulliModel:
    """An n-fold repeated coin: trial count, heads probability, threshold."""

    n: int
    p: Fraction
    eps: Fraction

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one trial")
        object.__setattr__(self, "p", parse_rational(self.p))
        object.__setattr__(self, "eps", parse_rational(self.eps))
        if not 0 <= self.p <= 1:
            raise ValueError("heads probability must lie in [0, 1]")
        if not 0 < self.eps <= 1:
            raise ValueError("threshold must lie in (0, 1]")


@dataclass(frozen=True)
class TrialSequence:
    """An ordered record of outcomes, one character per trial: 'h' or 't'."""

    outcomes: str

    def __post_init__(self):
        if not self.outcomes or set(self.outcomes) - {"h", "t"}:
            raise ValueError("outcomes must be a nonempty string over {h, t}")

    @property
    def n(self) -> int:
        return len(self.outcomes)

    @property
    def heads(self) -> int:
        return self.outcomes.count("h")


def _check_heads(model: BernoulliModel, heads: int) -> None:
    if not 0 <= heads <= model.n:
        raise ValueError(f"heads count {heads} out of range 0..{model.n}")


def prob_history(model: BernoulliModel, heads: int) -> Fraction:
    """Probability of one fixed sequence with the given heads count:
    p**H * (1-p)**(n-H)."""
    _check_heads(model, heads)
    return model.p ** heads * (1 - model.p) ** (model.n - heads)


def prob_heads_count(model: BernoulliModel, heads: int) -> Fraction:
    """Probability that the number of heads is exactly the given count."""
    _check_heads(model, heads)
    return math.comb(model.n, heads) * prob_history(model, heads)


def _tail_numerator(model: BernoulliModel, heads: int) -> int:
    """Numerator of the lower-tail mass over the common denominator q**n,
    where p = a/q."""
    a = model.p.numerator
    q = model.p.denominator
    b = q - a
    total = 0
    for m in range(heads + 1):
        total += math.comb(model.n, m) * a**m * b ** (model.n - m)
    return total


def cumulative(model: BernoulliModel, heads: int) -> Fraction:
    """Probability that the number of heads is at most the given count.

    Monotone nondecreasing in the count and equal to one at n.  The count
    zero term is included.
    """
    _check_heads(model, heads)
    q = model.p.denominator
    return Fraction(_tail_numerator(model, heads), q**model.n)


def tail_cutoff(model: BernoulliModel) -> int | None:
    """The greatest heads count whose lower-tail mass is below the model's
    threshold, or None when even the count-zero tail already reaches it."""
    a = model.p.numerator
    q = model.p.denominator
    b = q - a
    # compare running_tail / q**n < eps by integer cross-multiplication
    eps_num = model.eps.numerator
    eps_den = model.eps.denominator
    bound = eps_num * q**model.n
    running = 0
    cutoff = None
    for m in range(model.n + 1):
        running += math.comb(model.n, m) * a**m * b ** (model.n - m)
        if running * eps_den < bound:
            cutoff = m
        else:
            break
    return cutoff


def tail_rows(model: BernoulliModel):
    """Yield (heads, point mass, lower-tail mass) rows with exact values."""
    q = model.p.denominator
    a = model.p.numerator
    b = q - a
    denom = q**model.n
    running = 0
    for m in range(model.n + 1):
        term = math.comb(model.n, m) * a**m * b ** (model.n - m)
        running += term
        yield m, Fraction(term, denom), Fraction(running, denom)


def _require_fair(model: BernoulliModel, what: str) -> None:
    if model.p != Fraction(1, 2):
        raise ValueError(f"{what} requires equal single-history weights (p = 1/2)")


def straddle_set_cardinality(model: BernoulliModel) -> int:
    """Cardinality of the smallest set of sequences that, added on top of the
    precluded lower tail, pushes the total mass back over the threshold.

    Only defined for the fair coin, whose sequences all weigh 2**-n: the
    answer is the least integer at least (eps - tail) / 2**-n.  The result S
    satisfies the exact sandwich  eps <= tail + |S| * 2**-n < eps + 2**-n.
    """
    _require_fair(model, "straddle-set cardinality")
    cutoff = tail_cutoff(model)
    if cutoff is None:
        raise ValueError("no tail cutoff exists at this threshold")
    gap = model.eps - cumulative(model, cutoff)
    return ceil_rational(gap * 2**model.n)


def uniform_primitive_cardinality(model: BernoulliModel) -> int:
    """Minial cardinality of an event that is not below the threshold under
    the fair product measure: the least integer at least eps * 2**n.  Events
    of smaller cardinality are precluded at the eps level and the events of
    exactly this cardinality are the duals of the primitive approximate
    co-events."""
    _require_fair(model, "uniform primitive cardinality")
    return ceil_rational(model.eps * 2**model.n)


# ---------------------------------------------------------------------------
# Even/odd sub-experiment witness
# ---------------------------------------------------------------------------

#: History encoding: bit i of a history mask records a heads outcome on trial
#: i+1.  "Even trials" are the 1-indexed even positions, i.e. odd bit indices.


def position_masks(n: int) -> tuple[int, int]:
    even = sum(1 << i for i in range(n) if (i + 1) % 2 == 0)
    odd = sum(1 << i for i in range(n) if (i + 1) % 2 == 1)
    return even, odd


def alternating_history(n: int) -> int:
    """The sequence with heads exactly on the even trials (mask form)."""
    even, _ = position_masks(n)
    return even


@dataclass(frozen=True)
class EvenOddWitness:
    """Certificate that a tail co-event of the even sub-experiment answers
    both tail propositions of the odd sub-experiment with 0.

    All counts are exact.  ``valuations`` gives the witness co-event's
    answers on the four tail events (lower/greater for even/odd); they are
    certified whenever ``witness_supported``.  For small spaces the explicit
    dual is materialized as ``witness_histories``.
    """

    trials: int
    half: int
    eps: Fraction
    cutoff: int | None
    primitive_cardinality: int
    greater_count: int | None
    greater_exceeds_eps: bool | None
    cross_count: int | None
    witness_supported: bool | None
    valuations: dict[str, int] | None
    witness_histories: tuple[int, ...] | None
    alternating: int


def even_odd_witness(model: BernoulliModel) -> EvenOddWitness:
    """Analyse the even/odd coarse grainings of a fair repeated trial.

    Both sub-experiments share the same tail cutoff (same length, same
    threshold).  The witness co-event is dual to a set carved out of the
    even sub-experiment's "greater" tail: it contains the history with heads
    exactly on even trials (whose odd sub-history is all tails) plus at least
    one history whose odd heads count also clears the cutoff.  Such a dual
    answers the even tail events classically but maps both odd tail events
    to 0.
    """
    _require_fair(model, "even/odd witness")
    if model.n % 2 != 0:
        raise ValueError("even/odd analysis needs an even number of trials")
    half = model.n // 2
    half_model = BernoulliModel(half, model.p, model.eps)
    cutoff = tail_cutoff(half_model)
    card = uniform_primitive_cardinality(model)
    gamma = alternating_history(model.n)

    if cutoff is None:
        return EvenOddWitness(
            trials=model.n, half=half, eps=model.eps, cutoff=None,
            primitive_cardinality=card, greater_count=None,
            greater_exceeds_eps=None, cross_count=None,
            witness_supported=None, valuations=None,
            witness_histories=None, alternating=gamma,
        )

    # sequences of half-length with heads count above the cutoff
    half_greater = sum(math.comb(half, k) for k in range(cutoff + 1, half + 1))
    greater_count = half_greater * 2**half
    greater_exceeds = greater_count > model.eps * 2**model.n
    cross_count = half_greater * half_greater
    supported = (
        card >= 2
        and greater_count >= card
        and cross_count >= 1
        and cutoff < half  # the alternating history lies in the even greater tail
    )
    valuations = (
        {"L_even": 0, "G_even": 1, "L_odd": 0, "G_odd": 0} if supported else None
    )

    witness: tuple[int, ...] | None = None
    if supported and model.n <= 2 * EXPLICIT_TOSS_CAP and card <= 1 << model.n:
        even_mask, odd_mask = position_masks(model.n)
        chosen = [gamma]
        seen = {gamma}
        # one history whose odd heads count also clears the cutoff
        for mask in range(1 << model.n):
            if mask in seen:
                continue
            if (mask & even_mask).bit_count() > cutoff and (mask & odd_mask).bit_count() > cutoff:
                chosen.append(mask)
                seen.add(mask)
                break
        for mask in range(1 << model.n):
            if len(chosen) == card:
                break
            if mask in seen:
                continue
            if (mask & even_mask).bit_count() > cutoff:
                chosen.append(mask)
                seen.add(mask)
        witness = tuple(sorted(chosen))

    return EvenOddWitness(
        trials=model.n, half=half, eps=model.eps, cutoff=cutoff,
        primitive_cardinality=card, greater_count=greater_count,
        greater_exceeds_eps=greater_exceeds, cross_count=cross_count,
        witness_supported=supported, valuations=valuations,
        witness_histories=witness, alternating=gamma,
    )


# ---------------------------------------------------------------------------
# Hypothesis testing and simulation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypothesisTestResult:
    decision: str  # "Reject" | "FailToReject"
    heads: int
    cumulative: Fraction
    eps: Fraction

    @property
    def rejected(self) -> bool:
        return self.decision == "Reject"


def hypothesis_test(sequence: TrialSequence, p0, eps) -> HypothesisTestResult:
    """One-tailed test of the hypothesis "heads probability is p0".

    Rejects at the eps level when the lower-tail mass at the observed heads
    count falls below eps; a heads-heavy sequence therefore never rejects.
    """
    p0 = parse_rational(p0)
    eps = parse_rational(eps)
    model = BernoulliModel(sequence.n, p0, eps)
    tail = cumulative(model, sequence.heads)
    decision = "Reject" if tail < eps else "FailToReject"
    return HypothesisTestResult(decision, sequence.heads, tail, eps)


def simulate(n: int, p, seed: int) -> TrialSequence:
    """Deterministic i.i.d. Bernoulli draws.

    Each trial consumes one 64-bit word u from the Mersenne Twister seeded
    with ``seed`` (``random.Random(seed).getrandbits(64)``); the outcome is
    heads exactly when u / 2**64 < p, compared by integer cross
    multiplication so the threshold is exact.
    """
    p = parse_rational(p)
    if not 0 <= p <= 1:
        raise ValueError("heads probability must lie in [0, 1]")
    draw = random.Random(seed).getrandbits
    num_shifted = p.numerator << 64
    den = p.denominator
    chars = ["h" if draw(64) * den < num_shifted else "t" for _ in range(n)]
    return TrialSequence("".join(chars))


# ---------------------------------------------------------------------------
# Bridge to explicit histories theories
# ---------------------------------------------------------------------------


def sequence_label(mask: int, n: int) -> str:
    """The outcome string of a history mask (bit i = heads on trial i+1)."""
    return "".join("h" if mask >> i & 1 else "t" for i in range(n))


def explicit_theory(model: BernoulliModel) -> HistoriesTheory:
    """Materialize the full product space as a weights-backed theory.

    Histories are the 2**n outcome sequences ordered by mask, so the history
    index in the sample space equals the history mask.  Refused above
    EXPLICIT_TOSS_CAP tosses.
    """
    if model.n > EXPLICIT_TOSS_CAP:
        raise SizeCapError(
            f"{model.n} tosses means 2**{model.n} histories; cap is {EXPLICIT_TOSS_CAP}"
        )
    size = 1 << model.n
    labels = tuple(sequence_label(mask, model.n) for mask in range(size))
    weights = [prob_history(model, mask.bit_count()) for mask in range(size)]
    return HistoriesTheory.from_weights(SampleSpace(labels), weights)


def event_where(theory: HistoriesTheory, predicate) -> Event:
    """The event of all histories whose mask satisfies the predicate (for
    theories built by explicit_theory, where index == history mask)."""
    mask = 0
    for h in range(theory.space.n):
        if predicate(h):
            mask |= 1 << h
    return theory.space.event_from_mask(mask)
