import random
from fractions import Fraction

import pytest

from qmeasure import coevents as cv
from qmeasure import bernoulli as be
from qmeasure.checks import coin_theory, random_classical_theory, random_decoherence_theory, three_path_theory
from qmeasure.core import HistoriesTheory, SampleSpace
from qmeasure.partitions import Partition

from helpers import brute_minimal_nonnegligible

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Construction and evaluation
# ---------------------------------------------------------------------------


def test_dual_of_empty_event_rejected():
    space = SampleSpace.of("a", "b")
    with pytest.raises(ValueError):
        cv.dual(space.empty)


def test_zero_map_rejected():
    space = SampleSpace.of("a", "b")
    with pytest.raises(ValueError):
        cv.CoEvent.from_table(space, set())
    with pytest.raises(ValueError):
        cv.CoEvent.from_table(space, {0})  # affirming the empty event


def test_evaluation_examples():
    coin_space = SampleSpace.of("h", "t")
    omega_star = cv.dual(coin_space.omega)
    assert omega_star(coin_space.event("h")) == 0
    assert omega_star(coin_space.omega) == 1
    h_star = cv.dual(coin_space.event("h"))
    assert h_star(coin_space.event("h", "t")) == 1
    space = SampleSpace.of("a", "b", "c")
    ac_star = cv.dual(space.event("a", "c"))
    assert ac_star(space.event("a", "b")) == 0
    assert ac_star(space.omega) == 1


def test_dual_is_an_involution():
    space = SampleSpace.of("a", "b", "c")
    for mask in range(1, 8):
        event = space.event_from_mask(mask)
        assert cv.dual(cv.dual(event)) == event
    gamma_star = cv.dual(space.event("b"))
    assert gamma_star.dual_event().cardinality == 1


def test_dual_of_full_space_affirms_only_the_full_space():
    space = SampleSpace.of("a", "b", "c")
    omega_star = cv.dual(space.omega)
    affirmed = [m for m in range(8) if omega_star.value_mask(m)]
    assert affirmed == [0b111]


def test_multiplicativity_over_all_pairs():
    for n in range(1, 6):
        space = SampleSpace(tuple(f"g{i}" for i in range(n)))
        for dual_mask in range(1, 1 << n):
            phi = cv.CoEvent(space, dual_mask=dual_mask)
            for a in range(1 << n):
                for b in range(1 << n):
                    assert phi.value_mask(a & b) == phi.value_mask(a) * phi.value_mask(b)


def test_table_form_multiplicativity_detection():
    space = SampleSpace.of("a", "b", "c")
    # supersets of {a}: a genuine multiplicative table
    filt = {m for m in range(8) if m & 0b001}
    phi = cv.CoEvent.from_table(space, filt)
    assert phi.is_multiplicative()
    assert phi.to_multiplicative().dual_mask == 0b001
    # affirming only the full space and one singleton is not multiplicative
    broken = cv.CoEvent.from_table(space, {0b111, 0b001})
    assert not broken.is_multiplicative()
    with pytest.raises(ValueError):
        broken.to_multiplicative()


# ---------------------------------------------------------------------------
# Preclusion
# ---------------------------------------------------------------------------


def test_coin_preclusion():
    theory = coin_theory(Fraction(1, 3))
    space = theory.space
    for mask in range(1, 4):
        assert cv.is_preclusive(cv.CoEvent(space, dual_mask=mask), theory)


def test_three_path_preclusion():
    theory = three_path_theory()
    space = theory.space
    b_star = cv.dual(space.event("b"))
    assert not cv.is_preclusive(b_star, theory)  # {b} sits inside the null {a,b}
    ac_star = cv.dual(space.event("a", "c"))
    assert cv.is_preclusive(ac_star, theory)


def test_approximate_preclusion_of_singletons():
    eps = Fraction(1, 1000)
    for n, expected in ((10, False), (9, True)):
        theory = be.explicit_theory(be.BernoulliModel(n, HALF, eps))
        for singleton in theory.space.singletons():
            phi = cv.CoEvent.from_dual(singleton)
            assert cv.is_preclusive(phi, theory, eps) is expected


def test_preclusion_requires_multiplicative_form():
    theory = coin_theory(Fraction(1, 3))
    phi = cv.CoEvent.from_table(theory.space, {0b11})
    with pytest.raises(ValueError):
        cv.is_preclusive(phi, theory)


# ---------------------------------------------------------------------------
# Domination and primitivity
# ---------------------------------------------------------------------------


def test_domination_examples():
    coin_space = SampleSpace.of("h", "t")
    h_star = cv.dual(coin_space.event("h"))
    t_star = cv.dual(coin_space.event("t"))
    omega_star = cv.dual(coin_space.omega)
    assert cv.dominates(h_star, omega_star)
    assert cv.dominates(t_star, omega_star)
    assert not cv.dominates(omega_star, omega_star)
    space = SampleSpace.of("a", "b", "c")
    assert cv.dominates(cv.dual(space.event("a")), cv.dual(space.event("a", "c")))


def test_domination_is_a_strict_partial_order():
    space = SampleSpace(tuple(f"g{i}" for i in range(4)))
    duals = [cv.CoEvent(space, dual_mask=m) for m in range(1, 16)]
    for x in duals:
        assert not cv.dominates(x, x)
        for y in duals:
            if cv.dominates(x, y):
                assert not cv.dominates(y, x)
            for z in duals:
                if cv.dominates(x, y) and cv.dominates(y, z):
                    assert cv.dominates(x, z)


def test_primitives_coin_and_three_path():
    coin = coin_theory(Fraction(1, 3))
    assert {phi.dual_mask for phi in cv.primitives(coin)} == {0b01, 0b10}
    t3 = three_path_theory()
    assert [phi.dual_mask for phi in cv.primitives(t3)] == [0b101]


def test_primitives_are_ascending_and_deterministic():
    rng = random.Random(2)
    theory = random_decoherence_theory(rng, 5)
    prims = cv.primitives(theory)
    masks = [phi.dual_mask for phi in prims]
    assert masks == sorted(masks)
    assert masks == [phi.dual_mask for phi in cv.primitives(theory)]


def test_primitives_match_brute_force_oracle():
    rng = random.Random(31)
    cases = []
    for _ in range(4):
        cases.append((random_decoherence_theory(rng, rng.randint(2, 6)), Fraction(0)))
        cases.append((random_classical_theory(rng, rng.randint(2, 6)), Fraction(0)))
        cases.append((random_decoherence_theory(rng, rng.randint(2, 5)), Fraction(rng.randint(1, 4), 9)))
    cases.append((three_path_theory(), Fraction(0)))
    # one larger instance against the direct superset-scan oracle
    cases.append((random_classical_theory(rng, 12), Fraction(1, 17)))
    for theory, eps in cases:
        assert theory.minimal_nonnegligible(eps) == brute_minimal_nonnegligible(theory, eps)


def test_primitives_of_uniform_trials_are_fixed_cardinality_subsets():
    eps = Fraction(1, 4)
    theory = be.explicit_theory(be.BernoulliModel(3, HALF, eps))
    duals = {phi.dual_mask for phi in cv.primitives(theory, eps)}
    expected = {m for m in range(1 << 8) if m.bit_count() == 2}  # ceil(8/4) = 2
    assert duals == expected
    assert be.uniform_primitive_cardinality(be.BernoulliModel(3, HALF, eps)) == 2


def test_primitives_nonempty_when_full_space_survives():
    rng = random.Random(13)
    for _ in range(10):
        theory = random_decoherence_theory(rng, rng.randint(2, 5))
        eps = Fraction(rng.randint(0, 3), 7)
        omega = theory.space.omega
        if not theory.is_negligible(omega, eps):
            assert cv.primitives(theory, eps)


def test_primitivity_equals_undominated_preclusive():
    rng = random.Random(41)
    for _ in range(6):
        theory = random_decoherence_theory(rng, 4)
        space = theory.space
        preclusive = [
            cv.CoEvent(space, dual_mask=m)
            for m in range(1, 16)
            if cv.is_preclusive(cv.CoEvent(space, dual_mask=m), theory)
        ]
        undominated = {
            phi.dual_mask
            for phi in preclusive
            if not any(cv.dominates(psi, phi) for psi in preclusive)
        }
        assert undominated == {phi.dual_mask for phi in cv.primitives(theory)}


# ---------------------------------------------------------------------------
# Classical co-events
# ---------------------------------------------------------------------------


def test_classical_coevents_examples():
    coin = coin_theory(Fraction(1, 3))
    assert {phi.dual_mask for phi in cv.classical_coevents(coin)} == {0b01, 0b10}
    assert cv.classical_coevents(three_path_theory()) == ()
    space = SampleSpace.of("a", "b")
    skewed = HistoriesTheory.from_table(space, {0: 0, 1: 1, 2: 0, 3: 1})
    assert [phi.dual_mask for phi in cv.classical_coevents(skewed)] == [0b01]


def test_classicality_on_partitions():
    coin = coin_theory(Fraction(1, 3))
    coin_space = coin.space
    omega_star = cv.dual(coin_space.omega)
    both = Partition.singletons(coin_space)
    assert not cv.is_classical_on(omega_star, both)
    space = SampleSpace.of("a", "b", "c")
    ac_star = cv.dual(space.event("a", "c"))
    partition = Partition.of_blocks(space, [space.event("a", "c"), space.event("b")])
    assert cv.is_classical_on(ac_star, partition)
    rng = random.Random(3)
    from qmeasure.partitions import iter_partitions

    for _ in range(20):
        mask = rng.randrange(1, 8)
        gamma_star = cv.dual(space.event_from_mask(1 << rng.randrange(3)))
        for partition in iter_partitions(space):
            assert cv.is_classical_on(gamma_star, partition)


def test_classify_flag_implications():
    rng = random.Random(19)
    for _ in range(5):
        theory = random_decoherence_theory(rng, 4)
        space = theory.space
        eps = Fraction(rng.randint(0, 2), 11)
        for mask in range(1, 16):
            flags = cv.classify(cv.CoEvent(space, dual_mask=mask), theory, eps)
            assert flags.multiplicative
            if flags.classical:
                assert flags.multiplicative
            if flags.primitive:
                assert flags.preclusive
        gamma = cv.CoEvent(space, dual_mask=1)
        assert cv.classify(gamma, theory, eps).classical


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------


def test_coevent_json_round_trip():
    space = SampleSpace.of("a", "b", "c")
    phi = cv.dual(space.event("a", "c"))
    doc = cv.coevent_to_json(phi)
    assert doc == {"dual": "0x5"}
    assert cv.coevent_from_json(space, doc) == phi
    table = cv.CoEvent.from_table(space, {0b111, 0b101})
    doc2 = cv.coevent_to_json(table)
    assert cv.coevent_from_json(space, doc2) == table
    with pytest.raises(ValueError):
        cv.coevent_from_json(space, {"neither": 1})
    with pytest.raises(ValueError):
        cv.coevent_from_json(space, {"table": {"0x1": 2}})
