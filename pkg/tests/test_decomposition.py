import math
from fractions import Fraction

import pytest

from ramcorr import decomposition as Dm
from ramcorr.arith import ArithWindow, divisors, is_squarefree, kappa, moebius
from ramcorr.characters import character_group
from ramcorr.correlations import CorrelationInstance, HypothesisError, TruncatedDivisorSum, correlate, correlation_coefficient
from ramcorr.generators import InstanceConfig, random_bh_instance, random_prime_instance

CFG = InstanceConfig(max_Q=12, max_N=60)


def make(f, gp, N, Q):
    g = TruncatedDivisorSum(tuple(Fraction(gp.get(d, 0)) for d in range(1, Q + 1)))
    return CorrelationInstance(ArithWindow.from_mapping(f, N), g, N, require=("squarefree", "primes"))


def primary_by_display(inst, a):
    # the congruence-form double sum, term by term
    gh = inst.g.coefficients
    total = Fraction(0)
    for q in range(1, inst.Q + 1):
        for m in divisors(q):
            total += moebius(q) * gh(q) * moebius(m) * m * sum(
                (v for p, v in inst.f_support if math.gcd(p, m) == 1 and (p + a) % m == 0), Fraction(0)
            )
    return total


def test_q1_instance():
    inst = make({2: 3, 5: -1}, {1: 1}, 10, 1)
    for a in range(1, 20):
        assert Dm.primary_part(inst, a) == 2
        assert Dm.primary_part_characters(inst, a) == pytest.approx(2)
    assert Dm.primary_coefficient(inst, 1) == 2
    assert Dm.secondary_coefficient(inst, 1) == 0
    assert Dm.check_parts_add_up(inst, 1)


def test_primary_example():
    inst = make({2: 1, 3: 1}, {d: 1 for d in range(1, 7) if is_squarefree(d)}, 6, 6)
    assert Dm.primary_part(inst, 1) == primary_by_display(inst, 1)
    assert Dm.secondary_part(inst, 2) == correlate(inst, 2) - Dm.primary_part(inst, 2)


def test_secondary_empty_for_shift_one():
    inst = make({3: 1, 5: 2, 7: -1}, {1: 1, 3: 2, 5: 1}, 10, 5)
    assert Dm.secondary_part(inst, 1) == 0


def test_primary_matches_display_on_random_instances():
    for seed in range(5):
        inst = random_prime_instance(seed, CFG)
        for a in range(1, 40):
            assert Dm.primary_part(inst, a) == primary_by_display(inst, a)


def test_decomposition_exact():
    for seed in range(6):
        inst = random_prime_instance(seed, CFG)
        for a in range(1, 80):
            r = Dm.decompose(inst, a)
            assert r.primary + r.secondary == r.correlation


def test_character_form_exact_for_small_moduli():
    inst = make({2: 1, 3: Fraction(1, 2), 7: -4}, {1: 1, 2: Fraction(2, 3)}, 8, 2)
    for a in range(1, 20):
        assert Dm.primary_part_characters(inst, a) == float(Dm.primary_part(inst, a))


def test_support_conditions_required():
    inst = random_bh_instance(1)
    if not (inst.squarefree_coefficients and inst.prime_supported):
        with pytest.raises(HypothesisError):
            Dm.primary_part(inst, 1)
    bad = CorrelationInstance(ArithWindow.from_mapping({4: 1}, 6), TruncatedDivisorSum((Fraction(1),)), 6)
    with pytest.raises(HypothesisError):
        Dm.primary_coefficient(bad, 1)


def test_wintner_closed_forms():
    for seed in range(10):
        inst = random_prime_instance(seed, CFG)
        for ell in range(1, inst.Q + 5):
            assert Dm.check_parts_add_up(inst, ell)
            if ell > inst.Q or not moebius(ell):
                assert Dm.primary_coefficient(inst, ell) == Dm.secondary_coefficient(inst, ell) == 0
                assert ell > inst.Q or correlation_coefficient(inst, ell) == 0


def test_secondary_coefficient_vanishes_with_g_hat():
    inst = make({2: 1, 3: 1}, {1: 1, 2: 1}, 6, 3)
    assert inst.g.coefficients(3) == 0
    assert Dm.secondary_coefficient(inst, 3) == 0


def test_truncated_wintner_series_of_primary_part():
    inst = make({2: 1, 3: 2, 5: -1, 7: Fraction(1, 2)}, {1: 1, 2: Fraction(1, 3), 3: -2, 6: 5}, 10, 6)
    part = Dm.ippified_wintner_partial(inst, range(1, 7), 10**5)
    for ell in range(1, 7):
        exact = float(Dm.primary_coefficient(inst, ell))
        assert abs(part[ell].value - exact) <= max(0.05, 0.1 * abs(exact))
        assert part[ell].flag == "PARTIAL"


@pytest.mark.parametrize("d,m,expected", [(6, 3, 0), (4, 2, 1), (1, 1, 1)])
def test_pinch_examples(d, m, expected):
    assert Dm.pinch_lemma(d, m) == expected


@pytest.mark.parametrize("d,m,expected", [(4, 2, 0), (6, 6, 1), (1, 5, 1)])
def test_twisted_pinch_lemma_examples(d, m, expected):
    assert Dm.twisted_pinch_lemma(d, m) == expected


def test_pinch_exhaustive_small():
    for d in range(1, 150):
        for m in range(1, 40):
            assert Dm.pinch_lemma(d, m) == int(m % kappa(d) == 0)
            assert Dm.twisted_pinch_lemma(d, m) == int(m % kappa(d) == 0) * moebius(d)


def test_multiple_moebius_sum():
    for q in range(1, 211):
        if is_squarefree(q):
            for ell in divisors(q):
                assert Dm.multiple_moebius_sum(q, ell) == (moebius(ell) if q == ell else 0)


def test_twisted_sums_drift():
    chi = character_group(3)[1]
    assert abs(Dm.sigma_partial(chi, 1, 10**5)) <= 0.05
    assert abs(Dm.sigma_p_partial(chi, 3, 2, 10**5)) <= 0.05


def test_twisted_sum_brute_force():
    chi = character_group(5)[2]
    D = 300
    brute = sum(
        moebius(d) / d * sum(moebius(t) * chi(t) for t in divisors(d)) for d in range(3, D + 1, 3)
    )
    assert Dm.sigma_partial(chi, 3, D) == pytest.approx(brute, abs=1e-12)
    brute_p = sum(
        moebius(d) / d * sum(moebius(t) * chi(t) for t in divisors(d // 2)) for d in range(6, D + 1, 6)
    )
    assert Dm.sigma_p_partial(chi, 3, 2, D) == pytest.approx(brute_p, abs=1e-12)


def test_singular_series():
    assert Dm.singular_series_demo(2, 1) == 1.0
    s2 = Dm.singular_series_demo(2, 10**4)
    assert abs(s2 - 1.3203236316937392) <= 1e-2
    assert abs(Dm.singular_series_demo(6, 10**4) / s2 - 2) <= 1e-2
    assert abs(Dm.singular_series_euler(2) - 1.3203236316937392) <= 1e-10
    with pytest.raises(Exception):
        Dm.singular_series_demo(3, 10)
