import math
from fractions import Fraction

import numpy as np
import pytest
from sympy import factorint, mobius, primepi, totient

from ramcorr import arith
from ramcorr.arith import ArithWindow, DomainError, RealWindow


@pytest.mark.parametrize("n,expected", [(1, ()), (12, ((2, 2), (3, 1))), (97, ((97, 1),))])
def test_factorize_examples(n, expected):
    assert arith.factorize(n).factors == expected


def test_factorize_matches_sympy():
    for n in list(range(1, 3000)) + [2**31 - 1, 10**12 + 39, 999983 * 1000003]:
        assert dict(arith.factorize(n).factors) == factorint(n)


def test_factorize_rejects_nonpositive():
    with pytest.raises(DomainError):
        arith.factorize(0)


def test_pointwise_examples():
    assert arith.moebius(1) == 1
    assert arith.moebius(30) == -1
    assert arith.euler_phi(12) == 4
    assert arith.kappa(12) == 6
    assert arith.von_mangoldt(8) == pytest.approx(math.log(2))
    assert arith.von_mangoldt(12) == 0.0


def test_sieves_match_sympy():
    M = 2000
    mu, phi = arith.moebius_table(M), arith.phi_table(M)
    for n in range(1, M + 1):
        assert mu[n] == mobius(n) == arith.moebius(n)
        assert phi[n] == totient(n) == arith.euler_phi(n)
    assert len(arith.primes_up_to(M)) == primepi(M)
    spf = arith.spf_table(M)
    assert all(spf[n] == min(factorint(n)) for n in range(2, M + 1))


def test_convolution_identities():
    M = 10
    one = arith.builtin_window("one", M)
    assert arith.dirichlet_convolve(arith.moebius_window(M), one).values == tuple(
        Fraction(int(n == 1)) for n in range(1, M + 1)
    )
    assert arith.dirichlet_convolve(arith.builtin_window("phi", M), one).values == tuple(
        Fraction(n) for n in range(1, M + 1)
    )
    lam = arith.builtin_window("von_mangoldt", M)
    assert arith.dirichlet_convolve(lam, one.to_real())(6) == pytest.approx(math.log(6), abs=1e-12)


def test_eratosthenes_examples():
    assert arith.eratosthenes_transform(arith.builtin_window("id", 12))(6) == 2
    assert arith.eratosthenes_transform(arith.builtin_window("one", 12)).support() == [1]
    lam = arith.builtin_window("von_mangoldt", 12)
    assert arith.eratosthenes_transform(lam)(6) == pytest.approx(-math.log(6), abs=1e-12)


def test_moebius_sum_to_product_examples():
    assert arith.moebius_sum_to_product(lambda d: Fraction(1, d), 6) == (Fraction(1, 3), Fraction(1, 3))
    assert arith.moebius_sum_to_product(lambda d: 1, 1)[0] == 1
    assert arith.moebius_sum_to_product(lambda d: 1, 30)[0] == 0


@pytest.mark.parametrize("a,b,expected", [(3, 4, 1), (6, 4, 0), (1, 1, 1)])
def test_coprimality_detector(a, b, expected):
    assert arith.coprimality_detector(a, b) == (expected, expected)


def test_window_domain():
    w = ArithWindow.from_function(lambda n: n, 5)
    with pytest.raises(DomainError):
        w(6)
    assert ArithWindow.from_mapping({1: 1}, 5)(99) == 0
    with pytest.raises(DomainError):
        ArithWindow.from_mapping({7: 1}, 5)


def test_real_window_is_read_only():
    r = RealWindow(np.arange(1.0, 4.0))
    with pytest.raises(ValueError):
        r.values[0] = 5.0


def test_csv_round_trip(tmp_path):
    w = ArithWindow.from_mapping({1: Fraction(1, 3), 4: Fraction(-7, 2)}, 6)
    path = tmp_path / "w.csv"
    arith.write_window_csv(w, path)
    assert arith.read_window_csv(path, 6).values == w.values


def test_csv_errors(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("n,num,den\n3,1,0\n")
    with pytest.raises(DomainError):
        arith.read_window_csv(path)
    path.write_text("# nothing\n")
    with pytest.raises(DomainError):
        arith.read_window_csv(path)


def test_unknown_builtin():
    with pytest.raises(DomainError):
        arith.builtin_window("nope", 5)
