"""Ramanujan sums c_q(n) and their basic identities.

Three independent evaluations are provided: the divisor formula
(``c_kluyver``), the gcd/totient closed form (``c_holder``) and the defining
cosine sum over reduced residues (``c_direct``).  The exact routines accept
any integer argument; negative or zero n are reduced mod q first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import DomainError, InvariantViolation, divisors, euler_phi, factorize, moebius


def _check_modulus(q: int) -> None:
    if q < 1:
        raise DomainError(f"modulus must be >= 1, got {q}")


@lru_cache(maxsize=1 << 18)
def c_kluyver(q: int, n: int) -> int:
    """``sum_{d | (q, n)} d μ(q/d)``."""
    _check_modulus(q)
    n %= q  # q-periodic; n = 0 means every d | q divides n
    return sum(d * moebius(q // d) for d in divisors(q) if n % d == 0)


def c_holder(q: int, n: int) -> int:
    """``φ(q) μ(q/(q,n)) / φ(q/(q,n))``."""
    _check_modulus(q)
    g = math.gcd(q, n % q) or q
    r = q // g
    value, rem = divmod(euler_phi(q) * moebius(r), euler_phi(r))
    if rem:
        raise InvariantViolation(f"Hölder quotient not integral at q={q}, n={n}")
    return value


c = c_kluyver


def c_direct(q: int, n: int) -> float:
    """Cosine sum over j in [1, q] coprime to q."""
    _check_modulus(q)
    j = np.arange(1, q + 1)
    j = j[np.gcd(j, q) == 1]
    # reduce jn mod q in integers before taking the angle
    return float(np.cos(2.0 * np.pi * ((j * (n % q)) % q) / q).sum())


def ramanujan_table(q_values, n_values) -> list[list[int]]:
    """Rows of c_q(n): one row per q, one column per n."""
    return [[c_kluyver(q, n) for n in n_values] for q in q_values]


def divisibility_via_ramanujan(q: int, n: int) -> int:
    """``1_{q | n}`` computed as ``(1/q) sum_{d | q} c_d(n)``."""
    _check_modulus(q)
    value = Fraction(sum(c_kluyver(d, n) for d in divisors(q)), q)
    if value not in (0, 1) or (value == 1) != (n % q == 0):
        raise InvariantViolation(f"divisor average {value} is not 1_{{{q}|{n}}}")
    return int(value)


def period_mean(q: int, ell: int, n: int) -> Fraction:
    """Mean of ``c_q(n+a) c_ell(a)`` over one period ``a = 1..lcm(q, ell)``.

    The summand is lcm(q, ell)-periodic in a, so this equals the Cesàro limit.
    """
    _check_modulus(q)
    _check_modulus(ell)
    L = math.lcm(q, ell)
    total = sum(c_kluyver(q, n + a) * c_kluyver(ell, a) for a in range(1, L + 1))
    return Fraction(total, L)


def orthogonality_mean_kluyver(q: int, ell: int, n: int) -> Fraction:
    """Closed form of the same mean after expanding both sums by divisors.

    Counting ``a <= x`` with ``t | a`` and ``d | n + a`` gives density
    ``(d,t)/(dt)`` when ``(d,t) | n`` and zero otherwise.
    """
    _check_modulus(q)
    _check_modulus(ell)
    total = Fraction(0)
    for d in divisors(q):
        md = moebius(q // d)
        if not md:
            continue
        for t in divisors(ell):
            mt = moebius(ell // t)
            if not mt:
                continue
            g = math.gcd(d, t)
            if n % g == 0:
                total += Fraction(d * md * t * mt * g, d * t)
    return total


def carmichael_orthogonality(q: int, ell: int, n: int) -> Fraction:
    """Limit mean of ``c_q(n+a) c_ell(a)``; checked against ``1_{q=ell} c_ell(n)``."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    value = period_mean(q, ell, n)
    expected = c_kluyver(ell, n) if q == ell else 0
    if value != expected:
        raise InvariantViolation(f"orthogonality fails at q={q}, ell={ell}, n={n}: {value}")
    return value


def vertical_limit_holds(q: int, a: int) -> bool:
    """True when ``c_q(a) != 0`` implies ``v_p(q) <= v_p(a) + 1`` for every p | q."""
    if a == 0 or c_kluyver(q, a) == 0:
        return True
    fa = factorize(a)
    return all(v <= fa.valuation(p) + 1 for p, v in factorize(q))
