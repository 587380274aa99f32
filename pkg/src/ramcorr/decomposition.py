"""Primary/secondary split of prime-supported correlations and related identities.

Everything here assumes f lives on primes and ĝ_Q on square-free moduli;
instances violating either raise ``HypothesisError``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import (
    DomainError,
    InvariantViolation,
    _primes_array,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    kappa,
    moebius,
    moebius_table,
)
from .characters import DirichletCharacter, character_group
from .correlations import CorrelationInstance, correlate, correlation_table, period_bound, correlation_coefficient
from .ramanujan import c_kluyver
from .transforms import Flagged

CHAR_TOL = 1e-6


def _require(inst: CorrelationInstance) -> None:
    if not inst.exact:
        raise DomainError("decomposition needs exact rational data")
    inst.check("squarefree", "primes")


@lru_cache(maxsize=64)
def _primary_weights(inst: CorrelationInstance) -> tuple[tuple[int, Fraction], ...]:
    """(m, weight) pairs with weight = sum over q ≡ 0 (m) of μ(q)ĝ(q) μ(m) m."""
    gh = inst.g.coefficients
    w: dict[int, Fraction] = defaultdict(Fraction)
    for q in gh.support():
        mq = moebius(q)
        for m in divisors(q):
            w[m] += mq * gh(q) * moebius(m) * m
    return tuple((m, v) for m, v in sorted(w.items()) if v)


@lru_cache(maxsize=64)
def _prime_residues(inst: CorrelationInstance, m: int) -> dict[int, Fraction]:
    """sum of f(p) over p <= N coprime to m, grouped by p mod m."""
    out: dict[int, Fraction] = defaultdict(Fraction)
    for p, v in inst.f_support:
        if math.gcd(p, m) == 1:
            out[p % m] += v
    return out


def primary_part(inst: CorrelationInstance, a: int) -> Fraction:
    """Congruence form: f(p) summed over -p ≡ a (mod m), weighted by the q-sum."""
    _require(inst)
    if a < 1:
        raise DomainError(f"shift must be >= 1, got {a}")
    total = Fraction(0)
    for m, w in _primary_weights(inst):
        total += w * _prime_residues(inst, m).get(-a % m, 0)
    return total


@lru_cache(maxsize=64)
def _character_sums(inst: CorrelationInstance, m: int) -> tuple[tuple[DirichletCharacter, complex], ...]:
    """For each χ mod m: sum_{p <= N} f(p) conj(χ(-p))."""
    out = []
    for chi in character_group(m):
        s = sum(float(v) * chi(-p).conjugate() for p, v in inst.f_support)
        out.append((chi, complex(s)))
    return tuple(out)


def primary_part_characters(inst: CorrelationInstance, a: int) -> float:
    """Character form of the primary part, in floating point."""
    _require(inst)
    total = 0j
    for m, w in _primary_weights(inst):
        inner = sum(s * chi(a) for chi, s in _character_sums(inst, m))
        total += float(w) / euler_phi(m) * inner
    return total.real


def secondary_direct(inst: CorrelationInstance, a: int) -> Fraction:
    """Display form: p | a, then square-free q' with pq' <= Q, then m' | q' with a/p ≡ -1 (m')."""
    _require(inst)
    gh = inst.g.coefficients
    Q = inst.Q
    total = Fraction(0)
    for p, v in inst.f_support:
        if a % p:
            continue
        b = a // p + 1
        inner = Fraction(0)
        for q1 in range(1, Q // p + 1):
            mq = moebius(q1)
            if not mq:
                continue
            gq = gh(p * q1)
            if not gq:
                continue
            inner += mq * gq * sum(moebius(m) * m for m in divisors(q1) if b % m == 0)
        total += v * p * inner
    return total


def secondary_part(inst: CorrelationInstance, a: int) -> Fraction:
    """``C - P``, checked against the display form."""
    value = correlate(inst, a) - primary_part(inst, a)
    other = secondary_direct(inst, a)
    if value != other:
        raise InvariantViolation(f"secondary part routes disagree at a={a}: {value} != {other}")
    return value


@dataclass(frozen=True)
class DecompositionResult:
    a: int
    correlation: Fraction
    primary: Fraction
    primary_char: float
    secondary: Fraction
    secondary_direct: Fraction

    @property
    def char_error(self) -> float:
        return abs(self.primary_char - float(self.primary))


def decompose(inst: CorrelationInstance, a: int, tol: float = CHAR_TOL) -> DecompositionResult:
    C = correlate(inst, a)
    P = primary_part(inst, a)
    S = C - P
    Sd = secondary_direct(inst, a)
    if S != Sd:
        raise InvariantViolation(f"C != P + S at a={a}: {C} vs {P} + {Sd}")
    Pc = primary_part_characters(inst, a)
    res = DecompositionResult(a, C, P, Pc, S, Sd)
    if res.char_error > tol * (1 + abs(float(P))):
        raise InvariantViolation(f"character form off by {res.char_error} at a={a}")
    return res


def _wintner_pieces(inst: CorrelationInstance, ell: int) -> tuple[Fraction, Fraction, Fraction]:
    """The three sums of the closed forms, already weighted; zero unless ℓ is square-free."""
    _require(inst)
    if ell < 1:
        raise DomainError(f"index must be >= 1, got {ell}")
    mu = moebius(ell)
    if not mu or ell > inst.Q:
        return Fraction(0), Fraction(0), Fraction(0)
    gh = inst.g.coefficients
    phi = euler_phi(ell)
    g_ell = gh(ell)
    main = g_ell / phi * sum((v * c_kluyver(ell, p) for p, v in inst.f_support), Fraction(0))
    at_ell = mu * g_ell / phi * sum((v * (p - 1) for p, v in inst.f_support if ell % p == 0), Fraction(0))
    off_ell = Fraction(mu, phi) * sum(
        (v * gh(p * ell) for p, v in inst.f_support if ell % p and p <= inst.Q), Fraction(0)
    )
    return main, at_ell, off_ell


def primary_coefficient(inst: CorrelationInstance, ell: int) -> Fraction:
    """Closed-form Wintner coefficient of the IPPified primary part."""
    main, at_ell, off_ell = _wintner_pieces(inst, ell)
    return main + at_ell - off_ell


def secondary_coefficient(inst: CorrelationInstance, ell: int) -> Fraction:
    """Closed-form Wintner coefficient of the IPPified secondary part."""
    _, at_ell, off_ell = _wintner_pieces(inst, ell)
    return off_ell - at_ell


def check_parts_add_up(inst: CorrelationInstance, ell: int) -> bool:
    lhs = primary_coefficient(inst, ell) + secondary_coefficient(inst, ell)
    rhs = correlation_coefficient(inst, ell)
    if lhs != rhs:
        raise InvariantViolation(f"part coefficients {lhs} do not add up to {rhs} at ℓ={ell}")
    return True


def ippified_wintner_partial(inst: CorrelationInstance, ells, D: int, part: str = "primary") -> dict[int, Flagged]:
    """Truncated Wintner coefficients ``sum_{ℓ|d<=D} μ²(d)F'(d)/d`` of a part's IPPification.

    F is the primary part, the secondary part or the correlation itself,
    tabulated over one period and extended periodically to [1, D].
    """
    _require(inst)
    L = period_bound(inst)
    shifts = range(1, L + 1)
    if part == "primary":
        one = [primary_part(inst, a) for a in shifts]
    elif part == "secondary":
        C = correlation_table(inst, shifts)
        one = [c - primary_part(inst, a) for c, a in zip(C, shifts)]
    elif part == "correlation":
        one = correlation_table(inst, shifts)
    else:
        raise DomainError(f"unknown part {part!r}")
    period = np.array([float(v) for v in one])
    F = np.zeros(D + 1)
    F[1:] = np.resize(period, D)
    mu = moebius_table(D).astype(float)
    Fp = np.zeros(D + 1)
    for t in range(1, D + 1):
        if F[t]:
            Fp[t::t] += F[t] * mu[1 : D // t + 1]
    Fp *= mu * mu
    d = np.arange(D + 1, dtype=float)
    d[0] = 1.0
    w = Fp / d
    return {ell: Flagged(math.fsum(w[ell::ell]), False) for ell in ells}


def pinch_lemma(d: int, m: int) -> int:
    """``sum_{t | d, (t, m) = 1} μ(t)``, checked against ``1_{κ(d) | m}``."""
    if d < 1 or m < 1:
        raise DomainError("d and m must be >= 1")
    value = sum(moebius(t) for t in divisors(d) if math.gcd(t, m) == 1)
    expected = int(m % kappa(d) == 0)
    if value != expected:
        raise InvariantViolation(f"pinch sum {value} != {expected} at d={d}, m={m}")
    return value


def twisted_pinch_lemma(d: int, m: int) -> int:
    """``sum_{t | d, (t, m) = 1} μ(d/t)``, checked against ``1_{κ(d) | m} μ(d)``."""
    if d < 1 or m < 1:
        raise DomainError("d and m must be >= 1")
    value = sum(moebius(d // t) for t in divisors(d) if math.gcd(t, m) == 1)
    expected = int(m % kappa(d) == 0) * moebius(d)
    if value != expected:
        raise InvariantViolation(f"twisted pinch sum {value} != {expected} at d={d}, m={m}")
    return value


def multiple_moebius_sum(q: int, ell: int) -> int:
    """``sum_{m | q, ℓ | m} μ(m)`` for square-free q; equals ``1_{q=ℓ} μ(ℓ)``."""
    if moebius(q) == 0 or q % ell:
        raise DomainError(f"need square-free q with ℓ | q, got q={q}, ℓ={ell}")
    value = sum(moebius(m) for m in divisors(q) if m % ell == 0)
    expected = moebius(ell) if q == ell else 0
    if value != expected:
        raise InvariantViolation(f"multiple sum {value} != {expected} at q={q}, ℓ={ell}")
    return value


@lru_cache(maxsize=32)
def _twisted_divisor_sums(chi: DirichletCharacter, D: int) -> np.ndarray:
    """``s[d] = sum_{t | d} μ(t)χ(t)`` for d <= D."""
    mu = moebius_table(D)
    r = np.arange(D + 1) % chi.modulus
    vals = np.array([chi(k) for k in range(chi.modulus)], dtype=complex)[r]
    s = np.zeros(D + 1, dtype=complex)
    for t in np.nonzero(mu)[0]:
        if t and vals[t]:
            s[t::t] += mu[t] * vals[t]
    return s


def sigma_partial(chi: DirichletCharacter, ell: int, D: int) -> complex:
    """``sum_{ℓ | d <= D} μ(d)/d sum_{t | d} μ(t)χ(t)``."""
    if ell < 1 or D < ell:
        raise DomainError(f"need 1 <= ℓ <= D, got ℓ={ell}, D={D}")
    mu = moebius_table(D)
    s = _twisted_divisor_sums(chi, D)
    d = np.arange(ell, D + 1, ell)
    return complex(np.sum(mu[d] * s[d] / d))


def sigma_p_partial(chi: DirichletCharacter, ell: int, p: int, D: int) -> complex:
    """As ``sigma_partial`` but over d ≡ 0 (pℓ), with the inner sum over t | d/p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    step = math.lcm(p, ell)
    if ell < 1 or D < step:
        raise DomainError(f"need D >= lcm(p, ℓ) = {step}")
    mu = moebius_table(D)
    s = _twisted_divisor_sums(chi, D)
    d = np.arange(step, D + 1, step)
    return complex(np.sum(mu[d] * s[d // p] / d))


def singular_series_demo(a: int, X: int) -> float:
    """``sum_{q <= X} μ²(q)/φ(q)² c_q(a)`` for even a."""
    if a < 2 or a % 2:
        raise DomainError(f"shift must be even and >= 2, got {a}")
    if X < 1:
        raise DomainError(f"cutoff must be >= 1, got {X}")
    terms = (c_kluyver(q, a) / euler_phi(q) ** 2 for q in range(1, X + 1) if moebius(q))
    return math.fsum(terms)


TWIN_PRIME_BOUND = 10**7


@lru_cache(maxsize=4)
def _twin_constant_log(bound: int) -> float:
    p = _primes_array(bound)[1:].astype(float)  # odd primes
    head = math.fsum(np.log1p(-1.0 / (p - 1.0) ** 2))
    # sum_{p > X} 1/p^2 ≈ int_X^oo dt/(t^2 log t), asymptotic in 1/log X
    L = math.log(bound)
    return head - (1 - 1 / L + 2 / L**2 - 6 / L**3) / (bound * L)


def singular_series_euler(a: int, bound: int = TWIN_PRIME_BOUND) -> float:
    """``2 prod_{p>2} (1 - 1/(p-1)²) prod_{p | a, p > 2} (p-1)/(p-2)``."""
    if a < 2 or a % 2:
        raise DomainError(f"shift must be even and >= 2, got {a}")
    local = math.prod((p - 1) / (p - 2) for p in factorize(a).primes if p > 2)
    return 2.0 * math.exp(_twin_constant_log(bound)) * local
