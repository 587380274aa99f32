"""Correlations ``C(N, a) = sum_{n <= N} f(n) g_Q(n + a)`` with a truncated g.

g_Q is stored through its Eratosthenes transform g' on [1, Q]; the shift a
only ever enters as the argument of g_Q, which is what makes the
correlation fair and lets its Ramanujan expansion be finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .arith import (
    AnyWindow,
    DomainError,
    InvariantViolation,
    divisors,
    euler_phi,
    is_prime,
    kappa,
    moebius,
)
from .ramanujan import c_kluyver
from .transforms import PeriodicFunction, RamanujanCoefficients

Scalar = Union[Fraction, float]

# one period of C is tabulated for period detection; lcm(1..Q) grows fast
MAX_PERIOD = 2 * 10**6
REAL_TOL = 1e-9


class HypothesisError(DomainError):
    """A structural condition required by an operation does not hold."""


@dataclass(frozen=True)
class TruncatedDivisorSum:
    """``g_Q(m) = sum_{d | m, d <= Q} g'(d)`` with ``gprime[d-1] = g'(d)``."""

    gprime: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.gprime:
            raise DomainError("range Q must be >= 1")
        vals = tuple(v if isinstance(v, float) else Fraction(v) for v in self.gprime)
        object.__setattr__(self, "gprime", vals)

    @property
    def range(self) -> int:
        return len(self.gprime)

    @property
    def exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.gprime)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(d for d, v in enumerate(self.gprime, start=1) if v)

    @property
    def exact_range(self) -> int:
        """Largest d with g'(d) != 0 (0 for the zero function)."""
        return max(self.support, default=0)

    def __call__(self, m: int) -> Scalar:
        zero = Fraction(0) if self.exact else 0.0
        return sum((self.gprime[d - 1] for d in self.support if m % d == 0), zero)

    def table(self, M: int) -> list:
        """``[g_Q(1), ..., g_Q(M)]`` by sieving over the support."""
        out = [Fraction(0) if self.exact else 0.0] * (M + 1)
        for d in self.support:
            v = self.gprime[d - 1]
            for m in range(d, M + 1, d):
                out[m] += v
        return out[1:]

    @cached_property
    def coefficients(self) -> RamanujanCoefficients:
        """``ĝ_Q(ell) = sum_{d <= Q, ell | d} g'(d)/d``; supported on [1, Q]."""
        Q = self.range
        vals = {}
        for ell in range(1, Q + 1):
            s = sum((self.gprime[d - 1] / d for d in range(ell, Q + 1, ell) if self.gprime[d - 1]), 0)
            if s:
                vals[ell] = s
        if self.exact:
            return RamanujanCoefficients.finite(vals, Q, name="g_hat")
        # float coefficients: bypass Fraction conversion
        G = RamanujanCoefficients.finite({}, Q, name="g_hat")
        object.__setattr__(G, "values", vals)
        return G

    def gprime_squarefree_supported(self) -> bool:
        return all(moebius(d) != 0 for d in self.support)

    def is_ipp(self, M: int | None = None) -> bool:
        """Whether ``g_Q(m) = g_Q(κ(m))`` for m <= M (default Q, which suffices)."""
        M = self.range if M is None else M
        tab = self.table(M)
        return all(tab[m - 1] == tab[kappa(m) - 1] for m in range(1, M + 1))


def truncate(gprime: AnyWindow, Q: int) -> TruncatedDivisorSum:
    """Keep the divisors d <= Q of g; the result agrees with g on [1, Q]."""
    if Q < 1:
        raise DomainError(f"range must be >= 1, got {Q}")
    if gprime.M < Q:
        raise DomainError(f"g' known on [1, {gprime.M}] only, need [1, {Q}]")
    if gprime.is_real:
        return TruncatedDivisorSum(tuple(float(v) for v in gprime.values[:Q]))
    return TruncatedDivisorSum(gprime.values[:Q])


def gprime_from_coefficients(ghat: RamanujanCoefficients, d: int, Q: int | None = None) -> Scalar:
    """Recover ``g'(d) = d sum_{K <= Q/d} μ(K) ĝ(dK)`` from the coefficients."""
    Q = ghat.support_bound if Q is None else Q
    if not 1 <= d <= Q:
        raise DomainError(f"divisor {d} outside [1, {Q}]")
    return d * sum((moebius(K) * ghat(d * K) for K in range(1, Q // d + 1)), Fraction(0))


@dataclass(frozen=True)
class CorrelationInstance:
    """f on [1, N] with a range-Q truncated divisor sum, Q <= N.

    Two structural conditions are evaluated lazily: square-free supported
    ĝ_Q ("squarefree") and f supported on primes ("primes").  Those named in
    ``require`` are checked on construction.
    """

    f: AnyWindow
    g: TruncatedDivisorSum
    N: int
    require: tuple[str, ...] = ()

    def __post_init__(self):
        if self.N < 1:
            raise DomainError(f"length must be >= 1, got {self.N}")
        if self.g.range > self.N:
            raise HypothesisError(f"range Q={self.g.range} exceeds length N={self.N}")
        if self.f.M < self.N:
            raise DomainError(f"f known on [1, {self.f.M}] only, need [1, {self.N}]")
        if self.f.M > self.N:
            object.__setattr__(self, "f", self.f.restrict(self.N))
        self.check(*self.require)

    @property
    def Q(self) -> int:
        return self.g.range

    @property
    def exact(self) -> bool:
        return not self.f.is_real and self.g.exact

    @cached_property
    def f_support(self) -> tuple[tuple[int, Scalar], ...]:
        return tuple((n, v) for n, v in self.f.items() if v)

    @cached_property
    def squarefree_coefficients(self) -> bool:
        by_coeff = self.g.coefficients.is_squarefree_supported()
        if by_coeff != self.g.gprime_squarefree_supported():
            raise InvariantViolation("ĝ_Q and g'_Q disagree on square-free support")
        return by_coeff

    @cached_property
    def prime_supported(self) -> bool:
        return all(is_prime(n) for n, _ in self.f_support)

    def conditions(self) -> dict[str, bool]:
        return {"squarefree": self.squarefree_coefficients, "primes": self.prime_supported}

    def check(self, *names: str) -> None:
        what = {"squarefree": "ĝ_Q is not square-free supported", "primes": "f is not supported on primes"}
        for name in names:
            if name not in what:
                raise DomainError(f"unknown condition {name!r}")
            if not self.conditions()[name]:
                raise HypothesisError(what[name])

    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0


def correlate(inst: CorrelationInstance, a: int) -> Scalar:
    """``sum_{n <= N} f(n) g_Q(n + a)``."""
    if a < 1:
        raise DomainError(f"shift must be >= 1, got {a}")
    g = inst.g
    return sum((v * g(n + a) for n, v in inst.f_support), inst.zero())


def correlation_table(inst: CorrelationInstance, shifts: Sequence[int]) -> list[Scalar]:
    """``C(a)`` for many shifts, from one sieved table of g_Q."""
    if not shifts:
        return []
    if min(shifts) < 1:
        raise DomainError("shifts must be >= 1")
    gtab = inst.g.table(inst.N + max(shifts))
    return [sum((v * gtab[n + a - 1] for n, v in inst.f_support), inst.zero()) for a in shifts]


@dataclass(frozen=True)
class CutRemainder:
    remainder: Scalar  # C_{f,g}(N, a) - C_{f,g_N}(N, a)
    congruence_sum: Scalar  # sum_{N < q <= N+a} g'(q) sum_{n <= N, n ≡ -a (q)} f(n)
    bound: Scalar  # ||f|| ||g'|| a


def divisors_cut_remainder(f: AnyWindow, gprime: AnyWindow, N: int, a: int) -> CutRemainder:
    """Effect of cutting the divisors of g above N, by two routes."""
    if a < 1 or N < 1:
        raise DomainError("N and a must be >= 1")
    if gprime.M < N + a:
        raise DomainError(f"g' must be known on [1, {N + a}]")
    if f.M < N:
        raise DomainError(f"f must be known on [1, {N}]")
    full = TruncatedDivisorSum(tuple(gprime(d) for d in range(1, N + a + 1)))
    cut = TruncatedDivisorSum(tuple(gprime(d) for d in range(1, N + 1)))
    zero = Fraction(0) if not (f.is_real or gprime.is_real) else 0.0
    fs = [(n, f(n)) for n in range(1, N + 1)]
    c_full = sum((v * full(n + a) for n, v in fs), zero)
    c_cut = sum((v * cut(n + a) for n, v in fs), zero)
    remainder = c_full - c_cut
    congruence = zero
    for q in range(N + 1, N + a + 1):
        gq = gprime(q)
        if gq:
            congruence += gq * sum((v for n, v in fs if (n + a) % q == 0), zero)
    f_norm = max(abs(v) for _, v in fs)
    g_norm = max(abs(gprime(d)) for d in range(N + 1, N + a + 1))
    bound = f_norm * g_norm * a
    if zero == 0 and isinstance(zero, Fraction):
        agree = remainder == congruence
    else:
        agree = abs(remainder - congruence) <= REAL_TOL * (1 + abs(remainder))
    if not agree:
        raise InvariantViolation(f"divisors' cut: {remainder} != {congruence} (N={N}, a={a})")
    if abs(remainder) > bound:
        raise InvariantViolation(f"divisors' cut remainder {remainder} exceeds bound {bound}")
    return CutRemainder(remainder, congruence, bound)


def bh_coefficients(inst: CorrelationInstance) -> RamanujanCoefficients:
    return inst.g.coefficients


def correlation_coefficient(inst: CorrelationInstance, ell: int) -> Scalar:
    """``ĝ_Q(ell)/φ(ell) sum_{n <= N} f(n) c_ell(n)``; zero beyond Q."""
    if ell < 1:
        raise DomainError(f"index must be >= 1, got {ell}")
    if ell > inst.Q:
        return inst.zero()
    gh = inst.g.coefficients(ell)
    if not gh:
        return inst.zero()
    s = sum((v * c_kluyver(ell, n) for n, v in inst.f_support), inst.zero())
    if inst.exact:
        return gh * s / euler_phi(ell)
    return float(gh) * float(s) / euler_phi(ell)


def correlation_coefficients(inst: CorrelationInstance) -> dict[int, Scalar]:
    return {ell: correlation_coefficient(inst, ell) for ell in range(1, inst.Q + 1)}


def _agree(inst: CorrelationInstance, x: Scalar, y: Scalar) -> bool:
    if inst.exact:
        return x == y
    return abs(x - y) <= REAL_TOL * inst.N * (1 + abs(y))


def expansion_eval(inst: CorrelationInstance, a: int, coeffs: dict[int, Scalar] | None = None) -> Scalar:
    """Finite Ramanujan expansion of C at shift a, checked against the direct sum."""
    coeffs = correlation_coefficients(inst) if coeffs is None else coeffs
    value = sum((w * c_kluyver(ell, a) for ell, w in coeffs.items() if w), inst.zero())
    direct = correlate(inst, a)
    if not _agree(inst, value, direct):
        raise InvariantViolation(f"finite expansion {value} != correlation {direct} at a={a}")
    return value


def period_bound(inst: CorrelationInstance) -> int:
    """lcm of the moduli carrying ĝ_Q; C is periodic with this period.

    It divides lcm(1, ..., Q).
    """
    supp = inst.g.coefficients.support()
    return math.lcm(*supp) if supp else 1


def period_function(inst: CorrelationInstance) -> PeriodicFunction:
    """One period (of length ``period_bound``) of the correlation."""
    if not inst.exact:
        raise DomainError("period functions are exact; this instance is real-valued")
    L = period_bound(inst)
    if L > MAX_PERIOD:
        raise DomainError(f"period bound {L} exceeds {MAX_PERIOD}")
    values = correlation_table(inst, range(1, L + 1))
    return PeriodicFunction.from_function(lambda a: values[a - 1], L)


def correlation_period(inst: CorrelationInstance) -> int:
    """Least T >= 1 with C(a + T) = C(a), checked over two full windows."""
    L = period_bound(inst)
    if L > MAX_PERIOD:
        raise DomainError(f"period bound {L} exceeds {MAX_PERIOD}")
    values = correlation_table(inst, range(1, 2 * L + 1))
    if values[:L] != values[L:]:
        raise InvariantViolation(f"correlation is not {L}-periodic")
    for T in divisors(L):
        if all(values[a] == values[a + T] for a in range(L)):
            return T
    raise InvariantViolation("no period found")  # unreachable: T = L works


def is_even_periodic(inst: CorrelationInstance) -> bool:
    """Whether C(a) depends only on gcd(a, L), L the period bound.

    Any finite combination of Ramanujan sums has this property, so the
    finite expansion can only reproduce C when it holds.
    """
    L = period_bound(inst)
    if L > MAX_PERIOD:
        raise DomainError(f"period bound {L} exceeds {MAX_PERIOD}")
    values = correlation_table(inst, range(1, L + 1))
    return all(values[a - 1] == values[math.gcd(a, L) - 1] for a in range(1, L + 1))
