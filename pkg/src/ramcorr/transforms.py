"""Wintner and Carmichael transforms, Ramanujan series and IPPification.

Results that may be truncations carry an ``exact`` flag: a PARTIAL value is
a finite partial sum of a series whose tail was not evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .arith import (
    AnyWindow,
    ArithWindow,
    DomainError,
    InvariantViolation,
    RealWindow,
    common_denominator,
    dirichlet_convolve,
    divisors,
    eratosthenes_transform,
    euler_phi,
    factorize,
    is_prime,
    kappa,
    moebius,
    moebius_table,
    primes_up_to,
    builtin_window,
)
from .ramanujan import c_kluyver

IPP_TOL = 1e-9


@dataclass(frozen=True)
class Flagged:
    value: Fraction | float
    exact: bool

    @property
    def flag(self) -> str:
        return "EXACT" if self.exact else "PARTIAL"


@dataclass(frozen=True, eq=False)
class RamanujanCoefficients:
    """Coefficients G(q) of a Ramanujan expansion.

    Either a finite table (``support_bound`` set, entries beyond it zero) or
    a named family given by ``generator`` with unbounded support.
    """

    values: Mapping[int, Fraction] = field(default_factory=dict)
    support_bound: int | None = None
    generator: Callable[[int], Fraction] | None = None
    multiplicative: bool = False
    name: str = ""

    def __post_init__(self):
        clean = {int(q): Fraction(v) for q, v in self.values.items() if v}
        if self.generator is None:
            bound = self.support_bound
            if bound is None:
                bound = max(clean, default=1)
                object.__setattr__(self, "support_bound", bound)
            if any(q < 1 or q > bound for q in clean):
                raise DomainError(f"coefficient index outside [1, {bound}]")
        object.__setattr__(self, "values", clean)

    @classmethod
    def finite(cls, mapping: Mapping[int, Fraction], bound: int | None = None, name=""):
        return cls(dict(mapping), bound, None, False, name)

    @property
    def finite_support(self) -> bool:
        return self.generator is None

    def __call__(self, q: int) -> Fraction:
        if q < 1:
            raise DomainError(f"index must be >= 1, got {q}")
        if self.generator is not None:
            try:
                v = self.generator(q)
            except (ZeroDivisionError, ValueError) as exc:
                raise DomainError(f"{self.name or 'G'} undefined at {q}") from exc
            if v is None:
                raise DomainError(f"{self.name or 'G'} undefined at {q}")
            return Fraction(v)
        return self.values.get(q, Fraction(0))

    def support(self) -> list[int]:
        if not self.finite_support:
            raise DomainError("unbounded support")
        return sorted(self.values)

    def is_squarefree_supported(self) -> bool:
        return all(moebius(q) != 0 for q in self.support())


def R0() -> RamanujanCoefficients:
    """1/q: Ramanujan's coefficients of the null function."""
    return RamanujanCoefficients(generator=lambda q: Fraction(1, q), multiplicative=True, name="R0")


def H0() -> RamanujanCoefficients:
    """1/φ(q)."""
    return RamanujanCoefficients(
        generator=lambda q: Fraction(1, euler_phi(q)), multiplicative=True, name="H0"
    )


def singular_series_coefficients() -> RamanujanCoefficients:
    """μ²(q)/φ(q)², the twin-prime singular series coefficients."""
    return RamanujanCoefficients(
        generator=lambda q: Fraction(moebius(q) ** 2, euler_phi(q) ** 2),
        multiplicative=True,
        name="mu2/phi2",
    )


def unit_coefficients() -> RamanujanCoefficients:
    return RamanujanCoefficients.finite({1: Fraction(1)}, 1, name="unit")


@dataclass(frozen=True)
class PeriodicFunction:
    """One full period of an integer-argument function; ``F(a) = values[a % T]``."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise DomainError("period must be >= 1")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def from_function(cls, fn: Callable[[int], Fraction], T: int) -> "PeriodicFunction":
        if T < 1:
            raise DomainError("period must be >= 1")
        vals = [Fraction(0)] * T
        for a in range(1, T + 1):
            vals[a % T] = Fraction(fn(a))
        return cls(tuple(vals))

    @property
    def period(self) -> int:
        return len(self.values)

    def __call__(self, a: int) -> Fraction:
        return self.values[a % self.period]


def periodic_from_expansion(G: RamanujanCoefficients) -> PeriodicFunction:
    """``a -> sum_q G(q) c_q(a)`` for finitely supported G, over one period."""
    supp = G.support()
    T = math.lcm(*supp) if supp else 1
    return PeriodicFunction.from_function(
        lambda a: sum((G(q) * c_kluyver(q, a) for q in supp), Fraction(0)), T
    )


# ---------------------------------------------------------------------------
# transforms


def wintner_coefficient(fprime, ell: int, cutoff: int | None = None) -> Flagged:
    """``sum_{d <= D, ell | d} F'(d)/d`` from the Eratosthenes transform F'.

    ``fprime`` is an exact or real window, or a callable (summed in floating
    point).  The result is EXACT only for an exact window that is known to
    vanish beyond the cutoff.
    """
    if ell < 1:
        raise DomainError(f"index must be >= 1, got {ell}")
    if isinstance(fprime, (ArithWindow, RealWindow)):
        D = fprime.M if cutoff is None else cutoff
        if D < ell:
            raise DomainError(f"cutoff {D} below index {ell}")
        if D > fprime.M and not fprime.tail_zero:
            raise DomainError(f"window [1, {fprime.M}] does not reach cutoff {D}")
        top = min(D, fprime.M)
        if isinstance(fprime, RealWindow):
            d = np.arange(ell, top + 1, ell)
            return Flagged(float((fprime.values[d - 1] / d).sum()), False)
        total = sum(
            (fprime.values[d - 1] / d for d in range(ell, top + 1, ell) if fprime.values[d - 1]),
            Fraction(0),
        )
        exact = fprime.tail_zero and all(not v for v in fprime.values[D:])
        return Flagged(total, exact)
    if cutoff is None:
        raise DomainError("a cutoff is required for a function argument")
    if cutoff < ell:
        raise DomainError(f"cutoff {cutoff} below index {ell}")
    total = math.fsum(float(fprime(d)) / d for d in range(ell, cutoff + 1, ell))
    return Flagged(total, False)


def wintner_transform(F: AnyWindow, ells, cutoff: int | None = None) -> dict[int, Flagged]:
    """Wintner coefficients of F itself (its Eratosthenes transform is taken first)."""
    fprime = eratosthenes_transform(F)
    return {ell: wintner_coefficient(fprime, ell, cutoff) for ell in ells}


def carmichael_coefficient(F: PeriodicFunction, ell: int) -> Fraction:
    """``(1/φ(ell))`` times the mean of ``F(a) c_ell(a)``, exact over one period lcm(T, ell)."""
    if ell < 1:
        raise DomainError(f"index must be >= 1, got {ell}")
    T = F.period
    L = math.lcm(T, ell)
    nums, den = common_denominator(F.values)
    total = sum(nums[a % T] * c_kluyver(ell, a) for a in range(1, L + 1))
    return Fraction(total, L * den * euler_phi(ell))


def ramanujan_series_eval(G: RamanujanCoefficients, a: int, cutoff: int) -> Flagged:
    """``sum_{q <= X} G(q) c_q(a)``.

    Exact rationals for finitely supported G (EXACT once X covers the
    support); floating point partial sums for unbounded families.
    """
    if a < 1:
        raise DomainError(f"argument must be >= 1, got {a}")
    if G.finite_support:
        total = sum(
            (G(q) * c_kluyver(q, a) for q in G.support() if q <= cutoff), Fraction(0)
        )
        return Flagged(total, cutoff >= G.support_bound)
    total = math.fsum(float(G(q)) * c_kluyver(q, a) for q in range(1, cutoff + 1))
    return Flagged(total, False)


MAX_SMOOTH_TERMS = 1 << 22


def _smooth_moduli(a: int, P: int, bound: int | None):
    """P-smooth q obeying ``v_p(q) <= v_p(a) + 1`` (and q <= bound)."""
    fa = factorize(a)
    caps = [(p, fa.valuation(p) + 1) for p in primes_up_to(P)]
    if bound is None and math.prod(k + 1 for _, k in caps) > MAX_SMOOTH_TERMS:
        raise DomainError(f"too many {P}-smooth moduli to enumerate; use the Euler product")
    out = [1]
    for p, cap in caps:
        grown = []
        for q in out:
            x = q
            for _ in range(cap + 1):
                if bound is not None and x > bound:
                    break
                grown.append(x)
                x *= p
        out = grown
    return sorted(out)


def smooth_series_eval(G: RamanujanCoefficients, a: int, P: int, method: str = "auto") -> Fraction:
    """Sum of ``G(q) c_q(a)`` over P-smooth q (a finite sum by the vertical limit).

    ``method`` is "enumerate" (sum over the moduli), "euler" (product of
    local factors, only for multiplicative G) or "auto".
    """
    if a < 1:
        raise DomainError(f"argument must be >= 1, got {a}")
    if not is_prime(P):
        raise DomainError(f"P must be prime, got {P}")
    if method == "auto":
        method = "enumerate" if G.finite_support or not G.multiplicative else "euler"
    if method == "euler":
        if not G.multiplicative:
            raise DomainError("Euler product route needs multiplicative coefficients")
        fa = factorize(a)
        total = Fraction(1)
        for p in primes_up_to(P):
            local = sum(
                (G(p**k) * c_kluyver(p**k, a) for k in range(fa.valuation(p) + 2)), Fraction(0)
            )
            total *= local
        return total
    if method != "enumerate":
        raise DomainError(f"unknown method {method!r}")
    bound = G.support_bound if G.finite_support else None
    total = Fraction(0)
    for q in _smooth_moduli(a, P, bound):
        cq = c_kluyver(q, a)
        if cq:
            total += G(q) * cq
    return total


# ---------------------------------------------------------------------------
# ignoring prime powers


def _kappa_route(F: AnyWindow, M: int):
    return [F(kappa(a)) for a in range(1, M + 1)]


def _values_match(xs, ys, real: bool) -> bool:
    if real:
        return bool(np.allclose(np.asarray(xs, float), np.asarray(ys, float), rtol=0, atol=IPP_TOL))
    return list(xs) == list(ys)


def is_ipp(F: AnyWindow, M: int | None = None) -> bool:
    """Whether F(a) = F(κ(a)) on [1, M]; cross-checked against F' = μ² F'."""
    M = F.M if M is None else M
    if M > F.M:
        raise DomainError(f"window [1, {F.M}] does not cover [1, {M}]")
    F = F.restrict(M)
    real = F.is_real
    by_kernel = _values_match([F(a) for a in range(1, M + 1)], _kappa_route(F, M), real)
    fprime = eratosthenes_transform(F, M)
    mu = moebius_table(M)
    fp_vals = [fprime(d) for d in range(1, M + 1)]
    killed = [v * int(mu[d]) ** 2 for d, v in enumerate(fp_vals, start=1)]
    by_transform = _values_match(fp_vals, killed, real)
    if by_kernel != by_transform:
        raise InvariantViolation(f"IPP routes disagree on {F.name or 'F'} over [1, {M}]")
    return by_kernel


def ippify(F: AnyWindow, M: int | None = None) -> AnyWindow:
    """``a -> F(κ(a))``, checked against ``(μ² · F') * 1``."""
    M = F.M if M is None else M
    if M > F.M:
        raise DomainError(f"window [1, {F.M}] does not cover [1, {M}]")
    F = F.restrict(M)
    via_kernel = _kappa_route(F, M)
    fprime = eratosthenes_transform(F, M)
    squarefree = fprime.pointwise(lambda d: moebius(d) ** 2)
    via_transform = dirichlet_convolve(squarefree, builtin_window("one", M), M)
    vt = [via_transform(a) for a in range(1, M + 1)]
    if not _values_match(via_kernel, vt, F.is_real):
        raise InvariantViolation(f"IPPification routes disagree on {F.name or 'F'}")
    if F.is_real:
        return RealWindow(np.array(via_kernel, dtype=float), name=f"{F.name}~")
    return ArithWindow(tuple(via_kernel), name=f"{F.name}~")


def moebius_pnt_partial_sum(D: int) -> Flagged:
    """``sum_{d <= D} μ(d)/d``, the first Wintner coefficient of the null function's F'."""
    mu = RealWindow(moebius_table(D)[1:].astype(float), name="moebius")
    return wintner_coefficient(mu, 1, D)


def ipp_transform_chain(gprime: ArithWindow) -> tuple[bool, bool]:
    """(g' square-free supported, divisor-sum of g' is IPP) on the window of g'."""
    sqfree = all(moebius(d) != 0 for d in gprime.support())
    g = dirichlet_convolve(gprime, builtin_window("one", gprime.M), gprime.M)
    return sqfree, is_ipp(g)


def wintner_of_finite_expansion(G: RamanujanCoefficients) -> dict[int, Fraction]:
    """Win_ell of ``a -> sum_q G(q) c_q(a)``: its F' is ``d -> d sum_{q: d|q} G(q) μ(q/d)``.

    Finite support makes the Wintner series finite, so this is exact.
    """
    supp = G.support()
    fprime: dict[int, Fraction] = {}
    for q in supp:
        for d in divisors(q):
            m = moebius(q // d)
            if m:
                fprime[d] = fprime.get(d, Fraction(0)) + d * m * G(q)
    top = max(supp, default=1)
    out = {}
    for ell in range(1, top + 1):
        out[ell] = sum((v / d for d, v in fprime.items() if d % ell == 0), Fraction(0))
    return out
