"""Elementary arithmetic functions, windows and Dirichlet convolution.

Everything exact runs on :class:`fractions.Fraction`.  The only floating
point objects here are :class:`RealWindow` tables, used for the logarithmic
functions (von Mangoldt, log) that have no rational values.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence, Union

import numpy as np

SIEVE_BOUND = 10**6


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class InvariantViolation(ArithmeticError):
    """Two routes that must agree did not (an identity failed)."""


# ---------------------------------------------------------------------------
# sieves


def prime_mask(limit: int) -> np.ndarray:
    """Boolean array ``mask[n]`` telling whether n is prime, for 0 <= n <= limit."""
    mask = np.ones(max(limit, 1) + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask


@lru_cache(maxsize=8)
def _primes_array(limit: int) -> np.ndarray:
    return np.flatnonzero(prime_mask(limit))


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    return [int(p) for p in _primes_array(limit)]


def moebius_table(limit: int) -> np.ndarray:
    """μ(n) for 0 <= n <= limit (entry 0 is 0)."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in _primes_array(limit) if limit >= 2 else ():
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return mu


def phi_table(limit: int) -> np.ndarray:
    """Euler totient for 0 <= n <= limit (entry 0 is 0)."""
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in _primes_array(limit) if limit >= 2 else ():
        p = int(p)
        phi[p::p] -= phi[p::p] // p
    return phi


def spf_table(limit: int) -> np.ndarray:
    """Smallest prime factor of n for 2 <= n <= limit; entries 0, 1 are 0, 1."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        spf[1] = 1
    for p in _primes_array(limit) if limit >= 2 else ():
        p = int(p)
        block = spf[p::p]
        block[block == 0] = p
    return spf


# ---------------------------------------------------------------------------
# factorization and pointwise functions


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, v in self.factors:
            if p <= last or v < 1:
                raise InvariantViolation(f"bad factorization {self.factors}")
            last = p
            prod *= p**v
        if prod != self.n:
            raise InvariantViolation(f"{self.factors} does not multiply to {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def valuation(self, p: int) -> int:
        for q, v in self.factors:
            if q == p:
                return v
        return 0

    def __iter__(self):
        return iter(self.factors)


def _check_positive(n: int, name: str = "n") -> None:
    if n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n}")


@lru_cache(maxsize=1 << 16)
def factorize(n: int, bound: int = SIEVE_BOUND) -> Factorization:
    """Trial division by the primes below ``bound``, then by odd integers."""
    _check_positive(n)
    factors = []
    m = n
    for p in _primes_array(bound):
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            v = 0
            while m % p == 0:
                m //= p
                v += 1
            factors.append((p, v))
    else:
        # cofactor may still hold primes above the sieve bound
        p = bound + 1 if bound % 2 == 0 else bound + 2
        while p * p <= m:
            if m % p == 0:
                v = 0
                while m % p == 0:
                    m //= p
                    v += 1
                factors.append((p, v))
            p += 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


@lru_cache(maxsize=1 << 16)
def divisors(n: int) -> tuple[int, ...]:
    """Sorted divisors of n."""
    divs = [1]
    for p, v in factorize(n):
        divs = [d * p**k for d in divs for k in range(v + 1)]
    return tuple(sorted(divs))


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(v > 1 for _, v in fac):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def euler_phi(n: int) -> int:
    result = 1
    for p, v in factorize(n):
        result *= p ** (v - 1) * (p - 1)
    return result


def kappa(n: int) -> int:
    """Square-free kernel (radical) of n."""
    return math.prod(factorize(n).primes)


def omega(n: int) -> int:
    return len(factorize(n).factors)


def big_omega(n: int) -> int:
    return sum(v for _, v in factorize(n))


def liouville(n: int) -> int:
    return -1 if big_omega(n) % 2 else 1


def von_mangoldt(n: int) -> float:
    fac = factorize(n)
    if len(fac.factors) == 1:
        return math.log(fac.factors[0][0])
    return 0.0


def is_squarefree(n: int) -> bool:
    return moebius(n) != 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    fac = factorize(n)
    return fac.factors == ((n, 1),)


def coprimality_detector(a: int, b: int) -> tuple[int, int]:
    """``1_{(a,b)=1}`` as the Möbius sum over common divisors, and via gcd."""
    _check_positive(a, "a")
    _check_positive(b, "b")
    g = math.gcd(a, b)
    via_moebius = sum(moebius(d) for d in divisors(g))
    via_gcd = int(g == 1)
    if via_moebius != via_gcd:
        raise InvariantViolation(f"coprimality routes disagree at ({a}, {b})")
    return via_moebius, via_gcd


# ---------------------------------------------------------------------------
# windows

Number = Union[int, Fraction]


@dataclass(frozen=True)
class ArithWindow:
    """An exact arithmetic function tabulated on ``[1, M]``.

    ``tail_zero`` records that the function is known to vanish beyond M;
    transforms use it to tell exact results from truncations.
    """

    values: tuple[Fraction, ...]
    tail_zero: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.values:
            raise DomainError("a window needs M >= 1")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def from_function(cls, fn: Callable[[int], Number], M: int, *, tail_zero=False, name=""):
        _check_positive(M, "M")
        return cls(tuple(Fraction(fn(n)) for n in range(1, M + 1)), tail_zero, name)

    @classmethod
    def from_mapping(cls, mapping: dict[int, Number], M: int, *, tail_zero=True, name=""):
        vals = [Fraction(0)] * M
        for n, v in mapping.items():
            if not 1 <= n <= M:
                raise DomainError(f"index {n} outside [1, {M}]")
            vals[n - 1] = Fraction(v)
        return cls(tuple(vals), tail_zero, name)

    @property
    def M(self) -> int:
        return len(self.values)

    is_real = False

    def __call__(self, n: int) -> Fraction:
        if not 1 <= n <= self.M:
            if self.tail_zero and n > self.M:
                return Fraction(0)
            raise DomainError(f"argument {n} outside window [1, {self.M}]")
        return self.values[n - 1]

    def __iter__(self):
        return iter(self.values)

    def items(self):
        return zip(range(1, self.M + 1), self.values)

    def support(self) -> list[int]:
        return [n for n, v in self.items() if v]

    def restrict(self, M: int, *, tail_zero: bool | None = None) -> "ArithWindow":
        if M > self.M:
            raise DomainError(f"cannot restrict a window on [1, {self.M}] to [1, {M}]")
        tz = self.tail_zero if tail_zero is None else tail_zero
        return ArithWindow(self.values[:M], tz, self.name)

    def pointwise(self, other: "ArithWindow | Callable[[int], Number]") -> "ArithWindow":
        """Pointwise product with another window or an integer function."""
        return ArithWindow(
            tuple(v * Fraction(other(n)) for n, v in self.items()), self.tail_zero, self.name
        )

    def __add__(self, other: "ArithWindow") -> "ArithWindow":
        M = min(self.M, other.M)
        return ArithWindow(tuple(a + b for a, b in zip(self.values[:M], other.values[:M])))

    def __sub__(self, other: "ArithWindow") -> "ArithWindow":
        M = min(self.M, other.M)
        return ArithWindow(tuple(a - b for a, b in zip(self.values[:M], other.values[:M])))

    def to_real(self) -> "RealWindow":
        return RealWindow(np.array([float(v) for v in self.values]), self.tail_zero, self.name)


@dataclass(frozen=True, eq=False)
class RealWindow:
    """Double-precision window on ``[1, M]``; ``values[n-1]`` holds f(n)."""

    values: np.ndarray
    tail_zero: bool = False
    name: str = ""

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("a real window needs a non-empty 1-d array")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_function(cls, fn: Callable[[int], float], M: int, *, tail_zero=False, name=""):
        _check_positive(M, "M")
        return cls(np.array([fn(n) for n in range(1, M + 1)], dtype=float), tail_zero, name)

    @property
    def M(self) -> int:
        return int(self.values.size)

    is_real = True

    def __call__(self, n: int) -> float:
        if not 1 <= n <= self.M:
            if self.tail_zero and n > self.M:
                return 0.0
            raise DomainError(f"argument {n} outside window [1, {self.M}]")
        return float(self.values[n - 1])

    def items(self):
        return zip(range(1, self.M + 1), (float(v) for v in self.values))

    def support(self, tol: float = 0.0) -> list[int]:
        return [int(i) + 1 for i in np.flatnonzero(np.abs(self.values) > tol)]

    def restrict(self, M: int, *, tail_zero: bool | None = None) -> "RealWindow":
        if M > self.M:
            raise DomainError(f"cannot restrict a window on [1, {self.M}] to [1, {M}]")
        tz = self.tail_zero if tail_zero is None else tail_zero
        return RealWindow(self.values[:M].copy(), tz, self.name)

    def pointwise(self, other) -> "RealWindow":
        mult = np.array([float(other(n)) for n in range(1, self.M + 1)])
        return RealWindow(self.values * mult, self.tail_zero, self.name)

    def to_real(self) -> "RealWindow":
        return self


AnyWindow = Union[ArithWindow, RealWindow]


def _as_array(w: AnyWindow, M: int) -> np.ndarray:
    if isinstance(w, RealWindow):
        return np.asarray(w.values[:M], dtype=float)
    return np.array([float(v) for v in w.values[:M]])


def dirichlet_convolve(f: AnyWindow, g: AnyWindow, M: int | None = None) -> AnyWindow:
    """``(f * g)(n) = sum_{d | n} f(d) g(n/d)`` for n <= M.

    Exact when both inputs are exact windows, double precision otherwise.
    """
    if M is None:
        M = min(f.M, g.M)
    _check_positive(M, "M")
    if f.M < M or g.M < M:
        raise DomainError(f"windows [1, {f.M}] and [1, {g.M}] do not cover [1, {M}]")
    tail = f.tail_zero and g.tail_zero and M >= f.M * g.M
    if f.is_real or g.is_real:
        fa, ga = _as_array(f, M), _as_array(g, M)
        out = np.zeros(M + 1)
        for d in range(1, M + 1):
            fd = fa[d - 1]
            if fd:
                out[d::d] += fd * ga[: M // d]
        return RealWindow(out[1:], tail)
    out = [Fraction(0)] * (M + 1)
    gv = g.values
    for d in range(1, M + 1):
        fd = f.values[d - 1]
        if not fd:
            continue
        for k in range(1, M // d + 1):
            gk = gv[k - 1]
            if gk:
                out[d * k] += fd * gk
    return ArithWindow(tuple(out[1:]), tail)


def moebius_window(M: int) -> ArithWindow:
    mu = moebius_table(M)
    return ArithWindow(tuple(Fraction(int(v)) for v in mu[1:]), name="moebius")


def eratosthenes_transform(f: AnyWindow, M: int | None = None) -> AnyWindow:
    """``f' = f * μ``; inverts divisor summation."""
    M = f.M if M is None else M
    if f.M < M:
        raise DomainError(f"window [1, {f.M}] does not cover [1, {M}]")
    result = dirichlet_convolve(f, moebius_window(M), M)
    if isinstance(result, ArithWindow):
        return ArithWindow(result.values, False, f"{f.name}'")
    return RealWindow(result.values, False, f"{f.name}'")


def divisor_sum(f: AnyWindow, M: int | None = None) -> AnyWindow:
    """``f * 1``."""
    M = f.M if M is None else M
    return dirichlet_convolve(f, builtin_window("one", M), M)


def moebius_sum_to_product(f: Callable[[int], Number], n: int) -> tuple[Fraction, Fraction]:
    """Both sides of ``sum_{d|n} μ(d) f(d) = prod_{p|n} (1 - f(p))`` for multiplicative f.

    A mismatch means f was not multiplicative after all.
    """
    _check_positive(n)
    lhs = sum((moebius(d) * Fraction(f(d)) for d in divisors(n)), Fraction(0))
    rhs = Fraction(1)
    for p in factorize(n).primes:
        rhs *= 1 - Fraction(f(p))
    if lhs != rhs:
        raise InvariantViolation(f"Möbius divisor sum {lhs} != prime product {rhs} at n={n}")
    return lhs, rhs


# ---------------------------------------------------------------------------
# named windows

EXACT_BUILTINS: dict[str, Callable[[int], int]] = {
    "one": lambda n: 1,
    "unit": lambda n: int(n == 1),
    "id": lambda n: n,
    "moebius": moebius,
    "phi": euler_phi,
    "liouville": liouville,
    "mu_squared": lambda n: moebius(n) ** 2,
    "indicator_primes": lambda n: int(is_prime(n)),
    "kappa": kappa,
    "omega": omega,
}

REAL_BUILTINS: dict[str, Callable[[int], float]] = {
    "von_mangoldt": von_mangoldt,
    "log": lambda n: math.log(n),
}


def builtin_window(name: str, M: int) -> AnyWindow:
    """Named window on [1, M]; see ``EXACT_BUILTINS`` and ``REAL_BUILTINS``."""
    _check_positive(M, "M")
    if name in EXACT_BUILTINS:
        if name == "moebius":
            return moebius_window(M)
        if name == "phi":
            return ArithWindow(tuple(Fraction(int(v)) for v in phi_table(M)[1:]), name=name)
        tail = name == "unit"
        return ArithWindow.from_function(EXACT_BUILTINS[name], M, tail_zero=tail, name=name)
    if name in REAL_BUILTINS:
        return RealWindow.from_function(REAL_BUILTINS[name], M, name=name)
    raise DomainError(f"unknown window {name!r}")


def read_window_csv(path: str | Path, M: int | None = None, *, tail_zero: bool = True) -> ArithWindow:
    """Read rows ``n,numerator,denominator``; indices not listed are zero.

    A header row is skipped if its first field is not an integer.
    """
    entries: dict[int, Fraction] = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip() or row[0].lstrip().startswith("#"):
                continue
            try:
                n = int(row[0])
            except ValueError:
                continue
            num = int(row[1])
            den = int(row[2]) if len(row) > 2 and row[2].strip() else 1
            if den == 0:
                raise DomainError(f"zero denominator at n={n}")
            if n < 1:
                raise DomainError(f"index {n} is not positive")
            entries[n] = Fraction(num, den)
    if not entries and M is None:
        raise DomainError(f"{path}: no rows")
    top = max(entries, default=1)
    M = top if M is None else M
    if top > M:
        raise DomainError(f"{path}: index {top} exceeds requested bound {M}")
    return ArithWindow.from_mapping(entries, M, tail_zero=tail_zero, name=Path(path).stem)


def write_window_csv(window: ArithWindow, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "numerator", "denominator"])
        for n, v in window.items():
            if v:
                writer.writerow([n, v.numerator, v.denominator])


def windows_equal(a: AnyWindow, b: AnyWindow, tol: float = 0.0) -> bool:
    M = min(a.M, b.M)
    if not (a.is_real or b.is_real) and tol == 0.0:
        return a.values[:M] == b.values[:M]
    return bool(np.allclose(_as_array(a, M), _as_array(b, M), rtol=0.0, atol=tol))


def fraction_sum(values: Iterable[Number]) -> Fraction:
    return sum((Fraction(v) for v in values), Fraction(0))


def common_denominator(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale rationals to integers over their least common denominator."""
    den = 1
    for v in values:
        den = math.lcm(den, Fraction(v).denominator)
    return [int(Fraction(v) * den) for v in values], den
