"""Dirichlet characters built from the cyclic decomposition of (Z/mZ)*.

A character of modulus m with value-group exponent e is stored as an
integer exponent k per residue (the value is exp(2πik/e)), with ``None`` on
residues sharing a factor with m.  Products of characters are exponent sums
mod e; complex numbers only appear when summing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .arith import DomainError, euler_phi, factorize


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    order: int  # exponent e of the value group; values are e-th roots of unity
    exponents: tuple[int | None, ...]
    index: tuple[int, ...] = ()

    @property
    def principal(self) -> bool:
        return all(k == 0 for k in self.exponents if k is not None)

    def exponent(self, n: int) -> int | None:
        return self.exponents[n % self.modulus]

    def __call__(self, n: int) -> complex:
        k = self.exponents[n % self.modulus]
        if k is None:
            return 0j
        return _root(k, self.order)

    def conj(self) -> "DirichletCharacter":
        e = self.order
        exps = tuple(None if k is None else (-k) % e for k in self.exponents)
        return DirichletCharacter(self.modulus, e, exps, tuple(-i for i in self.index))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise DomainError("characters of different moduli")
        e = math.lcm(self.order, other.order)
        sa, sb = e // self.order, e // other.order
        exps = tuple(
            None if a is None else (a * sa + b * sb) % e
            for a, b in zip(self.exponents, other.exponents)
        )
        return DirichletCharacter(self.modulus, e, exps)

    def values_key(self) -> tuple:
        """Canonical form of the value table, independent of the stored order."""
        out = []
        for k in self.exponents:
            if k is None:
                out.append(None)
            else:
                g = math.gcd(k, self.order)
                out.append((k // g, self.order // g) if k else (0, 1))
        return tuple(out)


@lru_cache(maxsize=4096)
def _root(k: int, e: int) -> complex:
    k %= e
    # exact values for the common real cases
    if k == 0:
        return 1 + 0j
    if 2 * k == e:
        return -1 + 0j
    if 4 * k == e:
        return 1j
    if 4 * k == 3 * e:
        return -1j
    return cmath.exp(2j * math.pi * k / e)


def primitive_root(pk: int) -> int:
    """Least generator of (Z/p^k Z)* for an odd prime power (or 2, 4)."""
    phi = euler_phi(pk)
    if pk in (1, 2):
        return 1
    qs = factorize(phi).primes
    for g in range(2, pk):
        if math.gcd(g, pk) == 1 and all(pow(g, phi // r, pk) != 1 for r in qs):
            return g
    raise DomainError(f"(Z/{pk}Z)* is not cyclic")


def _cyclic_factors(m: int) -> list[tuple[int, dict[int, int], int]]:
    """Cyclic factors of (Z/mZ)* as (prime-power modulus, log table, order)."""
    factors = []
    for p, k in factorize(m):
        pk = p**k
        if p == 2:
            if k == 1:
                continue
            if k == 2:
                factors.append((4, {1: 0, 3: 1}, 2))
                continue
            # (Z/2^k)* = <-1> x <5>
            half = pk // 4
            sign_log, five_log = {}, {}
            x = 1
            for b in range(half):
                sign_log[x], five_log[x] = 0, b
                sign_log[pk - x], five_log[pk - x] = 1, b
                x = x * 5 % pk
            factors.append((pk, sign_log, 2))
            factors.append((pk, five_log, half))
            continue
        g = primitive_root(pk)
        order = pk - pk // p
        table = {}
        x = 1
        for j in range(order):
            table[x] = j
            x = x * g % pk
        factors.append((pk, table, order))
    return factors


@lru_cache(maxsize=512)
def character_group(m: int) -> tuple[DirichletCharacter, ...]:
    """All φ(m) Dirichlet characters mod m, principal first."""
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    factors = _cyclic_factors(m)
    e = math.lcm(*(s for _, _, s in factors)) if factors else 1
    units = [r for r in range(m) if math.gcd(r, m) == 1]
    logs = {r: [table[r % pk] * (e // s) for pk, table, s in factors] for r in units}
    chars = []
    for idx in product(*(range(s) for _, _, s in factors)):
        exps: list[int | None] = [None] * m
        for r in units:
            exps[r] = sum(i * l for i, l in zip(idx, logs[r])) % e
        chars.append(DirichletCharacter(m, e, tuple(exps), tuple(idx)))
    return tuple(chars)


def principal_character(m: int) -> DirichletCharacter:
    return character_group(m)[0]


def detect_residue_multiplicative(a: int, m: int, n: int) -> float:
    """``(1/φ(m)) sum_χ conj(χ(a)) χ(n)``; approximately ``1_{n ≡ a (mod m)}``."""
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if math.gcd(a, m) != 1:
        raise DomainError(f"characters detect only reduced classes; gcd({a}, {m}) > 1")
    total = 0j
    for chi in character_group(m):
        kn, ka = chi.exponent(n), chi.exponent(a)
        if kn is not None:
            total += _root(kn - ka, chi.order)
    return (total / euler_phi(m)).real


def detect_residue_additive(q: int, n: int) -> float:
    """``(1/q) sum_{j <= q} e_q(jn)``; approximately ``1_{q | n}``."""
    if q < 1:
        raise DomainError(f"modulus must be >= 1, got {q}")
    total = sum(cmath.exp(2j * math.pi * ((j * n) % q) / q) for j in range(1, q + 1))
    return (total / q).real


def principal_detector(chi: DirichletCharacter) -> float:
    """``(1/φ(m)) sum_{n mod m} χ(n)``; approximately 1 iff χ is principal."""
    total = sum(chi(n) for n in range(chi.modulus))
    return (total / euler_phi(chi.modulus)).real


def character_table_rows(m: int) -> list[list]:
    """Header plus one row per residue: exponents per character ('' off the units)."""
    chars = character_group(m)
    header = ["residue"] + [f"chi{i}" for i in range(len(chars))]
    rows = [header]
    for r in range(m):
        row = [r]
        for chi in chars:
            k = chi.exponents[r]
            row.append("" if k is None else k)
        rows.append(row)
    return rows
