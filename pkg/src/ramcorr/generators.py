"""Seeded random instances for sweeps and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import ArithWindow, is_squarefree, primes_up_to
from .correlations import CorrelationInstance, TruncatedDivisorSum


@dataclass(frozen=True)
class InstanceConfig:
    max_Q: int = 10
    max_N: int = 40
    max_num: int = 9
    max_den: int = 6
    density: float = 0.7  # chance a candidate point carries a nonzero value


def random_rational(rng: random.Random, cfg: InstanceConfig) -> Fraction:
    while True:
        v = Fraction(rng.randint(-cfg.max_num, cfg.max_num), rng.randint(1, cfg.max_den))
        if v:
            return v


def _sparse(rng: random.Random, points, cfg: InstanceConfig) -> dict[int, Fraction]:
    return {n: random_rational(rng, cfg) for n in points if rng.random() < cfg.density}


def random_window(rng: random.Random, M: int, cfg: InstanceConfig = InstanceConfig()) -> ArithWindow:
    return ArithWindow.from_mapping(_sparse(rng, range(1, M + 1), cfg), M)


def _sizes(rng: random.Random, cfg: InstanceConfig) -> tuple[int, int]:
    Q = rng.randint(1, cfg.max_Q)
    N = rng.randint(Q, cfg.max_N)
    return Q, N


def random_bh_instance(seed: int, cfg: InstanceConfig = InstanceConfig()) -> CorrelationInstance:
    """Arbitrary rational f on [1, N] and g' on [1, Q]; only Q <= N is guaranteed."""
    rng = random.Random(seed)
    Q, N = _sizes(rng, cfg)
    f = ArithWindow.from_mapping(_sparse(rng, range(1, N + 1), cfg), N)
    gp = _sparse(rng, range(1, Q + 1), cfg)
    return CorrelationInstance(f, TruncatedDivisorSum(tuple(gp.get(d, Fraction(0)) for d in range(1, Q + 1))), N)


def random_prime_instance(seed: int, cfg: InstanceConfig = InstanceConfig()) -> CorrelationInstance:
    """f supported on primes <= N and g' on square-free d <= Q."""
    rng = random.Random(seed)
    Q, N = _sizes(rng, cfg)
    f = ArithWindow.from_mapping(_sparse(rng, primes_up_to(N), cfg), N)
    gp = _sparse(rng, [d for d in range(1, Q + 1) if is_squarefree(d)], cfg)
    g = TruncatedDivisorSum(tuple(gp.get(d, Fraction(0)) for d in range(1, Q + 1)))
    return CorrelationInstance(f, g, N, require=("squarefree", "primes"))
