"""Identity-verification suites shared by the CLI and the acceptance tests.

Each check returns a status ("pass", "fail", "soft-pass", "soft-fail") and a
few witness values.  Only "fail" is a hard failure.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from . import arith, characters, correlations, decomposition, ramanujan, transforms
from .arith import InvariantViolation, euler_phi, is_squarefree, primes_up_to
from .generators import InstanceConfig, random_bh_instance, random_prime_instance, random_window

SUITES = ("facts", "ramanujan", "characters", "transforms", "correlations", "decomposition")


@dataclass(frozen=True)
class SuiteConfig:
    scale: str = "small"
    seed: int = 0
    tolerance: float = 1e-8

    @property
    def full(self) -> bool:
        return self.scale == "full"


@dataclass
class Check:
    id: str
    status: str
    witness: dict = field(default_factory=dict)


@dataclass
class RunReport:
    suite: str
    config: SuiteConfig
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def add(self, check_id: str, passed: bool, soft: bool = False, **witness) -> Check:
        if any(c.id == check_id for c in self.checks):
            raise ValueError(f"duplicate check id {check_id}")
        status = ("soft-" if soft else "") + ("pass" if passed else "fail")
        check = Check(check_id, status, {k: _jsonable(v) for k, v in witness.items()})
        self.checks.append(check)
        return check

    def to_json(self) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "config": asdict(self.config),
                "seconds": round(self.seconds, 3),
                "ok": self.ok,
                "checks": [asdict(c) for c in self.checks],
            },
            indent=2,
        )


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _holds(fn: Callable[[], object]) -> tuple[bool, str]:
    """Run a self-checking routine; InvariantViolation means the identity failed."""
    try:
        fn()
    except InvariantViolation as exc:
        return False, str(exc)
    return True, ""


# ---------------------------------------------------------------------------


def suite_facts(rep: RunReport) -> None:
    full = rep.config.full
    n_max = 300 if full else 60
    ok, msg = _holds(lambda: [arith.coprimality_detector(a, b) for a in range(1, n_max) for b in range(1, 40)])
    rep.add("coprimality-detector", ok, detail=msg)
    ok, msg = _holds(lambda: [arith.moebius_sum_to_product(arith.euler_phi, n) for n in range(1, n_max)])
    rep.add("moebius-sum-product", ok, detail=msg)
    ok, msg = _holds(lambda: [arith.moebius_sum_to_product(lambda k: Fraction(1, k), n) for n in range(1, n_max)])
    rep.add("moebius-sum-product-reciprocal", ok, detail=msg)
    # Eratosthenes transform inverts divisor summation
    M = 2000 if full else 300
    w = random_window(random.Random(rep.config.seed), M)
    back = arith.eratosthenes_transform(arith.divisor_sum(w))
    rep.add("eratosthenes-inverts-divisor-sum", arith.windows_equal(back, w), M=M)
    ok = all(
        ramanujan.vertical_limit_holds(q, a) for q in range(1, 200 if full else 80) for a in range(1, 60)
    )
    rep.add("vertical-limit", ok)
    # null expansion: sum_{q <= x} c_q(a)/q drifts to zero (soft)
    x = 10**5 if full else 10**4
    vals = [float(transforms.ramanujan_series_eval(transforms.R0(), a, x).value) for a in (1, 2, 6)]
    rep.add("null-expansion-drift", max(map(abs, vals)) < 0.05, soft=True, cutoff=x, partial_sums=vals)


def suite_ramanujan(rep: RunReport) -> None:
    full = rep.config.full
    tol = rep.config.tolerance
    q_max, n_max = (128, 256) if full else (48, 96)
    bad, worst = [], 0.0
    for q in range(1, q_max + 1):
        for n in range(0, n_max + 1):
            k = ramanujan.c_kluyver(q, n)
            if k != ramanujan.c_holder(q, n):
                bad.append((q, n))
            worst = max(worst, abs(ramanujan.c_direct(q, n) - k))
    rep.add("kluyver-equals-holder", not bad, q_max=q_max, n_max=n_max, mismatches=bad[:5])
    rep.add("direct-close-to-kluyver", worst <= tol, max_error=worst, tolerance=tol)
    q_max, n_max = (64, 512) if full else (24, 100)
    ok, msg = _holds(lambda: [ramanujan.divisibility_via_ramanujan(q, n) for q in range(1, q_max + 1) for n in range(n_max + 1)])
    rep.add("divisibility-detector", ok, q_max=q_max, n_max=n_max, detail=msg)
    top = 24 if full else 10
    ok, msg = _holds(
        lambda: [
            ramanujan.carmichael_orthogonality(q, ell, n)
            for q in range(1, top + 1)
            for ell in range(1, top + 1)
            for n in range(top + 1)
        ]
    )
    rep.add("orthogonality-period-mean", ok, bound=top, detail=msg)
    rng = random.Random(rep.config.seed)
    triples = [(rng.randint(1, 24), rng.randint(1, 24), rng.randint(0, 24)) for _ in range(100)]
    bad = [t for t in triples if ramanujan.orthogonality_mean_kluyver(*t) != ramanujan.period_mean(*t)]
    rep.add("orthogonality-divisor-route", not bad, triples=len(triples), mismatches=bad[:5])


def suite_characters(rep: RunReport) -> None:
    top = 60 if rep.config.full else 24
    tol = 1e-9
    sizes = all(len(characters.character_group(m)) == euler_phi(m) for m in range(1, top + 1))
    rep.add("group-order", sizes, max_modulus=top)
    distinct = all(
        len({chi.values_key() for chi in characters.character_group(m)}) == euler_phi(m)
        for m in range(1, top + 1)
    )
    rep.add("characters-distinct", distinct)
    worst = 0.0
    for m in range(1, top + 1):
        for chi in characters.character_group(m):
            target = 1.0 if chi.principal else 0.0
            worst = max(worst, abs(characters.principal_detector(chi) - target))
    rep.add("principal-detector", worst <= tol, max_error=worst)
    worst = 0.0
    for m in range(1, min(top, 30) + 1):
        for a in range(m):
            if math.gcd(a, m) != 1:
                continue
            for n in range(2 * m):
                target = 1.0 if (n - a) % m == 0 else 0.0
                worst = max(worst, abs(characters.detect_residue_multiplicative(a, m, n) - target))
    rep.add("residue-detector-multiplicative", worst <= tol, max_error=worst)
    worst = max(
        abs(characters.detect_residue_additive(q, n) - (n % q == 0)) for q in range(1, 30) for n in range(60)
    )
    rep.add("residue-detector-additive", worst <= tol, max_error=worst)


def suite_transforms(rep: RunReport) -> None:
    full = rep.config.full
    rng = random.Random(rep.config.seed)
    cfg = InstanceConfig()
    bad = 0
    for _ in range(20 if full else 5):
        Q = rng.randint(1, 12)
        G = transforms.RamanujanCoefficients.finite(
            {q: arith_val for q, arith_val in random_window(rng, Q, cfg).items() if arith_val}, Q
        )
        F = transforms.periodic_from_expansion(G)
        win = transforms.wintner_of_finite_expansion(G)
        for ell in range(1, 2 * Q + 1):
            car = transforms.carmichael_coefficient(F, ell)
            if not (win.get(ell, 0) == car == G(ell)):
                bad += 1
    rep.add("wintner-carmichael-finite-expansions", bad == 0, mismatches=bad)
    ps = [p for p in primes_up_to(100)]
    smooth = []
    ok = True
    for P in ps:
        v = transforms.smooth_series_eval(transforms.R0(), 1, P)
        expected = math.prod((Fraction(p - 1, p) for p in primes_up_to(P)), start=Fraction(1))
        ok &= v == expected
        smooth.append(v)
    ok &= all(x > y for x, y in zip(smooth, smooth[1:]))
    rep.add("smooth-null-product", ok, last=smooth[-1])
    routes = all(
        transforms.smooth_series_eval(G, a, P, "euler") == transforms.smooth_series_eval(G, a, P, "enumerate")
        for G in (transforms.R0(), transforms.H0(), transforms.singular_series_coefficients())
        for a in (1, 2, 6, 12, 30)
        for P in (2, 3, 5, 7, 11)
    )
    rep.add("smooth-euler-vs-enumeration", routes)
    M = 500 if full else 200
    agree, idem, sqf = True, True, True
    for _ in range(50 if full else 10):
        w = random_window(rng, M, cfg)
        ok, msg = _holds(lambda: transforms.ippify(w))
        agree &= ok
        if ok:
            t = transforms.ippify(w)
            idem &= transforms.ippify(t).values == t.values
            sqf &= all(t(a) == w(a) for a in range(1, M + 1) if is_squarefree(a))
    rep.add("ippify-routes", agree, M=M)
    rep.add("ippify-idempotent", idem)
    rep.add("ippify-squarefree-agreement", sqf)
    chain = True
    for _ in range(100 if full else 20):
        Q = rng.randint(1, 30)
        g = correlations.TruncatedDivisorSum(tuple(random_window(rng, Q, cfg).values))
        if rng.random() < 0.5:  # force the square-free case half the time
            g = correlations.TruncatedDivisorSum(
                tuple(v if is_squarefree(d) else Fraction(0) for d, v in enumerate(g.gprime, 1))
            )
        a = g.is_ipp(3 * Q)
        b = g.gprime_squarefree_supported()
        c = g.coefficients.is_squarefree_supported()
        chain &= a == b == c
    rep.add("ipp-equivalence-chain", chain)
    D = 10**6 if full else 10**5
    s = transforms.moebius_pnt_partial_sum(D).value
    rep.add("moebius-pnt-drift", abs(s) <= 0.01, soft=True, cutoff=D, value=s)


def suite_correlations(rep: RunReport) -> None:
    full = rep.config.full
    seed = rep.config.seed
    n_inst = 20 if full else 6
    shifts = 500 if full else 120
    coeff_ok, expansion_ok, equiv_ok, period_ok = True, 0, True, True
    for k in range(n_inst):
        inst = random_bh_instance(seed + k)
        pf = correlations.period_function(inst)
        coeff_ok &= all(
            correlations.correlation_coefficient(inst, ell) == transforms.carmichael_coefficient(pf, ell)
            for ell in range(1, 2 * inst.Q + 1)
        )
        coeffs = correlations.correlation_coefficients(inst)
        ok, _ = _holds(lambda: [correlations.expansion_eval(inst, a, coeffs) for a in range(1, shifts + 1)])
        expansion_ok += ok
        equiv_ok &= ok == correlations.is_even_periodic(inst)
        T = correlations.correlation_period(inst)
        period_ok &= correlations.period_bound(inst) % T == 0
    rep.add("coefficients-equal-carmichael", coeff_ok, instances=n_inst)
    rep.add("finite-expansion-iff-even", equiv_ok, instances=n_inst)
    rep.add(
        "finite-expansion-all-instances",
        expansion_ok == n_inst,
        soft=True,
        reproduced=expansion_ok,
        instances=n_inst,
        note="a finite Ramanujan expansion depends on gcd(a, L) only",
    )
    rep.add("period-divides-bound", period_ok)
    rng = random.Random(seed)
    bad = 0
    for _ in range(50 if full else 10):
        N, a = rng.randint(1, 30), rng.randint(1, 15)
        f = random_window(rng, N)
        g = random_window(rng, N + a)
        ok, _ = _holds(lambda: correlations.divisors_cut_remainder(f, g, N, a))
        bad += not ok
    rep.add("divisors-cut", bad == 0, failures=bad)


def suite_decomposition(rep: RunReport) -> None:
    full = rep.config.full
    seed = rep.config.seed
    cfg = InstanceConfig(max_Q=12, max_N=60)
    n_inst = 20 if full else 5
    shifts = 200 if full else 60
    dec_ok, cor_ok, worst = True, True, 0.0
    for k in range(n_inst):
        inst = random_prime_instance(seed + k, cfg)
        ok, _ = _holds(lambda: [decomposition.decompose(inst, a, tol=1.0) for a in range(1, shifts + 1)])
        dec_ok &= ok
        if ok:
            worst = max(worst, max(decomposition.decompose(inst, a, tol=1.0).char_error for a in range(1, shifts + 1)))
        ok, _ = _holds(lambda: [decomposition.check_parts_add_up(inst, ell) for ell in range(1, inst.Q + 1)])
        cor_ok &= ok
    rep.add("primary-plus-secondary", dec_ok, instances=n_inst, shifts=shifts)
    rep.add("character-form", worst <= decomposition.CHAR_TOL, max_error=worst)
    rep.add("part-coefficients-add-up", cor_ok, instances=n_inst)
    d_max, m_max = (500, 100) if full else (120, 40)
    ok, msg = _holds(lambda: [decomposition.pinch_lemma(d, m) for d in range(1, d_max + 1) for m in range(1, m_max + 1)])
    rep.add("pinch-lemma", ok, detail=msg)
    ok, msg = _holds(lambda: [decomposition.twisted_pinch_lemma(d, m) for d in range(1, d_max + 1) for m in range(1, m_max + 1)])
    rep.add("twisted-pinch-lemma", ok, detail=msg)
    ok, msg = _holds(
        lambda: [
            decomposition.multiple_moebius_sum(q, ell)
            for q in range(1, 211)
            if is_squarefree(q)
            for ell in arith.divisors(q)
        ]
    )
    rep.add("multiple-moebius-sum", ok, detail=msg)
    D = 10**5 if full else 2 * 10**4
    vals = []
    for m in (3, 4, 5, 7, 8):
        for chi in characters.character_group(m)[1:]:
            vals.append(abs(decomposition.sigma_partial(chi, 1, D)))
            if len(vals) >= 10:
                break
        if len(vals) >= 10:
            break
    rep.add("twisted-moebius-drift", max(vals) <= 0.05, soft=True, cutoff=D, values=vals)
    inst = _small_prime_instance()
    ells = list(range(1, inst.Q + 1))
    part = decomposition.ippified_wintner_partial(inst, ells, D)
    errs = []
    for ell in ells:
        exact = float(decomposition.primary_coefficient(inst, ell))
        errs.append(abs(part[ell].value - exact) <= max(0.05, 0.1 * abs(exact)))
    rep.add("primary-wintner-truncation", all(errs), soft=True, cutoff=D)
    X = 10**4
    s2 = decomposition.singular_series_demo(2, X)
    e2 = decomposition.singular_series_euler(2)
    rep.add("singular-series", abs(s2 - e2) <= 1e-2, cutoff=X, partial=s2, euler=e2)
    ratio = decomposition.singular_series_demo(6, X) / s2
    rep.add("singular-series-ratio", abs(ratio - 2) <= 1e-2, ratio=ratio)


def _small_prime_instance() -> correlations.CorrelationInstance:
    f = arith.ArithWindow.from_mapping(
        {2: Fraction(1), 3: Fraction(2), 5: Fraction(-1), 7: Fraction(1, 2)}, 10
    )
    gp = {1: Fraction(1), 2: Fraction(1, 3), 3: Fraction(-2), 6: Fraction(5)}
    g = correlations.TruncatedDivisorSum(tuple(gp.get(d, Fraction(0)) for d in range(1, 7)))
    return correlations.CorrelationInstance(f, g, 10, require=("squarefree", "primes"))


RUNNERS = {
    "facts": suite_facts,
    "ramanujan": suite_ramanujan,
    "characters": suite_characters,
    "transforms": suite_transforms,
    "correlations": suite_correlations,
    "decomposition": suite_decomposition,
}


def run_suite(name: str, config: SuiteConfig = SuiteConfig()) -> RunReport:
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in RUNNERS:
            raise KeyError(name)
    rep = RunReport(name, config)
    start = time.perf_counter()
    for n in names:
        sub = RunReport(n, config)
        RUNNERS[n](sub)
        for c in sub.checks:
            c.id = f"{n}/{c.id}" if name == "all" else c.id
            rep.checks.append(c)
    rep.seconds = time.perf_counter() - start
    return rep
