"""The reproduction suite: every published number the engine must hit.

Each check is a pure function taking a shared context (so the expensive
Severi tables and fits are computed once) and returning (passed, detail).
`run_verify` packages the results as a machine-readable report; the CLI
exits 0 iff every check passed.  The quick level runs everything except the
full-range q^20 fit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .modforms import d2g2, delta, dg2, sigma
from .multipoly import POLY4, Poly1, Poly4, T, X, Y, Z
from .qseries import QSeries, expand_in_base, expand_in_base_residue
from .severi import MemoCache, severi_degree, severi_table
from .surfaces import (
    abelian_egf_check,
    abelian_genus2_count,
    abelian_genus_series,
    enriques_genus_series,
    geometry_preset,
    k3_genus_series,
    node_polynomials,
    qmu_extract,
    qmu_normalizer,
)
from .universal import (
    BSeriesPair,
    SurfaceGeometry,
    conjecture_rhs,
    fit3_verify_C1,
    fit_BC,
    tdelta_evaluate,
    tdelta_universal,
)

# The two universal series as published, q^0 .. q^20.
B1_COEFFS = (
    1, -1, -5, 39, -345, 2961, -24866, 207759, -1737670, 14584625,
    -122937305, 1040906771, -8852158628, 75598131215, -648168748072,
    5577807139921, -48163964723088, 417210529188188, -3624610235789053,
    31575290280786530, -275758194822813754,
)
B2_COEFFS = (
    1, 5, 2, 35, -140, 986, -6643, 48248, -362700, 2802510,
    -22098991, 177116726, -1438544962, 11814206036, -97940651274,
    818498739637, -6888195294592, 58324130994782, -496519067059432,
    4247266246317414, -36488059346439524,
)

# Q_mu tables (ascending coefficients in delta, outer factor included).
Q8_EXPECTED = Poly1([c * -(2 ** 4)
                     for c in (1141616, 425202, 417490, -931146, 282855)])
Q9_EXPECTED = Poly1([c * -(2 ** 3 * 3 ** 2)
                     for c in (-1724779, -1488377, -1011772, 268644, 128676)])
Q10_EXPECTED = Poly1([c * (2 ** 4 * 3 ** 2)
                      for c in (98802690, 57779307, 7300210, -3710865,
                                -15710500, 4345998)])
Q_EXPECTED = {8: Q8_EXPECTED, 9: Q9_EXPECTED, 10: Q10_EXPECTED}


class VerifyContext:
    """Lazily built shared state: one cache, one table, one fit per range."""

    def __init__(self, cache=None):
        self.cache = cache if cache is not None else MemoCache()
        self._tables = {}
        self._fits = {}

    def table(self, d_max, delta_max):
        key = (d_max, delta_max)
        if key not in self._tables:
            self._tables[key] = severi_table(d_max, delta_max, self.cache)
        return self._tables[key]

    def fit(self, n_max, degrees):
        key = (n_max, tuple(degrees))
        if key not in self._fits:
            table = self.table(max(degrees), n_max)
            self._fits[key] = fit_BC(table, n_max, degrees)
        return self._fits[key]

    @property
    def fit8(self):
        return self.fit(8, (5, 6, 7, 8, 9))

    @property
    def fit14(self):
        return self.fit(14, (8, 9))


def check_b_series_short(ctx):
    """Fit with degrees 5..9, max delta 8: B1, B2 match the tables exactly."""
    fit = ctx.fit8
    got1 = [fit.b1.coeff(k) for k in range(9)]
    got2 = [fit.b2.coeff(k) for k in range(9)]
    want1 = [Fraction(c) for c in B1_COEFFS[:9]]
    want2 = [Fraction(c) for c in B2_COEFFS[:9]]
    if got1 != want1:
        return False, "B1 mismatch: got %s" % got1
    if got2 != want2:
        return False, "B2 mismatch: got %s" % got2
    return True, "B1, B2 coefficients q^1..q^8 reproduced exactly"


def check_b_series_full(ctx):
    """Fit with degrees 11, 12 (13 for the C1 check), max delta 20."""
    table = ctx.table(13, 20)
    fit = fit_BC(table, 20, (11, 12))
    got1 = [fit.b1.coeff(k) for k in range(21)]
    got2 = [fit.b2.coeff(k) for k in range(21)]
    if got1 != [Fraction(c) for c in B1_COEFFS]:
        return False, "B1 mismatch at %s" % [
            k for k in range(21) if got1[k] != B1_COEFFS[k]]
    if got2 != [Fraction(c) for c in B2_COEFFS]:
        return False, "B2 mismatch at %s" % [
            k for k in range(21) if got2[k] != B2_COEFFS[k]]
    rows = fit3_verify_C1(table, 20, (11, 12, 13))
    if any(r.residual != 0 for r in rows):
        return False, "three-degree C1 check failed"
    return True, "all 20 printed coefficients of B1 and B2 reproduced; C1 confirmed"


def check_overdetermination(ctx):
    """Every admissible degree pair gives identical C2, C3 (zero residuals)."""
    fit = ctx.fit8
    expected_rows = sum(comb(5, 2) - 1 for _ in range(1, 9))
    if len(fit.residuals) != expected_rows:
        return False, "expected %d residual rows, saw %d" % (
            expected_rows, len(fit.residuals))
    if not fit.consistent:
        return False, "nonzero residuals present"
    return True, "%d degree-pair residuals, all exactly zero" % len(fit.residuals)


def check_q_polynomials(ctx):
    """Q_8, Q_9, Q_10 match the printed tables; p_mu (mu <= 8) consistent
    with the delta <= 8 node polynomials."""
    B = ctx.fit14.b
    for mu, expected in Q_EXPECTED.items():
        got = qmu_extract(mu, B)
        if got != expected:
            return False, "Q_%d mismatch: %r" % (mu, got)
    polys = node_polynomials(8, B)
    for mu in range(9):
        q = qmu_extract(mu, B)
        for dlt in range((mu + 1) // 2, 9):
            if 2 * dlt - mu < 0:
                continue
            expected_p = q(dlt) / qmu_normalizer(mu, dlt)
            if polys[dlt].p_mu(mu) != expected_p:
                return False, "p_%d(%d) inconsistent with Q_%d" % (mu, dlt, mu)
    return True, "Q_8, Q_9, Q_10 exact (with 2-3 power factors); p_mu consistent for mu <= 8"


def _inverse_eta24_convolution(n_terms):
    """Independent oracle: coefficients of prod_{k>0} (1-q^k)^{-24} by
    repeated prefix-sum convolution with 1/(1-q^k) = sum_j q^{jk}."""
    c = [0] * n_terms
    c[0] = 1
    for k in range(1, n_terms):
        for _ in range(24):
            for n in range(k, n_terms):
                c[n] += c[n - k]
    return c


def check_k3_series(ctx):
    """(DG2)^0/Delta equals q^{-1} prod (1-q^k)^{-24} for 30 coefficients."""
    oracle = _inverse_eta24_convolution(30)
    if oracle[:4] != [1, 24, 324, 3200]:
        return False, "oracle self-check failed: %s" % oracle[:4]
    series = k3_genus_series(0, 29).series
    got = series.coefficients(-1, 29)
    if got != [Fraction(c) for c in oracle]:
        return False, "series deviates from convolution oracle"
    return True, "30 coefficients agree with the convolution oracle (1, 24, 324, 3200, ...)"


def check_abelian_genus2(ctx):
    """q^n coefficient of the abelian r=0 series is n^2 sigma_1(n), n <= 50."""
    series = abelian_genus_series(0, 51).series
    for n in range(1, 51):
        want = abelian_genus2_count(n)
        if series.coeff(n) != want or want != n * n * sigma(1, n):
            return False, "mismatch at n=%d" % n
    return True, "n^2 sigma_1(n) confirmed for all n <= 50"


def check_universal_sanity(ctx):
    """T_0 = 1, T_1 = 3x + 2y + t, total degree of T_delta <= delta."""
    table = tdelta_universal(ctx.fit14.b, 10)
    if table[0] != Poly4.one():
        return False, "T_0 != 1"
    if table[1] != 3 * X + 2 * Y + T:
        return False, "T_1 = %s" % table[1].to_text()
    for k, t in enumerate(table):
        if t.total_degree() > k:
            return False, "deg T_%d = %d" % (k, t.total_degree())
    return True, "T_0 = 1, T_1 = 3x + 2y + t, deg T_delta <= delta for delta <= 10"


def check_multiplicativity(ctx):
    """Disjoint-union structure: t-series of a sum geometry is the product
    of the t-series, mod x^11, for 20 random geometry pairs."""
    B = ctx.fit14.b
    rng = random.Random(1281)
    n = 10
    for trial in range(20):
        g1 = SurfaceGeometry(*(rng.randint(-8, 8) for _ in range(4)))
        g2 = SurfaceGeometry(*(rng.randint(-8, 8) for _ in range(4)))
        t1 = tdelta_evaluate(g1, B, n)
        t2 = tdelta_evaluate(g2, B, n)
        ts = tdelta_evaluate(g1 + g2, B, n)
        prod = [sum(t1[i] * t2[k - i] for i in range(k + 1))
                for k in range(n + 1)]
        if prod != ts:
            return False, "failure at trial %d: %s + %s" % (trial, g1, g2)
    return True, "20 random geometry pairs multiplicative mod x^11"


def check_severi_classical(ctx):
    """Classical Severi values and the node-polynomial window."""
    cache = ctx.cache
    ctx.table(9, 14)  # ensure the shared prefix exists before the d<=12 walk
    for d in range(1, 13):
        if severi_degree(d, 0, cache) != 1:
            return False, "N^{%d,0} != 1" % d
    classical = {(2, 1): 3, (3, 1): 12, (3, 2): 21, (4, 3): 675}
    for (d, dlt), want in classical.items():
        if severi_degree(d, dlt, cache) != want:
            return False, "N^{%d,%d} != %d" % (d, dlt, want)
    polys = node_polynomials(8, ctx.fit14.b)
    table = ctx.table(9, 14)
    for dlt in range(9):
        for d in range(2, 10):
            if dlt <= 2 * d - 2 and polys[dlt](d) != table[(d, dlt)]:
                return False, "P_%d(%d) != N^{%d,%d}" % (dlt, d, d, dlt)
    return True, "N^{d,0}=1 (d<=12); 3, 12, 21, 675; node polynomials match on delta <= 2d-2"


def _random_series(rng, precision, valuation):
    coeffs = [Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
              for _ in range(precision - valuation)]
    return QSeries.make(coeffs, valuation, precision)


def check_formal_identities(ctx):
    """Round trips, the abelian exponential identity, the Enriques square
    root, and the quadric-surface symmetry."""
    rng = random.Random(40961)
    for _ in range(100):
        prec = rng.randint(3, 20)
        f = _random_series(rng, prec, rng.randint(1, 2))
        if f.exp().log() != f:
            return False, "exp/log round trip failed"
    for _ in range(100):
        prec = rng.randint(3, 14)
        f = _random_series(rng, prec, 0)
        g = _random_series(rng, prec, 1)
        if g.coeff(1) == 0:
            g = g + QSeries.monomial(1, prec)
        cs = expand_in_base(f, g)
        if cs != expand_in_base_residue(f, g):
            return False, "expansion implementations disagree"
        acc = QSeries.zero(prec)
        gpow = QSeries.one(prec + 1)
        for c in cs:
            acc = acc + gpow.scale(c)
            gpow = gpow * g
        if acc != f.truncate(acc.precision):
            return False, "base-expansion round trip failed"
    if not abelian_egf_check(15, 5):
        return False, "abelian exponential identity failed"
    prec = 24
    en = enriques_genus_series(0, prec).series
    target = (d2g2(prec + 3) / delta(prec + 3)).truncate(prec)
    if en * en != target:
        return False, "Enriques square-root identity failed"
    B = ctx.fit14.b
    for n, m in ((1, 2), (2, 3), (3, 5)):
        a = tdelta_evaluate(geometry_preset("ruled", e=0, n=n, m=m), B, 10)
        b = tdelta_evaluate(geometry_preset("ruled", e=0, n=m, m=n), B, 10)
        if a != b:
            return False, "quadric symmetry failed at (%d, %d)" % (n, m)
    return True, "round trips (100 each), exponential identity, square root, symmetry all exact"


def check_fit_idempotence(ctx):
    """Severi degrees rebuilt from the fitted B at plane geometries equal the
    recursion's output for every delta <= 2d-2, d in the fitted set."""
    fit = ctx.fit8
    table = ctx.table(9, 14)
    for d in fit.degrees:
        geom = geometry_preset("p2", d=d)
        values = tdelta_evaluate(geom, fit.b, 8)
        for dlt in range(min(8, 2 * d - 2) + 1):
            if values[dlt] != table[(d, dlt)]:
                return False, "rebuilt t_%d(%d) != N^{%d,%d}" % (dlt, d, d, dlt)
    rhs = conjecture_rhs(geometry_preset("p2", d=5), fit.b, 9)
    if rhs.coeff(0) != 1:
        return False, "count series must start at 1"
    return True, "conjectural counts reproduce the input Severi degrees"


@dataclass
class CheckResult:
    name: str
    source: str
    passed: bool
    seconds: float
    detail: str


@dataclass
class VerifyReport:
    level: str
    checks: list

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def to_doc(self):
        return {
            "level": self.level,
            "all_passed": self.all_passed,
            "checks": [{
                "name": c.name,
                "source": c.source,
                "passed": c.passed,
                "seconds": round(c.seconds, 3),
                "detail": c.detail,
            } for c in self.checks],
        }


# (criterion number, name, expectation source, levels, function)
CHECKS = (
    (1, "b_series_short", "paper", ("quick", "full"), check_b_series_short),
    (2, "b_series_full_q20", "paper", ("full",), check_b_series_full),
    (3, "fit_overdetermination", "paper", ("quick", "full"), check_overdetermination),
    (4, "q_polynomials", "paper", ("quick", "full"), check_q_polynomials),
    (5, "k3_rational_curve_series", "derived", ("quick", "full"), check_k3_series),
    (6, "abelian_genus2_counts", "paper", ("quick", "full"), check_abelian_genus2),
    (7, "universal_polynomial_sanity", "paper", ("quick", "full"), check_universal_sanity),
    (8, "exp_structure_multiplicativity", "paper", ("quick", "full"), check_multiplicativity),
    (9, "severi_classical_values", "derived", ("quick", "full"), check_severi_classical),
    (10, "formal_identity_suite", "derived", ("quick", "full"), check_formal_identities),
    (11, "fit_idempotence", "derived", ("quick", "full"), check_fit_idempotence),
)


def run_verify(level="quick", cache=None, only=None) -> VerifyReport:
    """Run the reproduction checks; failures are report entries, not raises."""
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    ctx = VerifyContext(cache)
    results = []
    for _num, name, source, levels, fn in CHECKS:
        if level not in levels:
            continue
        if only and name != only:
            continue
        start = time.perf_counter()
        try:
            passed, detail = fn(ctx)
        except Exception as exc:  # a crash is a failure, not an abort
            passed, detail = False, "%s: %s" % (type(exc).__name__, exc)
        results.append(CheckResult(name, source, passed,
                                   time.perf_counter() - start, detail))
    return VerifyReport(level, results)
