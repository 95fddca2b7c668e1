"""q-expansions of the quasimodular forms the counting machinery uses.

Provides the Eisenstein series G_k = -B_k/2k + sum_{n>0} sigma_{k-1}(n) q^n,
the discriminant Delta = q prod_{k>0} (1-q^k)^24, and the derived series
DG2 = sum n sigma_1(n) q^n and D2G2 = sum n^2 sigma_1(n) q^n, where D is the
derivation q d/dq.  The ring of quasimodular forms is Q[G2, G4, G6] and is
closed under D; only G2 and Delta actually enter the curve-counting
formulas, G4 and G6 are kept for ring-membership sanity tests.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import OddWeightUnsupported
from .qseries import QSeries, RATIONAL


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n) = sum_{d|n} d^k, by trial division to sqrt n."""
    if n < 1:
        raise ValueError("sigma is defined for n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


_bernoulli_cache = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """The k-th Bernoulli number (B_1 = -1/2), by the defining recurrence."""
    from math import comb
    while len(_bernoulli_cache) <= k:
        m = len(_bernoulli_cache)
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * _bernoulli_cache[j]
        _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[k]


def eisenstein(k: int, precision: int) -> QSeries:
    """G_k to the given precision; k must be even and >= 2."""
    if k % 2 != 0 or k < 2:
        raise OddWeightUnsupported("Eisenstein weight must be even and >= 2")
    coeffs = [-bernoulli(k) / (2 * k)]
    for n in range(1, max(precision, 0)):
        coeffs.append(Fraction(sigma(k - 1, n)))
    return QSeries(RATIONAL, 0, coeffs, precision)


def euler_product(precision: int) -> QSeries:
    """prod_{k>0} (1 - q^k) expanded by repeated convolution."""
    c = [1] + [0] * (precision - 1)
    for k in range(1, precision):
        for n in range(precision - 1, k - 1, -1):
            c[n] -= c[n - k]
    return QSeries(RATIONAL, 0, c, precision)


def euler_product_pentagonal(precision: int) -> QSeries:
    """prod_{k>0} (1 - q^k) via the pentagonal-number theorem:
    sum_{j in Z} (-1)^j q^{j(3j-1)/2}."""
    c = [0] * precision
    c[0] = 1
    j = 1
    while True:
        p1 = j * (3 * j - 1) // 2
        p2 = j * (3 * j + 1) // 2
        if p1 >= precision and p2 >= precision:
            break
        s = -1 if j % 2 else 1
        if p1 < precision:
            c[p1] = s
        if p2 < precision:
            c[p2] = s
        j += 1
    return QSeries(RATIONAL, 0, c, precision)


def delta(precision: int) -> QSeries:
    """The discriminant q prod (1-q^k)^24; valuation 1, leading coefficient 1."""
    if precision < 2:
        raise ValueError("need precision >= 2 to see the leading term of Delta")
    return euler_product(precision - 1).pow(24).shift(1)


def delta_pentagonal(precision: int) -> QSeries:
    """Second, independent expansion path for Delta (eta^24 via pentagonal numbers)."""
    if precision < 2:
        raise ValueError("need precision >= 2 to see the leading term of Delta")
    return euler_product_pentagonal(precision - 1).pow(24).shift(1)


def dg2(precision: int) -> QSeries:
    """DG2 = sum_{n>0} n sigma_1(n) q^n."""
    coeffs = [0] + [n * sigma(1, n) for n in range(1, max(precision, 0))]
    return QSeries(RATIONAL, 0, coeffs, precision)


def d2g2(precision: int) -> QSeries:
    """D2G2 = sum_{n>0} n^2 sigma_1(n) q^n."""
    coeffs = [0] + [n * n * sigma(1, n) for n in range(1, max(precision, 0))]
    return QSeries(RATIONAL, 0, coeffs, precision)


FORM_NAMES = ("G2", "G4", "G6", "Delta", "DG2", "D2G2")

_catalog = {}


def form_series(name: str, precision: int) -> QSeries:
    """Catalog lookup for the named form, memoized per (name, precision)."""
    key = (name, precision)
    hit = _catalog.get(key)
    if hit is not None:
        return hit
    if name == "G2":
        s = eisenstein(2, precision)
    elif name == "G4":
        s = eisenstein(4, precision)
    elif name == "G6":
        s = eisenstein(6, precision)
    elif name == "Delta":
        s = delta(precision)
    elif name == "DG2":
        s = dg2(precision)
    elif name == "D2G2":
        s = d2g2(precision)
    else:
        raise ValueError("unknown form %r; know %s" % (name, ", ".join(FORM_NAMES)))
    _catalog[key] = s
    return s
