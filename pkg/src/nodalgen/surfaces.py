"""Geometry presets and the specialized count series they produce.

For surfaces with numerically trivial canonical class the two unknown
series drop out of the generating function and the genus-indexed curve
counts are pure quasimodular expressions:

    K3:        sum_l n_r(l) q^l = (DG2)^r / Delta
    abelian:   sum_l n_r(l) q^l = (DG2)^r D2G2
    Enriques:  sum_l n_r(l) q^l = (DG2)^r (D2G2 / Delta)^{1/2}

with the genus dictionary m_g = n_g (K3), n_{g-1} (Enriques), n_{g-2}
(abelian).  The module also carries the plane specialization: node
polynomials P_delta(d) of degree 2 delta in d, their coefficients
p_mu(delta) = 3^{delta-[mu/2]} / (delta-[mu/2])! * Q_mu(delta), and the
predictions for rational ruled surfaces with their validity windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import NonPolynomialResidual, UnknownKind
from .modforms import d2g2, delta, dg2, sigma
from .multipoly import Poly1, interpolate
from .qseries import QSeries
from .universal import BSeriesPair, SurfaceGeometry, nr_series, tdelta_evaluate, tdelta_universal

# (K^2 = 8, c2 = 4) for every Hirzebruch surface; K = -2E - (e+2)F.
_GENUS_SHIFT = {"k3": 0, "enriques": 1, "abelian": 2}


def geometry_preset(kind, **params) -> SurfaceGeometry:
    """Intersection numbers for the stock surfaces.

    kinds: p2(d), ruled(e, n, m) for |nF + mE| on the Hirzebruch surface
    Sigma_e, k3(L2), abelian(L2), enriques(L2), custom(L2, LK, K2, c2).
    """
    try:
        if kind == "p2":
            d = params["d"]
            return SurfaceGeometry(d * d, -3 * d, 9, 3)
        if kind == "ruled":
            e, n, m = params["e"], params["n"], params["m"]
            return SurfaceGeometry(2 * n * m - e * m * m,
                                   -2 * n + (e - 2) * m, 8, 4)
        if kind == "k3":
            return SurfaceGeometry(params["L2"], 0, 0, 24)
        if kind == "abelian":
            return SurfaceGeometry(params["L2"], 0, 0, 0)
        if kind == "enriques":
            return SurfaceGeometry(params["L2"], 0, 0, 12)
        if kind == "custom":
            return SurfaceGeometry(params["L2"], params["LK"],
                                   params["K2"], params["c2"])
    except KeyError as exc:
        raise UnknownKind("missing parameter %s for kind %r" % (exc, kind))
    raise UnknownKind("unknown surface kind %r" % kind)


@dataclass(frozen=True)
class GenusCountSeries:
    """A count series n_r for a K-trivial-type surface tag.

    The q^l coefficient counts the curves cut out in an r-codimensional
    sub-linear system; the genus view is m_g = n_{g - shift} with the shift
    determined by the tag."""

    tag: str
    r: int
    series: QSeries

    @property
    def genus(self) -> int:
        return self.r + _GENUS_SHIFT[self.tag]

    def coefficient(self, l):
        return self.series.coeff(l)


def k3_genus_series(r: int, precision: int) -> GenusCountSeries:
    """(DG2)^r / Delta; at r = 0 this is the rational-curve series
    q^{-1} prod (1-q^k)^{-24} = q^{-1} + 24 + 324 q + 3200 q^2 + ..."""
    w = precision + 3 + r
    s = dg2(w).pow(r) / delta(w) if r else QSeries.one(w) / delta(w)
    return GenusCountSeries("k3", r, s.truncate(precision))


def abelian_genus_series(r: int, precision: int) -> GenusCountSeries:
    """(DG2)^r D2G2; at r = 0 the q^n coefficient is n^2 sigma_1(n)."""
    w = precision + 1
    s = d2g2(w) * dg2(w).pow(r) if r else d2g2(w)
    return GenusCountSeries("abelian", r, s.truncate(precision))


def enriques_genus_series(r: int, precision: int) -> GenusCountSeries:
    """(DG2)^r (D2G2/Delta)^{1/2}; the square root is of a unit series."""
    w = precision + 3 + r
    root = (d2g2(w) / delta(w)).pow(Fraction(1, 2))
    s = root * dg2(w).pow(r) if r else root
    return GenusCountSeries("enriques", r, s.truncate(precision))


def genus_series(kind: str, g: int, precision: int) -> GenusCountSeries:
    """The m_g view: the series counting genus-g curves on the given kind."""
    if kind not in _GENUS_SHIFT:
        raise UnknownKind("no genus dictionary for kind %r" % kind)
    r = g - _GENUS_SHIFT[kind]
    if r < 0:
        raise ValueError("genus %d is below the minimal genus for %s" % (g, kind))
    return {"k3": k3_genus_series, "abelian": abelian_genus_series,
            "enriques": enriques_genus_series}[kind](r, precision)


def abelian_genus2_count(n: int) -> int:
    """Genus-2 curves in a polarization of type (1, n): n^2 sigma_1(n)."""
    if n < 1:
        raise ValueError("polarization type (1, n) needs n >= 1")
    return n * n * sigma(1, n)


def abelian_egf_check(precision: int, z_max: int) -> bool:
    """Verify that (1/z) D exp(DG2 * z), expanded in powers of z, has
    z^r/r! slice equal to (DG2)^r D2G2 for r <= z_max, to q-precision."""
    w = precision + 1
    g = dg2(w)
    for r in range(z_max + 1):
        # z^r coefficient of (1/z) D exp(g z) is D(g^{r+1}) / (r+1)!;
        # divide by 1/r! to compare slices of z^r/r!
        slice_r = g.pow(r + 1).derivative().scale(Fraction(1, r + 1))
        direct = abelian_genus_series(r, precision).series
        if slice_r.truncate(precision) != direct:
            return False
    return True


# --- node polynomials for the plane ------------------------------------------

@dataclass(frozen=True)
class NodePolynomial:
    """P_delta(d): the degree-2*delta polynomial in the plane degree d whose
    values are the delta-nodal counts (valid for delta <= 2d - 2)."""

    delta: int
    poly: Poly1

    def p_mu(self, mu: int) -> Fraction:
        """Coefficient of d^{2*delta - mu}; zero when mu > 2*delta."""
        return self.poly.coefficient(2 * self.delta - mu)

    def __call__(self, d):
        return self.poly(d)


def node_polynomials(n_max: int, B: BSeriesPair):
    """All NodePolynomial entries for delta = 0..n_max (one symbolic pass)."""
    table = tdelta_universal(B, n_max)
    out = []
    for k, t in enumerate(table):
        poly = t.specialize_p2()
        if k and poly.degree() != 2 * k:
            raise NonPolynomialResidual(
                "P_%d has degree %d, expected %d" % (k, poly.degree(), 2 * k))
        out.append(NodePolynomial(k, poly))
    return out


def node_polynomial(delta: int, B: BSeriesPair) -> NodePolynomial:
    return node_polynomials(delta, B)[delta]


def qmu_normalizer(mu: int, dlt: int) -> Fraction:
    """The exact factor relating Q_mu(delta) to the d^{2 delta - mu}
    coefficient p_mu(delta) of the node polynomial P_delta:

        Q_mu(delta) = mu! * (delta - ceil(mu/2))! / 3^{delta - [mu/2]}
                      * p_mu(delta).

    The ceiling factorial (rather than the floor one) is what makes the
    quotient a polynomial in delta of degree [mu/2] for odd mu as well;
    the published Q_8, Q_9, Q_10 tables pin this normalization.
    """
    return Fraction(factorial(mu) * factorial(dlt - (mu + 1) // 2),
                    3 ** (dlt - mu // 2))


def qmu_extract(mu: int, B: BSeriesPair) -> Poly1:
    """Recover Q_mu from sampled node polynomials.

    Samples start at delta = ceil(mu/2) + 1, so the factorial divisor is
    always defined and the sampled coefficient index 2*delta - mu is
    positive; one extra held-out delta turns the polynomiality assertion
    into a test, and integrality of the result is checked as well.
    """
    h = mu // 2
    lo = (mu + 1) // 2 + 1
    sample_deltas = list(range(lo, lo + h + 1))
    held_out = lo + h + 1
    polys = node_polynomials(held_out, B)

    def q_value(dlt):
        return polys[dlt].p_mu(mu) * qmu_normalizer(mu, dlt)

    q = interpolate([(dlt, q_value(dlt)) for dlt in sample_deltas])
    if q(held_out) != q_value(held_out):
        raise NonPolynomialResidual(
            "Q_%d interpolant fails at held-out delta = %d" % (mu, held_out))
    if not q.is_integral():
        raise NonPolynomialResidual(
            "Q_%d has non-integer coefficients: %r" % (mu, q))
    return q


@dataclass(frozen=True)
class RuledPrediction:
    delta: int
    value: Fraction
    valid: bool


def ruled_predictions(e, n, m, delta_max, B: BSeriesPair):
    """Conjectural counts t_delta for |nF + mE| on Sigma_e, each flagged with
    the validity window delta <= min(2m, n - e m), or min(2m, 2n) when e = 0."""
    geom = geometry_preset("ruled", e=e, n=n, m=m)
    values = tdelta_evaluate(geom, B, delta_max)
    window = min(2 * m, 2 * n) if e == 0 else min(2 * m, n - e * m)
    return [RuledPrediction(k, v, k <= window) for k, v in enumerate(values)]
