"""The generating-function engine for nodal-curve counts.

The count series of a pair (surface, line bundle) is conjecturally

    sum_delta t_delta (DG2)^delta
        = (DG2/q)^chi(L) B1^{K^2} B2^{LK} / (Delta D2G2 / q^2)^{chi(O)/2}

for two universal power series B1, B2 with constant term 1.  Everything in
this module is a corollary of that single identity: evaluating it over
rational coefficients gives numeric counts t_delta; evaluating it over
Poly4 coefficients and expanding in the base x = DG2 gives the universal
polynomials T_delta(L^2, LK, K^2, c2); specializing to the plane and
matching against Severi degrees determines B1 and B2 coefficient by
coefficient (`fit_BC`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InconsistentOverdetermination,
    InsufficientDegrees,
    OutOfPrecision,
)
from .modforms import d2g2, delta, dg2
from .multipoly import POLY4, Poly4, T, X, Y, Z, lift
from .qseries import QSeries, RATIONAL, expand_in_base


@dataclass(frozen=True)
class SurfaceGeometry:
    """The four intersection numbers that determine every count."""

    L2: int
    LK: int
    K2: int
    c2: int

    @property
    def chi_O(self) -> Fraction:
        return Fraction(self.K2 + self.c2, 12)

    @property
    def chi_L(self) -> Fraction:
        return Fraction(self.L2 - self.LK, 2) + self.chi_O

    def __add__(self, other):
        """Disjoint-union geometry: all four numbers add."""
        return SurfaceGeometry(self.L2 + other.L2, self.LK + other.LK,
                               self.K2 + other.K2, self.c2 + other.c2)

    def as_tuple(self):
        return (self.L2, self.LK, self.K2, self.c2)


@dataclass(frozen=True)
class BSeriesPair:
    """The two fitted universal series; both have constant term 1."""

    b1: QSeries
    b2: QSeries

    def __post_init__(self):
        for s in (self.b1, self.b2):
            if s.is_zero or s.valuation != 0 or s.coeffs[0] != Fraction(1):
                raise ValueError("B-series must start with constant term 1")

    @property
    def precision(self) -> int:
        return min(self.b1.precision, self.b2.precision)


def trivial_b(precision: int) -> BSeriesPair:
    """B1 = B2 = 1; useful for the pieces that do not involve them."""
    one = QSeries.one(precision)
    return BSeriesPair(one, one)


# --- the right-hand side -------------------------------------------------------

def _log_pieces(working_precision):
    """log(DG2/q) and log(Delta * D2G2 / q^2) as exact q-series."""
    w = working_precision
    log_g = dg2(w + 1).shift(-1).log()
    log_m = (delta(w + 2) * d2g2(w + 2)).shift(-2).log().truncate(w)
    return log_g, log_m.truncate(min(w, log_m.precision))


def _assemble_rhs(chi_l, k2, lk, chi_o_half, B, precision, domain):
    """exp(chi(L) log(DG2/q) + K^2 log B1 + LK log B2 - (chi(O)/2) log(...)).

    The four multipliers may be Fractions (numeric counts) or Poly4
    (symbolic universal polynomials); the series pieces are lifted into the
    target domain before scaling.
    """
    w = precision + 2
    log_g, log_m = _log_pieces(w)
    log_b1 = B.b1.log()
    log_b2 = B.b2.log()
    if domain is POLY4:
        log_g, log_m = lift(log_g), lift(log_m)
        log_b1, log_b2 = lift(log_b1), lift(log_b2)
    u = log_g.scale(chi_l)
    if k2:
        u = u + log_b1.scale(k2)
    if lk:
        u = u + log_b2.scale(lk)
    if chi_o_half:
        u = u - log_m.scale(chi_o_half)
    rhs = u.exp()
    if rhs.precision < precision:
        raise OutOfPrecision(
            "B-series precision %d cannot support result precision %d"
            % (B.precision, precision))
    return rhs.truncate(precision)


def conjecture_rhs(geom: SurfaceGeometry, B: BSeriesPair, precision: int) -> QSeries:
    """The numeric count generating series for one geometry, mod q^precision."""
    return _assemble_rhs(geom.chi_L, geom.K2, geom.LK, geom.chi_O / 2,
                         B, precision, RATIONAL)


def conjecture_rhs_symbolic(B: BSeriesPair, precision: int) -> QSeries:
    """The same series over Poly4, with (L^2, LK, K^2, c2) = (x, y, z, t)."""
    chi_o = (Z + T) * Fraction(1, 12)
    chi_l = (X - Y) * Fraction(1, 2) + chi_o
    return _assemble_rhs(chi_l, Z, Y, chi_o * Fraction(1, 2),
                         B, precision, POLY4)


def tdelta_universal(B: BSeriesPair, n_max: int):
    """Universal polynomials T_0 .. T_{n_max} as Poly4 values.

    Obtained by expanding the symbolic right-hand side in the base
    x = DG2(q).  Needs B to precision at least n_max + 1.
    """
    prec = n_max + 1
    rhs = conjecture_rhs_symbolic(B, prec)
    base = lift(dg2(prec))
    return expand_in_base(rhs, base)[:n_max + 1]


def tdelta_evaluate(geom: SurfaceGeometry, B: BSeriesPair, n_max: int):
    """Numeric counts t_0 .. t_{n_max} for one geometry (rationals)."""
    prec = n_max + 1
    rhs = conjecture_rhs(geom, B, prec)
    return expand_in_base(rhs, dg2(prec))[:n_max + 1]


def universal_log_parts(B: BSeriesPair, precision: int):
    """The four exponent series A1..A4 of the disjoint-union structure

        sum_delta T_delta x^delta = exp(L^2 A1 + LK A2 + K^2 A3 + c2 A4),

    returned as q-series of valuation >= 1."""
    w = precision + 2
    log_g, log_m = _log_pieces(w)
    log_b1 = B.b1.log()
    log_b2 = B.b2.log()
    a1 = log_g.scale(Fraction(1, 2)).truncate(precision)
    a2 = (log_g.scale(Fraction(-1, 2)) + log_b2).truncate(
        min(precision, log_b2.precision))
    a3 = (log_g.scale(Fraction(1, 12)) + log_b1
          - log_m.scale(Fraction(1, 24))).truncate(
        min(precision, log_b1.precision))
    a4 = (log_g.scale(Fraction(1, 12))
          - log_m.scale(Fraction(1, 24))).truncate(precision)
    return a1, a2, a3, a4


def nr_series(geom: SurfaceGeometry, m: int, r: int, B: BSeriesPair,
              precision: int) -> QSeries:
    """The Laurent series sum_l n_r(l, m) q^l
        = B1^{K^2} B2^m (DG2)^r D2G2 / (Delta D2G2)^{chi(O)/2}.

    Its q^l coefficient equals T_{l + chi(O) - 1 - r}(2l + m, m, K^2, c2);
    m plays the role of LK.  chi(O) must be an integer here (the valuation
    shift is q^{-chi(O)}), which holds for every actual surface.
    """
    chi_o = geom.chi_O
    if chi_o.denominator != 1:
        raise ValueError("nr_series needs integral chi(O); got %s" % chi_o)
    chi_o = int(chi_o)
    w = precision + 2 + max(chi_o, 0) + r
    out = d2g2(w)
    if r:
        out = out * dg2(w).pow(r)
    if geom.K2:
        out = out * B.b1.pow(geom.K2)
    if m:
        out = out * B.b2.pow(m)
    if chi_o:
        unit = (delta(w + 2) * d2g2(w + 2)).shift(-2)
        out = out * unit.pow(Fraction(-chi_o, 2))
        out = out.shift(-chi_o)
    return out.truncate(min(precision, out.precision))


# --- fitting B1, B2 from plane Severi degrees -------------------------------------

@dataclass(frozen=True)
class PairResidual:
    """Difference between one degree pair's solution and the canonical one."""

    delta: int
    d1: int
    d2: int
    c2_residual: Fraction
    c3_residual: Fraction

    @property
    def clean(self):
        return self.c2_residual == 0 and self.c3_residual == 0


@dataclass
class FitResult:
    """C1, C2, C3 coefficient sequences in the base x = DG2 plus the
    recovered B-series and the overdetermination report."""

    max_delta: int
    degrees: tuple
    c1: list
    c2: list
    c3: list
    b1: QSeries
    b2: QSeries
    residuals: list = field(default_factory=list)

    @property
    def b(self) -> BSeriesPair:
        return BSeriesPair(self.b1, self.b2)

    @property
    def consistent(self):
        return all(r.clean for r in self.residuals)


def _log_count_series(table, d, n_max):
    """log sum_delta N^{d,delta} x^delta, valid for delta <= min(n_max, 2d-2)."""
    hi = min(n_max, 2 * d - 2)
    coeffs = [Fraction(table[(d, k)]) for k in range(hi + 1)]
    return QSeries(RATIONAL, 0, coeffs, hi + 1).log()


def _base_expansions(n_max):
    """Expansions of log(DG2/q) and log(Delta D2G2/q^2) in the base x = DG2."""
    w = n_max + 4
    log_g, log_m = _log_pieces(w)
    base = dg2(w)
    gx = expand_in_base(log_g, base)
    mx = expand_in_base(log_m, base)
    return gx, mx


def _x_series_to_q(coeffs, n_max):
    """Interpret coeffs as an x-power series and substitute x = DG2(q)."""
    xs = QSeries(RATIONAL, 0, coeffs, n_max + 1)
    return xs.compose(dg2(n_max + 2))


def fit_BC(table, n_max, degrees) -> FitResult:
    """Fit C2, C3 (and thus B1, B2) from a table of Severi degrees.

    For each plane degree d the count series satisfies, modulo x^{2d-1},
    log sum_delta N^{d,delta} x^delta = d^2 C1(x) + d C2(x) + C3(x) with C1
    pinned to the expansion of (1/2) log(DG2/q) in base x.  Every pair
    d1 < d2 admissible at a given delta (delta <= 2 d1 - 2) determines the
    x^delta coefficients of C2 and C3; the first pair is taken as canonical
    and every further pair must agree exactly, else the overdetermined
    system is inconsistent and an upstream bug is signalled.
    """
    degrees = tuple(sorted(set(int(d) for d in degrees)))
    gx, mx = _base_expansions(n_max)
    c1 = [g / 2 for g in gx[:n_max + 1]]
    logs = {d: _log_count_series(table, d, n_max) for d in degrees}
    c2 = [Fraction(0)] * (n_max + 1)
    c3 = [Fraction(0)] * (n_max + 1)
    residuals = []
    for k in range(1, n_max + 1):
        admissible = [d for d in degrees if k <= 2 * d - 2]
        if len(admissible) < 2:
            raise InsufficientDegrees(
                "x^%d needs two degrees with delta <= 2d-2; have %s"
                % (k, admissible))
        rhs = {d: logs[d].coeff(k) - d * d * c1[k] for d in admissible}
        first = None
        for i in range(len(admissible)):
            for j in range(i + 1, len(admissible)):
                d1, d2 = admissible[i], admissible[j]
                c2_pair = (rhs[d2] - rhs[d1]) / (d2 - d1)
                c3_pair = rhs[d1] - d1 * c2_pair
                if first is None:
                    first = (c2_pair, c3_pair)
                    c2[k], c3[k] = c2_pair, c3_pair
                else:
                    residuals.append(PairResidual(
                        k, d1, d2, c2_pair - first[0], c3_pair - first[1]))
    bad = [r for r in residuals if not r.clean]
    if bad:
        raise InconsistentOverdetermination(
            "degree pairs disagree at x^%d (d1=%d, d2=%d): residuals %s, %s"
            % (bad[0].delta, bad[0].d1, bad[0].d2,
               bad[0].c2_residual, bad[0].c3_residual))
    log_b2_x = [gx[k] / 2 - c2[k] / 3 for k in range(n_max + 1)]
    log_b1_x = [(c3[k] - gx[k] + mx[k] / 2) / 9 for k in range(n_max + 1)]
    b1 = _x_series_to_q(log_b1_x, n_max).exp()
    b2 = _x_series_to_q(log_b2_x, n_max).exp()
    return FitResult(n_max, degrees, c1, c2, c3, b1, b2, residuals)


@dataclass(frozen=True)
class C1CheckRow:
    delta: int
    fitted: Fraction
    expected: Fraction

    @property
    def residual(self):
        return self.fitted - self.expected


def fit3_verify_C1(table, n_max, degrees):
    """Solve for C1, C2, C3 jointly from three degrees and check the fitted
    C1 against the closed form (1/2) log(DG2/q) expanded in base x.

    Returns the per-delta comparison rows; raises
    InconsistentOverdetermination if any fitted coefficient differs."""
    degrees = tuple(sorted(set(int(d) for d in degrees)))
    if len(degrees) != 3:
        raise InsufficientDegrees("the three-degree check needs exactly 3 degrees")
    gx, _ = _base_expansions(n_max)
    logs = {d: _log_count_series(table, d, n_max) for d in degrees}
    rows = []
    for k in range(1, n_max + 1):
        if any(k > 2 * d - 2 for d in degrees):
            raise InsufficientDegrees(
                "x^%d is outside the validity window of degrees %s"
                % (k, degrees))
        d1, d2, d3 = degrees
        v1, v2, v3 = (logs[d].coeff(k) for d in degrees)
        # eliminate C3, then C2, from v_i = d_i^2 C1 + d_i C2 + C3
        w1, w2 = (v2 - v1) / (d2 - d1), (v3 - v2) / (d3 - d2)
        c1_fit = (w2 - w1) / (d3 - d1)
        rows.append(C1CheckRow(k, c1_fit, gx[k] / 2))
    bad = [r for r in rows if r.residual != 0]
    if bad:
        raise InconsistentOverdetermination(
            "fitted C1 deviates from (1/2)log(DG2/q) at x^%d: %s != %s"
            % (bad[0].delta, bad[0].fitted, bad[0].expected))
    return rows
