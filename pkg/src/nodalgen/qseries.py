"""Exact truncated Laurent series in one formal variable q.

A QSeries is sum_{i >= v} c_{i-v} q^i known modulo q^P.  It stores the
valuation v, the precision P and the coefficient window c_0 .. c_{P-v-1}.
Coefficients live in a pluggable exact domain: Fraction by default, or the
four-variable polynomial ring from `multipoly`.  There is no floating point
anywhere; every operation returns the tightest precision it can justify
from its inputs.

q stands for the Fourier variable e^{2 pi i tau} of a q-expansion, but
nothing here ever evaluates analytically: all identities are formal.
All values are immutable after construction, so sharing across threads is
safe.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    BaseValuationMustBeOne,
    DivisionByZeroSeries,
    NegativeValuationUnsupported,
    NonInvertibleLeadingCoefficient,
    OutOfPrecision,
    PositiveValuationRequired,
    UnitConstantTermRequired,
)


def format_rational(c: Fraction) -> str:
    """Render a Fraction as 'num' or 'num/den' with decimal big integers."""
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


class Domain:
    """An exact commutative coefficient ring with decidable equality.

    Elements must support +, -, unary -, * (including * by Fraction) and ==.
    `coerce` embeds ints/Fractions, `invert` inverts a unit or raises
    NonInvertibleLeadingCoefficient, and the two codecs render/parse single
    coefficients for the text serialization.
    """

    __slots__ = ("name", "zero", "one", "coerce", "invert",
                 "format_coeff", "parse_coeff")

    def __init__(self, name, zero, one, coerce, invert,
                 format_coeff, parse_coeff):
        self.name = name
        self.zero = zero
        self.one = one
        self.coerce = coerce
        self.invert = invert
        self.format_coeff = format_coeff
        self.parse_coeff = parse_coeff

    def __repr__(self):
        return "Domain(%s)" % self.name


def _invert_fraction(c: Fraction) -> Fraction:
    if c == 0:
        raise NonInvertibleLeadingCoefficient("zero is not invertible")
    return 1 / c


RATIONAL = Domain(
    name="rational",
    zero=Fraction(0),
    one=Fraction(1),
    coerce=Fraction,
    invert=_invert_fraction,
    format_coeff=format_rational,
    parse_coeff=parse_rational,
)


class QSeries:
    """A truncated Laurent series over an exact coefficient domain."""

    __slots__ = ("domain", "valuation", "coeffs", "precision")

    def __init__(self, domain, valuation, coeffs, precision):
        """Build sum_i coeffs[i] q^{valuation+i}, exact modulo q^precision.

        Coefficients beyond the supplied ones (up to the precision) are
        taken to be known zeros.  The result is canonicalized: the leading
        stored coefficient is nonzero, and the zero-to-precision series
        keeps only its precision.
        """
        precision = int(precision)
        zero = domain.zero
        cs = [domain.coerce(c) if not isinstance(c, type(zero)) else c
              for c in coeffs]
        v = int(valuation)
        while cs and cs[0] == zero:
            cs.pop(0)
            v += 1
        window = precision - v
        if window <= 0 and cs:
            cs = []
        if not cs:
            self.domain = domain
            self.valuation = precision
            self.coeffs = ()
            self.precision = precision
            return
        if len(cs) > window:
            cs = cs[:window]
            while cs and cs[0] == zero:  # re-trim after cut
                cs.pop(0)
                v += 1
            window = precision - v
        if not cs:
            self.domain = domain
            self.valuation = precision
            self.coeffs = ()
            self.precision = precision
            return
        cs.extend([zero] * (window - len(cs)))
        self.domain = domain
        self.valuation = v
        self.coeffs = tuple(cs)
        self.precision = precision

    # --- constructors -----------------------------------------------------

    @classmethod
    def make(cls, coeffs, valuation=0, precision=None, domain=RATIONAL):
        """Convenience constructor; precision defaults to just past the data."""
        if precision is None:
            precision = valuation + len(coeffs)
        return cls(domain, valuation, coeffs, precision)

    @classmethod
    def zero(cls, precision, domain=RATIONAL):
        return cls(domain, precision, (), precision)

    @classmethod
    def one(cls, precision, domain=RATIONAL):
        return cls(domain, 0, (domain.one,), precision)

    @classmethod
    def monomial(cls, n, precision, domain=RATIONAL, coefficient=1):
        return cls(domain, n, (domain.coerce(coefficient),), precision)

    # --- inspection ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.coeffs

    def coeff(self, n):
        """The coefficient of q^n; raises OutOfPrecision for n >= precision."""
        if n >= self.precision:
            raise OutOfPrecision(
                "coefficient of q^%d requested from a series known mod q^%d"
                % (n, self.precision))
        if self.is_zero or n < self.valuation:
            return self.domain.zero
        return self.coeffs[n - self.valuation]

    def coefficients(self, lo, hi):
        """Coefficients of q^lo .. q^{hi-1} as a list."""
        return [self.coeff(n) for n in range(lo, hi)]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.domain is other.domain
                and self.valuation == other.valuation
                and self.precision == other.precision
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.domain.name, self.valuation, self.precision,
                     self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "O(q^%d)" % self.precision
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == self.domain.zero:
                continue
            n = self.valuation + i
            cs = self.domain.format_coeff(c)
            if n == 0:
                parts.append(cs)
            elif n == 1:
                parts.append("%s*q" % cs)
            else:
                parts.append("%s*q^%d" % (cs, n))
            if len(parts) > 8:
                parts.append("...")
                break
        parts.append("O(q^%d)" % self.precision)
        return " + ".join(parts)

    # --- ring operations ----------------------------------------------------

    def _check_domain(self, other):
        if self.domain is not other.domain:
            raise ValueError("mixed coefficient domains: %s vs %s"
                             % (self.domain.name, other.domain.name))

    def __add__(self, other):
        self._check_domain(other)
        prec = min(self.precision, other.precision)
        if self.is_zero and other.is_zero:
            return QSeries.zero(prec, self.domain)
        vs = [s.valuation for s in (self, other) if not s.is_zero]
        v = min(vs)
        zero = self.domain.zero
        out = [zero] * (prec - v)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.valuation + i - v
                if 0 <= k < len(out):
                    out[k] = out[k] + c
        return QSeries(self.domain, v, out, prec)

    def __neg__(self):
        return QSeries(self.domain, self.valuation,
                       [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        return self + (-other)

    def _eff_valuation(self):
        # for precision bookkeeping a zero-to-precision series behaves as if
        # its valuation were its precision
        return self.precision if self.is_zero else self.valuation

    def __mul__(self, other):
        self._check_domain(other)
        prec = min(self.precision + other._eff_valuation(),
                   other.precision + self._eff_valuation())
        if self.is_zero or other.is_zero:
            return QSeries.zero(prec, self.domain)
        v = self.valuation + other.valuation
        zero = self.domain.zero
        out = [zero] * (prec - v)
        cb = other.coeffs
        nb = len(cb)
        for i, ca in enumerate(self.coeffs):
            if ca == zero:
                continue
            jmax = min(nb, len(out) - i)
            for j in range(jmax):
                if cb[j] == zero:
                    continue
                out[i + j] = out[i + j] + ca * cb[j]
        return QSeries(self.domain, v, out, prec)

    def scale(self, c):
        """Multiply every coefficient by the scalar c (Fraction or ring element)."""
        if not c:
            return QSeries.zero(self.precision, self.domain)
        return QSeries(self.domain, self.valuation,
                       [c * x for x in self.coeffs], self.precision)

    def shift(self, k):
        """Multiply by the exact monomial q^k."""
        if self.is_zero:
            return QSeries.zero(self.precision + k, self.domain)
        return QSeries(self.domain, self.valuation + k, self.coeffs,
                       self.precision + k)

    def truncate(self, precision):
        """Forget coefficients at orders >= precision."""
        if precision > self.precision:
            raise OutOfPrecision("cannot raise precision from %d to %d"
                                 % (self.precision, precision))
        return QSeries(self.domain, self._eff_valuation(), self.coeffs,
                       precision)

    def inverse(self):
        """Multiplicative inverse; the leading coefficient must be a unit."""
        if self.is_zero:
            raise DivisionByZeroSeries("cannot invert a zero-to-precision series")
        linv = self.domain.invert(self.coeffs[0])
        v = self.valuation
        m = self.precision - v  # relative precision of the unit part
        zero = self.domain.zero
        u = [c * linv for c in self.coeffs]  # 1 + u_1 q + ...
        w = [self.domain.one] + [zero] * (m - 1)
        for n in range(1, m):
            acc = zero
            for i in range(1, n + 1):
                if u[i] != zero:
                    acc = acc + u[i] * w[n - i]
            w[n] = -acc
        return QSeries(self.domain, -v, [c * linv for c in w],
                       self.precision - 2 * v)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        return self.pow(e)

    def pow(self, e):
        """Formal power with integer, Fraction, or ring-element exponent.

        Non-integer (and ring-element) exponents go through exp(e*log) and
        require valuation 0 with constant term one.  A ring-element exponent
        assumes the series already lives over a domain that can absorb the
        products e * coefficient (lift first if needed).
        """
        if isinstance(e, Fraction) and e.denominator == 1:
            e = int(e)
        if isinstance(e, int):
            if e == 0:
                return QSeries.one(self.precision, self.domain)
            if e < 0:
                return self.inverse().pow(-e)
            acc = None
            base = self
            k = e
            while k:
                if k & 1:
                    acc = base if acc is None else acc * base
                k >>= 1
                if k:
                    base = base * base
            return acc
        return self.log().scale(e).exp()

    # --- calculus-flavoured formal operations --------------------------------

    def derivative(self):
        """The operator D = q d/dq: multiply the q^n coefficient by n."""
        if self.is_zero:
            return self
        out = [(self.valuation + i) * c for i, c in enumerate(self.coeffs)]
        return QSeries(self.domain, self.valuation, out, self.precision)

    def exp(self):
        """exp of a series of positive valuation (so the sum truncates).

        Computed through the first-order recurrence n E_n = sum m a_m E_{n-m}
        coming from D(exp a) = D(a) exp(a); one convolution's worth of work.
        """
        prec = self.precision
        if self.is_zero:
            return QSeries.one(prec, self.domain)
        if self.valuation < 1:
            raise PositiveValuationRequired(
                "exp needs valuation >= 1, got %d" % self.valuation)
        zero = self.domain.zero
        a = [self.coeff(n) if n >= self.valuation else zero
             for n in range(prec)]
        out = [self.domain.one] + [zero] * (prec - 1)
        for n in range(1, prec):
            acc = zero
            for m in range(1, n + 1):
                if a[m] != zero:
                    acc = acc + (a[m] * out[n - m]) * m
            out[n] = acc * Fraction(1, n)
        return QSeries(self.domain, 0, out, prec)

    def log(self):
        """log of a series with valuation 0 and constant term one."""
        if self.is_zero or self.valuation != 0 \
                or self.coeffs[0] != self.domain.one:
            raise UnitConstantTermRequired(
                "log needs constant term 1 at valuation 0")
        prec = self.precision
        zero = self.domain.zero
        a = self.coeffs
        out = [zero] * prec
        for n in range(1, prec):
            acc = zero
            for m in range(1, n):
                if out[m] != zero and a[n - m] != zero:
                    acc = acc + (out[m] * a[n - m]) * m
            out[n] = a[n] - acc * Fraction(1, n)
        return QSeries(self.domain, 0, out, prec)

    def compose(self, g):
        """Substitute: self(g(q)).  Needs valuation(self) >= 0, valuation(g) >= 1."""
        self._check_domain(g)
        if not self.is_zero and self.valuation < 0:
            raise NegativeValuationUnsupported(
                "composition needs a non-negative valuation outer series")
        if not g.is_zero and g.valuation < 1:
            raise PositiveValuationRequired(
                "composition needs an inner series of valuation >= 1")
        vg = g._eff_valuation()
        prec = min(self.precision * max(vg, 1), g.precision)
        if self.is_zero:
            return QSeries.zero(prec, self.domain)
        acc = QSeries.zero(prec, self.domain)
        gpow = QSeries.one(prec, self.domain)
        if self.valuation > 0:
            gpow = g.pow(self.valuation)
        for i, c in enumerate(self.coeffs):
            if c != self.domain.zero:
                acc = acc + gpow.scale(c)
            if i + 1 < len(self.coeffs):
                gpow = gpow * g
        return acc.truncate(min(prec, acc.precision))

    def map_coefficients(self, fn, domain):
        """Apply fn to every coefficient, landing in the given domain."""
        return QSeries(domain, self._eff_valuation(),
                       [fn(c) for c in self.coeffs], self.precision)

    # --- serialization --------------------------------------------------------

    def to_doc(self):
        """Structured-document form with big integers as decimal strings."""
        return {
            "domain": self.domain.name,
            "valuation": self._eff_valuation(),
            "precision": self.precision,
            "coefficients": [self.domain.format_coeff(c) for c in self.coeffs],
        }

    @classmethod
    def from_doc(cls, doc, domain=RATIONAL):
        if doc.get("domain", domain.name) != domain.name:
            raise ValueError("document domain %r does not match %r"
                             % (doc.get("domain"), domain.name))
        coeffs = [domain.parse_coeff(s) for s in doc["coefficients"]]
        return cls(domain, int(doc["valuation"]), coeffs, int(doc["precision"]))


def expand_in_base(f: QSeries, g: QSeries):
    """Write f = sum_k c_k g^k for a base g of valuation exactly 1.

    Returns c_0 .. c_{P-1} with P = min(prec f, prec g); the congruence
    f = sum_{k<P} c_k g^k holds modulo q^P.  This is the leading-term
    elimination implementation: at step k the remainder has valuation >= k
    and c_k is its q^k coefficient divided by (leading g)^k.
    """
    _check_expand_args(f, g)
    prec = min(f.precision, g.precision)
    linv = g.domain.invert(g.coeffs[0])
    out = []
    h = f
    gpow = QSeries.one(prec + 1, g.domain)
    linv_pow = g.domain.one
    for k in range(prec):
        c = h.coeff(k) * linv_pow
        out.append(c)
        if c != g.domain.zero:
            h = h - gpow.scale(c)
        if k + 1 < prec:
            gpow = gpow * g
            linv_pow = linv_pow * linv
    return out


def expand_in_base_residue(f: QSeries, g: QSeries):
    """Same contract as expand_in_base, via the constant-term residue rule:

        c_k = [q^0] f Dg / g^{k+1}.

    The expansion coefficients below min(prec f, prec g) depend only on the
    truncations of f and g, so both are promoted to exact polynomials at a
    padded precision before the divisions; this keeps the generic precision
    tracker from discarding the top coefficient.
    """
    _check_expand_args(f, g)
    prec = min(f.precision, g.precision)
    big = 2 * prec + 2
    fx = QSeries(f.domain, f._eff_valuation(), f.coeffs, big)
    gx = QSeries(g.domain, g.valuation, g.coeffs, big)
    ginv = gx.inverse()
    cur = fx * gx.derivative()
    out = []
    for _ in range(prec):
        cur = cur * ginv
        out.append(cur.coeff(0))
    return out


def _check_expand_args(f, g):
    if g.is_zero or g.valuation != 1:
        raise BaseValuationMustBeOne("expansion base must have valuation 1")
    if not f.is_zero and f.valuation < 0:
        raise NegativeValuationUnsupported(
            "cannot expand a series with negative valuation")
