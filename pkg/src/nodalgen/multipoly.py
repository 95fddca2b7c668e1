"""Sparse exact polynomials in the four universal variables.

Poly4 is Q[x, y, z, t] with the fixed meaning x = L^2, y = LK_S, z = K_S^2,
t = c2(S); it implements the coefficient-domain contract of `qseries`, so a
QSeries over Poly4 carries a whole family of surface counts symbolically.
Poly1 is the univariate companion used for node polynomials in the plane
degree d and for interpolation in the node number.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DuplicateAbscissa, NonInvertibleLeadingCoefficient
from .qseries import Domain, QSeries, format_rational, parse_rational

_NVARS = 4
_VAR_NAMES = ("x", "y", "z", "t")
_ZERO_EXP = (0, 0, 0, 0)


class Poly4:
    """Sparse polynomial: a map from exponent 4-tuples to nonzero Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(int(e) for e in exps)] = c
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({_ZERO_EXP: Fraction(c)})

    @classmethod
    def variable(cls, i):
        exps = [0] * _NVARS
        exps[i] = 1
        return cls({tuple(exps): Fraction(1)})

    @classmethod
    def one(cls):
        return cls.constant(1)

    # --- ring structure -----------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly4):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly4.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        p = Poly4.__new__(Poly4)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly4.__new__(Poly4)
        p.terms = {exps: -c for exps, c in self.terms.items()}
        return p

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly4.zero()
            p = Poly4.__new__(Poly4)
            p.terms = {exps: c * other for exps, c in self.terms.items()}
            return p
        if not isinstance(other, Poly4):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        p = Poly4.__new__(Poly4)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            raise ValueError("negative polynomial power")
        acc = Poly4.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "Poly4(%s)" % self.to_text()

    # --- queries --------------------------------------------------------------

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_constant(self):
        return all(e == _ZERO_EXP for e in self.terms)

    def constant_value(self):
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def eval4(self, values):
        """Exact evaluation at a 4-tuple of rationals."""
        vals = [Fraction(v) for v in values]
        acc = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v ** e
            acc += term
        return acc

    def specialize_p2(self):
        """Substitute (x, y, z, t) = (d^2, -3d, 9, 3), returning a Poly1 in d."""
        out = {}
        for (a, b, c, e), coeff in self.terms.items():
            deg = 2 * a + b
            val = coeff * Fraction(-3) ** b * Fraction(9) ** c * Fraction(3) ** e
            out[deg] = out.get(deg, Fraction(0)) + val
        if not out:
            return Poly1(())
        coeffs = [Fraction(0)] * (max(out) + 1)
        for deg, val in out.items():
            coeffs[deg] = val
        return Poly1(coeffs)

    # --- text form --------------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order on (x, y, z, t)."""
        return sorted(self.terms.items(),
                      key=lambda kv: (-sum(kv[0]),
                                      tuple(-e for e in kv[0])))

    def to_text(self):
        """Deterministic text form: 'c * x^a y^b z^c t^d' monomials joined by ' + '."""
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for name, e in zip(_VAR_NAMES, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            cs = format_rational(c)
            parts.append("%s * %s" % (cs, " ".join(factors)) if factors else cs)
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text):
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms = {}
        for token in text.split(" + "):
            if " * " in token:
                cs, mono = token.split(" * ", 1)
                exps = [0] * _NVARS
                for factor in mono.split():
                    if "^" in factor:
                        name, e = factor.split("^")
                        exps[_VAR_NAMES.index(name)] = int(e)
                    else:
                        exps[_VAR_NAMES.index(factor)] = 1
                key = tuple(exps)
            else:
                cs = token
                key = _ZERO_EXP
            terms[key] = terms.get(key, Fraction(0)) + parse_rational(cs)
        return cls(terms)

    def to_doc(self):
        return {
            "variables": list(_VAR_NAMES),
            "terms": [{"exponents": list(exps),
                       "coefficient": format_rational(c)}
                      for exps, c in self.sorted_terms()],
        }


X = Poly4.variable(0)
Y = Poly4.variable(1)
Z = Poly4.variable(2)
T = Poly4.variable(3)


def _invert_poly4(p):
    if not p.is_constant() or not p:
        raise NonInvertibleLeadingCoefficient(
            "only nonzero rational constants are invertible in Poly4")
    return Poly4.constant(1 / p.constant_value())


POLY4 = Domain(
    name="poly4",
    zero=Poly4.zero(),
    one=Poly4.one(),
    coerce=lambda c: c if isinstance(c, Poly4) else Poly4.constant(c),
    invert=_invert_poly4,
    format_coeff=lambda p: p.to_text(),
    parse_coeff=Poly4.from_text,
)


def lift(series: QSeries) -> QSeries:
    """Lift a rational-coefficient QSeries to Poly4 coefficients."""
    if series.domain is POLY4:
        return series
    return series.map_coefficients(Poly4.constant, POLY4)


class Poly1:
    """Dense exact-rational univariate polynomial, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def variable(cls):
        return cls((0, 1))

    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __call__(self, v):
        acc = Fraction(0)
        v = Fraction(v)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1([self.coefficient(i) + other.coefficient(i)
                      for i in range(n)])

    def __neg__(self):
        return Poly1([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly1([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly1(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly1.constant(other)
        if not isinstance(other, Poly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return "Poly1(%s)" % (list(map(str, self.coeffs)),)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def to_doc(self, variable="d"):
        return {"variable": variable,
                "coefficients": [format_rational(c) for c in self.coeffs]}


def interpolate(points) -> Poly1:
    """Exact Lagrange interpolation through (abscissa, value) pairs."""
    pts = [(Fraction(a), Fraction(b)) for a, b in points]
    seen = set()
    for a, _ in pts:
        if a in seen:
            raise DuplicateAbscissa("abscissa %s repeated" % a)
        seen.add(a)
    acc = Poly1(())
    for i, (xi, yi) in enumerate(pts):
        basis = Poly1.constant(yi)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            # (X - xj) / (xi - xj)
            inv = 1 / (xi - xj)
            basis = basis * Poly1((-xj * inv, inv))
        acc = acc + basis
    return acc
