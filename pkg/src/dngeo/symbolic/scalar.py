"""Charts and canonical rational-function scalars.

A ScalarExpr is a fraction num/den of Polynomials over the chart's
coefficient field, kept in the canonical form

    * gcd(num, den) = 1,
    * den monic under graded-lex (so its leading coefficient is 1, which in
      Q(i) has positive real part),
    * the zero scalar is stored as 0/1.

Two ScalarExpr built in any order from the same rational function therefore
compare equal structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ChartMismatchError, PointEvaluationError, ZeroDenominatorError
from .gaussian import GaussianRational
from .poly import Polynomial, divexact, poly_gcd


@dataclass(frozen=True)
class Chart:
    """A named coordinate chart: ordered variables plus a scalar mode."""

    name: str
    variables: tuple
    mode: str = "real"

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("chart variables must be distinct")
        if len(self.variables) < 1:
            raise ValueError("chart needs at least one variable")
        if self.mode not in ("real", "complex"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "complex" and "i" in self.variables:
            raise ValueError("'i' is reserved in complex mode")

    @property
    def dim(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r} on chart {self.name}") from None

    # -- scalar constructors ----------------------------------------------

    def coeff(self, value):
        """Coerce a number into this chart's coefficient field."""
        if self.mode == "complex":
            return GaussianRational.coerce(value)
        if isinstance(value, GaussianRational):
            if not value.is_real():
                raise ValueError("complex coefficient on a real chart")
            return value.re
        return Fraction(value)

    def zero(self) -> "ScalarExpr":
        return ScalarExpr(self, Polynomial.zero(self.dim), self._poly_one())

    def one(self) -> "ScalarExpr":
        return self.const(1)

    def const(self, value) -> "ScalarExpr":
        return ScalarExpr(self, Polynomial.const(self.dim, self.coeff(value)), self._poly_one())

    def imag_unit(self) -> "ScalarExpr":
        if self.mode != "complex":
            raise ValueError("imaginary unit requires a complex-mode chart")
        return self.const(GaussianRational(0, 1))

    def var(self, name: str) -> "ScalarExpr":
        k = self.index(name)
        return ScalarExpr(
            self, Polynomial.variable(self.dim, k, self.coeff(1)), self._poly_one()
        )

    def scalar(self, text: str) -> "ScalarExpr":
        from .parse import parse_scalar

        return parse_scalar(text, self)

    def _poly_one(self) -> Polynomial:
        return Polynomial.const(self.dim, self.coeff(1))

    def compatible(self, other: "Chart") -> bool:
        return self.variables == other.variables and self.mode == other.mode


def same_chart(*objs):
    chart = objs[0].chart
    for o in objs[1:]:
        if not chart.compatible(o.chart):
            raise ChartMismatchError(
                f"chart mismatch: {chart.name}{chart.variables} vs "
                f"{o.chart.name}{o.chart.variables}"
            )
    return chart


class ScalarExpr:
    __slots__ = ("chart", "num", "den")

    def __init__(self, chart: Chart, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise ZeroDenominatorError("zero denominator")
        if num.is_zero():
            num = Polynomial.zero(chart.dim)
            den = chart._poly_one()
        elif not den.is_one():
            g = poly_gcd(num, den)
            if not g.is_one():
                num = divexact(num, g)
                den = divexact(den, g)
            if not den.is_one():
                _, lc = den.leading()
                if lc != 1:
                    inv = 1 / lc
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.chart = chart
        self.num = num
        self.den = den

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.chart.const(other)
        if not isinstance(other, ScalarExpr):
            return NotImplemented
        return (
            self.chart.compatible(other.chart)
            and self.num == other.num
            and self.den == other.den
        )

    __hash__ = None

    # -- field operations ----------------------------------------------------

    def _coerce(self, other) -> "ScalarExpr":
        if isinstance(other, ScalarExpr):
            same_chart(self, other)
            return other
        return self.chart.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den.is_one() and o.den.is_one():
            return ScalarExpr(self.chart, self.num + o.num, self.den)
        return ScalarExpr(
            self.chart, self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr(self.chart, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.num.is_zero() or o.num.is_zero():
            return self.chart.zero()
        if self.den.is_one() and o.den.is_one():
            return ScalarExpr(self.chart, self.num * o.num, self.den)
        # cross-cancel before multiplying to keep intermediate sizes down
        a, b, c, d = self.num, self.den, o.num, o.den
        g1 = poly_gcd(a, d)
        if not g1.is_one():
            a, d = divexact(a, g1), divexact(d, g1)
        g2 = poly_gcd(c, b)
        if not g2.is_one():
            c, b = divexact(c, g2), divexact(b, g2)
        return ScalarExpr(self.chart, a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarExpr":
        if self.num.is_zero():
            raise ZeroDenominatorError("inverse of zero")
        return ScalarExpr(self.chart, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.chart.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus -------------------------------------------------------------

    def diff(self, var) -> "ScalarExpr":
        k = var if isinstance(var, int) else self.chart.index(var)
        if self.den.is_one():
            return ScalarExpr(self.chart, self.num.diff(k), self.den)
        n, d = self.num, self.den
        return ScalarExpr(self.chart, n.diff(k) * d - n * d.diff(k), d * d)

    def eval(self, point):
        """Exact value at a rational point; raises PointEvaluationError on poles."""
        if len(point) != self.chart.dim:
            raise ValueError("point dimension mismatch")
        point = [self.chart.coeff(v) for v in point]
        dv = self.den.eval(point)
        if not dv:
            raise PointEvaluationError(f"denominator vanishes at {tuple(point)}")
        nv = self.num.eval(point)
        if not nv:
            return self.chart.coeff(0)
        return nv / dv

    def substitute(self, assign: dict) -> "ScalarExpr":
        """Substitute constants for named variables; result stays on this chart."""
        amap = {self.chart.index(k): self.chart.coeff(v) for k, v in assign.items()}
        den = self.den.substitute(amap)
        if den.is_zero():
            raise PointEvaluationError("denominator vanishes on the slice")
        return ScalarExpr(self.chart, self.num.substitute(amap), den)

    def project(self, subchart: Chart) -> "ScalarExpr":
        """Re-express on a chart whose variables are a subset of this one's."""
        keep = [self.chart.index(v) for v in subchart.variables]
        return ScalarExpr(subchart, self.num.project(keep), self.den.project(keep))

    def extend(self, bigchart: Chart) -> "ScalarExpr":
        """Inject into a chart containing this chart's variables."""
        imap = [bigchart.index(v) for v in self.chart.variables]
        return ScalarExpr(
            bigchart,
            self.num.extend(bigchart.dim, imap),
            self.den.extend(bigchart.dim, imap),
        )

    def __repr__(self):
        return f"<{to_str(self)}>"

    def __str__(self):
        return to_str(self)


# -- canonical printing -------------------------------------------------------


def coeff_to_str(c) -> str:
    """Canonical text for a coefficient (used inside polynomial printing)."""
    if isinstance(c, GaussianRational):
        if c.im == 0:
            return str(c.re)
        if c.re == 0:
            if c.im == 1:
                return "i"
            if c.im == -1:
                return "-i"
            return f"{c.im}*i"
        sign = "+" if c.im > 0 else "-"
        mag = abs(c.im)
        imtxt = "i" if mag == 1 else f"{mag}*i"
        return f"({c.re}{sign}{imtxt})"
    return str(c)


def _monomial_str(expo, names) -> str:
    pieces = []
    for name, d in zip(names, expo):
        if d == 1:
            pieces.append(name)
        elif d > 1:
            pieces.append(f"{name}^{d}")
    return "*".join(pieces)


def poly_to_str(p: Polynomial, names) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for expo, c in p.sorted_terms():
        mono = _monomial_str(expo, names)
        if isinstance(c, GaussianRational) and c.im != 0 and c.re != 0:
            coef = coeff_to_str(c)  # parenthesized mixed coefficient
            text = f"{coef}*{mono}" if mono else coef
            sign = "+"
        else:
            # real or purely imaginary: factor the sign out for readability
            if isinstance(c, GaussianRational) and c.im != 0:
                neg = c.im < 0
                mag = abs(c.im)
                core = "i" if mag == 1 else f"{mag}*i"
            else:
                cval = c.re if isinstance(c, GaussianRational) else c
                neg = cval < 0
                mag = abs(cval)
                core = "" if mag == 1 else str(mag)
            bits = [b for b in (core, mono) if b]
            text = "*".join(bits) if bits else "1"
            sign = "-" if neg else "+"
        pieces.append((sign, text))
    first_sign, first = pieces[0]
    out = first if first_sign == "+" else f"-{first}"
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


def to_str(s: ScalarExpr) -> str:
    names = s.chart.variables
    if s.den.is_one():
        return poly_to_str(s.num, names)
    return f"({poly_to_str(s.num, names)})/({poly_to_str(s.den, names)})"
