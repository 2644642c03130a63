"""Multivariate polynomials over Q or Q(i).

A Polynomial is a sparse map from exponent tuples to nonzero coefficients
(Fraction in real mode, GaussianRational in complex mode).  The term order
used for leading terms, printing and canonical forms is graded lexicographic
over the chart's variable order.

The gcd is computed by recursive content / primitive-part extraction with a
subresultant pseudo-remainder sequence on the main variable, so no external
library is needed.  All divisions performed by the PRS are exact.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import GaussianRational


def _grlex_key(expo):
    return (sum(expo), expo)


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict):
        # assumes terms already clean: no zero coefficients
        self.nvars = nvars
        self.terms = terms

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars, {})

    @staticmethod
    def const(nvars: int, c) -> "Polynomial":
        if not c:
            return Polynomial(nvars, {})
        return Polynomial(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, k: int, one) -> "Polynomial":
        expo = [0] * nvars
        expo[k] = 1
        return Polynomial(nvars, {tuple(expo): one})

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        return sum(e) == 0 and c == 1

    # -- structure --------------------------------------------------------

    def degree_in(self, k: int) -> int:
        if not self.terms:
            return -1
        return max(e[k] for e in self.terms)

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        """Terms in descending graded-lex order (canonical print order)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.nvars)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    out[e] = c
                else:
                    s = s + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return Polynomial(self.nvars, out)

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial(self.nvars, {e: k * c for e, k in self.terms.items()})

    def mul_term(self, expo, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial(
            self.nvars,
            {tuple(a + b for a, b in zip(e, expo)): k * c for e, k in self.terms.items()},
        )

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.const(self.nvars, _one_like(self))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.terms!r})"

    # -- calculus and evaluation -------------------------------------------

    def diff(self, k: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            d = e[k]
            if d == 0:
                continue
            ne = list(e)
            ne[k] = d - 1
            out[tuple(ne)] = c * d
        return Polynomial(self.nvars, out)

    def eval(self, point):
        """Evaluate at a full point (sequence of field elements)."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for k, d in enumerate(e):
                if d:
                    v = v * point[k] ** d
            total = total + v
        return total

    def substitute(self, assign: dict) -> "Polynomial":
        """Partially substitute constants for variables (indices -> values)."""
        out = Polynomial.zero(self.nvars)
        for e, c in self.terms.items():
            v = c
            ne = list(e)
            for k, val in assign.items():
                d = e[k]
                if d:
                    v = v * val ** d
                ne[k] = 0
            if v:
                out = out + Polynomial(self.nvars, {tuple(ne): v})
        return out

    def project(self, keep) -> "Polynomial":
        """Reindex onto the variables listed in `keep` (others must not occur)."""
        out = {}
        for e, c in self.terms.items():
            ne = tuple(e[k] for k in keep)
            if sum(ne) != sum(e):
                raise ValueError("polynomial involves a projected-out variable")
            out[ne] = c
        return Polynomial(len(keep), out)

    def extend(self, new_nvars: int, index_map) -> "Polynomial":
        """Inject into a larger variable space; index_map[k] = new index of old var k."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * new_nvars
            for k, d in enumerate(e):
                ne[index_map[k]] = d
            out[tuple(ne)] = c
        return Polynomial(new_nvars, out)


def _one_like(p: Polynomial):
    for c in p.terms.values():
        if isinstance(c, GaussianRational):
            return GaussianRational(1)
        return Fraction(1)
    return Fraction(1)


def poly_one(nvars: int, complex_mode: bool = False) -> Polynomial:
    one = GaussianRational(1) if complex_mode else Fraction(1)
    return Polynomial.const(nvars, one)


# -- exact division ---------------------------------------------------------


def divexact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact quotient f/g; raises ValueError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return f
    if g.is_one():
        return f
    ge, gc = g.leading()
    out: dict = {}
    r = f
    while not r.is_zero():
        re, rc = r.leading()
        qe = tuple(a - b for a, b in zip(re, ge))
        if any(d < 0 for d in qe):
            raise ValueError("inexact polynomial division")
        qc = rc / gc
        out[qe] = qc
        r = r - g.mul_term(qe, qc)
    return Polynomial(f.nvars, out)


# -- univariate views --------------------------------------------------------


def uni_coeff(f: Polynomial, k: int, d: int) -> Polynomial:
    """Coefficient of x_k^d, as a polynomial with zero k-exponent."""
    out = {}
    for e, c in f.terms.items():
        if e[k] == d:
            ne = list(e)
            ne[k] = 0
            out[tuple(ne)] = c
    return Polynomial(f.nvars, out)


def uni_lead(f: Polynomial, k: int) -> Polynomial:
    return uni_coeff(f, k, f.degree_in(k))


def prem(f: Polynomial, g: Polynomial, k: int) -> Polynomial:
    """Pseudo-remainder of f by g with respect to x_k.

    Satisfies lc_k(g)^(deg_k f - deg_k g + 1) * f = q*g + prem(f, g, k).
    """
    l = g.degree_in(k)
    lcg = uni_lead(g, k)
    r = f
    e = f.degree_in(k) - l + 1
    xk_shift = [0] * f.nvars
    while not r.is_zero() and r.degree_in(k) >= l:
        dr = r.degree_in(k)
        lcr = uni_lead(r, k)
        xk_shift[k] = dr - l
        r = lcg * r - lcr.mul_term(tuple(xk_shift), _one_like(lcg)) * g
        e -= 1
    for _ in range(e):
        r = lcg * r
    return r


# -- gcd ---------------------------------------------------------------------


def _monic(p: Polynomial) -> Polynomial:
    if p.is_zero():
        return p
    _, lc = p.leading()
    if lc == 1:
        return p
    return p.scale(1 / lc)


def content_wrt(f: Polynomial, k: int) -> Polynomial:
    """gcd of the coefficients of f viewed as univariate in x_k."""
    c = Polynomial.zero(f.nvars)
    for d in range(f.degree_in(k) + 1):
        coeff = uni_coeff(f, k, d)
        if coeff.is_zero():
            continue
        c = poly_gcd(c, coeff)
        if c.is_one():
            break
    return c


def _subresultant_last(f: Polynomial, g: Polynomial, k: int) -> Polynomial:
    """Last nonzero member of the subresultant PRS of f, g in x_k.

    Requires deg_k(f) >= deg_k(g) >= 1.
    """
    n, m = f.degree_in(k), g.degree_in(k)
    d = n - m
    h = prem(f, g, k)
    if d % 2 == 0:
        h = -h  # divide by beta = (-1)^(d+1)
    lc = uni_lead(g, k)
    c = -(lc ** d)
    last = g
    while not h.is_zero():
        kdeg = h.degree_in(k)
        f, g, m, d = g, h, kdeg, m - kdeg
        last = g
        b = -(lc * c ** d)
        h = prem(f, g, k)
        h = divexact(h, b)
        lc = uni_lead(g, k)
        if d > 1:
            c = divexact((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
    return last


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd of two polynomials over Q or Q(i)."""
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    if f.is_constant() or g.is_constant():
        return Polynomial.const(f.nvars, _one_like(f) if not f.is_zero() else _one_like(g))
    k = next(
        i
        for i in range(f.nvars)
        if f.degree_in(i) > 0 or g.degree_in(i) > 0
    )
    if f.degree_in(k) == 0:
        return poly_gcd(content_wrt(g, k), f)
    if g.degree_in(k) == 0:
        return poly_gcd(content_wrt(f, k), g)
    cf = content_wrt(f, k)
    cg = content_wrt(g, k)
    c = poly_gcd(cf, cg)
    fp = divexact(f, cf)
    gp = divexact(g, cg)
    if fp.degree_in(k) < gp.degree_in(k):
        fp, gp = gp, fp
    last = _subresultant_last(fp, gp, k)
    if last.degree_in(k) == 0:
        return _monic(c)
    pp = divexact(last, content_wrt(last, k))
    return _monic(c * pp)


def poly_lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(f.nvars)
    return _monic(divexact(f * g, poly_gcd(f, g)))
