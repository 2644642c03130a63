"""Linear algebra over the rational-function field.

Elimination is fraction-free in the Bareiss style: every row is first cleared
of denominators, after which all row updates are exact polynomial divisions.
The pivot of each column is the first nonzero entry found scanning the
remaining rows in order, so eliminations, kernels and solutions are
reproducible byte for byte.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import PointEvaluationError
from .gaussian import GaussianRational
from .poly import Polynomial, divexact, poly_gcd, poly_lcm, poly_one
from .scalar import Chart, ScalarExpr, same_chart


class FracMatrix:
    """A rows x cols grid of ScalarExpr on a common chart."""

    __slots__ = ("chart", "rows", "cols", "entries")

    def __init__(self, chart: Chart, entries):
        entries = tuple(tuple(row) for row in entries)
        if entries:
            width = len(entries[0])
            if any(len(row) != width for row in entries):
                raise ValueError("ragged matrix")
        else:
            width = 0
        self.chart = chart
        self.rows = len(entries)
        self.cols = width
        self.entries = entries

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]


def _cleared_rows(m: FracMatrix, rhs=None):
    """Denominator-free copies of the rows (and rhs) as Polynomial lists."""
    one = poly_one(m.chart.dim, m.chart.mode == "complex")
    rows = []
    rvec = []
    for i in range(m.rows):
        entries = list(m.entries[i]) + ([rhs[i]] if rhs is not None else [])
        common = one
        for e in entries:
            if not e.den.is_one():
                common = poly_lcm(common, e.den)
        cleared = []
        for e in entries:
            if common.is_one():
                cleared.append(e.num)
            else:
                cleared.append(e.num * divexact(common, e.den))
        if rhs is not None:
            rvec.append(cleared.pop())
        rows.append(cleared)
    return rows, (rvec if rhs is not None else None)


def _bareiss(rows, rvec=None):
    """In-place fraction-free elimination; returns the pivot list [(row, col)]."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    prev = None
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for i in range(pr, nrows):
            if not rows[i][pc].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            if rvec is not None:
                rvec[pr], rvec[pivot_row] = rvec[pivot_row], rvec[pr]
        piv = rows[pr][pc]
        for i in range(pr + 1, nrows):
            head = rows[i][pc]
            for j in range(ncols):
                val = piv * rows[i][j] - head * rows[pr][j]
                if prev is not None and not val.is_zero():
                    val = divexact(val, prev)
                elif prev is not None:
                    val = Polynomial.zero(val.nvars)
                rows[i][j] = val
            if rvec is not None:
                val = piv * rvec[i] - head * rvec[pr]
                if prev is not None and not val.is_zero():
                    val = divexact(val, prev)
                elif prev is not None:
                    val = Polynomial.zero(val.nvars)
                rvec[i] = val
        pivots.append((pr, pc))
        prev = piv
        pr += 1
        if pr == nrows:
            break
    return pivots


def generic_rank(m: FracMatrix) -> int:
    rows, _ = _cleared_rows(m)
    if not rows:
        return 0
    return len(_bareiss(rows))


def _back_substitute(chart, rows, pivots, values, rhs=None):
    """Fill pivot variables of `values` bottom-up; rhs entries are Polynomials."""
    zero = chart.zero()
    for pr, pc in reversed(pivots):
        acc = (
            ScalarExpr(chart, rhs[pr], chart._poly_one()) if rhs is not None else zero
        )
        for c in range(pc + 1, len(values)):
            if values[c].is_zero() or rows[pr][c].is_zero():
                continue
            acc = acc - ScalarExpr(chart, rows[pr][c], chart._poly_one()) * values[c]
        values[pc] = acc / ScalarExpr(chart, rows[pr][pc], chart._poly_one())
    return values


def normalize_vector(vec):
    """Denominator-cleared, content-reduced copy of a ScalarExpr vector.

    The first nonzero entry's leading coefficient is normalized positive,
    every entry becomes a polynomial, and (in real mode) the integer content
    of all coefficients is 1.
    """
    chart = same_chart(*vec)
    if all(v.is_zero() for v in vec):
        return list(vec)
    one = poly_one(chart.dim, chart.mode == "complex")
    common = one
    for v in vec:
        if not v.den.is_one():
            common = poly_lcm(common, v.den)
    polys = [
        v.num if common.is_one() else v.num * divexact(common, v.den) for v in vec
    ]
    g = Polynomial.zero(chart.dim)
    for p in polys:
        if not p.is_zero():
            g = poly_gcd(g, p)
        if g.is_one():
            break
    if not g.is_one():
        polys = [p if p.is_zero() else divexact(p, g) for p in polys]
    lead = next(p for p in polys if not p.is_zero())
    _, lc = lead.leading()
    if lc != 1:
        inv = 1 / lc
        polys = [p.scale(inv) for p in polys]
    # clear rational denominators and divide out the integer content
    fracs = []
    for p in polys:
        for c in p.terms.values():
            if isinstance(c, GaussianRational):
                fracs.extend((c.re, c.im))
            else:
                fracs.append(c)
    denom_lcm = 1
    for f in fracs:
        if f:
            denom_lcm = denom_lcm * f.denominator // _gcd_int(denom_lcm, f.denominator)
    num_gcd = 0
    for f in fracs:
        if f:
            num_gcd = _gcd_int(num_gcd, abs(f.numerator))
    scale = Fraction(denom_lcm, num_gcd if num_gcd else 1)
    if scale != 1:
        polys = [p.scale(scale) for p in polys]
    return [ScalarExpr(chart, p, chart._poly_one()) for p in polys]


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def kernel_basis(m: FracMatrix):
    """Basis of the right kernel over the function field (normalized vectors)."""
    chart = m.chart
    if m.rows == 0:
        return [
            normalize_vector(
                [chart.one() if c == j else chart.zero() for c in range(m.cols)]
            )
            for j in range(m.cols)
        ]
    rows, _ = _cleared_rows(m)
    pivots = _bareiss(rows)
    pivot_cols = {pc for _, pc in pivots}
    basis = []
    for free in range(m.cols):
        if free in pivot_cols:
            continue
        values = [chart.zero() for _ in range(m.cols)]
        values[free] = chart.one()
        _back_substitute(chart, rows, pivots, values)
        basis.append(normalize_vector(values))
    return basis


def solve_linear(m: FracMatrix, rhs):
    """One particular solution of m x = rhs, or None when inconsistent.

    Free variables are set to zero; the solution is the deterministic output
    of back-substitution after fraction-free elimination.
    """
    chart = m.chart
    if len(rhs) != m.rows:
        raise ValueError("rhs length mismatch")
    rhs = list(rhs)
    if m.rows == 0:
        return [chart.zero() for _ in range(m.cols)]
    rows, rvec = _cleared_rows(m, rhs)
    pivots = _bareiss(rows, rvec)
    pivot_rows = {pr for pr, _ in pivots}
    for i in range(m.rows):
        if i not in pivot_rows and not rvec[i].is_zero():
            return None
    values = [chart.zero() for _ in range(m.cols)]
    _back_substitute(chart, rows, pivots, values, rvec)
    return values


# -- sample points -------------------------------------------------------------


def sample_point(chart: Chart, s: int = 0, retry: int = 0):
    """Deterministic rational sample point: (1, 2, ...) shifted by sample and retry."""
    return [Fraction(k + 1 + s + 7 * retry) for k in range(chart.dim)]


MAX_POINT_RETRIES = 20


def eval_matrix_at_sample(m: FracMatrix, s: int = 0):
    """Evaluate all entries at sample point s, retrying past denominator zeros."""
    for retry in range(MAX_POINT_RETRIES + 1):
        point = sample_point(m.chart, s, retry)
        try:
            values = [
                [m.entries[i][j].eval(point) for j in range(m.cols)]
                for i in range(m.rows)
            ]
            return point, values
        except PointEvaluationError:
            continue
    raise PointEvaluationError(
        f"no valid sample point found after {MAX_POINT_RETRIES} retries"
    )


def numeric_rank(values) -> int:
    """Rank of a matrix of exact field elements by Gaussian elimination."""
    rows = [list(r) for r in values]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    for pc in range(ncols):
        pivot_row = None
        for i in range(rank, nrows):
            if rows[i][pc]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        piv = rows[rank][pc]
        for i in range(rank + 1, nrows):
            if rows[i][pc]:
                factor = rows[i][pc] / piv
                for j in range(pc, ncols):
                    rows[i][j] = rows[i][j] - factor * rows[rank][j]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_at_samples(m: FracMatrix, samples: int = 3):
    """Max rank observed over the deterministic sample points."""
    best = 0
    for s in range(samples):
        _, values = eval_matrix_at_sample(m, s)
        best = max(best, numeric_rank(values))
    return best
