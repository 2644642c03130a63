"""Tensor fields on a chart and the calculus used by every compatibility check.

Conventions (fixed once, used everywhere):

    * OneOneTensor r has grid r[i][j] = r^i_j with r(d_j) = r^i_j d_i, and the
      dual acts on covectors by (r* a)_j = a_i r^i_j.
    * Bivector components pi^{ij} are stored for i < j; the induced map is
      (pi# a)^j = a_i pi^{ij}, so pi = dx ^ dy sends dx to d_y and dy to -d_x.
    * PForm components are stored on strictly increasing index tuples; the
      flat map omega_b(X) = i_X omega.
    * lie_deriv_tensor follows (L_X r)^i_j = X^k dk r^i_j - r^k_j dk X^i
      + r^i_k dj X^k.

The two connection-like operators are

    D_r(X, Y)      = (L_Y r)(X) = [Y, rX] - r([Y, X]),
    D_r_star(X, a) = L_X(r* a) - L_{rX} a = i_X d(r* a) - i_{rX} da,

and both satisfy the degree-1 Leibniz rule; the test suite asserts the
defining identities, their duality pairing and the torsion expressions they
induce.
"""

from __future__ import annotations

from itertools import combinations

from .errors import InternalIdentityError
from .symbolic import Chart, FracMatrix, ScalarExpr, same_chart, solve_linear
from .symbolic.scalar import to_str


def _perm_sign_and_sorted(idx):
    """(sign, sorted tuple) for an index tuple; sign 0 when repeated."""
    if len(set(idx)) != len(idx):
        return 0, None
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1, i, -1):
            if idx[j - 1] > idx[j]:
                idx[j - 1], idx[j] = idx[j], idx[j - 1]
                sign = -sign
    return sign, tuple(idx)


class VectorField:
    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps):
        comps = tuple(comps)
        if len(comps) != chart.dim:
            raise ValueError("component count must equal chart dimension")
        self.chart = chart
        self.comps = comps

    @staticmethod
    def zero(chart: Chart) -> "VectorField":
        return VectorField(chart, [chart.zero()] * chart.dim)

    @staticmethod
    def coordinate(chart: Chart, k: int) -> "VectorField":
        return VectorField(
            chart, [chart.one() if i == k else chart.zero() for i in range(chart.dim)]
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __add__(self, other: "VectorField") -> "VectorField":
        same_chart(self, other)
        return VectorField(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, [-c for c in self.comps])

    def scale(self, f: ScalarExpr) -> "VectorField":
        return VectorField(self.chart, [f * c for c in self.comps])

    def __eq__(self, other):
        return (
            isinstance(other, VectorField)
            and self.chart.compatible(other.chart)
            and self.comps == other.comps
        )

    __hash__ = None

    def deriv(self, f: ScalarExpr) -> ScalarExpr:
        """X(f) = sum X^i d_i f."""
        out = self.chart.zero()
        for i, c in enumerate(self.comps):
            if not c.is_zero():
                out = out + c * f.diff(i)
        return out

    def __repr__(self):
        names = self.chart.variables
        return "VF(" + ", ".join(f"{to_str(c)}*d_{n}" for c, n in zip(self.comps, names)) + ")"


class PForm:
    __slots__ = ("chart", "degree", "comps")

    def __init__(self, chart: Chart, degree: int, comps: dict):
        if degree < 0:
            raise ValueError("negative form degree")
        clean = {}
        if degree <= chart.dim:  # degree above dim forces the zero form
            for idx, val in comps.items():
                idx = tuple(idx)
                if len(idx) != degree or list(idx) != sorted(idx) or len(set(idx)) != degree:
                    raise ValueError(f"component index {idx} not strictly increasing")
                if not val.is_zero():
                    clean[idx] = val
        self.chart = chart
        self.degree = degree
        self.comps = clean

    @staticmethod
    def zero(chart: Chart, degree: int) -> "PForm":
        return PForm(chart, degree, {})

    @staticmethod
    def from_scalar(f: ScalarExpr) -> "PForm":
        return PForm(f.chart, 0, {(): f})

    @staticmethod
    def coordinate(chart: Chart, k: int) -> "PForm":
        """The coordinate 1-form dx^k."""
        return PForm(chart, 1, {(k,): chart.one()})

    def get(self, idx) -> ScalarExpr:
        """Component for any index tuple, with the antisymmetry sign applied."""
        sign, key = _perm_sign_and_sorted(tuple(idx))
        if sign == 0:
            return self.chart.zero()
        val = self.comps.get(key)
        if val is None:
            return self.chart.zero()
        return val if sign == 1 else -val

    def is_zero(self) -> bool:
        return not self.comps

    def as_scalar(self) -> ScalarExpr:
        if self.degree != 0:
            raise ValueError("not a 0-form")
        return self.comps.get((), self.chart.zero())

    def __add__(self, other: "PForm") -> "PForm":
        same_chart(self, other)
        if self.degree != other.degree:
            raise ValueError("form degrees differ")
        out = dict(self.comps)
        for idx, val in other.comps.items():
            cur = out.get(idx)
            out[idx] = val if cur is None else cur + val
        return PForm(self.chart, self.degree, out)

    def __sub__(self, other: "PForm") -> "PForm":
        return self + (-other)

    def __neg__(self) -> "PForm":
        return PForm(self.chart, self.degree, {k: -v for k, v in self.comps.items()})

    def scale(self, f: ScalarExpr) -> "PForm":
        return PForm(self.chart, self.degree, {k: f * v for k, v in self.comps.items()})

    def __eq__(self, other):
        return (
            isinstance(other, PForm)
            and self.chart.compatible(other.chart)
            and self.degree == other.degree
            and self.comps == other.comps
        )

    __hash__ = None

    def __repr__(self):
        names = self.chart.variables
        bits = [
            f"{to_str(v)}*d{'^d'.join(names[i] for i in k)}" if k else to_str(v)
            for k, v in sorted(self.comps.items())
        ]
        return f"PForm{self.degree}(" + (" + ".join(bits) if bits else "0") + ")"


class OneOneTensor:
    __slots__ = ("chart", "grid")

    def __init__(self, chart: Chart, grid):
        grid = tuple(tuple(row) for row in grid)
        if len(grid) != chart.dim or any(len(r) != chart.dim for r in grid):
            raise ValueError("grid must be n x n")
        self.chart = chart
        self.grid = grid

    @staticmethod
    def identity(chart: Chart) -> "OneOneTensor":
        return OneOneTensor(
            chart,
            [
                [chart.one() if i == j else chart.zero() for j in range(chart.dim)]
                for i in range(chart.dim)
            ],
        )

    @staticmethod
    def zero(chart: Chart) -> "OneOneTensor":
        z = chart.zero()
        return OneOneTensor(chart, [[z] * chart.dim for _ in range(chart.dim)])

    @staticmethod
    def scalar(chart: Chart, f: ScalarExpr) -> "OneOneTensor":
        return OneOneTensor(
            chart,
            [
                [f if i == j else chart.zero() for j in range(chart.dim)]
                for i in range(chart.dim)
            ],
        )

    @staticmethod
    def diagonal(chart: Chart, entries) -> "OneOneTensor":
        entries = list(entries)
        return OneOneTensor(
            chart,
            [
                [entries[i] if i == j else chart.zero() for j in range(chart.dim)]
                for i in range(chart.dim)
            ],
        )

    def apply(self, X: VectorField) -> VectorField:
        same_chart(self, X)
        n = self.chart.dim
        return VectorField(
            self.chart,
            [
                sum((self.grid[i][j] * X.comps[j] for j in range(n)), self.chart.zero())
                for i in range(n)
            ],
        )

    def dual(self, a: PForm) -> PForm:
        """r* a, i.e. (r* a)_j = a_i r^i_j (degree-1 forms only)."""
        same_chart(self, a)
        if a.degree != 1:
            raise ValueError("dual acts on 1-forms")
        n = self.chart.dim
        out = {}
        for j in range(n):
            val = sum(
                (a.get((i,)) * self.grid[i][j] for i in range(n)), self.chart.zero()
            )
            out[(j,)] = val
        return PForm(self.chart, 1, out)

    def compose(self, other: "OneOneTensor") -> "OneOneTensor":
        same_chart(self, other)
        n = self.chart.dim
        return OneOneTensor(
            self.chart,
            [
                [
                    sum(
                        (self.grid[i][k] * other.grid[k][j] for k in range(n)),
                        self.chart.zero(),
                    )
                    for j in range(n)
                ]
                for i in range(n)
            ],
        )

    def power(self, k: int) -> "OneOneTensor":
        out = OneOneTensor.identity(self.chart)
        for _ in range(k):
            out = self.compose(out)
        return out

    def __add__(self, other: "OneOneTensor") -> "OneOneTensor":
        same_chart(self, other)
        return OneOneTensor(
            self.chart,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.grid, other.grid)
            ],
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return OneOneTensor(self.chart, [[-c for c in row] for row in self.grid])

    def scale(self, f: ScalarExpr) -> "OneOneTensor":
        return OneOneTensor(self.chart, [[f * c for c in row] for row in self.grid])

    def trace(self) -> ScalarExpr:
        return sum(
            (self.grid[i][i] for i in range(self.chart.dim)), self.chart.zero()
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.grid for c in row)

    def __eq__(self, other):
        return (
            isinstance(other, OneOneTensor)
            and self.chart.compatible(other.chart)
            and self.grid == other.grid
        )

    __hash__ = None


class Bivector:
    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: dict):
        clean = {}
        for idx, val in comps.items():
            i, j = idx
            if i >= j:
                raise ValueError("store bivector components with i < j")
            if not val.is_zero():
                clean[(i, j)] = val
        self.chart = chart
        self.comps = clean

    @staticmethod
    def zero(chart: Chart) -> "Bivector":
        return Bivector(chart, {})

    def get(self, i: int, j: int) -> ScalarExpr:
        if i == j:
            return self.chart.zero()
        if i < j:
            return self.comps.get((i, j), self.chart.zero())
        val = self.comps.get((j, i))
        return self.chart.zero() if val is None else -val

    def sharp(self, a: PForm) -> VectorField:
        """pi#(a)^j = a_i pi^{ij}."""
        same_chart(self, a)
        if a.degree != 1:
            raise ValueError("sharp acts on 1-forms")
        n = self.chart.dim
        return VectorField(
            self.chart,
            [
                sum((a.get((i,)) * self.get(i, j) for i in range(n)), self.chart.zero())
                for j in range(n)
            ],
        )

    def sharp_matrix(self) -> OneOneTensor:
        """Matrix P with (pi# a)^i = P^i_j a_j, as an endomorphism grid."""
        n = self.chart.dim
        return OneOneTensor(
            self.chart, [[self.get(j, i) for j in range(n)] for i in range(n)]
        )

    def __add__(self, other: "Bivector") -> "Bivector":
        same_chart(self, other)
        out = dict(self.comps)
        for k, v in other.comps.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return Bivector(self.chart, out)

    def __neg__(self):
        return Bivector(self.chart, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f: ScalarExpr) -> "Bivector":
        return Bivector(self.chart, {k: f * v for k, v in self.comps.items()})

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        return (
            isinstance(other, Bivector)
            and self.chart.compatible(other.chart)
            and self.comps == other.comps
        )

    __hash__ = None


class CovFormValued:
    """A section of T*M tensor wedge^{p-1} T*M: first slot free, rest skew."""

    __slots__ = ("chart", "degree", "comps")

    def __init__(self, chart: Chart, degree: int, comps: dict):
        clean = {}
        for key, val in comps.items():
            first, rest = key
            rest = tuple(rest)
            if list(rest) != sorted(rest) or len(set(rest)) != len(rest):
                raise ValueError("trailing indices must be strictly increasing")
            if len(rest) != degree - 1:
                raise ValueError("wrong trailing arity")
            if not val.is_zero():
                clean[(first, rest)] = val
        self.chart = chart
        self.degree = degree
        self.comps = clean

    def get(self, first: int, rest) -> ScalarExpr:
        sign, key = _perm_sign_and_sorted(tuple(rest))
        if sign == 0:
            return self.chart.zero()
        val = self.comps.get((first, key))
        if val is None:
            return self.chart.zero()
        return val if sign == 1 else -val

    def is_zero(self) -> bool:
        return not self.comps

    def __sub__(self, other: "CovFormValued") -> "CovFormValued":
        same_chart(self, other)
        out = dict(self.comps)
        for k, v in other.comps.items():
            cur = out.get(k)
            out[k] = -v if cur is None else cur - v
        return CovFormValued(self.chart, self.degree, out)

    def __eq__(self, other):
        return (
            isinstance(other, CovFormValued)
            and self.chart.compatible(other.chart)
            and self.degree == other.degree
            and self.comps == other.comps
        )

    __hash__ = None

    def is_skew(self) -> bool:
        """True when the first slot is antisymmetric against the rest."""
        n = self.chart.dim
        for idx in combinations(range(n), self.degree):
            # all splits of a strictly increasing tuple must agree up to sign
            base = self.get(idx[0], idx[1:])
            for pos in range(1, self.degree):
                rest = idx[:pos] + idx[pos + 1 :]
                if (self.get(idx[pos], rest) - ((-1) ** pos) * base).is_zero():
                    continue
                return False
        # mixed components with a repeated index must vanish
        for (first, rest), val in self.comps.items():
            if first in rest and not val.is_zero():
                return False
        return True

    def to_form(self) -> PForm:
        if not self.is_skew():
            raise ValueError("tensor is not antisymmetric")
        n = self.chart.dim
        out = {}
        for idx in combinations(range(n), self.degree):
            out[idx] = self.get(idx[0], idx[1:])
        return PForm(self.chart, self.degree, out)


def form_as_covform(w: PForm) -> CovFormValued:
    """Split the first slot of a p-form (p >= 1)."""
    if w.degree < 1:
        raise ValueError("need degree >= 1")
    n = w.chart.dim
    out = {}
    for first in range(n):
        for rest in combinations(range(n), w.degree - 1):
            val = w.get((first,) + rest)
            if not val.is_zero():
                out[(first, rest)] = val
    return CovFormValued(w.chart, w.degree, out)


class VectorValuedTwoForm:
    """N^i_{jk}, antisymmetric in (j, k); e.g. the torsion of a (1,1)-tensor."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: dict):
        clean = {}
        for (i, j, k), val in comps.items():
            if j >= k:
                raise ValueError("store components with j < k")
            if not val.is_zero():
                clean[(i, j, k)] = val
        self.chart = chart
        self.comps = clean

    def get(self, i: int, j: int, k: int) -> ScalarExpr:
        if j == k:
            return self.chart.zero()
        if j < k:
            return self.comps.get((i, j, k), self.chart.zero())
        val = self.comps.get((i, k, j))
        return self.chart.zero() if val is None else -val

    def is_zero(self) -> bool:
        return not self.comps

    def apply(self, X: VectorField, Y: VectorField) -> VectorField:
        same_chart(self, X, Y)
        n = self.chart.dim
        comps = []
        for i in range(n):
            acc = self.chart.zero()
            for j in range(n):
                for k in range(n):
                    if j == k:
                        continue
                    v = self.get(i, j, k)
                    if not v.is_zero():
                        acc = acc + v * X.comps[j] * Y.comps[k]
            comps.append(acc)
        return VectorField(self.chart, comps)

    def pair_form(self, a: PForm) -> PForm:
        """The 2-form <a, N(., .)> for a 1-form a (the dual torsion on a)."""
        same_chart(self, a)
        n = self.chart.dim
        out = {}
        for j, k in combinations(range(n), 2):
            val = sum(
                (a.get((i,)) * self.get(i, j, k) for i in range(n)), self.chart.zero()
            )
            out[(j, k)] = val
        return PForm(self.chart, 2, out)


# -- Cartan calculus ----------------------------------------------------------


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    chart = same_chart(X, Y)
    n = chart.dim
    comps = []
    for i in range(n):
        acc = chart.zero()
        for j in range(n):
            if not X.comps[j].is_zero():
                acc = acc + X.comps[j] * Y.comps[i].diff(j)
            if not Y.comps[j].is_zero():
                acc = acc - Y.comps[j] * X.comps[i].diff(j)
        comps.append(acc)
    return VectorField(chart, comps)


def ext_d(w: PForm) -> PForm:
    chart = w.chart
    n = chart.dim
    out: dict = {}
    for idx, val in w.comps.items():
        for v in range(n):
            if v in idx:
                continue
            dval = val.diff(v)
            if dval.is_zero():
                continue
            sign, key = _perm_sign_and_sorted((v,) + idx)
            contrib = dval if sign == 1 else -dval
            cur = out.get(key)
            out[key] = contrib if cur is None else cur + contrib
    return PForm(chart, w.degree + 1, out)


def interior(X: VectorField, w: PForm) -> PForm:
    chart = same_chart(X, w)
    if w.degree == 0:
        raise ValueError("interior product needs degree >= 1")
    n = chart.dim
    out = {}
    for rest in combinations(range(n), w.degree - 1):
        val = chart.zero()
        for v in range(n):
            xv = X.comps[v]
            if xv.is_zero():
                continue
            val = val + xv * w.get((v,) + rest)
        out[rest] = val
    return PForm(chart, w.degree - 1, out)


def wedge(a: PForm, b: PForm) -> PForm:
    chart = same_chart(a, b)
    out: dict = {}
    for ia, va in a.comps.items():
        for ib, vb in b.comps.items():
            sign, key = _perm_sign_and_sorted(ia + ib)
            if sign == 0:
                continue
            term = va * vb
            if sign < 0:
                term = -term
            cur = out.get(key)
            out[key] = term if cur is None else cur + term
    return PForm(chart, a.degree + b.degree, out)


def lie_deriv_form(X: VectorField, w: PForm) -> PForm:
    """Cartan's magic formula L_X = i_X d + d i_X."""
    if w.degree == 0:
        return PForm.from_scalar(X.deriv(w.as_scalar()))
    return interior(X, ext_d(w)) + ext_d(interior(X, w))


def lie_deriv_tensor(X: VectorField, r: OneOneTensor) -> OneOneTensor:
    chart = same_chart(X, r)
    n = chart.dim
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = chart.zero()
            for k in range(n):
                if not X.comps[k].is_zero():
                    acc = acc + X.comps[k] * r.grid[i][j].diff(k)
                if not r.grid[k][j].is_zero():
                    acc = acc - r.grid[k][j] * X.comps[i].diff(k)
                if not r.grid[i][k].is_zero():
                    acc = acc + r.grid[i][k] * X.comps[k].diff(j)
            row.append(acc)
        grid.append(row)
    return OneOneTensor(chart, grid)


def scalar_d(f: ScalarExpr) -> PForm:
    chart = f.chart
    return PForm(chart, 1, {(k,): f.diff(k) for k in range(chart.dim)})


# -- the degree-1 derivation operators ----------------------------------------


def D_r(X: VectorField, Y: VectorField, r: OneOneTensor) -> VectorField:
    """D^r_X(Y) = (L_Y r)(X) = [Y, rX] - r([Y, X])."""
    same_chart(X, Y, r)
    return lie_bracket(Y, r.apply(X)) - r.apply(lie_bracket(Y, X))


def D_r_star(X: VectorField, a: PForm, r: OneOneTensor) -> PForm:
    """D^{r,*}_X(a) = L_X(r* a) - L_{rX} a for a 1-form a."""
    same_chart(X, a, r)
    if a.degree != 1:
        raise ValueError("D_r_star acts on 1-forms")
    return lie_deriv_form(X, r.dual(a)) - lie_deriv_form(r.apply(X), a)


def form_r(w: PForm, r: OneOneTensor) -> CovFormValued:
    """omega_r(X1; X2..Xp) = omega(r X1, X2, .., Xp)."""
    chart = same_chart(w, r)
    if w.degree < 1:
        raise ValueError("need degree >= 1")
    n = chart.dim
    out = {}
    for first in range(n):
        for rest in combinations(range(n), w.degree - 1):
            val = chart.zero()
            for k in range(n):
                rk = r.grid[k][first]
                if rk.is_zero():
                    continue
                val = val + rk * w.get((k,) + rest)
            if not val.is_zero():
                out[(first, rest)] = val
    return CovFormValued(chart, w.degree, out)


def D_r_star_pform(X: VectorField, w: PForm, r: OneOneTensor) -> CovFormValued:
    """Extension of D^{r,*} to p-forms with skew omega_r:
    i_X d(omega_r) - i_{rX} d(omega)."""
    same_chart(X, w, r)
    wr = form_r(w, r)
    if not wr.is_skew():
        raise ValueError("omega_r is not skew: omega is outside the admissible forms")
    value = interior(X, ext_d(wr.to_form())) - interior(r.apply(X), ext_d(w))
    return form_as_covform(value)


def nijenhuis_torsion(r: OneOneTensor) -> VectorValuedTwoForm:
    """Torsion on coordinate fields; tensoriality makes this complete."""
    chart = r.chart
    n = chart.dim
    cols = [
        VectorField(chart, [r.grid[i][j] for i in range(n)]) for j in range(n)
    ]
    out = {}
    for j, k in combinations(range(n), 2):
        # [r dj, r dk] - r([r dj, dk]) - r([dj, r dk]); [dj, dk] = 0
        val = (
            lie_bracket(cols[j], cols[k])
            - r.apply(lie_bracket(cols[j], VectorField.coordinate(chart, k)))
            - r.apply(lie_bracket(VectorField.coordinate(chart, j), cols[k]))
        )
        for i in range(n):
            if not val.comps[i].is_zero():
                out[(i, j, k)] = val.comps[i]
    return VectorValuedTwoForm(chart, out)


def torsion_via_D(r: OneOneTensor, X: VectorField, Y: VectorField) -> VectorField:
    """r(D^r_X Y) - D^r_X(r Y); equals the torsion on (X, Y)."""
    return r.apply(D_r(X, Y, r)) - D_r(X, r.apply(Y), r)


def torsion_via_Dstar(
    r: OneOneTensor, X: VectorField, Y: VectorField, a: PForm
) -> ScalarExpr:
    """<r*(D^{r,*}_X a) - D^{r,*}_X(r* a), Y>; equals <a, torsion(X, Y)>."""
    diff = r.dual(D_r_star(X, a, r)) - D_r_star(X, r.dual(a), r)
    return interior(Y, diff).as_scalar()


def deformed_bracket(X: VectorField, Y: VectorField, r: OneOneTensor) -> VectorField:
    """[X,Y]_r = [rX, Y] + [X, rY] - r([X, Y])."""
    same_chart(X, Y, r)
    return (
        lie_bracket(r.apply(X), Y)
        + lie_bracket(X, r.apply(Y))
        - r.apply(lie_bracket(X, Y))
    )


def schouten_bivector(p: Bivector, q: Bivector) -> dict:
    """Coordinate Schouten bracket of two bivectors as trivector components.

    Returned as {(i<j<k): ScalarExpr}; the normalization is fixed but only
    vanishing matters to callers ([pi,pi] = 0 iff pi is Poisson).
    """
    chart = same_chart(p, q)
    n = chart.dim

    def half(a: Bivector, b: Bivector, i, j, k):
        acc = chart.zero()
        for l in range(n):
            for (u, v, w) in ((i, j, k), (j, k, i), (k, i, j)):
                term = a.get(l, u)
                if not term.is_zero():
                    acc = acc + term * b.get(v, w).diff(l)
        return acc

    out = {}
    for i, j, k in combinations(range(n), 3):
        val = half(p, q, i, j, k) + half(q, p, i, j, k)
        if not val.is_zero():
            out[(i, j, k)] = val
    return out


def schouten_is_zero(tri: dict) -> bool:
    return all(v.is_zero() for v in tri.values())


def is_poisson(p: Bivector) -> bool:
    return schouten_is_zero(schouten_bivector(p, p))


# -- tangent and cotangent lifts ------------------------------------------------


def tangent_chart(chart: Chart) -> Chart:
    return Chart(
        chart.name + "_tg",
        chart.variables + tuple("v_" + v for v in chart.variables),
        chart.mode,
    )


def cotangent_chart(chart: Chart) -> Chart:
    return Chart(
        chart.name + "_cotg",
        chart.variables + tuple("p_" + v for v in chart.variables),
        chart.mode,
    )


def tangent_lift(r: OneOneTensor):
    """Lift to the tangent chart (x, v), assembled from its defining relations.

    The base block and the fiber block are forced to be r by linearity and by
    the vertical-lift relation; the mixed block is linear in v with
    coefficients D^r on coordinate fields.  Returns (lift, doubled chart).
    """
    chart = r.chart
    n = chart.dim
    big = tangent_chart(chart)
    z = big.zero()
    grid = [[z for _ in range(2 * n)] for _ in range(2 * n)]
    rbig = [[r.grid[i][j].extend(big) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            grid[i][j] = rbig[i][j]
            grid[n + i][n + j] = rbig[i][j]
    coord = [VectorField.coordinate(chart, j) for j in range(n)]
    for j in range(n):
        for k in range(n):
            w = D_r(coord[j], coord[k], r)  # (L_{d_k} r)(d_j)
            for i in range(n):
                if not w.comps[i].is_zero():
                    grid[n + i][j] = grid[n + i][j] + big.var(
                        "v_" + chart.variables[k]
                    ) * w.comps[i].extend(big)
    return OneOneTensor(big, grid), big


def _canonical_symplectic_grid(big: Chart, n: int):
    """Matrix of omega_can = sum dx^i ^ dp_i on (x, p): Omega[a][b] = omega(e_a, e_b)."""
    one = big.one()
    z = big.zero()
    omega = [[z for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        omega[i][n + i] = one
        omega[n + i][i] = -one
    return omega


def cotangent_lift(r: OneOneTensor):
    """Lift to the cotangent chart (x, p), solved from the defining relation
    against the canonical symplectic form (no transcribed formulas).

    With phi = r* on T*M and J its Jacobian, the relation
    i_{lift(U)} omega = i_U (phi* omega) reads  Omega^T . lift = (J^T Omega J)^T,
    which is solved column by column.  Returns (lift, doubled chart).
    """
    chart = r.chart
    n = chart.dim
    big = cotangent_chart(chart)
    z = big.zero()
    omega = _canonical_symplectic_grid(big, n)
    # Jacobian of phi(x, p) = (x, r*(x) p)
    jac = [[z for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        jac[i][i] = big.one()
    pvars = [big.var("p_" + v) for v in chart.variables]
    for j in range(n):  # output component (r* p)_j
        for k in range(n):  # against x^k
            acc = big.zero()
            for i in range(n):
                d = r.grid[i][j].diff(k)
                if not d.is_zero():
                    acc = acc + pvars[i] * d.extend(big)
            jac[n + j][k] = acc
        for i in range(n):  # against p_i
            jac[n + j][n + i] = r.grid[i][j].extend(big)
    m = 2 * n
    # M = J^T Omega J
    tmp = [
        [
            sum((omega[a][c] * jac[c][b] for c in range(m)), big.zero())
            for b in range(m)
        ]
        for a in range(m)
    ]
    mjj = [
        [
            sum((jac[c][a] * tmp[c][b] for c in range(m)), big.zero())
            for b in range(m)
        ]
        for a in range(m)
    ]
    omega_t = FracMatrix(big, [[omega[b][a] for b in range(m)] for a in range(m)])
    cols = []
    for b in range(m):
        rhs = [mjj[b][a] for a in range(m)]  # column b of M^T
        col = solve_linear(omega_t, rhs)
        if col is None:
            raise InternalIdentityError("canonical symplectic solve failed")
        cols.append(col)
    grid = [[cols[b][a] for b in range(m)] for a in range(m)]
    return OneOneTensor(big, grid), big


def vertical_lift_vf(u: VectorField, big: Chart, fiber_prefix: str) -> VectorField:
    """u^ = u^i(x) d/d(fiber_i) on a doubled chart."""
    chart = u.chart
    n = chart.dim
    comps = [big.zero()] * n + [c.extend(big) for c in u.comps]
    return VectorField(big, comps)


def vertical_lift_form(a: PForm, big: Chart) -> VectorField:
    """The vertical lift of a 1-form on the cotangent chart: a_i(x) d/dp_i."""
    chart = a.chart
    n = chart.dim
    comps = [big.zero()] * n + [a.get((k,)).extend(big) for k in range(n)]
    return VectorField(big, comps)
