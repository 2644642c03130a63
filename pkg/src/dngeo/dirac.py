"""Lagrangian subbundles presented by frames, and every compatibility check
attached to them: invariance and stability under the derivation operators,
concomitants, hierarchies, traces in involution, gauge transformations,
coordinate transfers, and the contraction/double-type comparisons.

Verdict semantics: identities proved over the rational-function field count
as `pass`/`fail`; facts that only sampling can support (pointwise rank,
smooth intersections) degrade to `inconclusive` instead of `pass` when the
samples disagree with the generic count.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import AdmissibilityError, HierarchyKernelError, PreconditionError
from .symbolic import (
    Chart,
    FracMatrix,
    ScalarExpr,
    generic_rank,
    kernel_basis,
    rank_at_samples,
    same_chart,
    solve_linear,
)
from .symbolic.scalar import to_str
from .courant import (
    GSection,
    apply_rr,
    big_D,
    concomitant_CL,
    courant_bracket,
    double_bracket,
    pairing,
)
from .tensor import (
    Bivector,
    OneOneTensor,
    PForm,
    VectorField,
    D_r,
    D_r_star,
    ext_d,
    form_as_covform,
    form_r,
    interior,
    lie_bracket,
    lie_deriv_form,
    nijenhuis_torsion,
    scalar_d,
)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    status: str
    witnesses: tuple = ()

    def __bool__(self):
        return self.status == PASS

    @staticmethod
    def ok() -> "Verdict":
        return Verdict(PASS)

    @staticmethod
    def fail(*witnesses) -> "Verdict":
        return Verdict(FAIL, tuple(witnesses))

    @staticmethod
    def inconclusive(*witnesses) -> "Verdict":
        return Verdict(INCONCLUSIVE, tuple(witnesses))


class GFrame:
    """A rank-n subbundle of TM + T*M presented by n generating sections."""

    __slots__ = ("chart", "sections", "provenance", "flags")

    def __init__(self, sections, provenance: str = "generic", flags=()):
        chart = same_chart(*sections)
        if len(sections) != chart.dim:
            raise ValueError("a frame needs exactly n sections")
        self.chart = chart
        self.sections = tuple(sections)
        self.provenance = provenance
        self.flags = tuple(flags)

    def matrix(self) -> FracMatrix:
        """2n x n matrix whose columns are the stacked section components."""
        cols = [s.components() for s in self.sections]
        rows = [[cols[a][i] for a in range(len(cols))] for i in range(2 * self.chart.dim)]
        return FracMatrix(self.chart, rows)

    def covector_matrix(self) -> FracMatrix:
        n = self.chart.dim
        rows = [
            [self.sections[a].cov.get((i,)) for a in range(n)] for i in range(n)
        ]
        return FracMatrix(self.chart, rows)

    def vector_matrix(self) -> FracMatrix:
        n = self.chart.dim
        rows = [[self.sections[a].vec.comps[i] for a in range(n)] for i in range(n)]
        return FracMatrix(self.chart, rows)


@dataclass(frozen=True)
class NullDistribution:
    chart: Chart
    basis: tuple


@dataclass(frozen=True)
class DNReport:
    lagrangian: Verdict
    involutive: Verdict
    invariance: Verdict
    d_stability: Verdict
    nijenhuis: Verdict

    def named(self):
        return (
            ("lagrangian", self.lagrangian),
            ("involutive", self.involutive),
            ("invariance", self.invariance),
            ("d_stability", self.d_stability),
            ("nijenhuis", self.nijenhuis),
        )

    def all_pass(self) -> bool:
        return all(v.status == PASS for _, v in self.named())

    def compatible(self) -> bool:
        """Conditions on the pair only (lagrangian + invariance + stability)."""
        return all(
            v.status == PASS
            for v in (self.lagrangian, self.invariance, self.d_stability)
        )


# -- frame constructors ---------------------------------------------------------


def make_graph_poisson(pi: Bivector) -> GFrame:
    """Frame {(pi# dx^i, dx^i)} of the graph of a bivector."""
    chart = pi.chart
    secs = [
        GSection(pi.sharp(PForm.coordinate(chart, i)), PForm.coordinate(chart, i))
        for i in range(chart.dim)
    ]
    return GFrame(secs, provenance="graph_poisson")


def make_graph_presymplectic(omega: PForm) -> GFrame:
    """Frame {(d_i, i_{d_i} omega)} of the graph of a 2-form."""
    if omega.degree != 2:
        raise ValueError("need a 2-form")
    chart = omega.chart
    secs = [
        GSection(VectorField.coordinate(chart, i), interior(VectorField.coordinate(chart, i), omega))
        for i in range(chart.dim)
    ]
    return GFrame(secs, provenance="graph_presymplectic")


def make_split(fields, samples: int = 3) -> GFrame:
    """Frame of F + Ann(F) for a distribution spanned by `fields`.

    The annihilator basis comes from the kernel of the field-component matrix
    over the function field.  Involutivity of F and rank constancy are
    verified; a sample-point rank defect only flags the frame.
    """
    chart = same_chart(*fields)
    n = chart.dim
    k = len(fields)
    flags = []
    fmat = FracMatrix(chart, [[f.comps[i] for i in range(n)] for f in fields])
    if generic_rank(fmat) != k:
        raise PreconditionError("split fields are dependent over the function field")
    # involutivity of the distribution
    span_rows = FracMatrix(chart, [[f.comps[i] for f in fields] for i in range(n)])
    for a in range(k):
        for b in range(a + 1, k):
            br = lie_bracket(fields[a], fields[b])
            if solve_linear(span_rows, list(br.comps)) is None:
                raise PreconditionError("split fields do not span an involutive distribution")
    if rank_at_samples(fmat, samples) != k:
        flags.append("split rank defect at sample points")
    ann = kernel_basis(fmat)
    if len(ann) != n - k:
        raise PreconditionError("annihilator has unexpected generic rank")
    secs = [GSection.from_vector(f) for f in fields] + [
        GSection.from_form(PForm(chart, 1, {(i,): vec[i] for i in range(n)}))
        for vec in ann
    ]
    return GFrame(secs, provenance="split_distribution", flags=tuple(flags))


# -- elementary checks -----------------------------------------------------------


def check_lagrangian(L: GFrame, samples: int = 3) -> Verdict:
    """Pass iff the frame pairs to zero with itself and has rank n pointwise."""
    n = L.chart.dim
    for a in range(n):
        for b in range(a, n):
            val = pairing(L.sections[a], L.sections[b])
            if not val.is_zero():
                return Verdict.fail((f"pairing[{a},{b}]", val))
    m = L.matrix()
    if generic_rank(m) != n:
        return Verdict.fail(("rank", f"generic rank below {n}"))
    if rank_at_samples(m, samples) != n:
        return Verdict.inconclusive(("rank", "rank drop at sample points"))
    if L.flags:
        return Verdict.inconclusive(*((f"flag[{i}]", f) for i, f in enumerate(L.flags)))
    return Verdict.ok()


def _require(verdict: Verdict, what: str):
    if verdict.status != PASS:
        raise PreconditionError(f"precondition failed: {what}")


def check_involutive(L: GFrame, lagrangian: Verdict | None = None) -> Verdict:
    """Vanishing of T(s_a, s_b, s_c) = <[[s_a, s_b]], s_c> on frame triples."""
    _require(lagrangian or check_lagrangian(L), "lagrangian")
    n = L.chart.dim
    for a in range(n):
        for b in range(a + 1, n):
            br = courant_bracket(L.sections[a], L.sections[b])
            for c in range(n):
                val = pairing(br, L.sections[c])
                if not val.is_zero():
                    return Verdict.fail((f"T[{a},{b},{c}]", val))
    return Verdict.ok()


def check_invariance(L: GFrame, r: OneOneTensor, lagrangian: Verdict | None = None) -> Verdict:
    """(r, r*)(L) inside L, tested by pairing against the frame (valid since L = L-perp)."""
    same_chart(L.sections[0], r)
    _require(lagrangian or check_lagrangian(L), "lagrangian")
    n = L.chart.dim
    for a in range(n):
        ra = apply_rr(L.sections[a], r)
        for b in range(a, n):
            val = pairing(ra, L.sections[b])
            if not val.is_zero():
                return Verdict.fail((f"invariance[{a},{b}]", val))
    return Verdict.ok()


def check_D_stability(
    L: GFrame,
    r: OneOneTensor,
    lagrangian: Verdict | None = None,
    invariance: Verdict | None = None,
) -> Verdict:
    """Stability of the span under the combined derivation, via its concomitant."""
    _require(lagrangian or check_lagrangian(L), "lagrangian")
    _require(invariance or check_invariance(L, r, Verdict.ok()), "invariance")
    n = L.chart.dim
    for a in range(n):
        for b in range(a, n):
            form = concomitant_CL(L.sections[a], L.sections[b], r)
            for k in range(n):
                val = form.get((k,))
                if not val.is_zero():
                    return Verdict.fail((f"concomitant[{a},{b}]({L.chart.variables[k]})", val))
    return Verdict.ok()


def check_nijenhuis(r: OneOneTensor) -> Verdict:
    N = nijenhuis_torsion(r)
    for (i, j, k), val in sorted(N.comps.items()):
        return Verdict.fail((f"torsion[{i};{j},{k}]", val))
    return Verdict.ok()


def dirac_nijenhuis_report(L: GFrame, r: OneOneTensor, samples: int = 3) -> DNReport:
    lag = check_lagrangian(L, samples)
    blocked = Verdict.inconclusive(("precondition", "lagrangian did not pass"))
    if lag.status == PASS:
        inv = check_involutive(L, lag)
        rr = check_invariance(L, r, lag)
        if rr.status == PASS:
            stab = check_D_stability(L, r, lag, rr)
        else:
            stab = Verdict.inconclusive(("precondition", "invariance did not pass"))
    else:
        inv = rr = stab = blocked
    nij = check_nijenhuis(r)
    return DNReport(lag, inv, rr, stab, nij)


# -- membership and span utilities ----------------------------------------------


def section_in_span(s: GSection, L: GFrame, lagrangian: Verdict | None = None) -> bool:
    """Membership via pairing with the frame; requires the lagrangian check."""
    _require(lagrangian or check_lagrangian(L), "lagrangian")
    return all(pairing(s, t).is_zero() for t in L.sections)


def frames_equal_span(L1: GFrame, L2: GFrame) -> bool:
    """Mutual span containment over the function field (solve both ways)."""
    m1, m2 = L1.matrix(), L2.matrix()
    return all(
        solve_linear(m2, s.components()) is not None for s in L1.sections
    ) and all(solve_linear(m1, s.components()) is not None for s in L2.sections)


# -- concomitants ------------------------------------------------------------------


def concomitant_R(pi: Bivector, r: OneOneTensor, X: VectorField, a: PForm) -> VectorField:
    """pi#(L_X r*(a) - L_{rX} a) - (L_{pi# a} r)(X)."""
    same_chart(pi, r, X, a)
    return pi.sharp(D_r_star(X, a, r)) - D_r(X, pi.sharp(a), r)


def koszul_bracket(lam_sharp, a: PForm, b: PForm) -> PForm:
    """[a, b]_Lambda = L_{Lambda# a} b - i_{Lambda# b} da, for a sharp map."""
    return lie_deriv_form(lam_sharp(a), b) - interior(lam_sharp(b), ext_d(a))


def concomitant_C(pi: Bivector, r: OneOneTensor, a: PForm, b: PForm) -> PForm:
    """[a,b]_{pi_r} - ([r*a, b]_pi + [a, r*b]_pi - r*([a,b]_pi))."""
    same_chart(pi, r, a, b)

    def pir_sharp(x):
        return r.apply(pi.sharp(x))

    return koszul_bracket(pir_sharp, a, b) - (
        koszul_bracket(pi.sharp, r.dual(a), b)
        + koszul_bracket(pi.sharp, a, r.dual(b))
        - r.dual(koszul_bracket(pi.sharp, a, b))
    )


def concomitant_S_tilde(omega: PForm, r: OneOneTensor, X: VectorField, Y: VectorField) -> PForm:
    """D^{r,*}_X(omega_b(Y)) - omega_b(D^r_X(Y))."""
    same_chart(omega, r, X, Y)
    if omega.degree != 2:
        raise ValueError("need a 2-form")
    return D_r_star(X, interior(Y, omega), r) - interior(D_r(X, Y, r), omega)


def concomitant_S(omega: PForm, r: OneOneTensor, X: VectorField, Y: VectorField) -> PForm:
    """i_X L_{rY} omega - i_Y L_{rX} omega - i_{r[X,Y]} omega + d(omega(rY, X))."""
    same_chart(omega, r, X, Y)
    if omega.degree != 2:
        raise ValueError("need a 2-form")
    return (
        interior(X, lie_deriv_form(r.apply(Y), omega))
        - interior(Y, lie_deriv_form(r.apply(X), omega))
        - interior(r.apply(lie_bracket(X, Y)), omega)
        + scalar_d(interior(X, interior(r.apply(Y), omega)).as_scalar())
    )


def check_form_compat(omega: PForm, r: OneOneTensor) -> Verdict:
    """Pass iff omega_r is skew and d(omega_r) = (d omega)_r."""
    same_chart(omega, r)
    wr = form_r(omega, r)
    if not wr.is_skew():
        return Verdict.fail(("omega_r", "not antisymmetric"))
    lhs = form_as_covform(ext_d(wr.to_form()))
    rhs = form_r(ext_d(omega), r)
    diff = lhs - rhs
    for key in sorted(diff.comps):
        return Verdict.fail((f"d(omega_r)-(d omega)_r{key}", diff.comps[key]))
    return Verdict.ok()


# -- null distribution -------------------------------------------------------------


def null_distribution(L: GFrame, lagrangian: Verdict | None = None, samples: int = 3) -> NullDistribution:
    """Basis of L intersect TM over the function field."""
    _require(lagrangian or check_lagrangian(L), "lagrangian")
    chart = L.chart
    cov = L.covector_matrix()
    combos = kernel_basis(cov)
    gen_rank = chart.dim - len(combos)
    if rank_at_samples(cov, samples) != gen_rank:
        raise PreconditionError("null distribution rank drops at sample points")
    basis = []
    for c in combos:
        v = VectorField.zero(chart)
        for a, coeff in enumerate(c):
            if not coeff.is_zero():
                v = v + L.sections[a].vec.scale(coeff)
        basis.append(v)
    return NullDistribution(chart, tuple(basis))


# -- hierarchy ----------------------------------------------------------------------


def transform_frame(L: GFrame, vec_op, cov_op, provenance="generic") -> GFrame:
    secs = [GSection(vec_op(s.vec), cov_op(s.cov)) for s in L.sections]
    return GFrame(secs, provenance=provenance, flags=L.flags)


def hierarchy(L: GFrame, r: OneOneTensor, n: int, side: str, samples: int = 3) -> GFrame:
    """(r^n, id)(L) for side 'n0', or (id, (r*)^n)(L) for side '0n'.

    The kernel condition of the chosen side is enforced as generic plus
    sample-point rank fullness of the transformed frame.
    """
    if side not in ("n0", "0n"):
        raise ValueError("side must be 'n0' or '0n'")
    if n < 0:
        raise ValueError("n must be nonnegative")
    same_chart(L.sections[0], r)
    rn = r.power(n)
    if side == "n0":
        out = transform_frame(L, rn.apply, lambda a: a, provenance=L.provenance)
    else:
        out = transform_frame(L, lambda v: v, rn.dual, provenance=L.provenance)
    m = out.matrix()
    if generic_rank(m) != L.chart.dim or rank_at_samples(m, samples) != L.chart.dim:
        raise HierarchyKernelError("(n,0)" if side == "n0" else "(0,n)")
    return out


def check_concur(L1: GFrame, L2: GFrame, samples: int = 3) -> Verdict:
    """Cotangential product of two Dirac structures, then Dirac checks on it.

    Builds {(X1 + X2, a)} by matching covector parts of the first frame in
    the second via linear solves; equal covector projections at the generic
    point are a precondition.
    """
    same_chart(L1.sections[0], L2.sections[0])
    lag1, lag2 = check_lagrangian(L1, samples), check_lagrangian(L2, samples)
    _require(lag1, "first frame lagrangian")
    _require(lag2, "second frame lagrangian")
    if generic_rank(L1.covector_matrix()) != generic_rank(L2.covector_matrix()):
        raise PreconditionError("covector projections differ at the generic point")
    chart = L1.chart
    secs = []
    for s in L1.sections:
        target = [s.cov.get((i,)) for i in range(chart.dim)]
        c = solve_linear(L2.covector_matrix(), target)
        if c is None:
            raise PreconditionError("covector projections differ at the generic point")
        partner = VectorField.zero(chart)
        for a, coeff in enumerate(c):
            if not coeff.is_zero():
                partner = partner + L2.sections[a].vec.scale(coeff)
        secs.append(GSection(s.vec + partner, s.cov))
    product = GFrame(secs, provenance="generic")
    lag = check_lagrangian(product, samples)
    if lag.status == FAIL:
        return lag
    if lag.status == INCONCLUSIVE:
        return Verdict.inconclusive(("product", "sample-point rank drop"))
    return check_involutive(product, lag)


# -- traces ---------------------------------------------------------------------------


def traces(r: OneOneTensor, jmax: int):
    """phi_j = trace(r^j)/j for j = 1..jmax."""
    out = []
    power = r
    for j in range(1, jmax + 1):
        out.append(power.trace() / r.chart.const(j))
        power = power.compose(r)
    return out


def hamiltonian_representative(L: GFrame, f: ScalarExpr) -> VectorField | None:
    """X with (X, df) in the span of the frame, or None."""
    chart = L.chart
    df = scalar_d(f)
    coeffs = solve_linear(L.covector_matrix(), [df.get((i,)) for i in range(chart.dim)])
    if coeffs is None:
        return None
    X = VectorField.zero(chart)
    for a, c in enumerate(coeffs):
        if not c.is_zero():
            X = X + L.sections[a].vec.scale(c)
    # consistency: (X, df) must pair to zero with the frame
    cand = GSection(X, df)
    if not all(pairing(cand, s).is_zero() for s in L.sections):
        return None
    return X


def check_traces_involution(L: GFrame, r: OneOneTensor, jmax: int) -> Verdict:
    """Admissibility of trace(r) and involution of all trace functions.

    Raises AdmissibilityError('trace not admissible') when the first trace
    fails the null-distribution test.
    """
    lag = check_lagrangian(L)
    _require(lag, "lagrangian")
    phis = traces(r, jmax)
    null = null_distribution(L, lag)
    dphi1 = scalar_d(phis[0])
    for k in null.basis:
        val = interior(k, dphi1).as_scalar()
        if not val.is_zero():
            raise AdmissibilityError("trace not admissible")
    reps = []
    for j, phi in enumerate(phis):
        X = hamiltonian_representative(L, phi)
        if X is None:
            raise AdmissibilityError("trace not admissible")
        reps.append(X)
    for i in range(jmax):
        for j in range(i, jmax):
            val = reps[i].deriv(phis[j])  # {phi_i, phi_j} = d phi_j (X_i)
            if not val.is_zero():
                return Verdict.fail((f"bracket[{i + 1},{j + 1}]", val))
    return Verdict.ok()


# -- gauge transformation ----------------------------------------------------------


def gauge_transform(pi: Bivector, B: PForm):
    """r = id + pi# B_flat and the transformed frame {(pi# a, a + i_{pi# a} B)}.

    dB = 0 guarantees the frame is Dirac; for dB != 0 the frame is still
    returned and involutivity is the caller's question.
    """
    chart = same_chart(pi, B)
    if B.degree != 2:
        raise ValueError("gauge needs a 2-form")
    n = chart.dim
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            # (pi# B_flat)(d_j) = pi#(i_{d_j} B)
            val = pi.sharp(interior(VectorField.coordinate(chart, j), B)).comps[i]
            row.append(val + (chart.one() if i == j else chart.zero()))
        grid.append(row)
    r = OneOneTensor(chart, grid)
    secs = []
    for i in range(n):
        a = PForm.coordinate(chart, i)
        v = pi.sharp(a)
        secs.append(GSection(v, a + interior(v, B)))
    return r, GFrame(secs, provenance="generic")


# -- quasi variant ------------------------------------------------------------------


def quasi_nijenhuis_check(L: GFrame, r: OneOneTensor, phi: PForm) -> Verdict:
    """<a, torsion(Y, Z)> = -phi(X, Y, Z) for frame (X, a) and coordinate Y, Z."""
    same_chart(L.sections[0], r, phi)
    if phi.degree != 3:
        raise ValueError("need a 3-form")
    if not ext_d(phi).is_zero():
        raise PreconditionError("phi is not closed")
    chart = L.chart
    N = nijenhuis_torsion(r)
    for a, s in enumerate(L.sections):
        two = N.pair_form(s.cov)  # <a, N(., .)>
        for j, k in combinations(range(chart.dim), 2):
            lhs = two.get((j, k))
            rhs = -interior(
                VectorField.coordinate(chart, k),
                interior(VectorField.coordinate(chart, j), interior(s.vec, phi)),
            ).as_scalar()
            if not (lhs - rhs).is_zero():
                return Verdict.fail((f"quasi[{a};{j},{k}]", lhs - rhs))
    return Verdict.ok()


# -- coordinate transfers -------------------------------------------------------------


def _span_basis(sections, chart, expected: int):
    """Greedy basis of the span of a section list over the function field."""
    chosen = []
    for s in sections:
        if s.is_zero():
            continue
        if not chosen:
            chosen.append(s)
            continue
        rows = [
            [t.components()[i] for t in chosen] for i in range(2 * chart.dim)
        ]
        if solve_linear(FracMatrix(chart, rows), s.components()) is None:
            chosen.append(s)
        if len(chosen) == expected:
            break
    return chosen


def backward_transfer(L: GFrame, slice_values: dict, r: OneOneTensor | None = None, samples: int = 3):
    """Pull back along the inclusion of a coordinate slice {x_j = c_j}.

    Returns (frame on the sliced chart, restricted tensor or None).  When r
    is supplied the slice must be r-invariant, asserted componentwise after
    substitution.
    """
    chart = L.chart
    lag = check_lagrangian(L, samples)
    _require(lag, "lagrangian")
    sliced_idx = sorted(chart.index(v) for v in slice_values)
    kept = [i for i in range(chart.dim) if i not in sliced_idx]
    if not kept:
        raise ValueError("slice keeps no variables")
    sub = Chart(chart.name + "_slice", tuple(chart.variables[i] for i in kept), chart.mode)
    assign = {v: c for v, c in slice_values.items()}

    def restrict(e: ScalarExpr) -> ScalarExpr:
        return e.substitute(assign).project(sub)

    r_C = None
    if r is not None:
        for i in sliced_idx:
            for j in kept:
                val = r.grid[i][j].substitute(assign)
                if not val.is_zero():
                    raise PreconditionError("slice is not r-invariant")
        r_C = OneOneTensor(sub, [[restrict(r.grid[i][j]) for j in kept] for i in kept])
    # sections of L tangent to the slice: kernel of sliced vector components
    rows = []
    for i in sliced_idx:
        rows.append([L.sections[a].vec.comps[i].substitute(assign).project(sub) for a in range(chart.dim)])
    if rows:
        combos = kernel_basis(FracMatrix(sub, rows))
    else:
        combos = [
            [sub.one() if a == b else sub.zero() for a in range(chart.dim)]
            for b in range(chart.dim)
        ]
    candidates = []
    for c in combos:
        vec = [sub.zero()] * len(kept)
        cov = [sub.zero()] * len(kept)
        for a, coeff in enumerate(c):
            if coeff.is_zero():
                continue
            s = L.sections[a]
            for pos, i in enumerate(kept):
                vec[pos] = vec[pos] + coeff * restrict(s.vec.comps[i])
                cov[pos] = cov[pos] + coeff * restrict(s.cov.get((i,)))
        candidates.append(
            GSection(
                VectorField(sub, vec),
                PForm(sub, 1, {(pos,): cov[pos] for pos in range(len(kept))}),
            )
        )
    basis = _span_basis(candidates, sub, len(kept))
    if len(basis) != len(kept):
        raise PreconditionError("backward transfer rank defect (non-clean slice)")
    out = GFrame(basis, provenance="generic")
    if rank_at_samples(out.matrix(), samples) != len(kept):
        out = GFrame(basis, provenance="generic", flags=("backward rank drop at samples",))
    return out, r_C


def forward_transfer(L: GFrame, retained, r: OneOneTensor | None = None, samples: int = 3):
    """Push forward along the projection onto the retained variables.

    Preconditions: frame components do not involve the dropped variables,
    and the dropped coordinate directions span the null distribution.
    """
    chart = L.chart
    lag = check_lagrangian(L, samples)
    _require(lag, "lagrangian")
    kept = [chart.index(v) for v in retained]
    dropped = [i for i in range(chart.dim) if i not in kept]
    sub = Chart(chart.name + "_quot", tuple(chart.variables[i] for i in kept), chart.mode)
    for s in L.sections:
        for e in s.components():
            if any(e.num.degree_in(i) > 0 or e.den.degree_in(i) > 0 for i in dropped):
                raise PreconditionError("frame depends on a projected-out variable")
    null = null_distribution(L, lag, samples)
    if len(null.basis) != len(dropped):
        raise PreconditionError("projected-out directions do not span the null distribution")
    for i in dropped:
        if not section_in_span(GSection.from_vector(VectorField.coordinate(chart, i)), L, lag):
            raise PreconditionError("projected-out directions do not span the null distribution")
    r_Q = None
    if r is not None:
        for i in kept:
            for j in dropped:
                if not r.grid[i][j].is_zero():
                    raise PreconditionError("tensor does not descend along the projection")
            for j in kept:
                e = r.grid[i][j]
                if any(e.num.degree_in(d) > 0 or e.den.degree_in(d) > 0 for d in dropped):
                    raise PreconditionError("tensor does not descend along the projection")
        r_Q = OneOneTensor(sub, [[r.grid[i][j].project(sub) for j in kept] for i in kept])
    # sections with covector part annihilating the dropped directions push forward
    rows = [
        [L.sections[a].cov.get((i,)) for a in range(chart.dim)] for i in dropped
    ]
    combos = (
        kernel_basis(FracMatrix(chart, rows))
        if rows
        else [
            [chart.one() if a == b else chart.zero() for a in range(chart.dim)]
            for b in range(chart.dim)
        ]
    )
    candidates = []
    for c in combos:
        vec = [chart.zero()] * len(kept)
        cov = [chart.zero()] * len(kept)
        for a, coeff in enumerate(c):
            if coeff.is_zero():
                continue
            s = L.sections[a]
            for pos, i in enumerate(kept):
                vec[pos] = vec[pos] + coeff * s.vec.comps[i]
                cov[pos] = cov[pos] + coeff * s.cov.get((i,))
        candidates.append(
            GSection(
                VectorField(sub, [e.project(sub) for e in vec]),
                PForm(sub, 1, {(pos,): cov[pos].project(sub) for pos in range(len(kept))}),
            )
        )
    basis = _span_basis(candidates, sub, len(kept))
    if len(basis) != len(kept):
        raise PreconditionError("forward transfer rank defect")
    return GFrame(basis, provenance="generic"), r_Q


# -- contraction- and double-type comparisons -------------------------------------------


def check_contraction_type(L: GFrame, r: OneOneTensor) -> Verdict:
    """(i) invariance, (ii) derivation-stability along pr_T(L) only,
    (iii) torsion vanishing on pr_T(L)."""
    lag = check_lagrangian(L)
    _require(lag, "lagrangian")
    inv = check_invariance(L, r, lag)
    if inv.status != PASS:
        return Verdict.fail(("invariance", "condition (i) fails"), *inv.witnesses)
    n = L.chart.dim
    for b in range(n):
        Y = L.sections[b].vec
        for a in range(n):
            da = big_D(Y, L.sections[a], r)
            for c in range(n):
                val = pairing(da, L.sections[c])
                if not val.is_zero():
                    return Verdict.fail((f"stability[{a};{b};{c}]", val))
    N = nijenhuis_torsion(r)
    for a in range(n):
        for b in range(n):
            val = N.apply(L.sections[a].vec, L.sections[b].vec)
            for i in range(n):
                if not val.comps[i].is_zero():
                    return Verdict.fail((f"torsion_on_range[{a},{b}]_{i}", val.comps[i]))
    return Verdict.ok()


def _involutive_under(L: GFrame, bracket) -> Verdict:
    n = L.chart.dim
    for a in range(n):
        for b in range(a + 1, n):
            br = bracket(L.sections[a], L.sections[b])
            for c in range(n):
                val = pairing(br, L.sections[c])
                if not val.is_zero():
                    return Verdict.fail((f"T[{a},{b},{c}]", val))
    return Verdict.ok()


def check_double_type(L: GFrame, r: OneOneTensor, samples: int = 3) -> Verdict:
    """Torsion-free r, and L as well as its (1,0) transform involutive for both
    the standard and the double bracket."""
    lag = check_lagrangian(L, samples)
    _require(lag, "lagrangian")
    nij = check_nijenhuis(r)
    if nij.status != PASS:
        return Verdict.fail(("nijenhuis", "torsion does not vanish"), *nij.witnesses)
    try:
        L10 = hierarchy(L, r, 1, "n0", samples)
    except HierarchyKernelError:
        return Verdict.inconclusive(("transform", "(r, id) restricted to L is not injective"))
    for name, frame in (("L", L), ("L10", L10)):
        flag = check_lagrangian(frame, samples)
        if flag.status != PASS:
            return Verdict.fail((name, "not lagrangian"))
        for bname, bracket in (
            ("courant", courant_bracket),
            ("double", lambda s1, s2: double_bracket(s1, s2, r)),
        ):
            v = _involutive_under(frame, bracket)
            if v.status != PASS:
                return Verdict.fail((f"{name}.{bname}", "involutivity fails"), *v.witnesses)
    return Verdict.ok()
