"""Scene files: a small line-oriented declaration language for charts,
tensors, subbundle frames and check requests.

Grammar (one declaration per line; '#' starts a comment; 1-based indices):

    chart <name> <var> ... [complex]
    scalar <name> = <expr>
    vector <name> = <expr> ; ... ; <expr>            n components
    oneone <name> = <expr> , ... ; ... ; <expr>      n rows of n entries
    bivector <name> = <i> <j> <expr> ; ...           upper components i < j
    form <name> <degree> = <i> ... <i> <expr> ; ...  strictly increasing tuples
    frame <name> = poisson <bivector>
    frame <name> = presymplectic <form>
    frame <name> = split <vector> ...
    frame <name> = sections <vector|0> <form|0> ; ...
    check <kind> <arg> ...

Check kinds: lagrangian F | involutive F | dirac F | nijenhuis R |
invariance F R | d_stability F R | dirac_nijenhuis F R | form_compat W R |
quasi F R PHI | concur F G | contraction_type F R | double_type F R |
holomorphic_dirac F R | holo_form W W1 R | traces F R JMAX | algebroid F [R].

Errors carry the 1-based line and column of the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    AdmissibilityError,
    DngeoError,
    ExprSyntaxError,
    PreconditionError,
)
from .symbolic import Chart, parse_scalar
from .courant import GSection
from .dirac import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    GFrame,
    Verdict,
    check_concur,
    check_contraction_type,
    check_D_stability,
    check_double_type,
    check_form_compat,
    check_invariance,
    check_involutive,
    check_lagrangian,
    check_nijenhuis,
    check_traces_involution,
    dirac_nijenhuis_report,
    make_graph_poisson,
    make_graph_presymplectic,
    make_split,
    quasi_nijenhuis_check,
    traces,
)
from .tensor import Bivector, OneOneTensor, PForm, VectorField


class SceneError(DngeoError):
    def __init__(self, message, line, col=1):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, col {col})")


@dataclass
class Scene:
    chart: Chart | None = None
    scalars: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    oneones: dict = field(default_factory=dict)
    bivectors: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    frames: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)  # (lineno, kind, args)

    def all_names(self):
        out = set()
        for d in (
            self.scalars,
            self.vectors,
            self.oneones,
            self.bivectors,
            self.forms,
            self.frames,
        ):
            out |= set(d)
        return out


def _parse_expr(text, chart, lineno):
    try:
        return parse_scalar(text, chart)
    except ExprSyntaxError as e:
        raise SceneError(e.bare_message, lineno, e.col) from None


def _need_chart(scene, lineno):
    if scene.chart is None:
        raise SceneError("no chart declared yet", lineno)
    return scene.chart


def _check_fresh(scene, name, lineno):
    if name in scene.all_names():
        raise SceneError(f"name {name!r} already declared", lineno)


def parse_scene(text: str, default_mode: str = "real") -> Scene:
    """Parse a scene; charts declared without an explicit mode use
    default_mode (settable from the command line)."""
    scene = Scene()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "chart":
            if scene.chart is not None:
                raise SceneError("chart already declared", lineno)
            words = rest.split()
            if len(words) < 2:
                raise SceneError("chart needs a name and variables", lineno)
            mode = default_mode
            if words[-1] in ("complex", "real"):
                mode = words[-1]
                words = words[:-1]
            try:
                scene.chart = Chart(words[0], tuple(words[1:]), mode)
            except ValueError as e:
                raise SceneError(str(e), lineno) from None
        elif head in ("scalar", "vector", "oneone", "bivector", "form"):
            chart = _need_chart(scene, lineno)
            name, eq, body = rest.partition("=")
            nameparts = name.split()
            if not eq:
                raise SceneError(f"{head} declaration needs '='", lineno)
            body = body.strip()
            if head == "form":
                if len(nameparts) != 2:
                    raise SceneError("form needs: form <name> <degree> = ...", lineno)
                name, degree_text = nameparts
                try:
                    degree = int(degree_text)
                except ValueError:
                    raise SceneError("form degree must be an integer", lineno) from None
            else:
                if len(nameparts) != 1:
                    raise SceneError(f"bad {head} declaration", lineno)
                name = nameparts[0]
            _check_fresh(scene, name, lineno)
            n = chart.dim
            if head == "scalar":
                scene.scalars[name] = _parse_expr(body, chart, lineno)
            elif head == "vector":
                comps = [c.strip() for c in body.split(";")]
                if len(comps) != n:
                    raise SceneError(f"vector needs {n} components", lineno)
                scene.vectors[name] = VectorField(
                    chart, [_parse_expr(c, chart, lineno) for c in comps]
                )
            elif head == "oneone":
                rows = [r.strip() for r in body.split(";")]
                if len(rows) != n:
                    raise SceneError(f"oneone needs {n} rows", lineno)
                grid = []
                for r in rows:
                    cols = [c.strip() for c in r.split(",")]
                    if len(cols) != n:
                        raise SceneError(f"oneone rows need {n} entries", lineno)
                    grid.append([_parse_expr(c, chart, lineno) for c in cols])
                scene.oneones[name] = OneOneTensor(chart, grid)
            elif head == "bivector":
                comps = {}
                if body:
                    for piece in body.split(";"):
                        words = piece.strip().split(None, 2)
                        if len(words) != 3:
                            raise SceneError(
                                "bivector entries look like: <i> <j> <expr>", lineno
                            )
                        try:
                            i, j = int(words[0]) - 1, int(words[1]) - 1
                        except ValueError:
                            raise SceneError(
                                "bivector indices must be integers", lineno
                            ) from None
                        if not (0 <= i < j < n):
                            raise SceneError("bivector indices must satisfy 1 <= i < j <= n", lineno)
                        comps[(i, j)] = _parse_expr(words[2], chart, lineno)
                scene.bivectors[name] = Bivector(chart, comps)
            else:  # form
                comps = {}
                if body:
                    for piece in body.split(";"):
                        words = piece.strip().split()
                        if len(words) < degree + 1:
                            raise SceneError(
                                f"form entries look like: {'<i> ' * degree}<expr>", lineno
                            )
                        try:
                            idx = tuple(int(w) - 1 for w in words[:degree])
                        except ValueError:
                            raise SceneError(
                                "form indices must be integers", lineno
                            ) from None
                        if list(idx) != sorted(set(idx)) or any(
                            not 0 <= i < n for i in idx
                        ):
                            raise SceneError(
                                "form indices must be strictly increasing and in range",
                                lineno,
                            )
                        comps[idx] = _parse_expr(" ".join(words[degree:]), chart, lineno)
                try:
                    scene.forms[name] = PForm(chart, degree, comps)
                except ValueError as e:
                    raise SceneError(str(e), lineno) from None
        elif head == "frame":
            chart = _need_chart(scene, lineno)
            name, eq, body = rest.partition("=")
            name = name.strip()
            if not eq:
                raise SceneError("frame declaration needs '='", lineno)
            _check_fresh(scene, name, lineno)
            words = body.strip().split()
            if not words:
                raise SceneError("empty frame declaration", lineno)
            kind = words[0]
            try:
                if kind == "poisson":
                    if len(words) != 2 or words[1] not in scene.bivectors:
                        raise SceneError("frame = poisson <bivector>", lineno)
                    scene.frames[name] = make_graph_poisson(scene.bivectors[words[1]])
                elif kind == "presymplectic":
                    if len(words) != 2 or words[1] not in scene.forms:
                        raise SceneError("frame = presymplectic <2-form>", lineno)
                    scene.frames[name] = make_graph_presymplectic(scene.forms[words[1]])
                elif kind == "split":
                    fields_ = []
                    for w in words[1:]:
                        if w not in scene.vectors:
                            raise SceneError(f"unknown vector {w!r}", lineno)
                        fields_.append(scene.vectors[w])
                    if not fields_:
                        raise SceneError("split frame needs at least one vector", lineno)
                    scene.frames[name] = make_split(fields_)
                elif kind == "sections":
                    pieces = " ".join(words[1:]).split(";")
                    secs = []
                    for piece in pieces:
                        pw = piece.strip().split()
                        if len(pw) != 2:
                            raise SceneError(
                                "sections entries look like: <vector|0> <form|0>", lineno
                            )
                        vname, fname = pw
                        vec = (
                            VectorField.zero(chart)
                            if vname == "0"
                            else scene.vectors.get(vname)
                        )
                        cov = (
                            PForm.zero(chart, 1)
                            if fname == "0"
                            else scene.forms.get(fname)
                        )
                        if vec is None or cov is None:
                            raise SceneError(f"unknown section parts in {piece!r}", lineno)
                        if cov.degree != 1:
                            raise SceneError("section covector parts must be 1-forms", lineno)
                        secs.append(GSection(vec, cov))
                    scene.frames[name] = GFrame(secs)
                else:
                    raise SceneError(f"unknown frame constructor {kind!r}", lineno)
            except SceneError:
                raise
            except DngeoError as e:
                raise SceneError(str(e), lineno) from None
            except ValueError as e:
                raise SceneError(str(e), lineno) from None
        elif head == "check":
            _need_chart(scene, lineno)
            words = rest.split()
            if not words:
                raise SceneError("empty check", lineno)
            scene.checks.append((lineno, words[0], tuple(words[1:])))
        else:
            raise SceneError(f"unknown declaration {head!r}", lineno)
    if scene.chart is None:
        raise SceneError("scene declares no chart", 1)
    return scene


# -- check dispatch ----------------------------------------------------------------


@dataclass(frozen=True)
class CheckRecord:
    name: str
    verdict: Verdict
    elapsed: float = 0.0


def _get(scene, table, name, lineno, what):
    obj = getattr(scene, table).get(name)
    if obj is None:
        raise SceneError(f"unknown {what} {name!r}", lineno)
    return obj


def _merge_report(report) -> Verdict:
    worst = PASS
    witnesses = []
    for name, v in report.named():
        if v.status == FAIL and worst != FAIL:
            worst = FAIL
        elif v.status == INCONCLUSIVE and worst == PASS:
            worst = INCONCLUSIVE
        for wname, wval in v.witnesses:
            witnesses.append((f"{name}.{wname}", wval))
    return Verdict(worst, tuple(witnesses))


def run_check(scene: Scene, lineno: int, kind: str, args, samples: int = 3) -> Verdict:
    def frame(i=0):
        return _get(scene, "frames", args[i], lineno, "frame")

    def oneone(i):
        return _get(scene, "oneones", args[i], lineno, "oneone")

    def form(i):
        return _get(scene, "forms", args[i], lineno, "form")

    def arity(k):
        if len(args) != k:
            raise SceneError(f"check {kind} takes {k} arguments", lineno)

    try:
        if kind == "lagrangian":
            arity(1)
            return check_lagrangian(frame(), samples)
        if kind == "involutive":
            arity(1)
            return check_involutive(frame())
        if kind == "dirac":
            arity(1)
            lag = check_lagrangian(frame(), samples)
            if lag.status != PASS:
                return lag
            return check_involutive(frame(), lag)
        if kind == "nijenhuis":
            arity(1)
            return check_nijenhuis(oneone(0))
        if kind == "invariance":
            arity(2)
            return check_invariance(frame(), oneone(1))
        if kind == "d_stability":
            arity(2)
            return check_D_stability(frame(), oneone(1))
        if kind == "dirac_nijenhuis":
            arity(2)
            return _merge_report(dirac_nijenhuis_report(frame(), oneone(1), samples))
        if kind == "form_compat":
            arity(2)
            return check_form_compat(form(0), oneone(1))
        if kind == "quasi":
            arity(3)
            return quasi_nijenhuis_check(frame(), oneone(1), form(2))
        if kind == "concur":
            arity(2)
            return check_concur(frame(0), frame(1), samples)
        if kind == "contraction_type":
            arity(2)
            return check_contraction_type(frame(), oneone(1))
        if kind == "double_type":
            arity(2)
            return check_double_type(frame(), oneone(1), samples)
        if kind == "holomorphic_dirac":
            arity(2)
            from .holomorphic import ComplexStructure, check_holomorphic_dirac

            J = ComplexStructure(oneone(1))
            return _merge_report(check_holomorphic_dirac(frame(), J, samples))
        if kind == "holo_form":
            arity(3)
            from .holomorphic import ComplexStructure, check_holo_form

            J = ComplexStructure(oneone(2))
            return check_holo_form((form(0), form(1)), J)
        if kind == "traces":
            arity(3)
            try:
                jmax = int(args[2])
            except ValueError:
                raise SceneError("traces jmax must be an integer", lineno) from None
            return check_traces_involution(frame(), oneone(1), jmax)
        if kind == "algebroid":
            if len(args) not in (1, 2):
                raise SceneError("check algebroid takes 1 or 2 arguments", lineno)
            from .algebroid import (
                check_algebroid,
                check_IM_compat,
                check_IM_form,
                check_IM_nijenhuis,
                check_IM_oneone,
                dirac_to_algebroid,
                transport_oneone,
            )

            A, imf = dirac_to_algebroid(frame())
            v = check_algebroid(A)
            if v.status != PASS:
                return v
            v = check_IM_form(imf, v)
            if v.status != PASS or len(args) == 1:
                return v
            T = transport_oneone(frame(), oneone(1))
            for chk in (check_IM_oneone, check_IM_nijenhuis):
                v = chk(T)
                if v.status != PASS:
                    return v
            return check_IM_compat(imf, T, checked=True)
        raise SceneError(f"unknown check kind {kind!r}", lineno)
    except AdmissibilityError as e:
        return Verdict(FAIL, (("error", str(e)),))
    except PreconditionError as e:
        return Verdict(INCONCLUSIVE, (("precondition", str(e)),))
    except ValueError as e:
        raise SceneError(str(e), lineno) from None


def run_scene(scene: Scene, samples: int = 3):
    import time

    records = []
    for lineno, kind, args in scene.checks:
        t0 = time.monotonic()
        verdict = run_check(scene, lineno, kind, args, samples)
        records.append(
            CheckRecord(
                f"{kind} {' '.join(args)}".strip(), verdict, time.monotonic() - t0
            )
        )
    return records
