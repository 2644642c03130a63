"""Batch front end.

Subcommands: check, hierarchy, traces, holomorphic, algebroid, selftest.
Reports are stable key-value documents, byte-identical across runs for the
same inputs (timings are opt-in precisely to keep that property).  Exit
codes: 0 all pass, 1 any fail, 2 any inconclusive and none failed, 3
usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time

from . import __version__
from .errors import AdmissibilityError, DngeoError, HierarchyKernelError
from .symbolic.scalar import to_str
from .dirac import FAIL, INCONCLUSIVE, PASS
from .scene import SceneError, parse_scene, run_scene

REPORT_FORMAT = "report-v1"
SCENE_FORMAT = "scene-v1"


class _Report:
    def __init__(self, kind: str, digest: str, mode: str, timings: bool):
        self.lines = [
            f"tool: dngeo {__version__}",
            f"format: {REPORT_FORMAT}",
            f"kind: {kind}",
            f"scene: {digest}",
        ]
        if digest != "selftest":
            self.lines.append(f"scene_format: {SCENE_FORMAT}")
        self.lines.append(f"mode: {mode}")
        self.timings = timings
        self.statuses = []

    def add(self, k, v):
        self.lines.append(f"{k}: {v}")

    def check(self, index: int, name: str, verdict, elapsed: float):
        self.add(f"check.{index}.name", name)
        self.add(f"check.{index}.verdict", verdict.status)
        for wname, wval in verdict.witnesses:
            val = wval if isinstance(wval, str) else to_str(wval)
            self.add(f"check.{index}.witness.{wname}", val)
        if self.timings:
            self.add(f"check.{index}.elapsed_ms", f"{elapsed * 1000:.1f}")
        self.statuses.append(verdict.status)

    def finish(self):
        if FAIL in self.statuses:
            overall, code = FAIL, 1
        elif INCONCLUSIVE in self.statuses:
            overall, code = INCONCLUSIVE, 2
        else:
            overall, code = PASS, 0
        self.add("checks", str(len(self.statuses)))
        self.add("status", overall)
        return "\n".join(self.lines) + "\n", code


def _emit(text: str, output: str | None):
    sys.stdout.write(text)
    if output:
        with open(output, "w") as fh:
            fh.write(text)


def _load_scene(path: str, mode: str = "real"):
    with open(path, "rb") as fh:
        data = fh.read()
    digest = "sha256:" + hashlib.sha256(data).hexdigest()
    scene = parse_scene(data.decode("utf-8"), default_mode=mode)
    return scene, digest


def _unique(table: dict, flag_value, what: str):
    if flag_value is not None:
        if flag_value not in table:
            raise SceneError(f"unknown {what} {flag_value!r}", 0)
        return table[flag_value]
    if len(table) != 1:
        raise SceneError(
            f"scene declares {len(table)} {what}s; pass --{what} to pick one", 0
        )
    return next(iter(table.values()))


def cmd_check(args) -> int:
    scene, digest = _load_scene(args.scene, args.mode)
    report = _Report("check", digest, scene.chart.mode, args.timings)
    for i, rec in enumerate(run_scene(scene, args.samples)):
        report.check(i, rec.name, rec.verdict, rec.elapsed)
    text, code = report.finish()
    _emit(text, args.output)
    return code


def cmd_hierarchy(args) -> int:
    from .dirac import dirac_nijenhuis_report, hierarchy
    from .scene import _merge_report

    scene, digest = _load_scene(args.scene, args.mode)
    frame = _unique(scene.frames, args.frame, "frame")
    r = _unique(scene.oneones, args.oneone, "oneone")
    side = {"n0": "n0", "0n": "0n"}.get(args.side)
    if side is None:
        raise SceneError("side must be n0 or 0n", 0)
    report = _Report("hierarchy", digest, scene.chart.mode, args.timings)
    report.add("side", side)
    report.add("n", str(args.n))
    idx = 0
    for step in range(1, args.n + 1):
        t0 = time.monotonic()
        try:
            member = hierarchy(frame, r, step, side, args.samples)
        except HierarchyKernelError as e:
            from .dirac import Verdict

            report.check(idx, f"hierarchy[{step}]", Verdict(FAIL, (("kernel", str(e)),)), 0.0)
            idx += 1
            break
        for a, s in enumerate(member.sections):
            for lbl, parts in (("vec", s.vec.comps), ("cov", [s.cov.get((i,)) for i in range(scene.chart.dim)])):
                report.add(
                    f"frame.{step}.section.{a}.{lbl}",
                    "(" + ", ".join(to_str(c) for c in parts) + ")",
                )
        verdict = _merge_report(dirac_nijenhuis_report(member, r, args.samples))
        report.check(idx, f"dirac_nijenhuis hierarchy[{step}]", verdict, time.monotonic() - t0)
        idx += 1
    text, code = report.finish()
    _emit(text, args.output)
    return code


def cmd_traces(args) -> int:
    from .dirac import Verdict, check_traces_involution, traces

    scene, digest = _load_scene(args.scene, args.mode)
    frame = _unique(scene.frames, args.frame, "frame")
    r = _unique(scene.oneones, args.oneone, "oneone")
    report = _Report("traces", digest, scene.chart.mode, args.timings)
    report.add("jmax", str(args.jmax))
    for j, phi in enumerate(traces(r, args.jmax), start=1):
        report.add(f"trace.{j}", to_str(phi))
    t0 = time.monotonic()
    try:
        verdict = check_traces_involution(frame, r, args.jmax)
    except AdmissibilityError as e:
        verdict = Verdict(FAIL, (("error", str(e)),))
    report.check(0, f"traces_involution jmax={args.jmax}", verdict, time.monotonic() - t0)
    text, code = report.finish()
    _emit(text, args.output)
    return code


def cmd_holomorphic(args) -> int:
    from .holomorphic import ComplexStructure, check_holomorphic_dirac
    from .scene import _merge_report

    scene, digest = _load_scene(args.scene, args.mode)
    frame = _unique(scene.frames, args.frame, "frame")
    r = _unique(scene.oneones, args.oneone, "oneone")
    report = _Report("holomorphic", digest, scene.chart.mode, args.timings)
    t0 = time.monotonic()
    try:
        J = ComplexStructure(r)
    except DngeoError as e:
        from .dirac import Verdict

        report.check(0, "complex_structure", Verdict(FAIL, (("error", str(e)),)), 0.0)
        text, code = report.finish()
        _emit(text, args.output)
        return code
    rep = check_holomorphic_dirac(frame, J, args.samples)
    for i, (name, v) in enumerate(rep.named()):
        report.check(i, f"holomorphic_dirac.{name}", v, time.monotonic() - t0)
    text, code = report.finish()
    _emit(text, args.output)
    return code


def cmd_algebroid(args) -> int:
    from .algebroid import (
        check_algebroid,
        check_IM_compat,
        check_IM_form,
        check_IM_nijenhuis,
        check_IM_oneone,
        dirac_to_algebroid,
        transport_oneone,
    )
    from .dirac import Verdict
    from .errors import PreconditionError

    scene, digest = _load_scene(args.scene, args.mode)
    frame = _unique(scene.frames, args.frame, "frame")
    r = scene.oneones.get(args.oneone) if args.oneone else None
    if args.oneone and r is None:
        raise SceneError(f"unknown oneone {args.oneone!r}", 0)
    if r is None and len(scene.oneones) == 1:
        r = next(iter(scene.oneones.values()))
    report = _Report("algebroid", digest, scene.chart.mode, args.timings)
    t0 = time.monotonic()
    try:
        A, imf = dirac_to_algebroid(frame)
    except PreconditionError as e:
        report.check(0, "dirac_to_algebroid", Verdict(FAIL, (("error", str(e)),)), 0.0)
        text, code = report.finish()
        _emit(text, args.output)
        return code
    for a in range(A.rank):
        report.add(
            f"anchor.{a}",
            "(" + ", ".join(to_str(c) for c in A.anchors[a].comps) + ")",
        )
    for (a, b, c), val in sorted(A.struct.items()):
        report.add(f"struct.{a + 1}.{b + 1}.{c + 1}", to_str(val))
    idx = 0
    v = check_algebroid(A)
    report.check(idx, "algebroid_axioms", v, time.monotonic() - t0)
    idx += 1
    if v.status == PASS:
        v = check_IM_form(imf, v)
        report.check(idx, "im_form", v, 0.0)
        idx += 1
        if r is not None and v.status == PASS:
            try:
                T = transport_oneone(frame, r)
                for name, chk in (
                    ("im_oneone", check_IM_oneone),
                    ("im_nijenhuis", check_IM_nijenhuis),
                ):
                    v2 = chk(T)
                    report.check(idx, name, v2, 0.0)
                    idx += 1
                report.check(idx, "im_compat", check_IM_compat(imf, T, checked=True), 0.0)
                idx += 1
            except PreconditionError as e:
                report.check(idx, "transport", Verdict(INCONCLUSIVE, (("precondition", str(e)),)), 0.0)
                idx += 1
    text, code = report.finish()
    _emit(text, args.output)
    return code


def cmd_selftest(args) -> int:
    from .identities import run_all

    report = _Report("selftest", "selftest", "real", args.timings)
    report.add("seed", str(args.seed))
    report.add("instances", str(args.instances))
    from .dirac import Verdict

    results = run_all(seed=args.seed, instances=args.instances)
    total = 0
    failures = 0
    for i, (name, inst, fails) in enumerate(results):
        total += inst
        failures += fails
        verdict = (
            Verdict(PASS)
            if fails == 0
            else Verdict(FAIL, (("failing_instances", str(fails)),))
        )
        report.check(i, f"identity.{name}", verdict, 0.0)
    report.add("identities", str(len(results)))
    report.add("instances_total", str(total))
    report.add("failures_total", str(failures))
    text, code = report.finish()
    _emit(text, args.output)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dngeo",
        description="Exact symbolic checks for compatibility structures on charts.",
    )
    p.add_argument("--version", action="version", version=f"dngeo {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, scene=True):
        if scene:
            sp.add_argument("scene", help="scene file path")
        sp.add_argument("--output", help="also write the report to this path")
        sp.add_argument("--samples", type=int, default=3, help="sample-point count")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        sp.add_argument(
            "--mode",
            choices=("real", "complex"),
            default="real",
            help="default scalar mode for charts declared without one",
        )
        sp.add_argument(
            "--timings",
            action="store_true",
            help="include wall-clock timings (makes reports non-reproducible)",
        )

    sp = sub.add_parser("check", help="run the checks declared in a scene")
    common(sp)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("hierarchy", help="emit and check hierarchy members")
    common(sp)
    sp.add_argument("--side", required=True, choices=("n0", "0n"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--frame", help="frame name (defaults to the unique one)")
    sp.add_argument("--oneone", help="tensor name (defaults to the unique one)")
    sp.set_defaults(fn=cmd_hierarchy)

    sp = sub.add_parser("traces", help="trace functions and their involution")
    common(sp)
    sp.add_argument("--jmax", type=int, required=True)
    sp.add_argument("--frame")
    sp.add_argument("--oneone")
    sp.set_defaults(fn=cmd_traces)

    sp = sub.add_parser("holomorphic", help="holomorphic-Dirac report for (frame, J)")
    common(sp)
    sp.add_argument("--frame")
    sp.add_argument("--oneone")
    sp.set_defaults(fn=cmd_holomorphic)

    sp = sub.add_parser("algebroid", help="algebroid data and infinitesimal checks")
    common(sp)
    sp.add_argument("--frame")
    sp.add_argument("--oneone")
    sp.set_defaults(fn=cmd_algebroid)

    sp = sub.add_parser("selftest", help="run the built-in identity suite")
    common(sp, scene=False)
    sp.add_argument("--instances", type=int, default=3)
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; the contract says 3
        return 3 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (SceneError, DngeoError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
