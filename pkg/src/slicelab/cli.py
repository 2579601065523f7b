"""Command-line front end: ``slicelab <command> [--spec FILE] [options]``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input
error, 3 internal numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .clifford import CliffordNumber, gp, is_admissible_unit
from .dirac import DerivativeEngine, regularity_verdict
from .errors import HypothesisViolated, InputError, NumericalFailure
from .growth import GrowthReport, growth_bounds_convex, growth_bounds_kfold, growth_bounds_starlike
from .sampling import random_frame, rng_from
from .slices import decompose, induce, phi_value, sign_frame_values, transfer_representation
from .specfile import COMMAND_CHECKS, SpecFile, _clifford, build_gauge, build_stem, load_spec, validate_spec
from .stems import StemPoint, check_axis_vanishing, check_equivariance, eval_stem

COMMANDS = ("verify-stem", "verify-regular", "induce", "represent", "growth-scan", "selftest")
CSV_COLUMNS = ("run_id", "frame_id", "radius", "rho", "abs_f", "lower", "upper", "margin_lo", "margin_hi", "pass")
DEFAULT_TOLS = {"verify-stem": 1e-9, "induce": 1e-9, "represent": 1e-9, "growth-scan": 1e-9}


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float | None = None
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "worst": self.worst, "witness": self.witness, **self.details}


@dataclass
class RunReport:
    command: str
    spec: dict
    checks: list[CheckResult]
    run_id: str = ""
    rows: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if all(c.passed for c in self.checks) else "fail"

    def to_dict(self) -> dict:
        # elapsed time stays out of artifacts so identical runs give identical bytes
        return {
            "run_id": self.run_id,
            "command": self.command,
            "status": self.status,
            "spec": self.spec,
            "checks": [c.to_dict() for c in self.checks],
            "rows": len(self.rows),
        }


def run_id_for(command: str, resolved: dict) -> str:
    blob = json.dumps({"command": command, "spec": resolved}, sort_keys=True, default=_json_default)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _wanted(spec: SpecFile, command: str) -> tuple[str, ...]:
    available = COMMAND_CHECKS[command]
    if spec.checks is None:
        return available
    return tuple(c for c in available if c in spec.checks)


def _tol(spec: SpecFile, command: str) -> float:
    return spec.tol if spec.tol is not None else DEFAULT_TOLS[command]


# ---------------------------------------------------------------- commands


def cmd_verify_stem(spec: SpecFile) -> RunReport:
    F = build_stem(spec.stem, spec.m, spec.n, spec.seed)
    tol = _tol(spec, "verify-stem")
    spec.resolved["tol"] = tol
    checks = []
    for name in _wanted(spec, "verify-stem"):
        fn = check_equivariance if name == "equivariance" else check_axis_vanishing
        r = fn(F, samples=spec.samples, tol=tol, seed=spec.seed)
        checks.append(CheckResult(name, r.passed, r.worst_residual, r.witness))
    return RunReport("verify-stem", spec.resolved, checks)


def _engine(spec: SpecFile) -> DerivativeEngine | None:
    if spec.engine == "auto":
        return None
    return DerivativeEngine(spec.engine)


def cmd_verify_regular(spec: SpecFile) -> RunReport:
    F = build_stem(spec.stem, spec.m, spec.n, spec.seed)
    v = regularity_verdict(F, spec.samples, spec.tol, spec.seed, spec.interpretation, _engine(spec), spec.frames)
    spec.resolved["tol"] = v.details["tol"]
    spec.resolved["engine"] = v.details["engine"]
    checks = []
    wanted = _wanted(spec, "verify-regular")
    if "regular" in wanted:
        checks.append(CheckResult("regular", v.regular, v.worst, v.witness, {"fd_error": v.fd_error}))
    if "equivalence" in wanted:
        checks.append(CheckResult("equivalence", v.equivalence_ok, v.worst_dirac, v.details.get("equivalence_witness")))
    return RunReport("verify-regular", spec.resolved, checks)


def _points(spec: SpecFile, F, rng) -> list[StemPoint]:
    if spec.points is not None:
        return [StemPoint.from_array(np.asarray(p, dtype=float)) for p in spec.points]
    out = []
    for _ in range(spec.samples):
        x0, r = F.domain.sample_slice(rng, F.n)
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        out.append(StemPoint(x0, r * u[0], r * u[1], r * u[2]))
    return out


def cmd_induce(spec: SpecFile) -> RunReport:
    """Induced values at slice-cone points, compared across random frames."""
    F = build_stem(spec.stem, spec.m, spec.n, spec.seed)
    tol = _tol(spec, "induce")
    spec.resolved["tol"] = tol
    rng = rng_from(spec.seed)
    worst, witness, values = 0.0, None, []
    for x in _points(spec, F, rng):
        for _ in range(spec.frames):
            fr = random_frame(spec.m, rng)
            direct = phi_value(fr, eval_stem(F, x))
            induced = induce(F, decompose(x, fr))
            err = float(np.abs(direct.coeffs - induced.coeffs).max())
            if err > worst:
                worst = err
                witness = {"x": x.data.tolist(), "I": fr.I.coeffs.tolist(), "J": fr.J.coeffs.tolist()}
        values.append({"x": x.data.tolist(), "value": induced.coeffs.tolist()})
    ok = worst <= tol
    checks = [CheckResult("frame_consistency", ok, worst, None if ok else witness, {"values": values})]
    return RunReport("induce", spec.resolved, checks)


def cmd_represent(spec: SpecFile) -> RunReport:
    """Transfer from sign-frame values on a source frame to a target frame."""
    F = build_stem(spec.stem, spec.m, spec.n, spec.seed)
    tol = _tol(spec, "represent")
    spec.resolved["tol"] = tol
    rng = rng_from(spec.seed)
    worst, witness = 0.0, None
    for x in _points(spec, F, rng):
        src, tgt = random_frame(spec.m, rng), random_frame(spec.m, rng)
        got = transfer_representation(sign_frame_values(F, x, src), src, tgt)
        want = induce(F, decompose(x, tgt))
        err = float(np.abs(got.coeffs - want.coeffs).max())
        if err > worst:
            worst = err
            witness = {"x": x.data.tolist()}
    ok = worst <= tol
    return RunReport("represent", spec.resolved, [CheckResult("transfer", ok, worst, None if ok else witness)])


def _growth_report(spec: SpecFile, F, tol: float) -> GrowthReport:
    g = spec.growth
    Iprime = _clifford(g["Iprime"], spec.m, "growth.Iprime")
    grid = (g["radii"], g["directions"], g["frames"])
    common = dict(tol=tol, seed=spec.seed, eps=g["eps"], grid=grid)
    if g["theorem"] == "kfold":
        return growth_bounds_kfold(F, Iprime, g["k"], **common)
    gauge = build_gauge(g)
    fn = growth_bounds_convex if g["theorem"] == "convex" else growth_bounds_starlike
    return fn(F, Iprime, gauge, measure=g["measure"], **common)


def cmd_growth_scan(spec: SpecFile) -> RunReport:
    F = build_stem(spec.stem, spec.m, spec.n, spec.seed)
    tol = _tol(spec, "growth-scan")
    spec.resolved["tol"] = tol
    try:
        rep = _growth_report(spec, F, tol)
    except HypothesisViolated as exc:
        check = CheckResult("hypotheses", False, None, {"hypothesis": exc.hypothesis, "witness": exc.witness})
        return RunReport("growth-scan", spec.resolved, [check])
    return RunReport("growth-scan", spec.resolved, _growth_checks(spec, rep, tol), rows=rep.rows)


def _growth_checks(spec: SpecFile, rep: GrowthReport, tol: float) -> list[CheckResult]:
    wanted = _wanted(spec, "growth-scan")
    checks = []
    bad = [r for r in rep.rows if not r.passed]
    if "bounds" in wanted:
        worst = max((max(-r.margin_lo, -r.margin_hi) for r in rep.rows), default=0.0)
        checks.append(
            CheckResult(
                "bounds",
                not bad,
                worst,
                bad[0].to_dict() if bad else None,
                {"theorem": rep.theorem, "certified": rep.certified, "notes": rep.notes},
            )
        )
    extremal = spec.stem["kind"] in ("koebe", "halfplane")
    if "equality" in wanted and extremal:
        ray = [r for r in rep.rows if r.direction_id == 0]
        gap = max(abs(r.upper - r.abs_f) for r in ray) if ray else 0.0
        checks.append(CheckResult("equality", gap <= tol, gap, None))
    if "covering" in wanted and rep.covering_ok is not None:
        bound = 2 ** (-2 / spec.growth["k"])
        checks.append(CheckResult("covering", rep.covering_ok, rep.covering_min, None, {"radius": bound}))
    return checks


def cmd_selftest(seed: int) -> RunReport:
    """A fixed battery touching every module; deterministic for a given seed."""
    rng = rng_from(seed)
    checks = []

    m = 3
    worst = 0.0
    for _ in range(50):
        a, b, c = (CliffordNumber(m, rng.integers(-3, 4, 1 << m).astype(float)) for _ in range(3))
        worst = max(worst, float(np.abs((gp(gp(a, b), c) - gp(a, gp(b, c))).coeffs).max()))
    checks.append(CheckResult("associativity", worst == 0.0, worst))
    e1 = CliffordNumber.blade(m, 1)
    checks.append(CheckResult("admissible_e1", is_admissible_unit(e1), None))

    battery = [
        ("verify-stem", {"m": 3, "n": 1, "kind": "square", "samples": 40}),
        ("verify-stem", {"m": 2, "n": 2, "kind": "fueter", "h": [[0, 0, 0, 1], [0, 1, 0, 0, 0, 1]], "samples": 40}),
        ("verify-regular", {"m": 2, "n": 1, "kind": "fueter", "h": [[0, 0, 0, 1]], "samples": 20}),
        ("verify-regular", {"m": 2, "n": 1, "kind": "kernel", "samples": 10}),
        ("induce", {"m": 3, "n": 2, "kind": "square", "samples": 20}),
        ("represent", {"m": 3, "n": 1, "kind": "fueter", "h": [[0, 0, 0, 0, 1]], "samples": 20}),
        ("growth-scan", {"m": 2, "n": 1, "kind": "koebe", "k": 1}),
        ("growth-scan", {"m": 2, "n": 1, "kind": "halfplane"}),
    ]
    rows = []
    for j, (command, raw) in enumerate(battery):
        spec = validate_spec({**raw, "seed": seed + j})
        sub = RUNNERS[command](spec)
        for c in sub.checks:
            checks.append(CheckResult(f"{command}[{j}].{c.name}", c.passed, c.worst))
        rows.extend(sub.rows)
    spec = {"seed": seed, "battery": [{"command": c, **raw} for c, raw in battery]}
    return RunReport("selftest", spec, checks, rows=rows)


RUNNERS = {
    "verify-stem": cmd_verify_stem,
    "verify-regular": cmd_verify_regular,
    "induce": cmd_induce,
    "represent": cmd_represent,
    "growth-scan": cmd_growth_scan,
}


# ---------------------------------------------------------------- artifacts


def rows_to_csv(run_id: str, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([run_id, r.frame_id, repr(r.radius), repr(r.rho), repr(r.abs_f), repr(r.lower), repr(r.upper), repr(r.margin_lo), repr(r.margin_hi), str(r.passed).lower()])
    return buf.getvalue()


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(report: RunReport, out: str | None, fmt: str) -> list[Path]:
    doc = report.to_dict()
    if fmt == "json" and report.rows:
        doc["rows"] = [{"run_id": report.run_id, **r.to_dict()} for r in report.rows]
    text = json.dumps(doc, indent=2, sort_keys=False, default=_json_default) + "\n"
    if out is None:
        sys.stdout.write(text)
        return []
    base = Path(out) / report.command
    written = [base.with_suffix(".json")]
    write_atomic(written[0], text)
    if fmt == "csv" and report.rows:
        written.append(base.with_suffix(".csv"))
        write_atomic(written[1], rows_to_csv(report.run_id, report.rows))
    return written


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slicelab", description="Checks for stem and slice mappings over Clifford algebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--spec", help="JSON run description")
    p.add_argument("--seed", type=int, help="override the spec seed")
    p.add_argument("--tol", type=float, help="override the tolerance")
    p.add_argument("--samples", type=int, help="override the sample count")
    p.add_argument("--out", help="directory for artifacts (default: report to stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--interpretation", choices=("diagonal", "jacobian"))
    return p


def _resolve(args) -> SpecFile:
    if args.spec is None:
        raise InputError(f"{args.command} needs --spec")
    spec = load_spec(args.spec)
    raw = dict(spec.resolved)
    stem = raw.pop("stem")
    raw.update(stem)
    for key in ("seed", "tol", "samples", "interpretation"):
        val = getattr(args, key)
        if val is not None:
            raw[key] = val
    return validate_spec(raw)


def execute(args) -> RunReport:
    if args.command == "selftest":
        seed = 0 if args.seed is None else args.seed
        if seed < 0:
            raise InputError("seed must be nonnegative")
        report = cmd_selftest(seed)
    else:
        spec = _resolve(args)
        report = RUNNERS[args.command](spec)
    report.run_id = run_id_for(report.command, report.spec)
    return report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = execute(args)
        emit(report, args.out, args.format)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except HypothesisViolated as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - start
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} worst={c.worst!r}", file=sys.stderr)
    print(f"{report.status} in {elapsed:.2f}s", file=sys.stderr)
    return 0 if report.status == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
