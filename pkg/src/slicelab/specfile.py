"""JSON run descriptions: parsing, validation, default filling and stem construction."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .clifford import MAX_GENERATORS, CliffordNumber
from .dirac import fueter_transform
from .errors import InputError, ParseError, ValidationError
from .growth import Ball, WeightedEllipsoid, halfplane_generator, koebe_generator
from .stems import (
    CauchyFueterKernel,
    DomainBox,
    HolomorphicLift,
    LinearCombination,
    PolynomialStem,
    StemMapping,
    constant_stem,
    identity_stem,
    planted_stem,
    square_lift,
    swap_stem,
    symmetrize,
)

STEM_KINDS = (
    "polynomial",
    "lift",
    "fueter",
    "kernel",
    "koebe",
    "halfplane",
    "identity",
    "square",
    "constant",
    "swap",
    "planted",
    "symmetrized",
    "combination",
)
COMMAND_CHECKS = {
    "verify-stem": ("equivariance", "axis_vanishing"),
    "verify-regular": ("regular", "equivalence"),
    "induce": ("frame_consistency",),
    "represent": ("transfer",),
    "growth-scan": ("bounds", "equality", "covering"),
}

RUN_DEFAULTS = {
    "seed": 0,
    "tol": None,
    "samples": 100,
    "interpretation": "diagonal",
    "engine": "auto",
    "frames": 3,
    "checks": None,
}
GROWTH_DEFAULTS = {
    "theorem": None,
    "gauge": {"kind": "ball"},
    "Iprime": "e1",
    "radii": 10,
    "directions": 8,
    "frames": 2,
    "eps": 0.02,
    "measure": "euclidean",
}


@dataclass
class SpecFile:
    """A validated run description; ``resolved`` is the full dict with defaults."""

    m: int
    n: int
    stem: dict
    seed: int
    tol: float | None
    samples: int
    interpretation: str
    engine: str
    frames: int
    checks: list[str] | None
    growth: dict
    points: list | None = None
    resolved: dict = field(default_factory=dict)


def _int(d: dict, key: str, lo: int | None = None, hi: int | None = None, cap_msg: str | None = None) -> int:
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v:
        raise ValidationError(key, "must be an integer")
    v = int(v)
    if lo is not None and v < lo:
        raise ValidationError(key, f"must be >= {lo}")
    if hi is not None and v > hi:
        raise ValidationError(key, cap_msg or f"must be <= {hi}")
    return v


def _positive(d: dict, key: str) -> float | None:
    v = d.get(key)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
        raise ValidationError(key, "must be a positive number")
    return float(v)


def parse_spec_text(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", 1, 1)
    return data


def load_spec(path) -> SpecFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read spec {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise ParseError("spec is not valid UTF-8") from None
    return validate_spec(parse_spec_text(text))


def validate_spec(raw: dict) -> SpecFile:
    """Flatten the optional ``algebra``/``stem`` groups, check fields and fill defaults."""
    data = copy.deepcopy(raw)
    for group in ("algebra", "stem"):
        sub = data.pop(group, None)
        if sub is not None:
            if not isinstance(sub, dict):
                raise ValidationError(group, "must be an object")
            data.update(sub)
    if "m" not in data:
        raise ValidationError("m", "required")
    m = _int(data, "m", 1, MAX_GENERATORS, f"exceeds cap {MAX_GENERATORS}")
    data.setdefault("n", 1)
    n = _int(data, "n", 1)
    for key, val in RUN_DEFAULTS.items():
        data.setdefault(key, val)
    seed = _int(data, "seed", 0, 2**64 - 1)
    tol = _positive(data, "tol")
    samples = _int(data, "samples", 1)
    frames = _int(data, "frames", 1)
    if data["interpretation"] not in ("diagonal", "jacobian"):
        raise ValidationError("interpretation", "must be 'diagonal' or 'jacobian'")
    if data["engine"] not in ("auto", "symbolic", "fd"):
        raise ValidationError("engine", "must be 'auto', 'symbolic' or 'fd'")
    checks = data["checks"]
    if checks is not None:
        known = {c for cs in COMMAND_CHECKS.values() for c in cs}
        if not isinstance(checks, list) or any(c not in known for c in checks):
            raise ValidationError("checks", f"entries must be among {sorted(known)}")
    stem = _validate_stem(data, m, n, "")
    growth = dict(GROWTH_DEFAULTS)
    g_in = data.get("growth", {})
    if not isinstance(g_in, dict):
        raise ValidationError("growth", "must be an object")
    unknown = set(g_in) - set(GROWTH_DEFAULTS) - {"k"}
    if unknown:
        raise ValidationError("growth", f"unknown keys {sorted(unknown)}")
    growth.update(g_in)
    _validate_growth(growth, stem, n)
    points = data.get("points")
    if points is not None:
        arr = np.asarray(points, dtype=float) if _is_numeric(points) else None
        if arr is None or arr.ndim != 3 or arr.shape[1:] != (4, n):
            raise ValidationError("points", f"must be a list of 4 x {n} arrays")
    resolved = {
        "m": m,
        "n": n,
        "stem": stem,
        "seed": seed,
        "tol": tol,
        "samples": samples,
        "interpretation": data["interpretation"],
        "engine": data["engine"],
        "frames": frames,
        "checks": checks,
        "growth": growth,
        "points": points,
    }
    return SpecFile(m, n, stem, seed, tol, samples, data["interpretation"], data["engine"], frames, checks, growth, points, resolved)


def _is_numeric(x) -> bool:
    try:
        np.asarray(x, dtype=float)
        return True
    except (TypeError, ValueError):
        return False


def _validate_stem(data: dict, m: int, n: int, prefix: str) -> dict:
    kind = data.get("kind")
    if kind is None:
        raise ValidationError(prefix + "kind", "required")
    if kind not in STEM_KINDS:
        raise ValidationError(prefix + "kind", f"unknown kind {kind!r}")
    out = {"kind": kind, "domain": data.get("domain")}
    if out["domain"] is not None:
        _domain(out["domain"])
    if kind in ("lift", "fueter"):
        h = data.get("h")
        if h is None:
            raise ValidationError(prefix + "h", "required")
        ok = isinstance(h, list) and h and all(isinstance(p, list) for p in h)
        if not ok or any(isinstance(c, bool) or not isinstance(c, (int, float)) for p in h for c in p):
            raise ValidationError(prefix + "h", "must be lists of real coefficients, one per coordinate")
        out["h"] = h
    elif kind == "polynomial":
        terms = data.get("terms")
        if not isinstance(terms, list):
            raise ValidationError(prefix + "terms", "required list of [component, coordinate, coefficient, degree]")
        out["terms"] = [_term(t, m, n, prefix) for t in terms]
    elif kind == "koebe":
        data.setdefault("k", 1)
        out["k"] = _int(data, "k", 1)
    elif kind == "constant":
        if "value" not in data:
            raise ValidationError(prefix + "value", "required")
        _clifford(data["value"], m, prefix + "value")
        out["value"] = data["value"]
    elif kind == "symmetrized":
        raw = data.get("raw")
        if not isinstance(raw, dict):
            raise ValidationError(prefix + "raw", "required stem object")
        out["raw"] = _validate_stem(raw, m, n, prefix + "raw.")
        data.setdefault("quadrature", 64)
        out["quadrature"] = _int(data, "quadrature", 8)
    elif kind == "combination":
        terms = data.get("terms")
        if not isinstance(terms, list) or not terms:
            raise ValidationError(prefix + "terms", "required list of [weight, stem]")
        out["terms"] = []
        for j, t in enumerate(terms):
            if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], (int, float)) and isinstance(t[1], dict)):
                raise ValidationError(f"{prefix}terms[{j}]", "must be [weight, stem]")
            out["terms"].append([float(t[0]), _validate_stem(t[1], m, n, f"{prefix}terms[{j}].")])
    return out


def _term(t, m, n, prefix):
    if isinstance(t, dict):
        t = [t.get("component"), t.get("coordinate"), t.get("coefficient"), t.get("degree")]
    if not (isinstance(t, list) and len(t) == 4):
        raise ValidationError(prefix + "terms", "each term is [component, coordinate, coefficient, degree]")
    a, i, c, deg = t
    if a not in (0, 1, 2, 3) or not isinstance(i, int) or not 0 <= i < n:
        raise ValidationError(prefix + "terms", f"bad component/coordinate in {t}")
    _clifford(c, m, prefix + "terms")
    if not (isinstance(deg, list) and len(deg) == 4 * n and all(isinstance(e, int) and e >= 0 for e in deg)):
        raise ValidationError(prefix + "terms", f"degree must list {4 * n} nonnegative integers")
    return [a, i, c, deg]


def _clifford(c, m: int, fld: str) -> CliffordNumber:
    """A number, a blade name such as ``"e12"``, a blade->coefficient object, or a full coefficient list."""
    try:
        if isinstance(c, (int, float)) and not isinstance(c, bool):
            return CliffordNumber.scalar(m, float(c))
        if isinstance(c, str):
            return CliffordNumber.parse(m, c)
        if isinstance(c, dict):
            out = CliffordNumber.zero(m)
            for name, v in c.items():
                out = out + CliffordNumber.parse(m, name) * float(v)
            return out
        if isinstance(c, list) and len(c) == 1 << m:
            return CliffordNumber(m, np.asarray(c, dtype=float))
    except (InputError, TypeError, ValueError) as exc:
        raise ValidationError(fld, str(exc)) from None
    raise ValidationError(fld, "not a Clifford number")


def _domain(d) -> DomainBox:
    if not isinstance(d, dict):
        raise ValidationError("domain", "must be an object")
    try:
        return DomainBox(
            d.get("kind", "all"),
            float(d.get("radius", 1.0)),
            tuple(d.get("x0_range", (-1.0, 1.0))),
            tuple(d.get("radial", (0.0, 1.0))),
        )
    except InputError as exc:
        raise ValidationError("domain", str(exc)) from None


def _validate_growth(g: dict, stem: dict, n: int) -> None:
    if g["theorem"] is None:
        kind = stem["kind"]
        g["theorem"] = "convex" if kind == "halfplane" else "kfold" if kind == "koebe" and stem["k"] > 1 else "starlike"
    if g["theorem"] not in ("starlike", "convex", "kfold"):
        raise ValidationError("growth.theorem", "must be starlike, convex or kfold")
    if g["theorem"] == "kfold":
        g.setdefault("k", stem.get("k", 1))
        if not isinstance(g["k"], int) or g["k"] < 1:
            raise ValidationError("growth.k", "must be an integer >= 1")
    gauge = g["gauge"]
    if not isinstance(gauge, dict) or gauge.get("kind") not in ("ball", "ellipsoid"):
        raise ValidationError("growth.gauge", "kind must be 'ball' or 'ellipsoid'")
    if gauge["kind"] == "ellipsoid":
        w = gauge.get("weights")
        if not isinstance(w, list) or len(w) != n:
            raise ValidationError("growth.gauge.weights", f"need {n} positive weights")
        try:
            WeightedEllipsoid(tuple(w))
        except (InputError, TypeError) as exc:
            raise ValidationError("growth.gauge.weights", str(exc)) from None
        if g["theorem"] == "kfold":
            raise ValidationError("growth.gauge", "k-fold bounds use the unit ball")
    for key in ("radii", "directions", "frames"):
        if not isinstance(g[key], int) or g[key] < 1:
            raise ValidationError(f"growth.{key}", "must be an integer >= 1")
    if not isinstance(g["eps"], (int, float)) or not 0 < g["eps"] < 1:
        raise ValidationError("growth.eps", "must lie in (0, 1)")
    if g["measure"] not in ("euclidean", "gauge"):
        raise ValidationError("growth.measure", "must be 'euclidean' or 'gauge'")


def build_gauge(g: dict):
    gauge = g["gauge"]
    if gauge["kind"] == "ball":
        return Ball()
    return WeightedEllipsoid(tuple(gauge["weights"]))


def build_stem(stem: dict, m: int, n: int, seed: int = 0) -> StemMapping:
    kind = stem["kind"]
    dom = _domain(stem["domain"]) if stem.get("domain") is not None else None
    kw = {} if dom is None else {"domain": dom}
    if kind == "polynomial":
        terms = [(a, i, _clifford(c, m, "terms"), deg) for a, i, c, deg in stem["terms"]]
        return PolynomialStem.from_terms(m, n, terms, **kw)
    if kind == "lift":
        return HolomorphicLift(m, n, stem["h"], **kw)
    if kind == "fueter":
        return fueter_transform(stem["h"], m, n, dom)
    if kind == "kernel":
        return CauchyFueterKernel(m, n, dom)
    if kind == "koebe":
        return koebe_generator(stem["k"], n).lift(m, dom)
    if kind == "halfplane":
        return halfplane_generator(n).lift(m, dom)
    if kind == "identity":
        return identity_stem(m, n, **kw)
    if kind == "square":
        return square_lift(m, n, **kw)
    if kind == "constant":
        return constant_stem(m, n, _clifford(stem["value"], m, "value"), **kw)
    if kind == "swap":
        return swap_stem(m, n)
    if kind == "planted":
        return planted_stem(m, n)
    if kind == "symmetrized":
        return symmetrize(build_stem(stem["raw"], m, n, seed), stem["quadrature"], seed=seed)
    if kind == "combination":
        return LinearCombination([(w, build_stem(s, m, n, seed)) for w, s in stem["terms"]])
    raise ValidationError("kind", f"unknown kind {kind!r}")

