"""Gauges of circular slice domains and growth bounds for normalized slice mappings.

A gauge ``rho`` is evaluated on one complex slice: a slice point ``x0 + r H``
is identified with ``z = x0 + i r`` in C^n.  The extremal test mappings are
holomorphic lifts of classical one-variable extremal functions applied per
coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np

from .clifford import AdmissibleUnit, CliffordNumber, CliffordVector, random_admissible_in_frame
from .errors import BisectionFailed, HypothesisViolated, InputError, SingularJacobian
from .sampling import random_frame, random_unit, rng_from
from .slices import SliceMapping, SlicePoint, decompose, induce, slice_preservation_check
from .stems import AnalyticLift, DomainBox, HolomorphicLift, StemMapping, StemPoint

CERTIFICATE_SAMPLES = 500
CERTIFICATE_THRESHOLD = 1e-12
SCAN_EPS = 0.02
COVERING_EPS = 1e-3
COVERING_DIRECTIONS = 720
TRUNCATION_DEGREE = 16


# ---------------------------------------------------------------- gauges


class Gauge:
    """Defining function of a bounded starlike circular domain, evaluated on C^n."""

    kind = "abstract"
    n: int | None = None

    def __call__(self, z) -> float:
        raise NotImplementedError

    def half_gradient(self, z: np.ndarray) -> np.ndarray:
        """``w`` with ``d(rho^2)[v] = 2 Re <v, w>``; used by the starlike criterion."""
        z = np.asarray(z, dtype=complex)
        w = np.zeros_like(z)
        h = 1e-6 * (1 + np.abs(z).max())
        for j in range(z.shape[0]):
            for unit, scale in ((1.0, 1.0), (1j, 1j)):
                e = np.zeros_like(z)
                e[j] = unit * h
                w[j] += scale * (self(z + e) ** 2 - self(z - e) ** 2) / (2 * h)
        return w / 2

    def to_dict(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class Ball(Gauge):
    kind = "ball"

    def __call__(self, z) -> float:
        return float(np.linalg.norm(np.asarray(z, dtype=complex)))

    def half_gradient(self, z):
        return np.asarray(z, dtype=complex)


@dataclass(frozen=True)
class WeightedEllipsoid(Gauge):
    """``sqrt(sum |z_i|^2 / a_i^2)``."""

    weights: tuple[float, ...]
    kind = "ellipsoid"

    def __post_init__(self):
        w = tuple(float(a) for a in self.weights)
        if not w or any(not a > 0 for a in w):
            raise InputError("ellipsoid weights must be positive")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return len(self.weights)

    def __call__(self, z) -> float:
        z = np.asarray(z, dtype=complex)
        return float(np.linalg.norm(z / np.asarray(self.weights)))

    def half_gradient(self, z):
        return np.asarray(z, dtype=complex) / np.asarray(self.weights) ** 2

    def to_dict(self):
        return {"kind": self.kind, "weights": list(self.weights)}


@dataclass(frozen=True)
class CustomRadial(Gauge):
    """Minkowski functional of a domain given by a membership oracle on C^n.

    ``rho(z) = inf{t > 0 : z / t in D}``, found by bracketing and bisection.
    The oracle must describe a bounded domain, starlike about 0.
    """

    oracle: Callable[[np.ndarray], bool]
    n: int | None = None
    tol: float = 1e-12
    max_doublings: int = 60
    kind = "custom"

    def __call__(self, z) -> float:
        z = np.asarray(z, dtype=complex)
        if not np.any(z):
            return 0.0
        inside = lambda t: bool(self.oracle(z / t))
        hi = 1.0
        for _ in range(self.max_doublings):
            if inside(hi):
                break
            hi *= 2
        else:
            raise BisectionFailed("no scale brings the point inside the domain")
        lo = hi / 2
        for _ in range(self.max_doublings):
            if not inside(lo):
                break
            hi, lo = lo, lo / 2
        else:
            raise BisectionFailed("the domain looks unbounded along this ray")
        while hi - lo > self.tol * hi:
            mid = 0.5 * (lo + hi)
            if inside(mid):
                hi = mid
            else:
                lo = mid
        for s in (1.25, 2.0, 4.0):
            if not inside(hi * s):
                raise BisectionFailed(f"oracle not starlike: z/({s:g} rho) is outside")
        if inside(lo * 0.5):
            raise BisectionFailed("oracle not starlike: a point beyond the boundary is inside")
        return float(hi)

    def to_dict(self):
        return {"kind": self.kind, "tol": self.tol}


def gauge_eval(g, q: SlicePoint) -> float:
    if isinstance(g, Gauge):
        return g(q.as_complex())
    return float(g(q))


def _slice_complex(v: CliffordVector) -> np.ndarray:
    """A value of the slice cone as ``x0 + i r`` (canonical sign of r)."""
    c = np.asarray(v.coeffs)
    x0, M = c[:, 0], c[:, 1:]
    if not np.any(M):
        return x0.astype(complex)
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    r = M @ Vt[0]
    k = int(np.flatnonzero(np.abs(r) > 1e-12 * np.abs(r).max())[0])
    if r[k] < 0:
        r = -r
    return x0 + 1j * r


def gauge_of_value(g: Gauge, v: CliffordVector) -> float:
    """Gauge of a value that lies in the slice cone."""
    return g(_slice_complex(v))


@dataclass
class GaugeReport:
    passed: bool
    worst: float
    samples: int
    witness: dict | None = None


def homogeneity_check(g, samples: int = 100, tol: float = 1e-12, seed=0, m: int = 3, n: int | None = None) -> GaugeReport:
    """Sampled test of rho(0) = 0, positivity, rho(t q) = |t| rho(q) and H-independence.

    ``g`` may be a Gauge or any callable on SlicePoint.
    """
    rng = rng_from(seed)
    n = n or getattr(g, "n", None) or 1
    frame = random_frame(m, rng)
    H0 = random_admissible_in_frame(frame, rng)
    zero = gauge_eval(g, SlicePoint(np.zeros(n), np.zeros(n), None, m))
    if abs(zero) > tol:
        return GaugeReport(False, abs(zero), 0, {"q": "0", "value": zero})
    worst = 0.0
    for k in range(samples):
        d = random_unit(rng, 2 * n) * rng.uniform(0.05, 2.0)
        z = d[:n] + 1j * d[n:]
        t = complex(*rng.standard_normal(2))
        q = SlicePoint.from_complex(z, H0)
        base = gauge_eval(g, q)
        if not base > 0:
            return GaugeReport(False, abs(base), k + 1, {"z": _cplx(z), "value": base, "check": "positivity"})
        scaled = gauge_eval(g, SlicePoint.from_complex(t * z, H0))
        other = gauge_eval(g, q.with_unit(random_admissible_in_frame(random_frame(m, rng), rng)))
        err_h = abs(scaled - abs(t) * base) / max(1.0, abs(t) * base)
        err_s = abs(other - base) / max(1.0, base)
        worst = max(worst, err_h, err_s)
        if worst > tol:
            check = "homogeneity" if err_h > tol else "slice independence"
            return GaugeReport(False, worst, k + 1, {"z": _cplx(z), "t": [t.real, t.imag], "check": check})
    return GaugeReport(True, worst, samples)


def _cplx(z) -> list:
    return [[float(w.real), float(w.imag)] for w in np.atleast_1d(z)]


# ---------------------------------------------------------------- restrictions


CoordFunc = tuple[Callable, Callable, Callable | None]


@dataclass(eq=False)
class HoloRestriction:
    """A holomorphic map of C^n with real Taylor coefficients.

    Either per-coordinate (``coords``: one ``(h, dh, d2h)`` triple per
    coordinate) or general (``fn``/``jac`` on complex n-vectors).
    """

    n: int
    coords: list[CoordFunc] | None = None
    fn: Callable | None = None
    jac: Callable | None = None
    claims_starlike: bool = False
    claims_convex: bool = False
    k_fold: int = 1
    label: str = "map"
    poly: list[list[float]] | None = None
    tail: Callable[[float], float] | None = None
    radius: float = 1.0

    def __post_init__(self):
        if self.coords is None and self.fn is None:
            raise InputError("a restriction needs coordinate functions or a map")
        if self.coords is not None and len(self.coords) != self.n:
            raise InputError(f"need {self.n} coordinate functions, got {len(self.coords)}")
        if self.k_fold < 1:
            raise InputError("k_fold must be >= 1")

    @classmethod
    def diagonal(cls, funcs: Sequence[CoordFunc], n: int = 1, **flags) -> HoloRestriction:
        funcs = list(funcs)
        if len(funcs) == 1:
            funcs = funcs * n
        return cls(len(funcs), coords=funcs, **flags)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[Sequence[float]], **flags) -> HoloRestriction:
        polys = [np.polynomial.Polynomial(np.asarray(c, dtype=float)) for c in coeffs]
        funcs = [(p, p.deriv(), p.deriv(2)) for p in polys]
        return cls(len(funcs), coords=funcs, poly=[list(map(float, c)) for c in coeffs], **flags)

    def __call__(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if z.shape != (self.n,):
            raise InputError(f"expected a point of C^{self.n}")
        if self.coords is not None:
            return np.array([complex(h(w)) for (h, _, _), w in zip(self.coords, z)])
        return np.asarray(self.fn(z), dtype=complex)

    def jacobian(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if self.coords is not None:
            return np.diag([complex(dh(w)) for (_, dh, _), w in zip(self.coords, z)])
        return np.asarray(self.jac(z), dtype=complex)

    def second_derivative(self, i: int, w: complex) -> complex:
        if self.coords is None:
            raise InputError("second derivatives need a per-coordinate map")
        _, dh, d2h = self.coords[i]
        if d2h is not None:
            return complex(d2h(w))
        s = 1e-5 * (1 + abs(w))
        return (complex(dh(w + s)) - complex(dh(w - s))) / (2 * s)

    def lift(self, m: int, domain: DomainBox | None = None) -> StemMapping:
        """The stem whose slice restriction on every slice is this map."""
        if self.coords is None:
            raise InputError("only per-coordinate maps can be lifted")
        domain = domain or DomainBox.ball(self.radius)
        if self.poly is not None:
            F = HolomorphicLift(m, self.n, self.poly, domain)
        else:
            F = AnalyticLift(m, self.n, [(h, dh) for h, dh, _ in self.coords], domain, label=self.label)
        F.restriction = self
        return F


def identity_map(n: int = 1) -> HoloRestriction:
    return HoloRestriction.from_polynomial([[0.0, 1.0]] * n, claims_starlike=True, claims_convex=True, label="identity")


def _koebe_coeffs(k: int, degree: int) -> list[float]:
    """Taylor coefficients of z (1 - z^k)^(-2/k) up to ``degree``."""
    c = [0.0] * (degree + 1)
    a, j = 1.0, 0
    while k * j + 1 <= degree:
        c[k * j + 1] = a
        a *= (2 / k + j) / (j + 1)
        j += 1
    return c


def koebe_generator(k: int = 1, n: int = 1) -> HoloRestriction:
    """Per coordinate ``z / (1 - z^k)^(2/k)`` on the principal branch.

    ``poly`` holds the degree-16 Taylor truncation; ``tail(r)`` bounds the
    truncation error on ``|z| <= r`` (all coefficients are nonnegative, so
    the bound is the error at ``z = r``).  Evaluation uses the closed form.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    p = 2 / k
    if 2 % k == 0:
        e = 2 // k
        h = lambda z: z / (1 - z**k) ** e
    else:
        h = lambda z: z / (1 - z**k) ** p
    dh = lambda z: (1 + z**k) / (1 - z**k) ** (p + 1)
    d2h = lambda z: k * z ** (k - 1) * ((1 - z**k) + (p + 1) * (1 + z**k)) / (1 - z**k) ** (p + 2)
    trunc = _koebe_coeffs(k, TRUNCATION_DEGREE)
    poly = np.polynomial.Polynomial(trunc)

    def tail(r: float) -> float:
        return float(h(r) - poly(r))

    out = HoloRestriction.diagonal([(h, dh, d2h)], n, claims_starlike=True, k_fold=k, label=f"koebe{k}", tail=tail)
    out.truncation = [trunc] * out.n
    return out


def halfplane_generator(n: int = 1) -> HoloRestriction:
    """Per coordinate ``z / (1 - z)``, extremal for convex maps of the disc."""
    funcs = (lambda z: z / (1 - z), lambda z: 1 / (1 - z) ** 2, lambda z: 2 / (1 - z) ** 3)
    return HoloRestriction.diagonal([funcs], n, claims_starlike=True, claims_convex=True, label="halfplane")


def scaled_generator(base: HoloRestriction, weights: Sequence[float]) -> HoloRestriction:
    """``a_i h_i(z_i / a_i)``: transports a map of the unit ball to the ellipsoid with semi-axes a."""
    if base.coords is None or len(weights) != base.n:
        raise InputError("scaling needs a per-coordinate map with one weight per coordinate")
    funcs = []
    for (h, dh, d2h), a in zip(base.coords, weights):
        a = float(a)
        funcs.append(
            (
                lambda z, h=h, a=a: a * h(z / a),
                lambda z, dh=dh, a=a: dh(z / a),
                None if d2h is None else (lambda z, d2h=d2h, a=a: d2h(z / a) / a),
            )
        )
    return HoloRestriction(
        base.n,
        coords=funcs,
        claims_starlike=base.claims_starlike,
        claims_convex=base.claims_convex,
        k_fold=base.k_fold,
        label=f"scaled-{base.label}",
        radius=base.radius * max(float(a) for a in weights),
    )


def slice_complex_value(f, z, Iprime: CliffordNumber) -> np.ndarray:
    """``f(x0 + r I')`` for ``z = x0 + i r``, read back as a point of C^n."""
    F = _stem(f)
    v = induce(F, SlicePoint.from_complex(z, Iprime)).coeffs
    return v[:, 0] + 1j * (v @ Iprime.coeffs)


def restriction_of(f, Iprime: CliffordNumber, step: float = 1e-6) -> HoloRestriction:
    """The restriction of a slice mapping to the slice of ``I'``.

    Lifts built by :meth:`HoloRestriction.lift` return their source map;
    anything else is evaluated through :func:`induce` with a central
    difference Jacobian (real direction, valid for holomorphic restrictions).
    """
    F = _stem(f)
    known = getattr(F, "restriction", None)
    if known is not None:
        return known
    Iprime = AdmissibleUnit.of(Iprime)
    fn = lambda z: slice_complex_value(F, z, Iprime)

    def jac(z):
        z = np.asarray(z, dtype=complex)
        J = np.zeros((F.n, F.n), dtype=complex)
        for j in range(F.n):
            e = np.zeros(F.n)
            e[j] = step
            J[:, j] = (fn(z + e) - fn(z - e)) / (2 * step)
        return J

    return HoloRestriction(F.n, fn=fn, jac=jac, label="numeric")


def _stem(f) -> StemMapping:
    return f.stem if isinstance(f, SliceMapping) else f


# ---------------------------------------------------------------- criteria


def starlike_criterion(h: HoloRestriction, z, gauge: Gauge | None = None) -> float:
    """``Re <[Dh(z)]^{-1} h(z), w>`` with ``w = z`` for the unit ball.

    For another gauge ``w`` is half the complex gradient of ``rho^2``.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    J = h.jacobian(z)
    if not np.all(np.isfinite(J)) or np.linalg.cond(J) > 1e12:
        raise SingularJacobian(f"Dh is singular at z={_cplx(z)}")
    v = np.linalg.solve(J, h(z))
    w = z if gauge is None else gauge.half_gradient(z)
    return float(np.real(np.vdot(w, v)))


def starlike_ratio(h: HoloRestriction, z: complex, i: int = 0) -> float:
    """One-variable form ``Re(z h'(z) / h(z))`` for coordinate ``i``."""
    if h.coords is None:
        raise InputError("the ratio form needs a per-coordinate map")
    fn, dh, _ = h.coords[i]
    return float(np.real(z * complex(dh(z)) / complex(fn(z))))


def convex_criterion(h: HoloRestriction, w: complex, i: int = 0) -> float:
    """``Re(1 + w h''(w) / h'(w))`` for coordinate ``i``."""
    if h.coords is None:
        raise InputError("the convexity criterion needs a per-coordinate map")
    _, dh, _ = h.coords[i]
    return float(np.real(1 + w * h.second_derivative(i, w) / complex(dh(w))))


def kfold_check(h: HoloRestriction, k: int, samples: int = 200, tol: float = 1e-12, seed=0) -> bool:
    """``e^{-2 pi i/k} h(e^{2 pi i/k} z) = h(z)`` at sampled points of the ball of radius 0.9."""
    if k < 1:
        raise InputError("k must be >= 1")
    if k == 1:
        return True
    rng = rng_from(seed)
    w = np.exp(2j * np.pi / k)
    for _ in range(samples):
        d = random_unit(rng, 2 * h.n) * 0.9 * rng.random()
        z = d[: h.n] + 1j * d[h.n :]
        a, b = h(z), h(w * z) / w
        if np.abs(a - b).max() > tol * max(1.0, float(np.abs(a).max())):
            return False
    return True


# ---------------------------------------------------------------- growth rows


@dataclass
class GrowthRow:
    frame_id: int
    direction_id: int
    radius: float
    point: str
    rho: float
    abs_f: float
    lower: float
    upper: float
    passed: bool

    @property
    def margin_lo(self) -> float:
        return self.abs_f - self.lower

    @property
    def margin_hi(self) -> float:
        return self.upper - self.abs_f

    def to_dict(self) -> dict:
        return {
            "frame_id": self.frame_id,
            "direction_id": self.direction_id,
            "radius": self.radius,
            "point": self.point,
            "rho": self.rho,
            "abs_f": self.abs_f,
            "lower": self.lower,
            "upper": self.upper,
            "margin_lo": self.margin_lo,
            "margin_hi": self.margin_hi,
            "pass": self.passed,
        }


@dataclass
class GrowthReport:
    theorem: str
    rows: list[GrowthRow]
    certified: bool = True
    covering_ok: bool | None = None
    covering_min: float | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows) and self.covering_ok is not False

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "passed": self.passed,
            "certified": self.certified,
            "covering_ok": self.covering_ok,
            "covering_min": self.covering_min,
            "notes": list(self.notes),
            "rows": [r.to_dict() for r in self.rows],
        }


def starlike_bounds(rho: float) -> tuple[float, float]:
    return rho / (1 + rho) ** 2, rho / (1 - rho) ** 2


def convex_bounds(rho: float) -> tuple[float, float]:
    return rho / (1 + rho), rho / (1 - rho)


def kfold_bounds(rho: float, k: int) -> tuple[float, float]:
    if k == 1:
        return starlike_bounds(rho)
    return rho / (1 + rho**k) ** (2 / k), rho / (1 - rho**k) ** (2 / k)


Measure = Literal["euclidean", "gauge"]


def _streams(seed, frame_seed):
    ss = np.random.SeedSequence(seed if not isinstance(seed, np.random.Generator) else seed.integers(2**63))
    pts, frames, certs = (np.random.default_rng(s) for s in ss.spawn(3))
    if frame_seed is not None:
        frames = rng_from(frame_seed)
    return pts, frames, certs


def _directions(n: int, count: int, rng) -> list[np.ndarray]:
    """Complex unit directions; index 0 is the positive real axis of the first coordinate."""
    if n == 1:
        return [np.array([np.exp(2j * np.pi * j / count)]) for j in range(count)]
    out = [np.eye(n, dtype=complex)[0]]
    for _ in range(count - 1):
        d = random_unit(rng, 2 * n)
        out.append(d[:n] + 1j * d[n:])
    return out


def _point_on_frame(z: np.ndarray, frame, H_rng) -> SlicePoint:
    """Embed ``z`` through a stem point and a random direction of the frame's sphere."""
    u = random_unit(H_rng, 3)
    x = StemPoint(z.real, z.imag * u[0], z.imag * u[1], z.imag * u[2])
    return decompose(x, frame)


def _check_hypotheses(F: StemMapping, Iprime, h: HoloRestriction, tol: float, rng) -> None:
    if not slice_preservation_check(F, Iprime, samples=50, tol=max(tol, 1e-9), seed=rng.integers(2**32)):
        raise HypothesisViolated("slice_preserving", {"Iprime": Iprime.coeffs.tolist()})
    zero = np.zeros(F.n, dtype=complex)
    ntol = 1e-9 if h.coords is not None else 1e-6
    at0 = h(zero)
    D0 = h.jacobian(zero)
    if np.abs(at0).max() > ntol or np.abs(D0 - np.eye(F.n)).max() > ntol:
        raise HypothesisViolated("normalized", {"f(0)": _cplx(at0), "Df(0)": [_cplx(row) for row in D0]})


def _disc_samples(g: Gauge, n: int, count: int, rng) -> list[np.ndarray]:
    out = []
    for _ in range(count):
        d = random_unit(rng, 2 * n)
        z = d[:n] + 1j * d[n:]
        out.append(z * (rng.random() * (1 - 1e-3) / g(z)))
    return out


def _certify_starlike(h: HoloRestriction, g: Gauge, rng, notes: list[str]) -> bool:
    worst = np.inf
    for z in _disc_samples(g, h.n, CERTIFICATE_SAMPLES, rng):
        if not np.any(z):
            continue
        try:
            val = starlike_criterion(h, z, None if isinstance(g, Ball) else g)
        except SingularJacobian:
            notes.append("starlike hypothesis not certified: singular Jacobian at a sample")
            return False
        worst = min(worst, val / float(np.vdot(z, z).real))
    if worst <= CERTIFICATE_THRESHOLD:
        notes.append(f"starlike hypothesis not certified: criterion/|z|^2 reached {worst:.3g}")
        return False
    return True


def _certify_convex(h: HoloRestriction, g: Gauge, rng, notes: list[str]) -> bool:
    if h.coords is None:
        notes.append("convex hypothesis not certified: map is not per-coordinate")
        return False
    radii = np.asarray(g.weights) if isinstance(g, WeightedEllipsoid) else np.ones(h.n)
    worst = np.inf
    for _ in range(CERTIFICATE_SAMPLES):
        i = int(rng.integers(h.n))
        w = radii[i] * (1 - 1e-3) * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        worst = min(worst, convex_criterion(h, w, i))
    if worst <= CERTIFICATE_THRESHOLD:
        notes.append(f"convex hypothesis not certified: criterion reached {worst:.3g}")
        return False
    return True


def _measure(g: Gauge, measure: Measure, value: CliffordVector) -> float:
    if measure == "euclidean":
        return value.norm()
    if measure == "gauge":
        return gauge_of_value(g, value)
    raise InputError(f"unknown measure {measure!r}")


def _rows(F, g, bounds, points, tol, measure) -> list[GrowthRow]:
    rows = []
    for frame_id, direction_id, radius, q in points:
        rho = gauge_eval(g, q)
        abs_f = _measure(g, measure, induce(F, q))
        lo, hi = bounds(rho)
        desc = f"x0={_fmt(q.x0)} r={_fmt(q.r)}"
        rows.append(GrowthRow(frame_id, direction_id, radius, desc, rho, abs_f, lo, hi, lo - tol <= abs_f <= hi + tol))
    rows.sort(key=lambda r: (r.radius, r.direction_id, r.frame_id))
    return rows


def _fmt(a) -> str:
    return "[" + ",".join(f"{v:.6g}" for v in np.atleast_1d(a)) + "]"


def _sample_points(F, g, samples, grid, eps, pts_rng, frame_rng):
    """Either ``samples`` random points or a ``(radii, directions, frames)`` grid, all with rho < 1."""
    out = []
    if grid is None:
        for s in range(samples):
            frame = random_frame(F.m, frame_rng)
            d = random_unit(pts_rng, 2 * F.n)
            z = d[: F.n] + 1j * d[F.n :]
            t = pts_rng.random() * (1 - eps)
            out.append((s, 0, float(t), _point_on_frame(z * (t / g(z)), frame, frame_rng)))
        return out
    radii, directions, frames = grid
    dirs = _directions(F.n, directions, pts_rng)
    for fid in range(frames):
        frame = random_frame(F.m, frame_rng)
        for di, d in enumerate(dirs):
            d = d / g(d)
            for j in range(1, radii + 1):
                t = j / radii * (1 - eps)
                out.append((fid, di, t, _point_on_frame(d * t, frame, frame_rng)))
    return out


def _growth(theorem, f, Iprime, g, bounds, samples, tol, seed, eps, measure, grid, frame_seed, certify, extra=None):
    F = _stem(f)
    Iprime = AdmissibleUnit.of(Iprime)
    pts_rng, frame_rng, cert_rng = _streams(seed, frame_seed)
    h = restriction_of(F, Iprime)
    _check_hypotheses(F, Iprime, h, tol, cert_rng)
    if extra is not None:
        extra(h, cert_rng)
    notes: list[str] = []
    certified = certify(h, cert_rng, notes)
    points = _sample_points(F, g, samples, grid, eps, pts_rng, frame_rng)
    rows = _rows(F, g, bounds, points, tol, measure)
    return GrowthReport(theorem, rows, certified, notes=notes), h, frame_rng


def growth_bounds_starlike(
    f,
    Iprime: CliffordNumber,
    g: Gauge | None = None,
    samples: int = 200,
    tol: float = 1e-9,
    seed=0,
    eps: float = SCAN_EPS,
    measure: Measure = "euclidean",
    grid: tuple[int, int, int] | None = None,
    frame_seed=None,
) -> GrowthReport:
    """Rows ``rho/(1+rho)^2 <= |f(q)| <= rho/(1-rho)^2`` over sampled q with rho(q) < 1.

    Raises HypothesisViolated when f is not slice preserving on ``I'`` or
    not normalized at 0.  A failed starlike certificate only clears
    ``certified``.
    """
    g = g or Ball()
    certify = lambda h, rng, notes: _certify_starlike(h, g, rng, notes)
    report, _, _ = _growth("starlike", f, Iprime, g, starlike_bounds, samples, tol, seed, eps, measure, grid, frame_seed, certify)
    return report


def growth_bounds_convex(
    f,
    Iprime: CliffordNumber,
    g: Gauge | None = None,
    samples: int = 200,
    tol: float = 1e-9,
    seed=0,
    eps: float = SCAN_EPS,
    measure: Measure = "euclidean",
    grid: tuple[int, int, int] | None = None,
    frame_seed=None,
) -> GrowthReport:
    """Rows ``rho/(1+rho) <= |f(q)| <= rho/(1-rho)``; the gauge must be a ball or an ellipsoid."""
    g = g or Ball()
    if not isinstance(g, (Ball, WeightedEllipsoid)):
        raise InputError("convex bounds need a Ball or WeightedEllipsoid gauge")
    certify = lambda h, rng, notes: _certify_convex(h, g, rng, notes)
    report, _, _ = _growth("convex", f, Iprime, g, convex_bounds, samples, tol, seed, eps, measure, grid, frame_seed, certify)
    return report


def growth_bounds_kfold(
    f,
    Iprime: CliffordNumber,
    k: int,
    samples: int = 200,
    tol: float = 1e-9,
    seed=0,
    eps: float = SCAN_EPS,
    grid: tuple[int, int, int] | None = None,
    frame_seed=None,
    covering_eps: float = COVERING_EPS,
    covering_tol: float = 2e-3,
    covering_directions: int | None = None,
) -> GrowthReport:
    """Rows ``|q|/(1+|q|^k)^{2/k} <= |f(q)| <= |q|/(1-|q|^k)^{2/k}`` on the unit ball.

    ``covering_ok``: the minimum of ``|f|`` over boundary samples at radius
    ``1 - covering_eps`` is at least ``2^{-2/k} - covering_tol``.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    g = Ball()

    def symmetric(h, rng):
        if not kfold_check(h, k, seed=rng.integers(2**32)):
            raise HypothesisViolated("k_fold", {"k": k})

    certify = lambda h, rng, notes: _certify_starlike(h, g, rng, notes)
    bounds = lambda rho: kfold_bounds(rho, k)
    report, _, frame_rng = _growth("kfold", f, Iprime, g, bounds, samples, tol, seed, eps, "euclidean", grid, frame_seed, certify, symmetric)
    F = _stem(f)
    m_min = covering_minimum(F, covering_eps, covering_directions, seed=frame_rng)
    report.covering_min = m_min
    report.covering_ok = m_min >= 2 ** (-2 / k) - covering_tol
    return report


def covering_minimum(f, eps: float = COVERING_EPS, directions: int | None = None, seed=0) -> float:
    """Minimum of ``|f(q)|`` over boundary samples ``|q| = 1 - eps`` of the unit ball.

    For n = 1 the directions are equally spaced angles; for n > 1 there
    are ``directions * 4n`` random directions plus the coordinate axes.
    """
    F = _stem(f)
    rng = rng_from(seed)
    count = directions or COVERING_DIRECTIONS
    if F.n == 1:
        dirs = _directions(1, count, rng)
    else:
        dirs = [np.exp(2j * np.pi * j / count) * e for e in np.eye(F.n, dtype=complex) for j in range(count)]
        dirs += _directions(F.n, count * 4 * F.n, rng)[1:]
    best = np.inf
    for d in dirs:
        frame = random_frame(F.m, rng)
        q = _point_on_frame(d / np.linalg.norm(d) * (1 - eps), frame, rng)
        best = min(best, induce(F, q).norm())
    return float(best)


def scan_ray(
    f,
    Iprime: CliffordNumber,
    g: Gauge | None,
    direction,
    steps: int,
    theorem: str = "starlike",
    k: int = 1,
    eps: float = SCAN_EPS,
    tol: float = 1e-9,
    measure: Measure = "euclidean",
) -> list[GrowthRow]:
    """Rows at radii ``j/steps * (1 - eps)``, ``j = 1..steps``, along ``direction`` on the ``I'`` slice."""
    F = _stem(f)
    g = g or Ball()
    Iprime = AdmissibleUnit.of(Iprime)
    d = np.atleast_1d(np.asarray(direction, dtype=complex))
    if d.shape != (F.n,) or not np.any(d):
        raise InputError("direction must be a nonzero point of C^n")
    if steps < 1:
        raise InputError("steps must be >= 1")
    bounds = {
        "starlike": starlike_bounds,
        "convex": convex_bounds,
        "kfold": lambda rho: kfold_bounds(rho, k),
    }.get(theorem)
    if bounds is None:
        raise InputError(f"unknown theorem {theorem!r}")
    d = d / g(d)
    points = [(0, 0, j / steps * (1 - eps), SlicePoint.from_complex(d * (j / steps * (1 - eps)), Iprime)) for j in range(1, steps + 1)]
    return _rows(F, g, bounds, points, tol, measure)
