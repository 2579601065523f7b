"""Points of R^{4n}, the embedded O(3) action, and evaluatable stem mappings.

A stem mapping sends ``x = (x0, x1, x2, x3)`` (four real n-vectors) to four
Clifford n-vectors ``(F0, F1, F2, F3)``.  It is a stem in the equivariant
sense when ``F(g x) = g F(x)`` for every ``g`` that fixes ``x0`` and rotates
each coordinate triple ``(x1_i, x2_i, x3_i)`` by one common ``Q`` in O(3).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .clifford import CliffordNumber, CliffordVector, _check_m, left_multiply
from .errors import InputError, NonIntrinsic, OutOfDomain, SignatureMismatch
from .sampling import pmap, random_orthogonal, random_unit, rng_from

ORTHO_TOL = 1e-12


class StemPoint:
    """``(x0, x1, x2, x3)``, stored as a read-only (4, n) array."""

    __slots__ = ("data",)

    def __init__(self, x0, x1, x2, x3):
        rows = [np.atleast_1d(np.asarray(v, dtype=float)).reshape(-1) for v in (x0, x1, x2, x3)]
        if len({r.shape[0] for r in rows}) != 1 or rows[0].shape[0] < 1:
            raise InputError("x0..x3 must share one length n >= 1")
        data = np.stack(rows)
        data.flags.writeable = False
        self.data = data

    @classmethod
    def from_array(cls, data) -> StemPoint:
        data = np.asarray(data, dtype=float)
        if data.ndim == 1:
            data = data.reshape(4, -1)
        return cls(*data)

    @property
    def n(self) -> int:
        return self.data.shape[1]

    x0 = property(lambda self: self.data[0])
    x1 = property(lambda self: self.data[1])
    x2 = property(lambda self: self.data[2])
    x3 = property(lambda self: self.data[3])

    @property
    def flat(self) -> np.ndarray:
        """Variables ordered ``x0_1..x0_n, x1_1..x1_n, ...``."""
        return self.data.reshape(-1)

    def triple_norms(self) -> np.ndarray:
        return np.linalg.norm(self.data[1:], axis=0)

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def shifted(self, var: int, step: float) -> StemPoint:
        flat = self.flat.copy()
        flat[var] += step
        return StemPoint.from_array(flat.reshape(4, -1))

    def __repr__(self):
        return f"StemPoint({self.data.tolist()})"


@dataclass(frozen=True, eq=False)
class GroupElement:
    """``diag(id, Q)`` acting on stem points and stem values."""

    q: np.ndarray

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        if q.shape != (3, 3) or np.abs(q.T @ q - np.eye(3)).max() > ORTHO_TOL:
            raise InputError("rotation block must be a 3x3 orthogonal matrix")
        q.flags.writeable = False
        object.__setattr__(self, "q", q)

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.q @ other.q)

    @property
    def inverse(self) -> GroupElement:
        return GroupElement(self.q.T)

    @classmethod
    def identity(cls) -> GroupElement:
        return cls(np.eye(3))


def embed(q) -> GroupElement:
    return GroupElement(q)


@dataclass(frozen=True, eq=False)
class StemValue:
    """``(F0, F1, F2, F3)`` stored as a (4, n, 2**m) array."""

    m: int
    data: np.ndarray

    def __post_init__(self):
        m = _check_m(self.m)
        d = np.array(self.data, dtype=float)
        if d.ndim != 3 or d.shape[0] != 4 or d.shape[2] != 1 << m:
            raise SignatureMismatch(f"stem value must have shape (4, n, {1 << m}), got {d.shape}")
        d.flags.writeable = False
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "data", d)

    @classmethod
    def from_components(cls, comps: Sequence[CliffordVector]) -> StemValue:
        return cls(comps[0].m, np.stack([c.coeffs for c in comps]))

    @property
    def n(self) -> int:
        return self.data.shape[1]

    def component(self, a: int) -> CliffordVector:
        return CliffordVector(self.m, self.data[a])

    f0 = property(lambda self: self.component(0))
    f1 = property(lambda self: self.component(1))
    f2 = property(lambda self: self.component(2))
    f3 = property(lambda self: self.component(3))

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def __sub__(self, other: StemValue) -> StemValue:
        return StemValue(self.m, self.data - other.data)

    def __add__(self, other: StemValue) -> StemValue:
        return StemValue(self.m, self.data + other.data)

    def __mul__(self, c: float) -> StemValue:
        return StemValue(self.m, self.data * float(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, StemValue):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.data, other.data)

    __hash__ = None

    def allclose(self, other: StemValue, atol: float = 1e-9) -> bool:
        return self.data.shape == other.data.shape and bool(np.all(np.abs(self.data - other.data) <= atol))


def act(g: GroupElement, x: StemPoint) -> StemPoint:
    data = np.array(x.data)
    data[1:] = g.q @ x.data[1:]
    return StemPoint.from_array(data)


def act_value(g: GroupElement, v: StemValue) -> StemValue:
    data = np.array(v.data)
    data[1:] = np.einsum("ab,bnd->and", g.q, v.data[1:])
    return StemValue(v.m, data)


# ---------------------------------------------------------------- domains


@dataclass(frozen=True)
class DomainBox:
    """O(3)-invariant domain: membership depends on x0 and triple norms only.

    kinds: ``all``; ``ball`` (|x| < radius in R^{4n}); ``annulus``
    (x0 in a box, each triple norm in a closed interval); ``punctured``
    (each coordinate's R^4 norm >= radius, used by the Cauchy kernel).
    """

    kind: str = "all"
    radius: float = 1.0
    x0_range: tuple[float, float] = (-1.0, 1.0)
    radial: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if self.kind not in ("all", "ball", "annulus", "punctured"):
            raise InputError(f"unknown domain kind {self.kind!r}")
        if self.kind in ("ball", "punctured") and not self.radius > 0:
            raise InputError("domain radius must be positive")

    @classmethod
    def ball(cls, radius: float = 1.0) -> DomainBox:
        return cls("ball", radius=radius)

    @classmethod
    def annulus(cls, x0_range, radial) -> DomainBox:
        return cls("annulus", x0_range=tuple(x0_range), radial=tuple(radial))

    @classmethod
    def punctured(cls, radius: float = 0.05) -> DomainBox:
        return cls("punctured", radius=radius)

    def contains(self, x: StemPoint) -> bool:
        data = x.data
        if not np.all(np.isfinite(data)):
            return False
        if self.kind == "all":
            return True
        if self.kind == "ball":
            return float(np.linalg.norm(data)) < self.radius
        if self.kind == "punctured":
            return bool(np.all(np.linalg.norm(data, axis=0) >= self.radius))
        lo, hi = self.x0_range
        a, b = self.radial
        rho = x.triple_norms()
        return bool(np.all((data[0] >= lo) & (data[0] <= hi) & (rho >= a) & (rho <= b)))

    def sample_slice(self, rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Random ``(x0, r)`` with ``(x0, r, 0, 0)`` inside the domain."""
        if self.kind == "all":
            return rng.standard_normal(n), rng.standard_normal(n)
        if self.kind == "ball":
            d = random_unit(rng, 2 * n) * self.radius * 0.95 * rng.random() ** (1 / (2 * n))
            return d[:n], d[n:]
        if self.kind == "punctured":
            lo, hi = max(0.5, 2 * self.radius), max(1.5, 4 * self.radius)
            ang = rng.uniform(0, 2 * np.pi, n)
            rad = rng.uniform(lo, hi, n)
            return rad * np.cos(ang), rad * np.sin(ang)
        x0 = rng.uniform(*self.x0_range, n)
        r = rng.uniform(*self.radial, n) * rng.choice([-1.0, 1.0], n)
        return x0, r

    def sample(self, rng: np.random.Generator, n: int) -> StemPoint:
        if self.kind == "all":
            return StemPoint.from_array(rng.standard_normal((4, n)))
        if self.kind == "ball":
            d = random_unit(rng, 4 * n) * self.radius * 0.95 * rng.random() ** (1 / (4 * n))
            return StemPoint.from_array(d.reshape(4, n))
        if self.kind == "punctured":
            lo, hi = max(0.5, 2 * self.radius), max(1.5, 4 * self.radius)
            cols = [random_unit(rng, 4) * rng.uniform(lo, hi) for _ in range(n)]
            return StemPoint.from_array(np.stack(cols, axis=1))
        x0 = rng.uniform(*self.x0_range, n)
        cols = [random_unit(rng, 3) * rng.uniform(*self.radial) for _ in range(n)]
        return StemPoint.from_array(np.vstack([x0, np.stack(cols, axis=1)]))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "radius": self.radius, "x0_range": list(self.x0_range), "radial": list(self.radial)}


ALL = DomainBox()


# ---------------------------------------------------------------- mappings


class StemMapping:
    """Base class; subclasses implement ``_evaluate`` on a (4, n) array."""

    kind = "abstract"
    symbolic = False

    def __init__(self, m: int, n: int, domain: DomainBox = ALL):
        self.m = _check_m(m)
        if n < 1:
            raise InputError("n must be >= 1")
        self.n = int(n)
        self.domain = domain

    @property
    def dim(self) -> int:
        return 1 << self.m

    def _evaluate(self, data: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x: StemPoint) -> StemValue:
        return eval_stem(self, x)

    def __add__(self, other):
        return LinearCombination([(1.0, self), (1.0, other)])

    def __sub__(self, other):
        return LinearCombination([(1.0, self), (-1.0, other)])

    def __rmul__(self, c):
        return LinearCombination([(float(c), self)])

    def __repr__(self):
        return f"{type(self).__name__}(m={self.m}, n={self.n}, domain={self.domain.kind})"


def eval_stem(F: StemMapping, x: StemPoint) -> StemValue:
    if x.n != F.n:
        raise InputError(f"point has n={x.n}, mapping expects n={F.n}")
    if not F.domain.contains(x):
        raise OutOfDomain(f"{x!r} is outside the {F.domain.kind} domain")
    return StemValue(F.m, F._evaluate(x.data))


def _coeff_vector(m: int, c) -> np.ndarray:
    if isinstance(c, CliffordNumber):
        if c.m != m:
            raise SignatureMismatch(f"coefficient has m={c.m}, expected {m}")
        return np.array(c.coeffs)
    out = np.zeros(1 << m)
    out[0] = float(c)
    return out


class PolynomialStem(StemMapping):
    """Polynomial in the 4n real coordinates with Clifford coefficients.

    ``exponents`` has shape (T, 4n); ``coeffs`` has shape (T, 4, n, 2**m):
    term t contributes ``coeffs[t, a, i] * prod(x ** exponents[t])`` to
    entry i of component ``F_a``.
    """

    kind = "polynomial"
    symbolic = True

    def __init__(self, m, n, exponents, coeffs, domain: DomainBox = ALL):
        super().__init__(m, n, domain)
        exps = np.asarray(exponents, dtype=np.int64).reshape(-1, 4 * self.n)
        cf = np.asarray(coeffs, dtype=float).reshape(-1, 4, self.n, self.dim)
        if exps.shape[0] != cf.shape[0]:
            raise InputError("exponent and coefficient tables differ in length")
        if np.any(exps < 0):
            raise InputError("negative exponent")
        self.exponents, self.coeffs = _merge_terms(exps, cf)

    @classmethod
    def from_terms(cls, m, n, terms, domain: DomainBox = ALL) -> PolynomialStem:
        """Build from ``(component, coordinate, coeff, exponents)`` tuples.

        ``coeff`` is a real number or a :class:`CliffordNumber`;
        ``exponents`` has length 4n in the flat variable order.
        """
        m = _check_m(m)
        dim = 1 << m
        exps, cfs = [], []
        for a, i, c, e in terms:
            e = list(e)
            if len(e) != 4 * n:
                raise InputError(f"exponent vector must have length {4 * n}")
            block = np.zeros((4, n, dim))
            block[a, i] = _coeff_vector(m, c)
            exps.append(e)
            cfs.append(block)
        return cls(m, n, np.array(exps, dtype=np.int64).reshape(-1, 4 * n), np.array(cfs).reshape(-1, 4, n, dim), domain)

    @classmethod
    def zero(cls, m, n, domain: DomainBox = ALL) -> PolynomialStem:
        return cls(m, n, np.zeros((0, 4 * n)), np.zeros((0, 4, n, 1 << m)), domain)

    def _evaluate(self, data):
        if self.exponents.shape[0] == 0:
            return np.zeros((4, self.n, self.dim))
        mono = np.prod(data.reshape(-1) ** self.exponents, axis=1)
        return np.tensordot(mono, self.coeffs, axes=1)

    def partial(self, var: int) -> PolynomialStem:
        """Exact derivative with respect to flat variable ``var``."""
        keep = self.exponents[:, var] > 0
        exps = self.exponents[keep].copy()
        cf = self.coeffs[keep] * exps[:, var][:, None, None, None]
        exps[:, var] -= 1
        return PolynomialStem(self.m, self.n, exps, cf, self.domain)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self.exponents.shape[0] == 0:
            return -1
        return int(self.exponents.sum(axis=1).max())

    def left_multiplied(self, c: CliffordNumber) -> PolynomialStem:
        return PolynomialStem(self.m, self.n, self.exponents, left_multiply(c, self.coeffs), self.domain)

    def with_domain(self, domain: DomainBox) -> PolynomialStem:
        return PolynomialStem(self.m, self.n, self.exponents, self.coeffs, domain)

    def coordinate_laplacian(self) -> PolynomialStem:
        """Entry i of every component gets the R^4 Laplacian in coordinate i's variables."""
        exps_out, cf_out = [], []
        for i in range(self.n):
            only_i = np.zeros_like(self.coeffs)
            only_i[:, :, i] = self.coeffs[:, :, i]
            part = PolynomialStem(self.m, self.n, self.exponents, only_i)
            for ell in range(4):
                second = part.partial(ell * self.n + i).partial(ell * self.n + i)
                exps_out.append(second.exponents)
                cf_out.append(second.coeffs)
        exps = np.concatenate(exps_out) if exps_out else np.zeros((0, 4 * self.n))
        cf = np.concatenate(cf_out) if cf_out else np.zeros((0, 4, self.n, self.dim))
        return PolynomialStem(self.m, self.n, exps, cf, self.domain)


def _merge_terms(exps: np.ndarray, cf: np.ndarray):
    if exps.shape[0] == 0:
        return exps, cf
    uniq, inverse = np.unique(exps, axis=0, return_inverse=True)
    merged = np.zeros((uniq.shape[0],) + cf.shape[1:])
    np.add.at(merged, inverse.reshape(-1), cf)
    keep = np.any(merged != 0, axis=(1, 2, 3))
    exps, cf = uniq[keep], merged[keep]
    exps.flags.writeable = False
    cf.flags.writeable = False
    return exps, cf


def _rho2_power(p: int):
    """Expansion of (y1^2 + y2^2 + y3^2)^p as {(e1, e2, e3): coeff}."""
    out = {}
    for a in range(p + 1):
        for b in range(p - a + 1):
            c = p - a - b
            out[(2 * a, 2 * b, 2 * c)] = math.factorial(p) // (math.factorial(a) * math.factorial(b) * math.factorial(c))
    return out


def lift_parts(coeffs: Sequence[float]):
    """Split ``h(x0 + t*rho)`` into ``alpha + t*rho*beta`` over (x0, rho^2).

    Returns two dicts keyed by ``(power of x0, power of rho^2)``.
    """
    alpha, beta = defaultdict(float), defaultdict(float)
    for k, ck in enumerate(coeffs):
        if ck == 0:
            continue
        for j in range(k + 1):
            term = ck * math.comb(k, j) * (-1) ** (j // 2)
            if j % 2 == 0:
                alpha[(k - j, j // 2)] += term
            else:
                beta[(k - j, (j - 1) // 2)] += term
    return dict(alpha), dict(beta)


def _check_real_coeffs(h) -> list[list[float]]:
    out = []
    for poly in h:
        row = []
        for c in poly:
            if isinstance(c, complex) or np.iscomplexobj(c):
                if complex(c).imag != 0:
                    raise NonIntrinsic("holomorphic lift needs real coefficients")
                c = complex(c).real
            row.append(float(c))
        out.append(row)
    return out


class HolomorphicLift(PolynomialStem):
    """Lift of per-coordinate real-coefficient polynomials ``h_i``.

    With ``rho_i`` the norm of ``(x1_i, x2_i, x3_i)`` and
    ``h_i(x0_i + t rho_i) = alpha_i + t rho_i beta_i``:
    ``F0_i = alpha_i`` and ``F_l,i = x_l,i * beta_i`` for l = 1, 2, 3.
    Both parts are polynomials in ``x0_i`` and ``rho_i^2``.
    """

    kind = "lift"

    def __init__(self, m, n, h: Sequence[Sequence[float]], domain: DomainBox = ALL):
        h = _check_real_coeffs(h)
        if len(h) == 1 and n > 1:
            h = h * n
        if len(h) != n:
            raise InputError(f"need one polynomial per coordinate ({n}), got {len(h)}")
        self.h = tuple(tuple(p) for p in h)
        terms = []
        for i, poly in enumerate(h):
            alpha, beta = lift_parts(poly)

            def expo(e0, e123, extra=None):
                e = [0] * (4 * n)
                e[i] = e0
                for ell in range(3):
                    e[(ell + 1) * n + i] = e123[ell] + (1 if extra == ell else 0)
                return e

            for (p0, p), c in alpha.items():
                for e123, mult in _rho2_power(p).items():
                    terms.append((0, i, c * mult, expo(p0, e123)))
            for (p0, p), c in beta.items():
                for e123, mult in _rho2_power(p).items():
                    for ell in range(3):
                        terms.append((ell + 1, i, c * mult, expo(p0, e123, ell)))
        base = PolynomialStem.from_terms(m, n, terms)
        super().__init__(m, n, base.exponents, base.coeffs, domain)


class AnalyticLift(StemMapping):
    """Lift of per-coordinate analytic functions with real Taylor coefficients.

    Each coordinate is given as ``(h, dh)``: complex callables for the
    function and its derivative.  ``F0_i = Re h(z_i)`` and
    ``F_l,i = x_l,i * Im h(z_i) / rho_i`` with ``z_i = x0_i + i rho_i``;
    at ``rho_i -> 0`` the ratio is replaced by ``h'(x0_i)``.
    """

    kind = "lift"
    RHO_CUTOFF = 1e-7

    def __init__(self, m, n, funcs: Sequence[tuple[Callable, Callable]], domain: DomainBox = ALL, label: str = "analytic"):
        super().__init__(m, n, domain)
        funcs = list(funcs)
        if len(funcs) == 1 and n > 1:
            funcs = funcs * n
        if len(funcs) != n:
            raise InputError(f"need one function per coordinate ({n}), got {len(funcs)}")
        self.funcs = funcs
        self.label = label

    def _evaluate(self, data):
        out = np.zeros((4, self.n, self.dim))
        rho = np.linalg.norm(data[1:], axis=0)
        for i, (h, dh) in enumerate(self.funcs):
            z = complex(data[0, i], rho[i])
            w = complex(h(z))
            out[0, i, 0] = w.real
            if rho[i] > self.RHO_CUTOFF * (1 + abs(data[0, i])):
                ratio = w.imag / rho[i]
            else:
                ratio = complex(dh(complex(data[0, i], 0.0))).real
            out[1:, i, 0] = data[1:, i] * ratio
        return out


class CauchyFueterKernel(StemMapping):
    """Per coordinate ``(x0, -x1, -x2, -x3) / |x|^4``, |x| the R^4 norm of the coordinate."""

    kind = "kernel"

    def __init__(self, m, n, domain: DomainBox | None = None):
        super().__init__(m, n, domain or DomainBox.punctured(0.05))

    def _evaluate(self, data):
        out = np.zeros((4, self.n, self.dim))
        s = np.sum(data**2, axis=0) ** -2
        out[0, :, 0] = data[0] * s
        out[1:, :, 0] = -data[1:] * s
        return out


class LinearCombination(StemMapping):
    """Real linear combination of stems sharing (m, n); domain of the first term."""

    kind = "combination"

    def __init__(self, terms: Sequence[tuple[float, StemMapping]]):
        terms = [(float(c), F) for c, F in terms]
        if not terms:
            raise InputError("empty linear combination")
        m, n = terms[0][1].m, terms[0][1].n
        if any(F.m != m or F.n != n for _, F in terms):
            raise SignatureMismatch("terms differ in (m, n)")
        super().__init__(m, n, terms[0][1].domain)
        self.terms = terms

    @property
    def symbolic(self):
        return all(F.symbolic for _, F in self.terms)

    def _evaluate(self, data):
        x = StemPoint.from_array(data)
        return sum(c * eval_stem(F, x).data for c, F in self.terms)


class SymmetrizedStem(StemMapping):
    """Group average ``x -> mean_Q g_Q^T raw(g_Q x)`` over a fixed rotation set."""

    kind = "symmetrized"

    def __init__(self, raw, quadrature_size: int, seed=0, m=None, n=None, domain=None, exact=False):
        if quadrature_size < 8:
            raise InputError("quadrature_size must be >= 8")
        m = raw.m if m is None else m
        n = raw.n if n is None else n
        super().__init__(m, n, domain or getattr(raw, "domain", ALL))
        self.raw = raw
        self.quadrature_size = int(quadrature_size)
        self.seed = seed
        rng = rng_from(seed)
        self.rotations = [GroupElement(random_orthogonal(rng)) for _ in range(self.quadrature_size)]
        self.exact = exact

    def _raw(self, x: StemPoint) -> StemValue:
        out = self.raw(x)
        return out if isinstance(out, StemValue) else StemValue(self.m, out)

    def _evaluate(self, data):
        x = StemPoint.from_array(data)
        if self.exact:
            return self._raw(x).data
        acc = np.zeros((4, self.n, self.dim))
        for g in self.rotations:
            acc += act_value(g.inverse, self._raw(act(g, x))).data
        return acc / self.quadrature_size


# ---------------------------------------------------------------- checks


@dataclass
class CheckReport:
    passed: bool
    worst_residual: float
    samples: int
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "worst_residual": self.worst_residual, "samples": self.samples, "witness": self.witness, **self.details}


def check_equivariance(F: StemMapping, samples: int = 200, tol: float = 1e-9, seed=0) -> CheckReport:
    """Sample ``(x, Q)`` and measure ``|F(g x) - g F(x)|``."""
    if samples < 1:
        raise InputError("samples must be >= 1")
    rng = rng_from(seed)
    draws = [(F.domain.sample(rng, F.n), GroupElement(random_orthogonal(rng))) for _ in range(samples)]

    def residual(pair):
        x, g = pair
        return (eval_stem(F, act(g, x)) - act_value(g, eval_stem(F, x))).norm()

    res = np.array(pmap(residual, draws))
    k = int(np.argmax(res))
    worst = float(res[k])
    passed = worst <= tol
    witness = None if passed else {"x": draws[k][0].data.tolist(), "q": draws[k][1].q.tolist()}
    return CheckReport(passed, worst, samples, witness)


def check_axis_vanishing(F: StemMapping, samples: int = 200, tol: float = 1e-9, seed=0) -> CheckReport:
    """At points ``(x0, x1, 0, 0)`` both ``F2`` and ``F3`` must vanish."""
    rng = rng_from(seed)
    pts = []
    for _ in range(samples):
        x0, r = F.domain.sample_slice(rng, F.n)
        pts.append(StemPoint(x0, r, np.zeros(F.n), np.zeros(F.n)))

    def residual(x):
        v = eval_stem(F, x).data
        return float(max(np.linalg.norm(v[2]), np.linalg.norm(v[3])))

    res = np.array(pmap(residual, pts))
    k = int(np.argmax(res))
    worst = float(res[k])
    passed = worst <= tol
    return CheckReport(passed, worst, samples, None if passed else {"x": pts[k].data.tolist()})


def symmetrize(raw, quadrature_size: int = 64, seed=0) -> SymmetrizedStem:
    """Average ``raw`` over a seeded set of O(3) elements.

    When ``raw`` is already a stem passing :func:`check_equivariance` at
    1e-12 the average is known exactly and the mapping evaluates ``raw``
    directly.
    """
    exact = False
    if isinstance(raw, StemMapping):
        exact = check_equivariance(raw, samples=32, tol=1e-12, seed=seed).passed
    return SymmetrizedStem(raw, quadrature_size, seed=seed, exact=exact)


# ---------------------------------------------------------------- presets


def _var(n: int, ell: int, i: int) -> list[int]:
    e = [0] * (4 * n)
    e[ell * n + i] = 1
    return e


def constant_stem(m, n, c, domain: DomainBox = ALL) -> PolynomialStem:
    """``(c, 0, 0, 0)`` in every coordinate; ``c`` real or Clifford."""
    return PolynomialStem.from_terms(m, n, [(0, i, c, [0] * (4 * n)) for i in range(n)], domain)


def identity_stem(m, n, domain: DomainBox = ALL) -> PolynomialStem:
    return PolynomialStem.from_terms(m, n, [(a, i, 1.0, _var(n, a, i)) for a in range(4) for i in range(n)], domain)


def square_lift(m, n, domain: DomainBox = ALL) -> HolomorphicLift:
    return HolomorphicLift(m, n, [[0.0, 0.0, 1.0]] * n, domain)


def swap_stem(m, n=1) -> PolynomialStem:
    """``(x1, x0, 0, 0)``: not equivariant."""
    terms = [(0, i, 1.0, _var(n, 1, i)) for i in range(n)] + [(1, i, 1.0, _var(n, 0, i)) for i in range(n)]
    return PolynomialStem.from_terms(m, n, terms)


def planted_stem(m, n=1) -> PolynomialStem:
    """``(0, 0, x1, x1)``: not equivariant, fails axis vanishing."""
    terms = [(a, i, 1.0, _var(n, 1, i)) for a in (2, 3) for i in range(n)]
    return PolynomialStem.from_terms(m, n, terms)
