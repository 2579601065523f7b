"""From stem mappings to slice mappings.

``phi(frame, x) = x0 + x1 I + x2 J + x3 IJ`` embeds a stem point into
(R_m)^n.  A point of the slice cone has the canonical form ``x0 + r H``;
the induced slice mapping evaluates there as ``F0(v) + H F1(v)`` with
``v = (x0, r, 0, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .clifford import (
    DEFAULT_TOL,
    AdmissibleUnit,
    CliffordNumber,
    CliffordVector,
    QuaternionFrame,
    left_multiply,
    random_admissible_in_frame,
)
from .errors import InputError, NonVanishingRealPart, NotInSliceCone, NotSlicePreserving, SignatureMismatch
from .sampling import rng_from
from .stems import StemMapping, StemPoint, StemValue, eval_stem

RANK_TOL = 1e-9


def phi(frame: QuaternionFrame, x: StemPoint) -> CliffordVector:
    """Entry i is ``x0_i + x1_i I + x2_i J + x3_i K``."""
    return CliffordVector(frame.m, x.data.T @ frame.basis())


def phi_value(frame: QuaternionFrame, v: StemValue) -> CliffordVector:
    """``F0 + I F1 + J F2 + K F3`` with left multiplication."""
    if v.m != frame.m:
        raise SignatureMismatch(f"value has m={v.m}, frame has m={frame.m}")
    d = v.data
    out = d[0] + left_multiply(frame.I, d[1]) + left_multiply(frame.J, d[2]) + left_multiply(frame.K, d[3])
    return CliffordVector(v.m, out)


def _first_nonzero_sign(r: np.ndarray) -> float:
    scale = np.abs(r).max()
    if scale == 0:
        return 1.0
    k = int(np.flatnonzero(np.abs(r) > 1e-12 * scale)[0])
    return 1.0 if r[k] > 0 else -1.0


@dataclass(frozen=True, eq=False)
class SlicePoint:
    """Canonical ``x0 + r H`` with the first nonzero entry of r positive.

    ``H`` is None exactly when ``r == 0``.
    """

    x0: np.ndarray
    r: np.ndarray
    H: AdmissibleUnit | None = None
    m: int | None = None

    def __post_init__(self):
        x0 = np.atleast_1d(np.array(self.x0, dtype=float))
        r = np.atleast_1d(np.array(self.r, dtype=float))
        if x0.shape != r.shape or x0.ndim != 1:
            raise InputError("x0 and r must be real n-vectors of equal length")
        H = self.H
        m = self.m
        if np.any(r != 0):
            if H is None:
                raise InputError("nonzero r needs an imaginary unit H")
            H = AdmissibleUnit.of(H)
            s = _first_nonzero_sign(r)
            if s < 0:
                r, H = -r, AdmissibleUnit.of(-H)
            m = H.m
        else:
            r = np.zeros_like(r)
            if H is not None:
                m = H.m
            H = None
        if m is None:
            raise InputError("a real slice point needs m")
        x0.flags.writeable = False
        r.flags.writeable = False
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "m", int(m))

    @property
    def n(self) -> int:
        return self.x0.shape[0]

    def stem_point(self) -> StemPoint:
        """``v = (x0, r, 0, 0)``."""
        zero = np.zeros(self.n)
        return StemPoint(self.x0, self.r, zero, zero)

    def embed(self) -> CliffordVector:
        out = np.zeros((self.n, 1 << self.m))
        out[:, 0] = self.x0
        if self.H is not None:
            out += np.outer(self.r, self.H.coeffs)
        return CliffordVector(self.m, out)

    def as_complex(self) -> np.ndarray:
        """The point ``x0 + i r`` of C^n on its own slice."""
        return self.x0 + 1j * self.r

    def norm(self) -> float:
        return float(np.sqrt(self.x0 @ self.x0 + self.r @ self.r))

    def with_unit(self, H: CliffordNumber | None) -> SlicePoint:
        return SlicePoint(self.x0, self.r, H, self.m)

    @classmethod
    def from_complex(cls, z, H: CliffordNumber) -> SlicePoint:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return cls(z.real, z.imag, H, H.m)


def decompose(x: StemPoint, frame: QuaternionFrame, tol: float = RANK_TOL) -> SlicePoint:
    """Write ``phi(frame, x)`` as ``x0 + r H``.

    The triples ``(x1_i, x2_i, x3_i)`` must be proportional (numerical rank
    <= 1 of the 3 x n matrix they form), otherwise the embedded point is not
    in the slice cone.
    """
    M = x.data[1:]
    if not np.any(M):
        return SlicePoint(x.x0, np.zeros(x.n), None, frame.m)
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    if s.shape[0] > 1 and s[1] > tol * s[0]:
        raise NotInSliceCone(f"coordinate triples are not proportional (sigma2/sigma1 = {s[1] / s[0]:.3g})")
    u = U[:, 0]
    r = M.T @ u
    H = frame.sphere_point(u / np.linalg.norm(u))
    return SlicePoint(x.x0, r, H, frame.m)


@dataclass(frozen=True, eq=False)
class SliceMapping:
    stem: StemMapping

    @property
    def m(self) -> int:
        return self.stem.m

    @property
    def n(self) -> int:
        return self.stem.n

    def __call__(self, q: SlicePoint) -> CliffordVector:
        return induce(self, q)


def _stem(f) -> StemMapping:
    return f.stem if isinstance(f, SliceMapping) else f


def induce(f, q: SlicePoint, tol: float = DEFAULT_TOL) -> CliffordVector:
    """Evaluate the induced slice mapping at ``q``: ``F0(v) + H F1(v)``."""
    F = _stem(f)
    if q.m != F.m or q.n != F.n:
        raise SignatureMismatch(f"point (m={q.m}, n={q.n}) vs mapping (m={F.m}, n={F.n})")
    val = eval_stem(F, q.stem_point()).data
    if q.H is None:
        leak = float(np.linalg.norm(val[1]))
        if leak > tol:
            raise NonVanishingRealPart(f"|F1(v)| = {leak:.3g} at a real point")
        return CliffordVector(F.m, val[0])
    return CliffordVector(F.m, val[0] + left_multiply(q.H, val[1]))


def sign_frame_values(f, x: StemPoint, frame: QuaternionFrame, tol: float = RANK_TOL) -> tuple[CliffordVector, ...]:
    """``f(phi^{I,J}(x)), f(phi^{I,-J}(x)), f(phi^{-I,J}(x)), f(phi^{-I,-J}(x))`` via induction."""
    return tuple(induce(f, decompose(x, fr, tol)) for fr in frame.sign_frames())


def _stem_matrix_apply(values: Sequence[CliffordVector], source: QuaternionFrame) -> np.ndarray:
    """Quarter-weighted inverse of the sign-frame evaluation matrix."""
    if len(values) != 4:
        raise InputError("need the four sign-frame values")
    v = [np.asarray(val.coeffs) for val in values]
    I, J, K = source.I, source.J, source.K
    f0 = (v[0] + v[1] + v[2] + v[3]) / 4
    f1 = left_multiply(I, -v[0] - v[1] + v[2] + v[3]) / 4
    f2 = left_multiply(J, -v[0] + v[1] - v[2] + v[3]) / 4
    f3 = left_multiply(K, -v[0] + v[1] + v[2] - v[3]) / 4
    return np.stack([f0, f1, f2, f3])


def stem_from_slice_samples(values: Sequence[CliffordVector], source: QuaternionFrame) -> StemValue:
    """Recover ``(F0, F1, F2, F3)(x)`` from the four sign-frame values."""
    return StemValue(source.m, _stem_matrix_apply(values, source))


def transfer_representation(values: Sequence[CliffordVector], source: QuaternionFrame, target: QuaternionFrame) -> CliffordVector:
    """Value of the slice mapping at ``phi^{target}(x)`` from values on the source sign frames."""
    return phi_value(target, stem_from_slice_samples(values, source))


def _in_slice_residual(vec: np.ndarray, Iprime: CliffordNumber) -> float:
    """Distance of each entry from span{1, I'} (max over entries)."""
    proj = np.outer(vec @ Iprime.coeffs, Iprime.coeffs)
    proj[:, 0] += vec[:, 0]
    return float(np.abs(vec - proj).max())


def slice_preservation_check(f, Iprime: CliffordNumber, samples: int = 100, tol: float = DEFAULT_TOL, seed=0) -> bool:
    """Sample points with ``H = I'`` and test that outputs lie in span{1, I'}."""
    F = _stem(f)
    Iprime = AdmissibleUnit.of(Iprime)
    rng = rng_from(seed)
    for _ in range(samples):
        x0, r = F.domain.sample_slice(rng, F.n)
        q = SlicePoint(x0, r, Iprime, F.m)
        if _in_slice_residual(induce(F, q).coeffs, Iprime) > tol:
            return False
    return True


@dataclass
class ExtremeReport:
    passed: bool
    max_value: float
    min_value: float
    sampled_min: float
    sampled_max: float
    samples: int
    witness: dict | None = None
    details: dict = field(default_factory=dict)


def extreme_values(
    f,
    Iprime: CliffordNumber,
    x: StemPoint,
    frame: QuaternionFrame,
    verify_samples: int = 200,
    tol: float = DEFAULT_TOL,
    seed=0,
    check_preservation: bool = True,
) -> tuple[float, float, ExtremeReport]:
    """Max and min of ``|f(x0 + r I')|, |f(x0 - r I')|`` and a sampled verification.

    The report samples random admissible H on the frame's quaternionic sphere
    and checks ``min - tol <= |f(x0 + r H)| <= max + tol``.
    """
    F = _stem(f)
    Iprime = AdmissibleUnit.of(Iprime)
    if check_preservation and not slice_preservation_check(F, Iprime, samples=50, tol=tol, seed=seed):
        raise NotSlicePreserving("f does not map the I' slice into itself")
    q = decompose(x, frame)
    plus = induce(F, q.with_unit(Iprime) if q.H is not None else q).norm()
    minus = induce(F, SlicePoint(q.x0, -q.r, Iprime, F.m) if q.H is not None else q).norm()
    hi, lo = max(plus, minus), min(plus, minus)
    rng = rng_from(seed)
    worst, witness = 0.0, None
    s_min, s_max = np.inf, -np.inf
    for _ in range(verify_samples):
        H = random_admissible_in_frame(frame, rng)
        val = induce(F, q.with_unit(H) if q.H is not None else q).norm()
        s_min, s_max = min(s_min, val), max(s_max, val)
        excess = max(lo - val, val - hi, 0.0)
        if excess > worst:
            worst, witness = excess, {"H": H.coeffs.tolist(), "value": val}
    passed = worst <= tol
    report = ExtremeReport(passed, hi, lo, float(s_min), float(s_max), verify_samples, None if passed else witness, {"worst_excess": worst})
    return hi, lo, report
