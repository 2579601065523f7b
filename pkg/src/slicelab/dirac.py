"""Cauchy-Riemann system for stems, the slice Dirac operator, and the Fueter generator.

Partial derivatives are exact for polynomial stems and central differences
(optionally Richardson-extrapolated) otherwise.  Two readings of
``dF_a/dx_b`` for vector-valued ``x_b`` are supported: ``diagonal`` pairs
entry i of ``F_a`` with coordinate i of ``x_b``; ``jacobian`` keeps the full
n x n matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .clifford import CliffordVector, QuaternionFrame, left_multiply
from .errors import DegreeTooHigh, InputError, SymbolicUnavailable
from .sampling import pmap, random_frame, rng_from
from .stems import (
    HolomorphicLift,
    LinearCombination,
    PolynomialStem,
    StemMapping,
    StemPoint,
    StemValue,
    eval_stem,
    _check_real_coeffs,
)

Interpretation = Literal["diagonal", "jacobian"]

# line l of the system is sum_{a,b} G[l, a, b] * dF_a/dx_b
G1 = np.diag([1.0, -1.0, -1.0, -1.0])
G2 = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float)
G3 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=float)
G4 = np.array([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=float)
SIGNATURE_MATRICES = np.stack([G1, G2, G3, G4])

MAX_FUETER_DEGREE = 16
SYMBOLIC_TOL = 1e-12
FD_TOL = 1e-6


@dataclass(frozen=True)
class DerivativeEngine:
    mode: Literal["symbolic", "fd"] = "symbolic"
    h: float | None = None  # None: 1e-5 * (1 + |x|)
    richardson: bool = True

    def step(self, x: StemPoint) -> float:
        return self.h if self.h is not None else 1e-5 * (1.0 + x.norm())


def default_engine(F: StemMapping) -> DerivativeEngine:
    return DerivativeEngine("symbolic") if F.symbolic else DerivativeEngine("fd")


def symbolic_partial(F: StemMapping, var: int) -> StemMapping:
    if isinstance(F, PolynomialStem):
        return F.partial(var)
    if isinstance(F, LinearCombination) and F.symbolic:
        return LinearCombination([(c, symbolic_partial(G, var)) for c, G in F.terms])
    raise SymbolicUnavailable(f"no exact derivative for {F.kind} stems")


def _central(F, x, var, h):
    return (eval_stem(F, x.shifted(var, h)).data - eval_stem(F, x.shifted(var, -h)).data) / (2 * h)


def fd_partial_with_error(F: StemMapping, x: StemPoint, var: int, engine: DerivativeEngine | None = None):
    """Central difference in flat variable ``var`` plus a step-halving error estimate."""
    engine = engine or DerivativeEngine("fd")
    h = engine.step(x)
    d_h = _central(F, x, var, h)
    d_half = _central(F, x, var, h / 2)
    if engine.richardson:
        value = (4 * d_half - d_h) / 3
        err = float(np.abs(d_half - d_h).max()) / 3
    else:
        value = d_h
        err = float(np.abs(d_half - d_h).max()) * 4 / 3
    return value, err


def fd_partial(F: StemMapping, x: StemPoint, coordinate: int, engine: DerivativeEngine | None = None) -> StemValue:
    """``(F(x + h e) - F(x - h e)) / 2h``, Richardson-combined when requested.

    Raises OutOfDomain when a probe point leaves the domain.
    """
    value, _ = fd_partial_with_error(F, x, coordinate, engine)
    return StemValue(F.m, value)


def jacobian(F: StemMapping, x: StemPoint, engine: DerivativeEngine | None = None):
    """Array ``J[a, i, b, j] = d(F_a)_i / d(x_b)_j`` of shape (4, n, 4, n, 2**m) and an error estimate."""
    engine = engine or default_engine(F)
    n = F.n
    eval_stem(F, x)  # domain check on the base point
    J = np.zeros((4, n, 4, n, F.dim))
    err = 0.0
    for b in range(4):
        for j in range(n):
            var = b * n + j
            if engine.mode == "symbolic":
                J[:, :, b, j] = eval_stem(symbolic_partial(F, var), x).data
            else:
                J[:, :, b, j], e = fd_partial_with_error(F, x, var, engine)
                err = max(err, e)
    return J, err


def cr_lines(F: StemMapping, x: StemPoint, interp: Interpretation = "diagonal", engine: DerivativeEngine | None = None):
    """The four left-hand sides as one array plus the FD error estimate.

    Diagonal: shape (4, n, 2**m).  Jacobian: shape (4, n, n, 2**m).
    """
    if interp not in ("diagonal", "jacobian"):
        raise InputError(f"unknown interpretation {interp!r}")
    J, err = jacobian(F, x, engine)
    if interp == "diagonal":
        idx = np.arange(F.n)
        D = J[:, idx, :, idx]  # (n, 4, 4, dim) -> D[i, a, b]
        lines = np.einsum("lab,iabd->lid", SIGNATURE_MATRICES, D)
    else:
        lines = np.einsum("lab,aibjd->lijd", SIGNATURE_MATRICES, J)
    return lines, err


def cr_residual(F: StemMapping, x: StemPoint, interp: Interpretation = "diagonal", engine: DerivativeEngine | None = None):
    """The four residuals: CliffordVectors (diagonal) or (n, n, 2**m) arrays (jacobian)."""
    lines, _ = cr_lines(F, x, interp, engine)
    if interp == "diagonal":
        return tuple(CliffordVector(F.m, line) for line in lines)
    return tuple(lines)


def _combine(frame: QuaternionFrame, lines: np.ndarray) -> np.ndarray:
    return lines[0] + left_multiply(frame.I, lines[1]) + left_multiply(frame.J, lines[2]) + left_multiply(frame.K, lines[3])


def dirac_residual(F: StemMapping, frame: QuaternionFrame, x: StemPoint, interp: Interpretation = "diagonal", engine: DerivativeEngine | None = None):
    """``line1 + I line2 + J line3 + IJ line4``."""
    lines, _ = cr_lines(F, x, interp, engine)
    out = _combine(frame, lines)
    return CliffordVector(F.m, out) if interp == "diagonal" else out


@dataclass
class RegularityVerdict:
    regular: bool
    equivalence_ok: bool
    worst: float
    samples: int
    witness: dict | None = None
    worst_dirac: float = 0.0
    fd_error: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "regular": self.regular,
            "equivalence_ok": self.equivalence_ok,
            "worst": self.worst,
            "worst_dirac": self.worst_dirac,
            "fd_error": self.fd_error,
            "samples": self.samples,
            "witness": self.witness,
            **self.details,
        }


def regularity_verdict(
    F: StemMapping,
    samples: int = 50,
    tol: float | None = None,
    seed=0,
    interp: Interpretation = "diagonal",
    engine: DerivativeEngine | None = None,
    frames: int = 3,
) -> RegularityVerdict:
    """Sample the CR system and test it against the Dirac residual on random frames.

    ``regular``: every CR line is within ``tol`` at every sample.
    ``equivalence_ok``: at every sample and frame, "all lines <= tol" holds
    exactly when "|Dirac residual| <= 4 tol" does.
    """
    if samples < 1:
        raise InputError("samples must be >= 1")
    engine = engine or default_engine(F)
    if tol is None:
        tol = SYMBOLIC_TOL if engine.mode == "symbolic" else FD_TOL
    rng = rng_from(seed)
    pts = [F.domain.sample(rng, F.n) for _ in range(samples)]
    frame_sets = [[random_frame(F.m, rng) for _ in range(frames)] for _ in range(samples)]

    def one(k):
        lines, err = cr_lines(F, pts[k], interp, engine)
        cr = float(np.abs(lines).max())
        dirac = [float(np.linalg.norm(_combine(fr, lines), axis=-1).max()) for fr in frame_sets[k]]
        return cr, dirac, err

    results = pmap(one, range(samples))
    worst, worst_dirac, fd_err = 0.0, 0.0, 0.0
    witness = None
    equivalence_ok = True
    mismatch = None
    for k, (cr, dirac, err) in enumerate(results):
        fd_err = max(fd_err, err)
        if cr > worst:
            worst = cr
            if cr > tol:
                witness = {"x": pts[k].data.tolist(), "residual": cr}
        worst_dirac = max(worst_dirac, max(dirac))
        for d in dirac:
            if (cr <= tol) != (d <= 4 * tol):
                equivalence_ok = False
                mismatch = mismatch or {"x": pts[k].data.tolist(), "cr": cr, "dirac": d}
    details = {"tol": tol, "interpretation": interp, "engine": engine.mode}
    if mismatch:
        details["equivalence_witness"] = mismatch
    return RegularityVerdict(worst <= tol, equivalence_ok, worst, samples, witness, worst_dirac, fd_err, details)


class FueterTransform(PolynomialStem):
    """Coordinatewise R^4 Laplacian of the holomorphic lift of real polynomials."""

    kind = "fueter"


def fueter_transform(h: Sequence[Sequence[float]], m: int, n: int | None = None, domain=None) -> FueterTransform:
    h = _check_real_coeffs(h)
    if n is None:
        n = len(h)
    for poly in h:
        nz = [k for k, c in enumerate(poly) if c != 0]
        if nz and nz[-1] > MAX_FUETER_DEGREE:
            raise DegreeTooHigh(f"degree {nz[-1]} exceeds {MAX_FUETER_DEGREE}")
    lift = HolomorphicLift(m, n, h)
    lap = lift.coordinate_laplacian()
    out = FueterTransform(m, n, lap.exponents, lap.coeffs, domain or lift.domain)
    out.h = lift.h
    return out

