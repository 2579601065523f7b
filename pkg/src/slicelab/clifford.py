"""Dense arithmetic in the real Clifford algebra R_m (generators square to -1).

Elements are stored as a length ``2**m`` coefficient vector indexed by blade
bitmask: bit ``i - 1`` set means generator ``e_i`` occurs in the blade.  The
product of two blades is computed from the masks alone (see
:func:`blade_product`), so the whole kernel reduces to signed permutations of
coefficient arrays.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadProduct,
    BladeIndexError,
    DegenerateSpan,
    NotAdmissible,
    NotAnticommuting,
    NotInSpan,
    NotOrthogonal,
    SignatureMismatch,
)

MAX_GENERATORS = 12
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class AlgebraSignature:
    m: int

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or not 1 <= self.m <= MAX_GENERATORS:
            raise BladeIndexError(f"generator count must be in [1, {MAX_GENERATORS}], got {self.m!r}")

    @property
    def dim(self) -> int:
        return 1 << self.m


def _check_m(m: int) -> int:
    return AlgebraSignature(int(m)).m


def blade_mask(indices: Iterable[int], m: int) -> int:
    """Bitmask of the blade ``e_{h1} ... e_{hr}`` for strictly increasing indices."""
    mask = 0
    last = 0
    for i in indices:
        if not 1 <= i <= m:
            raise BladeIndexError(f"generator e{i} out of range for m={m}")
        if i <= last:
            raise BladeIndexError("blade indices must be strictly increasing")
        mask |= 1 << (i - 1)
        last = i
    return mask


def blade_indices(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i) for i in blade_indices(mask))


def _product_signs(a, b, m: int):
    """Sign of e_a e_b for (broadcast) integer masks a, b."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    swaps = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for i in range(m):
        swaps += ((b >> i) & 1) * np.bitwise_count(a >> (i + 1))
    swaps += np.bitwise_count(a & b)  # e_i e_i = -1 for each shared generator
    return np.where(swaps & 1, -1.0, 1.0)


def blade_product(m: int, a: int, b: int) -> tuple[int, int]:
    """Return ``(sign, mask)`` with ``e_a e_b = sign * e_mask``."""
    m = _check_m(m)
    top = 1 << m
    for mask in (a, b):
        if not 0 <= mask < top:
            raise BladeIndexError(f"blade mask {mask} out of range for m={m}")
    return int(_product_signs(a, b, m)), a ^ b


@lru_cache(maxsize=None)
def _left_signs(m: int, a: int) -> np.ndarray:
    out = _product_signs(a, np.arange(1 << m), m)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def _right_signs(m: int, b: int) -> np.ndarray:
    out = _product_signs(np.arange(1 << m), b, m)
    out.flags.writeable = False
    return out


def left_multiply(c: CliffordNumber, arr: np.ndarray) -> np.ndarray:
    """Left-multiply every length-2**m row of ``arr`` by ``c``."""
    arr = np.asarray(arr, dtype=float)
    m = c.m
    if arr.shape[-1] != 1 << m:
        raise SignatureMismatch(f"last axis {arr.shape[-1]} does not match 2**{m}")
    idx = np.arange(1 << m)
    out = np.zeros(np.broadcast_shapes(arr.shape), dtype=float)
    for a in np.flatnonzero(c.coeffs):
        out[..., a ^ idx] += c.coeffs[a] * _left_signs(m, int(a)) * arr
    return out


def right_multiply(arr: np.ndarray, c: CliffordNumber) -> np.ndarray:
    arr = np.asarray(arr, dtype=float)
    m = c.m
    if arr.shape[-1] != 1 << m:
        raise SignatureMismatch(f"last axis {arr.shape[-1]} does not match 2**{m}")
    idx = np.arange(1 << m)
    out = np.zeros(arr.shape, dtype=float)
    for b in np.flatnonzero(c.coeffs):
        out[..., idx ^ b] += c.coeffs[b] * _right_signs(m, int(b)) * arr
    return out


_BLADE_RE = re.compile(r"^e(\d+)$")


@dataclass(frozen=True, eq=False)
class CliffordNumber:
    """An element of R_m as a dense vector of blade coefficients."""

    m: int
    coeffs: np.ndarray

    def __post_init__(self):
        m = _check_m(self.m)
        c = np.array(self.coeffs, dtype=float).reshape(-1)
        if c.shape[0] != 1 << m:
            raise SignatureMismatch(f"expected {1 << m} coefficients, got {c.shape[0]}")
        c.flags.writeable = False
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", c)

    # constructors
    @classmethod
    def zero(cls, m: int) -> CliffordNumber:
        return cls(m, np.zeros(1 << _check_m(m)))

    @classmethod
    def scalar(cls, m: int, value: float) -> CliffordNumber:
        c = np.zeros(1 << _check_m(m))
        c[0] = value
        return cls(m, c)

    @classmethod
    def blade(cls, m: int, *indices: int, value: float = 1.0) -> CliffordNumber:
        """``value * e_{i1} e_{i2} ...``; indices may come in any order."""
        sign, mask = 1, 0
        for i in indices:
            s, mask = blade_product(m, mask, blade_mask([i], m))
            sign *= s
        c = np.zeros(1 << m)
        c[mask] = sign * value
        return cls(m, c)

    @classmethod
    def parse(cls, m: int, text: str) -> CliffordNumber:
        """Parse a single blade name such as ``"1"``, ``"e2"`` or ``"e13"`` (single-digit indices)."""
        text = text.strip()
        if text == "1":
            return cls.scalar(m, 1.0)
        match = _BLADE_RE.match(text)
        if not match:
            raise BladeIndexError(f"cannot parse blade name {text!r}")
        return cls.blade(m, *(int(ch) for ch in match.group(1)))

    # views
    @property
    def signature(self) -> AlgebraSignature:
        return AlgebraSignature(self.m)

    @property
    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def _coerce(self, other) -> CliffordNumber:
        if isinstance(other, CliffordNumber):
            if other.m != self.m:
                raise SignatureMismatch(f"m={self.m} vs m={other.m}")
            return other
        if isinstance(other, (int, float, np.integer, np.floating)):
            return CliffordNumber.scalar(self.m, float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CliffordNumber(self.m, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CliffordNumber(self.m, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return CliffordNumber(self.m, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, CliffordNumber):
            return gp(self, other)
        if isinstance(other, (int, float, np.integer, np.floating)):
            return CliffordNumber(self.m, self.coeffs * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return CliffordNumber(self.m, self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return CliffordNumber(self.m, self.coeffs / float(other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, CliffordNumber):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def allclose(self, other: CliffordNumber, atol: float = DEFAULT_TOL) -> bool:
        return self.m == other.m and bool(np.all(np.abs(self.coeffs - other.coeffs) <= atol))

    def __repr__(self):
        terms = [f"{c:+.6g}*{blade_name(k)}" for k, c in enumerate(self.coeffs) if c != 0]
        return f"CliffordNumber(m={self.m}, {' '.join(terms) or '0'})"


def gp(a: CliffordNumber, b: CliffordNumber) -> CliffordNumber:
    """Geometric (Clifford) product."""
    if a.m != b.m:
        raise SignatureMismatch(f"m={a.m} vs m={b.m}")
    if np.count_nonzero(a.coeffs) <= np.count_nonzero(b.coeffs):
        return CliffordNumber(a.m, left_multiply(a, b.coeffs))
    return CliffordNumber(a.m, right_multiply(a.coeffs, b))


def linear_combine(coeffs: Sequence[float], elements: Sequence[CliffordNumber]) -> CliffordNumber:
    if len(coeffs) != len(elements):
        raise SignatureMismatch(f"{len(coeffs)} coefficients for {len(elements)} elements")
    if not elements:
        raise SignatureMismatch("cannot combine an empty list")
    m = elements[0].m
    if any(e.m != m for e in elements):
        raise SignatureMismatch("elements do not share one signature")
    stacked = np.stack([e.coeffs for e in elements])
    return CliffordNumber(m, np.asarray(coeffs, dtype=float) @ stacked)


def inner(a: CliffordNumber, b: CliffordNumber) -> float:
    """Euclidean inner product of blade coefficients."""
    if a.m != b.m:
        raise SignatureMismatch(f"m={a.m} vs m={b.m}")
    return float(a.coeffs @ b.coeffs)


def is_admissible_unit(a: CliffordNumber, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``a*a == -1``, the scalar part is 0 and ``|a| == 1`` (each within tol)."""
    if abs(a.scalar_part) > tol or abs(a.norm() - 1.0) > tol:
        return False
    sq = gp(a, a)
    return sq.allclose(CliffordNumber.scalar(a.m, -1.0), atol=tol)


class AdmissibleUnit(CliffordNumber):
    """A validated unit-norm, scalar-free square root of -1.

    Arithmetic on an AdmissibleUnit returns plain :class:`CliffordNumber`.
    """

    def __init__(self, m, coeffs, tol: float = DEFAULT_TOL):
        super().__init__(m, coeffs)
        if not is_admissible_unit(self, tol):
            raise NotAdmissible(f"{CliffordNumber.__repr__(self)} is not an admissible imaginary unit")

    @classmethod
    def of(cls, a: CliffordNumber, tol: float = DEFAULT_TOL) -> AdmissibleUnit:
        if isinstance(a, AdmissibleUnit):
            return a
        return cls(a.m, a.coeffs, tol=tol)

    def __repr__(self):
        return "Admissible" + CliffordNumber.__repr__(self)


@dataclass(frozen=True, eq=False)
class QuaternionFrame:
    """Orthonormal tuple (1, I, J, K=IJ) spanning a quaternion subalgebra."""

    I: AdmissibleUnit
    J: AdmissibleUnit
    K: CliffordNumber

    @property
    def m(self) -> int:
        return self.I.m

    def basis(self) -> np.ndarray:
        """Rows 1, I, J, K as a (4, 2**m) array."""
        one = CliffordNumber.scalar(self.m, 1.0)
        return np.stack([one.coeffs, self.I.coeffs, self.J.coeffs, self.K.coeffs])

    def units(self) -> tuple[CliffordNumber, CliffordNumber, CliffordNumber]:
        return self.I, self.J, self.K

    def sphere_point(self, u: Sequence[float]) -> CliffordNumber:
        """``u1 I + u2 J + u3 K`` for a real 3-vector ``u``."""
        u = np.asarray(u, dtype=float)
        return CliffordNumber(self.m, u @ self.basis()[1:])

    def sign_frames(self) -> tuple[QuaternionFrame, ...]:
        """Frames (I,J), (I,-J), (-I,J), (-I,-J) in that order."""
        return tuple(_unchecked_frame(si * self.I, sj * self.J) for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)))

    def rotated(self, q: np.ndarray, tol: float = DEFAULT_TOL) -> QuaternionFrame:
        """Frame whose (I', J', K') are the columns of (I, J, K) @ q, q in SO(3)."""
        q = np.asarray(q, dtype=float)
        units = self.basis()[1:]
        new = q.T @ units
        return make_frame(CliffordNumber(self.m, new[0]), CliffordNumber(self.m, new[1]), tol)


def _unchecked_frame(I: CliffordNumber, J: CliffordNumber) -> QuaternionFrame:
    return QuaternionFrame(AdmissibleUnit.of(I, tol=1e-6), AdmissibleUnit.of(J, tol=1e-6), gp(I, J))


def make_frame(I: CliffordNumber, J: CliffordNumber, tol: float = DEFAULT_TOL) -> QuaternionFrame:
    """Validate ``(I, J)`` and build the frame with ``K = IJ``."""
    if I.m != J.m:
        raise SignatureMismatch(f"m={I.m} vs m={J.m}")
    for name, u in (("I", I), ("J", J)):
        if not is_admissible_unit(u, tol):
            raise NotAdmissible(f"{name} is not an admissible imaginary unit")
    if abs(inner(I, J)) > tol:
        raise NotOrthogonal(f"<I,J> = {inner(I, J):.3g}")
    K = gp(I, J)
    if not K.allclose(-gp(J, I), atol=tol):
        raise NotAnticommuting("IJ != -JI")
    if not is_admissible_unit(K, tol) or max(abs(inner(I, K)), abs(inner(J, K))) > tol:
        raise BadProduct("K = IJ is not an admissible unit orthogonal to I and J")
    return QuaternionFrame(AdmissibleUnit.of(I, tol), AdmissibleUnit.of(J, tol), K)


def canonical_sign(c: np.ndarray, rel_tie: float = 1e-12) -> float:
    """+1 or -1 so that the largest-magnitude coefficient becomes positive.

    Ties (within ``rel_tie`` relative) go to the lowest blade index.
    """
    mags = np.abs(c)
    top = mags.max()
    if top == 0:
        return 1.0
    k = int(np.flatnonzero(mags >= top * (1 - rel_tie))[0])
    return 1.0 if c[k] > 0 else -1.0


def complete_frame_in_span(frame: QuaternionFrame, H: CliffordNumber, tol: float = DEFAULT_TOL) -> AdmissibleUnit:
    """Pick J1 in span{I, J, K} with (H, J1) a valid frame.

    Gram-Schmidt of the candidates (J, K, I) against H; the first candidate
    that survives is normalized and sign-fixed by :func:`canonical_sign`.
    """
    units = frame.basis()[1:]
    h = units @ H.coeffs
    if np.linalg.norm(H.coeffs - h @ units) > tol:
        raise NotInSpan("H is not in span{I, J, IJ} of the frame")
    if abs(np.linalg.norm(h) - 1.0) > tol:
        raise NotAdmissible("H is not unit norm")
    h = h / np.linalg.norm(h)
    for cand in (1, 2, 0):
        w = np.zeros(3)
        w[cand] = 1.0
        w -= (w @ h) * h
        size = np.linalg.norm(w)
        if size > 1e-4:
            coeffs = (w / size) @ units
            coeffs *= canonical_sign(coeffs)
            J1 = CliffordNumber(frame.m, coeffs)
            make_frame(H, J1, tol)
            return AdmissibleUnit.of(J1, tol)
    raise DegenerateSpan("no Gram-Schmidt candidate survived")


def random_admissible_in_frame(frame: QuaternionFrame, rng: np.random.Generator) -> AdmissibleUnit:
    u = rng.standard_normal(3)
    u /= np.linalg.norm(u)
    return AdmissibleUnit.of(frame.sphere_point(u))


def standard_frame(m: int) -> QuaternionFrame:
    """The frame (e1, e2)."""
    return make_frame(CliffordNumber.blade(m, 1), CliffordNumber.blade(m, 2))


@dataclass(frozen=True, eq=False)
class CliffordVector:
    """An n-tuple of Clifford numbers stored as an (n, 2**m) array."""

    m: int
    coeffs: np.ndarray

    def __post_init__(self):
        m = _check_m(self.m)
        c = np.array(self.coeffs, dtype=float)
        if c.ndim == 1:
            c = c.reshape(1, -1)
        if c.ndim != 2 or c.shape[1] != 1 << m or c.shape[0] < 1:
            raise SignatureMismatch(f"expected shape (n, {1 << m}), got {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_entries(cls, entries: Sequence[CliffordNumber]) -> CliffordVector:
        if not entries:
            raise SignatureMismatch("empty vector")
        m = entries[0].m
        if any(e.m != m for e in entries):
            raise SignatureMismatch("entries do not share one signature")
        return cls(m, np.stack([e.coeffs for e in entries]))

    @classmethod
    def from_real(cls, m: int, values) -> CliffordVector:
        values = np.atleast_1d(np.asarray(values, dtype=float))
        c = np.zeros((values.shape[0], 1 << _check_m(m)))
        c[:, 0] = values
        return cls(m, c)

    def __len__(self):
        return self.coeffs.shape[0]

    def __getitem__(self, i) -> CliffordNumber:
        return CliffordNumber(self.m, self.coeffs[i])

    @property
    def entries(self) -> list[CliffordNumber]:
        return [self[i] for i in range(len(self))]

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def lmul(self, c: CliffordNumber) -> CliffordVector:
        """Entrywise left multiplication ``c * v_i``."""
        return CliffordVector(self.m, left_multiply(c, self.coeffs))

    def _check(self, other):
        if not isinstance(other, CliffordVector):
            return NotImplemented
        if other.m != self.m or len(other) != len(self):
            raise SignatureMismatch("vectors differ in signature or length")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CliffordVector(self.m, self.coeffs + other.coeffs)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CliffordVector(self.m, self.coeffs - other.coeffs)

    def __neg__(self):
        return CliffordVector(self.m, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return CliffordVector(self.m, self.coeffs * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CliffordVector):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def allclose(self, other: CliffordVector, atol: float = DEFAULT_TOL) -> bool:
        return self.coeffs.shape == other.coeffs.shape and bool(np.all(np.abs(self.coeffs - other.coeffs) <= atol))

    def __repr__(self):
        return f"CliffordVector(m={self.m}, n={len(self)})"
