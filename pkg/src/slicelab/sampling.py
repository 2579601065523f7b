"""Seeded random draws shared by the checkers."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .clifford import CliffordNumber, QuaternionFrame, make_frame


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_orthogonal(rng: np.random.Generator, proper: bool = False) -> np.ndarray:
    """Haar-distributed 3x3 orthogonal matrix.

    Orthonormalizes a standard-normal matrix, then flips one column with
    probability 1/2 so reflections (det -1) are covered.  ``proper=True``
    forces det +1 instead.
    """
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if rng.random() < 0.5:
        q[:, 0] = -q[:, 0]
    if proper and np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_frame(m: int, rng: np.random.Generator) -> QuaternionFrame:
    """A random frame (I, J) built from two orthonormal grade-1 elements.

    I and J are the first two columns of a random rotation of the generator
    space; the resulting (I, J, IJ) is then mixed by a random SO(3) matrix so
    that I and J are generally not pure vectors.
    """
    if m < 2:
        raise ValueError("a quaternionic frame needs m >= 2")
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    q = q * np.sign(np.diag(r))
    dim = 1 << m
    gens = np.zeros((m, dim))
    for i in range(m):
        gens[i, 1 << i] = 1.0
    I = CliffordNumber(m, q[:, 0] @ gens)
    J = CliffordNumber(m, q[:, 1] @ gens)
    return make_frame(I, J).rotated(random_orthogonal(rng, proper=True))


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SLICELAB_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    """Order-preserving map, threaded when SLICELAB_THREADS > 1."""
    workers = thread_count()
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
