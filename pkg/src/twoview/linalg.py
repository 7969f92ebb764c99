"""Small fixed-size algebra: cross products, 3x3 SVD, Kronecker/vec identities.

Everything here is a pure function over float64 numpy arrays; the rest of the
pipeline builds on these primitives.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SingularDecomposition3",
    "cross",
    "kron",
    "skew",
    "svd3",
    "triple_expand",
    "unvec",
    "vec",
]


def cross(a, b) -> np.ndarray:
    """Cross product of two 3-vectors."""
    return np.cross(np.asarray(a, dtype=float), np.asarray(b, dtype=float))


def skew(v) -> np.ndarray:
    """Skew-symmetric matrix of v, so that skew(v) @ w == cross(v, w)."""
    x, y, z = np.asarray(v, dtype=float)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def triple_expand(a, b, c) -> tuple[np.ndarray, np.ndarray]:
    """Both triple products ((a x b) x c, a x (b x c)) via their dot expansions."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    left = np.dot(a, c) * b - np.dot(b, c) * a
    right = np.dot(a, c) * b - np.dot(a, b) * c
    return left, right


def vec(m) -> np.ndarray:
    """Column-stacking vectorization of a matrix."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError("vec expects a 2-D matrix")
    return m.reshape(-1, order="F")


def unvec(v, rows: int = 3) -> np.ndarray:
    """Inverse of vec; rebuilds a matrix with the given row count."""
    v = np.asarray(v, dtype=float)
    if v.size % rows:
        raise ValueError("vector length not divisible by row count")
    return v.reshape(rows, v.size // rows, order="F")


def kron(a, b) -> np.ndarray:
    """Kronecker product; satisfies vec(A @ B @ C) == kron(C.T, A) @ vec(B)."""
    return np.kron(np.asarray(a, dtype=float), np.asarray(b, dtype=float))


@dataclass(frozen=True)
class SingularDecomposition3:
    """Factors of M = U @ diag(sigma) @ V.T with sigma sorted descending."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def reassemble(self) -> np.ndarray:
        return (self.u * self.sigma) @ self.v.T


def svd3(m) -> SingularDecomposition3:
    """Singular value decomposition of a 3x3 matrix."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise ValueError("svd3 expects a 3x3 matrix")
    u, sigma, vt = np.linalg.svd(m)
    return SingularDecomposition3(u=u, sigma=sigma, v=vt.T)
