"""Linear estimation of the essential matrix and its solution-space diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .camera import CorrespondenceSet
from .errors import DegenerateConfiguration, TooFewPoints
from .linalg import SingularDecomposition3, svd3, unvec, vec

__all__ = [
    "EssentialEstimate",
    "L_NULL_VECTORS",
    "MIN_POINTS",
    "build_constraint_matrix",
    "build_l_matrix",
    "solve_linear",
]

MIN_POINTS = 8

# Rank threshold (relative) below which the constraint system stops pinning
# down an essential matrix.  Pure rotation legitimately drops the rank to 6
# (any skew factor fits), so only ranks below 6 are treated as degenerate.
_RANK_TOL = 1e-9

# Exact null directions of the 12-column depth system: three of its columns
# duplicate three others, so these cancellations hold structurally.
L_NULL_VECTORS = np.array(
    [
        [0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0],
    ],
    dtype=float,
)


@dataclass(frozen=True)
class EssentialEstimate:
    """Unit-Frobenius essential solution with singular values (s, s, 0)."""

    q: np.ndarray
    svd: SingularDecomposition3
    a_norm: float


def _epipolar_rows(corr: CorrespondenceSet) -> np.ndarray:
    # Row i is the Kronecker product of the left ray with the right ray, so
    # rows @ vec(Q) collects the residuals x_right^T Q x_left.
    m = corr.n_points
    return (corr.x_left[:, :, None] * corr.x_right[:, None, :]).reshape(m, 9)


def build_constraint_matrix(corr: CorrespondenceSet) -> np.ndarray:
    """Epipolar constraint rows, one per pair; requires at least 8 pairs."""
    if corr.n_points < MIN_POINTS:
        raise TooFewPoints(f"need at least {MIN_POINTS} pairs, got {corr.n_points}")
    return _epipolar_rows(corr)


def _isotropic_scales(corr: CorrespondenceSet) -> tuple[float, float]:
    rl = np.hypot(corr.x_left[:, 0], corr.x_left[:, 1]).mean()
    rr = np.hypot(corr.x_right[:, 0], corr.x_right[:, 1]).mean()
    return np.sqrt(2.0) / max(rl, 1e-12), np.sqrt(2.0) / max(rr, 1e-12)


def solve_linear(corr: CorrespondenceSet, rows=None, rescale: bool = False) -> EssentialEstimate:
    """Unit-norm least-squares essential solution.

    The minimizer of ||rows @ vec(Q)|| over unit vec(Q) is taken from the full
    singular decomposition of the stacked system and then projected to the
    closest matrix with singular values (s, s, 0), renormalized to unit
    Frobenius norm.

    rows: optional precomputed constraint matrix, reused by the vote stage.
    rescale: isotropically rescale ray x/y components before solving; only
    useful for badly scaled inputs, off by default.
    """
    dl = dr = None
    if rescale:
        sl, sr = _isotropic_scales(corr)
        dl = np.array([sl, sl, 1.0])
        dr = np.array([sr, sr, 1.0])
        scaled = CorrespondenceSet(x_left=corr.x_left * dl, x_right=corr.x_right * dr)
        rows = build_constraint_matrix(scaled)
    elif rows is None:
        rows = build_constraint_matrix(corr)
    m = rows.shape[0]
    sing, vt = np.linalg.svd(rows, full_matrices=m < 9)[1:]
    if sing[5] <= _RANK_TOL * sing[0]:
        raise DegenerateConfiguration("constraint matrix rank below 6")
    q = unvec(vt[-1])
    if rescale:
        q = (q * dl) * dr[:, None]
    # Closest rank-2 matrix with equal leading singular values.
    u, s, vt3 = np.linalg.svd(q)
    sbar = 0.5 * (s[0] + s[1])
    q = (u[:, :2] * sbar) @ vt3[:2]
    q = q / np.linalg.norm(q)
    return EssentialEstimate(
        q=q, svd=svd3(q), a_norm=float(np.sqrt(0.5) * np.linalg.norm(vec(q)))
    )


def build_l_matrix(corr: CorrespondenceSet, inverse_depths) -> np.ndarray:
    """12-column expansion of the imaging relation over left rays and inverse depths.

    Diagnostic only: L_NULL_VECTORS always lie in its null space and its rank
    never exceeds 9 however many pairs are stacked.
    """
    s = np.asarray(inverse_depths, dtype=float).reshape(-1)
    if s.shape[0] != corr.n_points:
        raise ValueError("one inverse depth per pair required")
    ext = np.concatenate([corr.x_left, s[:, None]], axis=1)
    return (corr.x_left[:, :, None] * ext[:, None, :]).reshape(corr.n_points, 12)
