"""Depth recovery from an identified pose: closed form and a DLT baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .camera import CorrespondenceSet

__all__ = ["PARALLEL_TOL", "ReconstructionResult", "analytic_depths", "dlt_triangulate"]

# Pairs whose rays come this close to parallel (relative to both ray norms)
# are flagged instead of producing unbounded depths.
PARALLEL_TOL = 1e-9


@dataclass(frozen=True)
class ReconstructionResult:
    """Per-pair depths in units of the baseline length, plus left-frame points."""

    depth_left: np.ndarray
    depth_right: np.ndarray
    points: np.ndarray
    valid: np.ndarray


def _analytic_core(r, e, corr, nl_sq, nr_sq, dot_right, dot_left) -> ReconstructionResult:
    # dot_right = x_right . e and dot_left = x_left . R^T e, possibly computed
    # for -e; only their squares enter, so the sign does not matter.
    xl = corr.x_left
    xr = corr.x_right
    rx = xl @ r.T
    a0, a1, a2 = xr[:, 0], xr[:, 1], xr[:, 2]
    b0, b1, b2 = rx[:, 0], rx[:, 1], rx[:, 2]
    c0 = a1 * b2 - a2 * b1
    c1 = a2 * b0 - a0 * b2
    c2 = a0 * b1 - a1 * b0
    denom_sq = c0 * c0 + c1 * c1 + c2 * c2
    denom = np.sqrt(denom_sq)
    num_left = np.sqrt(np.maximum(nr_sq - dot_right * dot_right, 0.0))
    num_right = np.sqrt(np.maximum(nl_sq - dot_left * dot_left, 0.0))
    valid = denom_sq > PARALLEL_TOL**2 * (nl_sq * nr_sq)
    with np.errstate(divide="ignore", invalid="ignore"):
        depth_left = num_left / denom
        depth_right = num_right / denom
        points = 0.5 * (depth_left[:, None] * xl + (depth_right[:, None] * xr - e) @ r)
    return ReconstructionResult(depth_left, depth_right, points, valid)


def analytic_depths(rotation, t_dir, corr: CorrespondenceSet) -> ReconstructionResult:
    """Closed-form depth ratios from ray/baseline cross-product norms.

    Meaningful only at the correct pose: the ratios are norm quotients and
    carry no sign, so they cannot express a point behind a camera.  The
    returned point averages the two single-view back-projections in the left
    frame.  Pairs with (near-)parallel rays -- every pair, under pure
    rotation -- are flagged invalid.

    The baseline cross-product norms use ||e x v||^2 = ||v||^2 - (v.e)^2 for
    the unit baseline e; the ray-ray cross product in the denominator is
    evaluated directly because it is the quantity that degenerates.
    """
    r = np.asarray(rotation, dtype=float)
    e = np.asarray(t_dir, dtype=float)
    nl_sq = np.einsum("ij,ij->i", corr.x_left, corr.x_left)
    nr_sq = np.einsum("ij,ij->i", corr.x_right, corr.x_right)
    return _analytic_core(
        r, e, corr, nl_sq, nr_sq, corr.x_right @ e, corr.x_left @ (r.T @ e)
    )


def dlt_triangulate(rotation, t_dir, corr: CorrespondenceSet) -> ReconstructionResult:
    """Homogeneous linear triangulation under cameras [I|0] and [R|t].

    Depths keep their signs so callers can run positive-depth checks; points
    whose homogeneous scale vanishes are flagged invalid.
    """
    r = np.asarray(rotation, dtype=float)
    t = np.asarray(t_dir, dtype=float)
    m = corr.n_points
    xp = corr.x_right[:, 0]
    yp = corr.x_right[:, 1]
    p2 = np.concatenate([r, t[:, None]], axis=1)
    a = np.zeros((m, 4, 4))
    a[:, 0, 0] = -1.0
    a[:, 0, 2] = corr.x_left[:, 0]
    a[:, 1, 1] = -1.0
    a[:, 1, 2] = corr.x_left[:, 1]
    a[:, 2] = xp[:, None] * p2[2] - p2[0]
    a[:, 3] = yp[:, None] * p2[2] - p2[1]
    vt = np.linalg.svd(a)[2]
    hom = vt[:, -1, :]
    w = hom[:, 3]
    scale_ok = np.abs(w) > 1e-12 * np.linalg.norm(hom, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        points = hom[:, :3] / w[:, None]
    depth_left = points[:, 2]
    depth_right = points @ r[2] + t[2]
    valid = scale_ok & (depth_left > 0) & (depth_right > 0)
    return ReconstructionResult(depth_left, depth_right, points, valid)
