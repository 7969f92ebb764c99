"""Pick the physical pose out of the four candidates from vote counts alone."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .camera import CorrespondenceSet
from .decompose import PoseCandidate, PoseCandidateSet
from .errors import TooFewPoints
from .essential import _epipolar_rows
from .linalg import vec
from .reconstruct import dlt_triangulate

__all__ = [
    "CHEIRALITY",
    "IdentificationResult",
    "POSE_ONLY",
    "PoseOnlyResiduals",
    "cheirality_identify",
    "identify",
    "intersection_values",
    "pose_only_residuals",
    "same_side_values",
]

POSE_ONLY = "pose_only"
CHEIRALITY = "cheirality"


@dataclass(frozen=True)
class IdentificationResult:
    """Vote tallies and the winning candidate.

    s1 counts positive same-side values per rotation, s2 counts positive
    intersection values per translation; margins hold the summed vote values
    (positive-depth counts, for the cheirality method).  Low confidence shows
    up as near-split counts, never as an error.
    """

    chosen: PoseCandidate
    chosen_index: int
    s1: np.ndarray
    s2: np.ndarray
    margins_m1: np.ndarray
    margins_m2: np.ndarray
    method: str


def same_side_values(q, rotation, corr: CorrespondenceSet, rows=None) -> np.ndarray:
    """Per-pair same-side vote values x_right^T (Q Q^T R) x_left.

    Evaluated through the epipolar constraint rows so the matrix already built
    for solving Q can be reused.  The two decomposed rotations yield exactly
    negated value vectors.
    """
    if rows is None:
        rows = _epipolar_rows(corr)
    q = np.asarray(q, dtype=float)
    return rows @ vec(q @ q.T @ np.asarray(rotation, dtype=float))


def intersection_values(rotation, t_dir, corr: CorrespondenceSet) -> np.ndarray:
    """Per-pair intersection vote values |x| (x'.t) - |x'| (x . R^T t).

    Positive at the true pose with nonzero baseline; identical for the two
    paired rotations; exactly negated under t -> -t; near zero when the
    motion is (close to) a pure rotation.
    """
    t = np.asarray(t_dir, dtype=float)
    nl = np.sqrt(np.einsum("ij,ij->i", corr.x_left, corr.x_left))
    nr = np.sqrt(np.einsum("ij,ij->i", corr.x_right, corr.x_right))
    rt_t = np.asarray(rotation, dtype=float).T @ t
    return nl * (corr.x_right @ t) - nr * (corr.x_left @ rt_t)


def _argbest(counts, margins) -> int:
    # Strictly more positive votes wins; ties fall back to the larger summed
    # margin, then to candidate order.
    if counts[0] != counts[1]:
        return int(np.argmax(counts))
    if margins[0] != margins[1]:
        return int(np.argmax(margins))
    return 0


def _identify_full(cands: PoseCandidateSet, q, corr: CorrespondenceSet, rows=None):
    """identify() plus the per-pair norms and baseline projections, which the
    fused reconstruction path reuses."""
    if rows is None:
        rows = _epipolar_rows(corr)
    r1, r2 = cands.rotations
    m1_r1 = same_side_values(q, r1, corr, rows)
    m1_r2 = same_side_values(q, r2, corr, rows)
    s1 = np.array([int(np.sum(m1_r1 > 0)), int(np.sum(m1_r2 > 0))])
    margins1 = np.array([m1_r1.sum(), m1_r2.sum()])
    ri = _argbest(s1, margins1)
    # The intersection values do not depend on which paired rotation is used,
    # so one evaluation covers both translations via the sign flip.
    t1 = cands.translations[0]
    nl = np.sqrt(np.einsum("ij,ij->i", corr.x_left, corr.x_left))
    nr = np.sqrt(np.einsum("ij,ij->i", corr.x_right, corr.x_right))
    dot_right = corr.x_right @ t1
    dot_left = corr.x_left @ ((r1, r2)[ri].T @ t1)
    m2_t1 = nl * dot_right - nr * dot_left
    s2 = np.array([int(np.sum(m2_t1 > 0)), int(np.sum(m2_t1 < 0))])
    margins2 = np.array([m2_t1.sum(), -m2_t1.sum()])
    ti = _argbest(s2, margins2)
    index = 2 * ti + ri
    result = IdentificationResult(
        chosen=cands.candidates[index],
        chosen_index=index,
        s1=s1,
        s2=s2,
        margins_m1=margins1,
        margins_m2=margins2,
        method=POSE_ONLY,
    )
    return result, (nl, nr, dot_right, dot_left)


def identify(cands: PoseCandidateSet, q, corr: CorrespondenceSet, rows=None) -> IdentificationResult:
    """Vote-based disambiguation: the rotation with more positive same-side
    values and the translation with more positive intersection values win.

    Counting uses strict positivity with no epsilon band; callers wanting a
    confidence threshold can inspect the counts and margins themselves.
    """
    return _identify_full(cands, q, corr, rows)[0]


def cheirality_identify(cands: PoseCandidateSet, corr: CorrespondenceSet) -> IdentificationResult:
    """Baseline disambiguation: triangulate under every candidate and keep the
    one that puts the most points in front of both cameras."""
    if corr.n_points < 2:
        raise TooFewPoints("cheirality check needs at least 2 pairs")
    counts = np.empty(4, dtype=int)
    for i, cand in enumerate(cands.candidates):
        rec = dlt_triangulate(cand.rotation, cand.t_dir, corr)
        counts[i] = int(np.sum((rec.depth_left > 0) & (rec.depth_right > 0)))
    index = int(np.argmax(counts))
    s1 = np.array([max(counts[0], counts[2]), max(counts[1], counts[3])])
    s2 = np.array([max(counts[0], counts[1]), max(counts[2], counts[3])])
    return IdentificationResult(
        chosen=cands.candidates[index],
        chosen_index=index,
        s1=s1,
        s2=s2,
        margins_m1=s1.astype(float),
        margins_m2=s2.astype(float),
        method=CHEIRALITY,
    )


@dataclass(frozen=True)
class PoseOnlyResiduals:
    """Per-pair equality residuals plus the translation-free rank diagnostic."""

    same_side: np.ndarray
    intersection: np.ndarray
    coplanarity_rank_gap: float


def pose_only_residuals(rotation, t_dir, corr: CorrespondenceSet) -> PoseOnlyResiduals:
    """Residuals of the two equality constraints at a candidate pose.

    same_side: distance between the unit cross products of the baseline with
    each projection ray; 0 where the rays sit on the same side, 2 where
    exactly opposed (the twisted rotation), and defined as 0 below numerical
    support.  Note both cross products flip together under t -> -t, so this
    residual cannot tell the translation sign apart.

    intersection: absolute defect of the angle-sum identity
    ||x' x e|| ||x' x Rx|| = (x'.Rx)(x'.e) - |x'|^2 (x.R^T e).

    coplanarity_rank_gap: sigma3/sigma2 of the stacked cross products
    x'_i x R x_i, which vanishes when some translation direction makes them
    all coplanar.
    """
    r = np.asarray(rotation, dtype=float)
    e = np.asarray(t_dir, dtype=float)
    rx = corr.x_left @ r.T
    c_left = np.cross(e, rx)
    c_right = np.cross(e, corr.x_right)
    n_left = np.linalg.norm(c_left, axis=1)
    n_right = np.linalg.norm(c_right, axis=1)
    ok = (n_left > 1e-12) & (n_right > 1e-12)
    diff = (
        c_left / np.where(ok, n_left, 1.0)[:, None]
        - c_right / np.where(ok, n_right, 1.0)[:, None]
    )
    same_side = np.where(ok, np.linalg.norm(diff, axis=1), 0.0)

    nr = np.linalg.norm(corr.x_right, axis=1)
    cross_rl = np.cross(corr.x_right, rx)
    lhs = n_right * np.linalg.norm(cross_rl, axis=1)
    rhs = np.einsum("ij,ij->i", corr.x_right, rx) * (corr.x_right @ e) - nr**2 * (
        corr.x_left @ (r.T @ e)
    )
    intersection = np.abs(lhs - rhs)

    sing = np.linalg.svd(cross_rl, compute_uv=False)
    gap = float(sing[2] / sing[1]) if sing.size >= 3 and sing[1] > 0 else 0.0
    return PoseOnlyResiduals(
        same_side=same_side, intersection=intersection, coplanarity_rank_gap=gap
    )
