"""Enumerate the four pose candidates behind an essential estimate."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientEssential
from .essential import EssentialEstimate

__all__ = ["PoseCandidate", "PoseCandidateSet", "W1", "W2", "decompose"]

# Quarter turn about z and its transpose: the two rotation factors that remain
# once det(U V) = +1 is enforced.
W1 = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
W2 = W1.T


@dataclass(frozen=True)
class PoseCandidate:
    rotation: np.ndarray
    t_dir: np.ndarray


@dataclass(frozen=True)
class PoseCandidateSet:
    """Fixed-order candidates [R1|t1], [R2|t1], [R1|t2], [R2|t2] with t2 = -t1.

    u_flipped records whether U's last column was negated to reach
    det(U V) = +1; w_matrices records the rotation factors that pairing uses.
    """

    candidates: tuple
    u_flipped: bool
    w_matrices: tuple

    @property
    def rotations(self):
        return self.candidates[0].rotation, self.candidates[1].rotation

    @property
    def translations(self):
        return self.candidates[0].t_dir, self.candidates[2].t_dir


def decompose(est: EssentialEstimate) -> PoseCandidateSet:
    """All rotation/unit-translation pairs consistent with the estimate.

    The last column of U is sign-flipped when needed so that det(U V) = +1,
    which keeps exactly the two proper-rotation branches; the flip never
    changes U diag(s, s, 0) V^T itself.  Under pure rotation the translation
    directions are still unit vectors but carry no information.
    """
    u = est.svd.u
    v = est.svd.v
    sigma = est.svd.sigma
    if sigma[1] <= 1e-12 * sigma[0]:
        raise RankDeficientEssential("needs two non-vanishing singular values")
    flipped = bool(np.linalg.det(u @ v.T) < 0)
    if flipped:
        u = u.copy()
        u[:, 2] = -u[:, 2]
    r1 = u @ W1.T @ v.T
    r2 = u @ W2.T @ v.T
    t1 = u[:, 2].copy()
    candidates = (
        PoseCandidate(r1, t1),
        PoseCandidate(r2, t1),
        PoseCandidate(r1, -t1),
        PoseCandidate(r2, -t1),
    )
    return PoseCandidateSet(candidates=candidates, u_flipped=flipped, w_matrices=(W1, W2))
