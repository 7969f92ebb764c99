"""Pure-rotation detection from intersection-vote magnitudes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .camera import CorrespondenceSet
from .identify import intersection_values

__all__ = [
    "DEFAULT_DELTA_PRI",
    "GENERAL_MOTION",
    "MotionClassification",
    "PURE_ROTATION",
    "classify",
    "compute_m3",
    "compute_pri",
]

PURE_ROTATION = "pure_rotation"
GENERAL_MOTION = "general_motion"
DEFAULT_DELTA_PRI = 0.015


@dataclass(frozen=True)
class MotionClassification:
    pri: float
    m3: float
    label: str
    delta_pri: float
    delta_theta: float | None


def compute_pri(rotation, t_dir, corr: CorrespondenceSet, ray_normalized: bool = True) -> float:
    """Mean absolute intersection value; near zero only under pure rotation.

    With ray_normalized (the default) each per-pair value is divided by both
    ray norms, which makes the index dimensionless and lets one threshold
    transfer across scenes; the raw vote values are available for comparison.
    The index is identical for the two opposite translation candidates.
    """
    t = np.asarray(t_dir, dtype=float)
    if ray_normalized:
        nl = np.linalg.norm(corr.x_left, axis=1)
        nr = np.linalg.norm(corr.x_right, axis=1)
        rt_t = np.asarray(rotation, dtype=float).T @ t
        vals = (corr.x_right @ t) / nr - (corr.x_left @ rt_t) / nl
    else:
        vals = intersection_values(rotation, t, corr)
    return float(np.mean(np.abs(vals)))


def compute_m3(rotation, corr: CorrespondenceSet) -> float:
    """Mean sine of the angle between each right ray and the rotated left ray.

    Zero under pure rotation, but also small for distant scenes with genuine
    translation, which is why it only annotates the classification.
    """
    rx = corr.x_left @ np.asarray(rotation, dtype=float).T
    num = np.linalg.norm(np.cross(corr.x_right, rx), axis=1)
    nl = np.linalg.norm(corr.x_left, axis=1)
    nr = np.linalg.norm(corr.x_right, axis=1)
    return float(np.mean(num / (nl * nr)))


def classify(
    rotation,
    t_dir,
    corr: CorrespondenceSet,
    delta_pri: float = DEFAULT_DELTA_PRI,
    delta_theta: float | None = None,
    ray_normalized: bool = True,
) -> MotionClassification:
    """Label the motion pure rotation exactly when the index is below delta_pri.

    delta_theta is echoed into the result for reporting only; the sine-based
    mean is too scene-dependent to drive the label and has no safe default.
    """
    pri = compute_pri(rotation, t_dir, corr, ray_normalized=ray_normalized)
    m3 = compute_m3(rotation, corr)
    label = PURE_ROTATION if pri < delta_pri else GENERAL_MOTION
    return MotionClassification(
        pri=pri, m3=m3, label=label, delta_pri=delta_pri, delta_theta=delta_theta
    )
