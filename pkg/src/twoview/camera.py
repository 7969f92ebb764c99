"""Pinhole model, two-view projection and normalized image coordinates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveDepth

__all__ = [
    "CameraIntrinsics",
    "CorrespondenceSet",
    "Pose",
    "normalized_to_pixel",
    "pixel_to_normalized",
    "project_pair",
]


@dataclass(frozen=True)
class CameraIntrinsics:
    """Zero-skew pinhole intrinsics, in pixels."""

    fx: float
    fy: float
    cx: float
    cy: float

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise ValueError("focal lengths must be positive")

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.fx, 0.0, self.cx], [0.0, self.fy, self.cy], [0.0, 0.0, 1.0]]
        )


def pixel_to_normalized(pixels, intrinsics: CameraIntrinsics) -> np.ndarray:
    """Map pixel coordinates (..., 2) to normalized homogeneous rays (..., 3)."""
    p = np.asarray(pixels, dtype=float)
    x = (p[..., 0] - intrinsics.cx) / intrinsics.fx
    y = (p[..., 1] - intrinsics.cy) / intrinsics.fy
    return np.stack([x, y, np.ones_like(x)], axis=-1)


def normalized_to_pixel(points, intrinsics: CameraIntrinsics) -> np.ndarray:
    """Inverse of pixel_to_normalized for (..., 3) rays with nonzero depth."""
    q = np.asarray(points, dtype=float)
    x = q[..., 0] / q[..., 2]
    y = q[..., 1] / q[..., 2]
    return np.stack(
        [intrinsics.fx * x + intrinsics.cx, intrinsics.fy * y + intrinsics.cy],
        axis=-1,
    )


@dataclass(frozen=True)
class Pose:
    """Rigid map taking left-camera coordinates into right-camera coordinates."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rotation, dtype=float)
        t = np.asarray(self.translation, dtype=float).reshape(3)
        if r.shape != (3, 3):
            raise ValueError("rotation must be 3x3")
        if (
            np.abs(r.T @ r - np.eye(3)).max() > 1e-10
            or abs(np.linalg.det(r) - 1.0) > 1e-10
        ):
            raise ValueError("rotation must be proper orthonormal")
        if not np.all(np.isfinite(t)):
            raise ValueError("translation must be finite")
        object.__setattr__(self, "rotation", r)
        object.__setattr__(self, "translation", t)


def project_pair(point, pose: Pose, intrinsics: CameraIntrinsics):
    """Project one world point (left-camera frame) into both views.

    Returns (left pixel, right pixel, left normalized, right normalized).
    Raises NonPositiveDepth when the point sits behind either camera.
    """
    xw = np.asarray(point, dtype=float).reshape(3)
    xw_right = pose.rotation @ xw + pose.translation
    if xw[2] <= 0 or xw_right[2] <= 0:
        raise NonPositiveDepth(
            f"depths must be positive, got {xw[2]:.6g} and {xw_right[2]:.6g}"
        )
    left = xw / xw[2]
    right = xw_right / xw_right[2]
    return (
        normalized_to_pixel(left, intrinsics),
        normalized_to_pixel(right, intrinsics),
        left,
        right,
    )


@dataclass
class CorrespondenceSet:
    """Paired normalized rays of the two views, optionally with pixel originals.

    Rays are (m, 3) arrays whose third coordinate must be exactly 1; norms are
    computed on demand by consumers.
    """

    x_left: np.ndarray
    x_right: np.ndarray
    pixels_left: np.ndarray | None = None
    pixels_right: np.ndarray | None = None

    def __post_init__(self):
        xl = np.atleast_2d(np.asarray(self.x_left, dtype=float))
        xr = np.atleast_2d(np.asarray(self.x_right, dtype=float))
        if xl.ndim != 2 or xl.shape[1] != 3 or xl.shape != xr.shape or xl.shape[0] < 1:
            raise ValueError("expected matching (m, 3) arrays with m >= 1")
        if not (np.all(np.isfinite(xl)) and np.all(np.isfinite(xr))):
            raise ValueError("correspondences must be finite")
        if np.any(xl[:, 2] != 1.0) or np.any(xr[:, 2] != 1.0):
            raise ValueError("normalized points must have third coordinate exactly 1")
        self.x_left = xl
        self.x_right = xr
        for name in ("pixels_left", "pixels_right"):
            px = getattr(self, name)
            if px is not None:
                px = np.atleast_2d(np.asarray(px, dtype=float))
                if px.shape != (xl.shape[0], 2):
                    raise ValueError(f"{name} must be (m, 2)")
                setattr(self, name, px)

    @property
    def n_points(self) -> int:
        return self.x_left.shape[0]

    @classmethod
    def from_pixels(cls, pixels_left, pixels_right, intrinsics: CameraIntrinsics):
        pl = np.atleast_2d(np.asarray(pixels_left, dtype=float))
        pr = np.atleast_2d(np.asarray(pixels_right, dtype=float))
        return cls(
            x_left=pixel_to_normalized(pl, intrinsics),
            x_right=pixel_to_normalized(pr, intrinsics),
            pixels_left=pl,
            pixels_right=pr,
        )
