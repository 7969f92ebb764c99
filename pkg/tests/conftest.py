import numpy as np
import pytest

from twoview.harness import (
    ScenarioConfig,
    add_pixel_noise,
    default_intrinsics,
    generate_scene,
)


def make_scene(seed, alpha=0.5, n_pts=50, d=30.0, noise_px=0.0):
    """One synthetic scene; returns (world points, pose, correspondences)."""
    cfg = ScenarioConfig(d=d, n_pts=n_pts)
    rng = np.random.default_rng(seed)
    points, pose, corr = generate_scene(cfg, alpha, rng)
    if noise_px > 0:
        corr = add_pixel_noise(corr, noise_px, default_intrinsics(), rng)
    return points, pose, corr


@pytest.fixture
def intrinsics():
    return default_intrinsics()
