"""File formats: correspondence/intrinsics parsing and the estimate report."""

from __future__ import annotations

import json

import numpy as np

from .camera import CameraIntrinsics, CorrespondenceSet
from .errors import ParseError
from .pipeline import EstimateOutcome

__all__ = [
    "ESTIMATE_SCHEMA",
    "POINTS_CSV_HEADER",
    "POINTS_CSV_SCHEMA",
    "build_report",
    "read_correspondences",
    "read_intrinsics",
    "read_key_values",
    "report_json",
    "report_points_csv",
]

ESTIMATE_SCHEMA = "twoview-estimate-v1"
POINTS_CSV_SCHEMA = "twoview-points-v1"
POINTS_CSV_HEADER = "index,depth_left_ratio,depth_right_ratio,x,y,z,valid"


def read_key_values(path) -> dict:
    """Parse a flat key=value file; '#' starts a comment."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def read_intrinsics(path) -> CameraIntrinsics:
    """Intrinsics from a key=value file with fx, fy, cx, cy."""
    values = read_key_values(path)
    missing = {"fx", "fy", "cx", "cy"} - values.keys()
    if missing:
        raise ParseError(f"{path}: missing intrinsics {sorted(missing)}")
    try:
        fields = {k: float(values[k]) for k in ("fx", "fy", "cx", "cy")}
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    try:
        return CameraIntrinsics(**fields)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def read_correspondences(
    path, intrinsics: CameraIntrinsics | None = None, normalized: bool = False
) -> CorrespondenceSet:
    """Correspondences from a text file, one 'x1 y1 x2 y2' pair per line.

    Coordinates are pixels unless normalized is set, in which case they are
    calibrated image coordinates and no intrinsics are needed.
    """
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ParseError(f"{path}:{lineno}: expected 'x1 y1 x2 y2'")
            try:
                rows.append([float(p) for p in parts])
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise ParseError(f"{path}: no correspondences found")
    arr = np.asarray(rows)
    if normalized:
        ones = np.ones((arr.shape[0], 1))
        return CorrespondenceSet(
            x_left=np.concatenate([arr[:, :2], ones], axis=1),
            x_right=np.concatenate([arr[:, 2:], ones], axis=1),
        )
    if intrinsics is None:
        raise ParseError("pixel input needs an intrinsics file (or pass --normalized)")
    return CorrespondenceSet.from_pixels(arr[:, :2], arr[:, 2:], intrinsics)


def build_report(outcome: EstimateOutcome) -> dict:
    """JSON-ready report of one estimation run."""
    ident = outcome.identification
    recon = outcome.reconstruction
    label = outcome.classification
    return {
        "schema": ESTIMATE_SCHEMA,
        "n_points": int(recon.depth_left.shape[0]),
        "rotation": [float(v) for v in ident.chosen.rotation.reshape(-1)],
        "translation": [float(v) for v in ident.chosen.t_dir],
        "votes": {
            "s1": [int(v) for v in ident.s1],
            "s2": [int(v) for v in ident.s2],
        },
        "margins": {
            "m1": [float(v) for v in ident.margins_m1],
            "m2": [float(v) for v in ident.margins_m2],
        },
        "method": ident.method,
        "pri": label.pri,
        "m3": label.m3,
        "motion_label": label.label,
        "delta_pri": label.delta_pri,
        "delta_theta": label.delta_theta,
        "points": [
            {
                "depth_left_ratio": float(recon.depth_left[i]),
                "depth_right_ratio": float(recon.depth_right[i]),
                "point": [float(v) for v in recon.points[i]],
                "valid": bool(recon.valid[i]),
            }
            for i in range(recon.depth_left.shape[0])
        ],
        "timings_ns": {
            "identify": int(outcome.t_identify_ns),
            "reconstruct": int(outcome.t_reconstruct_ns),
        },
    }


def _json_safe(obj):
    # JSON has no inf/nan literals; the report keeps them as strings.
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


def report_json(report: dict) -> str:
    return json.dumps(_json_safe(report), indent=2)


def report_points_csv(report: dict) -> str:
    """Flatten the per-point section of a report into CSV."""
    lines = [f"# {POINTS_CSV_SCHEMA}", POINTS_CSV_HEADER]
    for i, p in enumerate(report["points"]):
        x, y, z = p["point"]
        lines.append(
            ",".join(
                [
                    str(i),
                    repr(float(p["depth_left_ratio"])),
                    repr(float(p["depth_right_ratio"])),
                    repr(float(x)),
                    repr(float(y)),
                    repr(float(z)),
                    "1" if p["valid"] else "0",
                ]
            )
        )
    return "\n".join(lines) + "\n"
