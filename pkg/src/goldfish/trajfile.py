"""Trajectory file formats: CSV and JSON, lossless round trips.

CSV layout: one row per sample time, header ``t,z1_re,z1_im,...``, floats
printed with 17 significant digits so parsing reproduces the doubles
bit-for-bit.  The JSON layout carries the same data plus the closure
permutation when one was recorded.
"""

from __future__ import annotations

import json

import numpy as np

from .model import Trajectory


def _fmt(x: float) -> str:
    return format(x, ".17g")


def trajectory_to_csv(traj: Trajectory) -> str:
    n = traj.n
    header = "t," + ",".join(f"z{j}_re,z{j}_im" for j in range(1, n + 1))
    lines = [header]
    for t, row in zip(traj.times, traj.samples):
        cells = [_fmt(t)]
        for z in row:
            cells.append(_fmt(z.real))
            cells.append(_fmt(z.imag))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def trajectory_from_csv(text: str) -> Trajectory:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise ValueError("trajectory CSV needs a header and at least one row")
    header = lines[0].split(",")
    if header[0] != "t" or (len(header) - 1) % 2 != 0 or len(header) < 3:
        raise ValueError("malformed trajectory CSV header")
    n = (len(header) - 1) // 2
    times = np.empty(len(lines) - 1)
    samples = np.empty((len(lines) - 1, n), dtype=np.complex128)
    for i, line in enumerate(lines[1:]):
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(f"row {i + 1}: expected {len(header)} cells")
        values = [float(c) for c in cells]
        times[i] = values[0]
        samples[i] = [complex(values[1 + 2 * j], values[2 + 2 * j]) for j in range(n)]
    return Trajectory(times, samples)


def trajectory_to_json(traj: Trajectory) -> str:
    doc = {
        "n": traj.n,
        "times": [float(t) for t in traj.times],
        "samples": [[[z.real, z.imag] for z in row] for row in traj.samples],
        "closure_permutation": (
            None
            if traj.closure_permutation is None
            else [int(j) for j in traj.closure_permutation]
        ),
    }
    return json.dumps(doc, separators=(",", ":"))


def trajectory_from_json(text: str) -> Trajectory:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "times" not in doc or "samples" not in doc:
        raise ValueError("malformed trajectory JSON")
    samples = np.array(
        [[complex(re, im) for re, im in row] for row in doc["samples"]],
        dtype=np.complex128,
    )
    return Trajectory(
        np.asarray(doc["times"], dtype=np.float64),
        samples,
        doc.get("closure_permutation"),
    )
