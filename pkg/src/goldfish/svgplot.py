"""Hand-emitted SVG figures: complex-plane trajectories and point catalogs.

No plotting dependency: output is deterministic for identical input, which
keeps the figures golden-file testable.  One polyline per body; optional
dot markers for a nearby stationary configuration and for the initial
positions, following the usual convention of marking both on each orbit.
"""

from __future__ import annotations

import numpy as np

from .model import EquilibriumCatalog, Trajectory

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
)

WIDTH = 640
HEIGHT = 640
MARGIN_FRACTION = 0.05


def _fmt(x: float) -> str:
    return format(x, ".4f")


class _Frame:
    """Affine map from complex-plane data to SVG pixel coordinates."""

    def __init__(self, points):
        pts = np.asarray(points, dtype=np.complex128).ravel()
        re, im = pts.real, pts.imag
        lo_x, hi_x = float(re.min()), float(re.max())
        lo_y, hi_y = float(im.min()), float(im.max())
        span = max(hi_x - lo_x, hi_y - lo_y, 1e-6)
        pad = MARGIN_FRACTION * span
        cx, cy = 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)
        half = 0.5 * span + pad
        self.x0, self.x1 = cx - half, cx + half
        self.y0, self.y1 = cy - half, cy + half
        self.scale = WIDTH / (self.x1 - self.x0)

    def px(self, z: complex):
        # SVG y axis points down; the imaginary axis points up.
        x = (z.real - self.x0) * self.scale
        y = (self.y1 - z.imag) * self.scale
        return _fmt(x), _fmt(y)


def _axes(frame):
    parts = []
    if frame.x0 < 0 < frame.x1:
        x, _ = frame.px(0 + 0j)
        parts.append(
            f'<line x1="{x}" y1="0" x2="{x}" y2="{HEIGHT}" stroke="#cccccc" stroke-width="1"/>'
        )
    if frame.y0 < 0 < frame.y1:
        _, y = frame.px(0 + 0j)
        parts.append(
            f'<line x1="0" y1="{y}" x2="{WIDTH}" y2="{y}" stroke="#cccccc" stroke-width="1"/>'
        )
    return parts


def _document(body, title):
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n'
        f'<title>{title}</title>'
    )
    return head + "\n" + "\n".join(body) + "\n</svg>\n"


def trajectory_svg(traj: Trajectory, equilibrium=None, initial=None) -> str:
    """Render one polyline per body in the complex plane.

    Parameters
    ----------
    traj : Trajectory
    equilibrium : array-like of complex, optional
        Stationary configuration to mark with filled dots.
    initial : array-like of complex, optional
        Starting positions to mark with open dots.
    """
    extras = []
    if equilibrium is not None:
        extras.append(np.asarray(equilibrium, dtype=np.complex128))
    if initial is not None:
        extras.append(np.asarray(initial, dtype=np.complex128))
    cloud = np.concatenate([traj.samples.ravel()] + [e.ravel() for e in extras])
    frame = _Frame(cloud)

    body = _axes(frame)
    for j in range(traj.n):
        color = PALETTE[j % len(PALETTE)]
        pts = " ".join(
            "{},{}".format(*frame.px(z)) for z in traj.samples[:, j]
        )
        body.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        x, y = frame.px(traj.samples[0, j])
        body.append(
            f'<text x="{float(x) + 6:.4f}" y="{float(y) - 6:.4f}" font-size="13" '
            f'fill="{color}">z{j + 1}</text>'
        )
    if equilibrium is not None:
        for z in np.asarray(equilibrium, dtype=np.complex128):
            x, y = frame.px(z)
            body.append(f'<circle cx="{x}" cy="{y}" r="4" fill="#000000"/>')
    if initial is not None:
        for z in np.asarray(initial, dtype=np.complex128):
            x, y = frame.px(z)
            body.append(
                f'<circle cx="{x}" cy="{y}" r="4" fill="none" stroke="#000000" stroke-width="1.5"/>'
            )
    return _document(body, f"trajectories of {traj.n} bodies in the complex plane")


def catalog_svg(catalog: EquilibriumCatalog) -> str:
    """Render every catalog configuration as labeled points."""
    pts = np.concatenate([e.configuration for e in catalog.entries])
    frame = _Frame(pts)
    body = _axes(frame)
    for idx, entry in enumerate(catalog.entries, start=1):
        color = PALETTE[(idx - 1) % len(PALETTE)]
        for z in entry.configuration:
            x, y = frame.px(z)
            body.append(f'<circle cx="{x}" cy="{y}" r="4" fill="{color}"/>')
            body.append(
                f'<text x="{float(x) + 5:.4f}" y="{float(y) - 5:.4f}" font-size="11" '
                f'fill="{color}">{idx}</text>'
            )
    return _document(body, f"{len(catalog.entries)} stationary configurations")
