"""Hexagonal point pattern filling the unit disc.

Integration nodes for the point-counting cover estimator: the union of the
triangular lattice ``(i, j*sqrt(3))`` and its half-offset twin
``(i + 1/2, (j + 1/2)*sqrt(3))``, truncated to squared norm <= M and rescaled
so that the N kept points carry density N / pi on the unit disc.
"""

from __future__ import annotations

import math

import numpy as np

SQRT3 = math.sqrt(3.0)


class HexPattern:
    """Scaled lattice points in the unit disc."""

    def __init__(self, points: np.ndarray, selection_bound: float):
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2 or len(points) == 0:
            raise ValueError("pattern needs a nonempty (N, 2) point array")
        self.points = points
        self.selection_bound = float(selection_bound)

    @property
    def count(self) -> int:
        return len(self.points)

    def max_norm(self) -> float:
        return float(np.sqrt((self.points ** 2).sum(axis=1).max()))

    def __repr__(self) -> str:
        return f"HexPattern(count={self.count}, selection_bound={self.selection_bound})"


def make_hex_pattern(M: float) -> HexPattern:
    """Generate the hexagonal pattern with squared-norm cutoff ``M``.

    M = 52, 110, 220 keep N = 199, 397, 805 points; the scale factor
    sqrt(2*pi / (N*sqrt(3))) maps the kept lattice onto the unit disc.
    """
    if M <= 0:
        raise ValueError(f"selection bound must be > 0, got {M}")
    reach = math.sqrt(M)
    imax = int(math.floor(reach)) + 1
    jmax = int(math.floor(reach / SQRT3)) + 1

    i = np.arange(-imax, imax + 1, dtype=float)
    j = np.arange(-jmax, jmax + 1, dtype=float)
    ix, jy = np.meshgrid(i, j, indexing="ij")

    # Squared norms in the exact quarter-integer forms i^2 + 3 j^2 and
    # (i+1/2)^2 + 3 (j+1/2)^2 so that boundary lattice points (norm^2 == M)
    # are kept or dropped without rounding ambiguity.
    a_norm2 = ix * ix + 3.0 * jy * jy
    bx, by = ix + 0.5, jy + 0.5
    b_norm2 = bx * bx + 3.0 * by * by

    a_keep = a_norm2 <= M
    b_keep = b_norm2 <= M
    xs = np.concatenate([ix[a_keep], bx[b_keep]])
    ys = np.concatenate([jy[a_keep] * SQRT3, by[b_keep] * SQRT3])
    n = len(xs)
    if n == 0:
        raise ValueError(f"selection bound {M} keeps no lattice points")

    scale = math.sqrt(2.0 * math.pi / (n * SQRT3))
    points = np.column_stack([xs, ys]) * scale
    order = np.lexsort((points[:, 1], points[:, 0]))
    return HexPattern(points[order], M)
