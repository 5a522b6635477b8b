"""Vectorized covered-arc kernels shared by the evaluators and solvers.

Every (demand point, concentric circle) cell collects two interval slots per
facility: the covered arc split at the 2pi wraparound, with degenerate
``[0, 0]`` slots for facilities that do not touch the circle and ``[0, 2pi]``
for facilities that swallow it. Keeping the slot layout fixed makes repeated
evaluations cheap and keeps independently computed paths bit-identical.
"""

from __future__ import annotations

import numpy as np

from .geometry import CONCENTRIC_EPS, TWO_PI


def arc_slots(d, theta, r, D):
    """Interval slots of one facility's covered arcs on circles of radius ``r``.

    ``d``: center separation, ``theta``: facility bearing, broadcast against
    the circle radii ``r``; ``D``: the facility's cover radius. Returns
    ``(starts, ends)`` with one extra trailing axis of length 2.
    """
    d, theta, r = np.broadcast_arrays(*np.atleast_1d(d, theta, r))
    concentric = d < CONCENTRIC_EPS
    full = (d <= D - r) | (concentric & (D >= r))
    empty = (d >= D + r) | (d + D <= r) | (concentric & (D < r))
    partial = ~(full | empty)

    safe_d = np.where(partial, d, 1.0)
    safe_r = np.where(partial, r, 1.0)
    cos_half = (safe_r * safe_r + safe_d * safe_d - D * D) / (2.0 * safe_r * safe_d)
    half = np.arccos(np.clip(cos_half, -1.0, 1.0))
    lo = np.where(partial, (theta - half) % TWO_PI, 0.0)
    hi = lo + np.where(partial, 2.0 * half, 0.0)

    starts = np.zeros(d.shape + (2,))
    ends = np.zeros(d.shape + (2,))
    starts[..., 0] = lo
    ends[..., 0] = np.minimum(hi, TWO_PI)
    ends[..., 1] = np.where(hi > TWO_PI, hi - TWO_PI, 0.0)
    ends[..., 0] = np.where(full, TWO_PI, ends[..., 0])
    starts[..., 0] = np.where(full, 0.0, starts[..., 0])
    return starts, ends


def union_fraction(starts, ends):
    """Covered fraction per cell from interval slots along the last axis.

    Intervals live inside [0, 2pi]; degenerate slots contribute nothing. The
    sweep adds ``end - max(start, running_max_end)`` clipped at zero, which is
    the exact union measure of the given endpoints.
    """
    order = np.argsort(starts, axis=-1, kind="stable")
    s = np.take_along_axis(starts, order, axis=-1)
    e = np.take_along_axis(ends, order, axis=-1)
    run = np.maximum.accumulate(e, axis=-1)
    prev = np.empty_like(run)
    prev[..., 0] = 0.0
    prev[..., 1:] = run[..., :-1]
    contrib = np.maximum(e - np.maximum(s, prev), 0.0)
    return np.minimum(contrib.sum(axis=-1) / TWO_PI, 1.0)
