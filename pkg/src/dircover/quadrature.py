"""Radial quadrature rule for integrating cover over a disc.

The cover fraction of a disc equals ``integral_0^1 2u f(u) du`` where ``f(u)``
is the covered fraction of the concentric circle of radius ``u R``. The
substitution ``u = sqrt((t + 1) / 2)`` turns this into a plain integral over
``[-1, 1]``, so Gauss-Legendre nodes ``t_j`` with weights ``w_j`` become disc
nodes ``u_j = sqrt((t_j + 1) / 2)`` with weights ``w_j / 2``.
"""

from __future__ import annotations

import numpy as np


class QuadratureRule:
    """Radial nodes ``u`` in (0, 1) and weights summing to 1."""

    def __init__(self, nodes: list[tuple[float, float]] | tuple[tuple[float, float], ...]):
        nodes = tuple((float(u), float(w)) for u, w in nodes)
        if not nodes:
            raise ValueError("quadrature rule needs at least one node")
        u = np.array([n[0] for n in nodes])
        w = np.array([n[1] for n in nodes])
        if np.any(u <= 0.0) or np.any(u >= 1.0):
            raise ValueError("radial nodes must lie strictly inside (0, 1)")
        if np.any(np.diff(u) <= 0.0):
            raise ValueError("radial nodes must be strictly increasing")
        if np.any(w <= 0.0):
            raise ValueError("quadrature weights must be positive")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError(f"quadrature weights must sum to 1, got {w.sum()!r}")
        self.nodes = nodes
        self.u = u
        self.w = w

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"QuadratureRule(order={len(self.nodes)})"


def make_quadrature_rule(order: int = 10) -> QuadratureRule:
    """Build the disc-adjusted Gauss-Legendre rule of the given order."""
    if order < 1:
        raise ValueError(f"quadrature order must be >= 1, got {order}")
    t, w_std = np.polynomial.legendre.leggauss(int(order))
    u = np.sqrt((t + 1.0) / 2.0)
    return QuadratureRule(tuple(zip(u, w_std / 2.0)))
