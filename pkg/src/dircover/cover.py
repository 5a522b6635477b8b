"""Joint-cover estimators and the weighted total-cover objective.

Three interchangeable backends estimate the fraction of a demand disc covered
by the union of facility discs: radial quadrature over covered arcs on
concentric circles, point counting on a hexagonal pattern, and seeded Monte
Carlo sampling. All are pure functions of their inputs.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .arcgrid import arc_slots, union_fraction
from .geometry import DemandPoint, Facility
from .hexpattern import HexPattern, make_hex_pattern
from .quadrature import QuadratureRule, make_quadrature_rule

MC_CHUNK = 1_000_000


def joint_cover_quadrature(demand: DemandPoint,
                           facilities: Sequence[Facility],
                           rule: QuadratureRule) -> float:
    """Covered fraction of the demand disc via radial arc-union quadrature.

    Each radial node contributes its weight times the fraction of the
    concentric circle of radius ``u * R`` covered by the facility arcs. A
    facility within ``D - R`` of the center covers everything, so the scan
    short-circuits to 1.
    """
    if not facilities:
        return 0.0
    R = demand.radius
    center = demand.center
    dists = [center.distance_to(f.center) for f in facilities]
    for d, f in zip(dists, facilities):
        if d <= f.cover_radius - R:
            return 1.0
    radii = rule.u * R
    slot_starts = []
    slot_ends = []
    for d, f in zip(dists, facilities):
        theta = math.atan2(f.center.y - center.y, f.center.x - center.x)
        s, e = arc_slots(d, theta, radii, f.cover_radius)
        slot_starts.append(s)
        slot_ends.append(e)
    starts = np.concatenate(slot_starts, axis=-1)
    ends = np.concatenate(slot_ends, axis=-1)
    frac = union_fraction(starts, ends)
    return float((frac * rule.w).sum(axis=-1))


def joint_cover_hexagonal(demand: DemandPoint,
                          facilities: Sequence[Facility],
                          pattern: HexPattern) -> float:
    """Covered fraction of the demand disc by counting covered pattern points.

    Pruning: a facility within ``D - R`` of the center covers the whole disc
    (early 1), facilities beyond ``D + R`` cannot cover any point and are
    dropped, and a point already covered is not rechecked. The result is
    identical to checking every point against every facility.
    """
    if not facilities:
        return 0.0
    R = demand.radius
    center = demand.center
    active: list[Facility] = []
    for f in facilities:
        d = center.distance_to(f.center)
        if d <= f.cover_radius - R:
            return 1.0
        if d < f.cover_radius + R:
            active.append(f)
    if not active:
        return 0.0
    pts = pattern.points * R
    px = pts[:, 0] + center.x
    py = pts[:, 1] + center.y
    covered = np.zeros(pattern.count, dtype=bool)
    for f in active:
        open_idx = np.flatnonzero(~covered)
        if open_idx.size == 0:
            break
        dx = px[open_idx] - f.center.x
        dy = py[open_idx] - f.center.y
        hit = dx * dx + dy * dy <= f.cover_radius * f.cover_radius
        covered[open_idx[hit]] = True
    return int(covered.sum()) / pattern.count


def joint_cover_montecarlo(demand: DemandPoint,
                           facilities: Sequence[Facility],
                           samples: int,
                           seed) -> tuple[float, float]:
    """Covered fraction and its binomial standard error by uniform sampling.

    Points are drawn in the demand disc as ``r = R * sqrt(U)``,
    ``theta = 2 pi V`` from a PCG64 stream, so results are reproducible for a
    fixed seed and sample count.
    """
    if samples < 1:
        raise ValueError(f"sample count must be >= 1, got {samples}")
    R = demand.radius
    center = demand.center
    active = []
    for f in facilities:
        d = center.distance_to(f.center)
        if d <= f.cover_radius - R:
            return 1.0, 0.0
        if d < f.cover_radius + R:
            active.append(f)
    if not active:
        return 0.0, 0.0
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = int(samples)
    while remaining > 0:
        chunk = min(remaining, MC_CHUNK)
        u = rng.random(chunk)
        v = rng.random(chunk)
        r = R * np.sqrt(u)
        theta = (2.0 * math.pi) * v
        px = center.x + r * np.cos(theta)
        py = center.y + r * np.sin(theta)
        covered = np.zeros(chunk, dtype=bool)
        for f in active:
            open_idx = np.flatnonzero(~covered)
            if open_idx.size == 0:
                break
            dx = px[open_idx] - f.center.x
            dy = py[open_idx] - f.center.y
            hit = dx * dx + dy * dy <= f.cover_radius * f.cover_radius
            covered[open_idx[hit]] = True
        hits += int(covered.sum())
        remaining -= chunk
    p = hits / samples
    stderr = math.sqrt(p * (1.0 - p) / samples)
    return p, stderr


class CoverEvaluator:
    """A configured integration backend mapping (demand, facilities) to cover.

    Immutable after construction and safe to share across threads. Monte
    Carlo evaluations derive their stream from the configured seed (plus the
    demand-point index inside :func:`total_weighted_cover`), so reruns are
    deterministic.
    """

    def __init__(self, kind: str, *, rule: QuadratureRule | None = None,
                 pattern: HexPattern | None = None,
                 samples: int | None = None, seed: int | None = None):
        if kind == "quadrature":
            if rule is None:
                raise ValueError("quadrature backend needs a rule")
        elif kind == "hexagonal":
            if pattern is None:
                raise ValueError("hexagonal backend needs a pattern")
        elif kind == "montecarlo":
            if samples is None or samples < 1:
                raise ValueError("montecarlo backend needs a positive sample count")
            if seed is None:
                raise ValueError("montecarlo backend needs a seed")
        else:
            raise ValueError(f"unknown evaluator backend {kind!r}")
        self.kind = kind
        self.rule = rule
        self.pattern = pattern
        self.samples = samples
        self.seed = seed

    @classmethod
    def quadrature(cls, order: int = 10, rule: QuadratureRule | None = None) -> "CoverEvaluator":
        return cls("quadrature", rule=rule if rule is not None else make_quadrature_rule(order))

    @classmethod
    def hexagonal(cls, M: float = 220.0, pattern: HexPattern | None = None) -> "CoverEvaluator":
        return cls("hexagonal", pattern=pattern if pattern is not None else make_hex_pattern(M))

    @classmethod
    def montecarlo(cls, samples: int, seed: int) -> "CoverEvaluator":
        return cls("montecarlo", samples=samples, seed=seed)

    def joint_cover(self, demand: DemandPoint, facilities: Sequence[Facility],
                    seed=None) -> float:
        if self.kind == "quadrature":
            return joint_cover_quadrature(demand, facilities, self.rule)
        if self.kind == "hexagonal":
            return joint_cover_hexagonal(demand, facilities, self.pattern)
        stream = self.seed if seed is None else seed
        return joint_cover_montecarlo(demand, facilities, self.samples, stream)[0]

    def describe(self) -> dict:
        if self.kind == "quadrature":
            return {"backend": "quadrature", "order": len(self.rule)}
        if self.kind == "hexagonal":
            return {"backend": "hexagonal", "M": self.pattern.selection_bound,
                    "points": self.pattern.count}
        return {"backend": "montecarlo", "samples": self.samples, "seed": self.seed}


def total_weighted_cover(instance, facilities: Sequence[Facility],
                         evaluator: CoverEvaluator) -> float:
    """Population-weighted average joint cover over all demand points."""
    demand = instance.demand_points
    if not demand:
        raise ValueError("instance has no demand points")
    weights = np.array([dp.weight for dp in demand])
    wsum = weights.sum()
    if wsum <= 0.0:
        raise ValueError("total demand weight must be positive")
    if evaluator.kind == "montecarlo":
        covers = np.array([
            evaluator.joint_cover(dp, facilities, seed=[evaluator.seed, i])
            for i, dp in enumerate(demand)
        ])
    else:
        covers = np.array([evaluator.joint_cover(dp, facilities) for dp in demand])
    return float(np.dot(weights, covers) / wsum)
