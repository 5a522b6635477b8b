"""Locating facilities anywhere in the plane.

One facility is relocated at a time with a maximization Nelder-Mead over its
two coordinates while the other facilities stay fixed; cycling over the
facilities in random order repeats until a full pass stops improving. A
multistart driver launches the cycle from random demand points or from a
given (e.g. discrete) solution and optionally projects the winner onto the
convex hull of the demand centers, which never lowers any single-facility
cover.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arcgrid import arc_slots, union_fraction
from .cover import CoverEvaluator, total_weighted_cover
from .geometry import Facility, Point2
from .hull import convex_hull, project_to_hull
from .reports import SolveReport

SIMPLEX_COLLAPSE_EPS = 1e-10


class _EvalCounter:
    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0


@dataclass
class NmConfig:
    """Nelder-Mead and relocation-cycle parameters.

    ``init_square_side=None`` derives the initial-simplex square from the
    cover geometry: twice (cover radius - mean demand radius), floored at
    half a mile, since the objective is flat within that distance of a fully
    covered demand point.
    """

    alpha: float = 1.0
    beta: float = 0.5
    gamma: float = 2.0
    vertex_count: int = 3
    epsilon: float = 1e-6
    init_square_side: float | None = None
    max_iterations: int = 500
    cycle_epsilon: float = 1e-7
    max_passes: int = 100

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise ValueError("reflection coefficient must be > 0")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("contraction coefficient must lie in (0, 1)")
        if self.gamma <= 1.0:
            raise ValueError("expansion coefficient must be > 1")
        if self.vertex_count < 3:
            raise ValueError("simplex needs at least 3 vertices")
        if self.epsilon <= 0 or self.cycle_epsilon <= 0:
            raise ValueError("tolerances must be > 0")
        if self.max_iterations < 1 or self.max_passes < 1:
            raise ValueError("iteration caps must be >= 1")


@dataclass
class ContinuousSolution:
    """p facility locations with a shared cover radius and their objective."""

    facilities: list[Point2]
    cover_radius: float
    objective: float
    trace: list[float]


def reflect_point(centroid: np.ndarray, worst: np.ndarray, alpha: float) -> np.ndarray:
    return (1.0 + alpha) * centroid - alpha * worst


def expand_point(centroid: np.ndarray, worst: np.ndarray, gamma: float) -> np.ndarray:
    return (1.0 + gamma) * centroid - gamma * worst


def contract_point(target: np.ndarray, centroid: np.ndarray, beta: float) -> np.ndarray:
    return beta * target + (1.0 - beta) * centroid


class _RelocationObjective:
    """Weighted total cover as a function of one facility's location.

    Demand points already fully covered by a fixed facility contribute a
    constant and are dropped from the evaluation. With the quadrature backend
    the fixed facilities' arc slots are precomputed once.
    """

    def __init__(self, instance, facilities: list[Facility], moving_index: int,
                 evaluator: CoverEvaluator):
        self.instance = instance
        self.facilities = facilities
        self.moving_index = moving_index
        self.evaluator = evaluator
        self.cover_radius = facilities[moving_index].cover_radius
        self.eval_count = 0

        demand = instance.demand_points
        weights = np.array([dp.weight for dp in demand])
        self.wsum = weights.sum()
        if self.wsum <= 0:
            raise ValueError("total demand weight must be positive")
        self._fast = evaluator.kind == "quadrature"
        fixed = [f for k, f in enumerate(facilities) if k != moving_index]

        cx = np.array([dp.center.x for dp in demand])
        cy = np.array([dp.center.y for dp in demand])
        R = np.array([dp.radius for dp in demand])
        fixed_full = np.zeros(len(demand), dtype=bool)
        for f in fixed:
            d = np.hypot(f.center.x - cx, f.center.y - cy)
            fixed_full |= d <= f.cover_radius - R
        active = ~fixed_full
        self._base = float(weights[fixed_full].sum())
        self._w = weights[active]
        self._cx, self._cy, self._R = cx[active], cy[active], R[active]
        self._active_idx = np.flatnonzero(active)

        if self._fast:
            rule = evaluator.rule
            self._wk = rule.w
            self._radii = self._R[:, None] * rule.u[None, :]
            na, K = self._radii.shape
            slots_s = [np.zeros((na, K, 0))]
            slots_e = [np.zeros((na, K, 0))]
            for f in fixed:
                dx = f.center.x - self._cx
                dy = f.center.y - self._cy
                d = np.hypot(dx, dy)
                theta = np.arctan2(dy, dx)
                s, e = arc_slots(d[:, None], theta[:, None], self._radii, f.cover_radius)
                slots_s.append(s)
                slots_e.append(e)
            self._fixed_starts = np.concatenate(slots_s, axis=-1)
            self._fixed_ends = np.concatenate(slots_e, axis=-1)

    def value(self, xy: np.ndarray) -> float:
        self.eval_count += 1
        x, y = float(xy[0]), float(xy[1])
        if not self._fast:
            moved = list(self.facilities)
            moved[self.moving_index] = Facility(Point2(x, y), self.cover_radius)
            return total_weighted_cover(self.instance, moved, self.evaluator)
        if len(self._w) == 0:
            return 1.0
        dx = x - self._cx
        dy = y - self._cy
        d = np.hypot(dx, dy)
        theta = np.arctan2(dy, dx)
        s, e = arc_slots(d[:, None], theta[:, None], self._radii, self.cover_radius)
        starts = np.concatenate([self._fixed_starts, s], axis=-1)
        ends = np.concatenate([self._fixed_ends, e], axis=-1)
        frac = union_fraction(starts, ends)
        covers = (frac * self._wk).sum(axis=-1)
        covers = np.where(d <= self.cover_radius - self._R, 1.0, covers)
        return float((self._base + np.dot(self._w, covers)) / self.wsum)


def _auto_square_side(instance, cover_radius: float) -> float:
    mean_r = float(np.mean([dp.radius for dp in instance.demand_points]))
    return max(2.0 * (cover_radius - mean_r), 0.5)


def _replaced(facilities: list[Facility], index: int, point: Point2) -> list[Facility]:
    out = list(facilities)
    out[index] = Facility(point, facilities[index].cover_radius)
    return out


def nelder_mead_maximize(value_fn, start: np.ndarray, side: float,
                         config: NmConfig, rng: np.random.Generator,
                         trace: list | None = None) -> tuple[np.ndarray, float]:
    """Maximize a 2-d function by the simplex method, returning (point, value).

    The simplex starts at ``start`` plus K-1 random vertices in a square of
    the given side. Reflection is accepted between the second-highest and
    highest values, a better-than-best reflection attempts expansion, a worse
    one attempts contraction and falls back to shrinking everything toward
    the best vertex. Stops when the simplex value spread drops below epsilon
    or after the iteration cap; a collapsed simplex is restarted around the
    best vertex at most twice.
    """
    start = np.asarray(start, dtype=float)
    points = [start.copy()]
    for _ in range(config.vertex_count - 1):
        points.append(start + (rng.random(2) - 0.5) * side)
    values = [value_fn(pt) for pt in points]
    restarts = 0

    for _it in range(config.max_iterations):
        low = min(range(len(values)), key=values.__getitem__)
        high = max(range(len(values)), key=values.__getitem__)
        f_low, f_high = values[low], values[high]
        f_second = sorted(values)[-2]
        if trace is not None:
            trace.append(f_high)
        if f_high - f_low < config.epsilon:
            break

        spread = max(float(np.abs(pt - points[high]).max()) for pt in points)
        if spread < SIMPLEX_COLLAPSE_EPS:
            if restarts >= 2:
                break
            restarts += 1
            for k in range(len(points)):
                if k != high:
                    points[k] = points[high] + (rng.random(2) - 0.5) * side
                    values[k] = value_fn(points[k])
            continue

        centroid = np.mean([pt for k, pt in enumerate(points) if k != low], axis=0)
        reflected = reflect_point(centroid, points[low], config.alpha)
        f_reflected = value_fn(reflected)

        if f_second <= f_reflected <= f_high:
            points[low], values[low] = reflected, f_reflected
        elif f_reflected < f_second:
            if f_reflected > f_low:
                target = reflected
            else:
                target = points[low]
            contracted = contract_point(target, centroid, config.beta)
            f_contracted = value_fn(contracted)
            if f_contracted >= f_second:
                points[low], values[low] = contracted, f_contracted
            else:
                best_pt = points[high]
                for k in range(len(points)):
                    if k != high:
                        points[k] = (points[k] + best_pt) / 2.0
                        values[k] = value_fn(points[k])
        else:
            expanded = expand_point(centroid, points[low], config.gamma)
            f_expanded = value_fn(expanded)
            if f_expanded >= f_high:
                points[low], values[low] = expanded, f_expanded
            else:
                points[low], values[low] = reflected, f_reflected

    best = max(range(len(values)), key=values.__getitem__)
    return points[best], values[best]


def nelder_mead_relocate(instance, facilities: list[Facility], moving_index: int,
                         config: NmConfig, rng: np.random.Generator,
                         evaluator: CoverEvaluator | None = None,
                         trace: list | None = None,
                         _counter: _EvalCounter | None = None) -> Point2:
    """Best location found for one facility with the others held fixed.

    Runs :func:`nelder_mead_maximize` on the reduced single-facility
    objective. The returned point never scores below the facility's starting
    location on the full objective.
    """
    if not 0 <= moving_index < len(facilities):
        raise ValueError(f"moving index {moving_index} out of range")
    evaluator = evaluator if evaluator is not None else CoverEvaluator.quadrature()
    model = _RelocationObjective(instance, facilities, moving_index, evaluator)
    start_center = facilities[moving_index].center
    side = config.init_square_side
    if side is None:
        side = _auto_square_side(instance, facilities[moving_index].cover_radius)

    start = np.array([start_center.x, start_center.y])
    best_pt, _best_val = nelder_mead_maximize(model.value, start, side, config,
                                              rng, trace)
    candidate = Point2(float(best_pt[0]), float(best_pt[1]))
    # Exact non-worsening contract on the full objective, which can differ
    # from the reduced objective by rounding.
    cand_total = total_weighted_cover(instance, _replaced(facilities, moving_index, candidate), evaluator)
    start_total = total_weighted_cover(instance, facilities, evaluator)
    if _counter is not None:
        _counter.count += model.eval_count + 2
    return candidate if cand_total >= start_total else start_center


def cooper_cycle(instance, start: ContinuousSolution, config: NmConfig,
                 rng: np.random.Generator,
                 evaluator: CoverEvaluator | None = None,
                 _counter: _EvalCounter | None = None) -> ContinuousSolution:
    """Relocate one facility at a time, in fresh random order each pass.

    Only non-worsening moves are accepted; the cycle stops when a full pass
    improves the objective by less than the cycle tolerance or the pass cap
    is reached. The per-pass objective history is returned in the trace.
    """
    evaluator = evaluator if evaluator is not None else CoverEvaluator.quadrature()
    facilities = [Facility(pt, start.cover_radius) for pt in start.facilities]
    current = total_weighted_cover(instance, facilities, evaluator)
    if _counter is not None:
        _counter.count += 1
    trace = [current]
    for _pass in range(config.max_passes):
        before = current
        order = rng.permutation(len(facilities))
        for idx in order:
            point = nelder_mead_relocate(instance, facilities, int(idx), config,
                                         rng, evaluator, _counter=_counter)
            moved = _replaced(facilities, int(idx), point)
            value = total_weighted_cover(instance, moved, evaluator)
            if _counter is not None:
                _counter.count += 1
            if value >= current:
                facilities, current = moved, value
        trace.append(current)
        if current - before < config.cycle_epsilon:
            break
    return ContinuousSolution([f.center for f in facilities], start.cover_radius,
                              current, trace)


def multistart_continuous(instance, p: int, starts: int, start_mode: str,
                          config: NmConfig, rng: np.random.Generator,
                          evaluator: CoverEvaluator | None = None,
                          given: list[Point2] | None = None,
                          project: bool = True,
                          seed: int | None = None) -> SolveReport:
    """Best relocation-cycle outcome over several starting solutions.

    ``random_demand_points`` starts place the facilities on p distinct demand
    centers; ``given_sites`` starts from the supplied locations (for example
    a discrete solution). The best final solution is optionally projected
    onto the demand hull, keeping the projection only when it does not lower
    the objective.
    """
    if starts < 1:
        raise ValueError("need at least one start")
    if start_mode not in ("random_demand_points", "given_sites"):
        raise ValueError(f"unknown start mode {start_mode!r}")
    evaluator = evaluator if evaluator is not None else CoverEvaluator.quadrature()
    demand = instance.demand_points
    D = instance.default_cover_radius
    if start_mode == "random_demand_points" and len(demand) < p:
        raise ValueError(f"need at least p={p} demand points for random starts")
    if start_mode == "given_sites":
        if not given or len(given) != p:
            raise ValueError(f"given start mode needs exactly p={p} locations")

    counter = _EvalCounter()
    solutions: list[ContinuousSolution] = []
    for _s in range(starts):
        if start_mode == "random_demand_points":
            picked = rng.choice(len(demand), size=p, replace=False)
            locations = [demand[int(i)].center for i in picked]
        else:
            locations = list(given)
        start_sol = ContinuousSolution(locations, D, 0.0, [])
        solutions.append(cooper_cycle(instance, start_sol, config, rng, evaluator,
                                      _counter=counter))

    best_idx = max(range(len(solutions)), key=lambda k: solutions[k].objective)
    best = solutions[best_idx]
    facilities = best.facilities
    objective = best.objective
    if project:
        hull = convex_hull([dp.center for dp in demand])
        projected = [project_to_hull(pt, hull) for pt in facilities]
        proj_value = total_weighted_cover(
            instance, [Facility(pt, D) for pt in projected], evaluator)
        counter.count += 1
        if proj_value >= objective:
            facilities, objective = projected, proj_value

    return SolveReport(
        solver="nelder-mead-multistart",
        seed=seed,
        objective=objective,
        facilities=facilities,
        evaluations=counter.count,
        trace=best.trace,
        start_objectives=[sol.objective for sol in solutions],
        config={
            "p": p,
            "starts": starts,
            "start_mode": start_mode,
            "alpha": config.alpha,
            "beta": config.beta,
            "gamma": config.gamma,
            "vertex_count": config.vertex_count,
            "epsilon": config.epsilon,
            "projected": project,
            **evaluator.describe(),
        },
    )
