import numpy as np
import pytest

from dircover import (ContinuousSolution, CoverEvaluator, DemandPoint,
                      Facility, Instance, NmConfig, Point2, cooper_cycle,
                      gen_synthetic, genetic_solve, GaConfig,
                      joint_cover_quadrature, make_quadrature_rule,
                      multistart_continuous, nelder_mead_maximize,
                      nelder_mead_relocate, total_weighted_cover)
from dircover.continuous import contract_point, expand_point, reflect_point

EV = CoverEvaluator.quadrature()


# --- simplex move formulas ---------------------------------------------------

def test_affine_formulas_exact():
    worst = np.array([0.0, 0.0])
    others = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    centroid = np.mean(others, axis=0)
    assert np.array_equal(centroid, np.array([0.5, 0.5]))
    assert np.array_equal(reflect_point(centroid, worst, 1.0), np.array([1.0, 1.0]))
    assert np.array_equal(expand_point(centroid, worst, 2.0), np.array([1.5, 1.5]))
    assert np.array_equal(contract_point(worst, centroid, 0.5), np.array([0.25, 0.25]))
    # contraction toward a reflected target
    target = np.array([1.0, 1.0])
    assert np.array_equal(contract_point(target, centroid, 0.5), np.array([0.75, 0.75]))


def test_affine_formulas_second_simplex():
    worst = np.array([2.0, -1.0])
    centroid = np.array([-0.5, 3.0])
    assert np.array_equal(reflect_point(centroid, worst, 1.0), np.array([-3.0, 7.0]))
    assert np.array_equal(expand_point(centroid, worst, 2.0), np.array([-5.5, 11.0]))
    assert np.array_equal(contract_point(worst, centroid, 0.5), np.array([0.75, 1.0]))


# --- core maximizer ----------------------------------------------------------

def test_maximizer_on_smooth_paraboloid():
    # the peak is at (1.5, -0.5); any start inside the square must converge
    def f(pt):
        return -((pt[0] - 1.5) ** 2 + (pt[1] + 0.5) ** 2)

    config = NmConfig(epsilon=1e-12, max_iterations=200)
    rng = np.random.default_rng(0)
    for _ in range(20):
        start = np.array([1.5, -0.5]) + (rng.random(2) - 0.5) * 4.0
        best, value = nelder_mead_maximize(f, start, 2.0, config, rng)
        assert value > -1e-6
        assert np.abs(best - np.array([1.5, -0.5])).max() < 1e-3


def test_maximizer_trace_non_decreasing():
    def f(pt):
        return -(pt[0] ** 2) - 0.5 * pt[1] ** 2

    rng = np.random.default_rng(1)
    trace = []
    nelder_mead_maximize(f, np.array([3.0, 3.0]), 1.0, NmConfig(), rng, trace=trace)
    assert all(b >= a for a, b in zip(trace, trace[1:]))


# --- relocation --------------------------------------------------------------

def test_relocate_full_cover_plateau():
    # starting inside the gradual-cover band, the search walks onto the
    # full-cover plateau within distance D - R of the demand center
    demand = [DemandPoint("0", Point2(5.0, 5.0), 1.0, 1.0)]
    inst = Instance(demand, default_cover_radius=3.0)
    for seed in range(5):
        rng = np.random.default_rng(seed)
        facilities = [Facility(Point2(2.5, 4.0), 3.0)]  # partial cover start
        point = nelder_mead_relocate(inst, facilities, 0, NmConfig(), rng, EV)
        assert total_weighted_cover(inst, [Facility(point, 3.0)], EV) == 1.0
        assert point.distance_to(Point2(5.0, 5.0)) <= 2.0 + 1e-9  # within D - R


def test_relocate_never_worsens():
    rng = np.random.default_rng(3)
    inst = gen_synthetic(n=10, m=0, region=(0, 0, 8, 8), seed=21)
    for trial in range(10):
        pts = [Point2(float(rng.uniform(0, 8)), float(rng.uniform(0, 8)))
               for _ in range(3)]
        facilities = [Facility(pt, 3.0) for pt in pts]
        start_val = total_weighted_cover(inst, facilities, EV)
        moved = nelder_mead_relocate(inst, facilities, trial % 3, NmConfig(), rng, EV)
        new_val = total_weighted_cover(
            inst, [Facility(moved, 3.0) if k == trial % 3 else f
                   for k, f in enumerate(facilities)], EV)
        assert new_val >= start_val


def test_relocate_matches_grid_search():
    # single facility, few demand points: exhaustive 0.05-mile grid as the
    # oracle; searches start at demand centers, as the multistart driver does
    demand = [DemandPoint("a", Point2(1.0, 1.0), 1.0, 2.0),
              DemandPoint("b", Point2(2.6, 1.4), 1.0, 1.0),
              DemandPoint("c", Point2(1.9, 2.8), 1.0, 1.5)]
    inst = Instance(demand, default_cover_radius=2.0)

    xs = np.arange(0.0, 4.0 + 1e-9, 0.05)
    ys = np.arange(0.0, 4.0 + 1e-9, 0.05)
    grid_best = -1.0
    for x in xs:
        for y in ys:
            fac = [Facility(Point2(float(x), float(y)), 2.0)]
            val = total_weighted_cover(inst, fac, EV)
            if val > grid_best:
                grid_best = val

    hits = 0
    trials = 40
    for seed in range(trials):
        rng = np.random.default_rng(900 + seed)
        start = demand[seed % 3].center
        config = NmConfig(max_iterations=400)
        point = nelder_mead_relocate(inst, [Facility(start, 2.0)], 0, config, rng, EV)
        val = total_weighted_cover(inst, [Facility(point, 2.0)], EV)
        if val >= grid_best - 1e-3:
            hits += 1
    assert hits >= int(0.95 * trials), f"only {hits}/{trials} runs reached the grid optimum"


def test_relocate_validates_index():
    inst = gen_synthetic(n=3, m=0, seed=1)
    with pytest.raises(ValueError):
        nelder_mead_relocate(inst, [Facility(Point2(0, 0), 3.0)], 1,
                             NmConfig(), np.random.default_rng(0), EV)


# --- cooper cycle ------------------------------------------------------------

def test_cooper_full_cover_start_unchanged():
    demand = [DemandPoint("0", Point2(0.0, 0.0), 1.0, 1.0)]
    inst = Instance(demand, default_cover_radius=3.0)
    start = ContinuousSolution([Point2(0.0, 0.0)], 3.0, 1.0, [])
    result = cooper_cycle(inst, start, NmConfig(), np.random.default_rng(4), EV)
    assert result.objective == 1.0
    assert result.facilities[0].distance_to(Point2(0, 0)) <= 2.0


def test_cooper_single_facility_two_passes():
    inst = gen_synthetic(n=6, m=0, region=(0, 0, 4, 4), seed=31)
    start = ContinuousSolution([inst.demand_points[0].center], 3.0, 0.0, [])
    result = cooper_cycle(inst, start, NmConfig(), np.random.default_rng(5), EV)
    # trace: starting value plus at most two passes
    assert len(result.trace) <= 3
    assert all(b >= a for a, b in zip(result.trace, result.trace[1:]))


def test_cooper_trace_non_decreasing_random():
    for seed in range(5):
        inst = gen_synthetic(n=12, m=0, region=(0, 0, 10, 10), seed=40 + seed)
        rng = np.random.default_rng(seed)
        pts = [inst.demand_points[i].center for i in range(3)]
        start = ContinuousSolution(pts, 3.0, 0.0, [])
        result = cooper_cycle(inst, start, NmConfig(), rng, EV)
        assert all(b >= a for a, b in zip(result.trace, result.trace[1:]))
        assert result.objective == result.trace[-1]


# --- multistart --------------------------------------------------------------

def test_multistart_from_discrete_never_worse():
    inst = gen_synthetic(n=15, m=10, region=(0, 0, 12, 12), seed=50)
    ga = genetic_solve(inst, 2, GaConfig(population_size=15, generations=200, rng_seed=3))
    rng = np.random.default_rng(6)
    report = multistart_continuous(inst, 2, 1, "given_sites", NmConfig(), rng,
                                   EV, given=ga.facilities, seed=6)
    assert report.objective >= ga.objective
    assert len(report.facilities) == 2


def test_multistart_deterministic():
    inst = gen_synthetic(n=12, m=0, region=(0, 0, 10, 10), seed=60)
    a = multistart_continuous(inst, 2, 3, "random_demand_points", NmConfig(),
                              np.random.default_rng(7), EV, seed=7)
    b = multistart_continuous(inst, 2, 3, "random_demand_points", NmConfig(),
                              np.random.default_rng(7), EV, seed=7)
    assert a.objective == b.objective
    assert a.facilities == b.facilities
    assert a.start_objectives == b.start_objectives


def test_multistart_best_of_starts():
    inst = gen_synthetic(n=14, m=0, region=(0, 0, 12, 12), seed=61)
    report = multistart_continuous(inst, 2, 4, "random_demand_points", NmConfig(),
                                   np.random.default_rng(8), EV, seed=8)
    assert len(report.start_objectives) == 4
    assert report.objective >= max(report.start_objectives) - 1e-12
    assert report.evaluations > 0


def test_multistart_validation():
    inst = gen_synthetic(n=5, m=0, seed=62)
    rng = np.random.default_rng(9)
    with pytest.raises(ValueError):
        multistart_continuous(inst, 2, 0, "random_demand_points", NmConfig(), rng, EV)
    with pytest.raises(ValueError):
        multistart_continuous(inst, 2, 1, "bad_mode", NmConfig(), rng, EV)
    with pytest.raises(ValueError):
        multistart_continuous(inst, 6, 1, "random_demand_points", NmConfig(), rng, EV)
    with pytest.raises(ValueError):
        multistart_continuous(inst, 2, 1, "given_sites", NmConfig(), rng, EV,
                              given=[Point2(0, 0)])


def test_nm_config_validation():
    with pytest.raises(ValueError):
        NmConfig(alpha=0.0)
    with pytest.raises(ValueError):
        NmConfig(beta=1.0)
    with pytest.raises(ValueError):
        NmConfig(gamma=1.0)
    with pytest.raises(ValueError):
        NmConfig(vertex_count=2)
