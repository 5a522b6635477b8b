import math

import numpy as np
import pytest

from dircover import (ArcInterval, DemandPoint, Facility, Point2, arc_cover,
                      circular_union_fraction, lens_cover_analytic)

TWO_PI = 2.0 * math.pi


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        Point2(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Point2(0.0, float("inf"))


def test_demand_point_invariants():
    with pytest.raises(ValueError):
        DemandPoint("a", Point2(0, 0), 0.0, 1.0)
    with pytest.raises(ValueError):
        DemandPoint("a", Point2(0, 0), 1.0, -0.5)
    dp = DemandPoint("a", Point2(0, 0), 1.0, 0.0)
    assert dp.weight == 0.0


def test_facility_invariants():
    with pytest.raises(ValueError):
        Facility(Point2(0, 0), 0.0)


def test_arc_interval_invariants():
    with pytest.raises(ValueError):
        ArcInterval(0.0, TWO_PI, "partial")
    with pytest.raises(ValueError):
        ArcInterval(0.0, 0.0, "partial")
    with pytest.raises(ValueError):
        ArcInterval(-0.1, 1.0, "partial")
    assert ArcInterval.full().extent == TWO_PI
    assert ArcInterval.empty().extent == 0.0


def test_arc_cover_concentric_containment():
    arc = arc_cover(1.0, Point2(0, 0), Facility(Point2(0, 0), 3.0))
    assert arc.tag == "full"
    arc = arc_cover(1.0, Point2(0, 0), Facility(Point2(0, 0), 0.5))
    assert arc.tag == "empty"


def test_arc_cover_tangent_is_empty():
    # d = D + r: circles touch in a single point, measure zero
    arc = arc_cover(1.0, Point2(0, 0), Facility(Point2(4.0, 0.0), 3.0))
    assert arc.tag == "empty"


def test_arc_cover_enclosing_full():
    arc = arc_cover(1.0, Point2(0, 0), Facility(Point2(1.5, 0.0), 3.0))
    assert arc.tag == "full"


def test_arc_cover_facility_disc_inside_circle():
    # facility disc entirely inside the circle: d + D <= r touches no circumference point
    arc = arc_cover(2.0, Point2(0, 0), Facility(Point2(0.5, 0.0), 1.0))
    assert arc.tag == "empty"


def test_arc_cover_partial_law_of_cosines():
    # r=1, facility at (2, 0) with D=1.8: cos(half) = (1 + 4 - 3.24) / 4 = 0.44
    arc = arc_cover(1.0, Point2(0, 0), Facility(Point2(2.0, 0.0), 1.8))
    assert arc.tag == "partial"
    half = math.acos(0.44)
    assert arc.extent == pytest.approx(2.0 * half, abs=1e-12)
    # centered at bearing 0
    mid = (arc.start + arc.extent / 2.0) % TWO_PI
    assert min(mid, TWO_PI - mid) == pytest.approx(0.0, abs=1e-12)


def test_arc_cover_matches_circumference_sampling():
    # cross-check the covered arc against direct point membership on the circle
    rng = np.random.default_rng(11)
    for _ in range(50):
        r = rng.uniform(0.2, 2.0)
        d = rng.uniform(0.0, 4.0)
        D = rng.uniform(0.2, 3.0)
        bearing = rng.uniform(0, TWO_PI)
        fac = Facility(Point2(d * math.cos(bearing), d * math.sin(bearing)), D)
        arc = arc_cover(r, Point2(0, 0), fac)
        angles = rng.uniform(0, TWO_PI, size=400)
        px, py = r * np.cos(angles), r * np.sin(angles)
        inside = (px - fac.center.x) ** 2 + (py - fac.center.y) ** 2 <= D * D
        if arc.tag == "full":
            claimed = np.ones_like(inside)
        elif arc.tag == "empty":
            claimed = np.zeros_like(inside)
        else:
            rel = (angles - arc.start) % TWO_PI
            claimed = rel <= arc.extent
        # disagreements can only occur within rounding of the arc ends
        disagree = claimed != inside
        if disagree.any():
            rel = (angles[disagree] - arc.start) % TWO_PI
            dist_to_edge = np.minimum(np.abs(rel), np.abs(rel - arc.extent))
            assert dist_to_edge.max() < 1e-6


def test_union_fraction_empty_and_full():
    assert circular_union_fraction([]) == 0.0
    assert circular_union_fraction([ArcInterval.empty()] * 3) == 0.0
    arcs = [ArcInterval.partial(0.0, 1.0), ArcInterval.full()]
    assert circular_union_fraction(arcs) == 1.0


def test_union_fraction_overlap_and_wraparound():
    arcs = [ArcInterval.partial(0.0, math.pi),
            ArcInterval.partial(math.pi / 2.0, math.pi)]
    assert circular_union_fraction(arcs) == pytest.approx(0.75, abs=1e-12)
    wrap = [ArcInterval.partial(7.0 * math.pi / 4.0, math.pi / 2.0)]
    assert circular_union_fraction(wrap) == pytest.approx(0.25, abs=1e-12)


def test_union_fraction_matches_angular_sampling():
    # oracle: dense angular grid membership count
    rng = np.random.default_rng(5)
    grid = (np.arange(1_000_000) + 0.5) * (TWO_PI / 1_000_000)
    for _ in range(20):
        arcs = []
        for _k in range(rng.integers(1, 6)):
            start = rng.uniform(0, TWO_PI)
            extent = rng.uniform(0, TWO_PI * 0.999)
            arcs.append(ArcInterval.partial(start, extent) if extent > 0
                        else ArcInterval.empty())
        covered = np.zeros_like(grid, dtype=bool)
        for arc in arcs:
            if arc.tag == "partial":
                rel = (grid - arc.start) % TWO_PI
                covered |= rel <= arc.extent
        oracle = covered.mean()
        assert circular_union_fraction(arcs) == pytest.approx(oracle, abs=5e-6)


def test_lens_trivial_cases():
    dp = DemandPoint("0", Point2(0, 0), 1.0, 1.0)
    assert lens_cover_analytic(dp, Facility(Point2(0, 0), 1.0)) == 1.0
    assert lens_cover_analytic(dp, Facility(Point2(0, 0), 5.0)) == 1.0
    assert lens_cover_analytic(dp, Facility(Point2(4.0, 0.0), 3.0)) == 0.0
    # facility disc strictly inside the demand disc
    big = DemandPoint("1", Point2(0, 0), 2.0, 1.0)
    assert lens_cover_analytic(big, Facility(Point2(0.1, 0.0), 1.0)) == pytest.approx(0.25)


def test_lens_symmetric_crossing_value():
    # frozen from two independent routes: the closed form and a 4e6-point
    # radial integration of the covered arc width agree to 2e-15
    dp = DemandPoint("0", Point2(0, 0), 1.0, 1.0)
    fac = Facility(Point2(3.0, 0.0), 3.0)
    assert lens_cover_analytic(dp, fac) == pytest.approx(0.464533102441601, abs=1e-12)


def test_lens_matches_disc_sampling():
    # oracle: uniform polar sampling of the demand disc, written independently
    rng = np.random.default_rng(99)
    for _ in range(25):
        R = rng.uniform(0.3, 2.5)
        D = rng.uniform(0.3, 3.5)
        d = rng.uniform(0.0, R + D + 0.5)
        dp = DemandPoint("0", Point2(0, 0), R, 1.0)
        fac = Facility(Point2(d, 0.0), D)
        exact = lens_cover_analytic(dp, fac)
        n = 200_000
        r = R * np.sqrt(rng.random(n))
        th = TWO_PI * rng.random(n)
        px, py = r * np.cos(th), r * np.sin(th)
        est = (((px - d) ** 2 + py ** 2) <= D * D).mean()
        se = math.sqrt(max(est * (1 - est), 1e-12) / n)
        assert abs(exact - est) < 5 * se + 1e-9
