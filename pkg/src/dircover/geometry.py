"""Planar geometry for disc-shaped demand and circular facility cover.

A demand point is a disc of radius ``R`` around a community center; a
facility covers everything within ``D`` of its own center. The covered part
of a demand disc is the union of the intersections with the facility discs,
so where a facility sits relative to the others matters, not only how far
away it is. This module holds the exact single-facility formulas and the
covered-arc primitives the numerical integrators are built on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# Below this center separation the partial-arc formula divides by ~0, so the
# configuration is treated as concentric.
CONCENTRIC_EPS = 1e-12


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class Point2:
    """A point in the plane, coordinates in miles."""

    x: float
    y: float

    def __post_init__(self) -> None:
        _require_finite("x", self.x)
        _require_finite("y", self.y)

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class DemandPoint:
    """A community: disc of radius ``radius`` around ``center``, weighted by population."""

    id: str
    center: Point2
    radius: float
    weight: float

    def __post_init__(self) -> None:
        _require_finite("radius", self.radius)
        _require_finite("weight", self.weight)
        if self.radius <= 0:
            raise ValueError(f"demand radius must be > 0, got {self.radius}")
        if self.weight < 0:
            raise ValueError(f"demand weight must be >= 0, got {self.weight}")


@dataclass(frozen=True)
class Facility:
    """A located facility covering the disc of radius ``cover_radius``."""

    center: Point2
    cover_radius: float

    def __post_init__(self) -> None:
        _require_finite("cover_radius", self.cover_radius)
        if self.cover_radius <= 0:
            raise ValueError(f"cover radius must be > 0, got {self.cover_radius}")


ARC_EMPTY = "empty"
ARC_FULL = "full"
ARC_PARTIAL = "partial"


@dataclass(frozen=True)
class ArcInterval:
    """A covered arc on a circle: ``start`` in [0, 2pi), ``extent`` in [0, 2pi]."""

    start: float
    extent: float
    tag: str

    def __post_init__(self) -> None:
        if self.tag not in (ARC_EMPTY, ARC_FULL, ARC_PARTIAL):
            raise ValueError(f"unknown arc tag {self.tag!r}")
        if not 0.0 <= self.start < TWO_PI:
            raise ValueError(f"arc start must lie in [0, 2pi), got {self.start}")
        if (self.extent == TWO_PI) != (self.tag == ARC_FULL):
            raise ValueError("extent 2pi is reserved for full arcs")
        if (self.extent == 0.0) != (self.tag == ARC_EMPTY):
            raise ValueError("extent 0 is reserved for empty arcs")
        if not 0.0 <= self.extent <= TWO_PI:
            raise ValueError(f"arc extent must lie in [0, 2pi], got {self.extent}")

    @classmethod
    def empty(cls) -> "ArcInterval":
        return cls(0.0, 0.0, ARC_EMPTY)

    @classmethod
    def full(cls) -> "ArcInterval":
        return cls(0.0, TWO_PI, ARC_FULL)

    @classmethod
    def partial(cls, start: float, extent: float) -> "ArcInterval":
        return cls(start, extent, ARC_PARTIAL)


def arc_cover(circle_radius: float, demand_center: Point2, facility: Facility) -> ArcInterval:
    """Arc of the circle of radius ``circle_radius`` around ``demand_center``
    that lies inside the facility's cover disc.

    With ``d`` the center separation and ``D`` the cover radius, the circle is
    fully covered when ``d <= D - r``, untouched when ``d >= D + r`` or when
    the cover disc does not reach it (``d + D <= r``), and otherwise covered
    on an arc of half-width ``arccos((r^2 + d^2 - D^2) / (2 r d))`` centered
    on the facility's bearing.
    """
    r = circle_radius
    if r <= 0:
        raise ValueError(f"circle radius must be > 0, got {r}")
    d = demand_center.distance_to(facility.center)
    D = facility.cover_radius
    if d <= D - r:
        return ArcInterval.full()
    if d >= D + r:
        return ArcInterval.empty()
    if d < CONCENTRIC_EPS:
        return ArcInterval.full() if D >= r else ArcInterval.empty()
    if d + D <= r:
        return ArcInterval.empty()
    cos_half = (r * r + d * d - D * D) / (2.0 * r * d)
    half = math.acos(min(1.0, max(-1.0, cos_half)))
    if half <= 0.0:
        return ArcInterval.empty()
    bearing = math.atan2(facility.center.y - demand_center.y,
                         facility.center.x - demand_center.x)
    start = (bearing - half) % TWO_PI
    return ArcInterval.partial(start, 2.0 * half)


def circular_union_fraction(intervals: list[ArcInterval]) -> float:
    """Fraction of the circle [0, 2pi) covered by the union of the arcs."""
    segments: list[tuple[float, float]] = []
    for arc in intervals:
        if arc.tag == ARC_FULL:
            return 1.0
        if arc.tag == ARC_EMPTY:
            continue
        end = arc.start + arc.extent
        if end <= TWO_PI:
            segments.append((arc.start, end))
        else:
            segments.append((arc.start, TWO_PI))
            segments.append((0.0, end - TWO_PI))
    if not segments:
        return 0.0
    segments.sort()
    covered = 0.0
    cur_lo, cur_hi = segments[0]
    for lo, hi in segments[1:]:
        if lo > cur_hi:
            covered += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    covered += cur_hi - cur_lo
    return min(covered / TWO_PI, 1.0)


def lens_cover_analytic(demand: DemandPoint, facility: Facility) -> float:
    """Exact cover fraction of one demand disc by one facility disc.

    Intersection area of two circles (radius R at the demand center, radius D
    at the facility) divided by the demand disc area pi R^2. Containment
    branches are taken before the general lens formula, which is invalid for
    ``d <= |D - R|``.
    """
    R = demand.radius
    D = facility.cover_radius
    d = demand.center.distance_to(facility.center)
    if d >= D + R:
        return 0.0
    if d <= abs(D - R):
        if D >= R:
            return 1.0
        return min(1.0, (D * D) / (R * R))
    a_demand = math.acos(min(1.0, max(-1.0, (d * d + R * R - D * D) / (2.0 * d * R))))
    a_facility = math.acos(min(1.0, max(-1.0, (d * d + D * D - R * R) / (2.0 * d * D))))
    k = (-d + R + D) * (d + R - D) * (d - R + D) * (d + R + D)
    area = R * R * a_demand + D * D * a_facility - 0.5 * math.sqrt(max(k, 0.0))
    return min(1.0, area / (math.pi * R * R))
