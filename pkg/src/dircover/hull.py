"""Convex hull of demand centers and nearest-point projection onto it.

Projecting a facility from outside the hull onto it moves the facility closer
to every demand center at once, so no demand point loses cover. The hull
therefore bounds the search region for the continuous solver.
"""

from __future__ import annotations

from .geometry import Point2


def _cross(o: Point2, a: Point2, b: Point2) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def convex_hull(points: list[Point2]) -> list[Point2]:
    """Counterclockwise convex hull via the monotone chain construction.

    Collinear inputs collapse to a segment, a single point to itself.
    Interior and duplicate points are dropped.
    """
    if not points:
        raise ValueError("convex hull needs at least one point")
    unique = sorted(set((p.x, p.y) for p in points))
    if len(unique) == 1:
        return [Point2(*unique[0])]
    pts = [Point2(x, y) for x, y in unique]

    lower: list[Point2] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2 and len(pts) >= 2:
        # All points collinear: keep the two extremes.
        hull = [pts[0], pts[-1]]
    return hull


def _point_in_hull(point: Point2, hull: list[Point2]) -> bool:
    if len(hull) == 1:
        return point.x == hull[0].x and point.y == hull[0].y
    if len(hull) == 2:
        a, b = hull
        if _cross(a, b, point) != 0.0:
            return False
        lo_x, hi_x = min(a.x, b.x), max(a.x, b.x)
        lo_y, hi_y = min(a.y, b.y), max(a.y, b.y)
        return lo_x <= point.x <= hi_x and lo_y <= point.y <= hi_y
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)]
        if _cross(a, b, point) < 0.0:
            return False
    return True


def _project_to_segment(p: Point2, a: Point2, b: Point2) -> Point2:
    ax, ay = b.x - a.x, b.y - a.y
    denom = ax * ax + ay * ay
    if denom == 0.0:
        return a
    t = ((p.x - a.x) * ax + (p.y - a.y) * ay) / denom
    t = min(1.0, max(0.0, t))
    return Point2(a.x + t * ax, a.y + t * ay)


def project_to_hull(point: Point2, hull: list[Point2]) -> Point2:
    """Nearest point of the hull (boundary or interior) to ``point``.

    Inside points are returned unchanged; outside points map to the closest
    boundary vertex or edge foot.
    """
    if not hull:
        raise ValueError("hull must be nonempty")
    if _point_in_hull(point, hull):
        return point
    if len(hull) == 1:
        return hull[0]
    best = None
    best_d2 = None
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)] if len(hull) > 2 else hull[1]
        cand = _project_to_segment(point, a, b)
        d2 = (cand.x - point.x) ** 2 + (cand.y - point.y) ** 2
        if best_d2 is None or d2 < best_d2:
            best, best_d2 = cand, d2
        if len(hull) == 2:
            break
    return best
