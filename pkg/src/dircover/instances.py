"""Problem instances: CSV I/O, synthetic generation, and the bundled example.

Demand files carry ``id,x,y,weight,radius`` rows; candidate-site files carry
``id,x,y`` with an optional ``cover_radius`` column overriding the per-run
default. Coordinates are planar miles.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .geometry import DemandPoint, Facility, Point2

DEMAND_COLUMNS = ("id", "x", "y", "weight", "radius")
SITE_COLUMNS = ("id", "x", "y")


class InstanceParseError(ValueError):
    """Raised when an instance file does not match the expected schema."""


@dataclass
class Instance:
    """n demand points plus an optional list of m candidate facility sites."""

    demand_points: list[DemandPoint]
    candidate_sites: list[Facility] | None = None
    default_cover_radius: float = 3.0

    def __post_init__(self) -> None:
        if not self.demand_points:
            raise ValueError("instance needs at least one demand point")
        ids = [dp.id for dp in self.demand_points]
        if len(set(ids)) != len(ids):
            raise ValueError("demand point ids must be unique")
        if self.candidate_sites is not None and not self.candidate_sites:
            raise ValueError("candidate site list, when given, must be nonempty")
        if self.default_cover_radius <= 0:
            raise ValueError("default cover radius must be > 0")

    @property
    def n(self) -> int:
        return len(self.demand_points)

    @property
    def m(self) -> int:
        return 0 if self.candidate_sites is None else len(self.candidate_sites)

    def site_facilities(self, indices) -> list[Facility]:
        if self.candidate_sites is None:
            raise ValueError("instance has no candidate sites")
        return [self.candidate_sites[j] for j in indices]


def _parse_float(row_no: int, column: str, raw: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise InstanceParseError(
            f"row {row_no}, column {column!r}: not a number: {raw!r}") from None
    if not np.isfinite(value):
        raise InstanceParseError(f"row {row_no}, column {column!r}: non-finite value")
    return value


def _read_rows(path, required) -> list[dict]:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames
        if header is None:
            raise InstanceParseError(f"{path}: empty file, expected header row")
        missing = [c for c in required if c not in header]
        if missing:
            raise InstanceParseError(f"{path}: missing columns {missing}")
        return list(reader)


def load_instance(demand_path, sites_path=None, default_cover_radius: float = 3.0) -> Instance:
    """Load a demand CSV and optionally a candidate-sites CSV."""
    rows = _read_rows(demand_path, DEMAND_COLUMNS)
    if not rows:
        raise InstanceParseError(f"{demand_path}: no demand rows")
    demand = []
    seen = set()
    for row_no, row in enumerate(rows, start=2):
        dp_id = (row.get("id") or "").strip()
        if not dp_id:
            raise InstanceParseError(f"row {row_no}, column 'id': empty id")
        if dp_id in seen:
            raise InstanceParseError(f"row {row_no}, column 'id': duplicate id {dp_id!r}")
        seen.add(dp_id)
        x = _parse_float(row_no, "x", row.get("x"))
        y = _parse_float(row_no, "y", row.get("y"))
        weight = _parse_float(row_no, "weight", row.get("weight"))
        radius = _parse_float(row_no, "radius", row.get("radius"))
        if radius <= 0:
            raise InstanceParseError(f"row {row_no}, column 'radius': must be > 0")
        if weight < 0:
            raise InstanceParseError(f"row {row_no}, column 'weight': must be >= 0")
        demand.append(DemandPoint(dp_id, Point2(x, y), radius, weight))

    sites = None
    if sites_path is not None:
        site_rows = _read_rows(sites_path, SITE_COLUMNS)
        if not site_rows:
            raise InstanceParseError(f"{sites_path}: no site rows")
        sites = []
        seen_sites = set()
        for row_no, row in enumerate(site_rows, start=2):
            site_id = (row.get("id") or "").strip()
            if not site_id:
                raise InstanceParseError(f"row {row_no}, column 'id': empty id")
            if site_id in seen_sites:
                raise InstanceParseError(f"row {row_no}, column 'id': duplicate id {site_id!r}")
            seen_sites.add(site_id)
            x = _parse_float(row_no, "x", row.get("x"))
            y = _parse_float(row_no, "y", row.get("y"))
            raw_d = (row.get("cover_radius") or "").strip() if "cover_radius" in row else ""
            D = _parse_float(row_no, "cover_radius", raw_d) if raw_d else default_cover_radius
            if D <= 0:
                raise InstanceParseError(f"row {row_no}, column 'cover_radius': must be > 0")
            sites.append(Facility(Point2(x, y), D))
    return Instance(demand, sites, default_cover_radius)


def load_facilities(path, default_cover_radius: float = 3.0) -> list[Facility]:
    """Load a facilities CSV (site schema); an empty file means no facilities."""
    rows = _read_rows(path, SITE_COLUMNS)
    facilities = []
    for row_no, row in enumerate(rows, start=2):
        x = _parse_float(row_no, "x", row.get("x"))
        y = _parse_float(row_no, "y", row.get("y"))
        raw_d = (row.get("cover_radius") or "").strip() if "cover_radius" in row else ""
        D = _parse_float(row_no, "cover_radius", raw_d) if raw_d else default_cover_radius
        if D <= 0:
            raise InstanceParseError(f"row {row_no}, column 'cover_radius': must be > 0")
        facilities.append(Facility(Point2(x, y), D))
    return facilities


def save_instance(instance: Instance, demand_path, sites_path=None) -> None:
    """Write the demand CSV (and the sites CSV when the instance has sites)."""
    demand_path = Path(demand_path)
    with demand_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(DEMAND_COLUMNS)
        for dp in instance.demand_points:
            writer.writerow([dp.id, repr(dp.center.x), repr(dp.center.y),
                             repr(dp.weight), repr(dp.radius)])
    if sites_path is not None:
        if instance.candidate_sites is None:
            raise ValueError("instance has no candidate sites to save")
        with Path(sites_path).open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(SITE_COLUMNS + ("cover_radius",))
            for j, site in enumerate(instance.candidate_sites):
                writer.writerow([str(j), repr(site.center.x), repr(site.center.y),
                                 repr(site.cover_radius)])


def gen_synthetic(n: int, m: int, region=(0.0, 0.0, 20.0, 20.0),
                  weight_range=(1.0, 10.0), radius: float = 1.0,
                  cover_radius: float = 3.0, seed: int = 0) -> Instance:
    """Seeded uniform instance: n demand discs and m candidate sites in a box."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 demand points and m >= 0 sites")
    xmin, ymin, xmax, ymax = map(float, region)
    if not (xmax > xmin and ymax > ymin):
        raise ValueError(f"degenerate region {region}")
    wlo, whi = map(float, weight_range)
    if not (0.0 <= wlo <= whi):
        raise ValueError(f"invalid weight range {weight_range}")
    if radius <= 0 or cover_radius <= 0:
        raise ValueError("radii must be > 0")
    rng = np.random.default_rng(seed)
    demand = []
    for i in range(n):
        x = float(rng.uniform(xmin, xmax))
        y = float(rng.uniform(ymin, ymax))
        w = float(rng.uniform(wlo, whi))
        demand.append(DemandPoint(str(i), Point2(x, y), radius, w))
    sites = None
    if m > 0:
        sites = []
        for _ in range(m):
            x = float(rng.uniform(xmin, xmax))
            y = float(rng.uniform(ymin, ymax))
            sites.append(Facility(Point2(x, y), cover_radius))
    return Instance(demand, sites, cover_radius)


def six_facility_example(radius: float = 1.0) -> tuple[DemandPoint, list[Facility]]:
    """The bundled six-facility scene: one demand disc at the origin.

    Cover radii differ per facility, so the joint cover is a nontrivial union
    of arcs in every direction; the scene exercises all estimator branches.
    """
    demand = DemandPoint("0", Point2(0.0, 0.0), radius, 1.0)
    facilities = [
        Facility(Point2(2.0, 0.0), 1.8),
        Facility(Point2(0.0, 2.0), 1.5),
        Facility(Point2(-3.0, 0.0), 2.7),
        Facility(Point2(0.0, -2.5), 2.4),
        Facility(Point2(2.0, 2.0), 2.6),
        Facility(Point2(0.0, -1.5), 1.2),
    ]
    return demand, facilities
