"""Solver result records and their JSON round trip.

Floats are written with 12 significant digits, which makes the serialized
form a fixed point: writing, reading, and writing again produces identical
bytes. Reruns with the same seed therefore yield byte-identical files as long
as volatile fields (wall time) are left out, which is the default in the CLI.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .geometry import Point2


@dataclass
class SolveReport:
    """Outcome of one solver run: locations, objective, and bookkeeping."""

    solver: str
    seed: int | None
    objective: float
    facilities: list[Point2]
    site_indices: list[int] | None = None
    evaluations: int = 0
    wall_time: float | None = None
    trace: list[float] | None = None
    start_objectives: list[float] | None = None
    config: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0.0 <= self.objective <= 1.0:
            raise ValueError(f"objective must lie in [0, 1], got {self.objective}")


def _round_sig(value: float) -> float:
    return float(f"{value:.12g}")


def _jsonable(obj):
    if isinstance(obj, float):
        return _round_sig(obj)
    if isinstance(obj, Point2):
        return {"x": _round_sig(obj.x), "y": _round_sig(obj.y)}
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def report_to_json(report: SolveReport) -> str:
    payload = {
        "solver": report.solver,
        "seed": report.seed,
        "objective": report.objective,
        "facilities": report.facilities,
        "site_indices": report.site_indices,
        "evaluations": report.evaluations,
        "wall_time": report.wall_time,
        "trace": report.trace,
        "start_objectives": report.start_objectives,
        "config": report.config,
    }
    return json.dumps(_jsonable(payload), indent=2, allow_nan=False) + "\n"


def write_report(report: SolveReport, path) -> None:
    Path(path).write_text(report_to_json(report), encoding="utf-8")


def read_report(path) -> SolveReport:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not a valid report file: {exc}") from exc
    try:
        facilities = [Point2(f["x"], f["y"]) for f in payload["facilities"]]
        return SolveReport(
            solver=payload["solver"],
            seed=payload["seed"],
            objective=payload["objective"],
            facilities=facilities,
            site_indices=payload.get("site_indices"),
            evaluations=payload.get("evaluations", 0),
            wall_time=payload.get("wall_time"),
            trace=payload.get("trace"),
            start_objectives=payload.get("start_objectives"),
            config=payload.get("config") or {},
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path}: report file missing field: {exc}") from exc
