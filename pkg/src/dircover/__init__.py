"""Directional gradual cover: evaluators and maximum-cover location solvers."""

from .geometry import (ArcInterval, DemandPoint, Facility, Point2, arc_cover,
                       circular_union_fraction, lens_cover_analytic)
from .quadrature import QuadratureRule, make_quadrature_rule
from .hexpattern import HexPattern, make_hex_pattern
from .cover import (CoverEvaluator, joint_cover_hexagonal,
                    joint_cover_montecarlo, joint_cover_quadrature,
                    total_weighted_cover)
from .hull import convex_hull, project_to_hull
from .instances import (Instance, InstanceParseError, gen_synthetic,
                        load_instance, save_instance, six_facility_example)
from .reports import SolveReport, read_report, write_report
from .discrete import (GaConfig, PopulationMember, ascent, enumerate_optimal,
                       genetic_solve, merge_offspring, restricted_ascent,
                       reverse_greedy, select_parents)
from .continuous import (ContinuousSolution, NmConfig, cooper_cycle,
                         multistart_continuous, nelder_mead_maximize,
                         nelder_mead_relocate)

__version__ = "0.1.0"

__all__ = [
    "ArcInterval", "DemandPoint", "Facility", "Point2", "arc_cover",
    "circular_union_fraction", "lens_cover_analytic",
    "QuadratureRule", "make_quadrature_rule",
    "HexPattern", "make_hex_pattern",
    "CoverEvaluator", "joint_cover_hexagonal", "joint_cover_montecarlo",
    "joint_cover_quadrature", "total_weighted_cover",
    "convex_hull", "project_to_hull",
    "Instance", "InstanceParseError", "gen_synthetic", "load_instance",
    "save_instance", "six_facility_example",
    "SolveReport", "read_report", "write_report",
    "GaConfig", "PopulationMember", "ascent", "enumerate_optimal",
    "genetic_solve", "merge_offspring", "restricted_ascent", "reverse_greedy",
    "select_parents",
    "ContinuousSolution", "NmConfig", "cooper_cycle", "multistart_continuous",
    "nelder_mead_maximize", "nelder_mead_relocate",
]
