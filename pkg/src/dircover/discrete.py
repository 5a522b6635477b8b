"""Discrete maximum-cover solvers over candidate facility sites.

Selecting the best p of m sites: exhaustive enumeration for desk-scale
problems, best-improvement swap local search (full and restricted), reverse
greedy reduction, and a genetic algorithm whose merging step runs restricted
ascent on the parents' disjoint sites and on a small random mutation list.

Site sets are sorted tuples of site indices. All randomness flows through a
seeded generator, so runs are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .arcgrid import arc_slots, union_fraction
from .cover import CoverEvaluator, total_weighted_cover
from .geometry import Facility
from .reports import SolveReport

SiteSet = tuple[int, ...]


def _as_site_tuple(sites, m: int) -> SiteSet:
    out = tuple(sorted(int(j) for j in sites))
    if len(set(out)) != len(out):
        raise ValueError(f"site set has repeated indices: {sites}")
    if out and (out[0] < 0 or out[-1] >= m):
        raise ValueError(f"site index out of range [0, {m}): {sites}")
    return out


class _QuadratureSiteObjective:
    """Memoized weighted-cover objective with per-site arc geometry precomputed.

    Slot arrays are assembled per evaluation in ascending site order, which is
    exactly how :func:`joint_cover_quadrature` sees the facilities, so values
    agree with the generic evaluation path.
    """

    def __init__(self, instance, sites: list[Facility], rule):
        demand = instance.demand_points
        self.weights = np.array([dp.weight for dp in demand])
        self.wsum = self.weights.sum()
        if self.wsum <= 0:
            raise ValueError("total demand weight must be positive")
        self.wk = rule.w
        R = np.array([dp.radius for dp in demand])
        cx = np.array([dp.center.x for dp in demand])
        cy = np.array([dp.center.y for dp in demand])
        radii = R[:, None] * rule.u[None, :]
        n, K = radii.shape
        m = len(sites)
        self._starts = np.empty((m, n, K, 2))
        self._ends = np.empty((m, n, K, 2))
        self._full = np.empty((m, n), dtype=bool)
        for j, site in enumerate(sites):
            dx = site.center.x - cx
            dy = site.center.y - cy
            d = np.hypot(dx, dy)
            theta = np.arctan2(dy, dx)
            s, e = arc_slots(d[:, None], theta[:, None], radii, site.cover_radius)
            self._starts[j] = s
            self._ends[j] = e
            self._full[j] = d <= site.cover_radius - R
        self.eval_count = 0
        self._memo: dict[SiteSet, float] = {}

    def __call__(self, sites: SiteSet) -> float:
        cached = self._memo.get(sites)
        if cached is not None:
            return cached
        idx = list(sites)
        if not idx:
            value = 0.0
        else:
            starts = np.concatenate([self._starts[j] for j in idx], axis=-1)
            ends = np.concatenate([self._ends[j] for j in idx], axis=-1)
            frac = union_fraction(starts, ends)
            covers = (frac * self.wk).sum(axis=-1)
            covers = np.where(self._full[idx].any(axis=0), 1.0, covers)
            value = float(np.dot(self.weights, covers) / self.wsum)
        self.eval_count += 1
        self._memo[sites] = value
        return value


class _GenericSiteObjective:
    """Memoized objective through the configured evaluator, any backend."""

    def __init__(self, instance, sites: list[Facility], evaluator: CoverEvaluator):
        self.instance = instance
        self.sites = sites
        self.evaluator = evaluator
        self.eval_count = 0
        self._memo: dict[SiteSet, float] = {}

    def __call__(self, sites: SiteSet) -> float:
        cached = self._memo.get(sites)
        if cached is not None:
            return cached
        if sites:
            value = total_weighted_cover(self.instance,
                                         [self.sites[j] for j in sites],
                                         self.evaluator)
        else:
            value = 0.0
        self.eval_count += 1
        self._memo[sites] = value
        return value


def make_site_objective(instance, sites: list[Facility], evaluator: CoverEvaluator):
    if evaluator.kind == "quadrature":
        return _QuadratureSiteObjective(instance, sites, evaluator.rule)
    return _GenericSiteObjective(instance, sites, evaluator)


def _resolve(instance, sites, evaluator, objective):
    sites = sites if sites is not None else instance.candidate_sites
    if not sites:
        raise ValueError("no candidate sites given")
    evaluator = evaluator if evaluator is not None else CoverEvaluator.quadrature()
    if objective is None:
        objective = make_site_objective(instance, sites, evaluator)
    return sites, evaluator, objective


def enumerate_optimal(instance, p: int, evaluator: CoverEvaluator | None = None,
                      sites: list[Facility] | None = None,
                      budget: int = 2_000_000,
                      objective=None) -> tuple[SiteSet, float]:
    """Exact maximizer over all p-subsets; ties go to the lexicographically
    smallest index set. Refuses when C(m, p) exceeds the subset budget."""
    sites, evaluator, objective = _resolve(instance, sites, evaluator, objective)
    m = len(sites)
    if not 1 <= p <= m:
        raise ValueError(f"need 1 <= p <= m, got p={p}, m={m}")
    total = comb(m, p)
    if total > budget:
        raise ValueError(f"enumeration needs {total} subsets, over the budget {budget}")
    best_set: SiteSet | None = None
    best_val = -1.0
    for combo in itertools.combinations(range(m), p):
        v = objective(combo)
        if v > best_val:
            best_set, best_val = combo, v
    return best_set, best_val


def ascent(start, instance, evaluator: CoverEvaluator | None = None,
           sites: list[Facility] | None = None,
           objective=None, trace: list | None = None) -> SiteSet:
    """Best-improvement swap search: repeatedly apply the best strictly
    improving (selected out, non-selected in) exchange until none remains."""
    sites, evaluator, objective = _resolve(instance, sites, evaluator, objective)
    m = len(sites)
    current = _as_site_tuple(start, m)
    cur_val = objective(current)
    if trace is not None:
        trace.append(cur_val)
    while True:
        chosen = set(current)
        outside = [t for t in range(m) if t not in chosen]
        best_swap = None
        best_val = cur_val
        for s in current:
            rest = chosen - {s}
            for t in outside:
                cand = tuple(sorted(rest | {t}))
                v = objective(cand)
                if v > best_val:
                    best_swap, best_val = cand, v
        if best_swap is None:
            return current
        current, cur_val = best_swap, best_val
        if trace is not None:
            trace.append(cur_val)


def restricted_ascent(start, candidates, instance,
                      evaluator: CoverEvaluator | None = None,
                      sites: list[Facility] | None = None,
                      objective=None, trace: list | None = None) -> SiteSet:
    """Swap search whose incoming sites are limited to ``candidates``.

    When a swap is applied the swapped-out site joins the candidate list and
    the swapped-in site leaves it, so each sweep evaluates p * |candidates|
    exchanges.
    """
    sites, evaluator, objective = _resolve(instance, sites, evaluator, objective)
    m = len(sites)
    current = _as_site_tuple(start, m)
    cands = sorted(int(t) for t in candidates)
    if set(cands) & set(current):
        raise ValueError("candidate list must be disjoint from the start set")
    cur_val = objective(current)
    if trace is not None:
        trace.append(cur_val)
    while True:
        chosen = set(current)
        best_swap = None
        best_val = cur_val
        for s in current:
            rest = chosen - {s}
            for t in cands:
                cand = tuple(sorted(rest | {t}))
                v = objective(cand)
                if v > best_val:
                    best_swap, best_val = (cand, s, t), v
        if best_swap is None:
            return current
        cand, s_out, t_in = best_swap
        current, cur_val = cand, best_val
        cands = sorted(set(cands) - {t_in} | {s_out})
        if trace is not None:
            trace.append(cur_val)


def reverse_greedy(selected, p: int, instance,
                   evaluator: CoverEvaluator | None = None,
                   sites: list[Facility] | None = None,
                   objective=None, trace: list | None = None) -> SiteSet:
    """Drop the least-damaging site until p remain; ties keep smaller indices."""
    sites, evaluator, objective = _resolve(instance, sites, evaluator, objective)
    current = _as_site_tuple(selected, len(sites))
    if len(current) <= p:
        raise ValueError(f"need more than p={p} selected sites, got {len(current)}")
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    if trace is not None:
        trace.append(objective(current))
    while len(current) > p:
        chosen = set(current)
        best_removal = None
        best_val = -1.0
        for s in current:
            cand = tuple(sorted(chosen - {s}))
            v = objective(cand)
            if v > best_val:
                best_removal, best_val = cand, v
        current = best_removal
        if trace is not None:
            trace.append(best_val)
    return current


@dataclass(frozen=True)
class PopulationMember:
    sites: SiteSet
    objective: float


@dataclass
class GaConfig:
    population_size: int = 100
    generations: int = 10_000
    second_parent_candidates: int = 2
    initial_improve_fraction: float = 0.20
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ValueError("population size must be >= 2")
        if self.generations < 0:
            raise ValueError("generation count must be >= 0")
        if self.second_parent_candidates < 1:
            raise ValueError("need at least one potential second parent")
        if not 0.0 <= self.initial_improve_fraction <= 1.0:
            raise ValueError("initial improve fraction must lie in [0, 1]")


def select_parents(population: list[PopulationMember], P: int,
                   rng: np.random.Generator) -> tuple[PopulationMember, PopulationMember]:
    """Pick a uniform first parent, then the least-similar of P random others.

    Similarity is the number of shared sites; among equally dissimilar
    candidates the choice is uniform.
    """
    pop = len(population)
    if P < 1:
        raise ValueError("need P >= 1 potential second parents")
    if P >= pop:
        raise ValueError(f"need population size > P, got pop={pop}, P={P}")
    first_idx = int(rng.integers(pop))
    first = population[first_idx]
    others = np.array([k for k in range(pop) if k != first_idx])
    cand_idx = rng.choice(others, size=P, replace=False)
    first_set = set(first.sites)
    overlaps = np.array([len(first_set & set(population[k].sites)) for k in cand_idx])
    minimal = cand_idx[overlaps == overlaps.min()]
    pick = minimal[int(rng.integers(len(minimal)))] if len(minimal) > 1 else minimal[0]
    return first, population[int(pick)]


def merge_offspring(parent1: PopulationMember, parent2: PopulationMember,
                    instance, rng: np.random.Generator,
                    evaluator: CoverEvaluator | None = None,
                    sites: list[Facility] | None = None,
                    objective=None) -> PopulationMember:
    """Combine two parents into an improved offspring.

    The parents' common sites are kept; the solution is filled up with random
    sites from the symmetric difference and polished by restricted ascent
    against the leftover difference sites. A second restricted ascent against
    floor(p/2) random unused sites mutates locations back in that neither
    parent carried.
    """
    sites, evaluator, objective = _resolve(instance, sites, evaluator, objective)
    m = len(sites)
    p = len(parent1.sites)
    if len(parent2.sites) != p:
        raise ValueError("parents must select the same number of sites")
    set1, set2 = set(parent1.sites), set(parent2.sites)
    common = sorted(set1 & set2)
    diff = sorted(set1 ^ set2)
    fill = p - len(common)
    if fill > 0:
        chosen = [int(j) for j in rng.choice(np.array(diff), size=fill, replace=False)]
        solution = tuple(sorted(common + chosen))
        leftover = sorted(set(diff) - set(chosen))
    else:
        solution = tuple(common)
        leftover = []
    if leftover:
        solution = restricted_ascent(solution, leftover, instance,
                                     evaluator, sites, objective)
    pool = [j for j in range(m) if j not in set(solution)]
    mut_count = min(p // 2, len(pool))
    if mut_count > 0:
        mutation = [int(j) for j in rng.choice(np.array(pool), size=mut_count, replace=False)]
        solution = restricted_ascent(solution, sorted(mutation), instance,
                                     evaluator, sites, objective)
    return PopulationMember(solution, objective(solution))


def genetic_solve(instance, p: int, config: GaConfig | None = None,
                  evaluator: CoverEvaluator | None = None,
                  sites: list[Facility] | None = None,
                  _population_out: list | None = None) -> SolveReport:
    """Run the genetic algorithm and report the best member found.

    A random distinct population is partially improved by ascent; each
    generation one offspring is produced and replaces the worst member only
    when strictly better than it and not identical to any current member.
    """
    config = config if config is not None else GaConfig()
    sites, evaluator, objective = _resolve(instance, sites, evaluator, None)
    m = len(sites)
    if not 1 <= p <= m:
        raise ValueError(f"need 1 <= p <= m, got p={p}, m={m}")
    pop_size = config.population_size
    if pop_size > comb(m, p):
        raise ValueError(f"population {pop_size} exceeds the {comb(m, p)} distinct site sets")
    rng = np.random.default_rng(config.rng_seed)

    members: list[PopulationMember] = []
    seen: set[SiteSet] = set()
    for _ in range(pop_size):
        cand: SiteSet = ()
        for _attempt in range(100):
            cand = tuple(sorted(int(j) for j in rng.choice(m, size=p, replace=False)))
            if cand not in seen:
                break
        seen.add(cand)
        members.append(PopulationMember(cand, objective(cand)))

    improve_count = int(config.initial_improve_fraction * pop_size)
    if improve_count > 0:
        picked = rng.choice(pop_size, size=improve_count, replace=False)
        for i in sorted(int(k) for k in picked):
            improved = ascent(members[i].sites, instance, evaluator, sites, objective)
            # keep the member unchanged rather than duplicating another one
            if improved != members[i].sites and any(improved == mbr.sites for mbr in members):
                continue
            members[i] = PopulationMember(improved, objective(improved))

    best_val = max(mbr.objective for mbr in members)
    trace = [best_val]
    for _gen in range(config.generations):
        first, second = select_parents(members, config.second_parent_candidates, rng)
        offspring = merge_offspring(first, second, instance, rng,
                                    evaluator, sites, objective)
        worst_i = min(range(pop_size), key=lambda k: members[k].objective)
        if (offspring.objective > members[worst_i].objective
                and all(offspring.sites != mbr.sites for mbr in members)):
            members[worst_i] = offspring
            if offspring.objective > best_val:
                best_val = offspring.objective
        trace.append(best_val)

    if _population_out is not None:
        _population_out.extend(members)
    best = max(members, key=lambda mbr: mbr.objective)
    return SolveReport(
        solver="genetic",
        seed=config.rng_seed,
        objective=best.objective,
        facilities=[sites[j].center for j in best.sites],
        site_indices=list(best.sites),
        evaluations=objective.eval_count,
        trace=trace,
        config={
            "p": p,
            "population_size": pop_size,
            "generations": config.generations,
            "second_parent_candidates": config.second_parent_candidates,
            "initial_improve_fraction": config.initial_improve_fraction,
            **evaluator.describe(),
        },
    )
