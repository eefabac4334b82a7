"""Problem-agnostic many-objective machinery.

Pareto dominance, fast non-dominated sorting, simplex-lattice reference
points, the reference-point environmental selection, crowding-distance
selection, simulated binary crossover and polynomial mutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .encoding import ObjectiveVector, Solution


@dataclass(eq=False)
class Individual:
    """A genome with its evaluated objectives and non-domination rank."""

    genome: Solution
    objectives: ObjectiveVector
    rank: Optional[int] = None

    def key(self) -> tuple[float, float, float]:
        return self.objectives.as_tuple()


@dataclass(frozen=True)
class ReferencePointSet:
    points: np.ndarray  # (R, n_obj), rows on the unit simplex
    divisions: int


def _as_tuple(obj) -> Sequence[float]:
    return obj.as_tuple() if hasattr(obj, "as_tuple") else tuple(obj)


def dominates(a, b) -> bool:
    """True iff ``a`` is no worse in every objective and better in one."""
    ta, tb = _as_tuple(a), _as_tuple(b)
    return all(x <= y for x, y in zip(ta, tb)) and any(x < y for x, y in zip(ta, tb))


def fast_non_dominated_sort(pop: list[Individual]) -> list[list[Individual]]:
    """Partition into fronts; also stamps 1-based ranks on the individuals."""
    n = len(pop)
    keys = np.array([ind.key() for ind in pop])
    dominated_by: list[list[int]] = [[] for _ in range(n)]
    dom_count = np.zeros(n, dtype=int)
    # a dominates b <=> all(a <= b) and any(a < b), vectorized pairwise
    le = (keys[:, None, :] <= keys[None, :, :]).all(axis=2)
    lt = (keys[:, None, :] < keys[None, :, :]).any(axis=2)
    dom = le & lt
    for i in range(n):
        dominated_by[i] = list(np.flatnonzero(dom[i]))
        dom_count[i] = int(dom[:, i].sum())
    fronts: list[list[int]] = []
    current = list(np.flatnonzero(dom_count == 0))
    rank = 1
    while current:
        for i in current:
            pop[i].rank = rank
        fronts.append(current)
        nxt = []
        for i in current:
            for j in dominated_by[i]:
                dom_count[j] -= 1
                if dom_count[j] == 0:
                    nxt.append(j)
        current = nxt
        rank += 1
    return [[pop[i] for i in front] for front in fronts]


def das_dennis_points(n_obj: int, divisions: int) -> ReferencePointSet:
    """Uniform simplex lattice with the given number of divisions per axis."""
    if divisions < 1:
        raise ValueError("divisions must be >= 1")

    points: list[list[float]] = []

    def recurse(prefix: list[int], remaining: int, depth: int) -> None:
        if depth == n_obj - 1:
            points.append([c / divisions for c in prefix + [remaining]])
            return
        for c in range(remaining + 1):
            recurse(prefix + [c], remaining - c, depth + 1)

    recurse([], divisions, 0)
    return ReferencePointSet(points=np.array(points), divisions=divisions)


def _normalize(keys: np.ndarray) -> np.ndarray:
    """Translate by the ideal point and scale by hyperplane intercepts."""
    ideal = keys.min(axis=0)
    shifted = keys - ideal
    n_obj = keys.shape[1]
    # Extreme points via the achievement scalarizing function per axis.
    extremes = np.empty((n_obj, n_obj))
    for j in range(n_obj):
        weights = np.full(n_obj, 1e-6)
        weights[j] = 1.0
        asf = (shifted / weights).max(axis=1)
        extremes[j] = shifted[int(asf.argmin())]
    intercepts = None
    try:
        plane = np.linalg.solve(extremes, np.ones(n_obj))
        with np.errstate(divide="ignore", over="ignore"):
            candidate = 1.0 / plane
        if np.all(np.isfinite(candidate)) and np.all(candidate > 1e-12):
            intercepts = candidate
    except np.linalg.LinAlgError:
        pass
    if intercepts is None:
        intercepts = shifted.max(axis=0)
    intercepts = np.where(intercepts > 1e-12, intercepts, 1.0)
    return shifted / intercepts


def _associate(normalized: np.ndarray, refs: np.ndarray):
    """Closest reference direction and perpendicular distance per point."""
    norms = np.linalg.norm(refs, axis=1)
    unit = refs / norms[:, None]
    proj = normalized @ unit.T  # (P, R)
    sq = (normalized**2).sum(axis=1)[:, None]
    dist_sq = np.maximum(sq - proj**2, 0.0)
    nearest = dist_sq.argmin(axis=1)
    return nearest, np.sqrt(dist_sq[np.arange(len(normalized)), nearest])


def nsga3_select(
    merged: list[Individual],
    target: int,
    refs: ReferencePointSet,
    rng: np.random.Generator,
) -> list[Individual]:
    """Environmental selection: whole fronts, then reference-point niching.

    Fronts are admitted in rank order while they fit; the splitting front
    is filled by associating candidates to reference directions and
    repeatedly serving the least-crowded niche, random ties broken by
    ``rng``.
    """
    if len(merged) < target:
        raise ValueError("merged population smaller than the selection target")
    fronts = fast_non_dominated_sort(merged)
    chosen: list[Individual] = []
    split: list[Individual] = []
    for front in fronts:
        if len(chosen) + len(front) <= target:
            chosen.extend(front)
            if len(chosen) == target:
                return chosen
        else:
            split = front
            break
    pool = chosen + split
    keys = np.array([ind.key() for ind in pool])
    normalized = _normalize(keys)
    niche_of, distance = _associate(normalized, refs.points)

    n_refs = len(refs.points)
    niche_count = np.zeros(n_refs, dtype=int)
    for idx in range(len(chosen)):
        niche_count[niche_of[idx]] += 1

    remaining = {len(chosen) + i for i in range(len(split))}
    while len(chosen) < target:
        live_niches = sorted({niche_of[i] for i in remaining})
        counts = np.array([niche_count[j] for j in live_niches])
        least = [j for j, c in zip(live_niches, counts) if c == counts.min()]
        niche = least[int(rng.integers(len(least)))]
        members = [i for i in remaining if niche_of[i] == niche]
        if niche_count[niche] == 0:
            pick = min(members, key=lambda i: distance[i])
        else:
            pick = members[int(rng.integers(len(members)))]
        chosen.append(pool[pick])
        remaining.remove(pick)
        niche_count[niche] += 1
    return chosen


def crowding_distance(front: list[Individual]) -> np.ndarray:
    """Per-objective normalized gap sum; boundary points get infinity."""
    n = len(front)
    keys = np.array([ind.key() for ind in front])
    dist = np.zeros(n)
    for j in range(keys.shape[1]):
        order = np.argsort(keys[:, j], kind="stable")
        lo, hi = keys[order[0], j], keys[order[-1], j]
        dist[order[0]] = dist[order[-1]] = math.inf
        if hi > lo:
            gaps = (keys[order[2:], j] - keys[order[:-2], j]) / (hi - lo)
            dist[order[1:-1]] += gaps
    return dist


def crowding_select(merged: list[Individual], target: int) -> list[Individual]:
    """NSGA-II environmental selection: rank, then descending crowding."""
    if len(merged) < target:
        raise ValueError("merged population smaller than the selection target")
    fronts = fast_non_dominated_sort(merged)
    chosen: list[Individual] = []
    for front in fronts:
        if len(chosen) + len(front) <= target:
            chosen.extend(front)
            continue
        need = target - len(chosen)
        dist = crowding_distance(front)
        order = np.argsort(-dist, kind="stable")
        chosen.extend(front[i] for i in order[:need])
        break
    return chosen


def sbx(
    p1: np.ndarray,
    p2: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    eta_c: float,
    pc: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover with per-gene bounds; children are clipped."""
    c1, c2 = p1.copy(), p2.copy()
    if rng.random() >= pc:
        return c1, c2
    for i in range(len(p1)):
        if rng.random() >= 0.5:
            continue
        x1, x2 = p1[i], p2[i]
        if abs(x1 - x2) < 1e-14:
            continue
        lo, hi = min(x1, x2), max(x1, x2)
        u = rng.random()
        beta = 1.0 + 2.0 * (lo - lower[i]) / (hi - lo)
        alpha = 2.0 - beta ** -(eta_c + 1.0)
        betaq = (
            (u * alpha) ** (1.0 / (eta_c + 1.0))
            if u <= 1.0 / alpha
            else (1.0 / (2.0 - u * alpha)) ** (1.0 / (eta_c + 1.0))
        )
        child_lo = 0.5 * ((lo + hi) - betaq * (hi - lo))
        beta = 1.0 + 2.0 * (upper[i] - hi) / (hi - lo)
        alpha = 2.0 - beta ** -(eta_c + 1.0)
        betaq = (
            (u * alpha) ** (1.0 / (eta_c + 1.0))
            if u <= 1.0 / alpha
            else (1.0 / (2.0 - u * alpha)) ** (1.0 / (eta_c + 1.0))
        )
        child_hi = 0.5 * ((lo + hi) + betaq * (hi - lo))
        if rng.random() < 0.5:
            child_lo, child_hi = child_hi, child_lo
        c1[i] = min(max(child_lo, lower[i]), upper[i])
        c2[i] = min(max(child_hi, lower[i]), upper[i])
    return c1, c2


def poly_mutation(
    x: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    eta_m: float,
    pm: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Bounded polynomial mutation applied per gene with probability ``pm``."""
    out = x.copy()
    for i in range(len(x)):
        if rng.random() >= pm:
            continue
        lo, hi = lower[i], upper[i]
        span = hi - lo
        if span <= 0.0:
            continue
        u = rng.random()
        delta1 = (out[i] - lo) / span
        delta2 = (hi - out[i]) / span
        mut_pow = 1.0 / (eta_m + 1.0)
        if u < 0.5:
            val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta1) ** (eta_m + 1.0)
            deltaq = val**mut_pow - 1.0
        else:
            val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta2) ** (eta_m + 1.0)
            deltaq = 1.0 - val**mut_pow
        out[i] = min(max(out[i] + deltaq * span, lo), hi)
    return out
