"""Exact attainable range of a conditional probability under interval constraints.

Ground truth for the bound formulas: over all joint distributions on the
atoms of up to four base classes, what is the min/max of P(to|from)?

Each constraint P(u|v) in [l, h] is linear once multiplied through by the
conditioning mass:  l.P(v) <= P(u^v) <= h.P(v).  This makes the constraint
vacuous when P(v) = 0, mirroring the dropped-term convention of the bound
formulas.  The fractional objective P(to^from)/P(from) is handled by the
usual normalisation: optimise over y = x / P(from) with sum(y over from) = 1,
which sweeps exactly the distributions giving `from` positive mass.  If no
such distribution exists the target is unconstrained and [0, 1] is returned.

A seeded randomized search (rejection sampling plus multiplicative hill
climbing on the simplex) provides an independent fallback path; the two are
required to agree within twice the search resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .qualalg import ProbInterval

Event = frozenset  # of atom indices


@dataclass(frozen=True)
class OracleProblem:
    class_count: int
    constraints: tuple[tuple[int, int, ProbInterval], ...]
    target: tuple[int, int]

    def __init__(self, class_count, constraints, target):
        if not 2 <= class_count <= 4:
            raise ValueError("class_count must be 2..4")
        seen = set()
        for frm, to, _ in constraints:
            if (frm, to) in seen:
                raise ValueError(f"duplicate constraint pair ({frm}, {to})")
            seen.add((frm, to))
        object.__setattr__(self, "class_count", class_count)
        object.__setattr__(self, "constraints", tuple(constraints))
        object.__setattr__(self, "target", tuple(target))


@dataclass(frozen=True)
class OracleResult:
    interval: ProbInterval
    status: str  # "ok" | "unconstrained" | "inconsistent"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def class_event(class_count: int, i: int) -> Event:
    return frozenset(a for a in range(2**class_count) if a >> i & 1)


def event_and(a: Event, b: Event) -> Event:
    return a & b


def event_or(a: Event, b: Event) -> Event:
    return a | b


def merged_pair_intervals(
    constraints: Sequence[tuple[Event, Event, ProbInterval]],
) -> dict[tuple[Event, Event], ProbInterval] | None:
    """Intersect constraints sharing a (condition, event) pair; None if empty."""
    merged: dict[tuple[Event, Event], ProbInterval] = {}
    for u, v, ival in constraints:
        key = (v, u)
        if key in merged:
            meet = merged[key].intersect(ival)
            if meet is None:
                return None
            merged[key] = meet
        else:
            merged[key] = ival
    return merged


def solve_events(
    class_count: int,
    constraints: Sequence[tuple[Event, Event, ProbInterval]],
    target: tuple[Event, Event],
) -> OracleResult:
    """Min/max of P(u|v) for events over the 2**class_count atoms."""
    merged = merged_pair_intervals(constraints)
    if merged is None:
        return OracleResult(ProbInterval(0.0, 1.0), "inconsistent")
    n = 2**class_count
    rows, rhs = [], []
    for (v, u), ival in merged.items():
        lo_row = np.zeros(n)
        hi_row = np.zeros(n)
        for a in v:
            lo_row[a] += ival.lo
            hi_row[a] -= ival.hi
        for a in u & v:
            lo_row[a] -= 1.0
            hi_row[a] += 1.0
        rows.extend((lo_row, hi_row))
        rhs.extend((0.0, 0.0))
    t_u, t_v = target
    norm = np.zeros(n)
    for a in t_v:
        norm[a] = 1.0
    obj = np.zeros(n)
    for a in t_u & t_v:
        obj[a] = 1.0
    a_ub = np.array(rows) if rows else None
    b_ub = np.array(rhs) if rhs else None
    vals = []
    for sign in (1.0, -1.0):
        res = linprog(
            sign * obj,
            A_ub=a_ub,
            b_ub=b_ub,
            A_eq=norm.reshape(1, -1),
            b_eq=[1.0],
            bounds=(0.0, None),
            method="highs",
        )
        if not res.success:
            return OracleResult(ProbInterval(0.0, 1.0), "unconstrained")
        vals.append(float(np.clip(sign * res.fun, 0.0, 1.0)))
    lo, hi = min(vals), max(vals)
    return OracleResult(ProbInterval(lo, hi), "ok")


def _problem_events(problem: OracleProblem):
    k = problem.class_count
    cons = [
        (class_event(k, to), class_event(k, frm), ival)
        for frm, to, ival in problem.constraints
    ]
    frm, to = problem.target
    return cons, (class_event(k, to), class_event(k, frm))


def solve(problem: OracleProblem, resolution: float = 1e-6) -> OracleResult:
    """LP path; accurate to solver precision, well below `resolution`."""
    cons, target = _problem_events(problem)
    return solve_events(problem.class_count, cons, target)


# -- randomized fallback -------------------------------------------------------


def _violation(x: np.ndarray, cons) -> float:
    """Total conditional-probability violation, relative to conditioning mass.

    Relative scaling matters: absolute slack l*P(v) - P(u^v) vanishes as
    P(v) -> 0 even when the conditional is badly violated, which would let
    a search walk fake feasibility by draining conditioning classes.
    """
    total = 0.0
    for u_mask, v_mask, lo, hi in cons:
        pv = float(x[v_mask].sum())
        if pv > 0:
            ratio = float(x[u_mask & v_mask].sum()) / pv
            total += max(0.0, lo - ratio) + max(0.0, ratio - hi)
    return total


def random_search(
    problem: OracleProblem,
    resolution: float = 0.01,
    seed: int | None = None,
    samples: int = 4000,
    refine_steps: int = 900,
) -> OracleResult:
    cons, target = _problem_events(problem)
    return random_search_events(
        problem.class_count, cons, target, resolution, seed, samples, refine_steps
    )


def random_search_events(
    class_count: int,
    constraints: Sequence[tuple[Event, Event, ProbInterval]],
    target: tuple[Event, Event],
    resolution: float = 0.01,
    seed: int | None = None,
    samples: int = 4000,
    refine_steps: int = 900,
) -> OracleResult:
    """Dense random sampling with local refinement on the simplex.

    Proposals alternate multiplicative jitter with pairwise mass transfers;
    the latter reach the polytope vertices where conditional-probability
    optima live.  Deterministic for a fixed seed.
    """
    if merged_pair_intervals(constraints) is None:
        return OracleResult(ProbInterval(0.0, 1.0), "inconsistent")
    rng = np.random.default_rng(seed)
    n = 2**class_count
    cons = []
    for u, v, ival in constraints:
        u_mask = np.zeros(n, dtype=bool)
        v_mask = np.zeros(n, dtype=bool)
        u_mask[list(u)] = True
        v_mask[list(v)] = True
        cons.append((u_mask, v_mask, ival.lo, ival.hi))
    t_u, t_v = target
    tv_mask = np.zeros(n, dtype=bool)
    tv_mask[list(t_v)] = True
    tuv_mask = np.zeros(n, dtype=bool)
    tuv_mask[list(t_u & t_v)] = True

    def objective(x: np.ndarray) -> float | None:
        pv = float(x[tv_mask].sum())
        if pv < 1e-12:
            return None
        return float(x[tuv_mask].sum()) / pv

    def refine(x0: np.ndarray, sign: float):
        """Hill climb on objective minus an annealed infeasibility penalty.

        A soft penalty early on lets the walk cross mildly infeasible
        territory; the weight ramps up so the endpoint is feasible.
        """
        x = x0.copy()
        cur_pen = _violation(x, cons)
        cur_obj = objective(x)
        for step in range(refine_steps):
            weight = 10.0 * (1e7 / 10.0) ** (step / max(1, refine_steps - 1))
            if step % 2 == 0:  # pair transfer: reaches polytope vertices
                frac = rng.uniform(0.05, 1.0)
                i, j = rng.integers(0, n, size=2)
                if i == j or x[i] <= 0:
                    continue
                cand = x.copy()
                moved = frac * cand[i]
                cand[i] -= moved
                cand[j] += moved
            else:
                sigma = 0.6 * (0.01 / 0.6) ** (step / max(1, refine_steps - 1))
                cand = x * np.exp(sigma * rng.standard_normal(n))
                cand /= cand.sum()
            pen = _violation(cand, cons)
            obj = objective(cand)
            if obj is None:
                continue
            cur_score = sign * cur_obj - weight * cur_pen
            if sign * obj - weight * pen > cur_score + 1e-12:
                x, cur_pen, cur_obj = cand, pen, obj
        return x, cur_pen, cur_obj

    pts = rng.dirichlet(np.ones(n), size=samples)
    found = []
    for sign in (1.0, -1.0):
        scored = []
        for x in pts:
            obj = objective(x)
            if obj is None:
                continue
            scored.append((_violation(x, cons), -sign * obj, x))
        if not scored:
            return OracleResult(ProbInterval(0.0, 1.0), "unconstrained")
        scored.sort(key=lambda t: (t[0], t[1]))
        best_val = None
        best_point = None
        for x0 in [s[2] for s in scored[:10]]:
            x, pen, obj = refine(x0, sign)
            if pen <= 1e-7 and obj is not None:
                if best_val is None or sign * obj > sign * best_val:
                    best_val, best_point = obj, x
        if best_point is not None:  # one restart from the incumbent
            x, pen, obj = refine(best_point, sign)
            if pen <= 1e-7 and obj is not None and sign * obj > sign * best_val:
                best_val = obj
        if best_val is None:
            return OracleResult(ProbInterval(0.0, 1.0), "unconstrained")
        found.append(best_val)
    hi, lo = found
    lo, hi = min(lo, hi), max(lo, hi)
    return OracleResult(ProbInterval(lo, hi), "ok")
