"""Optimal interval bounds for chaining conditional probabilities.

Given interval constraints on P(B|A), P(A|B), P(C|B) and P(B|C), the
syllogism pattern bounds P(C|A) (and, by swapping the roles of A and C,
P(A|C)).  The lower bound is

    P*(C|A) >= P*(B|A) . max(0, 1 - (1 - P*(C|B)) / P*(A|B))

with stars denoting the matching endpoint.  The upper bound is the minimum
of 1 and four expressions:

    u2 = 1 - lo(B|A) . (1 - hi(C|B) / lo(A|B))
    u3 = hi(B|A) . hi(C|B) / (lo(A|B) . lo(B|C))
    u4 = hi(B|A) . (1 + hi(C|B) . (1 - lo(B|C)) / (lo(A|B) . lo(B|C)))
    u5 = hi(C|B) / (hi(C|B) + lo(B|C) . (lo(A|B) - hi(C|B)))

u2 decreases in P(B|A) while u3/u4 increase, so the crossing value u5
sharpens the bound exactly when lo(A|B) > hi(C|B) and the crossing point

    theta = lo(B|C) . lo(A|B) / (lo(B|C) . lo(A|B) + hi(C|B) . (1 - lo(B|C)))

falls inside [lo(B|A), hi(B|A)].  Any expression with a zero denominator
contributes no constraint.  The endpoint choices in u3/u4 are the ones
certified tight against the exact LP oracle (see tests); a transcription
with hi(B|C) in the denominators is provably unsound.

The module also provides the cycle form of Bayes' theorem and the closed
form for the typicality special case P(B|A) = P(B|C) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .qualalg import ProbInterval

COND_TOL = 1e-12


class InconsistentBounds(ValueError):
    """Lower bound exceeded upper bound: the inputs are contradictory."""


@dataclass(frozen=True)
class SyllogismInput:
    """Interval constraints on the four conditionals linking A, B, C."""

    b_given_a: ProbInterval
    a_given_b: ProbInterval
    c_given_b: ProbInterval
    b_given_c: ProbInterval

    def swapped(self) -> "SyllogismInput":
        """Same pattern with the roles of A and C exchanged."""
        return SyllogismInput(
            b_given_a=self.b_given_c,
            a_given_b=self.c_given_b,
            c_given_b=self.a_given_b,
            b_given_c=self.b_given_a,
        )


def syllogism_lower(inp: SyllogismInput) -> float:
    b, a, c = inp.b_given_a, inp.a_given_b, inp.c_given_b
    if b.lo <= 0.0:
        return 0.0
    if a.lo <= 0.0:
        # quotient term dropped; it only survives when P(C|B) is certain
        factor = 1.0 if c.lo >= 1.0 - COND_TOL else 0.0
    else:
        factor = max(0.0, 1.0 - (1.0 - c.lo) / a.lo)
    return b.lo * factor


def syllogism_upper(inp: SyllogismInput) -> float:
    b, a, c, d = inp.b_given_a, inp.a_given_b, inp.c_given_b, inp.b_given_c
    terms = [1.0]
    if a.lo > 0.0:
        terms.append(1.0 - b.lo * (1.0 - c.hi / a.lo))
    if a.lo > 0.0 and d.lo > 0.0:
        terms.append(b.hi * c.hi / (a.lo * d.lo))
        terms.append(b.hi * (1.0 + c.hi * (1.0 - d.lo) / (a.lo * d.lo)))
    if a.lo > c.hi + COND_TOL:
        den_theta = d.lo * a.lo + c.hi * (1.0 - d.lo)
        if den_theta > COND_TOL:
            theta = d.lo * a.lo / den_theta
            if b.lo <= theta + COND_TOL and theta <= b.hi + COND_TOL:
                den5 = c.hi + d.lo * (a.lo - c.hi)
                if den5 > COND_TOL:
                    terms.append(c.hi / den5)
    return min(terms)


def syllogism(inp: SyllogismInput) -> tuple[ProbInterval, ProbInterval]:
    """Bounds on P(C|A) and on P(A|C)."""
    out = []
    for case in (inp, inp.swapped()):
        lo = syllogism_lower(case)
        hi = syllogism_upper(case)
        if lo > hi + 1e-9:
            raise InconsistentBounds(f"lower {lo} exceeds upper {hi} for {case}")
        out.append(ProbInterval(lo, max(lo, hi)))
    return out[0], out[1]


def bayes_cycle(
    forward: Sequence[ProbInterval],
    backward: Sequence[ProbInterval],
    direct: ProbInterval,
) -> ProbInterval:
    """Refine one edge of a cycle A1..Ak via the product identity.

    Both sequences walk the full cycle including the closing pair:
    forward[i] = P(A_{i+1}|A_{i+2}) for i < k-1 and forward[-1] = P(Ak|A1);
    backward[i] = P(A_{i+2}|A_{i+1}) and backward[-1] = P(A1|Ak), which is
    the edge being refined and is passed authoritatively as `direct` (its
    slot never enters the products).  The identity

        P(A1|Ak) = P(Ak|A1) . prod_i P(Ai|Ai+1) / P(Ai+1|Ai)

    gives one refinement per bound; a zero denominator drops that side.
    """
    if len(forward) != len(backward) or len(forward) < 2:
        raise ValueError("cycle sequences must have equal length >= 2")
    num_hi = math.prod(f.hi for f in forward)
    num_lo = math.prod(f.lo for f in forward)
    den_lo = math.prod(b.lo for b in backward[:-1])
    den_hi = math.prod(b.hi for b in backward[:-1])
    hi = direct.hi if den_lo <= 0.0 else min(direct.hi, num_hi / den_lo)
    lo = direct.lo if den_hi <= 0.0 else max(direct.lo, num_lo / den_hi)
    lo = min(lo, 1.0)
    if lo > hi + 1e-9:
        raise InconsistentBounds(f"cycle refinement [{lo}, {hi}] is empty")
    return ProbInterval(lo, max(lo, hi))


@dataclass(frozen=True)
class TypicalityInput:
    """P(A|B) = t, P(C|B) = alpha with P(B|A) = P(B|C) = 1."""

    t: float
    alpha: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.t <= 1.0 and 0.0 <= self.alpha <= 1.0):
            raise ValueError("typicality inputs must lie in [0, 1]")


def typicality_bounds(inp: TypicalityInput) -> ProbInterval:
    """Closed form for P(C|A) when A is a typicality-t subclass of B."""
    if inp.t <= 0.0:
        raise ValueError("undefined reference class: typicality index is 0")
    lo = max(0.0, 1.0 - (1.0 - inp.alpha) / inp.t)
    hi = min(1.0, inp.alpha / inp.t)
    return ProbInterval(lo, hi)
