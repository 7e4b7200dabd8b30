"""Qualitative algebra over a linguistic scale of proportion quantifiers.

A scale partitions [0, 1] into labelled intervals: {0} carries the first
label, (0, t1] the second, then [t1, t2], ..., [tn, 1) and finally {1}.
The two extreme labels are the only ones whose meaning is a single point.
Qualitative values are contiguous runs of labels (a QRange); their numeric
meaning is the convex hull of the member intervals.

Arithmetic on qualitative values (product, bounded quotient) is computed
numerically on the hulls and re-approximated into the coarsest-grained
covering run.  Endpoint attainability matters here: the hull of (0, t1]
starts at 0, but 0 itself is not a value of that label, so a product such
as few * few must come out as few, not [none, few].  The private flagged
helpers track exactly this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

TOL = 1e-9


class PartitionError(ValueError):
    """Base class for scale construction failures."""


class NonIncreasingThresholds(PartitionError):
    pass


class ThresholdOutOfRange(PartitionError):
    pass


class AsymmetricThresholds(PartitionError):
    pass


class DuplicateLabels(PartitionError):
    pass


class WrongLabelCount(PartitionError):
    pass


@dataclass(frozen=True)
class ProbInterval:
    """Closed subinterval of [0, 1]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (-TOL <= self.lo <= self.hi + TOL and self.hi <= 1 + TOL):
            raise ValueError(f"invalid probability interval [{self.lo}, {self.hi}]")
        object.__setattr__(self, "lo", min(max(self.lo, 0.0), 1.0))
        object.__setattr__(self, "hi", min(max(self.hi, self.lo), 1.0))

    def contains(self, x: float, tol: float = TOL) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def contains_interval(self, other: "ProbInterval", tol: float = TOL) -> bool:
        return self.lo - tol <= other.lo and other.hi <= self.hi + tol

    def intersect(self, other: "ProbInterval", tol: float = TOL) -> "ProbInterval | None":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi + tol:
            return None
        return ProbInterval(lo, max(lo, hi))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __str__(self) -> str:
        return f"[{self.lo:.3f}, {self.hi:.3f}]"


FULL = ProbInterval(0.0, 1.0)


@dataclass(frozen=True)
class QRange:
    """Contiguous run of elementary labels, low..high inclusive (indices)."""

    low: int
    high: int

    def __post_init__(self) -> None:
        if self.low > self.high:
            raise ValueError(f"QRange low {self.low} above high {self.high}")

    @property
    def is_elementary(self) -> bool:
        return self.low == self.high

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.low, self.high + 1))


class Partition:
    """Symmetric linguistic scale over [0, 1].

    thresholds: strictly increasing reals in (0, 1), closed under t -> 1 - t.
    labels: one name per elementary interval, count = len(thresholds) + 3.
    """

    def __init__(self, thresholds: Sequence[float], labels: Sequence[str]):
        thresholds = tuple(float(t) for t in thresholds)
        labels = tuple(labels)
        for t in thresholds:
            if not (TOL < t < 1 - TOL):
                raise ThresholdOutOfRange(f"threshold {t} outside open (0, 1)")
        for a, b in zip(thresholds, thresholds[1:]):
            if b <= a + TOL:
                raise NonIncreasingThresholds(f"thresholds not increasing at {a}, {b}")
        for t in thresholds:
            if not any(abs((1.0 - t) - s) <= 1e-6 for s in thresholds):
                raise AsymmetricThresholds(f"threshold {t} has no mirror 1-{t}")
        if len(set(labels)) != len(labels):
            raise DuplicateLabels(f"labels not unique: {labels}")
        if len(labels) != len(thresholds) + 3:
            raise WrongLabelCount(
                f"need {len(thresholds) + 3} labels for {len(thresholds)} thresholds, got {len(labels)}"
            )
        self.thresholds = thresholds
        self.labels = labels
        # bounds[i-1], bounds[i] delimit interior label i
        self._bounds = (0.0,) + thresholds + (1.0,)
        self._index = {name: i for i, name in enumerate(labels)}

    # -- label bookkeeping ------------------------------------------------

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    @property
    def first_interior(self) -> int:
        return 1

    @property
    def last_interior(self) -> int:
        return self.n_labels - 2

    @property
    def top(self) -> int:
        """Index of the {1} label."""
        return self.n_labels - 1

    def label_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown label {name!r}; scale has {self.labels}") from None

    def range_of(self, low_name: str, high_name: str | None = None) -> QRange:
        lo = self.label_index(low_name)
        hi = lo if high_name is None else self.label_index(high_name)
        return QRange(lo, hi)

    def name_of(self, q: QRange) -> str:
        if q.is_elementary:
            return self.labels[q.low]
        return f"[{self.labels[q.low]}, {self.labels[q.high]}]"

    def full_range(self) -> QRange:
        return QRange(0, self.top)

    def all_ranges(self) -> Iterator[QRange]:
        for lo in range(self.n_labels):
            for hi in range(lo, self.n_labels):
                yield QRange(lo, hi)

    def validate(self, q: QRange) -> None:
        if not (0 <= q.low <= q.high <= self.top):
            raise ValueError(f"QRange {q} outside scale with {self.n_labels} labels")

    # -- numeric semantics -------------------------------------------------

    def _hull_lo(self, label: int) -> float:
        if label == 0:
            return 0.0
        if label == self.top:
            return 1.0
        return self._bounds[label - 1]

    def _hull_hi(self, label: int) -> float:
        if label == 0:
            return 0.0
        if label == self.top:
            return 1.0
        return self._bounds[label]

    def semantics(self, q: QRange) -> ProbInterval:
        """Convex hull of the member labels' intervals, closed at both ends."""
        self.validate(q)
        return ProbInterval(self._hull_lo(q.low), self._hull_hi(q.high))

    def flagged_semantics(self, q: QRange) -> tuple[float, bool, float, bool]:
        """(lo, lo_attained, hi, hi_attained) of the exact value set of q.

        Only the first and last interior labels leak: their hulls are closed
        at 0 resp. 1 although those points belong to the extreme labels.
        """
        self.validate(q)
        lo_att = q.low != self.first_interior
        hi_att = q.high != self.last_interior
        return self._hull_lo(q.low), lo_att, self._hull_hi(q.high), hi_att

    def covers(self, q: QRange, i: ProbInterval) -> bool:
        """True iff the exact value set of q contains the closed interval i."""
        lo, lo_att, hi, hi_att = self.flagged_semantics(q)
        if i.lo < lo - TOL or i.hi > hi + TOL:
            return False
        if not lo_att and i.lo <= lo + TOL:
            return False
        if not hi_att and i.hi >= hi - TOL:
            return False
        return True

    # -- approximation -----------------------------------------------------

    def approximate(self, i: ProbInterval) -> QRange:
        """Most specific QRange whose value set contains the closed interval i.

        A bound of exactly 0 (resp. 1) is attainable, so it pulls in the
        {0} (resp. {1}) label.  A bound sitting on a shared threshold is
        assigned inward, which yields the tighter hull.
        """
        return self._approximate(i.lo, True, i.hi, True)

    def _approximate(self, lo: float, lo_att: bool, hi: float, hi_att: bool) -> QRange:
        top = self.top
        if lo <= TOL:
            low = 0 if lo_att else self.first_interior
        elif lo >= 1 - TOL:
            low = top if lo_att else self.last_interior
        else:
            low = self.first_interior
            for i in range(2, top):
                if self._bounds[i - 1] <= lo + TOL:
                    low = i
        if hi >= 1 - TOL:
            high = top if hi_att else self.last_interior
        elif hi <= TOL:
            high = 0 if hi_att else self.first_interior
        else:
            high = self.last_interior
            for i in range(self.last_interior - 1, 0, -1):
                if self._bounds[i] >= hi - TOL:
                    high = i
        if low > high:
            # point on a shared threshold: both adjacent labels contain it
            low = high
        return QRange(low, high)

    # -- orderings and lattice ops ------------------------------------------

    def antonym(self, q: QRange) -> QRange:
        """Mirror of q under x -> 1 - x; well defined by threshold symmetry."""
        self.validate(q)
        return QRange(self.top - q.high, self.top - q.low)

    def specificity_level(self, q: QRange) -> int:
        self.validate(q)
        return q.high - q.low + 1

    def midpoint(self, label: int) -> float:
        return 0.5 * (self._hull_lo(label) + self._hull_hi(label))

    # -- qualitative arithmetic ---------------------------------------------

    def qmul(self, q1: QRange, q2: QRange) -> QRange:
        """Product of qualitative proportions, re-approximated into the scale."""
        a1, a1_att, b1, b1_att = self.flagged_semantics(q1)
        a2, a2_att, b2, b2_att = self.flagged_semantics(q2)
        lo = a1 * a2
        lo_att = (a1_att and a2_att) or (a1_att and a1 <= TOL) or (a2_att and a2 <= TOL)
        hi = b1 * b2
        hi_att = (b1_att and b2_att) or (b1_att and b1 <= TOL) or (b2_att and b2 <= TOL)
        return self._approximate(lo, lo_att, hi, hi_att)

    def qdiv(self, q1: QRange, q2: QRange) -> QRange:
        """Quotient truncated to 1.

        Division by a value set touching 0 is unbounded above and saturates
        at 1; 0/0 carries no information at all.
        """
        a1, a1_att, b1, b1_att = self.flagged_semantics(q1)
        a2, a2_att, b2, b2_att = self.flagged_semantics(q2)
        if b2 <= TOL:  # denominator is identically zero
            if b1 <= TOL and a1_att:
                return self.full_range()
            return QRange(self.top, self.top)
        if b1 <= TOL:  # numerator identically zero
            if a2 <= TOL and a2_att:
                return self.full_range()  # 0/0 reachable
            return QRange(0, 0)
        # lower end: smallest numerator over largest denominator
        lo = a1 / b2
        lo_att = (a1_att and b2_att) or (a1_att and a1 <= TOL)
        if lo > 1 + TOL:
            lo, lo_att = 1.0, True
        # upper end
        if a2 <= TOL:
            hi, hi_att = 1.0, True  # ratios blow up, truncated
        else:
            hi = b1 / a2
            hi_att = b1_att and a2_att
            if hi > 1 + TOL:
                hi, hi_att = 1.0, True  # values beyond 1 exist and truncate onto 1
            elif hi >= 1 - TOL:
                hi = 1.0
        return self._approximate(lo, lo_att, min(hi, 1.0), hi_att)


# -- partition-independent QRange ops ---------------------------------------


def certainty_leq(q1: QRange, q2: QRange) -> bool:
    """Componentwise certainty order: q1 <= q2 iff both bounds are lower."""
    return q1.low <= q2.low and q1.high <= q2.high


def hull(q1: QRange, q2: QRange) -> QRange:
    return QRange(min(q1.low, q2.low), max(q1.high, q2.high))


def meet(q1: QRange, q2: QRange) -> QRange | None:
    """Intersection of runs; None marks the distinguished empty outcome."""
    lo = max(q1.low, q2.low)
    hi = min(q1.high, q2.high)
    if lo > hi:
        return None
    return QRange(lo, hi)


# -- stock scales ------------------------------------------------------------

SCALE5_LABELS = ("none", "few", "half", "most", "all")
SCALE7_LABELS = ("none", "al-none", "few", "half", "most", "al-all", "all")
SCALE9_LABELS = (
    "none", "al-none", "v-few", "few", "half", "most", "v-many", "al-all", "all",
)


def build_partition(thresholds: Sequence[float], labels: Sequence[str]) -> Partition:
    return Partition(thresholds, labels)


def scale5(alpha: float) -> Partition:
    """none / few / about-half / most / all with few = (0, alpha]."""
    if not (0 < alpha < 0.5):
        raise ThresholdOutOfRange(f"alpha {alpha} outside (0, 0.5)")
    return Partition((alpha, 1.0 - alpha), SCALE5_LABELS)


def scale7() -> Partition:
    return Partition((0.2, 0.4, 0.6, 0.8), SCALE7_LABELS)


def scale9() -> Partition:
    return Partition((0.1, 0.2, 0.4, 0.6, 0.8, 0.9), SCALE9_LABELS)


# -- config parsing -----------------------------------------------------------


class ConfigError(ValueError):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def parse_partition_config(text: str) -> Partition:
    """Parse `@partition t1 .. tn` / `@labels name0 .. nameN` lines."""
    thresholds: list[float] | None = None
    labels: list[str] | None = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw).strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "@partition":
            try:
                thresholds = [float(f) for f in fields[1:]]
            except ValueError as exc:
                raise ConfigError(f"bad threshold: {exc}", no) from None
        elif fields[0] == "@labels":
            labels = fields[1:]
    if thresholds is None:
        raise ConfigError("missing @partition line", 0)
    if labels is None:
        raise ConfigError("missing @labels line", 0)
    return Partition(thresholds, labels)
