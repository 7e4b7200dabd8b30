"""Qualitative syllogism tables: generation, extension, compaction, robustness.

The table maps every 4-tuple of elementary labels (Q1 = P(B|A), Q2 = P(A|B),
Q3 = P(B|C), Q4 = P(C|B)) to the qualitative value of Q5 = P(C|A).  Each
entry is computed numerically on the hull semantics of the labels and
approximated once, at the very end; chaining pre-approximated sub-results
instead loses too much precision.  Q6 = P(A|C) needs no table of its own:
it is the Q5 entry of the role-swapped tuple.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass

from . import qualalg
from .bounds import SyllogismInput, syllogism_lower, syllogism_upper
from .qualalg import Partition, ProbInterval, QRange

Key = tuple[int, int, int, int]


@dataclass(frozen=True)
class SyllogismTable:
    partition: Partition
    entries: dict[Key, QRange]

    def lookup(self, q1: int, q2: int, q3: int, q4: int) -> QRange:
        return self.entries[(q1, q2, q3, q4)]


def tuple_bounds(p: Partition, key: Key) -> ProbInterval:
    """Numeric P(C|A) bounds for one elementary 4-tuple."""
    q1, q2, q3, q4 = key
    inp = SyllogismInput(
        b_given_a=p.semantics(QRange(q1, q1)),
        a_given_b=p.semantics(QRange(q2, q2)),
        c_given_b=p.semantics(QRange(q4, q4)),
        b_given_c=p.semantics(QRange(q3, q3)),
    )
    lo = syllogism_lower(inp)
    hi = syllogism_upper(inp)
    return ProbInterval(lo, max(lo, hi))


def gen_table(p: Partition) -> SyllogismTable:
    m = p.n_labels
    entries: dict[Key, QRange] = {}
    for key in itertools.product(range(m), repeat=4):
        entries[key] = p.approximate(tuple_bounds(p, key))
    return SyllogismTable(p, entries)


def q6_of(table: SyllogismTable, q1: int, q2: int, q3: int, q4: int) -> QRange:
    """P(A|C) for the same tuple: look up the role-swapped key."""
    return table.lookup(q3, q4, q1, q2)


def eval_extended(
    table: SyllogismTable, r1: QRange, r2: QRange, r3: QRange, r4: QRange
) -> QRange:
    """Extend the table to non-elementary arguments via the corner hull."""
    p = table.partition
    for r in (r1, r2, r3, r4):
        p.validate(r)
    out: QRange | None = None
    for c1 in {r1.low, r1.high}:
        for c2 in {r2.low, r2.high}:
            for c3 in {r3.low, r3.high}:
                for c4 in {r4.low, r4.high}:
                    cell = table.lookup(c1, c2, c3, c4)
                    out = cell if out is None else qualalg.hull(out, cell)
    assert out is not None
    return out


# -- compaction ---------------------------------------------------------------


@dataclass(frozen=True)
class CompactGroup:
    output: QRange
    patterns: tuple[tuple[QRange, QRange, QRange, QRange], ...]
    size: int


def _merge_axis(rows: list[tuple], axis: int) -> list[tuple]:
    """Merge label runs along one axis among rows identical elsewhere."""
    order = sorted(rows, key=lambda r: tuple(
        (r[i].low, r[i].high) for i in (*range(axis), *range(axis + 1, 4))
    ) + ((r[axis].low, r[axis].high),))
    merged: list[tuple] = []
    for row in order:
        if merged:
            prev = merged[-1]
            same_rest = all(prev[i] == row[i] for i in range(4) if i != axis)
            if same_rest and prev[axis].high + 1 == row[axis].low:
                repl = list(prev)
                repl[axis] = QRange(prev[axis].low, row[axis].high)
                merged[-1] = tuple(repl)
                continue
        merged.append(row)
    return merged


def compact(table: SyllogismTable) -> list[CompactGroup]:
    """Group tuples by output, merging contiguous blocks for presentation.

    Lossless: expanding every pattern of every group reproduces the full
    entry map exactly.
    """
    by_output: dict[QRange, list[tuple]] = {}
    for key in sorted(table.entries):
        row = tuple(QRange(i, i) for i in key)
        by_output.setdefault(table.entries[key], []).append(row)
    groups = []
    for output in sorted(by_output, key=lambda q: (q.low, q.high)):
        rows = by_output[output]
        size = len(rows)
        for axis in (3, 2, 1, 0):
            rows = _merge_axis(rows, axis)
        groups.append(CompactGroup(output, tuple(sorted(
            rows, key=lambda r: tuple((q.low, q.high) for q in r)
        )), size))
    groups.sort(key=lambda g: -g.size)
    return groups


# -- serialization -------------------------------------------------------------


def table_to_csv(table: SyllogismTable) -> str:
    """Full entry map, one row per tuple, lexicographic order."""
    p = table.partition
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q1", "q2", "q3", "q4", "q5_low", "q5_high"])
    for key in sorted(table.entries):
        q5 = table.entries[key]
        writer.writerow([p.labels[i] for i in key] + [p.labels[q5.low], p.labels[q5.high]])
    return buf.getvalue()


def compact_to_markdown(table: SyllogismTable) -> str:
    p = table.partition
    lines = [
        "| Q1 | Q2 | Q3 | Q4 | Q5 | tuples |",
        "|---|---|---|---|---|---|",
    ]
    for group in compact(table):
        first = True
        for pat in group.patterns:
            cells = [p.name_of(q) for q in pat]
            out = p.name_of(group.output) if first else ""
            count = str(group.size) if first else ""
            lines.append("| " + " | ".join(cells + [out, count]) + " |")
            first = False
    return "\n".join(lines) + "\n"


# -- robustness over the few/half threshold ------------------------------------


@dataclass(frozen=True)
class RobustnessReport:
    reference_alpha: float
    alpha_values: tuple[float, ...]
    changed_per_alpha: dict[float, tuple[Key, ...]]
    changed_distinct: tuple[Key, ...]

    @property
    def distinct_count(self) -> int:
        return len(self.changed_distinct)


def robustness_sweep(
    labels: tuple[str, ...],
    alpha_from: float,
    alpha_to: float,
    step: float,
    reference_alpha: float,
) -> RobustnessReport:
    """Regenerate the 2-threshold table per alpha and diff against the reference."""
    if not (0.0 < alpha_from <= alpha_to < 0.5):
        raise ValueError("alpha range must satisfy 0 < from <= to < 0.5")
    if step <= 0.0:
        raise ValueError("step must be positive")
    reference = gen_table(Partition((reference_alpha, 1 - reference_alpha), labels))
    alphas = []
    a = alpha_from
    while a <= alpha_to + 1e-12:
        alphas.append(round(a, 12))
        a += step
    per_alpha: dict[float, tuple[Key, ...]] = {}
    distinct: set[Key] = set()
    for alpha in alphas:
        table = gen_table(Partition((alpha, 1 - alpha), labels))
        changed = tuple(
            key for key in sorted(reference.entries)
            if table.entries[key] != reference.entries[key]
        )
        per_alpha[alpha] = changed
        distinct.update(changed)
    return RobustnessReport(
        reference_alpha, tuple(alphas), per_alpha, tuple(sorted(distinct))
    )


# -- extreme-quantifier analytic forms ------------------------------------------


@dataclass(frozen=True)
class CoreRowVerdict:
    inputs: tuple[str, str, str, str]
    bound_kind: str  # "upper" | "lower"
    computed: float
    analytic: float
    witness: SyllogismInput

    @property
    def holds(self) -> bool:
        return abs(self.computed - self.analytic) <= 1e-9


def _v0(alpha: float) -> ProbInterval:
    return ProbInterval(0.0, alpha)


def _v1(alpha: float) -> ProbInterval:
    return ProbInterval(alpha, 1.0)


def robust_core_check(alpha: float) -> list[CoreRowVerdict]:
    """Check the six unstable extreme-quantifier cases against closed forms.

    Inputs are boxes of the shape P <= alpha ("few") or P >= 1 - alpha
    ("most"); requires alpha <= 1/3 so every output stays within one
    symbolic region.
    """
    if not (0.0 < alpha <= 1.0 / 3.0 + 1e-12):
        raise ValueError("analysis requires 0 < alpha <= 1/3")
    lo, hi = _v0(alpha), _v1(1.0 - alpha)
    a2 = alpha**2 / (1.0 - alpha) ** 2
    rows = [
        (("few", "most", "most", "few"), "upper", a2),
        (("few", "most", "most", "most"), "upper", a2 + alpha),
        (("most", "most", "few", "few"), "upper", 2.0 * alpha),
        (("most", "most", "few", "most"), "lower", 1.0 - 2.0 * alpha),
        (("most", "most", "most", "few"), "upper", alpha / ((1.0 - alpha) ** 2 + alpha**2)),
        (("most", "most", "most", "most"), "lower", 1.0 - 2.0 * alpha),
    ]
    verdicts = []
    for names, kind, analytic in rows:
        box = {"few": lo, "most": hi}
        inp = SyllogismInput(
            b_given_a=box[names[0]],
            a_given_b=box[names[1]],
            b_given_c=box[names[2]],
            c_given_b=box[names[3]],
        )
        computed = syllogism_upper(inp) if kind == "upper" else syllogism_lower(inp)
        verdicts.append(CoreRowVerdict(names, kind, computed, analytic, inp))
    return verdicts


def five_inequalities(alpha: float) -> list[tuple[str, float, float]]:
    """The five relations guaranteeing stable symbolic outputs for alpha <= 1/3.

    Returns (description, lhs, rhs) with lhs <= rhs expected.
    """
    a2 = alpha**2 / (1.0 - alpha) ** 2
    return [
        ("a^2/(1-a)^2 <= a", a2, alpha),
        ("a + a^2/(1-a)^2 <= 1-a", alpha + a2, 1.0 - alpha),
        ("2a <= 1-a", 2.0 * alpha, 1.0 - alpha),
        ("a <= 1-2a", alpha, 1.0 - 2.0 * alpha),
        (
            "a/((1-a)^2+a^2) <= 1-a",
            alpha / ((1.0 - alpha) ** 2 + alpha**2),
            1.0 - alpha,
        ),
    ]
