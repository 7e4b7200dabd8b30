"""Knowledge base of quantified statements and the saturation engine.

Statements constrain P(to|from) for ordered node pairs, either numerically
or with a qualitative range over the KB's scale.  Saturation repeatedly
applies the syllogism pattern over all ordered node triples, then the cycle
form of Bayes' theorem over simple cycles, alternating until nothing
improves.  Numeric mode intersects intervals (with an epsilon threshold so
floating point terminates); qualitative mode works entirely inside the
finite label algebra via the precomputed table, so it terminates exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import qualalg, tables
from .bounds import SyllogismInput, bayes_cycle, syllogism_lower, syllogism_upper
from .qualalg import FULL, Partition, ProbInterval, QRange, strip_comment
from .tables import SyllogismTable, eval_extended


class ContradictionError(ValueError):
    def __init__(self, message: str, chain: list["TraceStep"] | None = None):
        super().__init__(message)
        self.chain = chain or []


class UnknownNode(KeyError):
    pass


@dataclass(frozen=True)
class Edge:
    interval: ProbInterval
    qual: QRange | None = None


@dataclass(frozen=True)
class TraceStep:
    phase: str  # "syllogism" | "bayes" | "gbt"
    context: tuple
    edge: tuple[str, str]
    before: str
    after: str


@dataclass
class KnowledgeBase:
    partition: Partition
    mode: str = "numeric"  # or "qualitative"
    nodes: list[str] = field(default_factory=list)
    edges: dict[tuple[str, str], Edge] = field(default_factory=dict)
    queries: list[tuple[str, str]] = field(default_factory=list)

    def add_node(self, name: str) -> None:
        if name not in self.nodes:
            self.nodes.append(name)

    def interval(self, frm: str, to: str) -> ProbInterval:
        if frm == to:
            return ProbInterval(1.0, 1.0)
        edge = self.edges.get((frm, to))
        return edge.interval if edge else FULL

    def qual(self, frm: str, to: str) -> QRange:
        p = self.partition
        if frm == to:
            return QRange(p.top, p.top)
        edge = self.edges.get((frm, to))
        if edge is None:
            return p.full_range()
        if edge.qual is not None:
            return edge.qual
        return p.approximate(edge.interval)

    def copy(self) -> "KnowledgeBase":
        return KnowledgeBase(
            self.partition, self.mode, list(self.nodes), dict(self.edges),
            list(self.queries),
        )

    def informative_edges(self) -> dict[tuple[str, str], Edge]:
        out = {}
        for pair, edge in sorted(self.edges.items()):
            if self.mode == "qualitative":
                if self.qual(*pair) != self.partition.full_range():
                    out[pair] = edge
            elif edge.interval != FULL:
                out[pair] = edge
        return out


# -- statement ingestion ---------------------------------------------------


def ingest(kb: KnowledgeBase, line: str) -> None:
    """Apply one statement line: `q from to low [high]` or `n from to lo hi`.

    Re-ingesting a pair intersects with the existing constraint; an empty
    intersection is a contradiction.
    """
    fields = strip_comment(line).split()
    if not fields:
        return
    kind = fields[0]
    if kind == "q":
        if len(fields) not in (4, 5):
            raise ValueError(f"bad qualitative statement: {line!r}")
        frm, to = fields[1], fields[2]
        qual = kb.partition.range_of(fields[3], fields[4] if len(fields) == 5 else None)
        _constrain(kb, frm, to, kb.partition.semantics(qual), qual)
    elif kind == "n":
        if len(fields) != 5:
            raise ValueError(f"bad numeric statement: {line!r}")
        frm, to = fields[1], fields[2]
        _constrain(kb, frm, to, ProbInterval(float(fields[3]), float(fields[4])), None)
    elif kind == "?":
        if len(fields) != 3:
            raise ValueError(f"bad query: {line!r}")
        kb.queries.append((fields[1], fields[2]))
        kb.add_node(fields[1])
        kb.add_node(fields[2])
    else:
        raise ValueError(f"unknown statement kind {kind!r} in {line!r}")


def _constrain(
    kb: KnowledgeBase, frm: str, to: str, interval: ProbInterval, qual: QRange | None
) -> None:
    kb.add_node(frm)
    kb.add_node(to)
    if frm == to:
        if not interval.contains(1.0):
            raise ContradictionError(f"self edge {frm} must be certain")
        return
    old = kb.edges.get((frm, to))
    if old is not None:
        interval_new = old.interval.intersect(interval)
        if interval_new is None:
            raise ContradictionError(
                f"contradiction on edge {frm} -> {to}: "
                f"{old.interval} vs {interval}"
            )
        interval = interval_new
        if qual is not None and old.qual is not None:
            qual_new = qualalg.meet(qual, old.qual)
            if qual_new is None:
                raise ContradictionError(
                    f"contradiction on edge {frm} -> {to} (qualitative)"
                )
            qual = qual_new
        elif qual is None:
            qual = old.qual
    kb.edges[(frm, to)] = Edge(interval, qual)


def parse_kb(text: str, mode: str = "numeric") -> KnowledgeBase:
    partition = qualalg.parse_partition_config(text)
    kb = KnowledgeBase(partition, mode)
    for no, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw).strip()
        if not line or line.startswith("@"):
            continue
        try:
            ingest(kb, line)
        except (ValueError, KeyError) as exc:
            if isinstance(exc, ContradictionError):
                raise
            raise qualalg.ConfigError(str(exc), no) from exc
    return kb


# -- cycle enumeration -------------------------------------------------------


def simple_cycles(nodes: list[str], max_len: int) -> list[tuple[str, ...]]:
    """Canonical simple cycles, shortest first, rotation/reflection minimal."""
    out: list[tuple[str, ...]] = []
    ordered = sorted(nodes)
    for m in range(3, max_len + 1):
        for combo in itertools.combinations(ordered, m):
            first, rest = combo[0], combo[1:]
            for perm in itertools.permutations(rest):
                if perm[0] < perm[-1]:  # kill reflections
                    out.append((first,) + perm)
    return out


def _cycle_rotations(cycle: tuple[str, ...]):
    m = len(cycle)
    for direction in (1, -1):
        seq = cycle if direction == 1 else (cycle[0],) + tuple(reversed(cycle[1:]))
        for r in range(m):
            yield tuple(seq[(r + i) % m] for i in range(m))


# -- saturation ---------------------------------------------------------------


def saturate(
    kb: KnowledgeBase, max_cycle_len: int = 4, eps: float = 1e-9
) -> tuple[KnowledgeBase, list[TraceStep]]:
    """Run syllogism sweeps then cycle passes to a fixpoint; returns a copy."""
    out = kb.copy()
    trace: list[TraceStep] = []
    table = gen_table_cached(kb.partition) if kb.mode == "qualitative" else None
    for _ in range(10_000):
        changed = _syllogism_phase(out, table, eps, trace)
        changed |= _cycle_phase(out, table, max_cycle_len, eps, trace)
        if not changed:
            return out, trace
    raise RuntimeError("saturation failed to converge")


_table_cache: dict[tuple, SyllogismTable] = {}


def gen_table_cached(p: Partition) -> SyllogismTable:
    key = (p.thresholds, p.labels)
    if key not in _table_cache:
        _table_cache[key] = tables.gen_table(p)
    return _table_cache[key]


def _syllogism_phase(kb, table, eps, trace) -> bool:
    any_change = False
    for _ in range(10_000):
        changed = False
        for a, b, c in itertools.permutations(sorted(kb.nodes), 3):
            if kb.mode == "qualitative":
                changed |= _apply_syllogism_qual(kb, table, a, b, c, trace)
            else:
                changed |= _apply_syllogism_num(kb, a, b, c, eps, trace)
        any_change |= changed
        if not changed:
            return any_change
    raise RuntimeError("syllogism phase failed to converge")


def _apply_syllogism_num(kb, a, b, c, eps, trace) -> bool:
    inp = SyllogismInput(
        b_given_a=kb.interval(a, b),
        a_given_b=kb.interval(b, a),
        c_given_b=kb.interval(b, c),
        b_given_c=kb.interval(c, b),
    )
    lo = syllogism_lower(inp)
    hi = syllogism_upper(inp)
    old = kb.interval(a, c)
    new_lo = max(old.lo, lo)
    new_hi = min(old.hi, hi)
    if new_lo > new_hi + 1e-9:
        raise ContradictionError(
            f"syllogism ({a}, {b}, {c}) empties edge {a} -> {c}: "
            f"{old} meets [{lo:.6f}, {hi:.6f}]",
            trace[-20:],
        )
    if new_lo - old.lo <= eps and old.hi - new_hi <= eps:
        return False
    new = ProbInterval(new_lo, max(new_lo, new_hi))
    _set_numeric(kb, a, c, new)
    trace.append(TraceStep("syllogism", (a, b, c), (a, c), str(old), str(new)))
    return True


def _apply_syllogism_qual(kb, table, a, b, c, trace) -> bool:
    q5 = eval_extended(
        table, kb.qual(a, b), kb.qual(b, a), kb.qual(c, b), kb.qual(b, c)
    )
    old = kb.qual(a, c)
    new = qualalg.meet(old, q5)
    if new is None:
        raise ContradictionError(
            f"syllogism ({a}, {b}, {c}) empties edge {a} -> {c}", trace[-20:]
        )
    if new == old:
        return False
    _set_qual(kb, a, c, new)
    p = kb.partition
    trace.append(
        TraceStep("syllogism", (a, b, c), (a, c), p.name_of(old), p.name_of(new))
    )
    return True


def _cycle_phase(kb, table, max_cycle_len, eps, trace) -> bool:
    any_change = False
    cycles = simple_cycles(kb.nodes, max_cycle_len)
    for _ in range(10_000):
        changed = False
        for cycle in cycles:
            for seq in _cycle_rotations(cycle):
                if kb.mode == "qualitative":
                    changed |= _apply_gbt(kb, seq, trace)
                else:
                    changed |= _apply_bayes(kb, seq, eps, trace)
        any_change |= changed
        if not changed:
            return any_change
    raise RuntimeError("cycle phase failed to converge")


def _cycle_edges(seq: tuple[str, ...]):
    """Edge pairs for a cycle A1..Ak: forward P(Ai|Ai+1), backward P(Ai+1|Ai).

    Wraparound included: the last forward edge is P(Ak|A1) and the last
    backward edge is the target P(A1|Ak) itself.
    """
    k = len(seq)
    forward = [(seq[(i + 1) % k], seq[i]) for i in range(k)]
    backward = [(seq[i], seq[(i + 1) % k]) for i in range(k)]
    return forward, backward


def _apply_bayes(kb, seq, eps, trace) -> bool:
    fwd_pairs, bwd_pairs = _cycle_edges(seq)
    target = bwd_pairs[-1]  # (Ak, A1) carrying P(A1|Ak)
    direct = kb.interval(*target)
    new = bayes_cycle(
        [kb.interval(*pair) for pair in fwd_pairs],
        [kb.interval(*pair) for pair in bwd_pairs],
        direct,
    )
    if new.lo - direct.lo <= eps and direct.hi - new.hi <= eps:
        return False
    _set_numeric(kb, *target, new)
    trace.append(TraceStep("bayes", seq, target, str(direct), str(new)))
    return True


def gbt_qualitative(kb: KnowledgeBase, cycle: tuple[str, ...]) -> QRange:
    """Qualitative cycle update: products first, one truncated quotient.

    For the cycle A1..Ak this bounds P(A1|Ak) by
    qdiv(qmul(P(Ak|A1), P(A1|A2), .., P(Ak-1|Ak)), qmul(P(A2|A1), .., P(Ak|Ak-1)))
    and merges with the current range via the certainty order.
    """
    p = kb.partition
    fwd_pairs, bwd_pairs = _cycle_edges(cycle)
    num = kb.qual(*fwd_pairs[-1])  # reverse edge P(Ak|A1)
    for pair in fwd_pairs[:-1]:
        num = p.qmul(num, kb.qual(*pair))
    den: QRange | None = None
    for pair in bwd_pairs[:-1]:
        q = kb.qual(*pair)
        den = q if den is None else p.qmul(den, q)
    assert den is not None
    ratio = p.qdiv(num, den)
    old = kb.qual(*bwd_pairs[-1])
    lo = max(old.low, ratio.low)
    hi = min(old.high, ratio.high)
    if lo > hi:  # vacuous refinement; keep the old range
        return old
    return QRange(lo, hi)


def _apply_gbt(kb, seq, trace) -> bool:
    target = (seq[-1], seq[0])
    old = kb.qual(*target)
    new = gbt_qualitative(kb, seq)
    if new == old:
        return False
    _set_qual(kb, *target, new)
    p = kb.partition
    trace.append(TraceStep("gbt", seq, target, p.name_of(old), p.name_of(new)))
    return True


def _set_numeric(kb, frm, to, interval: ProbInterval) -> None:
    old = kb.edges.get((frm, to))
    qual = old.qual if old else None
    kb.edges[(frm, to)] = Edge(interval, qual)


def _set_qual(kb, frm, to, qual: QRange) -> None:
    interval = kb.partition.semantics(qual)
    old = kb.edges.get((frm, to))
    if old is not None:
        met = old.interval.intersect(interval)
        interval = met if met is not None else interval
    kb.edges[(frm, to)] = Edge(interval, qual)


# -- querying and export -------------------------------------------------------


def query(kb: KnowledgeBase, frm: str, to: str) -> tuple[ProbInterval, QRange]:
    for name in (frm, to):
        if name not in kb.nodes:
            raise UnknownNode(name)
    return kb.interval(frm, to), kb.qual(frm, to)


def statements(kb: KnowledgeBase) -> list[str]:
    """Readable rendering of every informative edge."""
    out = []
    for (frm, to) in sorted(kb.informative_edges()):
        if kb.mode == "qualitative":
            out.append(f"{frm} -> {to} : {kb.partition.name_of(kb.qual(frm, to))}")
        else:
            out.append(f"{frm} -> {to} : {kb.interval(frm, to)}")
    return out


def derived_statements(
    kb_before: KnowledgeBase, kb_after: KnowledgeBase
) -> dict[tuple[str, str], QRange]:
    """Edges that were vacuous at ingestion and are informative after."""
    full = kb_after.partition.full_range()
    out = {}
    for pair in sorted(kb_after.informative_edges()):
        if kb_before.qual(*pair) == kb_before.partition.full_range():
            q = kb_after.qual(*pair)
            if q != full:
                out[pair] = q
    return out


def matrix_csv(kb: KnowledgeBase, decimals: int = 3) -> str:
    """Incidence matrix, rows = from, columns = to, cells "lo,hi"."""
    import csv as _csv
    import io as _io

    buf = _io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + kb.nodes)
    for frm in kb.nodes:
        row = [frm]
        for to in kb.nodes:
            ival = kb.interval(frm, to)
            row.append(f"{ival.lo:.{decimals}f},{ival.hi:.{decimals}f}")
        writer.writerow(row)
    return buf.getvalue()


def kb_from_matrix_csv(text: str, partition: Partition, mode: str = "numeric") -> KnowledgeBase:
    import csv as _csv
    import io as _io

    rows = list(_csv.reader(_io.StringIO(text)))
    header = rows[0][1:]
    kb = KnowledgeBase(partition, mode)
    for name in header:
        kb.add_node(name)
    for row in rows[1:]:
        frm = row[0]
        for to, cell in zip(header, row[1:]):
            lo_s, hi_s = cell.split(",")
            ival = ProbInterval(float(lo_s), float(hi_s))
            if frm != to and ival != FULL:
                kb.edges[(frm, to)] = Edge(ival, None)
    return kb
