"""Command-line front end: tables, propagate, query, robustness, check."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import adams, network, oracle, qualalg, tables
from .bounds import SyllogismInput, syllogism
from .oracle import OracleProblem
from .qualalg import ProbInterval


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def cmd_tables(args) -> int:
    try:
        partition = qualalg.parse_partition_config(_read(args.config))
    except qualalg.ConfigError as exc:
        return _fail(str(exc))
    except qualalg.PartitionError as exc:
        return _fail(f"invalid partition: {exc}")
    table = tables.gen_table(partition)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    (out / "table.csv").write_text(tables.table_to_csv(table), encoding="utf-8")
    (out / "table.md").write_text(tables.compact_to_markdown(table), encoding="utf-8")
    print(f"wrote {len(table.entries)} rows to {out / 'table.csv'}")
    return 0


def _query_json(kb, pairs) -> str:
    payload = {}
    for frm, to in pairs:
        ival, qual = network.query(kb, frm, to)
        payload[f"P({to}|{frm})"] = {
            "lo": round(ival.lo, 6),
            "hi": round(ival.hi, 6),
            "qual_low": kb.partition.labels[qual.low],
            "qual_high": kb.partition.labels[qual.high],
        }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cmd_propagate(args) -> int:
    try:
        kb = network.parse_kb(_read(args.kb), mode=args.mode)
    except qualalg.ConfigError as exc:
        return _fail(str(exc))
    before = kb.copy()
    try:
        saturated, trace = network.saturate(kb, args.max_cycle, args.eps)
    except network.ContradictionError as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        for step in exc.chain:
            print(f"  {step.phase} {step.context}: {step.edge} "
                  f"{step.before} -> {step.after}", file=sys.stderr)
        return 1
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    (out / "saturated.csv").write_text(network.matrix_csv(saturated), encoding="utf-8")
    lines = network.statements(saturated)
    (out / "statements.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    for line in lines:
        print(line)
    if saturated.mode == "qualitative":
        derived = network.derived_statements(before, saturated)
        if derived:
            print("derived:")
            for (frm, to), qual in derived.items():
                print(f"  {frm} -> {to} : {saturated.partition.name_of(qual)}")
    if saturated.queries:
        answer = _query_json(saturated, saturated.queries)
        (out / "answers.json").write_text(answer, encoding="utf-8")
        print(answer, end="")
    return 0


def cmd_query(args) -> int:
    try:
        kb = network.parse_kb(_read(args.kb), mode=args.mode)
        saturated, _ = network.saturate(kb, args.max_cycle, args.eps)
        text = _query_json(saturated, [(args.frm, args.to)])
    except (qualalg.ConfigError, network.ContradictionError, network.UnknownNode) as exc:
        return _fail(str(exc))
    _write(args.out, text)
    return 0


def cmd_robustness(args) -> int:
    try:
        a_from, a_to, step = (float(x) for x in args.alpha.split(":"))
    except ValueError:
        return _fail(f"bad alpha range {args.alpha!r}; expected from:to:step")
    try:
        report = tables.robustness_sweep(
            qualalg.SCALE5_LABELS, a_from, a_to, step, args.reference
        )
    except ValueError as exc:
        return _fail(str(exc))
    flip_alphas = [a for a in report.alpha_values if a >= (3 - 5**0.5) / 2]
    payload = {
        "reference_alpha": report.reference_alpha,
        "alpha_values": list(report.alpha_values),
        "changes_per_alpha": {
            f"{a:.4f}": len(report.changed_per_alpha[a]) for a in report.alpha_values
        },
        "distinct_changed_tuples": report.distinct_count,
        "changed_tuples": [list(k) for k in report.changed_distinct],
        "half_product_flip_alphas": flip_alphas,
    }
    _write(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _random_interval(rng, precise: bool) -> ProbInterval:
    if precise:
        x = float(rng.uniform(0.05, 0.95))
        return ProbInterval(x, x)
    a, b = sorted(rng.uniform(0.0, 1.0, size=2))
    return ProbInterval(float(a), float(b))


def run_check(n: int, seed: int) -> dict:
    """Soundness/tightness comparison against the LP oracle plus rule checks."""
    rng = np.random.default_rng(seed)
    report = {
        "n": n,
        "seed": seed,
        "max_tight_gap": 0.0,
        "max_soundness_violation": 0.0,
        "tight_failures": 0,
    }
    for precise in (True, False):
        for _ in range(n):
            inp = SyllogismInput(*(_random_interval(rng, precise) for _ in range(4)))
            ca, _ = syllogism(inp)
            problem = OracleProblem(
                3,
                [
                    (0, 1, inp.b_given_a),
                    (1, 0, inp.a_given_b),
                    (1, 2, inp.c_given_b),
                    (2, 1, inp.b_given_c),
                ],
                (0, 2),
            )
            res = oracle.solve(problem)
            if not res.ok:
                continue
            violation = max(ca.lo - res.interval.lo, res.interval.hi - ca.hi, 0.0)
            report["max_soundness_violation"] = max(
                report["max_soundness_violation"], round(violation, 9)
            )
            if precise:
                gap = max(abs(ca.lo - res.interval.lo), abs(ca.hi - res.interval.hi))
                report["max_tight_gap"] = max(report["max_tight_gap"], round(gap, 9))
                if gap > 0.02:
                    report["tight_failures"] += 1
    if n > 0:
        report["adams"] = {}
        for name, bound, constraints, target in adams_oracle_problems(0.3):
            res = oracle.solve_events(3, constraints, target)
            report["adams"][name] = {
                "bound": round(bound, 9),
                "oracle_min": round(res.interval.lo, 9),
                "sound": bound <= res.interval.lo + 1e-6,
            }
    return report


def adams_oracle_problems(alpha: float):
    """(name, bound, constraints, target) at the event level, one per rule."""
    k = 3
    a_ev = oracle.class_event(k, 0)
    b_ev = oracle.class_event(k, 1)
    c_ev = oracle.class_event(k, 2)
    most = ProbInterval(1.0 - alpha, 1.0)
    return [
        (
            "triangularity",
            adams.triangularity_bound(alpha),
            [(b_ev, a_ev, most), (c_ev, a_ev, most)],
            (c_ev, a_ev & b_ev),
        ),
        (
            "bayes_rule",
            adams.bayes_rule_bound(alpha),
            [(b_ev, a_ev, most), (c_ev, a_ev & b_ev, most)],
            (c_ev, a_ev),
        ),
        (
            "disjunction",
            adams.disjunction_bound(alpha, alpha),
            [(c_ev, a_ev, most), (c_ev, b_ev, most)],
            (c_ev, a_ev | b_ev),
        ),
    ]


def cmd_check(args) -> int:
    report = run_check(args.n, args.seed)
    _write(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    if report["max_soundness_violation"] > 0.0:
        print("soundness violation detected", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="linquant",
        description="Propagate interval and linguistic-quantifier probability bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tables = sub.add_parser("tables", help="generate the syllogism table")
    p_tables.add_argument("config", help="partition config file")
    p_tables.add_argument("--out", default=None, help="output directory")
    p_tables.set_defaults(func=cmd_tables)

    p_prop = sub.add_parser("propagate", help="saturate a knowledge base")
    p_prop.add_argument("kb", help="knowledge base file")
    p_prop.add_argument("--mode", choices=("numeric", "qualitative"), default="numeric")
    p_prop.add_argument("--max-cycle", type=int, default=4)
    p_prop.add_argument("--eps", type=float, default=1e-9)
    p_prop.add_argument("--out", default=None)
    p_prop.set_defaults(func=cmd_propagate)

    p_query = sub.add_parser("query", help="saturate then answer one query")
    p_query.add_argument("kb")
    p_query.add_argument("frm")
    p_query.add_argument("to")
    p_query.add_argument("--mode", choices=("numeric", "qualitative"), default="numeric")
    p_query.add_argument("--max-cycle", type=int, default=4)
    p_query.add_argument("--eps", type=float, default=1e-9)
    p_query.add_argument("--out", default=None)
    p_query.set_defaults(func=cmd_query)

    p_rob = sub.add_parser("robustness", help="sweep the few/half threshold")
    p_rob.add_argument("--alpha", default="0.25:0.35:0.01", help="from:to:step")
    p_rob.add_argument("--reference", type=float, default=0.30)
    p_rob.add_argument("--out", default=None)
    p_rob.set_defaults(func=cmd_robustness)

    p_check = sub.add_parser("check", help="compare bounds against the LP oracle")
    p_check.add_argument("--n", type=int, default=200)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--out", default=None)
    p_check.set_defaults(func=cmd_check)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
