"""Command-line front end.

Subcommands: describe (one-column summary), outliers and boxplot (per-group
fence statistics), analyze (the full decision tree), validate (Monte Carlo
error-rate calibration).  Exit codes: 0 success, 1 internal error, 2 user
or data error.  Text output carries the same numbers as JSON rounded to
three decimals; JSON keeps full precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .dataset import Dataset, builtin_table2, parse_csv, select_response_factor
from .descriptive import boxplot_stats, classify_outliers, describe
from .engine import AnalysisReport, EngineConfig, analyze
from .montecarlo import GroupSpec, Scenario, simulate_error_rates

__all__ = ["main"]


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _fmt_p(p: float) -> str:
    return "<0.001" if p < 0.001 else f"{p:.3f}"


def _resolve_format(value: str | None, default: str = "text") -> str:
    if value:
        return value
    env = os.environ.get("STATTREE_FORMAT")
    if env in ("text", "json"):
        return env
    return default


def _load(path: str) -> Dataset:
    if path == "builtin:table2":
        return builtin_table2()
    if path.startswith("builtin:"):
        raise ValueError(f"unknown builtin dataset {path!r}")
    with open(path, "r", encoding="utf-8") as fh:
        return parse_csv(fh.read())


def _cmd_describe(args) -> int:
    dataset = _load(args.input)
    column = dataset.column(args.column)
    if not column.scale.is_numeric:
        raise ValueError(f"column {args.column!r} is not numeric")
    summary = describe(column.values)
    fmt = _resolve_format(args.format)
    if fmt == "json":
        print(json.dumps({"column": args.column, **summary.to_dict()}))
        return 0
    print(f"column: {args.column}")
    print(f"n         {summary.n}")
    print(f"mean      {_fmt(summary.mean)}")
    print(f"median    {_fmt(summary.median)}")
    if summary.modes:
        print(f"modes     {', '.join(_fmt(m) for m in summary.modes)}")
    else:
        print("modes     * (0 modes)")
    print(f"min       {_fmt(summary.min)}")
    print(f"max       {_fmt(summary.max)}")
    print(f"range     {_fmt(summary.range)}")
    print(f"q1        {_fmt(summary.q1)}")
    print(f"q3        {_fmt(summary.q3)}")
    print(f"variance  {_fmt(summary.variance)}")
    print(f"stddev    {_fmt(summary.stddev)}")
    return 0


def _cmd_outliers(args) -> int:
    dataset = _load(args.input)
    grouped = select_response_factor(dataset, args.response, args.factor)
    reports = {label: classify_outliers(s) for label, s in grouped.items()}
    fmt = _resolve_format(args.format)
    if fmt == "json":
        print(
            json.dumps(
                {
                    "response": args.response,
                    "factor": args.factor,
                    "groups": {k: v.to_dict() for k, v in reports.items()},
                }
            )
        )
        return 0
    for label, rep in reports.items():
        lo, hi = rep.inner_fences
        olo, ohi = rep.outer_fences
        print(
            f"group {label}: L={_fmt(rep.l)} "
            f"inner=[{_fmt(lo)}, {_fmt(hi)}] outer=[{_fmt(olo)}, {_fmt(ohi)}]"
        )
        mild = ", ".join(_fmt(v) for v in rep.mild) or "none"
        extreme = ", ".join(_fmt(v) for v in rep.extreme) or "none"
        print(f"  mild: {mild}")
        print(f"  extreme: {extreme}")
    return 0


def _cmd_boxplot(args) -> int:
    dataset = _load(args.input)
    grouped = select_response_factor(dataset, args.response, args.factor)
    records = [
        {"group": label, **boxplot_stats(s).to_dict()}
        for label, s in grouped.items()
    ]
    fmt = _resolve_format(args.format, default="json")
    if fmt == "json":
        print(json.dumps(records))
        return 0
    for rec in records:
        print(
            f"group {rec['group']}: "
            f"q1={_fmt(rec['q1'])} median={_fmt(rec['median'])} "
            f"q3={_fmt(rec['q3'])} whiskers=[{_fmt(rec['whisker_low'])}, "
            f"{_fmt(rec['whisker_high'])}]"
        )
        flagged = ", ".join(_fmt(v) for v in rec["flagged_points"]) or "none"
        print(f"  flagged: {flagged}")
    return 0


def _render_analysis_text(report: AnalysisReport) -> str:
    lines = []
    lines.append(
        f"response: {report.response_name}  factor: {report.factor_name}  "
        f"alpha={report.config.alpha:g}"
    )
    sizes = ", ".join(
        f"{label} (n={d.n})" for label, d in report.per_group_descriptives.items()
    )
    lines.append(f"groups: {sizes}")
    lines.append("")
    lines.append("descriptives:")
    for label, d in report.per_group_descriptives.items():
        lines.append(
            f"  {label}: mean={_fmt(d.mean)} median={_fmt(d.median)} "
            f"sd={_fmt(d.stddev)} min={_fmt(d.min)} max={_fmt(d.max)}"
        )
    if report.outliers:
        lines.append("outliers:")
        for label, rep in report.outliers.items():
            mild = ", ".join(_fmt(v) for v in rep.mild) or "none"
            extreme = ", ".join(_fmt(v) for v in rep.extreme) or "none"
            lines.append(f"  {label}: mild={mild} extreme={extreme}")
    lines.append("")
    lines.append("decision trace:")
    for step in report.trace.steps:
        if step.node == "normality":
            t = step.evidence["test"]
            lines.append(
                f"  normality[{step.evidence['group']}]: {t['method']} "
                f"{t['statistic_name']}={_fmt(t['statistic'])} "
                f"p={_fmt_p(t['p_value'])} -> {step.outcome}"
            )
        elif step.node == "homoscedasticity":
            t = step.evidence["test"]
            note = " (informational)" if step.evidence["informational"] else ""
            lines.append(
                f"  homoscedasticity: levene({step.evidence['center']}) "
                f"W={_fmt(t['statistic'])} p={_fmt_p(t['p_value'])} "
                f"-> {step.outcome}{note}"
            )
        elif step.node == "branch_selection":
            ev = step.evidence
            lines.append(
                f"  branch: {step.outcome} ({ev['reason']}), "
                f"primary test {ev['primary_test']}"
            )
        elif step.node == "primary_test":
            t = step.evidence["test"]
            if "statistic_name" in t:
                stat = f"{t['statistic_name']}={_fmt(t['statistic'])}"
            else:
                stat = f"F={_fmt(t['f'])}"
            lines.append(
                f"  primary: {stat} p={_fmt_p(t['p_value'])} -> {step.outcome}"
            )
        elif step.node == "posthoc":
            lines.append(f"  posthoc: {step.outcome}")
    if report.posthoc:
        lines.append("")
        lines.append(f"post-hoc ({report.posthoc.family_method}):")
        for c in report.posthoc.comparisons:
            flag = "significant" if c.significant_at_alpha else "not significant"
            lines.append(
                f"  {c.label_a} vs {c.label_b}: estimate={_fmt(c.estimate)} "
                f"statistic={_fmt(c.statistic)} p={_fmt_p(c.p_value)} ({flag})"
            )
    lines.append("")
    lines.append(
        f"conclusion: {report.conclusion['decision']} at "
        f"alpha={report.conclusion['alpha']:g}"
    )
    lines.append(f"  h0: {report.hypotheses['h0']}")
    lines.append(f"  h1: {report.hypotheses['h1']}")
    return "\n".join(lines)


def _cmd_analyze(args) -> int:
    dataset = _load(args.input)
    grouped = select_response_factor(dataset, args.response, args.factor)
    config = EngineConfig(
        alpha=args.alpha,
        size_threshold=args.size_threshold,
        levene_center=args.levene_center,
        t_variant=args.t_variant,
        posthoc_correction=args.posthoc_correction,
    )
    report = analyze(grouped, config)
    fmt = _resolve_format(args.format)
    if fmt == "json":
        print(report.to_json())
    else:
        print(_render_analysis_text(report))
    return 0


def _parse_group_spec(text: str) -> GroupSpec:
    parts = text.split(":")
    if len(parts) < 3:
        raise ValueError(
            f"bad group spec {text!r}; expected DIST:PARAM[:PARAM]:N, "
            "e.g. normal:0:1:20, uniform:0:1:20, exponential:1:20"
        )
    kind = parts[0]
    try:
        numbers = [float(p) for p in parts[1:]]
    except ValueError:
        raise ValueError(f"bad group spec {text!r}: non-numeric field") from None
    n = numbers[-1]
    if n != int(n):
        raise ValueError(f"bad group spec {text!r}: N must be an integer")
    return GroupSpec(distribution=kind, params=tuple(numbers[:-1]), n=int(n))


def _cmd_validate(args) -> int:
    if not (0.0 < args.alpha < 1.0):
        raise ValueError("alpha must be in (0,1)")
    specs = [_parse_group_spec(s) for s in (args.group or ["normal:0:1:20"] * 2)]
    scenario = Scenario(
        group_specs=tuple(specs), truth=args.truth, seed=args.seed
    )
    report = simulate_error_rates(
        scenario, args.test, args.replications, alpha=args.alpha
    )
    fmt = _resolve_format(args.format)
    if fmt == "json":
        print(
            json.dumps(
                {
                    "test": args.test,
                    "truth": args.truth,
                    "seed": args.seed,
                    **report.to_dict(),
                }
            )
        )
        return 0
    print(
        f"test={args.test} truth={args.truth} "
        f"replications={report.replications} seed={args.seed}"
    )
    print(
        f"rejections={report.rejections} rate={report.rate:.4f} "
        f"target_alpha={report.target_alpha:g} "
        f"ci_halfwidth={report.ci_halfwidth:.4f}"
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stattree",
        description=(
            "Hypothesis-test selection and execution over grouped data. "
            "Input is a CSV path or the keyword builtin:table2 for the "
            "bundled dataset."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, default_text=True):
        p.add_argument(
            "--format",
            choices=["text", "json"],
            default=None,
            help="output format (default from STATTREE_FORMAT env var"
            + (", else text)" if default_text else ", else json)"),
        )

    p = sub.add_parser("describe", help="descriptive summary of one column")
    p.add_argument("input")
    p.add_argument("--column", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_describe)

    p = sub.add_parser("outliers", help="per-group quartile-fence outliers")
    p.add_argument("input")
    p.add_argument("--response", required=True)
    p.add_argument("--factor", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_outliers)

    p = sub.add_parser("boxplot", help="per-group boxplot statistics")
    p.add_argument("input")
    p.add_argument("--response", required=True)
    p.add_argument("--factor", required=True)
    add_format(p, default_text=False)
    p.set_defaults(func=_cmd_boxplot)

    p = sub.add_parser("analyze", help="run the full decision tree")
    p.add_argument("input")
    p.add_argument("--response", required=True)
    p.add_argument("--factor", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--size-threshold", type=int, default=30)
    p.add_argument("--levene-center", choices=["median", "mean"], default="median")
    p.add_argument("--t-variant", choices=["pooled", "welch"], default="pooled")
    p.add_argument(
        "--posthoc-correction", choices=["none", "bonferroni"], default="none"
    )
    add_format(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("validate", help="Monte Carlo error-rate calibration")
    p.add_argument("--test", required=True)
    p.add_argument("--replications", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--truth", choices=["null", "alternative"], default="null")
    p.add_argument(
        "--group",
        action="append",
        help="repeatable group spec DIST:PARAM[:PARAM]:N "
        "(default: two groups normal:0:1:20)",
    )
    add_format(p)
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 after --help
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - internal failure path
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
