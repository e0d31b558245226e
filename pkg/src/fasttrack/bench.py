"""Experiment matrix: every suite function under every line-search method.

Reports mirror a table of average evaluations per line-search call, plus the
per-step series used to plot how the cost evolves along a descent run.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import armijo
from .linesearch import GEOMETRIC, ITP_LOG, ChoiceRule, backtrack, fasttrack
from .armijo import DescentConfig, DescentTrace

METHODS = ("backtrack", "fasttrack_geometric", "fasttrack_itp")
OK_STATUSES = ("completed", "stationary")

TABLE_COLUMNS = (
    "name", "method", "calls", "mean_loop_evals", "mean_total_evals",
    "max_loop_evals", "max_total_evals", "status",
)
EVOLUTION_COLUMNS = ("name", "method", "step", "loop_evals", "total_evals", "status")
META_COLUMNS = (
    "beta", "epsilon", "x0_step", "armijo_c", "steps",
    "itp_kappa1", "itp_kappa2", "itp_n0", "itp_interpolation",
)


@dataclass
class TableRow:
    name: str
    method: str
    calls: int
    mean_loop_evals: float
    mean_total_evals: float
    max_loop_evals: int
    max_total_evals: int
    status: str


@dataclass
class MethodSummary:
    method: str
    calls: int
    global_mean_loop_evals: float
    global_mean_total_evals: float
    mean_of_function_means: float
    global_worst_loop_evals: int
    global_worst_total_evals: int


@dataclass
class BenchReport:
    metadata: dict
    rows: list[TableRow] = field(default_factory=list)
    summaries: dict[str, MethodSummary] = field(default_factory=dict)
    # backtracking mean total evals over fast-tracking (ITP) mean loop evals
    speedup: float | None = None

    @property
    def failed(self) -> bool:
        return any(r.status not in OK_STATUSES for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "rows": [asdict(r) for r in self.rows],
            "summaries": {k: asdict(v) for k, v in self.summaries.items()},
            "speedup": self.speedup,
        }


def searchers(itp_rule: ChoiceRule = ITP_LOG) -> dict:
    return {
        "backtrack": backtrack,
        "fasttrack_geometric": lambda p: fasttrack(p, GEOMETRIC),
        "fasttrack_itp": lambda p: fasttrack(p, itp_rule),
    }


def metadata(config: DescentConfig, itp_rule: ChoiceRule = ITP_LOG) -> dict:
    return {
        "beta": config.beta,
        "epsilon": config.epsilon,
        "x0_step": config.x0_step,
        "armijo_c": config.armijo_c,
        "steps": config.steps,
        "itp_kappa1": itp_rule.itp.kappa1,
        "itp_kappa2": itp_rule.itp.kappa2,
        "itp_n0": itp_rule.itp.n0,
        "itp_interpolation": itp_rule.interpolation,
    }


def _check_methods(methods):
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown methods {unknown}; choose from {list(METHODS)}")


def _run(fn, config, method, search) -> DescentTrace:
    try:
        return armijo.gradient_descent(fn, config, method, search)
    except Exception as exc:  # annotate the row, keep the table going
        trace = DescentTrace(fn.name, method)
        trace.status = f"error: {type(exc).__name__}: {exc}"
        return trace


def run_table(
    config: DescentConfig, methods=METHODS, functions=None, itp_rule: ChoiceRule = ITP_LOG
) -> BenchReport:
    _check_methods(methods)
    search = searchers(itp_rule)
    suite = armijo.test_suite()
    if functions is not None:
        suite = [armijo.get_function(name) for name in functions]
    report = BenchReport(metadata(config, itp_rule))
    calls = {m: [] for m in methods}
    means = {m: [] for m in methods}
    for fn in suite:
        for method in methods:
            trace = _run(fn, config, method, search[method])
            loop, total = trace.loop_evals, trace.total_evals
            report.rows.append(TableRow(
                name=fn.name,
                method=method,
                calls=len(loop),
                mean_loop_evals=float(np.mean(loop)) if loop else float("nan"),
                mean_total_evals=float(np.mean(total)) if total else float("nan"),
                max_loop_evals=max(loop, default=0),
                max_total_evals=max(total, default=0),
                status=trace.status,
            ))
            calls[method].append((loop, total))
            if loop:
                means[method].append(np.mean(loop))

    for method in methods:
        loop = [v for l, _ in calls[method] for v in l]
        total = [v for _, t in calls[method] for v in t]
        if not loop:
            continue
        report.summaries[method] = MethodSummary(
            method=method,
            calls=len(loop),
            global_mean_loop_evals=float(np.mean(loop)),
            global_mean_total_evals=float(np.mean(total)),
            mean_of_function_means=float(np.mean(means[method])),
            global_worst_loop_evals=max(loop),
            global_worst_total_evals=max(total),
        )
    bt, ft = report.summaries.get("backtrack"), report.summaries.get("fasttrack_itp")
    if bt and ft and ft.global_mean_loop_evals > 0:
        report.speedup = bt.global_mean_total_evals / ft.global_mean_loop_evals
    return report


def run_evolution(
    function_name: str, config: DescentConfig, methods=METHODS, itp_rule: ChoiceRule = ITP_LOG
) -> dict:
    """Per-method series of line-search evaluation counts, one entry per gradient step."""
    _check_methods(methods)
    fn = armijo.get_function(function_name)
    search = searchers(itp_rule)
    series = {}
    for method in methods:
        trace = _run(fn, config, method, search[method])
        series[method] = {
            "loop_evals": trace.loop_evals,
            "total_evals": trace.total_evals,
            "status": trace.status,
        }
    return {"metadata": metadata(config, itp_rule), "name": function_name, "series": series}


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".6g")
    return v


def table_csv(reports: list[BenchReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(META_COLUMNS + TABLE_COLUMNS)
    for report in reports:
        meta = [_fmt(report.metadata[k]) for k in META_COLUMNS]
        for row in report.rows:
            w.writerow(meta + [_fmt(getattr(row, c)) for c in TABLE_COLUMNS])
        for s in report.summaries.values():
            w.writerow(meta + [
                "global", s.method, s.calls, _fmt(s.global_mean_loop_evals),
                _fmt(s.global_mean_total_evals), s.global_worst_loop_evals,
                s.global_worst_total_evals, "summary",
            ])
    return buf.getvalue()


def evolution_csv(evolutions: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(META_COLUMNS + EVOLUTION_COLUMNS)
    for evo in evolutions:
        meta = [_fmt(evo["metadata"][k]) for k in META_COLUMNS]
        for method, s in evo["series"].items():
            for step, (le, te) in enumerate(zip(s["loop_evals"], s["total_evals"]), start=1):
                w.writerow(meta + [evo["name"], method, step, le, te, s["status"]])
    return buf.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
