"""Command-line front end: ``bdiv <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from bdiv import analysis, coding, cost_benefit
from bdiv.divergence import DivergenceKind, Family, evaluate, kl, parse_kind, upper_bound
from bdiv.entropy import max_entropy, shannon_entropy
from bdiv.errors import BdivError
from bdiv.prob_core import JointPmf, Pmf

FORMATS = ("csv", "json", "plain")


def format_number(value, precision: int = 6) -> str:
    if isinstance(value, (bool, str)) or value is None:
        return str(value).lower() if isinstance(value, bool) else ("" if value is None else value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    out = f"{v:.{precision}g}"
    return "0" if out == "-0" else out


def _json_value(value, precision: int):
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            return format_number(v)
        return float(format_number(v, precision))
    if isinstance(value, np.integer):
        return int(value)
    return value


def render(records: list[dict], fmt: str, precision: int) -> str:
    if fmt == "json":
        data = [{k: _json_value(v, precision) for k, v in r.items()} for r in records]
        return json.dumps(data if len(data) != 1 else data[0], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if records:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(list(records[0].keys()))
            for r in records:
                writer.writerow([format_number(v, precision) for v in r.values()])
        return buf.getvalue()
    lines = []
    for r in records:
        lines.append(" ".join(f"{k}={format_number(v, precision)}" for k, v in r.items()))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_pmf(text: str) -> Pmf:
    """A comma-separated PMF literal, or a path to a file holding one (JSON list or comma text)."""
    path = Path(text)
    if not any(c in text for c in ",") and path.exists():
        raw = path.read_text().strip()
        try:
            values = json.loads(raw)
        except json.JSONDecodeError:
            values = [v for v in raw.replace("\n", ",").split(",") if v.strip()]
    else:
        values = [v for v in text.split(",")]
    try:
        numbers = [float(v) for v in values]
    except (TypeError, ValueError):
        raise BdivError("PARSE_ERROR", f"cannot parse PMF {text!r}") from None
    return Pmf(numbers)


def parse_joint(text: str) -> JointPmf:
    """Rows separated by ``;`` and cells by ``,``, or a path to a JSON grid."""
    path = Path(text)
    try:
        if ";" not in text and path.exists():
            return JointPmf(json.loads(path.read_text()))
        return JointPmf([[float(c) for c in row.split(",")] for row in text.split(";")])
    except (ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, BdivError):
            raise
        raise BdivError("PARSE_ERROR", f"cannot parse joint {text!r}") from None


def parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise BdivError("PARSE_ERROR", f"cannot parse number list {text!r}") from None


def _kind(args, name: Optional[str] = None) -> DivergenceKind:
    return parse_kind(name or args.measure, k=args.k, scale=args.scale)


def cmd_entropy(args) -> list[dict]:
    p = parse_pmf(args.pmf)
    return [{"n": p.n, "H": shannon_entropy(p), "H_max": max_entropy(p.n)}]


def cmd_divergence(args) -> list[dict]:
    kind = _kind(args)
    p, q = parse_pmf(args.p), parse_pmf(args.q)
    joint = parse_joint(args.joint) if args.joint else None
    value = evaluate(kind, p, q, joint)
    bound = upper_bound(kind, p.n) if p.n >= 2 else 0.0
    return [{"measure": kind.name, "value": value, "upper_bound": bound, "unit": kind.unit}]


def cmd_benefit(args) -> list[dict]:
    step = cost_benefit.ProcessStep(parse_pmf(args.input), parse_pmf(args.output), parse_pmf(args.reconstruction))
    kind = _kind(args)
    ac = cost_benefit.alphabet_compression(step)
    if kind.family is Family.KL:
        distortion = kl(step.reconstruction_pmf, step.input_pmf)
        benefit = cost_benefit.benefit_kl(step)
    else:
        distortion = cost_benefit.bounded_distortion(step, kind)
        benefit = ac - distortion
    return [{"measure": kind.name, "AC": ac, "PD": distortion, "benefit": benefit}]


def cmd_scenario(args) -> list[dict]:
    scenario = cost_benefit.load_scenario(args.file)
    kind = _kind(args)
    values = cost_benefit.evaluate_scenario(scenario, kind)
    return [
        {"scenario": scenario.name, "candidate": label, "measure": kind.name, "value": v}
        for label, v in values.items()
    ]


def cmd_sweep(args) -> list[dict]:
    names = args.measures or args.measure or "js"
    kinds = tuple(_kind(args, name) for name in names.split(",") if name.strip())
    alphas = tuple(parse_floats(args.alphas)) if args.alphas else analysis.DEFAULT_ALPHAS
    grid = analysis.parse_grid(args.grid) if args.grid else analysis.LinearGrid()
    spec = analysis.SweepSpec(kinds, alphas, grid)
    return [
        {"measure": r.measure, "alpha": r.alpha, "p1": r.p1, "q1": r.q1, "value": r.value}
        for r in analysis.iter_sweep(spec)
    ]


def cmd_huffman(args) -> tuple[list[dict], str]:
    q = parse_pmf(args.pmf)
    table = coding.huffman_code(q)
    literal = None
    if np.all(q.probs > 0):
        literal = coding.literal_lengths(q)
    records = []
    for i, word in enumerate(table.codewords):
        rec = {"letter": i, "probability": q[i], "codeword": word, "length": len(word)}
        if literal is not None:
            rec["literal_length"] = literal[i]
        records.append(rec)
    summary = {
        "entropy": shannon_entropy(q),
        "avg_huffman": coding.average_length(table, q),
        "max_length": table.max_length,
        "kraft_sum": table.kraft_sum(),
    }
    if literal is not None:
        summary["avg_literal"] = coding.average_length(literal, q)
    if args.true_pmf:
        p = parse_pmf(args.true_pmf)
        summary["conceptual_cross_entropy"] = coding.conceptual_cross_entropy(p, q)
        summary["conceptual_kl"] = coding.conceptual_kl_bound(p, q)
    plain = table.to_text() + "".join(f"{k}={format_number(v, args.precision)}\n" for k, v in summary.items())
    if args.format == "json":
        return [{"codes": records, **summary}], plain
    return records, plain


def cmd_mcda(args) -> list[dict]:
    table = analysis.load_mcda(args.file)
    result = analysis.mcda_sum(table)
    rows = []
    for measure, total in result.totals.items():
        if measure in result.eliminated_critical:
            status = "eliminated_critical"
        elif measure in result.eliminated_by_sum:
            status = "eliminated_sum"
        else:
            status = "kept"
        rows.append({"measure": measure, "total": total, "status": status})
    return rows


def cmd_verify(args) -> int:
    from bdiv.acceptance import run_all

    results = run_all()
    out = "".join(r.line() + "\n" for r in results)
    failed = sum(not r.passed for r in results)
    out += f"{len(results) - failed}/{len(results)} criteria passed\n"
    _write(out, args.out)
    return 1 if failed else 0


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--precision", type=int, default=6, help="significant digits (default 6)")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    measure = argparse.ArgumentParser(add_help=False)
    measure.add_argument("--k", type=float, default=None, help="power k for dnew/dncm/minkowski")
    measure.add_argument("--scale", type=float, default=None, help="scale factor for kl_scaled")

    parser = argparse.ArgumentParser(
        prog="bdiv",
        description="Bounded divergence measures for information-theoretic cost-benefit analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", parents=[common], help="Shannon and maximum entropy of a PMF")
    p.add_argument("pmf")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("divergence", parents=[common, measure], help="one measure between two PMFs")
    p.add_argument("measure")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--joint", default=None, help="joint grid for cond_entropy: 'a,b;c,d' or a JSON file")
    p.set_defaults(func=cmd_divergence)

    p = sub.add_parser("benefit", parents=[common, measure], help="AC - PD for one process step")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--reconstruction", required=True)
    p.add_argument("--measure", default="js")
    p.set_defaults(func=cmd_benefit)

    p = sub.add_parser("scenario", parents=[common, measure], help="distortions of a scenario file")
    p.add_argument("file", help="scenario JSON path or bundled name scenario1..scenario4")
    p.add_argument("--measure", default="kl")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("sweep", parents=[common, measure], help="binary PMF curve sweep as CSV")
    p.add_argument("--measures", default=None, help="comma-separated measure names")
    p.add_argument("--measure", default=None)
    p.add_argument("--alphas", default=None, help="comma-separated alphas (default 0,0.1,...,1)")
    p.add_argument("--grid", default=None, help="linear:lo:hi:step or log:lo:hi:points_per_decade")
    p.set_defaults(func=cmd_sweep, default_format="csv")

    p = sub.add_parser("huffman", parents=[common], help="Huffman and literal code lengths")
    p.add_argument("pmf")
    p.add_argument("--true-pmf", default=None, help="true PMF for the conceptual cross entropy")
    p.set_defaults(func=cmd_huffman)

    p = sub.add_parser("mcda", parents=[common], help="sum an MCDA score table")
    p.add_argument("file", nargs="?", default=None, help="score table JSON (default: bundled table)")
    p.set_defaults(func=cmd_mcda)

    p = sub.add_parser("verify", parents=[common], help="run every acceptance check")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "plain")
    if args.precision < 1:
        parser.error("--precision must be >= 1")
    try:
        if args.func is cmd_verify:
            return cmd_verify(args)
        result = args.func(args)
        plain = None
        if isinstance(result, tuple):
            result, plain = result
        if args.format == "plain" and plain is not None:
            text = plain
        else:
            text = render(result, args.format, args.precision)
        _write(text, args.out)
    except BdivError as exc:
        print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
