"""Command-line interface: ``ghgd report|stats|dist|sample``.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 budget exceeded
with no fallback.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .distribution import DEFAULT_STATE_BUDGET, exact_distribution, exact_distributions
from .exceptions import BudgetExceededError, DomainError
from .inference import InferenceConfig, ZminRule, build_report, report_features
from .kernel import exact_str, to_decimal
from .lists import ingest, observed_lo_counts
from .moments import expectation_partial, indicator_moments, raw_moments_full
from .problem import Kind, LOHistogram, OverlapFeature, ProblemSpec
from .report import render_json, render_text, render_tsv
from .sampler import report_from_histograms, sample_distribution, sample_histograms

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _feature(text: str) -> OverlapFeature:
    try:
        return OverlapFeature.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ghgd", description="Overlap statistics for subsets of a finite universe.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add_problem(p, feature_required=False):
        p.add_argument("--n", type=int, required=True, help="universe size N")
        p.add_argument("--m", type=_sizes, required=True, help="subset sizes, e.g. 127,110,87,110")
        p.add_argument(
            "--feature",
            type=_feature,
            action="append" if not feature_required else "store",
            required=feature_required,
            help="exactly:T or at_least:T",
        )

    def add_output(p, formats=("text", "tsv", "json"), default="text"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write output here instead of stdout")

    rep = sub.add_parser("report", help="end-to-end inference from identifier lists")
    rep.add_argument("files", nargs="*", help="identifier lists, one identifier per line")
    uni = rep.add_mutually_exclusive_group()
    uni.add_argument("--universe-size", type=int, help="universe size N")
    uni.add_argument("--universe", help="file listing every identifier of the universe")
    rep.add_argument("--n", type=int, help="universe size, with --m and --observed instead of files")
    rep.add_argument("--m", type=_sizes, help="subset sizes, with --n and --observed")
    rep.add_argument(
        "--observed", type=_sizes, help="observed LO histogram counts for levels 0..T (or 1..T)"
    )
    rep.add_argument("--alpha", type=float, default=0.05)
    rep.add_argument("--mode-gap", type=float, default=1.0, help="assumed |mean - mode| bound s")
    rep.add_argument("--zmin-rule", choices=[r.value for r in ZminRule], default=ZminRule.FLOOR_OF_INTERVAL.value)
    rep.add_argument("--fold-case", action="store_true", help="compare identifiers case-insensitively")
    rep.add_argument("--exact", action="store_true", help="append exact tail probabilities when within budget")
    rep.add_argument("--exact-budget", type=int, default=DEFAULT_STATE_BUDGET)
    rep.add_argument("--mc", action="store_true", help="append Monte Carlo tail estimates (and fall back to them)")
    rep.add_argument("--draws", type=int, default=100_000)
    rep.add_argument("--seed", type=int, default=0)
    add_output(rep)

    st = sub.add_parser("stats", help="closed-form mean and variance")
    add_problem(st)
    st.add_argument("--moments", type=int, default=0, help="raw/central moments up to this order for LO=T")
    add_output(st)

    di = sub.add_parser("dist", help="exact distribution")
    add_problem(di, feature_required=True)
    di.add_argument("--exact-budget", type=int, default=DEFAULT_STATE_BUDGET)
    add_output(di, default="json")

    sa = sub.add_parser("sample", help="Monte Carlo distribution")
    add_problem(sa, feature_required=True)
    sa.add_argument("--draws", type=int, default=100_000)
    sa.add_argument("--seed", type=int, default=0)
    sa.add_argument("--n-jobs", type=int, default=1)
    add_output(sa, default="json")
    return parser


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_inputs(args):
    if args.files:
        if args.n is not None or args.m is not None or args.observed is not None:
            raise UsageError("give either identifier files or --n/--m/--observed, not both")
        if args.universe_size is None and args.universe is None:
            raise UsageError("identifier files need --universe-size or --universe")
        lists = ingest(args.files, args.universe_size, args.universe, args.fold_case)
        return lists.spec(), observed_lo_counts(lists)
    if args.n is None or args.m is None or args.observed is None:
        raise UsageError("report needs identifier files, or all of --n, --m and --observed")
    spec = ProblemSpec(args.n, args.m)
    counts = args.observed
    if len(counts) == spec.t_count:
        counts = (spec.n - sum(counts),) + counts
    return spec, LOHistogram(counts).check(spec)


def _cmd_report(args) -> int:
    config = InferenceConfig(args.alpha, args.mode_gap, ZminRule(args.zmin_rule))
    spec, observed = _report_inputs(args)
    rows = build_report(spec, observed, config)
    features = [r.feature for r in rows]
    extra_cols: dict[str, list[str]] = {}
    extra_doc: dict = {}
    use_mc = args.mc
    if args.exact:
        try:
            dists = exact_distributions(spec, features, args.exact_budget)
        except BudgetExceededError as exc:
            if not args.mc:
                raise
            logging.getLogger(__name__).warning("%s; falling back to Monte Carlo", exc)
        else:
            tails = [dists[r.feature].sf(r.noess) for r in rows]
            extra_cols["exact p(X>=NOESS)"] = [to_decimal(p, 6) for p in tails]
            extra_doc["exact_tail"] = [exact_str(p) for p in tails]
    if use_mc:
        hists = sample_histograms(spec, args.draws, args.seed)
        reports = [report_from_histograms(spec, r.feature, hists, args.seed) for r in rows]
        tails = [rep.sf(r.noess) for rep, r in zip(reports, rows)]
        extra_cols["MC p(X>=NOESS)"] = [f"{p:.6f}" for p in tails]
        extra_doc["monte_carlo"] = {"draws": args.draws, "seed": args.seed, "tail": tails}
    if args.format == "json":
        text = render_json(spec, rows, config, observed, extra_doc)
    elif args.format == "tsv":
        text = render_tsv(spec, rows, config, extra_cols)
    else:
        text = render_text(spec, rows, config, extra_cols)
    _emit(text, args.out)
    return EXIT_OK


def _stats_rows(spec, features, moments):
    out = []
    for f in features:
        f.check(spec)
        stats = indicator_moments(spec, f)
        mean = expectation_partial(spec, f)
        row = {"feature": f.to_dict(), "mean": mean, "variance": stats.variance}
        if moments and f.t == spec.t_count and f.t > 0:
            raw = raw_moments_full(spec, moments)
            row["raw_moments"] = raw
        out.append(row)
    return out


def _cmd_stats(args) -> int:
    spec = ProblemSpec(args.n, args.m)
    features = args.feature or report_features(spec.t_count)
    rows = _stats_rows(spec, features, args.moments)
    if args.format == "json":
        doc = {
            "tool": "ghgd",
            "version": __version__,
            "parameters": spec.to_dict(),
            "rows": [
                {
                    "feature": r["feature"],
                    "mean": {"value": to_decimal(r["mean"]), "exact": exact_str(r["mean"])},
                    "variance": {"value": to_decimal(r["variance"]), "exact": exact_str(r["variance"])},
                    **(
                        {"raw_moments": [{"value": to_decimal(x), "exact": exact_str(x)} for x in r["raw_moments"]]}
                        if "raw_moments" in r
                        else {}
                    ),
                }
                for r in rows
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        sep = "\t" if args.format == "tsv" else "  "
        lines = [sep.join(["feature", "mean", "variance"])]
        for r in rows:
            f = OverlapFeature(Kind(r["feature"]["kind"]), r["feature"]["t"])
            cells = [f.label(), to_decimal(r["mean"]), to_decimal(r["variance"])]
            if "raw_moments" in r:
                cells.append("raw=" + ",".join(to_decimal(x) for x in r["raw_moments"]))
            lines.append(sep.join(cells))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_dist(args) -> int:
    spec = ProblemSpec(args.n, args.m)
    dist = exact_distribution(spec, args.feature.check(spec), args.exact_budget)
    if args.format == "json":
        text = dist.to_json(indent=2) + "\n"
    else:
        sep = "\t" if args.format == "tsv" else "  "
        lines = [sep.join(["k", "count", "pmf"])]
        lines += [sep.join([str(k), str(c), to_decimal(dist.pmf(k), 12)]) for k, c in dist.counts.items()]
        lines.append(sep.join(["total", str(dist.normalizer), "1"]))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_sample(args) -> int:
    spec = ProblemSpec(args.n, args.m)
    report = sample_distribution(spec, args.feature.check(spec), args.draws, args.seed, args.n_jobs)
    if args.format == "json":
        text = report.to_json(indent=2) + "\n"
    else:
        sep = "\t" if args.format == "tsv" else "  "
        lines = [sep.join(["k", "occurrences", "frequency"])]
        lines += [sep.join([str(k), str(c), f"{c / report.draws:.6f}"]) for k, c in sorted(report.histogram.items())]
        lines.append(f"mean={report.empirical_mean:.6f} variance={report.empirical_variance:.6f} draws={report.draws} seed={report.seed}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {"report": _cmd_report, "stats": _cmd_stats, "dist": _cmd_dist, "sample": _cmd_sample}


def run(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="ghgd: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ghgd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"ghgd: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"ghgd: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
