"""Rendering of inference reports as a text table, TSV or JSON."""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .inference import InferenceConfig, InferenceRow, ZminRule
from .kernel import exact_str, to_decimal
from .problem import ProblemSpec

HEADERS = (
    "feature",
    "mean",
    "variance",
    "NOESS",
    "p(|X-mu|>=|NOESS-mu|)",
    "p(X>=1)",
    "credibility interval",
    "SHN (SHR)",
)

_ZMIN_NOTE = {
    ZminRule.FLOOR_OF_INTERVAL: (
        "z_min = floor(mu + sigma/sqrt(alpha)); the strict rule (smallest Z with "
        "sigma^2/(Z-mu)^2 < alpha) can be one larger"
    ),
    ZminRule.STRICT_CEIL: "z_min = smallest Z > mu with sigma^2/(Z-mu)^2 < alpha",
}


def _clamp(p: float) -> float:
    return min(1.0, max(0.0, p))


def _fmt_bound(p: float | None, places: int = 6) -> str:
    if p is None:
        return "inapplicable"
    return f"< {to_decimal(Fraction(_clamp(p)), places)}"


def _fmt_hit(row: InferenceRow) -> str:
    if row.shn is None:
        return "n/a"
    pct = to_decimal(row.shr * 100, 2).rstrip("0").rstrip(".")
    return f"{row.shn} ({pct}%)"


def _fmt_interval(row: InferenceRow, places: int) -> str:
    lo, hi = row.interval
    lo_s = "0" if lo == 0 else to_decimal(Fraction(lo), places)
    return f"[{lo_s}, {to_decimal(Fraction(hi), places)}]"


def row_cells(row: InferenceRow, places: int = 6, interval_places: int = 2) -> list[str]:
    p_hit = _fmt_bound(row.p_hit, places)
    if row.direction == "below":
        p_hit += " (below mean)"
    return [
        row.feature.label(),
        to_decimal(row.mean, places),
        to_decimal(row.variance, places),
        str(row.noess),
        p_hit,
        _fmt_bound(row.p_all_hit, places),
        _fmt_interval(row, interval_places),
        _fmt_hit(row),
    ]


def render_text(spec: ProblemSpec, rows, config: InferenceConfig, extra_columns=None) -> str:
    headers = list(HEADERS)
    table = [row_cells(r) for r in rows]
    if extra_columns:
        for name, values in extra_columns.items():
            headers.append(name)
            for cells, v in zip(table, values):
                cells.append(v)
    widths = [max(len(h), *(len(c[i]) for c in table)) for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    out = [
        f"Overlap analysis for N={spec.n}, M={{{', '.join(map(str, spec.sizes))}}}",
        "",
        line,
        "-" * len(line),
    ]
    out += ["  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip() for cells in table]
    out += [
        "",
        f"alpha = {config.alpha}; interval = mu -/+ sigma/sqrt(alpha); unimodal bound uses s = {config.mode_gap_s}",
        _ZMIN_NOTE[config.z_min_rule],
    ]
    return "\n".join(out) + "\n"


def render_tsv(spec: ProblemSpec, rows, config: InferenceConfig, extra_columns=None) -> str:
    headers = list(HEADERS)
    table = [row_cells(r) for r in rows]
    if extra_columns:
        for name, values in extra_columns.items():
            headers.append(name)
            for cells, v in zip(table, values):
                cells.append(v)
    return "\n".join("\t".join(r) for r in [headers, *table]) + "\n"


def _num(x) -> dict:
    return {"value": to_decimal(Fraction(x), 6), "exact": exact_str(Fraction(x))}


def row_to_dict(row: InferenceRow) -> dict:
    lo, hi = row.interval
    return {
        "feature": row.feature.to_dict(),
        "mean": _num(row.mean),
        "variance": _num(row.variance),
        "noess": row.noess,
        "p_hit": None if row.p_hit is None else {
            "raw": row.p_hit,
            "clamped": _clamp(row.p_hit),
            "form": row.p_hit_form,
            "direction": row.direction,
        },
        "p_all_hit": None if row.p_all_hit is None else {
            "raw": row.p_all_hit,
            "clamped": _clamp(row.p_all_hit),
            "form": row.p_all_hit_form,
        },
        "interval": [round(lo, 6), round(hi, 6)],
        "z_min": row.z_min,
        "shn": row.shn,
        "shr": None if row.shr is None else _num(row.shr),
        **({"notes": row.notes} if row.notes else {}),
    }


def report_to_dict(spec: ProblemSpec, rows, config: InferenceConfig, observed=None, extra=None) -> dict:
    doc = {
        "tool": "ghgd",
        "version": __version__,
        "parameters": {
            "n": spec.n,
            "m": list(spec.sizes),
            "alpha": config.alpha,
            "mode_gap_s": config.mode_gap_s,
            "z_min_rule": config.z_min_rule.name,
        },
        "rows": [row_to_dict(r) for r in rows],
        "notes": [_ZMIN_NOTE[config.z_min_rule]],
    }
    if observed is not None:
        doc["observed_lo_histogram"] = list(observed.counts)
    if extra:
        doc.update(extra)
    return doc


def render_json(spec, rows, config, observed=None, extra=None) -> str:
    return json.dumps(report_to_dict(spec, rows, config, observed, extra), indent=2) + "\n"
