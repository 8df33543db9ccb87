#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Report tables and their text, JSON and CSV renderings.

Every command builds one ``Report``: a title, a table (columns and rows),
a flat summary mapping and an ``ok`` flag that drives the exit status.
Fractions are always written exactly as ``p/q``. The text rendering adds
a display-only decimal column (10 significant digits) after each fraction
column; JSON and CSV never contain floats, so identical inputs give
byte-identical machine output. The JSON layout is documented in
``report_schema.rst``.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from finitegroups_contrib.sdegree.commutativity import pair_degree
from finitegroups_contrib.sdegree.exceptions import ConfigurationError
from finitegroups_contrib.sdegree.subgroup_lattice import subgroup_name

REPORT_SCHEMA = "finitegroups-sdegree/report"
REPORT_SCHEMA_VERSION = 1
FORMATS = ("text", "json", "csv")


@dataclass
class Report:
    command: str
    title: str
    columns: list
    rows: list
    summary: dict = field(default_factory=dict)
    details: list = field(default_factory=list)
    ok: bool = True


def format_fraction(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value):
    return f"{float(value):.10g}"


def _cell(value):
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return format_fraction(value)
    if value is None:
        return "-"
    return str(value)


def _json_value(value):
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    return value


def _fraction_columns(report):
    return [
        k
        for k in range(len(report.columns))
        if report.rows and all(isinstance(r[k], Fraction) for r in report.rows)
    ]


def render_text(report):
    decimal_cols = set(_fraction_columns(report))
    header = []
    for k, name in enumerate(report.columns):
        header.append(name)
        if k in decimal_cols:
            header.append("~")
    body = []
    for row in report.rows:
        cells = []
        for k, value in enumerate(row):
            cells.append(_cell(value))
            if k in decimal_cols:
                cells.append(format_decimal(value))
        body.append(cells)
    widths = [len(h) for h in header]
    for cells in body:
        widths = [max(w, len(c)) for w, c in zip(widths, cells)]
    lines = [report.title, ""]
    if report.columns:
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for cells in body:
            lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())
        lines.append("")
    for key, value in report.summary.items():
        shown = _cell(value)
        if isinstance(value, Fraction):
            shown += f" (~{format_decimal(value)})"
        lines.append(f"{key}: {shown}")
    for note in report.details:
        lines.append(note)
    return "\n".join(lines).rstrip() + "\n"


def render_json(report):
    doc = {
        "schema": REPORT_SCHEMA,
        "version": REPORT_SCHEMA_VERSION,
        "command": report.command,
        "title": report.title,
        "ok": report.ok,
        "columns": list(report.columns),
        "rows": [_json_value(list(r)) for r in report.rows],
        "summary": _json_value(report.summary),
        "details": list(report.details),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_csv(report):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_cell(v) for v in row])
    return out.getvalue()


def render(report, fmt="text"):
    if fmt == "text":
        return render_text(report)
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    raise ConfigurationError(
        f"unknown report format '{fmt}'; choose from {', '.join(FORMATS)}"
    )


# ---------------------------------------------------------------------------
# Builders


def sd_report(command, rep, lat=None):
    """Report for an ``SdReport``; the breakdown becomes the table when present."""
    columns, rows = [], []
    if rep.breakdown and lat is not None:
        columns = ["index", "subgroup", "order", "commuting"]
        rows = [
            [i, subgroup_name(lat, i), lat.sizes[i], count]
            for i, count in rep.breakdown
        ]
    summary = {
        "value": rep.value,
        "pair_count": rep.pair_count,
        "lattice_sizes": "x".join(str(s) for s in rep.lattice_sizes),
    }
    return Report(command, rep.label, columns, rows, summary)


def value_report(command, label, value):
    return Report(command, label, [], [], {"value": value})


def lattice_report(lat):
    maximal = set(lat.maximal_indices)
    rows = [
        [
            i,
            subgroup_name(lat, i),
            lat.sizes[i],
            lat.lattice_size(i),
            lat.is_normal(i),
            i in maximal,
            lat.class_of[i],
            pair_degree(lat, i, lat.top),
        ]
        for i in range(len(lat))
    ]
    summary = {
        "order": lat.group.order,
        "subgroups": len(lat),
        "conjugacy_classes": len(lat.conjugacy_classes),
        "normal": len(lat.normal_indices),
        "maximal": len(maximal),
    }
    columns = [
        "index",
        "subgroup",
        "order",
        "|L(H)|",
        "normal",
        "maximal",
        "class",
        "sd(H,G)",
    ]
    title = f"Subgroup lattice of {lat.group.label}"
    return Report("lattice", title, columns, rows, summary)


def maximal_report(lat, coefficients, intersections, sd_direct, sd_maximal, shortcuts):
    """Intersections of maximal subgroups with their signed coefficients.

    ``shortcuts`` maps form names to values, or holds the violation
    message under ``"hypothesis"``.
    """
    rows = [
        [
            x,
            subgroup_name(lat, x),
            lat.sizes[x],
            intersections.get(x, 0),
            coefficients[x],
            pair_degree(lat, x, lat.top),
        ]
        for x in range(len(lat))
        if coefficients[x]
    ]
    summary = {
        "sd": sd_direct,
        "sd_via_maximal": sd_maximal,
        "identity_holds": sd_direct == sd_maximal,
        "maximal_subgroups": len(lat.maximal_indices),
    }
    details = []
    for key, value in shortcuts.items():
        if key == "hypothesis":
            details.append(f"shortcut forms not available: {value}")
        else:
            summary[f"sd_shortcut_{key}"] = value
    columns = ["index", "subgroup", "order", "maximal_over", "coefficient", "sd(X,G)"]
    return Report(
        "maximal",
        f"sd({lat.group.label}) through maximal subgroups",
        columns,
        rows,
        summary,
        details,
        ok=sd_direct == sd_maximal,
    )


def s4_comparison_table(report):
    """Computed against printed values, one row per isomorphism type."""
    rows = [["1 (constant)", report.constant, report.printed_constant] + [None] * 4]
    for t in report.types:
        rows.append(
            [
                t.type,
                t.coefficient,
                t.printed_coefficient,
                ", ".join(format_fraction(v) for v in t.values),
                t.printed_value,
                t.value_match,
                t.printed_value_integral,
            ]
        )
    summary = {
        "lattice_size": report.lattice_size,
        "sd_direct": report.sd_direct,
        "sd_via_maximal": report.sd_maximal,
        "identity_holds": report.identity_holds,
        "coefficient_sum": report.coefficient_sum,
    }
    details = []
    if report.printed:
        summary.update(
            {
                "printed_sd": report.printed_sd,
                "printed_sd_integral": report.printed_sd_integral,
                "printed_coefficient_sum": report.printed_coefficient_sum,
                "printed_formula_value": report.printed_formula_value,
                "printed_consistent": report.printed_consistent,
            }
        )
        if not report.printed_consistent:
            details.append(
                "printed values are inconsistent: "
                f"coefficients sum to {report.printed_coefficient_sum} instead of "
                f"{report.lattice_size}; printed sd times {report.lattice_size}^2 "
                f"is {'' if report.printed_sd_integral else 'not '}an integer"
            )
    for c in report.classes:
        details.append(
            f"class {c.class_id}: {c.type} x{c.members}"
            f"{' normal' if c.normal else ''}, c = {c.coefficient}, "
            f"weight {c.weight}, sd(X,G) = {format_fraction(c.value)}"
        )
    columns = [
        "type",
        "weight",
        "printed_weight",
        "sd(X,G)",
        "printed_sd(X,G)",
        "value_match",
        "printed_integral",
    ]
    return Report(
        "s4-comparison",
        f"sd({report.label}) through maximal subgroups, computed and printed",
        columns,
        rows,
        summary,
        details,
        ok=report.identity_holds,
    )


def verify_table(report):
    rows = [[r.group, r.suite, r.status, r.checked, r.witness] for r in report.results]
    counts = report.counts()
    summary = {
        "groups": len(report.corpus),
        "suites": ",".join(report.suites),
        **counts,
    }
    return Report(
        "verify",
        "Verification",
        ["group", "suite", "status", "checked", "witness"],
        rows,
        summary,
        ok=report.ok,
    )


def zm_table(rows, bijections):
    table = [
        [
            r.params.m,
            r.params.n,
            r.params.r,
            r.triple.m1,
            r.triple.n1,
            r.triple.s,
            r.order,
            r.normal,
            r.gcd_s_m1,
            r.gcd_m1_n1,
            r.value,
        ]
        for r in rows
    ]
    failed = [b for b in bijections if not b.holds]
    summary = {"groups": len(bijections), "bijection_failures": len(failed)}
    details = [
        f"{b.params}: {b.triples} triples for {b.subgroups} subgroups" for b in failed
    ]
    columns = [
        "m",
        "n",
        "r",
        "m1",
        "n1",
        "s",
        "order",
        "normal",
        "gcd(s,m1)",
        "gcd(m1,n1)",
        "sd(H,G)",
    ]
    return Report(
        "zm-sweep",
        "ZM-group subgroups",
        columns,
        table,
        summary,
        details,
        ok=not failed,
    )


def profile_table(lat, profile, props):
    rows = [
        [
            cid,
            subgroup_name(lat, members[0]),
            lat.sizes[members[0]],
            len(members),
            profile[cid],
        ]
        for cid, members in enumerate(lat.conjugacy_classes)
    ]
    summary = {
        "injective": props.injective,
        "non_increasing": props.non_increasing,
        "non_decreasing": props.non_decreasing,
        "minimum": props.minimum,
        "minimum_classes": ",".join(str(c) for c in props.argmin),
        "maximum": props.maximum,
    }
    details = [f"classes {a} and {b} share a degree" for a, b in props.collisions]
    return Report(
        "profile",
        f"sd(H, {lat.group.label}) per conjugacy class",
        ["class", "representative", "order", "members", "sd(H,G)"],
        rows,
        summary,
        details,
    )


def reflection_table(rows):
    table = [
        [r.order, r.sd_y, r.sd_xy, r.conjugate, r.equal, r.nine_tenths] for r in rows
    ]
    return Report(
        "dihedral-sweep",
        "Reflections <y> and <xy> in dihedral groups",
        ["order", "sd(<y>,D)", "sd(<xy>,D)", "conjugate", "equal", "nine_tenths"],
        table,
    )


def an_sn_table(rows):
    return Report(
        "an-sn", "sd(A_n, S_n)", ["n", "sd(A_n,S_n)"], [[n, v] for n, v in rows]
    )


def matrix_table(lat, matrix):
    names = [subgroup_name(lat, i) for i in matrix.indices]
    rows = [[name, *values] for name, values in zip(names, matrix.values)]
    return Report(
        "matrix",
        f"sd(H, K) for {matrix.label}",
        ["H \\ K", *names],
        rows,
        {"size": len(names), "symmetric": matrix.is_symmetric()},
    )


def bounds_table(report):
    rows = [
        [
            c.name,
            c.normal_subgroup,
            c.bound,
            c.holds,
            c.note,
        ]
        for c in report.checks
    ]
    return Report(
        "bounds",
        f"Lower bounds for {report.label}",
        ["bound", "N", "value", "holds", "note"],
        rows,
        {"sd": report.value, "all_hold": report.all_hold},
        ok=report.all_hold,
    )


def cache_table(action, entries, ok=True):
    """``entries`` are (label, path, state) triples."""
    return Report(
        "cache",
        f"Lattice cache {action}",
        ["group", "path", "state"],
        [[label, str(path), state] for label, path, state in entries],
        ok=ok,
    )
