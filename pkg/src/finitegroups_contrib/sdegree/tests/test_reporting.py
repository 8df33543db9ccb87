#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
import csv
import io
import json
from fractions import Fraction

import pytest

from finitegroups_contrib.sdegree.commutativity import sd
from finitegroups_contrib.sdegree.exceptions import ConfigurationError
from finitegroups_contrib.sdegree.group_expr import build_group
from finitegroups_contrib.sdegree.lattice_cache import lattice_of
from finitegroups_contrib.sdegree.maximal_formulas import s4_comparison_report
from finitegroups_contrib.sdegree.reporting import (
    REPORT_SCHEMA,
    Report,
    format_fraction,
    lattice_report,
    render,
    s4_comparison_table,
    sd_report,
    zm_table,
)
from finitegroups_contrib.sdegree.zm_groups import (
    validate_zm,
    verify_bijection,
    zm_sd_table,
)


def _floats(node):
    if isinstance(node, float):
        yield node
    elif isinstance(node, dict):
        for v in node.values():
            yield from _floats(v)
    elif isinstance(node, list):
        for v in node:
            yield from _floats(v)


@pytest.fixture(scope="module")
def s3_report():
    lat = lattice_of(build_group("S3"))
    return sd_report("sd", sd(lat), lat)


@pytest.mark.unit
def test_format_fraction():
    assert format_fraction(Fraction(5, 6)) == "5/6"
    assert format_fraction(1) == "1/1"
    assert format_fraction(Fraction(4, 2)) == "2/1"


@pytest.mark.unit
def test_text(s3_report):
    text = render(s3_report, "text")
    assert text.startswith("sd(S3)\n")
    assert "value: 5/6 (~0.8333333333)" in text
    assert "pair_count: 30" in text


@pytest.mark.unit
def test_decimal_column():
    rows = [["a", Fraction(1, 3)], ["b", Fraction(1)]]
    report = Report("x", "t", ["name", "value"], rows)
    lines = render(report, "text").splitlines()
    assert lines[2].split() == ["name", "value", "~"]
    assert lines[4].split() == ["a", "1/3", "0.3333333333"]


@pytest.mark.unit
def test_json_has_no_floats(s3_report):
    doc = json.loads(render(s3_report, "json"))
    assert doc["schema"] == REPORT_SCHEMA
    assert doc["summary"]["value"] == "5/6"
    assert doc["ok"] is True
    assert not list(_floats(doc))


@pytest.mark.unit
def test_csv():
    report = lattice_report(lattice_of(build_group("S3")))
    rows = list(csv.reader(io.StringIO(render(report, "csv"))))
    assert rows[0] == report.columns
    assert rows[0][-1] == "sd(H,G)"
    assert len(rows) == 7
    assert rows[-1][-1] == "5/6"


@pytest.mark.unit
def test_zm_csv_has_one_column_per_parameter():
    p = validate_zm(3, 2, 2)
    report = zm_table(zm_sd_table(p), [verify_bijection(p)])
    rows = list(csv.reader(io.StringIO(render(report, "csv"))))
    assert rows[0][:6] == ["m", "n", "r", "m1", "n1", "s"]
    assert len(rows) == 7
    assert {tuple(r[:3]) for r in rows[1:]} == {("3", "2", "2")}
    assert all(r[3:6] == [str(int(v)) for v in r[3:6]] for r in rows[1:])


@pytest.mark.unit
def test_unknown_format(s3_report):
    with pytest.raises(ConfigurationError):
        render(s3_report, "xml")


@pytest.mark.unit
def test_s4_comparison_notes_the_printed_inconsistency():
    report = s4_comparison_table(s4_comparison_report())
    assert report.ok
    assert report.summary["printed_consistent"] is False
    assert any(d.startswith("printed values are inconsistent") for d in report.details)
    doc = json.loads(render(report, "json"))
    assert doc["summary"]["printed_sd"] == "1841/4500"
