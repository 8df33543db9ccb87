#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
from fractions import Fraction

import pytest

from finitegroups_contrib.sdegree.commutativity import sd
from finitegroups_contrib.sdegree.exceptions import (
    GroupConstructionError,
    HypothesisViolation,
)
from finitegroups_contrib.sdegree.group_expr import build_group
from finitegroups_contrib.sdegree.lattice_cache import lattice_of
from finitegroups_contrib.sdegree.maximal_formulas import (
    PRINTED_SD,
    family_coefficients,
    hypothesis_holds,
    hypothesis_violations,
    isomorphism_type,
    maximal_intersections,
    s4_comparison_report,
    sd_via_maximal,
    sd_via_maximal_shortcut,
)


@pytest.mark.unit
@pytest.mark.parametrize(
    "text", ["Z1", "Z7", "Z12", "S3", "D8", "D12", "A4", "S4", "Z2xZ2xZ2", "ZM(3,2,2)"]
)
def test_maximal_identity(text):
    lat = lattice_of(build_group(text))
    assert sd_via_maximal(lat) == sd(lat).value
    assert family_coefficients(lat, method="families") == family_coefficients(
        lat, method="recursion"
    )


@pytest.mark.unit
def test_unknown_method():
    with pytest.raises(GroupConstructionError):
        family_coefficients(lattice_of(build_group("S3")), method="mobius")


@pytest.mark.unit
def test_coefficients_of_maximal_subgroups():
    lat = lattice_of(build_group("S4"))
    coeff = family_coefficients(lat)
    for m in lat.maximal_indices:
        assert coeff[m] == 1
    assert coeff[lat.top] == 0
    intersections = maximal_intersections(lat)
    assert all(intersections[m] == 1 for m in lat.maximal_indices)
    # nonzero coefficients only sit on intersections of maximal subgroups
    assert {x for x, c in enumerate(coeff) if c} <= set(intersections)


@pytest.mark.slow
def test_s5_uses_recursion():
    lat = lattice_of(build_group("S5"))
    assert len(lat.maximal_indices) == 22
    assert sd_via_maximal(lat) == sd(lat).value


class TestShortcuts:
    @pytest.mark.unit
    def test_a4(self):
        lat = lattice_of(build_group("A4"))
        assert hypothesis_holds(lat)
        assert sd_via_maximal_shortcut(lat, form="relative") == Fraction(16, 25)
        assert sd_via_maximal_shortcut(lat, form="pairwise") == Fraction(16, 25)

    @pytest.mark.unit
    @pytest.mark.parametrize("text", ["Z12", "Z2xZ2", "S3"])
    def test_both_forms_agree_with_direct(self, text):
        lat = lattice_of(build_group(text))
        assert hypothesis_holds(lat)
        value = sd(lat).value
        assert sd_via_maximal_shortcut(lat, form="relative") == value
        assert sd_via_maximal_shortcut(lat, form="pairwise") == value

    @pytest.mark.unit
    def test_s4_violates_hypothesis(self):
        lat = lattice_of(build_group("S4"))
        witnesses = hypothesis_violations(lat)
        assert witnesses
        with pytest.raises(HypothesisViolation) as err:
            sd_via_maximal_shortcut(lat)
        assert err.value.witnesses == witnesses

    @pytest.mark.unit
    def test_bad_form(self):
        with pytest.raises(GroupConstructionError):
            sd_via_maximal_shortcut(build_group("A4"), form="triple")


class TestS4Comparison:
    @pytest.fixture(scope="class")
    def report(self):
        return s4_comparison_report()

    @pytest.mark.unit
    def test_identity(self, report):
        assert report.identity_holds
        assert report.sd_direct == sd(build_group("S4")).value
        assert report.lattice_size == 30

    @pytest.mark.unit
    def test_weights(self, report):
        weights = {t.type: t.coefficient for t in report.types}
        assert report.constant == 13
        assert weights["Z2"] == -24
        assert weights["Z3"] == -8
        assert weights["Z2xZ2"] == -15
        assert weights["S3"] == 24
        assert weights["D8"] == 30
        assert weights["A4"] == 10
        assert report.coefficient_sum == 30

    @pytest.mark.unit
    def test_printed_values_are_flagged(self, report):
        assert report.printed
        assert report.printed_coefficient_sum == 27
        assert report.printed_sd == PRINTED_SD
        assert report.printed_sd_integral is False
        assert report.printed_formula_value == Fraction(1841, 4500)
        assert report.printed_consistent is False
        types = {t.type: t for t in report.types}
        assert types["Z2xZ2"].coefficient_match is False
        assert types["A4"].coefficient_match is True

    @pytest.mark.unit
    def test_other_group(self):
        report = s4_comparison_report(build_group("D8"))
        assert not report.printed
        assert report.printed_consistent is None
        assert report.identity_holds
        assert all(t.printed_coefficient is None for t in report.types)

    @pytest.mark.unit
    def test_isomorphism_type(self):
        assert isomorphism_type(build_group("Z2xZ2")) == "Z2xZ2"
        assert isomorphism_type(build_group("D6")) == "S3"
        assert isomorphism_type(build_group("Z5")) == "order 5"
