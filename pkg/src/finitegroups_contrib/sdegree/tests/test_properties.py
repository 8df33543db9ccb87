#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""
Property checks over random subgroups of small groups.
"""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from finitegroups_contrib.sdegree.commutativity import sd_nary, sd_pair, sd_rel
from finitegroups_contrib.sdegree.group_expr import build_group
from finitegroups_contrib.sdegree.lattice_cache import lattice_of
from finitegroups_contrib.sdegree.subgroup_lattice import permutes, product_set

GROUPS = ["S3", "D8", "A4", "S4", "D12", "Z2xZ2xZ2", "ZM(5,4,2)", "S3xZ5"]

Lattices = st.sampled_from(GROUPS).map(lambda text: lattice_of(build_group(text)))
SmallLattices = st.sampled_from(["S3", "D8", "A4"]).map(
    lambda text: lattice_of(build_group(text))
)


def _index(data, lat):
    return data.draw(st.integers(min_value=0, max_value=len(lat) - 1))


@pytest.mark.unit
@settings(max_examples=60, deadline=None)
@given(Lattices, st.data())
def test_product_set_size(lat, data):
    i, j = _index(data, lat), _index(data, lat)
    h, k = lat.subgroups[i], lat.subgroups[j]
    assert lat.group.order % h.size == 0
    meet = lat.sizes[lat.meet(i, j)]
    assert bin(product_set(h, k)).count("1") * meet == h.size * k.size


@pytest.mark.unit
@settings(max_examples=60, deadline=None)
@given(Lattices, st.data())
def test_permutability_is_symmetric(lat, data):
    h = lat.subgroups[_index(data, lat)]
    k = lat.subgroups[_index(data, lat)]
    assert permutes(h, k) == permutes(k, h)
    assert permutes(h, k) == lat.group.is_subgroup_bits(product_set(h, k))


@pytest.mark.unit
@settings(max_examples=60, deadline=None)
@given(Lattices, st.data())
def test_degrees_are_exact_probabilities(lat, data):
    i, j = _index(data, lat), _index(data, lat)
    h, k = lat.subgroups[i], lat.subgroups[j]
    rel = sd_rel(h)
    assert 0 < rel.value <= 1
    assert (rel.value * lat.lattice_size(i) * len(lat)).denominator == 1
    assert sd_pair(h, k).value == sd_pair(k, h).value


@pytest.mark.unit
@settings(max_examples=60, deadline=None)
@given(Lattices, st.data())
def test_conjugates_share_a_degree(lat, data):
    i = _index(data, lat)
    x = data.draw(st.integers(min_value=0, max_value=lat.group.order - 1))
    j = lat.conjugate(i, x)
    assert lat.class_of[i] == lat.class_of[j]
    assert sd_rel(lat.subgroups[j]).value == sd_rel(lat.subgroups[i]).value


@pytest.mark.unit
@settings(max_examples=20, deadline=None)
@given(SmallLattices, st.data())
def test_nary_ignores_argument_order(lat, data):
    triple = [lat.subgroups[_index(data, lat)] for _ in range(3)]
    values = {sd_nary(list(p)).value for p in itertools.permutations(triple)}
    assert len(values) == 1
