#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
import itertools

import pytest

from finitegroups_contrib.sdegree.config import get_config
from finitegroups_contrib.sdegree.exceptions import (
    GroupConstructionError,
    OrderCapExceeded,
)
from finitegroups_contrib.sdegree.group_core import make_cyclic, make_dihedral
from finitegroups_contrib.sdegree.group_expr import (
    build_group,
    expected_order,
    parse_group_expr,
    select_subgroup,
)
from finitegroups_contrib.sdegree.lattice_cache import lattice_of
from finitegroups_contrib.sdegree.subgroup_lattice import (
    SubgroupSet,
    commuting_set,
    cyclic_subgroups,
    enumerate_subgroups,
    generators,
    intersections_of_maximals,
    is_modular_element,
    is_nilpotent,
    is_permutable,
    is_subnormal,
    maximal_subgroups,
    normal_closure,
    normal_subgroups,
    oracle_enumerate,
    permutes,
    product_set,
    strict_overgroups,
    subgroup_name,
    sylow_subgroups,
)
from finitegroups_contrib.sdegree.verification import DEFAULT_CORPUS

ORACLE_CORPUS = [
    pytest.param(text, marks=pytest.mark.slow) if order >= 120 else text
    for text, order in (
        (text, expected_order(parse_group_expr(text))) for text in DEFAULT_CORPUS
    )
    if order <= get_config().oracle_max_order
]


@pytest.mark.unit
@pytest.mark.parametrize(
    "text, size",
    [
        ("Z1", 1),
        ("Z12", 6),
        ("S3", 6),
        ("D8", 10),
        ("A4", 10),
        ("D12", 16),
        ("Z2xZ2", 5),
        ("Z2xZ2xZ2", 16),
        ("S4", 30),
    ],
)
def test_lattice_sizes(text, size):
    lat = enumerate_subgroups(build_group(text))
    assert len(lat) == size
    oracle = oracle_enumerate(lat.group)
    assert [s.members for s in oracle.subgroups] == [s.members for s in lat.subgroups]


@pytest.mark.component
@pytest.mark.parametrize("text", ORACLE_CORPUS)
def test_enumeration_matches_oracle_on_corpus(text):
    group = build_group(text)
    fast = [s.members for s in enumerate_subgroups(group).subgroups]
    assert fast == [s.members for s in oracle_enumerate(group).subgroups]


@pytest.mark.component
def test_a5_lattice():
    lat = lattice_of(build_group("A5"))
    assert len(lat) == 59
    assert normal_subgroups(lat) == [lat.trivial, lat.top]


@pytest.mark.slow
def test_s5_lattice():
    assert len(lattice_of(build_group("S5"))) == 156


@pytest.mark.unit
def test_oracle_cap():
    with pytest.raises(OrderCapExceeded):
        oracle_enumerate(build_group("S5"), max_order=100)


class TestS4Lattice:
    @pytest.fixture(scope="class")
    def lat(self):
        return lattice_of(build_group("S4"))

    @pytest.mark.unit
    def test_canonical_order(self, lat):
        sizes = lat.sizes
        assert sizes == sorted(sizes)
        assert lat.trivial == 0 and sizes[0] == 1
        assert lat.top == len(lat) - 1 and sizes[-1] == 24

    @pytest.mark.unit
    def test_join_and_meet_agree_with_closure(self, lat):
        g = lat.group
        for i, j in itertools.combinations(range(len(lat)), 2):
            a, b = lat.subgroups[i].members, lat.subgroups[j].members
            assert lat.subgroups[lat.meet(i, j)].members == a & b
            join = lat.subgroups[lat.join(i, j)].members
            assert join == g.closure([], base_bits=a | b)

    @pytest.mark.unit
    def test_classes(self, lat):
        assert len(lat.conjugacy_classes) == 11
        assert len(normal_subgroups(lat)) == 4
        assert len(maximal_subgroups(lat)) == 8
        sizes = sorted(lat.sizes[m] for m in maximal_subgroups(lat))
        assert sizes == [6] * 4 + [8] * 3 + [12]

    @pytest.mark.unit
    def test_cyclic_and_sylow(self, lat):
        assert len(cyclic_subgroups(lat)) == 17
        assert len(sylow_subgroups(lat, 2)) == 3
        assert len(sylow_subgroups(lat, 3)) == 4
        assert not is_nilpotent(lat)

    @pytest.mark.unit
    def test_generators(self, lat):
        g = lat.group
        for i in range(len(lat)):
            assert g.closure(generators(lat, i)) == lat.subgroups[i].members
        assert subgroup_name(lat, lat.trivial) == "1"
        assert subgroup_name(lat, select_subgroup(lat, "<(1 2)>")) == "<(1 2)>"

    @pytest.mark.unit
    def test_permutability_rows(self, lat):
        rows = lat.permutability()
        for i, j in itertools.combinations(range(len(lat)), 2):
            h, k = lat.subgroups[i], lat.subgroups[j]
            assert bool((rows[i] >> j) & 1) == permutes(h, k)
            assert permutes(h, k) == permutes(k, h)
            assert (j in commuting_set(lat, i)) == (i in commuting_set(lat, j))

    @pytest.mark.unit
    def test_product_set_size(self, lat):
        h = select_subgroup(lat, "<(1 2)>")
        k = select_subgroup(lat, "<(2 3)>")
        assert bin(product_set(h, k)).count("1") == 4
        assert not permutes(h, k)

    @pytest.mark.unit
    def test_overgroups(self, lat):
        assert strict_overgroups(lat, lat.top) == frozenset()
        assert len(strict_overgroups(lat, lat.trivial)) == len(lat) - 1

    @pytest.mark.unit
    def test_klein_group_is_modular_and_subnormal(self, lat):
        v4 = select_subgroup(lat, "<(1 2)(3 4), (1 3)(2 4)>")
        i = lat.index_of(v4)
        assert lat.is_normal(i)
        assert is_subnormal(lat, i)
        assert is_permutable(lat, i)
        assert is_modular_element(lat, i)

    @pytest.mark.unit
    def test_double_transposition_is_subnormal_not_modular(self, lat):
        h = select_subgroup(lat, "<(1 2)(3 4)>")
        i = lat.index_of(h)
        v4 = lat.index_of(select_subgroup(lat, "<(1 2)(3 4), (1 3)(2 4)>"))
        assert normal_closure(lat, i) == v4
        assert is_subnormal(lat, i)
        assert not is_permutable(lat, i)
        assert not is_modular_element(lat, i)

    @pytest.mark.unit
    def test_transposition_is_not_subnormal(self, lat):
        i = lat.index_of(select_subgroup(lat, "<(1 2)>"))
        assert normal_closure(lat, i) == lat.top
        assert not is_subnormal(lat, i)

    @pytest.mark.unit
    def test_family_cap(self, lat):
        with pytest.raises(OrderCapExceeded):
            intersections_of_maximals(lat, max_families=4)
        families = intersections_of_maximals(lat)
        assert len(families) == 2**8 - 1


class TestAbelian:
    @pytest.mark.unit
    def test_everything_permutes(self):
        lat = lattice_of(make_cyclic(12))
        assert all(is_permutable(lat, i) for i in range(len(lat)))
        assert all(is_modular_element(lat, i) for i in range(len(lat)))
        assert is_nilpotent(lat)

    @pytest.mark.unit
    def test_subgroup_set_checks(self):
        d8 = make_dihedral(8)
        with pytest.raises(GroupConstructionError):
            SubgroupSet.from_bits(d8, 0b110)
        lat = lattice_of(d8)
        other = lattice_of(make_dihedral(8))
        with pytest.raises(GroupConstructionError):
            lat.index_of(other.subgroups[1])
        with pytest.raises(GroupConstructionError):
            permutes(lat.subgroups[1], other.subgroups[1])
