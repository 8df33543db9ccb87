#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
import json

import pytest

from finitegroups_contrib.sdegree import lattice_cache
from finitegroups_contrib.sdegree.config import configure
from finitegroups_contrib.sdegree.group_core import make_symmetric
from finitegroups_contrib.sdegree.group_expr import build_group
from finitegroups_contrib.sdegree.lattice_cache import (
    SCHEMA,
    MEMO_SIZE,
    CacheValidationError,
    cache_path,
    clear_cache,
    get_lattice,
    lattice_from_record,
    lattice_of,
    lattice_to_record,
    read_lattice,
    write_lattice,
)
from finitegroups_contrib.sdegree.subgroup_lattice import (
    Lattice,
    enumerate_subgroups,
    missing_join,
)


@pytest.fixture
def s4():
    return make_symmetric(4)


@pytest.fixture
def counted(monkeypatch):
    calls = []

    def enumerate_and_count(g):
        calls.append(g.label)
        return enumerate_subgroups(g)

    monkeypatch.setattr(lattice_cache, "enumerate_subgroups", enumerate_and_count)
    return calls


@pytest.mark.unit
def test_write_then_read(tmp_path, s4):
    lat = enumerate_subgroups(s4)
    path = write_lattice(tmp_path, lat)
    assert path == cache_path(tmp_path, s4)
    assert path.name == f"{s4.content_hash()}.json"
    back = read_lattice(tmp_path, s4)
    assert [s.members for s in back.subgroups] == [s.members for s in lat.subgroups]
    record = json.loads(path.read_text())
    assert record["schema"] == SCHEMA
    assert len(record["subgroups"]) == 30


@pytest.mark.unit
def test_missing_file(tmp_path, s4):
    assert read_lattice(tmp_path, s4) is None


@pytest.mark.unit
def test_tampered_bitset_is_rejected_and_recomputed(tmp_path, s4, counted):
    path = write_lattice(tmp_path, enumerate_subgroups(s4))
    record = json.loads(path.read_text())
    # index 1 is an order-2 subgroup; 0x6 lacks the identity
    record["subgroups"][1]["bits"] = "6"
    path.write_text(json.dumps(record))
    assert read_lattice(tmp_path, s4) is None
    lat = get_lattice(s4, cache_dir=tmp_path)
    assert len(lat) == 30
    assert counted == ["S4"]
    assert read_lattice(tmp_path, s4) is not None


@pytest.mark.unit
def test_garbage_file_is_rejected(tmp_path, s4):
    cache_path(tmp_path, s4).write_text("{not json")
    assert read_lattice(tmp_path, s4) is None


@pytest.mark.unit
def test_record_validation(s4):
    lat = enumerate_subgroups(s4)
    record = lattice_to_record(lat)
    assert len(lattice_from_record(s4, record)) == 30

    wrong_version = dict(record, version=99)
    with pytest.raises(CacheValidationError):
        lattice_from_record(s4, wrong_version)

    flipped = json.loads(json.dumps(record))
    flipped["subgroups"][1]["normal"] = not flipped["subgroups"][1]["normal"]
    with pytest.raises(CacheValidationError):
        lattice_from_record(s4, flipped)

    dropped = json.loads(json.dumps(record))
    del dropped["subgroups"][5]
    with pytest.raises(CacheValidationError):
        lattice_from_record(s4, dropped)


@pytest.mark.unit
def test_cache_hit_skips_enumeration(tmp_path, counted):
    get_lattice(make_symmetric(4), cache_dir=tmp_path)
    get_lattice(make_symmetric(4), cache_dir=tmp_path)
    assert counted == ["S4"]


@pytest.mark.unit
def test_configured_cache_dir(tmp_path, counted):
    configure(cache_dir=tmp_path)
    get_lattice(make_symmetric(3))
    assert len(list(tmp_path.glob("*.json"))) == 1
    get_lattice(make_symmetric(3))
    assert counted == ["S3"]


@pytest.mark.unit
def test_oracle_cross_check(s4):
    assert len(get_lattice(s4, oracle=True)) == 30


@pytest.mark.unit
def test_clear(tmp_path, s4):
    write_lattice(tmp_path, enumerate_subgroups(s4))
    write_lattice(tmp_path, enumerate_subgroups(make_symmetric(3)))
    assert clear_cache(tmp_path) == 2
    assert clear_cache(tmp_path) == 0


@pytest.mark.unit
@pytest.mark.parametrize(
    "content",
    ["[]", "null", '"text"', '{"subgroups": 3}'],
)
def test_non_object_records_are_recomputed(tmp_path, counted, content):
    s3 = make_symmetric(3)
    cache_path(tmp_path, s3).write_text(content)
    assert read_lattice(tmp_path, s3) is None
    assert len(get_lattice(s3, cache_dir=tmp_path)) == 6
    assert counted == ["S3"]
    assert read_lattice(tmp_path, s3) is not None


@pytest.mark.unit
@pytest.mark.parametrize("bits", ["-1", "-3f", "ffffffffff", "7f"])
def test_out_of_range_bitsets_are_recomputed(tmp_path, counted, bits):
    s3 = make_symmetric(3)
    path = write_lattice(tmp_path, enumerate_subgroups(s3))
    record = json.loads(path.read_text())
    record["subgroups"][1]["bits"] = bits
    path.write_text(json.dumps(record))
    assert read_lattice(tmp_path, s3) is None
    assert len(get_lattice(s3, cache_dir=tmp_path)) == 6
    assert counted == ["S3"]


@pytest.mark.unit
def test_consistently_dropped_subgroup_is_rejected():
    d8 = build_group("D8")
    lat = enumerate_subgroups(d8)
    # both Klein four-subgroups of D8 are normal and non-cyclic
    (klein, _) = [
        i
        for i in range(len(lat))
        if lat.sizes[i] == 4 and i not in lat.cyclic_indices()
    ]
    kept = [s.members for i, s in enumerate(lat.subgroups) if i != klein]
    smaller = Lattice(d8, kept)
    record = lattice_to_record(smaller)
    with pytest.raises(CacheValidationError, match="missing"):
        lattice_from_record(d8, record)
    assert missing_join(lat) is None


@pytest.mark.unit
def test_memo_is_per_table_and_bounded():
    s3 = make_symmetric(3)
    assert lattice_of(s3) is lattice_of(s3)
    assert lattice_of(make_symmetric(3)) is not lattice_of(s3)
    assert lattice_of.cache_info().maxsize == MEMO_SIZE
