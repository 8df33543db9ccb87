#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""On-disk cache of subgroup lattices.

One JSON file per group, named after the sha256 of the canonical Cayley
table. The schema is documented in ``lattice_cache_schema.rst``. A file is
trusted only after every stored bitset has been re-checked to be a
subgroup; anything unreadable or inconsistent is logged and recomputed.
"""

import functools
import json
import pathlib

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.config import get_config
from finitegroups_contrib.sdegree.exceptions import ConfigurationError
from finitegroups_contrib.sdegree.subgroup_lattice import (
    Lattice,
    enumerate_subgroups,
    missing_join,
    oracle_enumerate,
)

_log = idaeslog.getLogger(__name__)

SCHEMA = "finitegroups-sdegree/lattice"
SCHEMA_VERSION = 1

# lattices kept in memory by lattice_of
MEMO_SIZE = 64


class CacheValidationError(ConfigurationError):
    """A cache file failed validation and must be recomputed."""


def cache_path(cache_dir, group):
    return pathlib.Path(cache_dir) / f"{group.content_hash()}.json"


def lattice_to_record(lat):
    g = lat.group
    maximal = set(lat.maximal_indices)
    return {
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "label": g.label,
        "order": g.order,
        "table_sha256": g.content_hash(),
        "elements": [g.element_name(x) for x in range(g.order)],
        "subgroups": [
            {
                "bits": s.hex(),
                "size": s.size,
                "maximal": i in maximal,
                "normal": lat.is_normal(i),
                "class": lat.class_of[i],
            }
            for i, s in enumerate(lat.subgroups)
        ],
    }


def lattice_from_record(group, record):
    """Rebuild and validate a lattice from a decoded cache record.

    Raises:
        CacheValidationError: on any schema or closure violation.
    """
    if not isinstance(record, dict):
        raise CacheValidationError("cache record is not a JSON object")
    if record.get("schema") != SCHEMA or record.get("version") != SCHEMA_VERSION:
        raise CacheValidationError("unknown cache schema or version")
    if record.get("order") != group.order:
        raise CacheValidationError("cached order does not match the group")
    if record.get("table_sha256") != group.content_hash():
        raise CacheValidationError("cached table hash does not match the group")
    entries = record.get("subgroups")
    if not isinstance(entries, list) or not all(
        isinstance(e, dict) for e in entries
    ):
        raise CacheValidationError("subgroups must be a list of objects")
    bits = []
    for entry in entries:
        try:
            b = int(entry["bits"], 16)
        except (KeyError, TypeError, ValueError):
            raise CacheValidationError("malformed subgroup bitset")
        if b < 0:
            raise CacheValidationError(f"negative subgroup bitset {entry['bits']}")
        if not group.is_subgroup_bits(b):
            raise CacheValidationError(
                f"cached set 0x{entry['bits']} is not a subgroup"
            )
        if bin(b).count("1") != entry.get("size"):
            raise CacheValidationError(f"cached size of 0x{entry['bits']} is wrong")
        bits.append(b)
    if len(set(bits)) != len(bits):
        raise CacheValidationError("duplicate subgroups in cache file")
    try:
        lat = Lattice(group, bits)
    except ConfigurationError as err:
        raise CacheValidationError(str(err))
    if [s.members for s in lat.subgroups] != bits:
        raise CacheValidationError("subgroups are not in canonical order")
    try:
        lat.cyclic_indices()
        lat.class_of
    except KeyError:
        raise CacheValidationError(
            "cached lattice misses a cyclic subgroup or a conjugate"
        )
    gap = missing_join(lat)
    if gap is not None:
        i, x = gap
        raise CacheValidationError(
            f"join of subgroup {i} with element {x} is missing from the cache file"
        )
    maximal = set(lat.maximal_indices)
    for i, entry in enumerate(entries):
        if bool(entry.get("maximal")) != (i in maximal):
            raise CacheValidationError(f"maximality flag of subgroup {i} is wrong")
        if bool(entry.get("normal")) != lat.is_normal(i):
            raise CacheValidationError(f"normality flag of subgroup {i} is wrong")
        if entry.get("class") != lat.class_of[i]:
            raise CacheValidationError(f"conjugacy class id of subgroup {i} is wrong")
    return lat


def write_lattice(cache_dir, lat):
    path = cache_path(cache_dir, lat.group)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(lattice_to_record(lat), indent=1, sort_keys=True))
    tmp.replace(path)
    _log.debug(f"Wrote lattice of {lat.group.label} to {path}")
    return path


def read_lattice(cache_dir, group):
    """Return the cached lattice, or None when missing or invalid."""
    path = cache_path(cache_dir, group)
    if not path.exists():
        return None
    try:
        record = json.loads(path.read_text())
        return lattice_from_record(group, record)
    except (OSError, ValueError, TypeError, KeyError, OverflowError) as err:
        # CacheValidationError and json decode errors are ValueErrors
        _log.warning(f"Rejected lattice cache file {path}: {err}; recomputing")
        return None


def clear_cache(cache_dir):
    removed = 0
    for path in pathlib.Path(cache_dir).glob("*.json"):
        path.unlink()
        removed += 1
    return removed


def get_lattice(group, cache_dir=None, oracle=None):
    """Lattice of ``group``, through the cache when one is configured.

    Args:
        group: the ``GroupTable``.
        cache_dir: cache directory; ``None`` uses the configured one, which
            may itself be ``None`` (no caching).
        oracle: also enumerate with the brute-force oracle and fail on any
            disagreement; ``None`` uses the configured default.
    """
    cfg = get_config()
    cache_dir = cache_dir if cache_dir is not None else cfg.cache_dir
    oracle = cfg.oracle if oracle is None else oracle
    lat = None
    if cache_dir is not None:
        lat = read_lattice(cache_dir, group)
        if lat is not None:
            _log.info(f"Lattice cache hit for {group.label}")
        else:
            _log.info(f"Lattice cache miss for {group.label}")
    if lat is None:
        lat = enumerate_subgroups(group)
        if cache_dir is not None:
            try:
                write_lattice(cache_dir, lat)
            except OSError as err:
                _log.warning(f"Could not write lattice cache for {group.label}: {err}")
    if oracle:
        check = oracle_enumerate(group)
        if [s.members for s in check.subgroups] != [s.members for s in lat.subgroups]:
            raise CacheValidationError(
                f"oracle disagrees with the enumerated lattice of {group.label}"
            )
    return lat


@functools.lru_cache(maxsize=MEMO_SIZE)
def lattice_of(group):
    """Lattice of ``group``, computed once per table object.

    The memo is keyed by table identity and holds the ``MEMO_SIZE`` most
    recently used lattices.
    """
    return get_lattice(group)
