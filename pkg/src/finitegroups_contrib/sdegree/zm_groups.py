#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""ZM-groups and their subgroups.

A ZM-group is a finite group all of whose Sylow subgroups are cyclic. Each
one has a presentation

    ZM(m, n, r) = <a, b | a^m = b^n = 1, b^-1 a b = a^r>

with gcd(m, n) = gcd(m, r - 1) = 1 and r^n = 1 (mod m). Elements are
kept in the normal form b^i a^j (index i*m + j); the relation a b = b a^r
gives

    (b^i1 a^j1)(b^i2 a^j2) = b^(i1 + i2) a^(j1 r^i2 + j2).

The subgroups are indexed by the triples (m1, n1, s) with m1 | m, n1 | n,
0 <= s < m1 and m1 dividing s (r^n - 1)/(r^n1 - 1). The quotient is
evaluated as the geometric sum 1 + r^n1 + ... + r^(n - n1) reduced mod m,
which stays exact when r = 1. The triple (m1, n1, s) stands for the union
of the cosets (b^n1 a^s)^k <a^m1>, k = 1..n/n1.

References:
[1] W.C. Calhoun, Counting the subgroups of some finite groups, Amer. Math.
Monthly 94 (1987), 54-59.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.commutativity import pair_degree
from finitegroups_contrib.sdegree.exceptions import (
    BurntToast,
    GroupConstructionError,
    InvalidZMParameters,
)
from finitegroups_contrib.sdegree.group_core import GroupTable, bits_from_indices
from finitegroups_contrib.sdegree.lattice_cache import lattice_of
from finitegroups_contrib.sdegree.subgroup_lattice import (
    SubgroupSet,
    prime_factors,
    sylow_subgroups,
)

_log = idaeslog.getLogger(__name__)


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class ZMParams:
    m: int
    n: int
    r: int

    @property
    def order(self):
        return self.m * self.n

    def __str__(self):
        return f"ZM({self.m},{self.n},{self.r})"


@dataclass(frozen=True, order=True)
class ZMTriple:
    m1: int
    n1: int
    s: int

    def __str__(self):
        return f"({self.m1},{self.n1},{self.s})"


def validate_zm(m, n, r):
    """Check the ZM conditions and return parameters with r reduced mod m.

    Raises:
        InvalidZMParameters: listing every violated condition.
    """
    m, n, r = int(m), int(n), int(r)
    if m < 1 or n < 1:
        raise InvalidZMParameters(m, n, r, ["m and n must be positive"])
    violations = []
    if gcd(m, n) != 1:
        violations.append(f"gcd(m, n) = gcd({m}, {n}) = {gcd(m, n)} != 1")
    if gcd(m, r - 1) != 1:
        violations.append(f"gcd(m, r - 1) = gcd({m}, {r - 1}) = {gcd(m, r - 1)} != 1")
    if pow(r, n, m) != 1 % m:
        violations.append(f"r^n = {r}^{n} = {pow(r, n, m)} (mod {m}), not 1")
    if violations:
        raise InvalidZMParameters(m, n, r, violations)
    return ZMParams(m, n, r % m if m > 1 else 1)


def build_zm(p, max_order=None):
    """Cayley table of ZM(m, n, r) in the normal form b^i a^j."""
    m, n = p.m, p.n
    idx = np.arange(m * n)
    i, j = idx // m, idx % m
    rpow = np.array([pow(p.r, k, m) for k in range(n)], dtype=np.int64)
    new_i = (i[:, None] + i[None, :]) % n
    new_j = (j[:, None] * rpow[i][None, :] + j[None, :]) % m
    mul = new_i * m + new_j

    def name(x):
        bi, aj = divmod(x, m)
        bs = "" if bi == 0 else ("b" if bi == 1 else f"b^{bi}")
        as_ = "" if aj == 0 else ("a" if aj == 1 else f"a^{aj}")
        return (bs + as_) or "1"

    return GroupTable(
        mul,
        str(p),
        elements=[name(x) for x in range(m * n)],
        named={"a": 1 % m, "b": (1 % n) * m},
        max_order=max_order,
    )


def geometric_quotient(p, n1):
    """(r^n - 1)/(r^n1 - 1) mod m, as the sum of r^(i n1) for i < n/n1."""
    if n1 < 1 or p.n % n1:
        raise GroupConstructionError(f"n1 = {n1} does not divide n = {p.n}")
    return sum(pow(p.r, i * n1, p.m) for i in range(p.n // n1)) % p.m


def in_triple_set(p, t):
    return (
        p.m % t.m1 == 0
        and p.n % t.n1 == 0
        and 0 <= t.s < t.m1
        and (t.s * geometric_quotient(p, t.n1)) % t.m1 == 0
    )


def enumerate_triples(p):
    """All triples indexing subgroups of ZM(m, n, r), in lexicographic order."""
    triples = []
    for m1 in divisors(p.m):
        for n1 in divisors(p.n):
            q = geometric_quotient(p, n1)
            triples.extend(
                ZMTriple(m1, n1, s) for s in range(m1) if (s * q) % m1 == 0
            )
    return triples


def triple_to_subgroup(p, t, group=None):
    """The subgroup union of (b^n1 a^s)^k <a^m1>, k = 1..n/n1.

    Raises:
        GroupConstructionError: if the triple does not index a subgroup.
        BurntToast: if the constructed set is not a subgroup of the
            expected size.
    """
    if not in_triple_set(p, t):
        raise GroupConstructionError(f"{t} does not index a subgroup of {p}")
    group = build_zm(p) if group is None else group
    m, n = p.m, p.n
    base = np.array(sorted({(k * t.m1) % m for k in range(m)}), dtype=np.int64)
    step = (t.n1 % n) * m + t.s
    members = []
    power = group.identity
    for _ in range(n // t.n1):
        power = int(group.mul[power, step])
        members.extend(group.mul[power, base].tolist())
    bits = bits_from_indices(members)
    expected = (n // t.n1) * (m // t.m1)
    if bin(bits).count("1") != expected or not group.is_subgroup_bits(bits):
        raise BurntToast(f"{p} triple {t} does not give a subgroup of order {expected}")
    return SubgroupSet(group, bits)


@dataclass(frozen=True)
class BijectionReport:
    params: ZMParams
    triples: int
    subgroups: int
    collisions: tuple
    missing: tuple

    @property
    def holds(self):
        return (
            not self.collisions
            and not self.missing
            and self.triples == self.subgroups
        )


def verify_bijection(p, group=None):
    """Check that the triples hit every subgroup exactly once."""
    group = build_zm(p) if group is None else group
    lat = lattice_of(group)
    seen = {}
    collisions = []
    triples = enumerate_triples(p)
    for t in triples:
        h = triple_to_subgroup(p, t, group)
        if h.members in seen:
            collisions.append((seen[h.members], t))
        else:
            seen[h.members] = t
    missing = tuple(i for i, s in enumerate(lat.subgroups) if s.members not in seen)
    report = BijectionReport(p, len(triples), len(lat), tuple(collisions), missing)
    if not report.holds:
        _log.warning(
            f"{p}: {len(triples)} triples for {len(lat)} subgroups, "
            f"{len(collisions)} collisions, {len(missing)} missing"
        )
    return report


@dataclass(frozen=True)
class ZMRow:
    """One subgroup of a ZM-group with its relative degree.

    ``gcd_s_m1`` is gcd(s, m1) and ``gcd_m1_n1`` is gcd(m1, n1).
    """

    params: ZMParams
    triple: ZMTriple
    order: int
    normal: bool
    gcd_s_m1: int
    gcd_m1_n1: int
    value: Fraction


def zm_sd_table(p, group=None):
    group = build_zm(p) if group is None else group
    lat = lattice_of(group)
    rows = []
    for t in enumerate_triples(p):
        h = triple_to_subgroup(p, t, group)
        i = lat.index_of(h)
        rows.append(
            ZMRow(
                params=p,
                triple=t,
                order=h.size,
                normal=lat.is_normal(i),
                gcd_s_m1=gcd(t.s, t.m1),
                gcd_m1_n1=gcd(t.m1, t.n1),
                value=pair_degree(lat, i, lat.top),
            )
        )
    return tuple(rows)


def valid_zm_params(max_mn):
    """Every valid parameter set with m*n <= max_mn, r reduced mod m."""
    found = []
    for m in range(1, max_mn + 1):
        for n in range(1, max_mn // m + 1):
            for r in range(1, max(m, 2)):
                try:
                    found.append(validate_zm(m, n, r))
                except InvalidZMParameters:
                    continue
    return found


def structure_checks(p, group=None):
    """Structural facts every ZM-group satisfies, checked on the table.

    Returns a dict of booleans: ``order``, ``a_normal`` (<a> is normal of
    order m), ``derived_in_a`` (every commutator lies in <a>) and
    ``sylow_cyclic``.
    """
    group = build_zm(p) if group is None else group
    lat = lattice_of(group)
    a = group.named["a"]
    a_bits = group.closure([a])
    a_idx = lat.index_of(a_bits)
    inv = group.inv
    mul = group.mul
    x = np.arange(group.order)
    # [x, y] = x^-1 y^-1 x y
    comm = mul[mul[mul[inv[x][:, None], inv[x][None, :]], x[:, None]], x[None, :]]
    derived = bits_from_indices(np.unique(comm))
    orders = group.element_orders()
    sylow_cyclic = all(
        any(
            orders[e] == lat.sizes[s]
            for e in lat.subgroups[s].elements()
        )
        for q in prime_factors(group.order)
        for s in sylow_subgroups(lat, q)[:1]
    )
    return {
        "order": group.order == p.m * p.n,
        "a_normal": lat.is_normal(a_idx) and lat.sizes[a_idx] == p.m,
        "derived_in_a": derived & a_bits == derived,
        "sylow_cyclic": sylow_cyclic,
    }
