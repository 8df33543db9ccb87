#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Subgroup commutativity degrees.

For subgroups H, K of a finite group G the relative subgroup commutativity
degree is

    sd(H, K) = |{(H1, K1) in L(H) x L(K) : H1 K1 = K1 H1}| / (|L(H)| |L(K)|)

with sd(G) = sd(G, G) and sd(H, G) the degree of H relative to G. The
count is taken from the permutability rows of the ambient lattice: the
subgroups of H are the lattice members below H, so

    pair_count(H, K) = sum over H1 <= H of |C(H1) n L(K)|

where C(H1) is the set of subgroups permuting with H1. All values are
``fractions.Fraction`` and every report re-checks that value times the
product of lattice sizes gives back the integer pair count.

The module also carries the elementwise commutativity degree d(G), the
four lower bounds for sd(H, G), the coprime direct product identity, the
Sylow factorisation for nilpotent groups and profile tables over the
whole lattice.

References:
[1] R. Schmidt, Subgroup Lattices of Groups, de Gruyter, 1994.
[2] W.H. Gustafson, What is the probability that two group elements
commute?, Amer. Math. Monthly 80 (1973), 1031-1034.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional

import numpy as np

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.config import get_config
from finitegroups_contrib.sdegree.exceptions import BurntToast, GroupConstructionError
from finitegroups_contrib.sdegree.group_core import (
    alternating_bits,
    bits_from_indices,
    coprime_orders,
    direct_product,
    make_dihedral,
    make_symmetric,
    product_bits,
    project_bits,
    quotient_group,
)
from finitegroups_contrib.sdegree.lattice_cache import lattice_of
from finitegroups_contrib.sdegree.subgroup_lattice import (
    Lattice,
    SubgroupSet,
    _iter_bits,
    is_nilpotent,
    prime_factors,
    subgroup_name,
    sylow_subgroups,
)

_log = idaeslog.getLogger(__name__)


@dataclass(frozen=True)
class SdReport:
    """A commutativity degree together with the counts it was built from.

    ``lattice_sizes`` holds one lattice size per argument, so the
    denominator of ``value`` divides their product. ``breakdown`` pairs
    subgroup indices with their commuting counts where one is available.
    """

    label: str
    value: Fraction
    pair_count: int
    lattice_sizes: tuple
    breakdown: tuple = ()

    def __post_init__(self):
        total = prod(self.lattice_sizes)
        if self.value * total != self.pair_count or not 0 < self.pair_count <= total:
            raise BurntToast(
                f"{self.label}: {self.value} does not match {self.pair_count} pairs "
                f"out of {total}"
            )


def _lattice(g):
    return g if isinstance(g, Lattice) else lattice_of(g)


def _subgroup_index(h, g=None):
    """Return ``(lattice, index)`` for a subgroup, checking its ambient group."""
    if g is not None:
        ambient = g.group if isinstance(g, Lattice) else g
        if h.ambient is not ambient:
            raise GroupConstructionError(
                f"subgroup of {h.ambient.label} is not a subgroup of {ambient.label}"
            )
    lat = _lattice(g) if isinstance(g, Lattice) else lattice_of(h.ambient)
    return lat, lat.index_of(h)


# ---------------------------------------------------------------------------
# Pair counts on lattice indices


def pair_count(lat, i, j):
    """Number of permuting pairs in L(S_i) x L(S_j)."""
    key = ("pairs", i, j)
    count = lat.cache.get(key)
    if count is None:
        count = lat.cache.get(("pairs", j, i))
    if count is None:
        rows = lat.permutability()
        below_j = lat.below[j]
        count = sum((rows[a] & below_j).bit_count() for a in _iter_bits(lat.below[i]))
        lat.cache[key] = count
    return count


def pair_degree(lat, i, j):
    """sd(S_i, S_j) as a Fraction."""
    return Fraction(pair_count(lat, i, j), lat.lattice_size(i) * lat.lattice_size(j))


def _report(lat, i, j, label, breakdown=False):
    rows = ()
    if breakdown:
        below_j = lat.below[j]
        perm = lat.permutability()
        rows = tuple(
            (a, (perm[a] & below_j).bit_count()) for a in _iter_bits(lat.below[i])
        )
    count = pair_count(lat, i, j)
    sizes = (lat.lattice_size(i), lat.lattice_size(j))
    return SdReport(label, Fraction(count, prod(sizes)), count, sizes, rows)


# ---------------------------------------------------------------------------
# Degrees


def sd(g):
    """Subgroup commutativity degree of ``g`` (a GroupTable or a Lattice).

    The breakdown lists |C(H)| for every subgroup H, whose sum over L(G)
    is the pair count.
    """
    lat = _lattice(g)
    return _report(lat, lat.top, lat.top, f"sd({lat.group.label})", breakdown=True)


def sd_rel(h, g=None):
    """Degree of ``h`` relative to its ambient group.

    Args:
        h: a ``SubgroupSet``.
        g: the ambient GroupTable (or its Lattice); when given it must be
            the table ``h`` lives in.
    """
    lat, i = _subgroup_index(h, g)
    label = f"sd({subgroup_name(lat, i)}, {lat.group.label})"
    return _report(lat, i, lat.top, label, breakdown=True)


def sd_pair(h, k):
    if h.ambient is not k.ambient:
        raise GroupConstructionError(
            f"subgroups live in different groups ({h.ambient.label} and {k.ambient.label})"
        )
    lat = lattice_of(h.ambient)
    i, j = lat.index_of(h), lat.index_of(k)
    label = f"sd({subgroup_name(lat, i)}, {subgroup_name(lat, j)})"
    return _report(lat, i, j, label)


def sd_nary(subgroups, max_arity=None):
    """n-ary degree: tuples whose set product is the same in every order.

    A tuple (K1, ..., Kn) from L(H1) x ... x L(Hn) counts when
    K1 K2 ... Kn equals K_s(1) ... K_s(n) for every reordering s. Products
    are iterated element-set products, memoised on the index sequence.
    """
    subgroups = list(subgroups)
    limit = max_arity if max_arity is not None else get_config().nary_max_arity
    n = len(subgroups)
    if n < 1:
        raise GroupConstructionError("the n-ary degree needs at least one subgroup")
    if n > limit:
        raise GroupConstructionError(
            f"the n-ary degree checks n! orderings; n = {n} is above the limit {limit}"
        )
    ambient = subgroups[0].ambient
    for h in subgroups[1:]:
        if h.ambient is not ambient:
            raise GroupConstructionError(
                f"subgroups live in different groups ({ambient.label} and {h.ambient.label})"
            )
    lat = lattice_of(ambient)
    idx = [lat.index_of(h) for h in subgroups]
    bits = [s.members for s in lat.subgroups]
    rows = lat.permutability()
    memo = {}

    def ordered_product(seq):
        if len(seq) == 1:
            return bits[seq[0]]
        got = memo.get(seq)
        if got is None:
            got = ambient.set_product(ordered_product(seq[:-1]), bits[seq[-1]])
            memo[seq] = got
        return got

    reorderings = list(itertools.permutations(range(n)))[1:]
    count = 0
    for combo in itertools.product(*(lat.subgroup_indices(i) for i in idx)):
        # pairwise permutable tuples multiply to the same subgroup in any order
        if all((rows[a] >> b) & 1 for a, b in itertools.combinations(combo, 2)):
            count += 1
            continue
        first = ordered_product(combo)
        if all(
            ordered_product(tuple(combo[p] for p in order)) == first
            for order in reorderings
        ):
            count += 1
    sizes = tuple(lat.lattice_size(i) for i in idx)
    label = "sd(" + ", ".join(subgroup_name(lat, i) for i in idx) + ")"
    return SdReport(label, Fraction(count, prod(sizes)), count, sizes)


def d_group(g):
    """Probability that two elements of ``g`` commute."""
    g = g.group if isinstance(g, Lattice) else g
    count = int(np.count_nonzero(g.mul == g.mul.T))
    return Fraction(count, g.order * g.order)


def d_rel(h, g=None):
    """Probability that an element of ``h`` commutes with an element of G."""
    if g is not None and h.ambient is not g:
        raise GroupConstructionError(
            f"subgroup of {h.ambient.label} is not a subgroup of {g.label}"
        )
    g = h.ambient
    elems = h.elements()
    count = int(np.count_nonzero(g.mul[elems, :] == g.mul[:, elems].T))
    return Fraction(count, h.size * g.order)


# ---------------------------------------------------------------------------
# Lower bounds


@dataclass(frozen=True)
class BoundCheck:
    name: str
    bound: Optional[Fraction]
    holds: Optional[bool]
    note: str = ""
    normal_subgroup: Optional[int] = None


@dataclass(frozen=True)
class BoundsReport:
    label: str
    value: Fraction
    checks: tuple

    @property
    def all_hold(self):
        return all(c.holds is not False for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.holds is False]


def quotient_lattice(lat, n):
    """``(quotient, coset_of, quotient lattice)`` for the normal subgroup S_n."""
    key = ("quotient", n)
    if key not in lat.cache:
        quotient, coset_of = quotient_group(lat.group, lat.subgroups[n].members)
        lat.cache[key] = (quotient, coset_of, lattice_of(quotient))
    return lat.cache[key]


def lower_bounds(h, g=None):
    """Evaluate the four lower bounds for sd(H, G).

    (a) |L(H)|/|L(G)| sd(H) + 1/|L(G)|, for H != G;
    (b) |N(G)| / |L(G)|;
    (c) (sum |L(H1)| + sum |I(H1)|) / (|L(H)||L(G)|) over H1 <= H, where
        I(H1) are the strict overgroups of H1;
    (d) |L(H/N)||L(G/N)| / (|L(H)||L(G)|) sd(H/N, G/N), once for every
        normal subgroup N of G contained in H.
    """
    lat, i = _subgroup_index(h, g)
    top = lat.top
    value = pair_degree(lat, i, top)
    l_h, l_g = lat.lattice_size(i), len(lat)
    checks = []

    if i == top:
        checks.append(BoundCheck("a", None, None, "requires H != G"))
    else:
        bound = Fraction(l_h, l_g) * pair_degree(lat, i, i) + Fraction(1, l_g)
        checks.append(BoundCheck("a", bound, value >= bound))

    bound = Fraction(len(lat.normal_indices), l_g)
    checks.append(BoundCheck("b", bound, value >= bound))

    members = list(_iter_bits(lat.below[i]))
    total = sum(lat.lattice_size(a) + lat.above[a].bit_count() - 1 for a in members)
    bound = Fraction(total, l_h * l_g)
    checks.append(BoundCheck("c", bound, value >= bound))

    for n in lat.normal_indices:
        if not lat.contains(i, n):
            continue
        _, coset_of, qlat = quotient_lattice(lat, n)
        image = bits_from_indices(np.unique(coset_of[lat.subgroups[i].elements()]))
        qi = qlat.index_of(image)
        # sd(H/N, G/N) |L(H/N)| |L(G/N)| is the quotient pair count
        bound = Fraction(pair_count(qlat, qi, qlat.top), l_h * l_g)
        checks.append(BoundCheck("d", bound, value >= bound, normal_subgroup=n))

    label = f"sd({subgroup_name(lat, i)}, {lat.group.label})"
    return BoundsReport(label, value, tuple(checks))


# ---------------------------------------------------------------------------
# Direct products and Sylow factorisation


@dataclass(frozen=True)
class ProductIdentity:
    """Both sides of sd(prod H_i, prod G_i) = prod sd(H_i, G_i)."""

    label: str
    direct: Fraction
    factors: tuple
    product: Fraction

    @property
    def holds(self):
        return self.direct == self.product


def decompose(factors, h):
    """Split a subgroup of ``direct_product(factors)`` into its factor subgroups.

    Raises:
        GroupConstructionError: when H is not the product of its
            projections, which can only happen for non-coprime factors.
    """
    parts = tuple(
        SubgroupSet(f, project_bits(factors, k, h.members))
        for k, f in enumerate(factors)
    )
    if product_bits(factors, [p.members for p in parts]) != h.members:
        raise GroupConstructionError(
            f"subgroup of {h.ambient.label} is not a product of factor subgroups"
        )
    return parts


def verify_coprime_product(factors, sub_factors, product=None):
    """Compare sd(prod H_i, prod G_i) with prod sd(H_i, G_i) for coprime factors.

    Args:
        factors: the groups G_i, of pairwise coprime orders.
        sub_factors: one ``SubgroupSet`` of each factor.
        product: an existing ``direct_product(factors)`` table to reuse.
    """
    factors = list(factors)
    sub_factors = list(sub_factors)
    if not coprime_orders(factors):
        raise GroupConstructionError(
            "the product identity needs factors of pairwise coprime orders, got "
            + ", ".join(f"{f.label} ({f.order})" for f in factors)
        )
    if len(sub_factors) != len(factors):
        raise GroupConstructionError("one subgroup per factor is required")
    for f, s in zip(factors, sub_factors):
        if s.ambient is not f:
            raise GroupConstructionError(
                f"subgroup of {s.ambient.label} given for {f.label}"
            )
    if product is None:
        product = direct_product(factors)
    h = SubgroupSet.from_bits(
        product, product_bits(factors, [s.members for s in sub_factors])
    )
    direct = sd_rel(h).value
    per_factor = tuple(sd_rel(s).value for s in sub_factors)
    result = ProductIdentity(
        f"sd(H, {product.label})",
        direct,
        per_factor,
        prod(per_factor, start=Fraction(1)),
    )
    _log.debug(f"{result.label}: direct {result.direct}, product {result.product}")
    return result


@dataclass(frozen=True)
class SylowRow:
    subgroup: int
    value: Fraction
    product: Fraction

    @property
    def holds(self):
        return self.value == self.product


def sylow_decomposition(g):
    """Map each prime p to the index of the unique Sylow p-subgroup, or None."""
    lat = _lattice(g)
    if not is_nilpotent(lat):
        return None
    return {
        p: sylow_subgroups(lat, p)[0] for p in sorted(prime_factors(lat.group.order))
    }


def verify_sylow_factorisation(g):
    """Check sd(H, G) = prod_p sd(H_p, G_p) for every H of a nilpotent group.

    H_p is H n G_p, the Sylow p-subgroup of H. Returns None for groups that
    are not nilpotent.
    """
    lat = _lattice(g)
    sylow = sylow_decomposition(lat)
    if sylow is None:
        return None
    rows = []
    for i in range(len(lat)):
        factors = [pair_degree(lat, lat.meet(i, s), s) for s in sylow.values()]
        rows.append(
            SylowRow(i, pair_degree(lat, i, lat.top), prod(factors, start=Fraction(1)))
        )
    return tuple(rows)


# ---------------------------------------------------------------------------
# Profiles


def sd_profile(g):
    """sd(H, G) for each conjugacy class of subgroups, keyed by class id.

    Raises:
        BurntToast: if two conjugate subgroups disagree.
    """
    lat = _lattice(g)
    profile = {}
    for cid, members in enumerate(lat.conjugacy_classes):
        values = {pair_degree(lat, i, lat.top) for i in members}
        if len(values) != 1:
            raise BurntToast(
                f"conjugate subgroups of {lat.group.label} in class {cid} have "
                f"different degrees {sorted(values)}"
            )
        profile[cid] = values.pop()
    return profile


@dataclass(frozen=True)
class ProfileProperties:
    injective: bool
    collisions: tuple
    non_increasing: bool
    non_decreasing: bool
    minimum: Fraction
    maximum: Fraction
    # conjugacy class ids attaining the minimum
    argmin: tuple


def sd_profile_properties(g):
    """Injectivity on classes, monotonicity along inclusion and the range."""
    lat = _lattice(g)
    profile = sd_profile(lat)
    collisions = tuple(
        (a, b)
        for a, b in itertools.combinations(sorted(profile), 2)
        if profile[a] == profile[b]
    )
    lowest = min(profile.values())
    value = [profile[c] for c in lat.class_of]
    non_increasing = non_decreasing = True
    for j in range(len(lat)):
        for i in _iter_bits(lat.below[j] & ~(1 << j)):
            if value[i] < value[j]:
                non_increasing = False
            if value[i] > value[j]:
                non_decreasing = False
    return ProfileProperties(
        injective=not collisions,
        collisions=collisions,
        non_increasing=non_increasing,
        non_decreasing=non_decreasing,
        minimum=lowest,
        maximum=max(profile.values()),
        argmin=tuple(c for c in sorted(profile) if profile[c] == lowest),
    )


@dataclass(frozen=True)
class SdMatrix:
    label: str
    indices: tuple
    values: tuple

    def is_symmetric(self):
        n = len(self.indices)
        return all(
            self.values[a][b] == self.values[b][a] for a in range(n) for b in range(a)
        )


def sd_matrix(g, subgroups="all"):
    """sd(S_i, S_j) over all subgroups, or over the cyclic ones."""
    lat = _lattice(g)
    if subgroups == "all":
        indices = tuple(range(len(lat)))
    elif subgroups == "cyclic":
        indices = tuple(lat.cyclic_indices())
    else:
        raise GroupConstructionError(
            f"matrix subgroups must be 'all' or 'cyclic', got '{subgroups}'"
        )
    values = tuple(tuple(pair_degree(lat, i, j) for j in indices) for i in indices)
    return SdMatrix(f"{lat.group.label} ({subgroups})", indices, values)


@dataclass(frozen=True)
class ReflectionRow:
    order: int
    sd_y: Fraction
    sd_xy: Fraction
    conjugate: bool

    @property
    def equal(self):
        return self.sd_y == self.sd_xy

    @property
    def nine_tenths(self):
        return self.equal and self.sd_y == Fraction(9, 10)


def dihedral_reflection_sweep(orders):
    """Compare sd(<y>, D) and sd(<xy>, D) over dihedral groups of the given orders."""
    rows = []
    for order in orders:
        dih = make_dihedral(order)
        lat = lattice_of(dih)
        x, y = dih.named["x"], dih.named["y"]
        i = lat.cyclic_of(y)
        j = lat.cyclic_of(int(dih.mul[x, y]))
        rows.append(
            ReflectionRow(
                order,
                pair_degree(lat, i, lat.top),
                pair_degree(lat, j, lat.top),
                lat.class_of[i] == lat.class_of[j],
            )
        )
    return tuple(rows)


def alternating_in_symmetric(n_max=5):
    """Rows ``(n, sd(A_n, S_n))`` for n = 2..n_max."""
    if not 2 <= n_max <= 6:
        raise GroupConstructionError(f"n_max must be in 2..6, got {n_max}")
    rows = []
    for n in range(2, n_max + 1):
        sym = make_symmetric(n)
        alt = SubgroupSet(sym, alternating_bits(sym))
        rows.append((n, sd_rel(alt).value))
        _log.info(f"sd(A{n}, S{n}) = {rows[-1][1]}")
    return tuple(rows)