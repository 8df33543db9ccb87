#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Subgroup lattices of group tables.

``enumerate_subgroups`` seeds a worklist with the cyclic subgroups and
joins every discovered subgroup with every cyclic subgroup it does not
contain, until no new subgroup appears. Every subgroup is the join of its
cyclic subgroups, so the fixed point is the whole lattice.

Subgroups are stored in canonical order: by size, then by bitset value
read as an integer. Inclusion is kept twice as int bitsets over subgroup
indices (``below[i]``: subgroups of S_i, ``above[i]``: overgroups of S_i).
Because indices grow with size, the join of two subgroups is the lowest
index among their common overgroups and the meet is the highest index
among their common subgroups, so neither needs a closure once the lattice
is known.

References:
[1] R. Schmidt, Subgroup Lattices of Groups, de Gruyter, 1994 (modular
elements of a lattice, permutable subgroups).
"""

from collections import deque
from dataclasses import dataclass, field
from math import log2

import numpy as np

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.config import get_config
from finitegroups_contrib.sdegree.exceptions import (
    BurntToast,
    GroupConstructionError,
    OrderCapExceeded,
)
from finitegroups_contrib.sdegree.group_core import (
    GroupTable,
    bits_from_mask,
    indices_from_bits,
)

_log = idaeslog.getLogger(__name__)


def _lowest(bits):
    return (bits & -bits).bit_length() - 1


def _iter_bits(bits):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _prime_factors(n):
    factors = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True, eq=False)
class SubgroupSet:
    """A subgroup of a fixed ambient group, stored as an element bitset."""

    ambient: GroupTable
    members: int
    size: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "size", bin(self.members).count("1"))

    @classmethod
    def from_bits(cls, ambient, bits, check=True):
        if check and not ambient.is_subgroup_bits(bits):
            raise GroupConstructionError(
                f"element set is not a subgroup of {ambient.label}"
            )
        return cls(ambient, bits)

    def __eq__(self, other):
        if not isinstance(other, SubgroupSet):
            return NotImplemented
        return self.ambient is other.ambient and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, x):
        return bool((self.members >> int(x)) & 1)

    def __le__(self, other):
        _check_ambient(self, other)
        return self.members & other.members == self.members

    def elements(self):
        return indices_from_bits(self.members, self.ambient.order)

    def hex(self):
        return format(self.members, "x")

    def __repr__(self):
        return (
            f"SubgroupSet({self.ambient.label}, size={self.size}, bits=0x{self.hex()})"
        )


def _check_ambient(h, k):
    if h.ambient is not k.ambient:
        raise GroupConstructionError(
            f"subgroups live in different groups ({h.ambient.label} and {k.ambient.label})"
        )


def product_set(h, k):
    """Bitset of HK = {hk : h in H, k in K}."""
    _check_ambient(h, k)
    return h.ambient.set_product(h.members, k.members)


def permutes(h, k):
    """True when HK = KH as element sets."""
    return product_set(h, k) == product_set(k, h)


class Lattice:
    """The complete subgroup lattice of a group table.

    Args:
        group: the ambient ``GroupTable``.
        subgroup_bits: element bitsets of all subgroups, in any order.
        generators: optional map from bitset to a generating tuple.
    """

    def __init__(self, group, subgroup_bits, generators=None):
        self.group = group
        bits_sorted = sorted(set(subgroup_bits), key=lambda b: (bin(b).count("1"), b))
        self.subgroups = tuple(SubgroupSet(group, b) for b in bits_sorted)
        self.index = {b: i for i, b in enumerate(bits_sorted)}
        if 1 not in self.index or group.whole_bits not in self.index:
            raise GroupConstructionError(
                f"lattice of {group.label} must contain the trivial and whole subgroups"
            )
        self.trivial = 0
        self.top = len(bits_sorted) - 1
        self._generators = dict(generators or {})
        self._build_inclusion()
        self._conjugates = {}
        self._classes = None
        self._permutability = None
        self._cyclic_of = None
        self.cache = {}

    def __len__(self):
        return len(self.subgroups)

    def __repr__(self):
        return f"Lattice({self.group.label}, {len(self)} subgroups)"

    def _build_inclusion(self):
        count = len(self.subgroups)
        sizes = [s.size for s in self.subgroups]
        bits = [s.members for s in self.subgroups]
        below = [0] * count
        above = [0] * count
        for i in range(count):
            bi = bits[i]
            for j in range(i + 1):
                if sizes[i] % sizes[j] == 0 and bits[j] & bi == bits[j]:
                    below[i] |= 1 << j
                    above[j] |= 1 << i
        self.sizes = sizes
        self.below = below
        self.above = above

    # -- lookups -----------------------------------------------------------

    def index_of(self, h):
        bits = h.members if isinstance(h, SubgroupSet) else int(h)
        if isinstance(h, SubgroupSet) and h.ambient is not self.group:
            raise GroupConstructionError(
                f"subgroup of {h.ambient.label} is not in the lattice of {self.group.label}"
            )
        try:
            return self.index[bits]
        except KeyError:
            raise GroupConstructionError(
                f"element set 0x{bits:x} is not a subgroup in the lattice of {self.group.label}"
            )

    def lattice_size(self, i):
        """|L(S_i)|, the number of subgroups of the i-th subgroup."""
        return bin(self.below[i]).count("1")

    def subgroup_indices(self, i):
        return list(_iter_bits(self.below[i]))

    def join(self, i, j):
        return _lowest(self.above[i] & self.above[j])

    def meet(self, i, j):
        return (self.below[i] & self.below[j]).bit_length() - 1

    def contains(self, i, j):
        """True when S_j is a subgroup of S_i."""
        return bool((self.below[i] >> j) & 1)

    def generators(self, i):
        bits = self.subgroups[i].members
        if bits not in self._generators:
            self._generators[bits] = tuple(self.group.generating_set(bits))
        return self._generators[bits]

    def cyclic_of(self, x):
        """Index of the cyclic subgroup generated by element x."""
        if self._cyclic_of is None:
            self._cyclic_of = [
                self.index[self.group.closure([x])] for x in range(self.group.order)
            ]
        return self._cyclic_of[x]

    def cyclic_indices(self):
        return sorted({self.cyclic_of(x) for x in range(self.group.order)})

    # -- conjugation -------------------------------------------------------

    def conjugate(self, i, g):
        """Index of S_i^g = g^-1 S_i g."""
        key = (i, g)
        if key not in self._conjugates:
            conj = self.group.conjugation_table()
            mask = np.zeros(self.group.order, dtype=bool)
            mask[conj[g, self.subgroups[i].elements()]] = True
            self._conjugates[key] = self.index[bits_from_mask(mask)]
        return self._conjugates[key]

    def _compute_classes(self):
        gens = self.group.generating_set()
        class_of = [-1] * len(self)
        classes = []
        for start in range(len(self)):
            if class_of[start] >= 0:
                continue
            cid = len(classes)
            orbit = [start]
            class_of[start] = cid
            queue = deque([start])
            while queue:
                i = queue.popleft()
                for g in gens:
                    j = self.conjugate(i, g)
                    if class_of[j] < 0:
                        class_of[j] = cid
                        orbit.append(j)
                        queue.append(j)
            classes.append(tuple(sorted(orbit)))
        self._classes = (tuple(classes), tuple(class_of))

    @property
    def conjugacy_classes(self):
        if self._classes is None:
            self._compute_classes()
        return self._classes[0]

    @property
    def class_of(self):
        if self._classes is None:
            self._compute_classes()
        return self._classes[1]

    @property
    def normal_indices(self):
        return [c[0] for c in self.conjugacy_classes if len(c) == 1]

    def is_normal(self, i):
        return len(self.conjugacy_classes[self.class_of[i]]) == 1

    @property
    def maximal_indices(self):
        top_bit = 1 << self.top
        return [
            i
            for i in range(self.top)
            if self.above[i] == (1 << i) | top_bit
        ]

    # -- permutability -----------------------------------------------------

    def _pair_permutes(self, i, j):
        if self.contains(i, j) or self.contains(j, i):
            return True
        if self.is_normal(i) or self.is_normal(j):
            return True
        product_size = self.sizes[i] * self.sizes[j] // self.sizes[self.meet(i, j)]
        order = self.group.order
        if order % product_size:
            return False
        if product_size == order:
            return True
        hk = self.group.set_product(
            self.subgroups[i].members, self.subgroups[j].members
        )
        return hk in self.index

    def permutability(self):
        """Rows of the permutability relation as bitsets over subgroup indices.

        HK = KH holds exactly when HK is a subgroup, so a pair permutes when
        its product set is one of the lattice's bitsets.
        """
        if self._permutability is None:
            count = len(self)
            rows = [1 << i for i in range(count)]
            for i in range(count):
                for j in range(i + 1, count):
                    if self._pair_permutes(i, j):
                        rows[i] |= 1 << j
                        rows[j] |= 1 << i
            self._permutability = rows
            _log.debug(f"Permutability relation of {self.group.label} computed")
        return self._permutability

    def commuting_count(self, i, within=None):
        """|C(S_i)|, optionally restricted to the subgroups of S_within."""
        row = self.permutability()[i]
        if within is not None:
            row &= self.below[within]
        return bin(row).count("1")


# ---------------------------------------------------------------------------
# Enumeration


def enumerate_subgroups(g):
    """Enumerate the complete subgroup lattice of ``g``."""
    cyclic = {}
    for x in range(g.order):
        bits = g.closure([x])
        cyclic.setdefault(bits, x)
    known = {1: ()}
    queue = deque()
    for bits, x in cyclic.items():
        if bits not in known:
            known[bits] = (x,)
            queue.append(bits)
    cyclic_items = sorted(cyclic.items())
    closures = 0
    while queue:
        h = queue.popleft()
        for c_bits, x in cyclic_items:
            if c_bits & h == c_bits:
                continue
            joined = g.closure([x], base_bits=h)
            closures += 1
            if joined not in known:
                known[joined] = known[h] + (x,)
                queue.append(joined)
    _log.debug(
        f"Enumerated {len(known)} subgroups of {g.label} "
        f"({len(cyclic)} cyclic, {closures} joins)"
    )
    return Lattice(g, known.keys(), generators=known)


def missing_join(lat):
    """First (subgroup index, element) whose join is absent from ``lat``.

    Every subgroup is reached from the trivial one by joining cyclic
    subgroups, so a set of subgroups containing all cyclic ones and closed
    under these joins is the whole lattice. Returns None when complete.
    """
    g = lat.group
    cyclic = [
        (lat.subgroups[c].members, lat.generators(c)[0])
        for c in lat.cyclic_indices()
        if c != lat.trivial
    ]
    for i, h in enumerate(lat.subgroups):
        for c_bits, x in cyclic:
            if c_bits & h.members == c_bits:
                continue
            if g.closure([x], base_bits=h.members) not in lat.index:
                return i, x
    return None


def _word_closure(rows, gens):
    """Subgroup generated by ``gens``, built word by word in plain Python."""
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = rows[x]
            for s in gens:
                y = row[s]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return members


def oracle_enumerate(g, max_order=None):
    """Independent brute-force lattice used to validate ``enumerate_subgroups``.

    Generating sets are grown one element at a time from each subgroup
    reached so far. A subgroup of order n is generated by at most log2(n)
    elements, since every added generator at least doubles the closure, so
    the search depth is asserted against that bound.
    """
    bound = max_order if max_order is not None else get_config().oracle_max_order
    if g.order > bound:
        raise OrderCapExceeded(g.order, bound, what="oracle")
    rows = g.mul.tolist()
    depth_bound = int(log2(g.order)) if g.order > 1 else 0
    seen = {frozenset([0]): ()}
    stack = [frozenset([0])]
    while stack:
        current = stack.pop()
        gens = seen[current]
        for x in range(g.order):
            if x in current:
                continue
            grown = frozenset(_word_closure(rows, gens + (x,)))
            if grown not in seen:
                if len(gens) + 1 > depth_bound:
                    raise BurntToast(
                        f"oracle exceeded the generator bound {depth_bound} on {g.label}"
                    )
                seen[grown] = gens + (x,)
                stack.append(grown)
    bits = []
    for members in seen:
        b = 0
        for x in members:
            b |= 1 << x
        bits.append(b)
    return Lattice(g, bits)


# ---------------------------------------------------------------------------
# Structural queries


def _resolve(lat, h):
    return h if isinstance(h, int) else lat.index_of(h)


def commuting_set(lat, h):
    """Indices of all subgroups K of G with HK = KH."""
    return frozenset(_iter_bits(lat.permutability()[_resolve(lat, h)]))


def strict_overgroups(lat, h):
    i = _resolve(lat, h)
    return frozenset(_iter_bits(lat.above[i] & ~(1 << i)))


def conjugacy_classes(lat):
    return lat.conjugacy_classes


def maximal_subgroups(lat):
    return lat.maximal_indices


def normal_subgroups(lat):
    return lat.normal_indices


def intersections_of_maximals(lat, max_families=None):
    """Map every nonempty family of maximal subgroups to its intersection.

    Families are tuples of positions into ``maximal_subgroups(lat)``. Each
    family F + {j} reuses the cached intersection of F.
    """
    maxima = lat.maximal_indices
    limit = (
        max_families
        if max_families is not None
        else get_config().max_family_enumeration
    )
    if len(maxima) > limit:
        raise OrderCapExceeded(
            len(maxima), limit, what="family enumeration (number of maximal subgroups)"
        )
    by_mask = {0: lat.top}
    result = {}
    for mask in range(1, 1 << len(maxima)):
        top_pos = mask.bit_length() - 1
        rest = mask ^ (1 << top_pos)
        idx = lat.meet(by_mask[rest], maxima[top_pos])
        by_mask[mask] = idx
        result[tuple(_iter_bits(mask))] = idx
    return result


def normal_closure(lat, h, within=None):
    """Smallest normal subgroup of S_within containing S_h."""
    i = _resolve(lat, h)
    within = lat.top if within is None else within
    gens = lat.generators(within)
    current = i
    changed = True
    while changed:
        changed = False
        for g in gens:
            joined = lat.join(current, lat.conjugate(current, g))
            if joined != current:
                current = joined
                changed = True
    return current


def is_subnormal(lat, h):
    """True when the chain of iterated normal closures descends to H."""
    i = _resolve(lat, h)
    current = lat.top
    while True:
        nxt = normal_closure(lat, i, within=current)
        if nxt == current:
            return current == i
        current = nxt


def is_modular_element(lat, h):
    """Modular element test in L(G).

    (i)  X <= Z implies <X, H n Z> = <X, H> n Z, and
    (ii) H <= Z implies <H, X n Z> = <H, X> n Z, for all X, Z in L(G).
    """
    i = _resolve(lat, h)
    count = len(lat)
    for z in range(count):
        hz = lat.meet(i, z)
        for x in _iter_bits(lat.below[z]):
            if lat.join(x, hz) != lat.meet(lat.join(x, i), z):
                return False
    for z in _iter_bits(lat.above[i]):
        for x in range(count):
            if lat.join(i, lat.meet(x, z)) != lat.meet(lat.join(i, x), z):
                return False
    return True


def sylow_subgroups(lat, p):
    order = lat.group.order
    power = 1
    while order % (power * p) == 0:
        power *= p
    return [i for i, s in enumerate(lat.sizes) if s == power]


def is_nilpotent(lat):
    """A finite group is nilpotent exactly when each Sylow subgroup is normal."""
    return all(
        len(sylow_subgroups(lat, p)) == 1 for p in _prime_factors(lat.group.order)
    )


def prime_factors(n):
    return _prime_factors(n)


def cyclic_subgroups(lat):
    return lat.cyclic_indices()


def generators(lat, h):
    """A small generating tuple of the subgroup, as element indices."""
    return lat.generators(_resolve(lat, h))


def is_permutable(lat, h):
    """True when the subgroup permutes with every subgroup of G."""
    i = _resolve(lat, h)
    return lat.permutability()[i] == (1 << len(lat)) - 1


def subgroup_name(lat, h):
    """Display name ``<g1, g2>`` built from the stored generators."""
    i = _resolve(lat, h)
    if i == lat.trivial:
        return "1"
    g = lat.group
    return "<" + ", ".join(g.element_name(x) for x in lat.generators(i)) + ">"
