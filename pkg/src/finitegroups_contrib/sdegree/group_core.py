#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Concrete finite groups stored as Cayley tables.

A ``GroupTable`` is an order x order table of element indices together
with identity and inverse tables. Index 0 is always the identity, and
every constructor fixes a canonical element order so that element ids
(and therefore subgroup bitsets) are reproducible between runs:

    cyclic       g^i at index i
    dihedral     x^i at index i, x^i y at index k + i (k = order / 2)
    symmetric    permutations in lexicographic one-line order
    alternating  even permutations in lexicographic one-line order
    products     lexicographic tuples, first factor most significant
    ZM(m,n,r)    b^i a^j at index i*m + j (see zm_groups)

Permutations act on the right: the product p*q applies p first, then q.
Dihedral groups are named by their order, so D8 has eight elements.

Element sets are Python ints used as bitsets (bit i <-> element i).
"""

import hashlib
import itertools
import re
from math import gcd, prod

import numpy as np

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.config import get_config, resolve_max_order
from finitegroups_contrib.sdegree.exceptions import (
    BurntToast,
    GroupConstructionError,
    OrderCapExceeded,
)

_log = idaeslog.getLogger(__name__)

MAX_PERMUTATION_DEGREE = 6


# ---------------------------------------------------------------------------
# Bitset helpers


def bits_from_mask(mask):
    """Pack a boolean numpy vector into an int bitset."""
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def bits_from_indices(indices):
    bits = 0
    for i in indices:
        bits |= 1 << int(i)
    return bits


def indices_from_bits(bits, order):
    """Sorted numpy array of the element indices set in ``bits``."""
    nbytes = max(1, (order + 7) // 8)
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:order])


def mask_from_bits(bits, order):
    nbytes = max(1, (order + 7) // 8)
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:order].astype(bool)


# ---------------------------------------------------------------------------
# Permutation helpers (points are 0-based internally, 1-based in text)


def perm_to_cycles(perm):
    """Render a one-line permutation in 1-based cycle notation."""
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(parts) if parts else "()"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, degree):
    """Parse cycle notation such as ``(1 2)(3 4)`` or ``(1,2,3)``.

    Returns the permutation as a tuple of 0-based images.
    """
    stripped = text.strip()
    if not stripped:
        raise GroupConstructionError("empty permutation; use '()' for the identity")
    if _CYCLE_RE.sub("", stripped).strip():
        raise GroupConstructionError(f"invalid cycle notation '{text}'")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        try:
            points = [int(t) for t in tokens]
        except ValueError:
            raise GroupConstructionError(f"invalid cycle notation '{text}'")
        cycles.append(points)
    return perm_from_cycles(cycles, degree)


def perm_from_cycles(cycles, degree):
    """Build a one-line permutation from 1-based cycles.

    Cycles are composed left to right, matching the right action used for
    the group tables.
    """
    perm = list(range(degree))
    for cycle in cycles:
        points = [int(p) for p in cycle]
        if any(p < 1 or p > degree for p in points):
            raise GroupConstructionError(
                f"cycle {tuple(points)} moves a point outside 1..{degree}"
            )
        if len(set(points)) != len(points):
            raise GroupConstructionError(f"cycle {tuple(points)} repeats a point")
        step = list(range(degree))
        for a, b in zip(points, points[1:] + points[:1]):
            step[a - 1] = b - 1
        perm = [step[perm[i]] for i in range(degree)]
    return tuple(perm)


def perm_parity(perm):
    """0 for even permutations, 1 for odd ones."""
    seen = [False] * len(perm)
    parity = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        nxt = start
        while not seen[nxt]:
            seen[nxt] = True
            nxt = perm[nxt]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _permutation_table(perms, degree):
    """Cayley table of a list of permutations sorted lexicographically."""
    count = len(perms)
    if degree == 0:
        return np.zeros((1, 1), dtype=np.int64)
    arr = np.array(perms, dtype=np.int64).reshape(count, degree)
    # comp[a, b, i] = arr[b, arr[a, i]]: apply a first, then b
    comp = arr[np.arange(count)[None, :, None], arr[:, None, :]]
    weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    codes = arr @ weights
    if np.any(np.diff(codes) <= 0):
        raise BurntToast("permutations must be distinct and lexicographically sorted")
    mul = np.searchsorted(codes, comp @ weights)
    return mul


# ---------------------------------------------------------------------------
# Group tables


class GroupTable:
    """A finite group given by its Cayley table.

    Args:
        mul: order x order table of element indices, ``mul[x][y] = x*y``.
        label: human-readable descriptor, e.g. ``"S4"`` or ``"S3xZ5"``.
        elements: optional display labels, one per element.
        named: optional map from generator symbols (``"x"``, ``"a"``...) to
            element indices, used by subgroup selectors.
        permutations: optional one-line permutations realising the elements.
        max_order: cap on the order, ``None`` for the configured default.
        check: validate the group axioms on construction.
    """

    def __init__(
        self,
        mul,
        label,
        elements=None,
        named=None,
        permutations=None,
        max_order=None,
        check=True,
    ):
        mul = np.array(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise GroupConstructionError("a Cayley table must be a non-empty square")
        cap = resolve_max_order(max_order)
        if mul.shape[0] > cap:
            raise OrderCapExceeded(mul.shape[0], cap)
        self.order = mul.shape[0]
        self.label = label
        self.identity = 0
        mul.setflags(write=False)
        self.mul = mul
        self.elements = tuple(elements) if elements is not None else None
        self.named = dict(named or {})
        self.permutations = tuple(permutations) if permutations is not None else None
        self._orders = None
        self._conj = None
        self._inv = None
        self._hash = None
        if check:
            self._check_table()
        self.inv = self._inverse_table()

    def __repr__(self):
        return f"GroupTable({self.label}, order={self.order})"

    def __len__(self):
        return self.order

    # -- validation --------------------------------------------------------

    def _check_table(self):
        n = self.order
        mul = self.mul
        if mul.min() < 0 or mul.max() >= n:
            raise GroupConstructionError(f"{self.label}: table entries out of range")
        ident = np.arange(n)
        if not (np.array_equal(mul[0], ident) and np.array_equal(mul[:, 0], ident)):
            raise GroupConstructionError(f"{self.label}: index 0 is not the identity")
        # Latin square: every row and column is a permutation
        srt = np.sort(mul, axis=1)
        if not np.array_equal(srt, np.broadcast_to(ident, (n, n))):
            raise GroupConstructionError(f"{self.label}: a row is not a permutation")
        srt = np.sort(mul, axis=0)
        if not np.array_equal(srt, np.broadcast_to(ident[:, None], (n, n))):
            raise GroupConstructionError(f"{self.label}: a column is not a permutation")
        if not self.is_associative():
            raise GroupConstructionError(
                f"{self.label}: multiplication not associative"
            )

    def is_associative(self, sample_size=20000):
        """Exhaustive check up to the configured order, sampled above it."""
        n = self.order
        mul = self.mul
        if n <= get_config().associativity_check_order:
            left = mul[mul[:, :, None], np.arange(n)[None, None, :]]
            right = mul[np.arange(n)[:, None, None], mul[None, :, :]]
            return bool(np.array_equal(left, right))
        rng = np.random.default_rng(n)
        a, b, c = rng.integers(0, n, size=(3, sample_size))
        return bool(np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]))

    def _inverse_table(self):
        inv = np.argmax(self.mul == self.identity, axis=1)
        if not np.all(self.mul[inv, np.arange(self.order)] == self.identity):
            raise GroupConstructionError(f"{self.label}: inverses are not two-sided")
        inv.setflags(write=False)
        return inv

    # -- element queries ---------------------------------------------------

    def element_name(self, x):
        if self.elements is not None:
            return str(self.elements[x])
        return f"e{x}"

    def element_orders(self):
        """Vector of element orders."""
        if self._orders is None:
            n = self.order
            idx = np.arange(n)
            orders = np.zeros(n, dtype=np.int64)
            power = idx.copy()
            k = 1
            while np.any(orders == 0):
                orders[(power == self.identity) & (orders == 0)] = k
                power = self.mul[power, idx]
                k += 1
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def element_order(self, x):
        return int(self.element_orders()[x])

    def power(self, x, k):
        if k < 0:
            x = int(self.inv[x])
            k = -k
        k %= self.element_order(x)
        result = self.identity
        for _ in range(k):
            result = int(self.mul[result, x])
        return result

    def is_abelian(self):
        return bool(np.array_equal(self.mul, self.mul.T))

    def center_bits(self):
        commuting = self.mul == self.mul.T
        return bits_from_mask(np.all(commuting, axis=1))

    def conjugation_table(self):
        """``conj[g, x] = g^-1 x g`` for all elements g and x."""
        if self._conj is None:
            n = self.order
            left = self.mul[self.inv[:, None], np.arange(n)[None, :]]
            conj = self.mul[left, np.arange(n)[:, None]]
            conj.setflags(write=False)
            self._conj = conj
        return self._conj

    # -- element sets ------------------------------------------------------

    @property
    def whole_bits(self):
        return (1 << self.order) - 1

    def indices(self, bits):
        return indices_from_bits(bits, self.order)

    def closure(self, seed, base_bits=1):
        """Bitset of the subgroup generated by ``seed`` and ``base_bits``.

        ``seed`` is an iterable of element indices. The subgroup is found
        by repeatedly squaring the element set, which terminates because a
        finite set closed under multiplication that contains the identity
        is a subgroup.
        """
        mask = mask_from_bits(base_bits | 1, self.order)
        for x in seed:
            mask[int(x)] = True
        elems = np.flatnonzero(mask)
        while True:
            mask[self.mul[np.ix_(elems, elems)].ravel()] = True
            grown = np.flatnonzero(mask)
            if len(grown) == len(elems):
                return bits_from_mask(mask)
            elems = grown

    def set_product(self, left_bits, right_bits):
        """Bitset of the element set {xy : x in left, y in right}."""
        left = self.indices(left_bits)
        right = self.indices(right_bits)
        mask = np.zeros(self.order, dtype=bool)
        mask[self.mul[np.ix_(left, right)].ravel()] = True
        return bits_from_mask(mask)

    def is_subgroup_bits(self, bits):
        if bits < 0 or bits >> self.order or not bits & 1:
            return False
        elems = self.indices(bits)
        mask = mask_from_bits(bits, self.order)
        return bool(np.all(mask[self.mul[np.ix_(elems, elems)]]))

    def generating_set(self, bits=None):
        """A small generating set, preferring elements of large order."""
        bits = self.whole_bits if bits is None else bits
        orders = self.element_orders()
        members = sorted(self.indices(bits), key=lambda x: (-orders[x], x))
        gens = []
        span = 1
        for x in members:
            if not (span >> int(x)) & 1:
                gens.append(int(x))
                span = self.closure(gens)
                if span == bits:
                    break
        return gens

    # -- identity of the table ---------------------------------------------

    def canonical_bytes(self):
        return np.ascontiguousarray(self.mul, dtype="<i8").tobytes()

    def content_hash(self):
        """sha256 of the canonical Cayley table."""
        if self._hash is None:
            h = hashlib.sha256()
            h.update(str(self.order).encode())
            h.update(self.canonical_bytes())
            self._hash = h.hexdigest()
        return self._hash


# ---------------------------------------------------------------------------
# Named families


def make_cyclic(n, max_order=None):
    """Cyclic group of order ``n`` generated by ``g``."""
    if int(n) < 1:
        raise GroupConstructionError(f"cyclic group order must be >= 1, got {n}")
    n = int(n)
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    names = ["1"] + [("g" if i == 1 else f"g^{i}") for i in range(1, n)]
    named = {"g": 1 % n}
    return GroupTable(mul, f"Z{n}", elements=names, named=named, max_order=max_order)


def make_dihedral(order2n, max_order=None):
    """Dihedral group with ``order2n`` elements, <x, y | x^k = y^2 = 1, yxy = x^-1>."""
    order2n = int(order2n)
    if order2n < 4 or order2n % 2:
        raise GroupConstructionError(
            f"dihedral groups are named by their order, which must be even "
            f"and >= 4; got {order2n}"
        )
    k = order2n // 2
    idx = np.arange(order2n)
    rot, refl = idx % k, idx // k
    sign = 1 - 2 * refl[:, None]
    exp = (rot[:, None] + sign * rot[None, :]) % k
    mul = exp + k * ((refl[:, None] + refl[None, :]) % 2)

    def name(i):
        r, f = i % k, i // k
        xs = "" if r == 0 else ("x" if r == 1 else f"x^{r}")
        ys = "y" if f else ""
        return (xs + ys) or "1"

    names = [name(i) for i in range(order2n)]
    return GroupTable(
        mul,
        f"D{order2n}",
        elements=names,
        named={"x": 1, "y": k},
        max_order=max_order,
    )


def _permutation_group(perms, degree, label, max_order):
    perms = sorted(perms)
    cap = resolve_max_order(max_order)
    if len(perms) > cap:
        raise OrderCapExceeded(len(perms), cap)
    mul = _permutation_table(perms, degree)
    return GroupTable(
        mul,
        label,
        elements=[perm_to_cycles(p) for p in perms],
        permutations=perms,
        max_order=max_order,
    )


def make_symmetric(n, max_order=None):
    n = int(n)
    if not 1 <= n <= MAX_PERMUTATION_DEGREE:
        raise GroupConstructionError(
            f"symmetric degree must be in 1..{MAX_PERMUTATION_DEGREE}, got {n}"
        )
    perms = list(itertools.permutations(range(n)))
    return _permutation_group(perms, n, f"S{n}", max_order)


def make_alternating(n, max_order=None):
    n = int(n)
    if not 2 <= n <= MAX_PERMUTATION_DEGREE:
        raise GroupConstructionError(
            f"alternating degree must be in 2..{MAX_PERMUTATION_DEGREE}, got {n}"
        )
    perms = [p for p in itertools.permutations(range(n)) if perm_parity(p) == 0]
    return _permutation_group(perms, n, f"A{n}", max_order)


def alternating_bits(g):
    """Bitset of the even permutations of a permutation group table."""
    if g.permutations is None:
        raise GroupConstructionError(f"{g.label} is not given as a permutation group")
    return bits_from_indices(
        i for i, p in enumerate(g.permutations) if perm_parity(p) == 0
    )


def from_generators(degree, generators, label=None, max_order=None):
    """Permutation group generated by ``generators``.

    Each generator is either cycle notation text (``"(1 2)(3 4)"``) or a
    list of 1-based cycles (``[(1, 2), (3, 4)]``).
    """
    degree = int(degree)
    if degree < 1:
        raise GroupConstructionError(f"permutation degree must be >= 1, got {degree}")
    gens = []
    for gen in generators:
        if isinstance(gen, str):
            gens.append(parse_cycles(gen, degree))
        else:
            gens.append(perm_from_cycles(gen, degree))
    cap = resolve_max_order(max_order)
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(s[p[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    if len(seen) > cap:
                        raise OrderCapExceeded(len(seen), cap, what="generated group")
                    nxt.append(q)
        frontier = nxt
    if label is None:
        label = "perm({}):{}".format(
            degree, ";".join(perm_to_cycles(g) for g in gens) or "()"
        )
    _log.debug(
        f"Closure of {len(gens)} generators on {degree} points has order {len(seen)}"
    )
    return _permutation_group(list(seen), degree, label, max_order)


def direct_product(factors, max_order=None):
    """Direct product with componentwise multiplication.

    Elements are tuples ordered lexicographically with the first factor
    most significant; the product order is checked against the cap before
    any table is built.
    """
    factors = list(factors)
    if not factors:
        raise GroupConstructionError("a direct product needs at least one factor")
    cap = resolve_max_order(max_order)
    total = prod(f.order for f in factors)
    if total > cap:
        raise OrderCapExceeded(total, cap, what="direct product")
    mul = factors[0].mul
    names = [(x,) for x in range(factors[0].order)]
    for f in factors[1:]:
        n1, n2 = mul.shape[0], f.order
        mul = (mul[:, None, :, None] * n2 + f.mul[None, :, None, :]).reshape(
            n1 * n2, n1 * n2
        )
        names = [t + (y,) for t in names for y in range(n2)]
    labels = [
        "(" + ", ".join(fac.element_name(c) for fac, c in zip(factors, t)) + ")"
        for t in names
    ]
    label = "x".join(f.label for f in factors)
    return GroupTable(mul, label, elements=labels, max_order=max_order)


def product_bits(factors, factor_bits):
    """Bitset of the subgroup prod H_i inside ``direct_product(factors)``."""
    if len(factors) != len(factor_bits):
        raise GroupConstructionError("one subgroup per factor is required")
    combined = [0]
    for f, bits in zip(factors, factor_bits):
        members = [int(i) for i in f.indices(bits)]
        combined = [c * f.order + m for c in combined for m in members]
    return bits_from_indices(combined)


def project_bits(factors, index, bits):
    """Image of an element set of the product under the projection onto a factor."""
    sizes = [f.order for f in factors]
    stride = prod(sizes[index + 1 :])
    total = prod(sizes)
    elems = indices_from_bits(bits, total)
    return bits_from_indices(np.unique((elems // stride) % sizes[index]))


def coprime_orders(factors):
    orders = [f.order for f in factors]
    return all(gcd(a, b) == 1 for a, b in itertools.combinations(orders, 2))


def is_normal_bits(g, bits):
    conj = g.conjugation_table()
    elems = g.indices(bits)
    mask = mask_from_bits(bits, g.order)
    return bool(np.all(mask[conj[:, elems]]))


def quotient_group(g, normal_bits, max_order=None):
    """Quotient G/N with cosets ordered by their smallest element.

    Returns ``(quotient, coset_of)`` where ``coset_of[x]`` is the index of
    the coset containing element x; the identity coset has index 0.
    """
    if not g.is_subgroup_bits(normal_bits):
        raise GroupConstructionError(f"the given set is not a subgroup of {g.label}")
    if not is_normal_bits(g, normal_bits):
        raise GroupConstructionError(
            f"quotients need a normal subgroup; this one is not normal in {g.label}"
        )
    n_elems = g.indices(normal_bits)
    coset_of = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for x in range(g.order):
        if coset_of[x] < 0:
            coset_of[g.mul[x, n_elems]] = len(reps)
            reps.append(x)
    reps = np.array(reps, dtype=np.int64)
    mul = coset_of[g.mul[np.ix_(reps, reps)]]
    names = ["{" + g.element_name(int(r)) + "}N" for r in reps]
    size = len(n_elems)
    quotient = GroupTable(
        mul, f"{g.label}/N{size}", elements=names, max_order=max_order
    )
    coset_of.setflags(write=False)
    return quotient, coset_of


def subgroup_table(g, bits, label=None):
    """The subgroup with element set ``bits`` as a GroupTable of its own.

    Elements keep their relative order, so the identity stays at index 0.
    """
    if not g.is_subgroup_bits(bits):
        raise GroupConstructionError(f"the given set is not a subgroup of {g.label}")
    elems = g.indices(bits)
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    mul = pos[g.mul[np.ix_(elems, elems)]]
    return GroupTable(
        mul,
        label or f"{g.label}[0x{bits:x}]",
        elements=[g.element_name(int(x)) for x in elems],
        check=False,
    )
