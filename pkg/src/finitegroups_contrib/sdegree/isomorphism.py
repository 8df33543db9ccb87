#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Isomorphism testing for small group tables.

Cheap invariants (order, abelianness, center size, element-order
histogram) refute most non-isomorphic pairs. The remaining pairs are
decided by backtracking over images of a small generating set: a partial
assignment is extended along right multiplication by the chosen
generators, and a conflict or a collision of images prunes the branch.
"""

from collections import Counter

import numpy as np

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.config import get_config
from finitegroups_contrib.sdegree.exceptions import IsomorphismBoundExceeded

_log = idaeslog.getLogger(__name__)


def invariants(g):
    """Order statistics that every isomorphism preserves."""
    return (
        g.order,
        g.is_abelian(),
        bin(g.center_bits()).count("1"),
        tuple(sorted(Counter(g.element_orders().tolist()).items())),
    )


def _extend(mul_a, mul_b, gens, images, phi, used):
    """Propagate ``phi`` along right multiplication by the assigned generators.

    Returns False on a conflict; ``phi`` and ``used`` are updated in place.
    """
    frontier = np.flatnonzero(phi >= 0).tolist()
    while frontier:
        nxt = []
        for x in frontier:
            px = phi[x]
            for g, h in zip(gens, images):
                y = int(mul_a[x, g])
                py = int(mul_b[px, h])
                if phi[y] < 0:
                    if used[py]:
                        return False
                    phi[y] = py
                    used[py] = True
                    nxt.append(y)
                elif phi[y] != py:
                    return False
        frontier = nxt
    return True


def find_isomorphism(a, b, max_order=None):
    """Return an isomorphism a -> b as an index array, or None.

    Raises:
        IsomorphismBoundExceeded: if either order is above the bound and
            the invariants do not already refute isomorphism.
    """
    bound = max_order if max_order is not None else get_config().isomorphism_max_order
    if invariants(a) != invariants(b):
        return None
    if a.order > bound:
        raise IsomorphismBoundExceeded(
            f"isomorphism of {a.label} and {b.label} (order {a.order}) is only "
            f"decided up to order {bound}; invariants agree"
        )
    gens = a.generating_set()
    ord_a = a.element_orders()
    ord_b = b.element_orders()
    candidates = [np.flatnonzero(ord_b == ord_a[g]).tolist() for g in gens]

    def search(depth, phi, used):
        if depth == len(gens):
            return phi
        for h in candidates[depth]:
            trial_phi = phi.copy()
            trial_used = used.copy()
            images = [*chosen[:depth], h]
            if _extend(a.mul, b.mul, gens[: depth + 1], images, trial_phi, trial_used):
                chosen[depth] = h
                found = search(depth + 1, trial_phi, trial_used)
                if found is not None:
                    return found
        return None

    chosen = [None] * len(gens)
    phi = np.full(a.order, -1, dtype=np.int64)
    used = np.zeros(b.order, dtype=bool)
    phi[a.identity] = b.identity
    used[b.identity] = True
    result = search(0, phi, used)
    if result is not None and np.any(result < 0):
        result = None
    _log.debug(
        f"Isomorphism {a.label} -> {b.label}: {'found' if result is not None else 'none'}"
    )
    return result


def are_isomorphic(a, b, max_order=None):
    return find_isomorphism(a, b, max_order=max_order) is not None


def is_homomorphism(a, b, phi):
    """True when ``phi[x*y] == phi[x]*phi[y]`` for all x, y."""
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[a.mul], b.mul[np.ix_(phi, phi)]))
