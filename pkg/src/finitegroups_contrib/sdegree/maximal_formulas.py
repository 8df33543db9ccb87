#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""sd(G) through the maximal subgroups of G.

Every proper subgroup lies in some maximal subgroup M_0, ..., M_r, so
inclusion-exclusion over the families of maximal subgroups gives

    sd(G) = (1 + sum over families F of (-1)^(|F|-1) |L(X_F)| sd(X_F, G)) / |L(G)|

where X_F is the intersection of the family. Many families share an
intersection, so the sum is collected into one signed coefficient c(X)
per subgroup X. For small r the families are enumerated directly. Above
``max_family_enumeration`` maximal subgroups the coefficients come from
the recursion

    c(X) = [X lies in some maximal subgroup] - sum of c(Y) over Y > X

which follows because the coefficients of all subgroups containing X add
up to 1 - (1 - 1)^m(X), m(X) being the number of maximal subgroups over X.

When every intersection of two or more distinct maximal subgroups has
relative degree 1, only the maximal subgroups themselves contribute and
two shorter forms are available (``sd_via_maximal_shortcut``).
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.commutativity import (
    _lattice,
    pair_degree,
    sd,
)
from finitegroups_contrib.sdegree.config import get_config
from finitegroups_contrib.sdegree.exceptions import (
    BurntToast,
    GroupConstructionError,
    HypothesisViolation,
)
from finitegroups_contrib.sdegree.group_core import (
    direct_product,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_symmetric,
    subgroup_table,
)
from finitegroups_contrib.sdegree.isomorphism import are_isomorphic
from finitegroups_contrib.sdegree.subgroup_lattice import (
    _iter_bits,
    intersections_of_maximals,
    subgroup_name,
)

_log = idaeslog.getLogger(__name__)


# ---------------------------------------------------------------------------
# Signed coefficients


def _maximal_mask(lat):
    mask = 0
    for i in lat.maximal_indices:
        mask |= 1 << i
    return mask


def family_coefficients(lat, method="auto"):
    """Signed family count c(X) for every subgroup index X.

    Args:
        lat: the lattice.
        method: ``"families"`` enumerates every nonempty family of maximal
            subgroups, ``"recursion"`` uses the overgroup recursion,
            ``"auto"`` picks families while their number is small.
    """
    if method == "auto":
        limit = get_config().max_family_enumeration
        method = "families" if len(lat.maximal_indices) <= limit else "recursion"
    coeff = [0] * len(lat)
    if method == "families":
        for family, idx in intersections_of_maximals(lat).items():
            coeff[idx] += 1 if len(family) % 2 else -1
    elif method == "recursion":
        maximal = _maximal_mask(lat)
        for x in range(len(lat) - 1, -1, -1):
            covered = 1 if lat.above[x] & maximal else 0
            coeff[x] = covered - sum(
                coeff[y] for y in _iter_bits(lat.above[x] & ~(1 << x))
            )
    else:
        raise GroupConstructionError(
            f"method must be 'auto', 'families' or 'recursion', got '{method}'"
        )
    _log.debug(
        f"Family coefficients of {lat.group.label} by {method} over "
        f"{len(lat.maximal_indices)} maximal subgroups"
    )
    return coeff


def maximal_intersections(lat):
    """Map each subgroup that is an intersection of maximal subgroups to m(X).

    X is such an intersection exactly when it equals the intersection of
    all maximal subgroups containing it.
    """
    maximal = _maximal_mask(lat)
    result = {}
    for x in range(len(lat)):
        over = lat.above[x] & maximal
        if not over:
            continue
        meet = lat.top
        for m in _iter_bits(over):
            meet = lat.meet(meet, m)
        if meet == x:
            result[x] = over.bit_count()
    return result


def sd_via_maximal(g, method="auto"):
    """sd(G) from the relative degrees of the intersections of maximal subgroups."""
    lat = _lattice(g)
    coeff = family_coefficients(lat, method=method)
    total = Fraction(1)
    for x, c in enumerate(coeff):
        if c:
            total += c * lat.lattice_size(x) * pair_degree(lat, x, lat.top)
    return total / len(lat)


# ---------------------------------------------------------------------------
# Shortcut forms


def hypothesis_violations(g):
    """Intersections of two or more maximal subgroups with sd(X, G) != 1."""
    lat = _lattice(g)
    return [
        x
        for x, count in maximal_intersections(lat).items()
        if count >= 2 and pair_degree(lat, x, lat.top) != 1
    ]


def hypothesis_holds(g):
    return not hypothesis_violations(g)


SHORTCUT_FORMS = ("relative", "pairwise")


def sd_via_maximal_shortcut(g, form="relative"):
    """sd(G) from the maximal subgroups alone.

    relative: 1 - sum |L(M_i)| (1 - sd(M_i, G)) / |L(G)|
    pairwise: 1 - sum over i, j of |L(M_i)||L(M_j)| (1 - sd(M_i, M_j)) / |L(G)|^2

    Raises:
        HypothesisViolation: when some intersection of at least two maximal
            subgroups has relative degree below 1.
    """
    if form not in SHORTCUT_FORMS:
        raise GroupConstructionError(
            f"form must be 'relative' or 'pairwise', got '{form}'"
        )
    lat = _lattice(g)
    witnesses = hypothesis_violations(lat)
    if witnesses:
        names = ", ".join(subgroup_name(lat, x) for x in witnesses[:5])
        raise HypothesisViolation(
            f"{lat.group.label}: intersections of maximal subgroups with relative "
            f"degree below 1: {names}",
            witnesses=witnesses,
        )
    maxima = lat.maximal_indices
    size = len(lat)
    if form == "relative":
        loss = sum(
            lat.lattice_size(m) * (1 - pair_degree(lat, m, lat.top)) for m in maxima
        )
        return 1 - Fraction(loss) / size
    loss = sum(
        lat.lattice_size(a) * lat.lattice_size(b) * (1 - pair_degree(lat, a, b))
        for a in maxima
        for b in maxima
    )
    return 1 - Fraction(loss) / (size * size)


# ---------------------------------------------------------------------------
# Worked comparison for S4

PRINTED_DEGREES = {
    "Z2": Fraction(2, 3),
    "Z3": Fraction(7, 12),
    "Z2xZ2": Fraction(44, 75),
    "S3": Fraction(4, 9),
    "D8": Fraction(37, 75),
    "A4": Fraction(151, 300),
}
PRINTED_COEFFICIENTS = {
    "1": 13,
    "Z2": -24,
    "Z3": -8,
    "Z2xZ2": -18,
    "S3": 24,
    "D8": 30,
    "A4": 10,
}
PRINTED_SD = Fraction(1841, 4500)

_REFERENCE_TYPES = (
    ("1", lambda: make_cyclic(1)),
    ("Z2", lambda: make_cyclic(2)),
    ("Z3", lambda: make_cyclic(3)),
    ("Z4", lambda: make_cyclic(4)),
    ("Z2xZ2", lambda: direct_product([make_cyclic(2), make_cyclic(2)])),
    ("S3", lambda: make_symmetric(3)),
    ("D8", lambda: make_dihedral(8)),
    ("A4", lambda: make_alternating(4)),
    ("S4", lambda: make_symmetric(4)),
)


def isomorphism_type(g):
    """Short name of a small group from a fixed list, else ``order n``."""
    for name, build in _REFERENCE_TYPES:
        ref = build()
        if ref.order == g.order and are_isomorphic(ref, g):
            return name
    return f"order {g.order}"


@dataclass(frozen=True)
class ClassRow:
    """One conjugacy class of intersections of maximal subgroups."""

    class_id: int
    type: str
    representative: int
    members: int
    normal: bool
    coefficient: int
    weight: int
    value: Fraction


@dataclass(frozen=True)
class TypeRow:
    """Classes of one isomorphism type, against the printed values if any."""

    type: str
    coefficient: int
    values: tuple
    printed_coefficient: Optional[int] = None
    printed_value: Optional[Fraction] = None
    printed_value_integral: Optional[bool] = None

    @property
    def coefficient_match(self):
        if self.printed_coefficient is None:
            return None
        return self.coefficient == self.printed_coefficient

    @property
    def value_match(self):
        if self.printed_value is None:
            return None
        return self.printed_value in self.values


@dataclass(frozen=True)
class S4Comparison:
    label: str
    lattice_size: int
    classes: tuple
    types: tuple
    constant: int
    sd_direct: Fraction
    sd_maximal: Fraction
    printed: bool
    printed_constant: Optional[int] = None
    printed_sd: Optional[Fraction] = None
    printed_sd_integral: Optional[bool] = None
    printed_coefficient_sum: Optional[int] = None
    printed_formula_value: Optional[Fraction] = None

    @property
    def identity_holds(self):
        return self.sd_direct == self.sd_maximal

    @property
    def coefficient_sum(self):
        return self.constant + sum(t.coefficient for t in self.types)

    @property
    def printed_consistent(self):
        """False when the printed values cannot all be right."""
        if not self.printed:
            return None
        return bool(
            self.printed_sd_integral
            and self.printed_coefficient_sum == self.lattice_size
            and all(t.printed_value_integral is not False for t in self.types)
        )


def _integral(value, *sizes):
    total = value
    for s in sizes:
        total *= s
    return total.denominator == 1


def s4_comparison_report(g=None):
    """sd(G) directly and through maximal subgroups, grouped by type.

    Each conjugacy class of subgroups that is an intersection of maximal
    subgroups gets one row. Rows are then grouped by isomorphism type,
    with the weight c(X)|L(X)| summed per type; the trivial subgroup is
    folded into the constant term. When ``g`` is isomorphic to S4 the
    printed values of the classical worked example are attached for
    comparison. Computed values are never replaced by printed ones.
    """
    if g is None:
        g = make_symmetric(4)
    lat = _lattice(g)
    group = lat.group
    coeff = family_coefficients(lat)
    size = len(lat)
    intersections = maximal_intersections(lat)

    rows = []
    for cid, members in enumerate(lat.conjugacy_classes):
        rep = members[0]
        if rep not in intersections or rep == lat.trivial:
            continue
        c = sum(coeff[x] for x in members)
        rows.append(
            ClassRow(
                class_id=cid,
                type=isomorphism_type(
                    subgroup_table(group, lat.subgroups[rep].members)
                ),
                representative=rep,
                members=len(members),
                normal=len(members) == 1,
                coefficient=c,
                weight=c * lat.lattice_size(rep),
                value=pair_degree(lat, rep, lat.top),
            )
        )

    printed = group.order == 24 and are_isomorphic(group, make_symmetric(4))
    grouped = {}
    for row in rows:
        grouped.setdefault(row.type, []).append(row)
    types = []
    for name, members in grouped.items():
        printed_value = PRINTED_DEGREES.get(name) if printed else None
        rep_size = lat.lattice_size(members[0].representative)
        types.append(
            TypeRow(
                type=name,
                coefficient=sum(r.weight for r in members),
                values=tuple(sorted({r.value for r in members})),
                printed_coefficient=PRINTED_COEFFICIENTS.get(name) if printed else None,
                printed_value=printed_value,
                printed_value_integral=(
                    None if printed_value is None
                    else _integral(printed_value, rep_size, size)
                ),
            )
        )

    direct = sd(lat).value
    via_maximal = sd_via_maximal(lat)
    report = S4Comparison(
        label=group.label,
        lattice_size=size,
        classes=tuple(rows),
        types=tuple(types),
        constant=1 + coeff[lat.trivial],
        sd_direct=direct,
        sd_maximal=via_maximal,
        printed=printed,
    )
    if printed:
        formula = Fraction(PRINTED_COEFFICIENTS["1"])
        for name, value in PRINTED_DEGREES.items():
            formula += PRINTED_COEFFICIENTS[name] * value
        report = replace(
            report,
            printed_constant=PRINTED_COEFFICIENTS["1"],
            printed_sd=PRINTED_SD,
            printed_sd_integral=_integral(PRINTED_SD, size, size),
            printed_coefficient_sum=sum(PRINTED_COEFFICIENTS.values()),
            printed_formula_value=formula / size,
        )
    if report.coefficient_sum != size:
        raise BurntToast(
            f"{group.label}: grouped coefficients sum to {report.coefficient_sum}, "
            f"expected {size}"
        )
    _log.info(
        f"{group.label}: sd = {direct}, through maximal subgroups {via_maximal}"
    )
    return report
