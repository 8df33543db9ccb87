#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Group expressions and subgroup selectors.

Grammar (whitespace between tokens is ignored)::

    Expr  := Atom ("x" Atom)*
    Atom  := "Z" int | "D" int | "S" int | "A" int
           | "ZM(" int "," int "," int ")"
           | "perm(" int "):" Gen (";" Gen)*
    Gen   := Cycle+
    Cycle := "(" int ((" " | ",") int)* ")" | "()"

Dihedral groups are named by their order: ``D8`` has eight elements.
``str`` of a parsed expression parses back to an equal expression.

A subgroup selector picks one subgroup of a group:

    idx:N           lattice index N (canonical order)
    class:C[.R]     member R (default 0) of conjugacy class C
    order:K         the only subgroup of order K
    gens:w1,w2      subgroup generated by elements, <w1,w2> is a shorthand
    zm:m1,n1,s      triple-indexed subgroup of a ZM-group
    prod:s1|s2      product of one selector per direct factor
    trivial, whole, alternating, center

Elements in ``gens`` are display names (``x^2y``), cycle notation for
permutation groups (``(1 2)(3 4)``) or words over the named generators
(``xy``, ``b^2a``, ``x^-1``).
"""

import difflib
import re
from dataclasses import dataclass
from math import factorial, prod

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.config import resolve_max_order
from finitegroups_contrib.sdegree.exceptions import (
    ConfigurationError,
    GroupConstructionError,
    GroupExprSyntaxError,
    InvalidZMParameters,
    OrderCapExceeded,
    SubgroupSelectorError,
)
from finitegroups_contrib.sdegree.group_core import (
    MAX_PERMUTATION_DEGREE,
    alternating_bits,
    direct_product,
    from_generators,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_symmetric,
    parse_cycles,
    product_bits,
)
from finitegroups_contrib.sdegree.lattice_cache import lattice_of
from finitegroups_contrib.sdegree.zm_groups import (
    ZMTriple,
    build_zm,
    triple_to_subgroup,
    validate_zm,
)

_log = idaeslog.getLogger(__name__)

_PREFIX = {"cyclic": "Z", "dihedral": "D", "symmetric": "S", "alternating": "A"}
_FAMILY = {v: k for k, v in _PREFIX.items()}


@dataclass(frozen=True)
class Named:
    family: str
    param: int

    def __str__(self):
        return f"{_PREFIX[self.family]}{self.param}"


@dataclass(frozen=True)
class ZM:
    m: int
    n: int
    r: int

    def __str__(self):
        return f"ZM({self.m},{self.n},{self.r})"


@dataclass(frozen=True)
class PermGroup:
    """Permutation group on 1..degree; each generator is a tuple of cycles."""

    degree: int
    generators: tuple

    def __str__(self):
        gens = []
        for cycles in self.generators:
            gens.append(
                "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles) or "()"
            )
        return f"perm({self.degree}):" + ";".join(gens)


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple

    def __str__(self):
        return "x".join(str(f) for f in self.factors)


# ---------------------------------------------------------------------------
# Parsing

_WS = re.compile(r"\s*")
_ZM_RE = re.compile(r"ZM\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_PERM_RE = re.compile(r"perm\s*\(\s*(\d+)\s*\)\s*:")
_NAMED_RE = re.compile(r"([ZDSA])\s*(\d+)")
_CYCLE_RE = re.compile(r"\(([\d\s,]*)\)")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise GroupExprSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def at_end(self):
        self.skip()
        return self.pos >= len(self.text)

    def parse(self):
        if self.at_end():
            self.error("empty group expression")
        factors = [self.atom()]
        while not self.at_end():
            if self.text[self.pos] != "x":
                self.error("expected 'x' or end of input")
            self.pos += 1
            factors.append(self.atom())
        return factors[0] if len(factors) == 1 else DirectProduct(tuple(factors))

    def atom(self):
        if self.at_end():
            self.error("expected a group after 'x'")
        start = self.pos
        m = _ZM_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            args = tuple(int(v) for v in m.groups())
            try:
                validate_zm(*args)
            except InvalidZMParameters as err:
                self.error("invalid ZM parameters: " + "; ".join(err.violations), start)
            return ZM(*args)
        m = _PERM_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            degree = int(m.group(1))
            if not 1 <= degree <= MAX_PERMUTATION_DEGREE:
                self.error(
                    f"permutation degree must be in 1..{MAX_PERMUTATION_DEGREE}",
                    m.start(1),
                )
            return PermGroup(degree, self.generators(degree))
        m = _NAMED_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            family = _FAMILY[m.group(1)]
            param = int(m.group(2))
            self.check_param(family, param, m.start(2))
            return Named(family, param)
        self.error("unknown group family (expected Z, D, S, A, ZM(...) or perm(...))")

    def check_param(self, family, param, pos):
        if family == "cyclic" and param < 1:
            self.error("cyclic order must be >= 1", pos)
        if family == "dihedral" and (param < 4 or param % 2):
            self.error(
                "dihedral groups are named by their order, which must be even and >= 4",
                pos,
            )
        if family == "symmetric" and not 1 <= param <= MAX_PERMUTATION_DEGREE:
            self.error(
                f"symmetric degree must be in 1..{MAX_PERMUTATION_DEGREE}", pos
            )
        if family == "alternating" and not 2 <= param <= MAX_PERMUTATION_DEGREE:
            self.error(
                f"alternating degree must be in 2..{MAX_PERMUTATION_DEGREE}", pos
            )

    def generators(self, degree):
        gens = [self.cycles(degree)]
        while True:
            self.skip()
            if self.pos < len(self.text) and self.text[self.pos] == ";":
                self.pos += 1
                gens.append(self.cycles(degree))
            else:
                return tuple(gens)

    def cycles(self, degree):
        self.skip()
        cycles = []
        matched = 0
        while True:
            m = _CYCLE_RE.match(self.text, self.pos)
            if not m:
                break
            matched += 1
            points = [int(t) for t in re.split(r"[\s,]+", m.group(1).strip()) if t]
            if any(p < 1 or p > degree for p in points):
                self.error(f"cycle moves a point outside 1..{degree}", m.start(1))
            if len(set(points)) != len(points):
                self.error("cycle repeats a point", m.start(1))
            if len(points) > 1:
                cycles.append(tuple(points))
            self.pos = m.end()
            self.skip()
        if not matched:
            self.error("expected cycles such as (1 2 3) or ()")
        return tuple(cycles)


def parse_group_expr(text):
    """Parse a group expression.

    Raises:
        GroupExprSyntaxError: with the offending position.
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Building


def expected_order(expr):
    """Order of the group an expression denotes, or None until it is built."""
    if isinstance(expr, Named):
        n = expr.param
        return {
            "cyclic": n,
            "dihedral": n,
            "symmetric": factorial(n),
            "alternating": factorial(n) // 2,
        }[expr.family]
    if isinstance(expr, ZM):
        return expr.m * expr.n
    if isinstance(expr, DirectProduct):
        orders = [expected_order(f) for f in expr.factors]
        return None if None in orders else prod(orders)
    return None


_BUILT = {}


def build_group(expr, max_order=None):
    """GroupTable for an expression (or expression text).

    Tables are kept per expression and cap, so repeated requests share one
    table and therefore one lattice.
    """
    if isinstance(expr, str):
        expr = parse_group_expr(expr)
    cap = resolve_max_order(max_order)
    key = (str(expr), cap)
    if key in _BUILT:
        return _BUILT[key]
    order = expected_order(expr)
    if order is not None and order > cap:
        raise OrderCapExceeded(order, cap)
    if isinstance(expr, Named):
        make = {
            "cyclic": make_cyclic,
            "dihedral": make_dihedral,
            "symmetric": make_symmetric,
            "alternating": make_alternating,
        }[expr.family]
        group = make(expr.param, max_order=cap)
    elif isinstance(expr, ZM):
        group = build_zm(validate_zm(expr.m, expr.n, expr.r), max_order=cap)
    elif isinstance(expr, PermGroup):
        group = from_generators(
            expr.degree,
            [list(c) for c in expr.generators],
            label=str(expr),
            max_order=cap,
        )
    elif isinstance(expr, DirectProduct):
        group = direct_product(
            [build_group(f, cap) for f in expr.factors], max_order=cap
        )
    else:
        raise GroupConstructionError(f"not a group expression: {expr!r}")
    _BUILT[key] = group
    _log.debug(f"Built {group.label} of order {group.order}")
    return group


def expr_of(group):
    """Re-parse a group's label, or None when it is not an expression."""
    try:
        return parse_group_expr(group.label)
    except GroupExprSyntaxError:
        return None


# ---------------------------------------------------------------------------
# Subgroup selectors

_KEYWORDS = ("trivial", "whole", "alternating", "center")
_PREFIXES = ("idx:", "class:", "order:", "gens:", "zm:", "prod:")
_WORD_RE = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")


def _split_top(text, sep):
    """Split on ``sep`` outside parentheses and angle brackets."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "(<":
            depth += 1
        elif ch in ")>":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts]


def _near(word, candidates, n=5):
    return difflib.get_close_matches(word, list(candidates), n=n, cutoff=0.5)


def resolve_element(group, token):
    """Element index from a display name, cycle notation or generator word."""
    token = token.strip()
    names = [group.element_name(x) for x in range(group.order)]
    if token in names:
        return names.index(token)
    if token in ("1", "e", "()"):
        return group.identity
    if token.startswith("(") and group.permutations is not None:
        degree = len(group.permutations[0])
        try:
            perm = parse_cycles(token, degree)
        except GroupConstructionError as err:
            raise SubgroupSelectorError(token, str(err))
        if perm in group.permutations:
            return group.permutations.index(perm)
        raise SubgroupSelectorError(token, f"is not an element of {group.label}")
    compact = re.sub(r"\s+", "", token)
    pos = 0
    element = group.identity
    while pos < len(compact):
        m = _WORD_RE.match(compact, pos)
        if not m or m.group(1) not in group.named:
            raise SubgroupSelectorError(
                token,
                f"is not an element of {group.label} "
                f"(named generators: {', '.join(sorted(group.named)) or 'none'})",
                _near(token, names),
            )
        exponent = int(m.group(2)) if m.group(2) else 1
        power = group.power(group.named[m.group(1)], exponent)
        element = int(group.mul[element, power])
        pos = m.end()
    return element


def _zm_params(group, expr):
    expr = expr if expr is not None else expr_of(group)
    if not isinstance(expr, ZM):
        return None
    return validate_zm(expr.m, expr.n, expr.r)


def resolve_selector(lat, text, expr=None):
    """Lattice index of the subgroup a selector names.

    Args:
        lat: lattice of the target group.
        text: the selector.
        expr: the group's expression, needed by ``zm:`` and ``prod:`` when
            the group label is not itself an expression.

    Raises:
        SubgroupSelectorError: when the selector names no single subgroup.
    """
    group = lat.group
    sel = text.strip()
    count = len(lat)
    if sel in ("trivial", "1"):
        return lat.trivial
    if sel in ("whole", "G"):
        return lat.top
    if sel == "alternating":
        try:
            return lat.index_of(alternating_bits(group))
        except GroupConstructionError as err:
            raise SubgroupSelectorError(sel, str(err))
    if sel == "center":
        return lat.index_of(group.center_bits())
    if sel.startswith("idx:"):
        try:
            i = int(sel[4:])
        except ValueError:
            raise SubgroupSelectorError(sel, "needs an integer index")
        if not 0 <= i < count:
            raise SubgroupSelectorError(
                sel, f"is out of range; valid indices are 0..{count - 1}"
            )
        return i
    if sel.startswith("class:"):
        body = sel[6:]
        try:
            cid, _, rank = body.partition(".")
            cid, rank = int(cid), int(rank or 0)
        except ValueError:
            raise SubgroupSelectorError(sel, "must look like class:C or class:C.R")
        classes = lat.conjugacy_classes
        if not 0 <= cid < len(classes):
            raise SubgroupSelectorError(
                sel, f"is out of range; valid classes are 0..{len(classes) - 1}"
            )
        if not 0 <= rank < len(classes[cid]):
            raise SubgroupSelectorError(
                sel, f"class {cid} has {len(classes[cid])} members"
            )
        return classes[cid][rank]
    if sel.startswith("order:"):
        try:
            k = int(sel[6:])
        except ValueError:
            raise SubgroupSelectorError(sel, "needs an integer order")
        hits = [i for i, s in enumerate(lat.sizes) if s == k]
        if len(hits) != 1:
            raise SubgroupSelectorError(
                sel,
                f"matches {len(hits)} subgroups",
                [f"idx:{i}" for i in hits[:8]],
            )
        return hits[0]
    if sel.startswith("gens:") or (sel.startswith("<") and sel.endswith(">")):
        body = sel[5:] if sel.startswith("gens:") else sel[1:-1]
        elems = [resolve_element(group, w) for w in _split_top(body, ",") if w]
        return lat.index_of(group.closure(elems))
    if sel.startswith("zm:"):
        params = _zm_params(group, expr)
        if params is None:
            raise SubgroupSelectorError(sel, f"needs a ZM group, not {group.label}")
        try:
            m1, n1, s = (int(v) for v in sel[3:].split(","))
            h = triple_to_subgroup(params, ZMTriple(m1, n1, s), group)
        except (ValueError, GroupConstructionError) as err:
            raise SubgroupSelectorError(sel, f"is not a valid triple: {err}")
        return lat.index_of(h)
    if sel.startswith("prod:"):
        expr = expr if expr is not None else expr_of(group)
        if not isinstance(expr, DirectProduct):
            raise SubgroupSelectorError(
                sel, f"needs a direct product, not {group.label}"
            )
        parts = _split_top(sel[5:], "|")
        if len(parts) != len(expr.factors):
            raise SubgroupSelectorError(
                sel, f"needs {len(expr.factors)} selectors separated by '|'"
            )
        factors = [build_group(f) for f in expr.factors]
        bits = []
        for f_expr, factor, part in zip(expr.factors, factors, parts):
            flat = lattice_of(factor)
            bits.append(flat.subgroups[resolve_selector(flat, part, f_expr)].members)
        return lat.index_of(product_bits(factors, bits))
    raise SubgroupSelectorError(
        sel,
        "is not a recognised selector",
        _near(sel, list(_KEYWORDS) + [p + "..." for p in _PREFIXES]),
    )


def select_subgroup(lat, text, expr=None):
    """Like ``resolve_selector`` but returns the ``SubgroupSet``."""
    try:
        return lat.subgroups[resolve_selector(lat, text, expr)]
    except SubgroupSelectorError:
        raise
    except ConfigurationError as err:
        raise SubgroupSelectorError(text, str(err))
