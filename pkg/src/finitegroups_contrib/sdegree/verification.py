#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Verification suites over a corpus of groups.

Each suite checks one family of exact identities on every corpus group and
yields one ``CheckResult`` per (group, suite). A failing result carries the
witnessing subgroup(s) by name. Errors such as an order cap are recorded
on the result and never abort the run.

Suites:

    lattice           fast enumeration agrees with the brute-force oracle
    conjugacy         conjugate subgroups share one relative degree
    coprime-product   coprime direct products factor the relative degree
    sylow             nilpotent groups factor through their Sylow subgroups
    maximal           sd(G) through maximal subgroups equals sd(G)
    maximal-shortcut  shortcut forms when maximal intersections have degree 1
    bounds            the four lower bounds, with equality for N = 1
    sd-one            sd(H, G) = 1 iff every X <= H is permutable,
                      iff every X <= H is modular and subnormal
    zm-bijection      triples index the subgroups of a ZM-group bijectively
    nary              n-ary degree against the unary and binary ones
"""

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree.commutativity import (
    decompose,
    lower_bounds,
    pair_degree,
    sd,
    sd_nary,
    sd_pair,
    verify_coprime_product,
    verify_sylow_factorisation,
)
from finitegroups_contrib.sdegree.config import configure, get_config, session_overrides
from finitegroups_contrib.sdegree.exceptions import (
    ConfigurationError,
    HypothesisViolation,
)
from finitegroups_contrib.sdegree.group_core import coprime_orders
from finitegroups_contrib.sdegree.group_expr import (
    ZM,
    DirectProduct,
    build_group,
    parse_group_expr,
)
from finitegroups_contrib.sdegree.lattice_cache import lattice_of
from finitegroups_contrib.sdegree.maximal_formulas import (
    SHORTCUT_FORMS,
    family_coefficients,
    hypothesis_violations,
    sd_via_maximal,
    sd_via_maximal_shortcut,
)
from finitegroups_contrib.sdegree.subgroup_lattice import (
    _iter_bits,
    is_modular_element,
    is_permutable,
    is_subnormal,
    oracle_enumerate,
    subgroup_name,
)
from finitegroups_contrib.sdegree.zm_groups import (
    structure_checks,
    valid_zm_params,
    validate_zm,
    verify_bijection,
)

_log = idaeslog.getLogger(__name__)

SUITES = (
    "lattice",
    "conjugacy",
    "coprime-product",
    "sylow",
    "maximal",
    "maximal-shortcut",
    "bounds",
    "sd-one",
    "zm-bijection",
    "nary",
)

STATUSES = ("pass", "fail", "skip", "error")

DEFAULT_CORPUS = (
    tuple(f"Z{n}" for n in range(1, 25))
    + tuple(f"D{n}" for n in range(4, 25, 2))
    + (
        "S3",
        "S4",
        "S5",
        "A4",
        "A5",
        "Z2xZ2",
        "Z2xZ2xZ2",
        "S3xZ5",
        "Z2xZ9",
        "ZM(3,2,2)",
        "ZM(5,4,2)",
        "ZM(7,3,2)",
        "ZM(9,2,8)",
    )
)

# pairs drawn per group by the nary suite
NARY_PAIRS = 20
NARY_TRIPLES = 5


@dataclass(frozen=True)
class CheckResult:
    group: str
    suite: str
    status: str
    checked: int
    witness: str = ""


@dataclass(frozen=True)
class VerifyReport:
    suites: tuple
    corpus: tuple
    results: tuple

    @property
    def ok(self):
        return all(r.status in ("pass", "skip") for r in self.results)

    def failures(self):
        return [r for r in self.results if r.status in ("fail", "error")]

    def counts(self):
        counts = dict.fromkeys(STATUSES, 0)
        for r in self.results:
            counts[r.status] += 1
        return counts


def expand_suites(names):
    """Validate suite names; ``all`` stands for every suite, in order."""
    names = list(names) or ["all"]
    if "all" in names:
        return SUITES
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigurationError(
            f"unknown verification suite(s) {', '.join(unknown)}; "
            f"choose from {', '.join(SUITES)} or all"
        )
    return tuple(s for s in SUITES if s in names)


def load_corpus(texts=None):
    """Parse corpus entries, dropping invalid ones with a warning.

    Entries are returned in their canonical printed form, in input order.
    """
    texts = DEFAULT_CORPUS if texts is None else texts
    corpus = []
    for text in texts:
        try:
            corpus.append(str(parse_group_expr(text)))
        except ConfigurationError as err:
            _log.warning(f"Dropped corpus entry '{text}': {err}")
    return tuple(corpus)


def zm_corpus(max_mn):
    """Every valid ZM(m, n, r) with m n <= max_mn, as expressions."""
    return tuple(str(ZM(p.m, p.n, p.r)) for p in valid_zm_params(max_mn))


# ---------------------------------------------------------------------------
# Suites. Each takes (expr, group, lattice) and returns (status, checked, witness).


def _lattice_suite(expr, group, lat):
    cap = get_config().oracle_max_order
    if group.order > cap:
        return "skip", 0, f"order {group.order} above the oracle cap {cap}"
    check = oracle_enumerate(group, max_order=cap)
    fast = [s.members for s in lat.subgroups]
    slow = [s.members for s in check.subgroups]
    if fast != slow:
        extra = set(fast) ^ set(slow)
        return "fail", len(slow), (
            f"{len(fast)} enumerated against {len(slow)} from the oracle, "
            f"{len(extra)} differ"
        )
    return "pass", len(fast), ""


def _conjugacy_suite(expr, group, lat):
    for cid, members in enumerate(lat.conjugacy_classes):
        values = {i: pair_degree(lat, i, lat.top) for i in members}
        first = values[members[0]]
        for i, v in values.items():
            if v != first:
                return "fail", len(lat), (
                    f"class {cid}: {subgroup_name(lat, members[0])} has {first}, "
                    f"conjugate {subgroup_name(lat, i)} has {v}"
                )
    return "pass", len(lat), ""


def _coprime_product_suite(expr, group, lat):
    if not isinstance(expr, DirectProduct):
        return "skip", 0, "not a direct product"
    factors = [build_group(f) for f in expr.factors]
    if not coprime_orders(factors):
        return "skip", 0, "factor orders are not pairwise coprime"
    for i, h in enumerate(lat.subgroups):
        parts = decompose(factors, h)
        result = verify_coprime_product(factors, parts, product=group)
        if not result.holds:
            return "fail", i + 1, (
                f"{subgroup_name(lat, i)}: direct {result.direct}, "
                f"product {result.product}"
            )
    return "pass", len(lat), ""


def _sylow_suite(expr, group, lat):
    rows = verify_sylow_factorisation(lat)
    if rows is None:
        return "skip", 0, "not nilpotent"
    for row in rows:
        if not row.holds:
            return "fail", len(rows), (
                f"{subgroup_name(lat, row.subgroup)}: {row.value} != {row.product}"
            )
    return "pass", len(rows), ""


def _maximal_suite(expr, group, lat):
    direct = sd(lat).value
    via = sd_via_maximal(lat)
    if direct != via:
        return "fail", 1, f"sd = {direct}, through maximal subgroups {via}"
    checked = 1
    if len(lat.maximal_indices) <= get_config().max_family_enumeration:
        fam = family_coefficients(lat, method="families")
        rec = family_coefficients(lat, method="recursion")
        checked += len(lat)
        for x, (a, b) in enumerate(zip(fam, rec)):
            if a != b:
                return "fail", checked, (
                    f"coefficient of {subgroup_name(lat, x)}: families {a}, recursion {b}"
                )
    return "pass", checked, ""


def _maximal_shortcut_suite(expr, group, lat):
    witnesses = hypothesis_violations(lat)
    if witnesses:
        return "skip", 0, "hypothesis fails at " + subgroup_name(lat, witnesses[0])
    direct = sd(lat).value
    for checked, form in enumerate(SHORTCUT_FORMS, start=1):
        try:
            value = sd_via_maximal_shortcut(lat, form=form)
        except HypothesisViolation as err:
            return "fail", checked, str(err)
        if value != direct:
            return "fail", checked, f"{form} form gives {value}, sd = {direct}"
    return "pass", len(SHORTCUT_FORMS), ""


def _bounds_suite(expr, group, lat):
    checked = 0
    for i, h in enumerate(lat.subgroups):
        report = lower_bounds(h, lat)
        checked += len(report.checks)
        for c in report.failures():
            return "fail", checked, (
                f"bound ({c.name}) {c.bound} exceeds sd({subgroup_name(lat, i)}, G) "
                f"= {report.value}"
            )
        for c in report.checks:
            if (
                c.name == "d"
                and c.normal_subgroup == lat.trivial
                and c.bound != report.value
            ):
                return "fail", checked, (
                    f"bound (d) with N = 1 is {c.bound} but "
                    f"sd({subgroup_name(lat, i)}, G) = {report.value}"
                )
    return "pass", checked, ""


def _sd_one_suite(expr, group, lat):
    permutable = [is_permutable(lat, x) for x in range(len(lat))]
    characterised = [
        is_subnormal(lat, x) and is_modular_element(lat, x) for x in range(len(lat))
    ]
    for x in range(len(lat)):
        if permutable[x] != characterised[x]:
            return "fail", len(lat), (
                f"{subgroup_name(lat, x)}: permutable {permutable[x]}, "
                f"modular and subnormal {characterised[x]}"
            )
    for i in range(len(lat)):
        below = list(_iter_bits(lat.below[i]))
        one = pair_degree(lat, i, lat.top) == 1
        all_permutable = all(permutable[x] for x in below)
        if one != all_permutable:
            return "fail", len(lat), (
                f"sd({subgroup_name(lat, i)}, G) = 1 is {one}, "
                f"every subgroup permutable is {all_permutable}"
            )
    return "pass", len(lat), ""


def _zm_suite(expr, group, lat):
    if not isinstance(expr, ZM):
        return "skip", 0, "not a ZM-group"
    params = validate_zm(expr.m, expr.n, expr.r)
    report = verify_bijection(params, group)
    if not report.holds:
        witness = f"{report.triples} triples for {report.subgroups} subgroups"
        if report.collisions:
            a, b = report.collisions[0]
            witness += f"; {a} and {b} give the same subgroup"
        if report.missing:
            witness += f"; {subgroup_name(lat, report.missing[0])} has no triple"
        return "fail", report.triples, witness
    failed = [k for k, v in structure_checks(params, group).items() if not v]
    if failed:
        return "fail", report.triples, "structure check failed: " + ", ".join(failed)
    return "pass", report.triples, ""


def _nary_suite(expr, group, lat):
    rng = random.Random(f"nary:{group.label}")
    subgroups = lat.subgroups
    checked = 0
    for i in sorted(rng.sample(range(len(lat)), min(len(lat), NARY_PAIRS))):
        checked += 1
        value = sd_nary([subgroups[i]]).value
        if value != 1:
            return "fail", checked, (
                f"sd({subgroup_name(lat, i)}) as a 1-tuple is {value}"
            )
    for _ in range(NARY_PAIRS):
        i, j = rng.randrange(len(lat)), rng.randrange(len(lat))
        checked += 1
        nary = sd_nary([subgroups[i], subgroups[j]]).value
        pair = sd_pair(subgroups[i], subgroups[j]).value
        if nary != pair:
            return "fail", checked, (
                f"({subgroup_name(lat, i)}, {subgroup_name(lat, j)}): "
                f"n-ary {nary}, pairwise {pair}"
            )
    # orderings multiply the lattice sizes, so stay with small subgroups
    small = [i for i in range(len(lat)) if lat.lattice_size(i) <= 10]
    for _ in range(NARY_TRIPLES):
        triple = [subgroups[rng.choice(small)] for _ in range(3)]
        values = {sd_nary(list(t)).value for t in itertools.permutations(triple)}
        checked += 1
        if len(values) != 1:
            names = ", ".join(subgroup_name(lat, lat.index_of(h)) for h in triple)
            return "fail", checked, (
                f"reordering ({names}) changes the degree: {sorted(values)}"
            )
    return "pass", checked, ""


_SUITE_FUNCTIONS = {
    "lattice": _lattice_suite,
    "conjugacy": _conjugacy_suite,
    "coprime-product": _coprime_product_suite,
    "sylow": _sylow_suite,
    "maximal": _maximal_suite,
    "maximal-shortcut": _maximal_shortcut_suite,
    "bounds": _bounds_suite,
    "sd-one": _sd_one_suite,
    "zm-bijection": _zm_suite,
    "nary": _nary_suite,
}


def run_suite(suite, text):
    """Run one suite on one corpus entry; never raises for library errors."""
    try:
        expr = parse_group_expr(text)
        group = build_group(expr)
        lat = lattice_of(group)
        status, checked, witness = _SUITE_FUNCTIONS[suite](expr, group, lat)
    except ConfigurationError as err:
        status, checked, witness = "error", 0, str(err)
    if status == "fail":
        _log.warning(f"{suite} fails on {text}: {witness}")
    elif status == "error":
        _log.warning(f"{suite} could not run on {text}: {witness}")
    else:
        _log.debug(f"{suite} {status} on {text} ({checked} checks)")
    return CheckResult(text, suite, status, checked, witness)


def _run_entry(args):
    text, suites = args
    return [run_suite(s, text) for s in suites]


def _init_worker(overrides):
    configure(**overrides)


def run_verify(suites=("all",), corpus=None, jobs=None):
    """Run the named suites over the corpus.

    Args:
        suites: suite names, or ``("all",)``.
        corpus: group expressions; ``None`` uses ``DEFAULT_CORPUS``.
        jobs: worker processes; ``None`` uses the configured value. Results
            are ordered by corpus position whatever the number of workers.
    """
    suites = expand_suites(suites)
    corpus = load_corpus(corpus)
    jobs = get_config(jobs=jobs).jobs
    tasks = [(text, suites) for text in corpus]
    _log.info(
        f"Verifying {len(suites)} suite(s) on {len(corpus)} group(s) with {jobs} job(s)"
    )
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(session_overrides(),)
        ) as pool:
            batches = list(pool.map(_run_entry, tasks))
    else:
        batches = [_run_entry(t) for t in tasks]
    results = tuple(r for batch in batches for r in batch)
    return VerifyReport(suites, corpus, results)

