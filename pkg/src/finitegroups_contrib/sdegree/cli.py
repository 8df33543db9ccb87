#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Command line front end, installed as ``sdegree``.

Usage is documented in ``how_to_use_sdegree_cli.rst``. Exit status:

    0  success
    1  a checked property failed
    2  usage, parse or selector error
    3  a group order (or family count) above the configured cap
"""

import argparse
import pathlib
import sys

import idaes.logger as idaeslog

from finitegroups_contrib.sdegree import reporting
from finitegroups_contrib.sdegree._version import __version__
from finitegroups_contrib.sdegree.commutativity import (
    alternating_in_symmetric,
    d_group,
    d_rel,
    dihedral_reflection_sweep,
    lower_bounds,
    sd,
    sd_matrix,
    sd_nary,
    sd_pair,
    sd_profile,
    sd_profile_properties,
    sd_rel,
)
from finitegroups_contrib.sdegree.config import (
    configure,
    get_config,
    reset_configuration,
)
from finitegroups_contrib.sdegree.exceptions import (
    ConfigurationError,
    HypothesisViolation,
    OrderCapExceeded,
)
from finitegroups_contrib.sdegree.group_expr import (
    ZM,
    build_group,
    parse_group_expr,
    select_subgroup,
)
from finitegroups_contrib.sdegree.lattice_cache import (
    cache_path,
    clear_cache,
    lattice_of,
    read_lattice,
    write_lattice,
)
from finitegroups_contrib.sdegree.maximal_formulas import (
    SHORTCUT_FORMS,
    family_coefficients,
    maximal_intersections,
    s4_comparison_report,
    sd_via_maximal,
    sd_via_maximal_shortcut,
)
from finitegroups_contrib.sdegree.subgroup_lattice import enumerate_subgroups
from finitegroups_contrib.sdegree.verification import (
    SUITES,
    run_verify,
    zm_corpus,
)
from finitegroups_contrib.sdegree.zm_groups import (
    valid_zm_params,
    validate_zm,
    verify_bijection,
    zm_sd_table,
)

_log = idaeslog.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _target(text):
    expr = parse_group_expr(text)
    group = build_group(expr)
    return expr, group, lattice_of(group)


# ---------------------------------------------------------------------------
# Commands. Each returns a reporting.Report.


def _cmd_sd(args):
    _, _, lat = _target(args.group)
    return reporting.sd_report("sd", sd(lat), lat)


def _cmd_sd_rel(args):
    expr, group, lat = _target(args.group)
    h = select_subgroup(lat, args.subgroup, expr)
    return reporting.sd_report("sd-rel", sd_rel(h, group), lat)


def _cmd_sd_pair(args):
    expr, _, lat = _target(args.group)
    h = select_subgroup(lat, args.first, expr)
    k = select_subgroup(lat, args.second, expr)
    return reporting.sd_report("sd-pair", sd_pair(h, k))


def _cmd_sd_nary(args):
    expr, _, lat = _target(args.group)
    subgroups = [select_subgroup(lat, s, expr) for s in args.subgroups]
    return reporting.sd_report("sd-nary", sd_nary(subgroups))


def _cmd_d(args):
    expr, group, lat = _target(args.group)
    if args.subgroup is None:
        return reporting.value_report("d", f"d({group.label})", d_group(group))
    h = select_subgroup(lat, args.subgroup, expr)
    return reporting.value_report(
        "d", f"d({args.subgroup}, {group.label})", d_rel(h, group)
    )


def _cmd_lattice(args):
    _, _, lat = _target(args.group)
    return reporting.lattice_report(lat)


def _cmd_maximal(args):
    _, _, lat = _target(args.group)
    coefficients = family_coefficients(lat, method=args.method)
    shortcuts = {}
    try:
        for form in SHORTCUT_FORMS:
            shortcuts[form] = sd_via_maximal_shortcut(lat, form=form)
    except HypothesisViolation as err:
        shortcuts = {"hypothesis": str(err)}
    return reporting.maximal_report(
        lat,
        coefficients,
        maximal_intersections(lat),
        sd(lat).value,
        sd_via_maximal(lat, method=args.method),
        shortcuts,
    )


def _cmd_verify(args):
    corpus = list(args.corpus) if args.corpus else None
    if args.zm_max is not None:
        corpus = (corpus or []) + list(zm_corpus(args.zm_max))
    report = run_verify(args.suite or ["all"], corpus, jobs=args.jobs)
    return reporting.verify_table(report)


def _cmd_zm_sweep(args):
    if args.groups:
        params = []
        for text in args.groups:
            expr = parse_group_expr(text)
            if not isinstance(expr, ZM):
                raise ConfigurationError(f"'{text}' is not a ZM(m,n,r) expression")
            params.append(validate_zm(expr.m, expr.n, expr.r))
    else:
        params = valid_zm_params(args.max_mn)
    rows, bijections = [], []
    for p in params:
        group = build_group(str(p))
        rows.extend(zm_sd_table(p, group))
        bijections.append(verify_bijection(p, group))
    return reporting.zm_table(rows, bijections)


def _cmd_s4_comparison(args):
    group = build_group(args.group) if args.group else None
    return reporting.s4_comparison_table(s4_comparison_report(group))


def _cmd_profile(args):
    _, _, lat = _target(args.group)
    return reporting.profile_table(lat, sd_profile(lat), sd_profile_properties(lat))


def _cmd_dihedral_sweep(args):
    if args.min_order < 4 or args.min_order % 2:
        raise ConfigurationError("dihedral orders must be even and >= 4")
    orders = range(args.min_order, args.max_dihedral + 1, 2)
    return reporting.reflection_table(dihedral_reflection_sweep(orders))


def _cmd_an_sn(args):
    return reporting.an_sn_table(alternating_in_symmetric(args.n_max))


def _cmd_matrix(args):
    _, _, lat = _target(args.group)
    return reporting.matrix_table(lat, sd_matrix(lat, subgroups=args.subgroups))


def _cmd_bounds(args):
    expr, group, lat = _target(args.group)
    h = select_subgroup(lat, args.subgroup, expr)
    return reporting.bounds_table(lower_bounds(h, group))


def _cmd_cache(args):
    cache_dir = get_config().cache_dir
    if cache_dir is None:
        raise ConfigurationError("cache commands need --cache DIR or SDEGREE_CACHE_DIR")
    if args.action == "clear":
        removed = clear_cache(cache_dir)
        return reporting.cache_table("clear", [("*", cache_dir, f"{removed} removed")])
    if not args.groups:
        raise ConfigurationError(f"cache {args.action} needs at least one group")
    entries = []
    ok = True
    for text in args.groups:
        group = build_group(text)
        path = cache_path(cache_dir, group)
        if args.action == "write":
            write_lattice(cache_dir, enumerate_subgroups(group))
            state = "written"
        else:
            if read_lattice(cache_dir, group) is not None:
                state = "valid"
            else:
                state = "invalid" if path.exists() else "missing"
                # a miss is only a failure when validating
                ok = ok and args.action == "read"
        entries.append((group.label, path, state))
    return reporting.cache_table(args.action, entries, ok=ok)


# ---------------------------------------------------------------------------
# Parser


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=reporting.FORMATS, default=None, help="report format"
    )
    common.add_argument(
        "--cache", type=pathlib.Path, default=None, help="lattice cache directory"
    )
    common.add_argument(
        "--max-order", type=int, default=None, help="cap on constructed group orders"
    )
    common.add_argument(
        "--oracle",
        action="store_true",
        default=None,
        help="cross-check every lattice against brute-force enumeration",
    )
    common.add_argument(
        "--jobs", type=int, default=None, help="worker processes for corpus runs"
    )
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    return common


def build_parser():
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="sdegree",
        description="Exact subgroup commutativity degrees of finite groups.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("sd", _cmd_sd, "sd(G)")
    p.add_argument("group")
    p = add("sd-rel", _cmd_sd_rel, "sd(H, G) for a selected subgroup H")
    p.add_argument("group")
    p.add_argument("subgroup")
    p = add("sd-pair", _cmd_sd_pair, "sd(H, K) for two selected subgroups")
    p.add_argument("group")
    p.add_argument("first")
    p.add_argument("second")
    p = add("sd-nary", _cmd_sd_nary, "n-ary degree of selected subgroups")
    p.add_argument("group")
    p.add_argument("subgroups", nargs="+")
    p = add("d", _cmd_d, "elementwise commutativity degree d(G) or d(H, G)")
    p.add_argument("group")
    p.add_argument("subgroup", nargs="?")
    p = add("lattice", _cmd_lattice, "list the subgroup lattice")
    p.add_argument("group")
    p = add("maximal", _cmd_maximal, "sd(G) through maximal subgroups")
    p.add_argument("group")
    p.add_argument(
        "--method", choices=("auto", "families", "recursion"), default="auto"
    )
    p = add("verify", _cmd_verify, "run verification suites over a corpus")
    p.add_argument(
        "--suite", action="append", choices=SUITES + ("all",), help="repeatable"
    )
    p.add_argument(
        "--corpus", nargs="+", help="group expressions (default corpus if omitted)"
    )
    p.add_argument(
        "--zm-max",
        type=int,
        default=None,
        help="add every valid ZM(m,n,r) with mn <= N",
    )
    p = add("zm-sweep", _cmd_zm_sweep, "subgroup triples and degrees of ZM-groups")
    p.add_argument("groups", nargs="*")
    p.add_argument("--max-mn", type=int, default=60)
    p = add(
        "s4-comparison",
        _cmd_s4_comparison,
        "S4 through maximal subgroups, against printed values",
    )
    p.add_argument("group", nargs="?")
    p = add("profile", _cmd_profile, "sd(H, G) per conjugacy class")
    p.add_argument("group")
    p = add("dihedral-sweep", _cmd_dihedral_sweep, "reflections in dihedral groups")
    p.add_argument("--min", dest="min_order", type=int, default=4)
    p.add_argument("--max", dest="max_dihedral", type=int, default=40)
    p = add("an-sn", _cmd_an_sn, "sd(A_n, S_n)")
    p.add_argument("--n-max", type=int, default=5)
    p = add("matrix", _cmd_matrix, "sd(H, K) over all or cyclic subgroups")
    p.add_argument("group")
    p.add_argument("--subgroups", choices=("all", "cyclic"), default="all")
    p = add("bounds", _cmd_bounds, "lower bounds for sd(H, G)")
    p.add_argument("group")
    p.add_argument("subgroup")
    p = add("cache", _cmd_cache, "write, read, validate or clear lattice cache files")
    p.add_argument("action", choices=("write", "read", "validate", "clear"))
    p.add_argument("groups", nargs="*")
    return parser


def _set_log_level(args):
    level = idaeslog.INFO
    if args.verbose:
        level = idaeslog.DEBUG
    elif args.quiet:
        level = idaeslog.WARNING
    idaeslog.getLogger("finitegroups_contrib.sdegree").setLevel(level)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _set_log_level(args)
    reset_configuration()
    try:
        configure(
            cache_dir=args.cache,
            max_order=args.max_order,
            oracle=args.oracle,
            jobs=args.jobs,
            output_format=args.format,
        )
    except ValueError as err:
        # pyomo domain errors
        _log.error(str(err))
        return EXIT_USAGE
    try:
        report = args.func(args)
        sys.stdout.write(reporting.render(report, get_config().output_format))
    except OrderCapExceeded as err:
        _log.error(str(err))
        return EXIT_CAP
    except ConfigurationError as err:
        _log.error(str(err))
        return EXIT_USAGE
    return EXIT_OK if report.ok else EXIT_VIOLATION


if __name__ == "__main__":
    raise SystemExit(main())
