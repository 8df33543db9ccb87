#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Configuration options shared by the library and the command line.

Options are declared once on a Pyomo ``ConfigDict``. ``get_config`` returns
a fresh instance with environment overrides applied first and explicit
keyword overrides last, so CLI flags always win over the environment.

Environment variables:

    SDEGREE_CACHE_DIR   directory for lattice cache files
    SDEGREE_JOBS        number of worker processes for corpus runs
    SDEGREE_MAX_ORDER   cap on the order of any constructed group
"""

import os
import pathlib

from pyomo.common.config import Bool, ConfigDict, ConfigValue, In, PositiveInt

import idaes.logger as idaeslog

_log = idaeslog.getLogger(__name__)


def _optional_path(val):
    if val is None or val == "":
        return None
    return pathlib.Path(val).expanduser()


CONFIG = ConfigDict()
CONFIG.declare(
    "max_order",
    ConfigValue(
        default=720,
        domain=PositiveInt,
        description="Largest group order any constructor may produce",
        doc="Cayley tables are order x order, so the cap bounds memory; "
        "720 admits the symmetric group on six points.",
    ),
)
CONFIG.declare(
    "oracle_max_order",
    ConfigValue(
        default=128,
        domain=PositiveInt,
        description="Largest group order accepted by the brute-force lattice oracle",
    ),
)
CONFIG.declare(
    "isomorphism_max_order",
    ConfigValue(
        default=64,
        domain=PositiveInt,
        description="Largest order for which isomorphism is decided by search",
    ),
)
CONFIG.declare(
    "associativity_check_order",
    ConfigValue(
        default=64,
        domain=PositiveInt,
        description="Tables up to this order get an exhaustive associativity check",
        doc="Larger tables are checked on a deterministic sample of triples.",
    ),
)
CONFIG.declare(
    "max_family_enumeration",
    ConfigValue(
        default=16,
        domain=PositiveInt,
        description="Most maximal subgroups for which every family is enumerated",
        doc="Above this count the signed family coefficients are obtained "
        "by Moebius inversion over the lattice instead of visiting all "
        "2^(r+1)-1 families.",
    ),
)
CONFIG.declare(
    "nary_max_arity",
    ConfigValue(
        default=6,
        domain=PositiveInt,
        description="Largest number of arguments accepted by the n-ary degree",
    ),
)
CONFIG.declare(
    "cache_dir",
    ConfigValue(
        default=None,
        domain=_optional_path,
        description="Directory holding lattice cache files (None disables caching)",
    ),
)
CONFIG.declare(
    "jobs",
    ConfigValue(
        default=1,
        domain=PositiveInt,
        description="Worker processes used for independent corpus entries",
    ),
)
CONFIG.declare(
    "output_format",
    ConfigValue(
        default="text",
        domain=In(["text", "json", "csv"]),
        description="Report format",
    ),
)
CONFIG.declare(
    "oracle",
    ConfigValue(
        default=False,
        domain=Bool,
        description="Cross-check every enumerated lattice against the oracle",
    ),
)

_ENVIRONMENT = {
    "cache_dir": "SDEGREE_CACHE_DIR",
    "jobs": "SDEGREE_JOBS",
    "max_order": "SDEGREE_MAX_ORDER",
}


_SESSION = {}


def configure(**overrides):
    """Set process-wide overrides, e.g. from command line flags.

    Values are validated immediately; ``None`` leaves an option untouched.
    """
    get_config(**overrides)
    _SESSION.update({k: v for k, v in overrides.items() if v is not None})


def reset_configuration():
    _SESSION.clear()


def session_overrides():
    return dict(_SESSION)


def get_config(**overrides):
    """Return a new configuration block.

    Precedence, lowest first: declared defaults, environment, values set
    through ``configure``, then keyword arguments. Keyword arguments set to
    ``None`` are ignored, which lets callers pass optional CLI values
    straight through.
    """
    cfg = CONFIG()
    for key, var in _ENVIRONMENT.items():
        val = os.environ.get(var)
        if val is not None:
            _log.debug(f"Configuration '{key}' taken from environment {var}={val}")
            cfg[key] = val
    explicit = {k: v for k, v in overrides.items() if v is not None}
    for key, val in {**_SESSION, **explicit}.items():
        cfg[key] = val
    return cfg


def resolve_max_order(max_order=None):
    if max_order is not None:
        return max_order
    return get_config().max_order
