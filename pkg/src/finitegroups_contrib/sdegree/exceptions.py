#################################################################################
# finitegroups-sdegree Copyright (c) 2026, the finitegroups-sdegree
# contributors. All rights reserved.
#
# Please see the file LICENSE.md for full copyright and license information.
#################################################################################
"""Exceptions raised by the subgroup commutativity degree package.

Every user-facing error derives from the IDAES ``ConfigurationError``
(itself a ``ValueError``), so callers that already guard IDAES code keep
working. Internal invariant failures use IDAES ``BurntToast``.
"""

from idaes.core.util.exceptions import BurntToast, ConfigurationError

__all__ = [
    "ConfigurationError",
    "BurntToast",
    "GroupConstructionError",
    "OrderCapExceeded",
    "GroupExprSyntaxError",
    "SubgroupSelectorError",
    "InvalidZMParameters",
    "IsomorphismBoundExceeded",
    "HypothesisViolation",
]


class GroupConstructionError(ConfigurationError):
    """Invalid parameters or arguments for a group or subgroup construction."""


class OrderCapExceeded(ConfigurationError):
    def __init__(self, order, cap, what="group"):
        self.order = order
        self.cap = cap
        super().__init__(
            f"{what} order {order} exceeds the configured cap of {cap} "
            "(raise it with --max-order or SDEGREE_MAX_ORDER)"
        )


class GroupExprSyntaxError(ConfigurationError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")


class SubgroupSelectorError(ConfigurationError):
    def __init__(self, selector, reason, near_matches=()):
        self.selector = selector
        self.near_matches = list(near_matches)
        msg = f"selector '{selector}' {reason}"
        if self.near_matches:
            msg += "; near matches: " + ", ".join(self.near_matches)
        super().__init__(msg)


class InvalidZMParameters(ConfigurationError):
    def __init__(self, m, n, r, violations):
        self.violations = list(violations)
        super().__init__(
            "ZM({}, {}, {}) is not valid: {}".format(m, n, r, "; ".join(violations))
        )


class IsomorphismBoundExceeded(ConfigurationError):
    """Isomorphism is only decided up to the configured order bound."""


class HypothesisViolation(ConfigurationError):
    def __init__(self, message, witnesses=()):
        self.witnesses = list(witnesses)
        super().__init__(message)
