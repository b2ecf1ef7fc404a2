"""Semantic exception hierarchy.

Every failure raised by this package derives from :class:`WelfareError` so
callers can catch the whole category at an interface boundary (CLI exit
code 1, HTTP 4xx) without fishing for bare ``ValueError``.
"""

from __future__ import annotations


class WelfareError(Exception):
    """Base class for all errors raised by this package."""


class ExtendedRealError(WelfareError):
    """An extended-real operation with no defined value, e.g. (+inf) + (-inf)."""


class DomainError(WelfareError, ValueError):
    """A parameter or income violating a stated bound.

    Also a ValueError, so argument-validation call sites read naturally;
    the message always names the violated inequality.
    """


class DomainExceeded(DomainError):
    """A trade-off query outside the admissible region.

    The message always names the violated inequality with its numeric sides.
    """


class RangeError(WelfareError):
    """A welfare level outside the closure of the family's range."""


class UnboundedFamily(WelfareError):
    """An operation that requires f bounded above, applied to an unbounded family."""


class ProfileError(DomainError):
    """An invalid periodic profile: bad knots, wrong interval, wrong boundary drop."""


class SessionStateError(WelfareError):
    """An elicitation answer submitted in a state that cannot accept it."""
