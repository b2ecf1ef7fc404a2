"""Trade-off curves and protected incomes.

Setting: total welfare is f(y1) + f(y2) with both members starting at y.
When the second income rises, the first can fall without lowering the
total; the trade-off curve

    y1(y2, y) = f_inverse(2 f(y) - f(y2))

traces how far. Its infimum over all admissible y2 is the protected
income: the level below which the first member is never pushed, no
matter how rich the other becomes. With m rivals all starting at y the
same construction gives f_inverse((m+1) f(y) - m sup f).

The one- and two-rival cases (m = 1, 2) are the canonical ones; larger m
extrapolates the identical construction and is flagged as such here
rather than hidden.

Closed forms used when the family has one:

* KolmAtkinson(eta > 1):  (m+1)^(1/(1-eta)) * y
* KolmPollak(alpha > 0):  max(0, y - ln(m+1)/alpha)
* Cpie(gamma > 1):        c * (y/c)^((m+1)^(1/(1-gamma)))

Unbounded families (eta <= 1, alpha = 0, gamma <= 1) protect nothing:
the infimum collapses to the domain floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import DomainError, DomainExceeded, UnboundedFamily
from .extreal import WelfareValue
from .families import Cpie, KolmAtkinson, KolmPollak, SwfFamily, Tabulated

__all__ = [
    "ProtectionResult",
    "tradeoff_income",
    "in_domain",
    "protected_income",
    "protected_income_limit",
    "has_positive_protection",
    "protected_income_unequal",
    "curve_points",
]


@dataclass(frozen=True)
class ProtectionResult:
    """Protected income and the damage bookkeeping around it.

    ``positive`` means protection strictly above the domain floor; for a
    family with floor c the floor itself counts as no protection.
    ``method`` records which route produced the number: ``closed_form``
    for the parametric families, ``numeric_limit`` for tabulated ones.
    """

    protected_income: float
    collateral_damage: float
    relative_damage: float
    positive: bool
    method: str


def _check_start(fam: SwfFamily, y: float) -> float:
    y = float(y)
    if not math.isfinite(y):
        raise DomainError(f"starting income must be finite, got {y!r}")
    if y <= fam.domain_floor:
        raise DomainError(
            f"starting income {y!r} must exceed the domain floor {fam.domain_floor!r}"
        )
    return y


def _rival_value(fam: SwfFamily, y2: float) -> WelfareValue:
    # +inf is admitted as an explicit limit marker: the rival pushed past
    # every finite income, i.e. f evaluated at its supremum.
    y2 = float(y2)
    if math.isinf(y2) and y2 > 0:
        return fam.f_sup()
    return fam.f(y2)


def in_domain(fam: SwfFamily, y: float, rivals: Sequence[float]) -> bool:
    """Whether the trade-off against the given rival incomes is admissible.

    The inequality, arranged addition-only so mixed infinities cannot
    arise: (m+1) f(y) >= f(floor) + sum of f over rivals.
    """
    if len(rivals) < 1:
        raise DomainError("at least one rival income is required")
    lhs = fam.f(float(y)) * float(len(rivals) + 1)
    rhs = fam.f(fam.domain_floor)
    for r in rivals:
        rhs = rhs + _rival_value(fam, r)
    return lhs >= rhs


def tradeoff_income(fam: SwfFamily, y2: float, y: float) -> float:
    """Income the first member falls to when the rival sits at y2.

    Decreasing in y2, increasing in y. Raises DomainExceeded outside the
    admissible region, naming the violated inequality. y2 may be +inf,
    the limit marker for a rival past every finite income.
    """
    y = _check_start(fam, y)
    fy = fam.f(y)
    fy2 = _rival_value(fam, y2)
    floor_w = fam.f(fam.domain_floor)
    lhs = fy * 2.0
    rhs = floor_w + fy2
    if lhs < rhs:
        raise DomainExceeded(
            f"2 f(y) = {lhs.value!r} < f(floor) + f(y2) = {rhs.value!r}: "
            f"no income >= {fam.domain_floor!r} can hold total welfare constant"
        )
    return fam.f_inverse(fy * 2.0 - fy2)


def _rivals_count(rivals: int) -> int:
    if isinstance(rivals, bool) or not isinstance(rivals, int):
        raise DomainError(f"rivals must be an integer >= 1, got {rivals!r}")
    if rivals < 1:
        raise DomainError(f"rivals must be an integer >= 1, got {rivals!r}")
    return rivals


def protected_income_limit(fam: SwfFamily, y: float, rivals: int = 1) -> float:
    """Numeric-limit protected income: f_inverse((m+1) f(y) - m sup f).

    Independent of the closed forms; for tabulated families this is the
    only route. Unbounded families collapse to the domain floor.
    """
    m = _rivals_count(rivals)
    y = _check_start(fam, y)
    sup = fam.f_sup()
    if sup.is_pos_inf:
        return fam.domain_floor
    target = fam.f(y) * float(m + 1) + sup * float(-m)
    if target <= fam.f(fam.domain_floor):
        return fam.domain_floor
    return fam.f_inverse(target)


def protected_income(fam: SwfFamily, y: float, rivals: int = 1) -> ProtectionResult:
    """Protected income against ``rivals`` members growing without bound."""
    m = _rivals_count(rivals)
    y = _check_start(fam, y)
    method = "closed_form"
    if isinstance(fam, KolmAtkinson):
        if fam.eta > 1.0 + 1e-12:
            shielded = (m + 1.0) ** (1.0 / (1.0 - fam.eta)) * y
        else:
            shielded = 0.0
    elif isinstance(fam, KolmPollak):
        if fam.alpha > 0.0:
            shielded = max(0.0, y - math.log(m + 1.0) / fam.alpha)
        else:
            shielded = 0.0
    elif isinstance(fam, Cpie):
        if fam.gamma > 1.0 + 1e-12:
            beta = (m + 1.0) ** (1.0 / (1.0 - fam.gamma))
            shielded = fam.c * math.exp(beta * math.log1p((y - fam.c) / fam.c))
        else:
            shielded = fam.c
    elif isinstance(fam, Tabulated):
        shielded = protected_income_limit(fam, y, m)
        method = "numeric_limit"
    else:
        shielded = protected_income_limit(fam, y, m)
        method = "numeric_limit"
    damage = y - shielded
    return ProtectionResult(
        protected_income=shielded,
        collateral_damage=damage,
        relative_damage=damage / y,
        positive=shielded > fam.domain_floor,
        method=method,
    )


def has_positive_protection(fam: SwfFamily, y: float) -> bool:
    """Whether anything above the floor survives a single unbounded rival.

    True exactly when f is bounded above strictly below 2 f(y) - f(floor).
    Agrees with protected_income(fam, y).positive for every family.
    """
    y = _check_start(fam, y)
    sup = fam.f_sup()
    if sup.is_pos_inf:
        return False
    return sup < fam.f(y) * 2.0 - fam.f(fam.domain_floor)


def protected_income_unequal(fam: SwfFamily, y1: float, y2: float) -> float:
    """Protected income of a two-member society starting at (y1, y2).

    Requires a family bounded above (stored with sup f = 0): the value is
    f_inverse(f(y1) + f(y2)), the same number the equal-start construction
    gives at the distribution's equally-distributed equivalent.
    """
    sup = fam.f_sup()
    if not sup.is_finite:
        raise UnboundedFamily(
            "protected income for unequal starts needs a family bounded above"
        )
    y1 = _check_start(fam, y1)
    y2 = _check_start(fam, y2)
    target = fam.f(y1) + fam.f(y2) - sup
    if target <= fam.f(fam.domain_floor):
        return fam.domain_floor
    return fam.f_inverse(target)


def curve_points(
    fam: SwfFamily, y_min: float, y_max: float, points: int
) -> List[Tuple[float, float, float, float]]:
    """Rows (y, protected_income, collateral_damage, relative_damage).

    Log-spaced for families whose protection is a ratio story, linear for
    the translation families (KolmPollak, difference-law tabulations).
    """
    if points < 2:
        raise DomainError(f"points must be >= 2, got {points}")
    y_min, y_max = float(y_min), float(y_max)
    if not (y_min > fam.domain_floor):
        raise DomainError(
            f"y_min {y_min!r} must exceed the domain floor {fam.domain_floor!r}"
        )
    if not (y_max > y_min):
        raise DomainError(f"y_max {y_max!r} must exceed y_min {y_min!r}")
    linear = isinstance(fam, KolmPollak) or (
        isinstance(fam, Tabulated) and not fam._log_coordinate
    )
    rows = []
    for i in range(points):
        t = i / (points - 1)
        if linear:
            y = y_min + t * (y_max - y_min)
        else:
            y = math.exp(math.log(y_min) + t * (math.log(y_max) - math.log(y_min)))
        r = protected_income(fam, y, 1)
        rows.append((y, r.protected_income, r.collateral_damage, r.relative_damage))
    return rows
