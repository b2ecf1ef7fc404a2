"""Social welfare families and their evaluation maps.

A family is a strictly increasing function f from incomes to welfare
levels; total welfare of a distribution is the plain sum of f over its
members. Everything downstream (trade-off curves, protected incomes,
equally-distributed equivalents) is built from three primitives:

* ``f(y)``        the welfare map, extended-real valued
* ``f_sup()``     the supremum of f over the domain
* ``f_inverse(w)``the inverse map on the closure of the range

Four families are provided. Three are closed-form:

* ``KolmAtkinson(eta)``   f(y) = y^(1-eta) / (1-eta), ln y at eta = 1
* ``KolmPollak(alpha)``   f(y) = -exp(-alpha y), y at alpha = 0
* ``Cpie(gamma, c)``      f(y) = (ln(y/c))^(1-gamma) / (1-gamma) on y >= c,
                          ln ln(y/c) at gamma = 1

and one is tabulated from a periodic profile (``Tabulated``), covering
the families that keep a constant-fraction or constant-difference
protection rule without belonging to a named parametric class.

Bounded families are stored in the normalization f(+inf) = 0; the
closed-form branches above already satisfy it, and no affine rescaling
is ever applied implicitly.

The unit-parameter branches (eta = 1, gamma = 1) are selected by exact
equality with a relative guard band of 1e-12: inside the band the power
form loses all precision to cancellation, outside it is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, ProfileError, RangeError
from .extreal import NEG_INF, POS_INF, WelfareValue
from .profiles import (
    DifferenceLaw,
    ElasticityLaw,
    FractionLaw,
    PeriodicProfile,
    ProtectionLaw,
)

__all__ = [
    "Distribution",
    "SwfFamily",
    "KolmAtkinson",
    "KolmPollak",
    "Cpie",
    "Tabulated",
    "family_to_dict",
    "family_from_dict",
]

_BRANCH_GUARD = 1e-12
# |exponent| beyond which exp() leaves IEEE range; welfare past it rounds to -inf
_EXP_MAX = 709.0


def _check_income(y: float, floor: float = 0.0) -> float:
    y = float(y)
    if math.isnan(y):
        raise DomainError("income is NaN")
    if y < floor:
        raise DomainError(f"income {y!r} below the domain floor {floor!r}")
    return y


@dataclass(frozen=True)
class Distribution:
    """A finite income distribution. Order never affects any output."""

    incomes: tuple

    def __init__(self, incomes: Iterable[float]):
        vals = tuple(float(y) for y in incomes)
        if len(vals) == 0:
            raise DomainError("a distribution needs at least one income")
        for y in vals:
            if not math.isfinite(y):
                raise DomainError(f"stored incomes must be finite, got {y!r}")
            if y < 0.0:
                raise DomainError(f"stored incomes must be nonnegative, got {y!r}")
        object.__setattr__(self, "incomes", vals)

    def __len__(self) -> int:
        return len(self.incomes)

    def __iter__(self):
        return iter(self.incomes)


class SwfFamily:
    """Shared behavior: welfare sums and equally-distributed equivalents."""

    #: lowest admissible income (0, or the floor c for Cpie)
    domain_floor: float = 0.0

    def f(self, y: float) -> WelfareValue:
        raise NotImplementedError

    def f_sup(self) -> WelfareValue:
        raise NotImplementedError

    def f_inverse(self, w: "WelfareValue | float") -> float:
        raise NotImplementedError

    @property
    def bounded_above(self) -> bool:
        return self.f_sup().is_finite

    def welfare(self, dist: Distribution) -> WelfareValue:
        """Sum of f over the distribution. -inf as soon as any member is singular.

        Finite parts go through fsum so the total does not depend on member order.
        """
        parts = []
        for y in dist:
            v = self.f(y)
            if v.is_neg_inf:
                return NEG_INF
            parts.append(v.value)
        return WelfareValue(math.fsum(parts))

    def ede(self, dist: Distribution) -> float:
        """Equally-distributed equivalent income.

        The income which, shared by everyone, gives the same total welfare.
        A distribution touching a singular point pulls the equivalent down
        to the domain floor; that is a report, not an error.
        """
        mean = self.welfare(dist) * (1.0 / len(dist))
        if mean.is_neg_inf:
            return self.domain_floor
        return self.f_inverse(mean)


def _as_wv(w: "WelfareValue | float") -> WelfareValue:
    return w if isinstance(w, WelfareValue) else WelfareValue(float(w))


@dataclass(frozen=True)
class KolmAtkinson(SwfFamily):
    """Constant relative inequality aversion, parameter eta >= 0."""

    eta: float

    def __post_init__(self) -> None:
        if not (self.eta >= 0.0 and math.isfinite(self.eta)):
            raise DomainError(f"eta must be a finite nonnegative real, got {self.eta}")

    @property
    def _log_branch(self) -> bool:
        return abs(self.eta - 1.0) <= _BRANCH_GUARD

    def f(self, y: float) -> WelfareValue:
        y = _check_income(y)
        if self._log_branch:
            return NEG_INF if y == 0.0 else WelfareValue(math.log(y))
        p = 1.0 - self.eta
        if y == 0.0:
            # 0^p is 0 for p > 0 and a pole for p < 0
            return WelfareValue(0.0) if p > 0.0 else NEG_INF
        if math.isinf(y):
            return self.f_sup()
        try:
            return WelfareValue(y**p / p)
        except OverflowError:
            # magnitude beyond IEEE range; sign of the pole decides the branch
            return POS_INF if p > 0.0 else NEG_INF

    def f_sup(self) -> WelfareValue:
        return WelfareValue(0.0) if self.eta > 1.0 + _BRANCH_GUARD else POS_INF

    def f_inverse(self, w: "WelfareValue | float") -> float:
        w = _as_wv(w)
        if w.is_neg_inf:
            return 0.0
        if self._log_branch:
            return math.inf if w.is_pos_inf else math.exp(w.value)
        p = 1.0 - self.eta
        if p < 0.0:
            # range is [-inf, 0)
            if w.value > 0.0:
                raise RangeError(f"welfare {w.value!r} above the supremum 0 for eta={self.eta}")
            if w.value == 0.0:
                return math.inf
        else:
            # range is [0, +inf)
            if w.value < 0.0:
                raise RangeError(f"welfare {w.value!r} below the range floor 0 for eta={self.eta}")
            if w.is_pos_inf:
                return math.inf
            if w.value == 0.0:
                return 0.0
        try:
            return (p * w.value) ** (1.0 / p)
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class KolmPollak(SwfFamily):
    """Constant absolute inequality aversion, parameter alpha >= 0."""

    alpha: float

    def __post_init__(self) -> None:
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be a finite nonnegative real, got {self.alpha}")

    def f(self, y: float) -> WelfareValue:
        y = _check_income(y)
        if self.alpha == 0.0:
            return POS_INF if math.isinf(y) else WelfareValue(y)
        if math.isinf(y):
            return WelfareValue(0.0)
        return WelfareValue(-math.exp(-self.alpha * y))

    def f_sup(self) -> WelfareValue:
        return POS_INF if self.alpha == 0.0 else WelfareValue(0.0)

    def f_inverse(self, w: "WelfareValue | float") -> float:
        w = _as_wv(w)
        if w.is_neg_inf:
            return 0.0
        if self.alpha == 0.0:
            if w.value < 0.0:
                raise RangeError(f"welfare {w.value!r} below the range floor 0 for alpha=0")
            return w.value
        if w.value > 0.0:
            raise RangeError(f"welfare {w.value!r} above the supremum 0 for alpha={self.alpha}")
        if w.value == 0.0:
            return math.inf
        if w.value < -1.0:
            raise RangeError(
                f"welfare {w.value!r} below f(0) = -1 for alpha={self.alpha}"
            )
        return -math.log(-w.value) / self.alpha


@dataclass(frozen=True)
class Cpie(SwfFamily):
    """Constant proportional inequality elasticity above a hard floor c > 0.

    Defined for incomes y >= c. The transform z = ln(y/c) turns this
    family into KolmAtkinson(gamma) on z, which is how the numerics are
    arranged: z is computed with log1p to keep precision near the floor.
    Precision still degrades as gamma approaches 1 from either side
    (the power form's exponent 1/(1-gamma) blows up); that is inherent
    to the parametrization and is documented rather than masked.
    """

    gamma: float
    c: float

    def __post_init__(self) -> None:
        if not (self.gamma >= 0.0 and math.isfinite(self.gamma)):
            raise DomainError(f"gamma must be a finite nonnegative real, got {self.gamma}")
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise DomainError(f"c must be a finite positive real, got {self.c}")

    @property
    def domain_floor(self) -> float:  # type: ignore[override]
        return self.c

    @property
    def _log_branch(self) -> bool:
        return abs(self.gamma - 1.0) <= _BRANCH_GUARD

    def _z(self, y: float) -> float:
        # ln(y/c), exact at y == c and accurate just above it
        return math.log1p((y - self.c) / self.c)

    def f(self, y: float) -> WelfareValue:
        y = _check_income(y, self.c)
        if math.isinf(y):
            return self.f_sup()
        z = self._z(y)
        if self._log_branch:
            return NEG_INF if z == 0.0 else WelfareValue(math.log(z))
        p = 1.0 - self.gamma
        if z == 0.0:
            return WelfareValue(0.0) if p > 0.0 else NEG_INF
        try:
            return WelfareValue(z**p / p)
        except OverflowError:
            return POS_INF if p > 0.0 else NEG_INF

    def f_sup(self) -> WelfareValue:
        return WelfareValue(0.0) if self.gamma > 1.0 + _BRANCH_GUARD else POS_INF

    def f_inverse(self, w: "WelfareValue | float") -> float:
        w = _as_wv(w)
        if w.is_neg_inf:
            return self.c
        if self._log_branch:
            if w.is_pos_inf:
                return math.inf
            return self.c * math.exp(math.exp(w.value))
        p = 1.0 - self.gamma
        if p < 0.0:
            if w.value > 0.0:
                raise RangeError(f"welfare {w.value!r} above the supremum 0 for gamma={self.gamma}")
            if w.value == 0.0:
                return math.inf
        else:
            if w.value < 0.0:
                raise RangeError(f"welfare {w.value!r} below the range floor 0 for gamma={self.gamma}")
            if w.is_pos_inf:
                return math.inf
            if w.value == 0.0:
                return self.c
        try:
            z = (p * w.value) ** (1.0 / p)
        except OverflowError:
            return math.inf
        if z > _EXP_MAX:
            return math.inf
        return self.c * math.exp(z)


@dataclass(frozen=True)
class Tabulated(SwfFamily):
    """A family defined by a periodic profile, f(y) = -exp(g(x)).

    The law picks the coordinate: a FractionLaw reads the profile in
    x = ln y (so halving the decrement's coordinate multiplies income by
    a fixed ratio); a DifferenceLaw reads it in x = y. Evaluation between
    knots is linear in g; inversion is monotone bisection inside one
    fundamental interval (relative 1e-12 on income, at most 200 steps).
    """

    profile: PeriodicProfile
    law: ProtectionLaw

    def __post_init__(self) -> None:
        if isinstance(self.law, FractionLaw):
            expected = -math.log(self.law.fraction)
        elif isinstance(self.law, DifferenceLaw):
            expected = self.law.difference
        else:
            raise ValueError(
                "tabulated families are built from fraction or difference laws only"
            )
        L = self.profile.interval_length
        if abs(L - expected) > 1e-12 * max(1.0, expected):
            raise ProfileError(
                f"profile interval {L!r} does not match the law's period {expected!r}"
            )

    @property
    def _log_coordinate(self) -> bool:
        return isinstance(self.law, FractionLaw)

    def f(self, y: float) -> WelfareValue:
        y = _check_income(y)
        if math.isinf(y):
            return WelfareValue(0.0)
        if self._log_coordinate:
            if y == 0.0:
                return NEG_INF
            gv = self.profile.g(math.log(y))
        else:
            gv = self.profile.g(y)
        if gv > _EXP_MAX:
            return NEG_INF
        return WelfareValue(-math.exp(gv))

    def f_sup(self) -> WelfareValue:
        return WelfareValue(0.0)

    def f_inverse(self, w: "WelfareValue | float") -> float:
        w = _as_wv(w)
        if w.is_neg_inf:
            return 0.0
        if w.value > 0.0:
            raise RangeError(f"welfare {w.value!r} above the supremum 0")
        if w.value == 0.0:
            return math.inf
        target = math.log(-w.value)
        if not self._log_coordinate:
            g0 = self.profile.values[0]
            if target > g0:
                raise RangeError(
                    f"welfare {w.value!r} below f(0) = {-math.exp(g0)!r}"
                )
            return self.profile.g_inverse(target)
        x = self.profile.g_inverse(target)
        return math.exp(x) if x < _EXP_MAX else math.inf


# -- JSON schema ------------------------------------------------------------
#
# {"family": "kolm_atkinson", "eta": 2.0}
# {"family": "kolm_pollak", "alpha": 0.0693}
# {"family": "cpie", "gamma": 2.0, "c": 1.0}
# {"family": "tabulated", "law": {...}, "profile": {...}}


def _law_to_dict(law: ProtectionLaw) -> dict:
    if isinstance(law, FractionLaw):
        return {"kind": "fraction", "fraction": law.fraction}
    if isinstance(law, DifferenceLaw):
        return {"kind": "difference", "difference": law.difference}
    return {"kind": "elasticity", "elasticity": law.elasticity, "floor": law.floor}


def _law_from_dict(d: dict) -> ProtectionLaw:
    if not isinstance(d, dict):
        raise ValueError("law must be an object")
    kind = d.get("kind")
    try:
        if kind == "fraction":
            return FractionLaw(float(d["fraction"]))
        if kind == "difference":
            return DifferenceLaw(float(d["difference"]))
        if kind == "elasticity":
            return ElasticityLaw(float(d["elasticity"]), float(d["floor"]))
    except KeyError as e:
        raise ValueError(f"law is missing field {e.args[0]!r}") from None
    raise ValueError(f"unknown law kind {kind!r}")


def family_to_dict(fam: SwfFamily) -> dict:
    if isinstance(fam, KolmAtkinson):
        return {"family": "kolm_atkinson", "eta": fam.eta}
    if isinstance(fam, KolmPollak):
        return {"family": "kolm_pollak", "alpha": fam.alpha}
    if isinstance(fam, Cpie):
        return {"family": "cpie", "gamma": fam.gamma, "c": fam.c}
    if isinstance(fam, Tabulated):
        return {
            "family": "tabulated",
            "law": _law_to_dict(fam.law),
            "profile": {
                "positions": list(fam.profile.positions),
                "values": list(fam.profile.values),
                "decrement": fam.profile.decrement,
            },
        }
    raise ValueError(f"cannot serialize family {fam!r}")


def family_from_dict(d: dict) -> SwfFamily:
    if not isinstance(d, dict):
        raise ValueError("family must be an object")
    name = d.get("family")
    try:
        if name == "kolm_atkinson":
            return KolmAtkinson(float(d["eta"]))
        if name == "kolm_pollak":
            return KolmPollak(float(d["alpha"]))
        if name == "cpie":
            return Cpie(float(d["gamma"]), float(d["c"]))
        if name == "tabulated":
            prof = d["profile"]
            profile = PeriodicProfile(
                [float(x) for x in prof["positions"]],
                [float(v) for v in prof["values"]],
                float(prof.get("decrement", math.log(2.0))),
            )
            return Tabulated(profile, _law_from_dict(d["law"]))
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed family object: {e}") from None
    raise ValueError(f"unknown family {name!r}")
