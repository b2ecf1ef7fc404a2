"""Extended-real welfare values.

Welfare levels live on [-inf, +inf]. IEEE floats almost work, but they
resolve inf + (-inf) to NaN silently; here that combination is a hard
error instead, because it only arises from queries with no defined
answer (e.g. a trade-off between two incomes both at a singular point).

Contract implemented here:

* finite + finite, finite * finite: ordinary float arithmetic
* (-inf) + finite = -inf, (+inf) + finite = +inf
* c * (-inf) = -inf for c > 0, = +inf for c < 0
* (+inf) + (-inf), 0 * (±inf): ExtendedRealError
* total order, with -inf < finite < +inf

NaN never enters or leaves a WelfareValue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ExtendedRealError

__all__ = ["WelfareValue", "NEG_INF", "POS_INF"]


@dataclass(frozen=True)
class WelfareValue:
    value: float

    def __post_init__(self) -> None:
        v = float(self.value)
        if math.isnan(v):
            raise ExtendedRealError("welfare value is NaN")
        object.__setattr__(self, "value", v)

    # -- predicates ------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    @property
    def is_neg_inf(self) -> bool:
        return self.value == -math.inf

    @property
    def is_pos_inf(self) -> bool:
        return self.value == math.inf

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "WelfareValue | float") -> "WelfareValue":
        o = _coerce(other)
        if (self.is_pos_inf and o.is_neg_inf) or (self.is_neg_inf and o.is_pos_inf):
            raise ExtendedRealError("(+inf) + (-inf) has no defined value")
        return WelfareValue(self.value + o.value)

    __radd__ = __add__

    def __neg__(self) -> "WelfareValue":
        return WelfareValue(-self.value)

    def __sub__(self, other: "WelfareValue | float") -> "WelfareValue":
        return self + (-_coerce(other))

    def __mul__(self, k: float) -> "WelfareValue":
        k = float(k)
        if math.isnan(k):
            raise ExtendedRealError("scalar is NaN")
        if not self.is_finite:
            if k == 0.0:
                raise ExtendedRealError("0 * (±inf) has no defined value")
            if math.isinf(k):
                raise ExtendedRealError("(±inf) * (±inf) not supported")
            return WelfareValue(self.value if k > 0 else -self.value)
        if math.isinf(k):
            raise ExtendedRealError("infinite scalars not supported")
        return WelfareValue(self.value * k)

    __rmul__ = __mul__

    # -- order -----------------------------------------------------------

    def __lt__(self, other: "WelfareValue | float") -> bool:
        return self.value < _coerce(other).value

    def __le__(self, other: "WelfareValue | float") -> bool:
        return self.value <= _coerce(other).value

    def __gt__(self, other: "WelfareValue | float") -> bool:
        return self.value > _coerce(other).value

    def __ge__(self, other: "WelfareValue | float") -> bool:
        return self.value >= _coerce(other).value

    def __repr__(self) -> str:
        return f"WelfareValue({self.value!r})"


def _coerce(x: "WelfareValue | float") -> WelfareValue:
    return x if isinstance(x, WelfareValue) else WelfareValue(float(x))


NEG_INF = WelfareValue(-math.inf)
POS_INF = WelfareValue(math.inf)
