"""Periodic profiles and protection laws.

A :class:`PeriodicProfile` stores one fundamental interval of a strictly
decreasing function g on [0, L], with the exact quasi-periodic extension

    g(x + L) = g(x) - decrement

used everywhere outside the stored range. The boundary knots must satisfy
g(L) - g(0) = -decrement, so consecutive copies of the interval join
continuously. Between knots g is linear.

Profiles are the raw material for tabulated welfare families (see
``families.Tabulated``): with x = ln y the construction yields a family
whose protected income is a fixed fraction of y; with x = y it yields a
fixed subtraction. The decrement is ln 2 in both constructions.

Protection laws (:class:`FractionLaw`, :class:`DifferenceLaw`,
:class:`ElasticityLaw`) name the three closed-form shapes a protected
income can take; they double as the predicted-law argument of the
verification suites.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .errors import DomainError, ProfileError

__all__ = [
    "LN2",
    "LN3",
    "PeriodicProfile",
    "FractionLaw",
    "DifferenceLaw",
    "ElasticityLaw",
    "ProtectionLaw",
]

LN2 = math.log(2.0)
LN3 = math.log(3.0)

# Relative slack used when checking exact-by-construction quantities
# (interval endpoints, the boundary drop). Any real mismatch is orders of
# magnitude larger; this only absorbs float rounding in user arithmetic.
_GUARD = 1e-12


@dataclass(frozen=True)
class FractionLaw:
    """Protected income is a fixed fraction of the starting income."""

    fraction: float  # in (0, 1)

    def __post_init__(self) -> None:
        if not (0.0 < self.fraction < 1.0):
            raise DomainError(f"fraction must lie in (0, 1), got {self.fraction}")

    def predict(self, y: float) -> float:
        return self.fraction * y


@dataclass(frozen=True)
class DifferenceLaw:
    """Protected income is the starting income minus a fixed amount, floored at 0."""

    difference: float  # > 0

    def __post_init__(self) -> None:
        if not (self.difference > 0.0 and math.isfinite(self.difference)):
            raise DomainError(f"difference must be positive, got {self.difference}")

    def predict(self, y: float) -> float:
        return max(0.0, y - self.difference)


@dataclass(frozen=True)
class ElasticityLaw:
    """Protected income is log-linear in the starting income above a floor."""

    elasticity: float  # in (0, 1)
    floor: float  # > 0

    def __post_init__(self) -> None:
        if not (0.0 < self.elasticity < 1.0):
            raise DomainError(f"elasticity must lie in (0, 1), got {self.elasticity}")
        if not (self.floor > 0.0 and math.isfinite(self.floor)):
            raise DomainError(f"floor must be positive, got {self.floor}")

    def predict(self, y: float) -> float:
        # c * (y/c)^beta, written in log space to keep precision near the floor
        return self.floor * math.exp(self.elasticity * math.log1p((y - self.floor) / self.floor))


ProtectionLaw = Union[FractionLaw, DifferenceLaw, ElasticityLaw]


class PeriodicProfile:
    """One fundamental interval of a strictly decreasing quasi-periodic g."""

    __slots__ = ("positions", "values", "decrement")

    def __init__(
        self,
        positions: Sequence[float],
        values: Sequence[float],
        decrement: float = LN2,
    ) -> None:
        pos = tuple(float(p) for p in positions)
        val = tuple(float(v) for v in values)
        if len(pos) != len(val):
            raise ProfileError("positions and values differ in length")
        if len(pos) < 2:
            raise ProfileError("a profile needs at least the two interval endpoints")
        if pos[0] != 0.0:
            raise ProfileError(f"first knot must sit at 0, got {pos[0]}")
        for a, b in zip(pos, pos[1:]):
            if not b > a:
                raise ProfileError("knot positions must be strictly increasing")
        for a, b in zip(val, val[1:]):
            if not b < a:
                raise ProfileError("knot values must be strictly decreasing")
        L = pos[-1]
        dec = float(decrement)
        if not (dec > 0.0 and math.isfinite(dec)):
            raise ProfileError(f"decrement must be positive, got {dec}")
        drop = val[0] - val[-1]
        if abs(drop - dec) > _GUARD * max(1.0, dec):
            raise ProfileError(
                f"boundary drop g(0) - g(L) = {drop!r} must equal the decrement {dec!r}"
            )
        if not math.isfinite(L):
            raise ProfileError("interval length must be finite")
        self.positions = pos
        self.values = val
        self.decrement = dec

    # -- constructors ------------------------------------------------------

    @classmethod
    def linear(cls, length: float, start: float = 0.0, decrement: float = LN2) -> "PeriodicProfile":
        """The two-knot profile: g linear on [0, length]."""
        return cls((0.0, float(length)), (start, start - decrement), decrement)

    @classmethod
    def from_function(
        cls,
        func: Callable[[float], float],
        length: float,
        resolution: int = 512,
        decrement: float = LN2,
    ) -> "PeriodicProfile":
        """Sample a decreasing callable at ``resolution`` equal steps.

        ``func`` must satisfy func(length) - func(0) = -decrement; the two
        endpoint samples are pinned to func(0) and func(0) - decrement so
        rounding in the caller's arithmetic cannot break the join.
        """
        if resolution < 1:
            raise ProfileError("resolution must be at least 1")
        length = float(length)
        pos = [length * i / resolution for i in range(resolution + 1)]
        pos[-1] = length
        val = [float(func(p)) for p in pos]
        if abs((val[0] - val[-1]) - decrement) > 1e-9 * max(1.0, decrement):
            raise ProfileError(
                f"func drops by {val[0] - val[-1]!r} over the interval, expected {decrement!r}"
            )
        val[-1] = val[0] - decrement
        return cls(pos, val, decrement)

    # -- properties --------------------------------------------------------

    @property
    def interval_length(self) -> float:
        return self.positions[-1]

    @property
    def is_linear(self) -> bool:
        """True when every interior knot lies on the endpoint chord."""
        x0, xL = self.positions[0], self.positions[-1]
        v0, vL = self.values[0], self.values[-1]
        slope = (vL - v0) / (xL - x0)
        tol = _GUARD * max(1.0, self.decrement)
        return all(
            abs(v - (v0 + slope * (x - x0))) <= tol
            for x, v in zip(self.positions[1:-1], self.values[1:-1])
        )

    # -- evaluation --------------------------------------------------------

    def _interp(self, a: float) -> float:
        # linear interpolation inside the fundamental interval, a in [0, L]
        i = bisect.bisect_right(self.positions, a) - 1
        i = min(max(i, 0), len(self.positions) - 2)
        x0, x1 = self.positions[i], self.positions[i + 1]
        v0, v1 = self.values[i], self.values[i + 1]
        return v0 + (v1 - v0) * (a - x0) / (x1 - x0)

    def g(self, x: float) -> float:
        """Evaluate the extended g at any real x."""
        L = self.interval_length
        k = math.floor(x / L)
        a = x - k * L
        if a >= L:  # float fold-over at cell boundaries
            a -= L
            k += 1
        if a < 0.0:
            a = 0.0
        return self._interp(a) - k * self.decrement

    def g_inverse(self, target: float, max_iter: int = 200) -> float:
        """Solve g(x) = target by cell lookup plus monotone bisection.

        g is strictly decreasing with range all of R, so a solution always
        exists and is unique up to flat rounding. Bisection runs inside one
        fundamental interval until the bracket is a few ulps wide.
        """
        if not math.isfinite(target):
            raise ValueError("g_inverse needs a finite target")
        L = self.interval_length
        v0, vL = self.values[0], self.values[-1]
        k = math.floor((v0 - target) / self.decrement)
        t = target + k * self.decrement
        # guard against float off-by-one at cell boundaries
        if t > v0:
            k += 1
            t = target + k * self.decrement
        elif t < vL:
            k -= 1
            t = target + k * self.decrement
        t = min(max(t, vL), v0)
        lo, hi = 0.0, L
        tol = L * 1e-16
        for _ in range(max_iter):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            if self._interp(mid) >= t:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi) + k * L

    def __repr__(self) -> str:
        return (
            f"PeriodicProfile({len(self.positions)} knots, "
            f"L={self.interval_length!r}, decrement={self.decrement!r})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PeriodicProfile):
            return NotImplemented
        return (
            self.positions == other.positions
            and self.values == other.values
            and self.decrement == other.decrement
        )

    def __hash__(self) -> int:
        return hash((self.positions, self.values, self.decrement))
