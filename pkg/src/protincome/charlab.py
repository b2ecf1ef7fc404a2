"""Characterization lab: build families from profiles, verify the laws.

Construction side: any strictly decreasing periodic profile with a ln 2
drop per fundamental interval yields a welfare family whose protected
income follows a prescribed law exactly,

* in log coordinates: a fixed kept fraction (build_crpi_family)
* in income coordinates: a fixed loss (build_cdpi_family)

so the one-rival protection law does NOT pin down the family: the
profile is a free degree of freedom.

Rigidity side: asking the two-rival question removes that freedom. Only
the linear profile keeps the two-rival ratio (resp. difference)
constant; every genuinely nonlinear profile shows a measurable spread.
The verify_* suites below check both directions numerically and return
plain VerificationReport records.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .families import Cpie, Distribution, KolmAtkinson, KolmPollak, SwfFamily, Tabulated
from .profiles import (
    LN2,
    LN3,
    DifferenceLaw,
    FractionLaw,
    PeriodicProfile,
    ProtectionLaw,
)
from .protection import has_positive_protection, protected_income_limit

__all__ = [
    "VerificationReport",
    "build_crpi_family",
    "build_cdpi_family",
    "log_grid",
    "linear_grid",
    "verify_protection_law",
    "verify_threshold_law",
    "verify_rigidity",
    "verify_damage_rigidity",
    "verify_invariance",
    "verify_existence",
    "verify_elasticity_consistency",
]

LAW_TOL = 1e-6
RIGIDITY_SPREAD = 1e-6
LINEAR_SPREAD = 1e-9
INVARIANCE_TOL = 1e-9
DEFAULT_SEED = 20260819


@dataclass(frozen=True)
class VerificationReport:
    proposition: str
    grid: tuple
    max_abs_residual: float
    tolerance: float
    passed: bool
    flags: tuple = ()
    details: dict = field(default_factory=dict)


def build_crpi_family(fraction: float, profile: PeriodicProfile) -> Tabulated:
    """Family keeping a constant fraction of income against one rival.

    The profile must span one fundamental interval of length -ln(fraction).
    A linear profile reproduces KolmAtkinson(1 - ln2/ln(fraction)); any
    other decreasing profile gives a family outside the parametric class
    with the identical one-rival behavior.
    """
    if not (0.0 < fraction < 1.0):
        raise ValueError(f"fraction must lie in (0, 1), got {fraction!r}")
    return Tabulated(profile, FractionLaw(fraction))


def build_cdpi_family(difference: float, profile: PeriodicProfile) -> Tabulated:
    """Family losing a constant amount against one rival; period = difference."""
    if not (difference > 0.0 and math.isfinite(difference)):
        raise ValueError(f"difference must be positive, got {difference!r}")
    return Tabulated(profile, DifferenceLaw(difference))


def log_grid(lo: float, hi: float, points: int = 64) -> Tuple[float, ...]:
    if not (0.0 < lo < hi):
        raise ValueError(f"need 0 < lo < hi, got {lo!r}, {hi!r}")
    return tuple(np.geomspace(lo, hi, points).tolist())


def linear_grid(lo: float, hi: float, points: int = 64) -> Tuple[float, ...]:
    if not (lo < hi):
        raise ValueError(f"need lo < hi, got {lo!r}, {hi!r}")
    return tuple(np.linspace(lo, hi, points).tolist())


def verify_protection_law(
    fam: SwfFamily,
    law: ProtectionLaw,
    grid: Sequence[float],
    tolerance: float = LAW_TOL,
) -> VerificationReport:
    """Compare the numeric-limit protected income against a predicted law.

    Residuals are |shielded - predicted| / max(y, 1) pointwise; the report
    passes when the worst one stays within ``tolerance``.
    """
    grid = tuple(float(y) for y in grid)
    worst = 0.0
    for y in grid:
        shielded = protected_income_limit(fam, y, 1)
        worst = max(worst, abs(shielded - law.predict(y)) / max(y, 1.0))
    return VerificationReport(
        proposition="protection-law",
        grid=grid,
        max_abs_residual=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
    )


def _two_rival_spread(
    fam: Tabulated, grid: Tuple[float, ...], statistic
) -> Tuple[float, float]:
    values = [statistic(y, protected_income_limit(fam, y, 2)) for y in grid]
    return max(values) - min(values), float(np.mean(values))


def _rigidity_report(
    proposition: str,
    fam: Tabulated,
    profile: PeriodicProfile,
    grid: Sequence[float],
    statistic,
) -> VerificationReport:
    grid = tuple(float(y) for y in grid)
    if len(grid) < 3:
        return VerificationReport(
            proposition=proposition,
            grid=grid,
            max_abs_residual=0.0,
            tolerance=RIGIDITY_SPREAD,
            passed=False,
            flags=("insufficient-grid",),
            details={"reason": "a spread needs at least 3 grid points"},
        )
    spread, mean = _two_rival_spread(fam, grid, statistic)
    if profile.is_linear:
        # the two-rival statistic must be constant for the linear profile
        passed = spread <= LINEAR_SPREAD
        tol = LINEAR_SPREAD
        mode = "linear"
    else:
        # any genuine nonlinearity must show up as a spread
        passed = spread > RIGIDITY_SPREAD
        tol = RIGIDITY_SPREAD
        mode = "nonlinear"
    return VerificationReport(
        proposition=proposition,
        grid=grid,
        max_abs_residual=spread,
        tolerance=tol,
        passed=passed,
        details={"mode": mode, "two_rival_mean": mean},
    )


def verify_rigidity(
    fraction: float, profile: PeriodicProfile, grid: Sequence[float]
) -> VerificationReport:
    """Spread of the two-rival kept ratio for a fraction-law family.

    Linear profile: ratio constant at (fraction)^(ln3/ln2), spread within
    1e-9. Nonlinear profile: spread must exceed 1e-6, showing the
    two-rival question separates it from the parametric family.
    """
    fam = build_crpi_family(fraction, profile)
    return _rigidity_report(
        "fraction-rigidity", fam, profile, grid, lambda y, shielded: shielded / y
    )


def verify_damage_rigidity(
    difference: float, profile: PeriodicProfile, grid: Sequence[float]
) -> VerificationReport:
    """Spread of the two-rival absolute loss for a difference-law family."""
    fam = build_cdpi_family(difference, profile)
    return _rigidity_report(
        "difference-rigidity", fam, profile, grid, lambda y, shielded: y - shielded
    )


def verify_threshold_law(
    alpha: float, grid: Sequence[float], tolerance: float = LAW_TOL
) -> VerificationReport:
    """Thresholds of the fixed-loss family against one and two rivals.

    The shielded income must equal max(0, y - ln2/alpha) against one
    rival and max(0, y - ln3/alpha) against two, pointwise on the grid.
    """
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    fam = KolmPollak(alpha)
    grid = tuple(float(y) for y in grid)
    worst = 0.0
    for y in grid:
        for rivals, loss in ((1, LN2 / alpha), (2, LN3 / alpha)):
            shielded = protected_income_limit(fam, y, rivals)
            expected = max(0.0, y - loss)
            worst = max(worst, abs(shielded - expected) / max(y, 1.0))
    return VerificationReport(
        proposition="threshold-law",
        grid=grid,
        max_abs_residual=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
        details={"one_rival_threshold": LN2 / alpha, "two_rival_threshold": LN3 / alpha},
    )


def verify_invariance(
    fam: SwfFamily,
    kind: str,
    samples: int = 1000,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Randomized check of the family's ranking invariance.

    kind 'scale' (KolmAtkinson): common rescaling of incomes rescales the
    equal-equivalent. kind 'translation' (KolmPollak): a common absolute
    grant shifts it. kind 'compound' (Cpie): raising incomes and floor to
    a common power does the same to the equal-equivalent. Residuals are
    relative, pass at 1e-9.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    worst = 0.0
    if kind == "scale":
        if not isinstance(fam, KolmAtkinson):
            raise ValueError("scale invariance applies to kolm_atkinson families")
        for _ in range(samples):
            y = np.exp(rng.uniform(math.log(0.5), math.log(500.0), size=2))
            kappa = math.exp(rng.uniform(math.log(0.25), math.log(4.0)))
            base = fam.ede(Distribution(y.tolist()))
            moved = fam.ede(Distribution((kappa * y).tolist()))
            worst = max(worst, abs(moved - kappa * base) / max(abs(kappa * base), 1.0))
    elif kind == "translation":
        if not isinstance(fam, KolmPollak):
            raise ValueError("translation invariance applies to kolm_pollak families")
        hi = 30.0 / fam.alpha if fam.alpha > 0 else 200.0
        k_hi = min(50.0, 10.0 / fam.alpha) if fam.alpha > 0 else 50.0
        for _ in range(samples):
            y = rng.uniform(0.1, hi, size=2)
            k = rng.uniform(0.0, k_hi)
            base = fam.ede(Distribution(y.tolist()))
            moved = fam.ede(Distribution((y + k).tolist()))
            worst = max(worst, abs(moved - (base + k)) / max(abs(base + k), 1.0))
    elif kind == "compound":
        if not isinstance(fam, Cpie):
            raise ValueError("compound invariance applies to cpie families")
        for _ in range(samples):
            z = np.exp(rng.uniform(math.log(0.05), math.log(4.0), size=2))
            rho = math.exp(rng.uniform(math.log(1.0 / 3.0), math.log(3.0)))
            y = fam.c * np.exp(z)
            base = fam.ede(Distribution(y.tolist()))
            powered = Cpie(fam.gamma, fam.c**rho)
            moved = powered.ede(Distribution((y**rho).tolist()))
            expected = base**rho
            worst = max(worst, abs(moved - expected) / max(abs(expected), 1.0))
    else:
        raise ValueError(f"unknown invariance kind {kind!r}")
    return VerificationReport(
        proposition=f"invariance-{kind}",
        grid=(),
        max_abs_residual=worst,
        tolerance=INVARIANCE_TOL,
        passed=worst <= INVARIANCE_TOL,
        details={"samples": samples, "seed": seed},
    )


def verify_existence(
    fam: SwfFamily, grid: Sequence[float], threshold: float = 1e-8
) -> VerificationReport:
    """Agreement of the existence predicate with the numeric limit.

    has_positive_protection must say True exactly where the numeric-limit
    protected income clears the domain floor by more than ``threshold``.
    """
    grid = tuple(float(y) for y in grid)
    disagreements = []
    for y in grid:
        predicted = has_positive_protection(fam, y)
        measured = (protected_income_limit(fam, y, 1) - fam.domain_floor) > threshold
        if predicted != measured:
            disagreements.append(y)
    return VerificationReport(
        proposition="existence",
        grid=grid,
        max_abs_residual=float(len(disagreements)),
        tolerance=0.0,
        passed=not disagreements,
        details={"disagreements": disagreements},
    )


def verify_elasticity_consistency(
    gamma: float, c: float, grid: Optional[Sequence[float]] = None
) -> VerificationReport:
    """One- and two-rival log-slopes of the floor-rule family must agree.

    Measured as regression slopes of ln(shielded/c) on ln(y/c); the two
    implied scale parameters (ln2- and ln3-based) must match to 1e-6.
    """
    if not gamma > 1.0:
        raise ValueError("elasticity consistency needs gamma > 1")
    fam = Cpie(gamma, c)
    if grid is None:
        grid = log_grid(c * math.e**0.25, c * math.e**4.0, 64)
    grid = tuple(float(y) for y in grid)
    z = np.log(np.asarray(grid) / c)
    slopes = []
    for rivals in (1, 2):
        shielded = np.asarray([protected_income_limit(fam, y, rivals) for y in grid])
        slopes.append(float(np.polyfit(z, np.log(shielded / c), 1)[0]))
    s_one = LN2 / math.log(slopes[0])
    s_two = LN3 / math.log(slopes[1])
    gap = abs(s_one - s_two)
    return VerificationReport(
        proposition="elasticity-consistency",
        grid=grid,
        max_abs_residual=gap,
        tolerance=LAW_TOL,
        passed=gap <= LAW_TOL,
        details={"one_rival_slope": slopes[0], "two_rival_slope": slopes[1]},
    )
