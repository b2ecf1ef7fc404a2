"""Preference elicitation from protection judgments.

The shape of the protected income identifies the welfare family, and a
single number pins the coefficient:

* keep a fixed fraction lambda        -> KolmAtkinson, eta = 1 - ln2/ln(lambda)
* lose a fixed amount delta           -> KolmPollak,   alpha = ln2/delta
* log-linear above a hard floor, beta -> Cpie,         gamma = 1 - ln2/ln(beta)

Each inference has a cross-check: the same question asked with two
rivals instead of one. A consistent respondent's two answers share one
implied coefficient (the ln3-based ratio equals the ln2-based one); an
inconsistent pair is resolved by least squares and reported with its
residuals, never silently.

The leaky-bucket framing (let one unit be taken from the richer so the
poorer receives 1/take of it) gives the same coefficient through
marginal utilities: eta = ln(take)/ln(ratio of incomes). It is recorded
alongside the main protocol, not used to drive it.

All logs are taken base 2 so that the textbook cases (ratio 2 with
take 8 -> 3, fraction 1/2 -> 2) come out exact in floating point.
"""

from __future__ import annotations

import math
import secrets
from dataclasses import dataclass, field
from typing import List, Optional, Union

from .errors import DomainError, SessionStateError
from .families import Cpie, KolmAtkinson, KolmPollak, SwfFamily

__all__ = [
    "ProtectedFraction",
    "ConstantDamage",
    "ProtectedFractionTwoRivals",
    "ConstantDamageTwoRivals",
    "Elasticity",
    "ElasticityTwoRivals",
    "LeakyBucket",
    "ElicitationAnswer",
    "Diagnostics",
    "InferredPreference",
    "QuestionDescriptor",
    "Session",
    "TranscriptEntry",
    "infer_eta_from_fraction",
    "infer_alpha_from_damage",
    "infer_gamma_from_elasticity",
    "leaky_bucket_coefficient",
    "check_consistency_fraction",
    "check_consistency_damage",
    "check_consistency_elasticity",
    "next_question",
    "apply_answer",
    "replay",
    "answer_to_dict",
    "answer_from_dict",
]

#: two implied coefficients closer than this count as the same answer
CONSISTENCY_TOL = 1e-9

LOG2_3 = math.log2(3.0)


# -- answers -----------------------------------------------------------------


def _check_unit_interval(x: float, name: str) -> float:
    x = float(x)
    if not (0.0 < x < 1.0):
        raise DomainError(f"{name} must lie strictly inside (0, 1), got {x!r}")
    return x


def _check_positive(x: float, name: str) -> float:
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x


@dataclass(frozen=True)
class ProtectedFraction:
    kind = "protected_fraction"
    fraction: float

    def __post_init__(self) -> None:
        _check_unit_interval(self.fraction, "fraction")


@dataclass(frozen=True)
class ConstantDamage:
    kind = "constant_damage"
    damage: float

    def __post_init__(self) -> None:
        _check_positive(self.damage, "damage")


@dataclass(frozen=True)
class ProtectedFractionTwoRivals:
    kind = "protected_fraction_two_rivals"
    fraction: float

    def __post_init__(self) -> None:
        _check_unit_interval(self.fraction, "fraction")


@dataclass(frozen=True)
class ConstantDamageTwoRivals:
    kind = "constant_damage_two_rivals"
    damage: float

    def __post_init__(self) -> None:
        _check_positive(self.damage, "damage")


@dataclass(frozen=True)
class Elasticity:
    kind = "elasticity"
    elasticity: float
    floor: float

    def __post_init__(self) -> None:
        _check_unit_interval(self.elasticity, "elasticity")
        _check_positive(self.floor, "floor")


@dataclass(frozen=True)
class ElasticityTwoRivals:
    kind = "elasticity_two_rivals"
    elasticity: float
    floor: float

    def __post_init__(self) -> None:
        _check_unit_interval(self.elasticity, "elasticity")
        _check_positive(self.floor, "floor")


@dataclass(frozen=True)
class LeakyBucket:
    kind = "leaky_bucket"
    ratio: float
    take: float

    def __post_init__(self) -> None:
        r = float(self.ratio)
        t = float(self.take)
        if not (r > 1.0 and math.isfinite(r)):
            raise DomainError(f"ratio must exceed 1, got {r!r}")
        if not (t >= 1.0 and math.isfinite(t)):
            raise DomainError(f"take must be at least 1, got {t!r}")


ElicitationAnswer = Union[
    ProtectedFraction,
    ConstantDamage,
    ProtectedFractionTwoRivals,
    ConstantDamageTwoRivals,
    Elasticity,
    ElasticityTwoRivals,
    LeakyBucket,
]


# -- coefficient inference ---------------------------------------------------


def infer_eta_from_fraction(fraction: float) -> float:
    """eta such that the kept fraction equals ``fraction``; always > 1."""
    lam = _check_unit_interval(fraction, "fraction")
    return 1.0 - 1.0 / math.log2(lam)


def infer_alpha_from_damage(damage: float) -> float:
    """alpha such that the fixed loss equals ``damage``."""
    delta = _check_positive(damage, "damage")
    alpha = math.log(2.0) / delta
    if not math.isfinite(alpha):
        raise OverflowError(f"damage {delta!r} too small: implied alpha overflows")
    return alpha


def infer_gamma_from_elasticity(elasticity: float) -> float:
    """gamma such that the floor-rule log-slope equals ``elasticity``; > 1."""
    beta = _check_unit_interval(elasticity, "elasticity")
    return 1.0 - 1.0 / math.log2(beta)


def leaky_bucket_coefficient(ratio: float, take: float) -> float:
    """Coefficient implied by letting ``take`` units leave the rich member
    per unit arriving at the poor one, at the given income ratio."""
    r = float(ratio)
    t = float(take)
    if not (r > 1.0 and math.isfinite(r)):
        raise DomainError(f"ratio must exceed 1, got {r!r}")
    if not (t >= 1.0 and math.isfinite(t)):
        raise DomainError(f"take must be at least 1, got {t!r}")
    return math.log2(t) / math.log2(r)


# -- consistency -------------------------------------------------------------


@dataclass(frozen=True)
class Diagnostics:
    residuals: tuple
    inconsistency: float
    consistent: bool
    flags: tuple = ()


@dataclass(frozen=True)
class InferredPreference:
    family: SwfFamily
    coefficient: float
    diagnostics: Diagnostics


def _reconcile(s_one: float, s_two: float):
    """Combine the two implied values of the shared scale parameter.

    Consistent answers use the one-rival value verbatim; otherwise the
    least-squares point is the plain average, with both residuals kept.
    """
    gap = abs(s_one - s_two)
    if gap <= CONSISTENCY_TOL:
        return s_one, (0.0, 0.0), gap, True
    s_star = 0.5 * (s_one + s_two)
    return s_star, (abs(s_one - s_star), abs(s_two - s_star)), gap, False


def check_consistency_fraction(fraction: float, fraction_two: float) -> InferredPreference:
    lam = _check_unit_interval(fraction, "fraction")
    mu = _check_unit_interval(fraction_two, "two-rival fraction")
    s_one = 1.0 / math.log2(lam)  # = 1 - eta
    s_two = LOG2_3 / math.log2(mu)
    s, residuals, gap, ok = _reconcile(s_one, s_two)
    eta = 1.0 - s
    return InferredPreference(
        family=KolmAtkinson(eta),
        coefficient=eta,
        diagnostics=Diagnostics(residuals, gap, ok),
    )


def check_consistency_damage(damage: float, damage_two: float) -> InferredPreference:
    delta = _check_positive(damage, "damage")
    omega = _check_positive(damage_two, "two-rival damage")
    r_one = math.log(2.0) / delta  # = alpha
    r_two = math.log(3.0) / omega
    alpha, residuals, gap, ok = _reconcile(r_one, r_two)
    flags = () if omega > delta else ("omega_not_greater_than_delta",)
    return InferredPreference(
        family=KolmPollak(alpha),
        coefficient=alpha,
        diagnostics=Diagnostics(residuals, gap, ok, flags),
    )


def check_consistency_elasticity(
    elasticity: float, elasticity_two: float, floor: float, floor_two: Optional[float] = None
) -> InferredPreference:
    b_one = _check_unit_interval(elasticity, "elasticity")
    b_two = _check_unit_interval(elasticity_two, "two-rival elasticity")
    c = _check_positive(floor, "floor")
    flags = ()
    if floor_two is not None and abs(floor_two - c) > 1e-9 * max(1.0, c):
        flags = ("floor_mismatch",)
    s_one = 1.0 / math.log2(b_one)  # = 1 - gamma
    s_two = LOG2_3 / math.log2(b_two)
    s, residuals, gap, ok = _reconcile(s_one, s_two)
    gamma = 1.0 - s
    return InferredPreference(
        family=Cpie(gamma, c),
        coefficient=gamma,
        diagnostics=Diagnostics(residuals, gap, ok, flags),
    )


# -- session protocol --------------------------------------------------------
#
# Two main questions, always at starting incomes 100 and 1000: asking the
# same shape at two levels is what separates a ratio rule from a subtraction
# rule from a floor rule. Leaky-bucket answers are asides: recorded, never
# advancing the state.

QUESTION_INCOMES = (100.0, 1000.0)

_Q_FIRST = None  # built below, after QuestionDescriptor


@dataclass(frozen=True)
class QuestionDescriptor:
    id: str
    kind: str
    incomes: tuple
    prompt: str
    accepted: tuple


_Q_FIRST = QuestionDescriptor(
    id="q1",
    kind="one_rival",
    incomes=QUESTION_INCOMES,
    prompt=(
        "Two people start at the same income; one income then rises without "
        "bound while total welfare is held constant. At starts of 100 and "
        "1000, how low may the other income be pushed? Answer with the rule "
        "matching both starts: a kept fraction, a fixed loss, or a log-linear "
        "slide above a hard floor."
    ),
    accepted=("protected_fraction", "constant_damage", "elasticity", "leaky_bucket"),
)

_Q_CROSS = {
    "protected_fraction": QuestionDescriptor(
        id="q2_fraction",
        kind="two_rival_fraction",
        incomes=QUESTION_INCOMES,
        prompt=(
            "Same setup, but two incomes rise without bound instead of one. "
            "What fraction of the start is kept now?"
        ),
        accepted=("protected_fraction_two_rivals", "leaky_bucket"),
    ),
    "constant_damage": QuestionDescriptor(
        id="q2_damage",
        kind="two_rival_damage",
        incomes=QUESTION_INCOMES,
        prompt=(
            "Same setup, but two incomes rise without bound instead of one. "
            "What fixed amount is lost now?"
        ),
        accepted=("constant_damage_two_rivals", "leaky_bucket"),
    ),
    "elasticity": QuestionDescriptor(
        id="q2_elasticity",
        kind="two_rival_elasticity",
        incomes=QUESTION_INCOMES,
        prompt=(
            "Same setup, but two incomes rise without bound instead of one. "
            "What is the log-slope above the floor now?"
        ),
        accepted=("elasticity_two_rivals", "leaky_bucket"),
    ),
}


@dataclass(frozen=True)
class TranscriptEntry:
    question_id: str
    answer: ElicitationAnswer


@dataclass
class Session:
    id: str = field(default_factory=lambda: secrets.token_hex(16))
    state: str = "awaiting_first"
    transcript: List[TranscriptEntry] = field(default_factory=list)
    inferred: Optional[InferredPreference] = None

    def _first_main(self) -> ElicitationAnswer:
        for entry in self.transcript:
            if entry.question_id == "q1":
                return entry.answer
        raise SessionStateError("no first answer recorded yet")


def next_question(session: Session) -> QuestionDescriptor:
    if session.state == "awaiting_first":
        return _Q_FIRST
    if session.state == "awaiting_crosscheck":
        return _Q_CROSS[session._first_main().kind]
    raise SessionStateError("session is complete; no further questions")


def apply_answer(session: Session, answer: ElicitationAnswer):
    """Advance the session; returns the next QuestionDescriptor or, once
    the cross-check lands, the InferredPreference. Deterministic in the
    transcript. Leaky-bucket answers are recorded without advancing."""
    if session.state == "complete":
        raise SessionStateError("session is complete; answers are no longer accepted")
    if isinstance(answer, LeakyBucket):
        session.transcript.append(TranscriptEntry("aside", answer))
        return next_question(session)
    question = next_question(session)
    if answer.kind not in question.accepted:
        raise DomainError(
            f"answer kind {answer.kind!r} not accepted for question {question.id!r}"
        )
    session.transcript.append(TranscriptEntry(question.id, answer))
    if session.state == "awaiting_first":
        session.state = "awaiting_crosscheck"
        return next_question(session)
    first = session._first_main()
    if isinstance(first, ProtectedFraction):
        pref = check_consistency_fraction(first.fraction, answer.fraction)
    elif isinstance(first, ConstantDamage):
        pref = check_consistency_damage(first.damage, answer.damage)
    else:
        pref = check_consistency_elasticity(
            first.elasticity, answer.elasticity, first.floor, answer.floor
        )
    session.inferred = pref
    session.state = "complete"
    return pref


def replay(answers) -> Session:
    """Build a fresh session and apply answers in order."""
    session = Session()
    for a in answers:
        apply_answer(session, a)
    return session


# -- wire codec --------------------------------------------------------------

_ANSWER_TYPES = {
    "protected_fraction": (ProtectedFraction, ("fraction",)),
    "constant_damage": (ConstantDamage, ("damage",)),
    "protected_fraction_two_rivals": (ProtectedFractionTwoRivals, ("fraction",)),
    "constant_damage_two_rivals": (ConstantDamageTwoRivals, ("damage",)),
    "elasticity": (Elasticity, ("elasticity", "floor")),
    "elasticity_two_rivals": (ElasticityTwoRivals, ("elasticity", "floor")),
    "leaky_bucket": (LeakyBucket, ("ratio", "take")),
}


def answer_to_dict(answer: ElicitationAnswer) -> dict:
    _, fields = _ANSWER_TYPES[answer.kind]
    return {
        "kind": answer.kind,
        "parameters": {name: getattr(answer, name) for name in fields},
    }


def answer_from_dict(d: dict) -> ElicitationAnswer:
    if not isinstance(d, dict):
        raise ValueError("answer must be an object")
    kind = d.get("kind")
    if kind not in _ANSWER_TYPES:
        raise ValueError(f"unknown answer kind {kind!r}")
    cls, fields = _ANSWER_TYPES[kind]
    params = d.get("parameters")
    if not isinstance(params, dict):
        raise ValueError("answer needs a 'parameters' object")
    try:
        return cls(**{name: float(params[name]) for name in fields})
    except KeyError as e:
        raise ValueError(f"answer is missing parameter {e.args[0]!r}") from None
    except TypeError:
        raise ValueError("answer parameters must be numbers") from None
