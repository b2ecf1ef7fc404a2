"""protincome: protected incomes under additively separable welfare.

How far can one member of a society be pushed down while another rises,
if total welfare is held constant? For an additively separable social
welfare function the answer is a trade-off curve with a hard floor (the
protected income), and the shape of that floor identifies the welfare
family. This package evaluates the curves, builds families that realize
prescribed protection laws, infers preference coefficients from simple
protection judgments, and serves everything over a CLI and a JSON API.
"""

from .charlab import (
    VerificationReport,
    build_cdpi_family,
    build_crpi_family,
    linear_grid,
    log_grid,
    verify_damage_rigidity,
    verify_elasticity_consistency,
    verify_existence,
    verify_invariance,
    verify_protection_law,
    verify_rigidity,
    verify_threshold_law,
)
from .elicitation import (
    ConstantDamage,
    ConstantDamageTwoRivals,
    Diagnostics,
    Elasticity,
    ElasticityTwoRivals,
    InferredPreference,
    LeakyBucket,
    ProtectedFraction,
    ProtectedFractionTwoRivals,
    QuestionDescriptor,
    Session,
    TranscriptEntry,
    answer_from_dict,
    answer_to_dict,
    apply_answer,
    check_consistency_damage,
    check_consistency_elasticity,
    check_consistency_fraction,
    infer_alpha_from_damage,
    infer_eta_from_fraction,
    infer_gamma_from_elasticity,
    leaky_bucket_coefficient,
    next_question,
    replay,
)
from .errors import (
    DomainError,
    DomainExceeded,
    ExtendedRealError,
    ProfileError,
    RangeError,
    SessionStateError,
    UnboundedFamily,
    WelfareError,
)
from .extreal import NEG_INF, POS_INF, WelfareValue
from .families import (
    Cpie,
    Distribution,
    KolmAtkinson,
    KolmPollak,
    SwfFamily,
    Tabulated,
    family_from_dict,
    family_to_dict,
)
from .profiles import LN2, LN3, DifferenceLaw, ElasticityLaw, FractionLaw, PeriodicProfile
from .protection import (
    ProtectionResult,
    curve_points,
    has_positive_protection,
    in_domain,
    protected_income,
    protected_income_limit,
    protected_income_unequal,
    tradeoff_income,
)

__version__ = "0.1.0"
