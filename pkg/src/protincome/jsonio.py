"""Single serialization path shared by the CLI and the HTTP service.

Every JSON byte either interface emits comes through :func:`dumps`
(sorted keys, compact separators, RFC-compliant), so identical core
queries produce byte-identical output on both surfaces.

Extended-real welfare levels cannot ride on JSON numbers; the infinities
are carried as the strings "inf" and "-inf" and documented as such.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .charlab import VerificationReport
from .elicitation import (
    InferredPreference,
    QuestionDescriptor,
    Session,
    answer_to_dict,
)
from .extreal import WelfareValue
from .families import SwfFamily, family_to_dict
from .protection import ProtectionResult

__all__ = [
    "dumps",
    "encode_number",
    "CURVE_HEADER",
    "curve_rows_to_dicts",
    "curve_csv",
    "protection_result_to_dict",
    "preference_to_dict",
    "question_to_dict",
    "report_to_dict",
    "session_to_dict",
]

CURVE_HEADER = "y,protected_income,collateral_damage,relative_damage"


def curve_rows_to_dicts(rows) -> list:
    return [
        {
            "y": y,
            "protected_income": shielded,
            "collateral_damage": damage,
            "relative_damage": rel,
        }
        for y, shielded, damage, rel in rows
    ]


def curve_csv(rows) -> str:
    lines = [CURVE_HEADER]
    lines += [f"{y!r},{s!r},{d!r},{r!r}" for y, s, d, r in rows]
    return "\n".join(lines)


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def encode_number(x: "WelfareValue | float"):
    """A float as a JSON value; infinities become strings."""
    v = x.value if isinstance(x, WelfareValue) else float(x)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def protection_result_to_dict(r: ProtectionResult) -> dict:
    return {
        "protected_income": encode_number(r.protected_income),
        "collateral_damage": encode_number(r.collateral_damage),
        "relative_damage": encode_number(r.relative_damage),
        "positive": r.positive,
        "method": r.method,
    }


def preference_to_dict(p: InferredPreference) -> dict:
    d = family_to_dict(p.family)
    d["coefficient"] = p.coefficient
    d["residuals"] = list(p.diagnostics.residuals)
    d["inconsistency"] = p.diagnostics.inconsistency
    d["consistent"] = p.diagnostics.consistent
    d["flags"] = list(p.diagnostics.flags)
    return d


def question_to_dict(q: QuestionDescriptor) -> dict:
    return {
        "id": q.id,
        "kind": q.kind,
        "incomes": list(q.incomes),
        "prompt": q.prompt,
        "accepted": list(q.accepted),
    }


def report_to_dict(rep: VerificationReport) -> dict:
    return {
        "proposition": rep.proposition,
        "grid": [encode_number(y) for y in rep.grid],
        "max_abs_residual": encode_number(rep.max_abs_residual),
        "tolerance": rep.tolerance,
        "pass": rep.passed,
        "flags": list(rep.flags),
        "details": rep.details,
    }


def session_to_dict(s: Session) -> dict:
    return {
        "id": s.id,
        "state": s.state,
        "transcript": [
            {"question_id": e.question_id, **answer_to_dict(e.answer)}
            for e in s.transcript
        ],
        "inferred_preference": None if s.inferred is None else preference_to_dict(s.inferred),
    }
