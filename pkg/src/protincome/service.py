"""HTTP JSON service under /v1.

Stateless except for elicitation sessions, which live in memory with a
TTL and die with the process; clients export transcripts they want to
keep. Every JSON body is serialized through jsonio.dumps, bypassing the
framework encoder, so responses are byte-identical to the CLI's --json
output for the same core query.

Status codes: 400 malformed body or family/answer structure, 404
unknown session, 409 answer to a completed session, 422 a domain bound
violated (the body names the inequality).
"""

from __future__ import annotations

import json
import math
import threading
import time
from dataclasses import dataclass
from typing import Optional, Tuple

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import jsonio
from .elicitation import (
    InferredPreference,
    Session,
    answer_from_dict,
    apply_answer,
    leaky_bucket_coefficient,
    next_question,
)
from .errors import SessionStateError, WelfareError
from .families import Distribution, family_from_dict
from .protection import curve_points, protected_income, tradeoff_income

__all__ = ["ServiceConfig", "SessionStore", "create_app"]


@dataclass(frozen=True)
class ServiceConfig:
    bind_address: str = "127.0.0.1:8000"
    session_ttl: float = 3600.0
    default_grid: int = 64

    def __post_init__(self) -> None:
        host, _, port = self.bind_address.rpartition(":")
        if not host or not port.isdigit():
            raise ValueError(f"bind_address must be host:port, got {self.bind_address!r}")
        if not 1 <= int(port) <= 65535:
            raise ValueError(f"port must lie in [1, 65535], got {port}")
        if not self.session_ttl > 0:
            raise ValueError(f"session_ttl must be positive, got {self.session_ttl!r}")
        if self.default_grid < 2:
            raise ValueError(f"default_grid must be >= 2, got {self.default_grid!r}")

    @property
    def host(self) -> str:
        return self.bind_address.rpartition(":")[0]

    @property
    def port(self) -> int:
        return int(self.bind_address.rpartition(":")[2])


class SessionStore:
    """In-memory sessions with TTL eviction and a lock per session."""

    def __init__(self, ttl: float):
        self._ttl = ttl
        self._guard = threading.Lock()
        self._entries: dict = {}  # id -> [session, lock, deadline]

    def _sweep(self, now: float) -> None:
        dead = [sid for sid, (_, _, deadline) in self._entries.items() if deadline < now]
        for sid in dead:
            del self._entries[sid]

    def create(self) -> Session:
        session = Session()
        now = time.monotonic()
        with self._guard:
            self._sweep(now)
            self._entries[session.id] = [session, threading.Lock(), now + self._ttl]
        return session

    def get(self, sid: str) -> Optional[Tuple[Session, threading.Lock]]:
        now = time.monotonic()
        with self._guard:
            self._sweep(now)
            entry = self._entries.get(sid)
            if entry is None:
                return None
            entry[2] = now + self._ttl  # touch
            return entry[0], entry[1]


def _json_response(payload, status: int = 200) -> Response:
    return Response(
        content=jsonio.dumps(payload), status_code=status, media_type="application/json"
    )


def _error(status: int, message: str) -> Response:
    return _json_response({"error": message}, status)


async def _read_object(request: Request) -> dict:
    raw = await request.body()
    try:
        payload = json.loads(raw) if raw else {}
    except json.JSONDecodeError as e:
        raise _BadRequest(f"body is not valid JSON: {e}") from None
    if not isinstance(payload, dict):
        raise _BadRequest("body must be a JSON object")
    return payload


class _BadRequest(Exception):
    pass


def _number(payload: dict, key: str, default=None) -> float:
    if key not in payload:
        if default is None:
            raise _BadRequest(f"missing required field {key!r}")
        return default
    value = payload[key]
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _BadRequest(f"field {key!r} must be a number")
    return float(value)


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="protincome", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = SessionStore(config.session_ttl)
    app.state.config = config
    app.state.sessions = store

    @app.exception_handler(_BadRequest)
    async def _on_bad_request(request, exc):
        return _error(400, str(exc))

    @app.exception_handler(SessionStateError)
    async def _on_conflict(request, exc):
        return _error(409, str(exc))

    @app.exception_handler(WelfareError)
    async def _on_domain(request, exc):
        return _error(422, str(exc))

    @app.exception_handler(ValueError)
    async def _on_malformed(request, exc):
        return _error(400, str(exc))

    @app.get("/v1/health")
    async def health():
        return _json_response({"status": "ok"})

    @app.post("/v1/evaluate")
    async def evaluate(request: Request):
        payload = await _read_object(request)
        fam = family_from_dict(payload.get("family"))
        incomes = payload.get("distribution")
        if not isinstance(incomes, list) or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) for v in incomes
        ):
            raise _BadRequest("field 'distribution' must be a list of numbers")
        dist = Distribution(incomes)
        return _json_response(
            {
                "welfare": jsonio.encode_number(fam.welfare(dist)),
                "ede": fam.ede(dist),
            }
        )

    @app.post("/v1/protect")
    async def protect(request: Request):
        payload = await _read_object(request)
        fam = family_from_dict(payload.get("family"))
        y = _number(payload, "y")
        if "y2" in payload:
            y2 = _number(payload, "y2")
            return _json_response(
                {
                    "y": y,
                    "y2": jsonio.encode_number(y2),
                    "tradeoff_income": tradeoff_income(fam, y2, y),
                }
            )
        rivals = payload.get("rivals", 1)
        if isinstance(rivals, bool) or not isinstance(rivals, int):
            raise _BadRequest("field 'rivals' must be an integer")
        result = protected_income(fam, y, rivals)
        return _json_response(jsonio.protection_result_to_dict(result))

    @app.get("/v1/curve")
    async def curve(request: Request):
        params = request.query_params
        raw_family = params.get("family")
        if raw_family is None:
            raise _BadRequest("missing query parameter 'family'")
        try:
            family_obj = json.loads(raw_family)
        except json.JSONDecodeError as e:
            raise _BadRequest(f"'family' is not valid JSON: {e}") from None
        fam = family_from_dict(family_obj)
        try:
            y_min = float(params.get("ymin", ""))
            y_max = float(params.get("ymax", ""))
        except ValueError:
            raise _BadRequest("query parameters 'ymin' and 'ymax' must be numbers") from None
        try:
            points = int(params.get("points", str(config.default_grid)))
        except ValueError:
            raise _BadRequest("query parameter 'points' must be an integer") from None
        fmt = params.get("format", "json")
        if fmt not in ("json", "csv"):
            raise _BadRequest("query parameter 'format' must be 'json' or 'csv'")
        rows = curve_points(fam, y_min, y_max, points)
        if fmt == "csv":
            return Response(content=jsonio.curve_csv(rows) + "\n", media_type="text/csv")
        return _json_response(jsonio.curve_rows_to_dicts(rows))

    @app.post("/v1/sessions")
    async def create_session(request: Request):
        await _read_object(request)  # reject malformed bodies even though none is needed
        session = store.create()
        return _json_response(
            {
                "id": session.id,
                "first_question": jsonio.question_to_dict(next_question(session)),
            }
        )

    @app.get("/v1/sessions/{sid}")
    async def get_session(sid: str):
        entry = store.get(sid)
        if entry is None:
            return _error(404, f"unknown session {sid!r}")
        session, lock = entry
        with lock:
            return _json_response(jsonio.session_to_dict(session))

    @app.post("/v1/sessions/{sid}/answers")
    async def post_answer(sid: str, request: Request):
        payload = await _read_object(request)
        entry = store.get(sid)
        if entry is None:
            return _error(404, f"unknown session {sid!r}")
        answer = answer_from_dict(payload.get("answer"))
        session, lock = entry
        with lock:
            outcome = apply_answer(session, answer)
        if isinstance(outcome, InferredPreference):
            return _json_response(
                {"inferred_preference": jsonio.preference_to_dict(outcome)}
            )
        return _json_response({"next_question": jsonio.question_to_dict(outcome)})

    @app.post("/v1/infer/leaky-bucket")
    async def infer_leaky_bucket(request: Request):
        payload = await _read_object(request)
        ratio = _number(payload, "ratio")
        take = _number(payload, "take")
        return _json_response(
            {
                "ratio": ratio,
                "take": take,
                "coefficient": leaky_bucket_coefficient(ratio, take),
            }
        )

    return app
