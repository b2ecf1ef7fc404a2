"""Command-line interface.

Subcommands: eval, protect, curve, elicit, verify, serve. Parse errors
exit 2 with usage; domain errors exit 1 with a message naming the
violated bound. `--json` switches every subcommand to the machine
format, emitted through the same serialization path as the HTTP
service, so identical queries give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

from . import jsonio
from .charlab import (
    build_cdpi_family,
    build_crpi_family,
    linear_grid,
    log_grid,
    verify_elasticity_consistency,
    verify_existence,
    verify_invariance,
    verify_protection_law,
    verify_rigidity,
    verify_threshold_law,
)
from .elicitation import (
    LeakyBucket,
    Session,
    answer_from_dict,
    apply_answer,
    leaky_bucket_coefficient,
    next_question,
    replay,
)
from .errors import WelfareError
from .families import (
    Cpie,
    Distribution,
    KolmAtkinson,
    KolmPollak,
    family_from_dict,
)
from .profiles import DifferenceLaw, ElasticityLaw, FractionLaw, PeriodicProfile
from .protection import curve_points, protected_income, tradeoff_income

LN2 = math.log(2.0)


def _json_arg(text: str) -> dict:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as e:
        raise argparse.ArgumentTypeError(f"not valid JSON: {e}") from None
    if not isinstance(value, dict):
        raise argparse.ArgumentTypeError("expected a JSON object")
    return value


def _dist_arg(text: str) -> list:
    """Inline comma-separated incomes, or a path to a file of incomes."""
    if os.path.exists(text):
        with open(text) as fh:
            raw = fh.read().replace(",", " ").split()
    else:
        raw = [t for t in text.split(",") if t.strip()]
    try:
        return [float(t) for t in raw]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"distribution must be comma-separated numbers or a file of them, got {text!r}"
        ) from None


def _y2_arg(text: str) -> float:
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="protincome",
        description="Protected incomes under additively separable welfare.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="welfare and equally-distributed equivalent")
    p.add_argument("--family", type=_json_arg, required=True, metavar="JSON")
    p.add_argument("--dist", type=_dist_arg, required=True, metavar="CSV")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("protect", help="protected income and collateral damage")
    p.add_argument("--family", type=_json_arg, required=True, metavar="JSON")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--rivals", type=int, default=1)
    p.add_argument("--y2", type=_y2_arg, default=None,
                   help="rival income: evaluate the trade-off curve instead of its limit")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("curve", help="protection curve as CSV (or JSON)")
    p.add_argument("--family", type=_json_arg, required=True, metavar="JSON")
    p.add_argument("--y-min", type=float, required=True)
    p.add_argument("--y-max", type=float, required=True)
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--out", default=None, metavar="FILE")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("elicit", help="preference elicitation session")
    p.add_argument("--transcript", default=None, metavar="FILE",
                   help="JSON list of answers to replay instead of interactive prompts ('-' for stdin)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="numerical verification sweeps")
    p.add_argument("--prop", type=int, required=True, choices=range(1, 9))
    p.add_argument("--params", type=_json_arg, default=None, metavar="JSON")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help="default 8000; the PORT environment variable overrides")
    p.add_argument("--session-ttl", type=float, default=3600.0)
    p.add_argument("--default-grid", type=int, default=64)

    return parser


# -- subcommands ---------------------------------------------------------------


def _cmd_eval(args) -> int:
    fam = family_from_dict(args.family)
    dist = Distribution(args.dist)
    welfare = fam.welfare(dist)
    ede = fam.ede(dist)
    if args.json:
        print(jsonio.dumps({"welfare": jsonio.encode_number(welfare), "ede": ede}))
    else:
        print(f"welfare = {welfare.value}")
        print(f"ede = {ede}")
    return 0


def _cmd_protect(args) -> int:
    fam = family_from_dict(args.family)
    if args.y2 is not None:
        remaining = tradeoff_income(fam, args.y2, args.y)
        if args.json:
            print(jsonio.dumps({"y": args.y, "y2": jsonio.encode_number(args.y2),
                                "tradeoff_income": remaining}))
        else:
            print(f"tradeoff_income = {remaining}")
        return 0
    result = protected_income(fam, args.y, args.rivals)
    if args.json:
        print(jsonio.dumps(jsonio.protection_result_to_dict(result)))
    else:
        print(f"protected_income = {result.protected_income}")
        print(f"collateral_damage = {result.collateral_damage}")
        print(f"relative_damage = {result.relative_damage}")
        print(f"positive = {result.positive}")
        print(f"method = {result.method}")
    return 0


def _cmd_curve(args) -> int:
    fam = family_from_dict(args.family)
    rows = curve_points(fam, args.y_min, args.y_max, args.points)
    if args.json:
        text = jsonio.dumps(jsonio.curve_rows_to_dicts(rows))
    else:
        text = jsonio.curve_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _print_question(q) -> None:
    print(f"[{q.id}] {q.prompt}")
    print(f"  answer kinds: {', '.join(q.accepted)}")
    print("  format: <kind> <value> [<value2>]  (e.g. 'protected_fraction 0.5')")


def _parse_answer_line(line: str):
    parts = line.split()
    if not parts:
        raise ValueError("empty answer")
    kind, values = parts[0], [float(t) for t in parts[1:]]
    shapes = {
        "protected_fraction": ("fraction",),
        "constant_damage": ("damage",),
        "protected_fraction_two_rivals": ("fraction",),
        "constant_damage_two_rivals": ("damage",),
        "elasticity": ("elasticity", "floor"),
        "elasticity_two_rivals": ("elasticity", "floor"),
        "leaky_bucket": ("ratio", "take"),
    }
    if kind not in shapes:
        raise ValueError(f"unknown answer kind {kind!r}")
    names = shapes[kind]
    if len(values) != len(names):
        raise ValueError(f"{kind} takes {len(names)} value(s): {' '.join(names)}")
    return answer_from_dict({"kind": kind, "parameters": dict(zip(names, values))})


def _print_preference(pref, as_json: bool) -> None:
    if as_json:
        print(jsonio.dumps(jsonio.preference_to_dict(pref)))
        return
    d = jsonio.preference_to_dict(pref)
    print(f"family = {d['family']}")
    print(f"coefficient = {pref.coefficient}")
    print(f"consistent = {pref.diagnostics.consistent}")
    if not pref.diagnostics.consistent:
        print(f"inconsistency = {pref.diagnostics.inconsistency}")
        print(f"residuals = {list(pref.diagnostics.residuals)}")
    for flag in pref.diagnostics.flags:
        print(f"flag: {flag}")


def _cmd_elicit(args) -> int:
    if args.transcript is not None:
        if args.transcript == "-":
            raw = sys.stdin.read()
        else:
            with open(args.transcript) as fh:
                raw = fh.read()
        answers = json.loads(raw)
        if not isinstance(answers, list):
            raise WelfareError("transcript must be a JSON list of answers")
        session = replay([answer_from_dict(a) for a in answers])
        if session.inferred is None:
            raise WelfareError(
                "transcript ended before the cross-check; no preference inferred"
            )
        _print_preference(session.inferred, args.json)
        return 0
    # interactive: two main questions; leaky-bucket asides allowed anywhere
    session = Session()
    while session.state != "complete":
        q = next_question(session)
        _print_question(q)
        line = input("> ")
        try:
            answer = _parse_answer_line(line)
        except ValueError as e:
            print(f"  {e}", file=sys.stderr)
            continue
        try:
            apply_answer(session, answer)
        except WelfareError as e:
            print(f"  {e}", file=sys.stderr)
            continue
        if isinstance(answer, LeakyBucket):
            implied = leaky_bucket_coefficient(answer.ratio, answer.take)
            print(f"  noted; implied coefficient {implied} (aside)")
    _print_preference(session.inferred, args.json)
    return 0


def _three_knot_profile(length: float) -> PeriodicProfile:
    # interior knot pushed off the chord: the canonical nonlinear example
    return PeriodicProfile(
        (0.0, 0.5 * length, length), (0.0, -0.75 * LN2, -LN2), LN2
    )


def _family_from_params(params: dict, default):
    """Params may be the family object itself, with sweep keys alongside."""
    spare = {k: v for k, v in params.items()
             if k not in ("samples", "seed", "y_min", "y_max", "points")}
    if not spare:
        return default
    return family_from_dict(spare)


def _run_verification(prop: int, params: Optional[dict]):
    params = params or {}
    if prop == 1:
        fam = _family_from_params(params, KolmPollak(LN2 / 10.0))
        lo = params.get("y_min", fam.domain_floor + 1.0)
        hi = params.get("y_max", 40.0 + fam.domain_floor)
        n = int(params.get("points", 79))
        return verify_existence(fam, linear_grid(lo, hi, n))
    if prop == 2:
        lam = params.get("fraction", 0.5)
        knots = params.get("profile")
        profile = (
            PeriodicProfile(tuple(p for p, _ in knots), tuple(g for _, g in knots), LN2)
            if knots
            else _three_knot_profile(-math.log(lam))
        )
        fam = build_crpi_family(lam, profile)
        return verify_protection_law(fam, FractionLaw(lam), log_grid(0.1, 100.0, 64))
    if prop == 3:
        lam = params.get("fraction", 0.5)
        knots = params.get("profile")
        profile = (
            PeriodicProfile(tuple(p for p, _ in knots), tuple(g for _, g in knots), LN2)
            if knots
            else _three_knot_profile(-math.log(lam))
        )
        return verify_rigidity(lam, profile, log_grid(0.1, 100.0, 24))
    if prop == 4:
        delta = params.get("difference", 10.0)
        knots = params.get("profile")
        profile = (
            PeriodicProfile(tuple(p for p, _ in knots), tuple(g for _, g in knots), LN2)
            if knots
            else _three_knot_profile(delta)
        )
        fam = build_cdpi_family(delta, profile)
        return verify_protection_law(
            fam, DifferenceLaw(delta), linear_grid(delta + 0.5, delta * 8.0, 64)
        )
    if prop == 5:
        alpha = params.get("alpha", LN2 / 10.0)
        return verify_threshold_law(alpha, linear_grid(1.0, 6.0 * LN2 / alpha, 64))
    if prop == 6:
        gamma = params.get("gamma", 2.0)
        c = params.get("c", 1.0)
        fam = Cpie(gamma, c)
        beta = 2.0 ** (1.0 / (1.0 - gamma))
        return verify_protection_law(
            fam,
            ElasticityLaw(beta, c),
            log_grid(c * math.e**0.25, c * math.e**4.0, 64),
        )
    if prop == 7:
        gamma = params.get("gamma", 2.0)
        c = params.get("c", 1.0)
        return verify_elasticity_consistency(gamma, c)
    # prop 8: invariance, kind chosen by the family
    fam = _family_from_params(params, KolmAtkinson(2.0))
    kinds = {KolmAtkinson: "scale", KolmPollak: "translation", Cpie: "compound"}
    kind = kinds.get(type(fam))
    if kind is None:
        raise WelfareError(
            f"no invariance suite for {type(fam).__name__}; "
            "use a kolm_atkinson, kolm_pollak, or cpie family"
        )
    samples = int(params.get("samples", 1000))
    seed = params.get("seed")
    if seed is None:
        return verify_invariance(fam, kind, samples=samples)
    return verify_invariance(fam, kind, samples=samples, seed=int(seed))


def _cmd_verify(args) -> int:
    report = _run_verification(args.prop, args.params)
    if args.json:
        print(jsonio.dumps(jsonio.report_to_dict(report)))
    else:
        print(f"proposition       {report.proposition}")
        print(f"grid points       {len(report.grid)}")
        print(f"max abs residual  {report.max_abs_residual}")
        print(f"tolerance         {report.tolerance}")
        print(f"pass              {report.passed}")
        for flag in report.flags:
            print(f"flag              {flag}")
        for key, value in report.details.items():
            print(f"{key:<17} {value}")
    return 0 if report.passed else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    port = args.port
    if port is None:
        port = int(os.environ.get("PORT", "8000"))
    config = ServiceConfig(
        bind_address=f"{args.host}:{port}",
        session_ttl=args.session_ttl,
        default_grid=args.default_grid,
    )
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "eval": _cmd_eval,
        "protect": _cmd_protect,
        "curve": _cmd_curve,
        "elicit": _cmd_elicit,
        "verify": _cmd_verify,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (WelfareError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
