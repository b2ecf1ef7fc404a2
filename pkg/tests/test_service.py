"""HTTP service: endpoints, status codes, byte-identity with the CLI."""

import json
import time
import urllib.parse

import pytest
from fastapi.testclient import TestClient

from protincome.cli import main as cli_main
from protincome.service import ServiceConfig, create_app

KA2 = {"family": "kolm_atkinson", "eta": 2}
KA3 = {"family": "kolm_atkinson", "eta": 3}


@pytest.fixture()
def client():
    return TestClient(create_app())


def cli_bytes(capsys, argv):
    code = cli_main(argv)
    out = capsys.readouterr().out
    assert code == 0
    return out.strip().encode()


# -- config ---------------------------------------------------------------------


def test_config_validation():
    ServiceConfig("0.0.0.0:8123", 60.0, 16)
    with pytest.raises(ValueError):
        ServiceConfig("nohost")
    with pytest.raises(ValueError):
        ServiceConfig("h:70000")
    with pytest.raises(ValueError):
        ServiceConfig("h:80", session_ttl=0.0)
    with pytest.raises(ValueError):
        ServiceConfig("h:80", default_grid=1)


# -- evaluate ---------------------------------------------------------------------


def test_evaluate(client):
    r = client.post("/v1/evaluate", json={"family": KA2, "distribution": [50, 200]})
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("application/json")
    assert r.content == b'{"ede":80.0,"welfare":-0.025}'


def test_evaluate_matches_cli_bytes(client, capsys):
    r = client.post("/v1/evaluate", json={"family": KA2, "distribution": [50, 200]})
    expected = cli_bytes(
        capsys, ["eval", "--family", json.dumps(KA2), "--dist", "50,200", "--json"]
    )
    assert r.content == expected


def test_evaluate_singular(client):
    r = client.post("/v1/evaluate", json={"family": KA2, "distribution": [0, 100]})
    assert r.status_code == 200
    payload = r.json()
    assert payload["welfare"] == "-inf"
    assert payload["ede"] == 0.0


def test_evaluate_malformed(client):
    assert client.post("/v1/evaluate", content=b"{oops").status_code == 400
    assert client.post("/v1/evaluate", json=[1, 2]).status_code == 400
    assert (
        client.post(
            "/v1/evaluate", json={"family": {"family": "nope"}, "distribution": [1]}
        ).status_code
        == 400
    )
    assert (
        client.post(
            "/v1/evaluate", json={"family": KA2, "distribution": "50,200"}
        ).status_code
        == 400
    )


def test_evaluate_domain_violations(client):
    bad_eta = {"family": "kolm_atkinson", "eta": -1}
    r = client.post("/v1/evaluate", json={"family": bad_eta, "distribution": [1]})
    assert r.status_code == 422
    assert "eta" in r.json()["error"]
    r = client.post("/v1/evaluate", json={"family": KA2, "distribution": []})
    assert r.status_code == 422
    r = client.post("/v1/evaluate", json={"family": KA2, "distribution": [-5.0]})
    assert r.status_code == 422


# -- protect ----------------------------------------------------------------------


def test_protect_spec_example(client):
    r = client.post("/v1/protect", json={"family": KA2, "y": 100})
    assert r.status_code == 200
    payload = r.json()
    assert payload["protected_income"] == 50.0
    assert payload["relative_damage"] == 0.5


def test_protect_matches_cli_bytes(client, capsys):
    r = client.post("/v1/protect", json={"family": KA3, "y": 100, "rivals": 1})
    expected = cli_bytes(
        capsys, ["protect", "--family", json.dumps(KA3), "--y", "100", "--json"]
    )
    assert r.content == expected


def test_protect_tradeoff_modes(client):
    r = client.post("/v1/protect", json={"family": KA2, "y": 100, "y2": 200})
    assert r.json()["tradeoff_income"] == pytest.approx(200.0 / 3.0, rel=1e-12)
    r = client.post("/v1/protect", json={"family": KA2, "y": 100, "y2": "inf"})
    assert r.json()["tradeoff_income"] == pytest.approx(50.0, rel=1e-12)


def test_protect_domain_violation_names_inequality(client):
    linear = {"family": "kolm_pollak", "alpha": 0}
    r = client.post("/v1/protect", json={"family": linear, "y": 100, "y2": 250})
    assert r.status_code == 422
    assert "f(y2)" in r.json()["error"]


def test_protect_malformed(client):
    assert client.post("/v1/protect", json={"family": KA2}).status_code == 400
    assert (
        client.post("/v1/protect", json={"family": KA2, "y": "x"}).status_code == 400
    )
    assert (
        client.post(
            "/v1/protect", json={"family": KA2, "y": 1, "rivals": "two"}
        ).status_code
        == 400
    )
    r = client.post("/v1/protect", json={"family": KA2, "y": 1, "rivals": 0})
    assert r.status_code == 422


# -- curve ------------------------------------------------------------------------


def curve_url(family, **params):
    q = {"family": json.dumps(family), **params}
    return "/v1/curve?" + urllib.parse.urlencode(q)


def test_curve_json(client):
    r = client.get(curve_url(KA2, ymin=1, ymax=100, points=5))
    assert r.status_code == 200
    rows = r.json()
    assert len(rows) == 5
    assert rows[0]["protected_income"] == 0.5


def test_curve_csv(client):
    r = client.get(curve_url(KA2, ymin=1, ymax=100, points=5, format="csv"))
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("text/csv")
    lines = r.text.strip().splitlines()
    assert lines[0] == "y,protected_income,collateral_damage,relative_damage"
    assert len(lines) == 6


def test_curve_matches_cli_bytes(client, capsys):
    r = client.get(curve_url(KA2, ymin=1, ymax=100, points=7))
    expected = cli_bytes(
        capsys,
        ["curve", "--family", json.dumps(KA2), "--y-min", "1", "--y-max", "100",
         "--points", "7", "--json"],
    )
    assert r.content == expected


def test_curve_default_points_from_config(client):
    app = create_app(ServiceConfig(default_grid=9))
    local = TestClient(app)
    r = local.get(curve_url(KA2, ymin=1, ymax=10))
    assert len(r.json()) == 9


def test_curve_errors(client):
    assert client.get("/v1/curve?ymin=1&ymax=2").status_code == 400
    assert client.get(curve_url(KA2, ymin=1, ymax=2, format="xml")).status_code == 400
    assert client.get(curve_url(KA2, ymin="a", ymax=2)).status_code == 400
    assert client.get(curve_url(KA2, ymin=10, ymax=1)).status_code == 422
    assert client.get(curve_url(KA2, ymin=1, ymax=10, points=1)).status_code == 422


# -- sessions ---------------------------------------------------------------------


def answer(kind, **params):
    return {"answer": {"kind": kind, "parameters": params}}


def test_session_full_flow(client):
    r = client.post("/v1/sessions")
    assert r.status_code == 200
    sid = r.json()["id"]
    assert r.json()["first_question"]["id"] == "q1"

    r = client.post(f"/v1/sessions/{sid}/answers",
                    json=answer("protected_fraction", fraction=0.5))
    assert r.status_code == 200
    assert r.json()["next_question"]["id"] == "q2_fraction"

    r = client.post(f"/v1/sessions/{sid}/answers",
                    json=answer("protected_fraction_two_rivals", fraction=1.0 / 3.0))
    assert r.status_code == 200
    pref = r.json()["inferred_preference"]
    assert pref["family"] == "kolm_atkinson"
    assert pref["eta"] == 2.0
    assert pref["consistent"] is True

    r = client.get(f"/v1/sessions/{sid}")
    assert r.status_code == 200
    body = r.json()
    assert body["state"] == "complete"
    assert len(body["transcript"]) == 2
    assert body["inferred_preference"]["coefficient"] == 2.0


def test_session_inference_matches_cli_bytes(client, capsys, tmp_path):
    transcript = [
        {"kind": "protected_fraction", "parameters": {"fraction": 0.5}},
        {"kind": "protected_fraction_two_rivals", "parameters": {"fraction": 1.0 / 3.0}},
    ]
    sid = client.post("/v1/sessions").json()["id"]
    client.post(f"/v1/sessions/{sid}/answers", json={"answer": transcript[0]})
    r = client.post(f"/v1/sessions/{sid}/answers", json={"answer": transcript[1]})

    p = tmp_path / "t.json"
    p.write_text(json.dumps(transcript))
    expected = cli_bytes(capsys, ["elicit", "--transcript", str(p), "--json"])
    assert r.content == b'{"inferred_preference":' + expected + b"}"


def test_session_aside_and_conflict(client):
    sid = client.post("/v1/sessions").json()["id"]
    r = client.post(f"/v1/sessions/{sid}/answers",
                    json=answer("leaky_bucket", ratio=2.0, take=8.0))
    assert r.status_code == 200
    assert r.json()["next_question"]["id"] == "q1"

    client.post(f"/v1/sessions/{sid}/answers",
                json=answer("constant_damage", damage=5.0))
    client.post(f"/v1/sessions/{sid}/answers",
                json=answer("constant_damage_two_rivals", damage=8.0))
    r = client.post(f"/v1/sessions/{sid}/answers",
                    json=answer("constant_damage", damage=5.0))
    assert r.status_code == 409

    body = client.get(f"/v1/sessions/{sid}").json()
    kinds = [e["question_id"] for e in body["transcript"]]
    assert kinds == ["aside", "q1", "q2_damage"]


def test_session_wrong_kind_is_422(client):
    sid = client.post("/v1/sessions").json()["id"]
    r = client.post(f"/v1/sessions/{sid}/answers",
                    json=answer("constant_damage_two_rivals", damage=3.0))
    assert r.status_code == 422
    assert "not accepted" in r.json()["error"]


def test_session_answer_bound_violation_is_422(client):
    sid = client.post("/v1/sessions").json()["id"]
    r = client.post(f"/v1/sessions/{sid}/answers",
                    json=answer("protected_fraction", fraction=1.5))
    assert r.status_code == 422


def test_session_malformed_answer_is_400(client):
    sid = client.post("/v1/sessions").json()["id"]
    assert (
        client.post(f"/v1/sessions/{sid}/answers", json={"answer": "hm"}).status_code
        == 400
    )
    assert (
        client.post(f"/v1/sessions/{sid}/answers",
                    json=answer("banana", x=1)).status_code
        == 400
    )
    assert client.post(f"/v1/sessions/{sid}/answers", content=b"{").status_code == 400


def test_unknown_session_404(client):
    assert client.get("/v1/sessions/deadbeef").status_code == 404
    r = client.post("/v1/sessions/deadbeef/answers",
                    json=answer("protected_fraction", fraction=0.5))
    assert r.status_code == 404


def test_session_ttl_eviction():
    app = create_app(ServiceConfig(session_ttl=0.05))
    local = TestClient(app)
    sid = local.post("/v1/sessions").json()["id"]
    assert local.get(f"/v1/sessions/{sid}").status_code == 200
    time.sleep(0.12)
    assert local.get(f"/v1/sessions/{sid}").status_code == 404


# -- leaky-bucket helper --------------------------------------------------------------


def test_leaky_bucket_endpoint(client):
    r = client.post("/v1/infer/leaky-bucket", json={"ratio": 2, "take": 8})
    assert r.status_code == 200
    assert r.json()["coefficient"] == 3.0
    r = client.post("/v1/infer/leaky-bucket", json={"ratio": 1, "take": 8})
    assert r.status_code == 422
    r = client.post("/v1/infer/leaky-bucket", json={"ratio": 2})
    assert r.status_code == 400


# -- misc -------------------------------------------------------------------------------


def test_health(client):
    r = client.get("/v1/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}
