"""HTTP surface: request/response contracts and error mapping."""

import pytest
from fastapi.testclient import TestClient

from burstmux.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200 and r.json() == {"status": "ok"}


def test_design_endpoint(client):
    r = client.post("/design", json={"tv": 4, "tu": 2, "b": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["rates"] == {"rv": "2/5", "ru": "2/5"}
    assert body["dimensions"] == {"n": 5, "kv": 2, "ku": 2}
    assert body["descriptor"]["kind"] == "multiplexed"
    assert len(body["code_hash"]) == 64


def test_design_with_target(client):
    r = client.post(
        "/design",
        json={"tv": 4, "tu": 2, "b": 1, "target_rv": "0.6", "target_ru": "0.2"},
    )
    assert r.status_code == 200
    assert r.json()["rates"] == {"rv": "3/5", "ru": "1/5"}
    assert r.json()["descriptor"]["kind"] == "time_share"


def test_design_regime_error(client):
    r = client.post("/design", json={"tv": 4, "tu": 2, "b": 2})
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "RegimeError"


def test_design_target_error(client):
    r = client.post(
        "/design",
        json={"tv": 4, "tu": 2, "b": 1, "target_rv": "1/2", "target_ru": "1/2"},
    )
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "TargetError"


def test_verify_endpoint_pass_and_fail(client):
    desc = client.post("/design", json={"tv": 4, "tu": 2, "b": 1}).json()["descriptor"]
    r = client.post("/verify", json={"descriptor": desc, "burst": 1})
    assert r.status_code == 200 and r.json()["verdict"] == "pass"
    r = client.post("/verify", json={"descriptor": desc, "burst": 2})
    assert r.status_code == 200
    body = r.json()
    assert body["verdict"] == "fail" and body["failures"]


def test_verify_rejects_bad_descriptor(client):
    r = client.post("/verify", json={"descriptor": {"kind": "nope"}, "burst": 1})
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "DescriptorError"


def test_region_endpoint(client):
    r = client.post("/region", json={"tv": 4, "tu": 2, "b": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["case_tag"] == "main_case"
    assert body["vertices"] == [["0", "0"], ["4/5", "0"], ["2/5", "2/5"], ["0", "2/3"]]
    assert body["constraints"] == [["1", "3/2", "1"], ["1", "1", "4/5"]]


def test_region_invalid(client):
    r = client.post("/region", json={"tv": 1, "tu": 1, "b": 3})
    assert r.status_code == 400


def test_simulate_endpoint(client):
    desc = client.post("/design", json={"tv": 4, "tu": 2, "b": 1}).json()["descriptor"]
    r = client.post(
        "/simulate",
        json={"descriptor": desc, "pattern": "burst:4,1", "slots": 30, "seed": 9},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["v"]["recovered"] == 30 and body["within_contract"]
    r = client.post(
        "/simulate",
        json={"descriptor": desc, "pattern": "nonsense", "slots": 10, "seed": 0},
    )
    assert r.status_code == 400


def test_validation_error_is_422(client):
    r = client.post("/design", json={"tv": "four"})
    assert r.status_code == 422
