import json

import pytest
from fastapi.testclient import TestClient

from qbakit.service import create_app

APPENDIX_PAYLOAD = {
    "table": {"a": 100, "b": 100, "n_target": 100000, "n_comparator": 100000},
    "errors": {"target": {"sensitivity": 0.5, "specificity": 0.99}},
}

VALID_PAYLOAD = {
    "table": {"a": 100, "b": 100, "n_target": 100000, "n_comparator": 100000},
    "errors": {"target": {"sensitivity": 0.5, "specificity": 0.9991}},
}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_healthz(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.json() == {"ok": True}


class TestCorrect:
    def test_invalid_correction_is_a_domain_answer(self, client):
        response = client.post("/api/v1/correct", json=APPENDIX_PAYLOAD)
        assert response.status_code == 200
        body = response.json()
        assert body["ok"] is True
        correction = body["result"]["correction"]
        assert correction["kind"] == "invalid"
        target = correction["diagnostics"][0]
        assert target["corrected_positive"] == pytest.approx(-1836.73, abs=0.01)
        assert target["reason"] == "negative_cell"

    def test_valid_correction(self, client):
        response = client.post("/api/v1/correct", json=VALID_PAYLOAD)
        body = response.json()
        assert body["ok"] is True
        assert body["result"]["correction"]["kind"] == "corrected"
        assert body["result"]["metrics"]["relative_bias_pct"] == pytest.approx(0.0)

    def test_perfect_classification_reproduces_observed(self, client):
        payload = {
            "table": {"a": 120, "b": 80, "n_target": 1000, "n_comparator": 1000},
            "errors": {"target": {"sensitivity": 1, "specificity": 1}},
        }
        result = client.post("/api/v1/correct", json=payload).json()["result"]
        assert result["correction"]["A"] == 120
        assert result["correction"]["B"] == 80

    def test_differential_mode(self, client):
        payload = {
            "table": {"a": 500, "b": 500, "n_target": 10000, "n_comparator": 10000},
            "errors": {
                "mode": "differential",
                "target": {"sensitivity": 0.8, "specificity": 0.99},
                "comparator": {"sensitivity": 0.6, "specificity": 0.98},
            },
        }
        result = client.post("/api/v1/correct", json=payload).json()["result"]
        assert result["error_model"]["mode"] == "differential"
        assert result["correction"]["kind"] == "corrected"

    def test_malformed_json_is_400(self, client):
        response = client.post(
            "/api/v1/correct", content=b"{not json",
            headers={"content-type": "application/json"},
        )
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "malformed_json"

    def test_missing_field_is_422_with_field_name(self, client):
        payload = {"table": {"a": 1, "n_target": 10, "n_comparator": 10}}
        response = client.post("/api/v1/correct", json=payload)
        assert response.status_code == 422
        body = response.json()
        assert body["ok"] is False
        assert body["error"]["diagnostics"]["field"] == "b"

    def test_precondition_violation_is_422(self, client):
        payload = {
            "table": {"a": 100, "b": 100, "n_target": 10, "n_comparator": 10},
            "errors": {"target": {"sensitivity": 0.9, "specificity": 0.9}},
        }
        response = client.post("/api/v1/correct", json=payload)
        assert response.status_code == 422

    def test_etag_is_strong_and_deterministic(self, client):
        first = client.post("/api/v1/correct", json=VALID_PAYLOAD)
        second = client.post("/api/v1/correct", json=VALID_PAYLOAD)
        other = client.post("/api/v1/correct", json=APPENDIX_PAYLOAD)
        assert first.headers["etag"] == second.headers["etag"]
        assert first.headers["etag"] != other.headers["etag"]
        assert first.headers["etag"].startswith('"')


class TestSweep:
    def test_frontier_document(self, client):
        payload = {
            "table": VALID_PAYLOAD["table"],
            "sens_min": 0.5, "sens_max": 0.5,
            "spec_min": 0.99, "spec_max": 1.0, "step": 1e-4,
        }
        response = client.post("/api/v1/sweep", json=payload)
        body = response.json()
        assert body["ok"] is True
        rows = body["result"]["rows"]
        assert len(rows) == 1
        assert rows[0]["min_valid_specificity"] == pytest.approx(0.9991)

    def test_full_grid_window(self, client):
        payload = {
            "table": VALID_PAYLOAD["table"],
            "sens_min": 0.5, "sens_max": 0.6,
            "spec_min": 0.999, "spec_max": 1.0, "step": 0.001,
            "emit": "full_grid",
        }
        body = client.post("/api/v1/sweep", json=payload).json()
        assert body["ok"] is True
        assert len(body["result"]["cells"]) == 202

    def test_oversized_window_is_413(self, client):
        payload = {
            "table": VALID_PAYLOAD["table"],
            "step": 1e-4,
            "emit": "full_grid",
        }
        response = client.post("/api/v1/sweep", json=payload)
        assert response.status_code == 413
        assert response.json()["error"]["code"] == "window_too_large"

    def test_bad_bounds_is_422(self, client):
        payload = {
            "table": VALID_PAYLOAD["table"],
            "sens_min": 0.9, "sens_max": 0.5,
        }
        assert client.post("/api/v1/sweep", json=payload).status_code == 422


class TestSynth:
    def test_published_stratum(self, client):
        response = client.get(
            "/api/v1/synth/stratum", params={"ip": 0.1, "or": 1.001}
        )
        body = response.json()
        assert body["ok"] is True
        result = body["result"]
        assert result["estimable"] == pytest.approx(0.855)
        points = {row["point"]: row for row in result["percentiles"]}
        assert points["max"]["or_qba"] == pytest.approx(1.019, abs=1e-3)
        assert points["max"]["sensitivity"] == pytest.approx(0.15)
        assert points["max"]["specificity"] == pytest.approx(0.905263, abs=1e-6)

    def test_missing_or_is_422(self, client):
        response = client.get("/api/v1/synth/stratum", params={"ip": 0.1})
        assert response.status_code == 422
        assert response.json()["error"]["diagnostics"]["field"] == "or"

    def test_out_of_domain_is_422(self, client):
        response = client.get(
            "/api/v1/synth/stratum", params={"ip": 2.0, "or": 1.5}
        )
        assert response.status_code == 422

    def test_estimable_curve(self, client):
        response = client.get("/api/v1/synth/estimable")
        body = response.json()
        assert body["ok"] is True
        assert len(body["result"]) == 30
        by_key = {(r["incidence"], r["or"]): r["estimable"] for r in body["result"]}
        assert by_key[(0.1, 1.001)] == pytest.approx(0.855)
        assert by_key[(1e-5, 10.0)] == pytest.approx(0.165)

    def test_bad_n_is_422(self, client):
        response = client.get("/api/v1/synth/estimable", params={"n": -1})
        assert response.status_code == 422


class TestCrossInterface:
    def test_service_matches_cli_bitwise(self, client, capsys):
        from qbakit.cli import main

        main([
            "correct", "--a", "100", "--b", "100",
            "--n1", "100000", "--n0", "100000",
            "--sens", "0.5", "--spec", "0.9991", "--format", "json",
        ])
        cli_doc = json.loads(capsys.readouterr().out)
        service_doc = client.post("/api/v1/correct", json=VALID_PAYLOAD).json()[
            "result"
        ]
        assert cli_doc["corrected_estimate"] == service_doc["corrected_estimate"]
        assert cli_doc["correction"] == service_doc["correction"]
        assert cli_doc["metrics"] == service_doc["metrics"]
