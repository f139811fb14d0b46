import pytest
from fastapi.testclient import TestClient

from rmzeta.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c


def test_healthz(client):
    body = client.get("/healthz").json()
    assert body["status"] == "ok"


class TestCfEndpoint:
    def test_golden_shorthand(self, client):
        r = client.post("/cf", json={"theta": "golden"})
        assert r.status_code == 200
        body = r.json()
        assert body["continued_fraction"] == {"preperiod": [], "period": [1]}
        assert body["matrix_a"]["rows"] == [["2", "1"], ["1", "1"]]
        assert body["trace"] == "3"
        assert body["hyperbolic_discriminant"] == "5"
        assert body["fundamental_unit"]["norm"] == -1

    def test_structured_theta(self, client):
        r = client.post("/cf", json={"theta": {"p": 0, "d": 2, "q": 1}})
        assert r.status_code == 200
        assert r.json()["continued_fraction"] == {"preperiod": [1], "period": [2]}

    def test_square_rejected(self, client):
        r = client.post("/cf", json={"theta": "sqrt:9"})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "invalid_theta"

    def test_malformed_request(self, client):
        assert client.post("/cf", json={}).status_code == 422


class TestK0Endpoint:
    def test_trivial_group(self, client):
        body = client.post("/k0", json={"matrix": [[2]]}).json()
        assert body["group"] == {"free_rank": 0, "torsion": []}
        assert body["order"] == "1"
        assert body["k1_rank"] == 0

    def test_infinite_group(self, client):
        body = client.post("/k0", json={"matrix": [[1]]}).json()
        assert body["group"]["free_rank"] == 1
        assert body["order"] is None
        assert body["k1_rank"] == 1

    def test_negative_entries_need_trusted(self, client):
        r = client.post("/k0", json={"matrix": [[7, 3], [-1, 0]]})
        assert r.status_code == 400
        r = client.post("/k0", json={"matrix": [[7, 3], [-1, 0]], "trusted": True})
        assert r.json()["group"]["torsion"] == [3]

    def test_wire_matrix_object(self, client):
        r = client.post(
            "/k0",
            json={"matrix": {"n": 1, "rows": [["2"]]}},
        )
        assert r.json()["order"] == "1"


class TestCountEndpoint:
    def test_with_theta(self, client):
        r = client.post(
            "/count",
            json={"curve": "cm:-4", "prime": 5, "n_max": 2, "theta": "golden"},
        )
        body = r.json()
        assert [row["count_recursion"] for row in body["rows"]] == [4, 32]
        assert body["rows"][0]["k0_matches_count"] is False

    def test_bad_prime(self, client):
        body = client.post("/count", json={"curve": "cm:-4", "prime": 2}).json()
        assert body["reduction"] == "unsupported"

    def test_composite_rejected(self, client):
        r = client.post("/count", json={"curve": "cm:-4", "prime": 6})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "not_prime"

    def test_curve_pair_spec(self, client):
        r = client.post("/count", json={"curve": "1,0", "prime": 13})
        assert r.status_code == 200
        assert r.json()["rows"][0]["count_recursion"] == 20


class TestReciprocityEndpoint:
    def test_basic_run(self, client):
        r = client.post(
            "/reciprocity",
            json={"curve": "cm:-4", "theta": "golden", "primes": {"start": 5, "end": 30}},
        )
        body = r.json()
        assert body["summary"] == {"match": 0, "mismatch": 8, "skip": 0}
        assert [row["prime"] for row in body["rows"]] == [5, 7, 11, 13, 17, 19, 23, 29]

    def test_deterministic_payload(self, client):
        payload = {"curve": "cm:-3", "theta": "sqrt:2", "primes": {"start": 5, "end": 20}}
        assert client.post("/reciprocity", json=payload).json() == client.post(
            "/reciprocity", json=payload
        ).json()

    def test_singular_curve_rejected(self, client):
        r = client.post(
            "/reciprocity",
            json={"curve": "-3,2", "theta": "golden", "primes": {"start": 5, "end": 10}},
        )
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "invalid_curve"


class TestLemmasEndpoint:
    def test_small_sweep_passes(self, client):
        body = client.post("/lemmas", json={"sweep_bound": 2}).json()
        assert body["all_passed"] is True
        names = [s["name"] for s in body["suites"]]
        assert "conjugation_identity" in names
        assert "rationality_of_series" in names
        assert all(s["failures"] == 0 for s in body["suites"])
