from fastapi.testclient import TestClient

from app.core import config
from app.services.verify import wishart_limit_functional
from main import app

client = TestClient(app)


def test_health():
    resp = client.get("/health")

    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_goe_moments_endpoint(clear_result_cache):
    resp = client.get("/api/moments/goe", params={"n": 4})

    assert resp.status_code == 200, resp.text
    data = resp.json()
    assert data["coefficients"] == {"0": "2", "-1": "5", "-2": "5"}
    assert (data["limit"], data["infinitesimal"]) == ("2", "5")
    assert resp.headers["content-type"].startswith("application/json")

    client.get("/api/moments/goe", params={"n": 4})
    assert clear_result_cache.hits == 1


def test_goe_moments_cap(monkeypatch, clear_result_cache):
    monkeypatch.setattr(config.settings, "goe_max_n", 6)

    resp = client.get("/api/moments/goe", params={"n": 8})
    assert resp.status_code == 413
    assert "GOE_MAX_N" in resp.json()["detail"]


def test_wishart_moments_endpoint(clear_result_cache):
    resp = client.get("/api/moments/wishart", params={"word": "XX", "c": "2", "cprime": "3"})

    assert resp.status_code == 200, resp.text
    data = resp.json()
    assert data["variables"] == ["M", "N"]
    assert (data["limit"], data["infinitesimal"]) == ("6", "15")

    no_limits = client.get("/api/moments/wishart", params={"word": "1,2"}).json()
    assert no_limits["limit"] is None


def test_wishart_moments_validation():
    assert client.get("/api/moments/wishart", params={"word": "1,1", "c": "two"}).status_code == 422
    assert client.get("/api/moments/wishart", params={"word": "X?"}).status_code == 422


def test_enumerate_endpoint(clear_result_cache):
    resp = client.get("/api/enumerate/nc2delta", params={"n": 6, "count": True})
    assert resp.status_code == 200
    assert resp.json()["count"] == 22

    items = client.get("/api/enumerate/nc", params={"n": 3}).json()
    assert items["count"] == 5
    assert len(items["items"]) == 5

    assert client.get("/api/enumerate/trees", params={"n": 3}).status_code == 422
    assert client.get("/api/enumerate/nc", params={"n": 40}).status_code == 413


def test_cumulants_endpoint():
    body = {"values": {"x": ["0", "0"], "x x": ["1", "1"], "x x x": ["0", "0"], "x x x x": ["2", "5"]}}
    resp = client.post("/api/cumulants", json=body)

    assert resp.status_code == 200, resp.text
    data = resp.json()
    assert data["exact"] is True
    assert data["values"]["x x"] == ["1", "1"]
    assert data["values"]["x x x x"] == ["0", "1"]
    assert data["freeness"] is None


def test_cumulants_with_freeness_check():
    functional = wishart_limit_functional(2, 3, 4).to_dict()
    resp = client.post("/api/cumulants", json={"values": functional["values"], "groups": [["x"], ["y"]]})

    assert resp.status_code == 200, resp.text
    assert resp.json()["freeness"]["infinitesimally_free"] is True


def test_cumulants_rejects_bad_payloads():
    assert client.post("/api/cumulants", json={"values": {"x": [0.5, "1/2"]}}).status_code == 422
    assert client.post("/api/cumulants", json={"n_max": 2}).status_code == 422


def test_transform_endpoint(clear_result_cache):
    resp = client.get("/api/transform/g-from-r", params={"ensemble": "wishart", "order": 8, "c": "2", "cprime": "3"})

    assert resp.status_code == 200, resp.text
    data = resp.json()
    assert data["matches_expected"] is True
    assert data["series"]["regime"] == "inv"

    assert client.get("/api/transform/sideways").status_code == 422
    assert client.get("/api/transform/r-from-g", params={"order": 500}).status_code == 413
    assert client.get("/api/transform/r-from-g", params={"c": "1/0"}).status_code == 422


def test_density_endpoint():
    resp = client.get("/api/density", params={"ensemble": "wishart", "c": 0.5, "grid": 10})

    assert resp.status_code == 200, resp.text
    data = resp.json()
    assert len(data["rows"]) == 10
    assert data["atoms"]["mu_prime"] == [{"location": 0.0, "mass": -1.0}]
    assert data["c"] == 0.5

    goe = client.get("/api/density", params={"ensemble": "goe", "grid": 3}).json()
    assert goe["c"] is None
    assert client.get("/api/density", params={"ensemble": "gue"}).status_code == 422
    assert client.get("/api/density", params={"grid": 0}).status_code == 422
