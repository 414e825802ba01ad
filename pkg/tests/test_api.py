import math

import pytest

from lorentzvol.config import settings


def test_root(client):
    respuesta = client.get("/")
    assert respuesta.status_code == 200
    assert settings.APP_NAME in respuesta.json()["message"]


def test_health(client):
    datos = client.get("/health").json()
    assert datos["status"] == "ok"
    assert datos["schema_version"] == "1"


def test_volume_endpoint(client):
    respuesta = client.get("/api/v1/volumes", params={"n": 3, "p": "1", "q": "1"})
    assert respuesta.status_code == 200
    fila = respuesta.json()["results"][0]
    assert fila["value"] == pytest.approx(4 / 3, rel=1e-12)
    assert fila["method"] == "product-q1"


def test_volume_endpoint_several_dimensions(client):
    respuesta = client.get("/api/v1/volumes", params=[("n", 2), ("n", 3), ("p", "2"), ("q", "2")])
    filas = respuesta.json()["results"]
    assert filas[0]["value"] == pytest.approx(math.pi, rel=1e-12)
    assert len(filas) == 2


def test_volume_endpoint_invalid_parameters(client):
    respuesta = client.get("/api/v1/volumes", params={"n": 3, "p": "-1", "q": "1"})
    assert respuesta.status_code == 422
    assert respuesta.json()["code"] == "invalid_parameters"


def test_volume_endpoint_method_not_applicable(client):
    respuesta = client.get("/api/v1/volumes", params={"n": 3, "p": "1", "q": "2", "method": "recursion"})
    assert respuesta.status_code == 422
    assert respuesta.json()["code"] == "method_not_applicable"


def test_table_endpoint(client):
    datos = client.get("/api/v1/volumes/table", params={"p_list": "1,2", "n_max": 5}).json()
    assert datos["command"] == "table"
    assert len(datos["results"]) == 10


def test_ratio_endpoint(client):
    datos = client.get("/api/v1/asymptotics/ratio", params={"p": "1", "n_max": 3}).json()
    assert [fila["ratio"] for fila in datos["results"]] == pytest.approx([1.0, 1.5, 49 / 18])


def test_root_volume_endpoint(client):
    datos = client.get("/api/v1/asymptotics/root-volume", params={"p": "inf", "q": "1", "n_max": 20}).json()
    assert len(datos["results"]) == 20
    assert datos["artifacts"]["window_ratio"] < 4


def test_curve_endpoint(client):
    datos = client.get("/api/v1/entropy/curve", params={"n": 8, "k_max": 24}).json()
    assert all(fila["lower"] <= fila["upper"] for fila in datos["results"])


def test_code_endpoint(client):
    respuesta = client.post("/api/v1/entropy/code", json={"n": 64, "k": 4, "seed": 1})
    assert respuesta.status_code == 200
    assert respuesta.json()["results"][0]["certified"] is True


def test_packing_endpoint(client):
    respuesta = client.post("/api/v1/entropy/packing", json={"n": 48, "mu": 1, "nu": 1})
    assert respuesta.status_code == 200
    assert respuesta.json()["results"][0]["count"] == 9


def test_code_endpoint_exhausted(client, monkeypatch):
    monkeypatch.setattr(settings, "CODE_RETRY_BUDGET", 2)
    respuesta = client.post("/api/v1/entropy/code", json={"n": 64, "k": 4})
    assert respuesta.status_code == 409
    datos = respuesta.json()
    assert datos["code"] == "construction_exhausted"
    assert datos["partial"]["results"][0]["count"] <= 2


def test_volume_endpoint_out_of_double_range(client):
    respuesta = client.get("/api/v1/volumes", params={"n": 400, "p": "1", "q": "1"})
    assert respuesta.status_code == 200
    datos = respuesta.json()
    assert datos["results"][0]["out_of_range"] is True
    assert datos["warnings"]
