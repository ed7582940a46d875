def test_health_check(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "service": "ncmckay"}

def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json() == {"message": "Welcome to the ncmckay API"}

def test_s_block_dims(client):
    response = client.get("/dims/s-block", params={"n": 1, "i": 0, "j": 0, "deg": 2})
    assert response.status_code == 200
    assert response.json()["dims"] == [
        {"degree": 0, "dim": 1},
        {"degree": 1, "dim": 0},
        {"degree": 2, "dim": 3},
    ]

def test_hom_dims_at_degree_zero(client):
    response = client.get("/dims/hom", params={"n": 1, "deg": 0})
    assert response.status_code == 200
    assert response.json()["total"] == 1

def test_unknown_table_kind(client):
    response = client.get("/dims/volume")
    assert response.status_code == 400

def test_n_out_of_range(client):
    assert client.get("/dims/s-block", params={"n": 99}).status_code == 400
    assert client.get("/verify/tilting", params={"n": -1}).status_code == 400
    assert client.get("/verify/tilting", params={"n": 1, "deg_t": 0}).status_code == 400

def test_unknown_suite(client):
    response = client.get("/verify/geometry", params={"n": 1})
    assert response.status_code == 400
    assert "Unknown suite" in response.json()["detail"]

def test_dims_default_n_comes_from_config(client):
    response = client.get("/dims/s-block", params={"i": 0, "j": 1, "deg": 2})
    assert response.status_code == 200
    assert response.json()["n"] == 2
    assert [d["dim"] for d in response.json()["dims"]] == [0, 1, 1]
