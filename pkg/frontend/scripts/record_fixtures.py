"""Record server responses as JSON fixtures for the frontend tests.

Run from the repository root with the Python package installed:

    python3 frontend/scripts/record_fixtures.py

Every fixture is a verbatim response body (or request payload) of the
HTTP API, so the tests render exactly what the server serves.
"""

import json
import pathlib
import warnings

warnings.filterwarnings("ignore")

from fastapi.testclient import TestClient

from qpseed import QP, Arrow, Potential, Quiver, serialize
from qpseed.server import create_app

OUT = pathlib.Path(__file__).resolve().parent.parent / "test" / "fixtures"


def synthetic_two_cycle():
    a = Arrow("a", "1", "2")
    b = Arrow("b", "2", "1")
    return QP(Quiver(("1", "2"), (a, b)), Potential.zero())


def cycle_no_potential():
    a = Arrow("a", "1", "2")
    b = Arrow("b", "2", "3")
    c = Arrow("c", "3", "1")
    return QP(Quiver(("1", "2", "3"), (a, b, c)), Potential.zero())


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app(), raise_server_exceptions=False)
    wrote = []

    def save(name, payload):
        path = OUT / name
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        wrote.append(name)

    qp_a2 = client.get("/api/qp", params={"braid": "1 1 1", "strands": 2}).json()
    save("qp_a2.json", qp_a2)

    qp_t33 = client.get("/api/qp", params={"braid": "1 2 1 2 1 2"}).json()
    save("qp_t33.json", qp_t33)

    save("qp_twocycle.json", serialize.qp_to_json(synthetic_two_cycle()))
    save("qp_tri0.json", serialize.qp_to_json(cycle_no_potential()))

    mut1 = client.post("/api/mutate", json={"qp": qp_a2, "vertex": "L1#1"}).json()
    save("mutate_a2_1.json", mut1)
    mut2 = client.post("/api/mutate", json={"qp": mut1["qp"], "vertex": "L1#1"}).json()
    save("mutate_a2_2.json", mut2)

    save(
        "mutate_t33.json",
        client.post("/api/mutate", json={"qp": qp_t33, "vertex": "L1#2"}).json(),
    )

    tri0 = json.loads((OUT / "qp_tri0.json").read_text())
    save(
        "mutate_tri0.json",
        client.post("/api/mutate", json={"qp": tri0, "vertex": "2"}).json(),
    )

    twocycle = json.loads((OUT / "qp_twocycle.json").read_text())
    blocked = client.post("/api/mutate", json={"qp": twocycle, "vertex": "1"})
    assert blocked.status_code == 422, blocked.status_code
    save("err_twocycle.json", blocked.json())

    bad = client.get("/api/qp", params={"braid": "one one"})
    assert bad.status_code == 400, bad.status_code
    save("err_badbraid.json", bad.json())

    save(
        "explore_a2_d4.json",
        client.post("/api/explore", json={"qp": qp_a2, "depth": 4}).json(),
    )
    save(
        "explore_a2_d0.json",
        client.post("/api/explore", json={"qp": qp_a2, "depth": 0}).json(),
    )
    save(
        "explore_t33_d1.json",
        client.post("/api/explore", json={"qp": qp_t33, "depth": 1}).json(),
    )

    for name in wrote:
        print("wrote", name)


if __name__ == "__main__":
    main()
