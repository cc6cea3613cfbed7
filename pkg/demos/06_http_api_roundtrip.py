"""
The HTTP API, exercised in-process
==================================

`specled serve` runs this same app under uvicorn; here a test client
drives it without opening a port.  The solve endpoint streams back the
identical bytes the CLI writes, so downstream tooling can treat the two
paths as one.
"""

import json
from dataclasses import replace

from fastapi.testclient import TestClient

from specled import load_fixture_problem, solve
from specled.io import problem_payload, solution_json_str
from specled.service import create_app

client = TestClient(create_app())

print("== 1. health and fixtures ==")
print("   /healthz:", client.get("/healthz").json())
index = client.get("/api/fixtures").json()
print("   banks:", [b["file"] for b in index["banks"]])
print("   problems:", [p["name"] for p in index["problems"]])

print("== 2. solve over HTTP ==")
body = problem_payload(load_fixture_problem("iso_3ch"))
body["params"].update({"seed": 42, "starts": 16})
reply = client.post("/api/solve", content=json.dumps(body))
print("   status:", reply.status_code)
solution = reply.json()
print("   objective:", round(solution["objective"], 6))

print("== 3. the CLI writes the same bytes ==")
problem = load_fixture_problem("iso_3ch")
problem = replace(problem, params=replace(problem.params, seed=42, starts=16))
print("   byte parity:", reply.content == solution_json_str(solve(problem)).encode())

print("== 4. preview swatches from the same payloads ==")
reply = client.post(
    "/api/preview",
    json={"problem": problem_payload(problem), "solution": solution},
)
for row in reply.json()["rows"]:
    print(f"   {row['material']:>5} under {row['under']}: rgb {row['srgb']}")

print("== 5. infeasible problems still answer with a candidate ==")
body = problem_payload(problem)
body["params"].update(
    {"starts": 4, "white_target": [0.5, 0.1], "white_target_tol": 0.01}
)
reply = client.post("/api/solve", content=json.dumps(body))
print("   status:", reply.status_code)
print("   code:", reply.json()["error"]["code"])
print("   candidate feasible flag:", reply.json()["solution"]["feasible"])
