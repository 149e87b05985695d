"""Certificates as files: write, reload, audit, and catch tampering."""

import json
import tempfile
from pathlib import Path

from localplp import PlpInstance, Poly, check_certificate, io, solve_side

inst = PlpInstance.from_rows([([Poly([0, 1])], 1), ([Poly([1])], Poly([0, 0, 1]))])  # d x >= 1, x >= d^2
cert = solve_side(inst)
print("verdict:", cert.verdict.value, "  x(d) =", cert.solution[0])

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "cert.json"
    path.write_text(io.dumps(io.certificate_to_json(cert)))
    print("\n" + path.read_text())

    loaded = io.certificate_from_json(io.read_json(path))
    print("reloaded certificate audit:", check_certificate(inst, loaded).reason)
    print("re-emitted bytes identical:", io.dumps(io.certificate_to_json(loaded)) == path.read_text())

    data = json.loads(path.read_text())
    data["radius"]["value"] = "1000"
    data["solution"][0] = {"num": ["1"], "den": ["1"]}
    forged = io.certificate_from_json(data)
    print("forged certificate audit :", check_certificate(inst, forged).reason)
