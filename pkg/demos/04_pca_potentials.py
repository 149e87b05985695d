"""Potentials for the NAND cellular automaton, and why the printed ones fail here.

Under the vertex-noise table, the cyclic configuration 1?1?... maps to
????... when p = 0, so a valid potential needs w(1?1) >= w(???) on that
cycle. The two published PCA potentials put -12 on 1?1 and a nonnegative
value on ???, which is a negative cycle for every small p. The solver
confirms this with exact Farkas multipliers, and then finds a potential of
its own (this takes several minutes).
"""

import sys

from localplp import automata as am
from localplp import check_certificate, io

for name, table, s0 in (("pot_pca", am.VERTEX_NAND, "01"), ("pot_pca_edge", am.EDGE_NAND, "10")):
    w = io.load_published(name)
    cert = am.verify_potential(am.PCA, table, 3, s0, w, degree_cap=1)
    inst = am.potential_instance(am.PCA, table, 3, s0, w)
    print(f"{name} with s0={s0}: {cert.verdict.value}; audit: {check_certificate(inst, cert).reason}")
    (weights,) = am.edge_weights(am.PCA, table, 3, s0, w, 0)
    drift = am.cycle_value(weights, 4, "1?")
    print(f"   weight of the cycle '1?' at p = 0: {drift}")

if "--quick" in sys.argv:
    sys.exit(0)

print("\nsearching ell = 3, s0 = '0' for the vertex table ...")
inst = am.assemble_pca_plp(am.VERTEX_NAND, 3, "0")
from localplp import solve_side  # noqa: E402

cert = solve_side(inst, degree_cap=1)
w = am.decode_potential(cert, 3)
print(f"{cert.verdict.value} with c={cert.c_used}, degrees {cert.degrees_used}; audit: {check_certificate(inst, cert).reason}")
print("denominator:", w.shared_den)
for pat, c in w.support().items():
    print(f"   {pat}: {c}")
for s0 in ("0", "01"):
    (weights,) = am.edge_weights(am.PCA, am.VERTEX_NAND, 3, s0, w, "1/1000")
    print(f"s0={s0}, p=1/1000: no negative cycle:", am.negative_cycle_check(weights, 3))
