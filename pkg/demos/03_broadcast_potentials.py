"""Potentials that rule out broadcasting on the grid, for NAND and IMP gates.

The unknown potential w (length 3, only patterns containing '?') must make
two families of cycle inequalities hold for all small noise levels p. Each
published potential is substituted into the system and the remaining
vertex potentials are solved for exactly. Pass ``--search`` to also let
the solver find its own potentials (about a minute per gate).
"""

import sys

from localplp import automata as am
from localplp import check_certificate, io

for name, table in (("pot_nand", am.EDGE_NAND), ("pot_imp", am.IMP)):
    w = io.load_published(name)
    cert = am.verify_potential(am.BROADCAST, table, 3, None, w, degree_cap=1)
    inst = am.potential_instance(am.BROADCAST, table, 3, None, w)
    print(f"{name} ({table.name}): {cert.verdict.value}, radius {cert.radius.value}")
    print("   audit:", check_certificate(inst, cert).reason)
    for p in ("1/100", "1/1000"):
        blocks = am.edge_weights(am.BROADCAST, table, 3, None, w, p)
        print(f"   p = {p}: no negative cycle in either block:", all(am.negative_cycle_check(b, 3) for b in blocks))

if "--search" in sys.argv:
    for table in (am.EDGE_NAND, am.IMP):
        rep = am.find_potential(am.BROADCAST, table, [3], degree_cap=1)
        hit = rep.hit
        print(f"\nsolver's own potential for {table.name}: denominator {hit.potential.shared_den}")
        for pat, c in hit.potential.support().items():
            print(f"   {pat}: {c}")
