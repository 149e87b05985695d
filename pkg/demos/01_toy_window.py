"""A two-variable system that is feasible on both sides of a small window and empty inside it.

    -x + y >= 0,  x + y >= 0,  -y >= eps - 1,  -y >= d (eps - d),  y >= d - 1

For d <= 0 the point x = y = 0 works. For 0 < d < eps the last two rows
squeeze y into an empty interval. The solver sees this from the
polynomials alone, without sampling d.
"""

from localplp import PlpInstance, Poly, check_certificate, classify_local, feasibility_at_point, rat
from localplp.exact import rat_str

eps = rat("1/10")
inst = PlpInstance.from_rows([
    ([-1, 1], 0),
    ([1, 1], 0),
    ([0, -1], eps - 1),
    ([0, -1], Poly([0, eps, -1])),
    ([0, 1], Poly([-1, 1])),
])

res = classify_local(inst)
print("left of 0 :", res.negative.verdict.value)
print("at 0      :", "Feasible" if res.origin.feasible else "Infeasible", [rat_str(v) for v in res.origin.witness])
print("right of 0:", res.positive.verdict.value)
print("summary   :", res.summary.value)

x, y = res.negative.solution
print(f"\nleft-side solution x(d) = {x}, y(d) = {y}")
print("valid on (-r, 0) with r =", res.negative.radius.value)
print("independent audit:", check_certificate(inst, res.negative).reason)

print("\nThe right side is refuted by multipliers y(d) >= 0 with A^T y = 0 and b.y >= 1:")
for i, m in enumerate(res.positive.farkas or ()):
    print(f"  row {i}: {m}")
print("audit:", check_certificate(inst, res.positive).reason)

print("\nSpot checks with an ordinary LP:")
for delta in ("1/2", "1/20", "0", "-1/3"):
    print(f"  d = {delta:>5}: {'feasible' if feasibility_at_point(inst, rat(delta)) else 'infeasible'}")
