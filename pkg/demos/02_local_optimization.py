"""Optimal values as rational functions of the parameter.

max x subject to d x <= 1, x >= 0 has optimum 1/d for every d > 0. The
solver returns that function together with a radius on which it is exact,
and the value can be read as an asymptotic LP in M = 1/d.
"""

from localplp import Poly, PolyMatrix, solve_local_opt
from localplp.lp import lp_optimize
from localplp.opt import ParamLp


def show(title, lp):
    out = solve_local_opt(lp)
    print(f"{title}: {out.status.value}")
    if out.x is not None:
        print("   x(d) =", ", ".join(str(v) for v in out.x), "  value =", out.value)
        mid = out.radius.value / 2
        fixed = lp_optimize(lp.primal().evaluate(mid), [c(mid) for c in lp.c])
        print(f"   at d = {mid}: closed form {out.value(mid)}, ordinary LP {fixed.value}")


one = Poly([1])
dd = Poly([0, 1])
show("max x, x <= d        ", ParamLp((one,), PolyMatrix([[one]], 1), (dd,)))
show("max x, d x <= 1      ", ParamLp((one,), PolyMatrix([[dd]], 1), (one,)))
show("max x, x <= -d       ", ParamLp((one,), PolyMatrix([[one]], 1), (-dd,)))
show("max x, 0 x <= 1      ", ParamLp((one,), PolyMatrix([[Poly()]], 1), (one,)))

# two variables with coupled, parameter-dependent rows
lp = ParamLp(
    (one, Poly([1, 1])),
    PolyMatrix([[one, dd], [dd, one]], 2),
    (one, Poly([2])),
)
show("max x1 + (1+d) x2    ", lp)
