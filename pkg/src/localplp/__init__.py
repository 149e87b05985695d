"""Exact local feasibility, infeasibility and optimisation for one-parameter polynomial LPs."""

from .core import (
    LocalClassification,
    PlpInstance,
    PolyMatrix,
    SideCertificate,
    Summary,
    Verdict,
    check_certificate,
    classify_local,
    feasibility_at_point,
    solve_side,
)
from .exact import Poly, Rat, RatFunc, RootBound, rat
from .opt import OptOutcome, OptStatus, ParamLp, solve_local_opt

__all__ = [
    "LocalClassification",
    "OptOutcome",
    "OptStatus",
    "ParamLp",
    "PlpInstance",
    "Poly",
    "PolyMatrix",
    "Rat",
    "RatFunc",
    "RootBound",
    "SideCertificate",
    "Summary",
    "Verdict",
    "check_certificate",
    "classify_local",
    "feasibility_at_point",
    "rat",
    "solve_local_opt",
    "solve_side",
]
