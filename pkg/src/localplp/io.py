"""JSON formats for instances, certificates, potentials and classifications.

Rationals are strings ``"num/den"`` (``"num"`` when the denominator is 1);
polynomials are ascending coefficient arrays of such strings. Every emitter
sorts keys and uses a fixed layout so that emit -> parse -> emit is the
identity on bytes.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from .core import (
    LocalClassification,
    PlpInstance,
    PolyMatrix,
    SideCertificate,
    Verdict,
)
from .exact import Poly, RatFunc, RootBound, rat, rat_str
from .lp import LpOutcome
from .opt import OptOutcome, ParamLp

SCHEMA_VERSION = 1


class FormatError(ValueError):
    """Input that does not match one of the documented file formats."""


# --- scalars ------------------------------------------------------------------------

def poly_to_json(p: Poly) -> list[str]:
    return p.to_strings()


def poly_from_json(data: Any, where: str = "polynomial") -> Poly:
    if not isinstance(data, list):
        raise FormatError(f"{where}: expected an array of rational strings, got {type(data).__name__}")
    try:
        return Poly([_rat_from_json(v, where) for v in data])
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def _rat_from_json(v: Any, where: str):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise FormatError(f"{where}: rationals must be strings like \"3/4\" or integers, got {v!r}")
    return rat(v)


def ratfunc_to_json(x: RatFunc) -> dict:
    return {"num": poly_to_json(x.num), "den": poly_to_json(x.den)}


def ratfunc_from_json(data: Any, where: str = "rational function") -> RatFunc:
    if not isinstance(data, dict) or set(data) != {"num", "den"}:
        raise FormatError(f"{where}: expected an object with keys num and den")
    den = poly_from_json(data["den"], f"{where}.den")
    if den.is_zero():
        raise FormatError(f"{where}: zero denominator")
    return RatFunc(poly_from_json(data["num"], f"{where}.num"), den)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


# --- instances -----------------------------------------------------------------------

def instance_to_json(inst: PlpInstance) -> dict:
    return {
        "n": inst.n,
        "constraints": [
            {"row": [poly_to_json(a) for a in inst.A.row(i)], "rhs": poly_to_json(inst.b[i]), "sense": ">="}
            for i in range(inst.m)
        ],
    }


def _constraint_rows(data: dict, n: int) -> tuple[list, list]:
    cons = data.get("constraints")
    if not isinstance(cons, list):
        raise FormatError("instance: 'constraints' must be an array")
    rows, rhs = [], []
    for k, con in enumerate(cons):
        where = f"constraints[{k}]"
        if not isinstance(con, dict):
            raise FormatError(f"{where}: expected an object")
        row = con.get("row")
        if not isinstance(row, list):
            raise FormatError(f"{where}.row must be an array")
        if len(row) != n:
            raise FormatError(f"dimension mismatch: {where}.row has {len(row)} entries, n = {n}")
        sense = con.get("sense", ">=")
        if sense not in (">=", "<=", "="):
            raise FormatError(f"{where}.sense must be one of >=, <=, =")
        polys = [poly_from_json(p, f"{where}.row[{j}]") for j, p in enumerate(row)]
        b = poly_from_json(con.get("rhs"), f"{where}.rhs")
        if sense in (">=", "="):
            rows.append(polys)
            rhs.append(b)
        if sense in ("<=", "="):
            rows.append([-p for p in polys])
            rhs.append(-b)
    return rows, rhs


def instance_from_json(data: Any) -> PlpInstance:
    """Parse an instance. ``<=`` rows are negated and ``=`` rows split into two."""
    if not isinstance(data, dict):
        raise FormatError("instance: expected a JSON object")
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise FormatError("instance: 'n' must be a positive integer")
    rows, rhs = _constraint_rows(data, n)
    return PlpInstance(PolyMatrix(rows, n), tuple(rhs))


def param_lp_to_json(lp: ParamLp) -> dict:
    return {
        "n": lp.n,
        "convention": "max-le-nonneg",
        "objective": [poly_to_json(c) for c in lp.c],
        "constraints": [
            {"row": [poly_to_json(a) for a in lp.A.row(i)], "rhs": poly_to_json(lp.b[i]), "sense": "<="}
            for i in range(lp.m)
        ],
    }


def param_lp_from_json(data: Any) -> ParamLp:
    if not isinstance(data, dict):
        raise FormatError("optimization instance: expected a JSON object")
    if data.get("convention") != "max-le-nonneg":
        raise FormatError("optimization instance: 'convention' must be \"max-le-nonneg\"")
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise FormatError("optimization instance: 'n' must be a positive integer")
    obj = data.get("objective")
    if not isinstance(obj, list) or len(obj) != n:
        raise FormatError(f"dimension mismatch: 'objective' must have {n} entries")
    c = [poly_from_json(p, f"objective[{j}]") for j, p in enumerate(obj)]
    cons = data.get("constraints")
    if not isinstance(cons, list):
        raise FormatError("optimization instance: 'constraints' must be an array")
    rows, rhs = [], []
    for k, con in enumerate(cons):
        if not isinstance(con, dict) or con.get("sense", "<=") != "<=":
            raise FormatError(f"constraints[{k}]: rows must be objects with sense \"<=\"")
        row = con.get("row")
        if not isinstance(row, list) or len(row) != n:
            raise FormatError(f"dimension mismatch: constraints[{k}].row must have {n} entries")
        rows.append([poly_from_json(p, f"constraints[{k}].row[{j}]") for j, p in enumerate(row)])
        rhs.append(poly_from_json(con.get("rhs"), f"constraints[{k}].rhs"))
    return ParamLp(tuple(c), PolyMatrix(rows, n), tuple(rhs))


# --- certificates ----------------------------------------------------------------------

def root_bound_to_json(r: RootBound) -> dict:
    return {
        "value": rat_str(r.value),
        "witness_kind": r.witness_kind,
        "certifying_polys": [poly_to_json(p) for p in r.certifying_polys],
    }


def root_bound_from_json(data: Any) -> RootBound:
    if not isinstance(data, dict):
        raise FormatError("radius: expected an object")
    try:
        return RootBound(
            rat(data["value"]),
            data["witness_kind"],
            tuple(poly_from_json(p, "radius.certifying_polys") for p in data.get("certifying_polys", [])),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"radius: {exc}") from None


def certificate_to_json(cert: SideCertificate) -> dict:
    out: dict = {"schema_version": SCHEMA_VERSION, "side": cert.side, "verdict": cert.verdict.value}
    vec_key = "solution" if cert.solution is not None else "farkas" if cert.farkas is not None else None
    if vec_key is not None:
        out["c"] = cert.c_used
        out["degrees"] = {"deg_p": cert.degrees_used[0], "deg_q1": cert.degrees_used[1]}
        out[vec_key] = [ratfunc_to_json(x) for x in getattr(cert, vec_key)]
        out["radius"] = root_bound_to_json(cert.radius)
    return out


def certificate_from_json(data: Any) -> SideCertificate:
    """Parse a certificate. Feasible ones need ``solution``; Infeasible ones may carry ``farkas``."""
    if not isinstance(data, dict):
        raise FormatError("certificate: expected a JSON object")
    if data.get("schema_version") != SCHEMA_VERSION:
        raise FormatError(f"certificate: unsupported schema_version {data.get('schema_version')!r}")
    try:
        verdict = Verdict(data["verdict"])
        side = data["side"]
    except (KeyError, ValueError):
        raise FormatError("certificate: needs 'side' and a known 'verdict'") from None
    if verdict is Verdict.FEASIBLE:
        vec_key = "solution"
    elif verdict is Verdict.INFEASIBLE and "farkas" in data:
        vec_key = "farkas"
    else:
        return SideCertificate(side=side, verdict=verdict)
    try:
        vec = tuple(ratfunc_from_json(x, f"{vec_key}[{k}]") for k, x in enumerate(data[vec_key]))
        deg = data["degrees"]
        cert = SideCertificate(
            side=side,
            verdict=verdict,
            radius=root_bound_from_json(data["radius"]),
            c_used=data["c"],
            degrees_used=(deg["deg_p"], deg["deg_q1"]),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"certificate: missing field {exc}") from None
    setattr(cert, vec_key, vec)
    return cert


def lp_outcome_to_json(out: LpOutcome) -> dict:
    d: dict = {"status": out.status.value}
    if out.witness is not None:
        d["witness"] = [rat_str(v) for v in out.witness]
    return d


def classification_to_json(cls: LocalClassification) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "negative": certificate_to_json(cls.negative),
        "origin": lp_outcome_to_json(cls.origin),
        "positive": certificate_to_json(cls.positive),
        "summary": cls.summary.value,
    }


def opt_outcome_to_json(out: OptOutcome) -> dict:
    d: dict = {"schema_version": SCHEMA_VERSION, "status": out.status.value}
    if out.x is not None:
        d["x"] = [ratfunc_to_json(v) for v in out.x]
        d["value"] = ratfunc_to_json(out.value)
        d["radius"] = root_bound_to_json(out.radius)
    return d


# --- potentials ----------------------------------------------------------------------------

def potential_to_json(w) -> dict:
    return {
        "length": w.length,
        "shared_den": poly_to_json(w.shared_den),
        "coeffs": {pat: poly_to_json(c) for pat, c in w.support().items()},
    }


def potential_from_json(data: Any):
    from .automata import Potential

    if not isinstance(data, dict):
        raise FormatError("potential: expected a JSON object")
    length = data.get("length")
    if isinstance(length, bool) or not isinstance(length, int) or length < 1:
        raise FormatError("potential: 'length' must be a positive integer")
    coeffs = data.get("coeffs")
    if not isinstance(coeffs, dict):
        raise FormatError("potential: 'coeffs' must map patterns to polynomials")
    parsed = {pat: poly_from_json(c, f"coeffs[{pat}]") for pat, c in coeffs.items()}
    den = poly_from_json(data.get("shared_den", ["1"]), "shared_den")
    try:
        return Potential.from_patterns(length, parsed, den)
    except ValueError as exc:
        raise FormatError(f"potential: {exc}") from None


PUBLISHED = ("pot_pca", "pot_pca_edge", "pot_nand", "pot_imp")


def load_published(name: str):
    """One of the checked-in potentials (see ``PUBLISHED``)."""
    if name not in PUBLISHED:
        raise KeyError(f"unknown published potential {name!r}; choose from {', '.join(PUBLISHED)}")
    text = resources.files("localplp.data").joinpath(f"{name}.json").read_text()
    return potential_from_json(json.loads(text))


def write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
