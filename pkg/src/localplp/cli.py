"""Command-line front end.

Exit status: 0 for a definitive answer (including Infeasible and Mixed),
2 when a search stopped at its degree cap, 1 for bad input, 3 when
``check-certificate`` rejects a certificate.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import automata, io
from .core import (
    NEGATIVE,
    POSITIVE,
    PlpInstance,
    Summary,
    Verdict,
    check_certificate,
    classify_local,
    feasibility_at_point,
    solve_side,
)
from .exact import format_poly, rat, rat_str
from .opt import OptStatus, solve_local_opt

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAP = 2
EXIT_REJECTED = 3

ENV_DEGREE_CAP = "LOCALPLP_DEGREE_CAP"

#: preset name -> (kind, table, default s0)
PRESETS = {
    "pca-nand-vertex": (automata.PCA, automata.VERTEX_NAND, "01"),
    "pca-nand-edge": (automata.PCA, automata.EDGE_NAND, "10"),
    "broadcast-nand": (automata.BROADCAST, automata.EDGE_NAND, None),
    "broadcast-imp": (automata.BROADCAST, automata.IMP, None),
}

COMMANDS = ("solve", "optimize", "eval-point", "find-potential", "verify-potential", "check-certificate")

log = logging.getLogger("localplp")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    instance_path: Optional[str] = None
    preset: Optional[str] = None
    ell: int = 3
    s0: Optional[str] = None
    side: str = "both"
    degree_cap: Optional[int] = None
    output_path: Optional[str] = None
    log_level: str = "WARNING"
    delta: Optional[str] = None
    potential_path: Optional[str] = None
    certificate_path: Optional[str] = None

    def validate(self) -> None:
        needs_source = self.command in ("solve", "eval-point", "check-certificate", "optimize")
        if needs_source and (self.instance_path is None) == (self.preset is None):
            raise InputError("give exactly one of --instance and --preset")
        if self.command == "optimize" and self.preset is not None:
            raise InputError("optimize reads an objective-carrying --instance file; presets do not apply")
        if self.command in ("find-potential", "verify-potential") and self.preset is None:
            raise InputError(f"{self.command} needs --preset")
        if self.preset is not None and self.preset not in PRESETS:
            raise InputError(f"unknown preset {self.preset!r}; choose from {', '.join(PRESETS)}")
        if self.degree_cap is not None and self.degree_cap < 0:
            raise InputError("--degree-cap must be >= 0")
        if self.ell < 1:
            raise InputError("--ell must be >= 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="localplp", description="Local feasibility and optimisation of one-parameter polynomial LPs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--instance", dest="instance_path")
    p.add_argument("--preset")
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--s0")
    p.add_argument("--side", choices=("pos", "neg", "both"), default=None)
    p.add_argument("--degree-cap", type=int, default=None)
    p.add_argument("--output", dest="output_path")
    p.add_argument("--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    p.add_argument("--delta")
    p.add_argument("--potential", dest="potential_path")
    p.add_argument("--certificate", dest="certificate_path")
    return p


def parse_config(argv: Sequence[str], env: Optional[dict] = None) -> RunConfig:
    env = os.environ if env is None else env
    ns = _parser().parse_args(argv)
    cap = ns.degree_cap
    if cap is None and env.get(ENV_DEGREE_CAP):
        try:
            cap = int(env[ENV_DEGREE_CAP])
        except ValueError:
            raise InputError(f"{ENV_DEGREE_CAP} must be an integer, got {env[ENV_DEGREE_CAP]!r}") from None
    side = ns.side
    if side is None:
        side = "pos" if ns.preset else "both"
    cfg = RunConfig(
        command=ns.command,
        instance_path=ns.instance_path,
        preset=ns.preset,
        ell=ns.ell,
        s0=ns.s0,
        side=side,
        degree_cap=cap,
        output_path=ns.output_path,
        log_level=ns.log_level,
        delta=ns.delta,
        potential_path=ns.potential_path,
        certificate_path=ns.certificate_path,
    )
    cfg.validate()
    return cfg


# --- helpers ----------------------------------------------------------------------

def _preset_s0(cfg: RunConfig) -> Optional[str]:
    kind, _, default = PRESETS[cfg.preset]
    if kind == automata.BROADCAST:
        return None
    return cfg.s0 if cfg.s0 is not None else default


def _load_instance(cfg: RunConfig) -> PlpInstance:
    if cfg.instance_path is not None:
        return io.instance_from_json(io.read_json(cfg.instance_path))
    kind, table, _ = PRESETS[cfg.preset]
    try:
        return automata.assemble(kind, table, cfg.ell, _preset_s0(cfg))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(cfg: RunConfig, payload: dict) -> None:
    io.write_text(cfg.output_path, io.dumps(payload))


def _say(text: str) -> None:
    print(text, file=sys.stderr)


def _describe_side(cert) -> str:
    if cert.verdict is Verdict.FEASIBLE:
        r = "all of (0, inf)" if cert.radius.covers_everything() else f"radius {rat_str(cert.radius.value)}"
        sol = ", ".join(str(x) for x in cert.solution[:6])
        more = " ..." if len(cert.solution) > 6 else ""
        return f"{cert.side}: Feasible ({r}); x = [{sol}{more}]"
    if cert.verdict is Verdict.INFEASIBLE and cert.farkas is not None:
        return f"{cert.side}: Infeasible (Farkas multipliers, radius {rat_str(cert.radius.value)})"
    return f"{cert.side}: {cert.verdict.value}"


# --- commands ---------------------------------------------------------------------

def cmd_solve(cfg: RunConfig) -> int:
    inst = _load_instance(cfg)
    if cfg.side == "both":
        res = classify_local(inst, cfg.degree_cap)
        _say(_describe_side(res.negative))
        _say(f"origin: {'Feasible' if res.origin.feasible else 'Infeasible'}")
        _say(_describe_side(res.positive))
        _say(f"summary: {res.summary.value}")
        _emit(cfg, io.classification_to_json(res))
        unknown = Verdict.UNKNOWN_AT_CAP in (res.negative.verdict, res.positive.verdict)
        return EXIT_CAP if unknown and res.summary is Summary.UNDETERMINED else EXIT_OK
    side = POSITIVE if cfg.side == "pos" else NEGATIVE
    cert = solve_side(inst, side, cfg.degree_cap)
    _say(_describe_side(cert))
    _emit(cfg, io.certificate_to_json(cert))
    return EXIT_CAP if cert.verdict is Verdict.UNKNOWN_AT_CAP else EXIT_OK


def cmd_optimize(cfg: RunConfig) -> int:
    lp = io.param_lp_from_json(io.read_json(cfg.instance_path))
    out = solve_local_opt(lp, cfg.degree_cap)
    _say(f"status: {out.status.value}")
    if out.status is OptStatus.LOCALLY_OPTIMAL:
        _say(f"value: {out.value}")
    _emit(cfg, io.opt_outcome_to_json(out))
    return EXIT_CAP if out.status is OptStatus.UNKNOWN_AT_CAP else EXIT_OK


def cmd_eval_point(cfg: RunConfig) -> int:
    if cfg.delta is None:
        raise InputError("eval-point needs --delta")
    try:
        delta = rat(cfg.delta)
    except (ValueError, TypeError):
        raise InputError(f"--delta must be an exact rational like 1/20, got {cfg.delta!r}") from None
    inst = _load_instance(cfg)
    print("feasible" if feasibility_at_point(inst, delta) else "infeasible")
    return EXIT_OK


def cmd_find_potential(cfg: RunConfig) -> int:
    kind, table, _ = PRESETS[cfg.preset]
    s0s = None
    if kind == automata.PCA and cfg.s0 is not None:
        s0s = {ell: [cfg.s0] for ell in range(1, cfg.ell + 1) if len(cfg.s0) <= ell}
    ells = range(max(1, len(cfg.s0 or "")), cfg.ell + 1) if kind == automata.PCA else [cfg.ell]
    rep = automata.find_potential(kind, table, ells, s0s, cfg.degree_cap)
    for ell, s0, verdict in rep.tried:
        _say(f"ell={ell} s0={s0 if s0 is not None else '-'}: {verdict}")
    if rep.hit is None:
        _say("no potential found")
        _emit(cfg, {"schema_version": io.SCHEMA_VERSION, "found": False,
                    "tried": [{"ell": e, "s0": s, "verdict": v} for e, s, v in rep.tried]})
        unknown = any(v == Verdict.UNKNOWN_AT_CAP.value for _, _, v in rep.tried)
        return EXIT_CAP if unknown else EXIT_OK
    hit = rep.hit
    _say(f"found potential at ell={hit.ell} s0={hit.s0}; denominator {format_poly(hit.potential.shared_den)}")
    _emit(cfg, {
        "schema_version": io.SCHEMA_VERSION,
        "found": True,
        "ell": hit.ell,
        "s0": hit.s0,
        "potential": io.potential_to_json(hit.potential),
        "certificate": io.certificate_to_json(hit.certificate),
    })
    return EXIT_OK


def cmd_verify_potential(cfg: RunConfig) -> int:
    if cfg.potential_path is None:
        raise InputError("verify-potential needs --potential (a file path or one of the published names)")
    if cfg.potential_path in io.PUBLISHED:
        w = io.load_published(cfg.potential_path)
    else:
        w = io.potential_from_json(io.read_json(cfg.potential_path))
    kind, table, _ = PRESETS[cfg.preset]
    try:
        cert = automata.verify_potential(kind, table, w.length, _preset_s0(cfg), w, cfg.degree_cap)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _say(_describe_side(cert))
    _emit(cfg, io.certificate_to_json(cert))
    return EXIT_CAP if cert.verdict is Verdict.UNKNOWN_AT_CAP else EXIT_OK


def cmd_check_certificate(cfg: RunConfig) -> int:
    if cfg.certificate_path is None:
        raise InputError("check-certificate needs --certificate")
    inst = _load_instance(cfg)
    cert = io.certificate_from_json(io.read_json(cfg.certificate_path))
    res = check_certificate(inst, cert)
    print(("valid: " if res.ok else "rejected: ") + res.reason)
    return EXIT_OK if res.ok else EXIT_REJECTED


HANDLERS = {
    "solve": cmd_solve,
    "optimize": cmd_optimize,
    "eval-point": cmd_eval_point,
    "find-potential": cmd_find_potential,
    "verify-potential": cmd_verify_potential,
    "check-certificate": cmd_check_certificate,
}


def run(cfg: RunConfig) -> int:
    return HANDLERS[cfg.command](cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        logging.basicConfig(level=cfg.log_level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        return run(cfg)
    except (InputError, io.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
