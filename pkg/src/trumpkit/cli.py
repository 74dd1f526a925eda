"""Command-line front end.

Exit codes: 0 when the relation holds or a witness is found, 1 when it fails
or no witness exists within the caps, 2 on malformed input, cap overflow or
a disagreement found by ``--verify``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from . import catalysis, closure, criteria, ldp, majorize, multicopy
from .vecspace import DEFAULT_TOL, EXACT, FLOAT, MODES, ProbVector, TrumpkitError

ENV_MODE = "TRUMPKIT_MODE"
# largest expanded dimension for which --verify re-runs the exact oracle
ORACLE_CAP = 20_000

Number = Union[float, int, str]


class Params(BaseModel):
    model_config = ConfigDict(extra="forbid")

    eps: Optional[float] = None
    n: Optional[int] = None
    nMax: Optional[int] = None
    pGrid: Optional[list[float]] = None
    tGrid: Optional[list[float]] = None
    mode: Optional[str] = None
    tolerance: Optional[float] = None


class ProblemInstance(BaseModel):
    model_config = ConfigDict(extra="forbid")

    x: list[Number]
    y: list[Number]
    z: Optional[list[Number]] = None
    params: Params = Field(default_factory=Params)


class UsageError(TrumpkitError):
    pass


def format_float(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return format(v, ".17g")


def dumps(obj) -> str:
    """JSON with insertion-ordered keys and floats at 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating, Fraction)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_csv(header: list[str], rows: list[list[float]], out) -> None:
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(format_float(v) for v in row) + "\n")


def _parse_vector_literal(text: str) -> list:
    try:
        vals = json.loads(text)
    except json.JSONDecodeError as err:
        raise UsageError(f"bad vector literal {text!r}: {err}") from err
    if not isinstance(vals, list):
        raise UsageError(f"vector literal must be a JSON array, got {text!r}")
    return vals


def load_instance(args) -> ProblemInstance:
    data: dict = {}
    if args.file:
        try:
            with open(args.file) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise UsageError(f"cannot read instance file: {err}") from err
        if not isinstance(data, dict):
            raise UsageError("instance file must hold a JSON object")
    for key in ("x", "y", "z"):
        literal = getattr(args, key, None)
        if literal is not None:
            data[key] = _parse_vector_literal(literal)
    return ProblemInstance.model_validate(data)


def resolve(args, inst: ProblemInstance, flag: str, param: str, default):
    """Flag value, else instance parameter, else default."""
    v = getattr(args, flag, None)
    if v is not None:
        return v
    v = getattr(inst.params, param)
    return default if v is None else v


def _mode(args, inst) -> str:
    mode = resolve(args, inst, "mode", "mode", os.environ.get(ENV_MODE, FLOAT))
    if mode not in MODES:
        raise UsageError(f"unknown mode {mode!r}")
    return mode


def _vectors(args, inst):
    mode = _mode(args, inst)
    x = ProbVector.of(inst.x, mode)
    y = ProbVector.of(inst.y, mode)
    z = ProbVector.of(inst.z, mode) if inst.z is not None else None
    return x, y, z


def _emit(payload: dict, out) -> None:
    out.write(dumps(payload) + "\n")


def _verify_failed(what: str) -> int:
    sys.stderr.write(f"verification failed: exact oracle disagrees on {what}\n")
    return 2


def cmd_majorize(args, inst, out) -> int:
    x, y, _ = _vectors(args, inst)
    tol = resolve(args, inst, "tolerance", "tolerance", DEFAULT_TOL)
    f = majorize.submajorizes if args.weak else majorize.majorizes
    v = f(x, y, tol=tol)
    if args.verify and v.holds and max(len(x), len(y)) <= ORACLE_CAP:
        if not f(x, y, mode=EXACT).holds:
            return _verify_failed("majorization")
    _emit({"command": "majorize",
           "relation": "submajorization" if args.weak else "majorization",
           "mode": x.mode, "verdict": v.to_dict(),
           "tailDominates": majorize.tail_dominates(x, y, tol=tol)}, out)
    return 0 if v.holds else 1


def cmd_mlocc(args, inst, out) -> int:
    x, y, _ = _vectors(args, inst)
    tol = resolve(args, inst, "tolerance", "tolerance", DEFAULT_TOL)
    n_max = resolve(args, inst, "n_max", "nMax", multicopy.DEFAULT_N_MAX)
    weak = True if args.weak else None
    res = multicopy.search_min_copies(x, y, n_max, weak=weak, tol=tol, p_grid=inst.params.pGrid,
                                      workers=args.threads)
    if args.verify and res.n is not None and max(len(x), len(y)) ** res.n <= ORACLE_CAP:
        if not multicopy.naive_mlocc_check(x, y, res.n, weak=res.weak, mode=EXACT).holds:
            return _verify_failed(f"n={res.n}")
    _emit({"command": "mlocc", "mode": x.mode, **res.to_dict()}, out)
    return 0 if res.n is not None else 1


def cmd_catalyst(args, inst, out) -> int:
    x, y, z = _vectors(args, inst)
    tol = resolve(args, inst, "tolerance", "tolerance", DEFAULT_TOL)
    if z is not None:
        v = catalysis.verify_catalysis(x, y, z, tol=tol)
        if args.verify and v.holds and len(x) * len(z) <= ORACLE_CAP:
            if not catalysis.verify_catalysis(x, y, z, mode=EXACT).holds:
                return _verify_failed("catalysis")
        _emit({"command": "catalyst", "action": "verify", "mode": x.mode,
               "verdict": v.to_dict()}, out)
        return 0 if v.holds else 1
    n = resolve(args, inst, "n", "n", None)
    if n is None:
        n_max = resolve(args, inst, "n_max", "nMax", multicopy.DEFAULT_N_MAX)
        n = multicopy.find_min_copies(x, y, n_max, weak=False, tol=tol, workers=args.threads)
        if n is None:
            _emit({"command": "catalyst", "action": "build", "found": False,
                   "reason": f"no copy count up to {n_max}"}, out)
            return 1
    try:
        w = catalysis.build_catalyst(x, y, n, tol=tol)
    except closure.PreconditionError as err:
        _emit({"command": "catalyst", "action": "build", "found": False, "reason": str(err)}, out)
        return 1
    if args.verify and w.verdict.holds and len(x) * len(w.z) <= ORACLE_CAP:
        if not catalysis.verify_catalysis(x, y, w.z, mode=EXACT).holds:
            return _verify_failed("built catalyst")
    payload = {"command": "catalyst", "action": "build", "found": True, "mode": x.mode}
    payload.update(w.to_dict(inline_z=args.z_file is None))
    if args.z_file:
        with open(args.z_file, "w") as fh:
            fh.write(dumps([float(c) for c in w.z.coords]) + "\n")
        payload["zFile"] = args.z_file
    _emit(payload, out)
    return 0 if w.verdict.holds else 1


def cmd_approximate(args, inst, out) -> int:
    x, y, _ = _vectors(args, inst)
    tol = resolve(args, inst, "tolerance", "tolerance", DEFAULT_TOL)
    eps = resolve(args, inst, "eps", "eps", None)
    if eps is None:
        raise UsageError("approximate needs --eps (or params.eps)")
    n_max = resolve(args, inst, "n_max", "nMax", 64)
    try:
        res = closure.approximate(x, y, eps, n_max, p_grid=inst.params.pGrid, tol=tol,
                                  workers=args.threads)
    except closure.SearchExhausted as err:
        _emit({"command": "approximate", "found": False, "reason": str(err),
               "predictedN": err.hint}, out)
        return 1
    except closure.PreconditionError as err:
        _emit({"command": "approximate", "found": False, "reason": str(err),
               "predictedN": None}, out)
        return 1
    if args.verify and res.exact_verified is False:
        return _verify_failed("approximation witness")
    _emit({"command": "approximate", "found": True, "mode": x.mode, **res.to_dict()}, out)
    return 0 if res.verified else 1


def cmd_ldp(args, inst, out) -> int:
    x, y, _ = _vectors(args, inst)
    grid = inst.params.tGrid
    if grid is None and args.t_points:
        grid = ldp.default_t_grid(x, y, args.t_points)
    header, rows = ldp.profile_table(x, y, grid, args.n or ())
    prof = ldp.limit_profiles(x, y, grid)
    if args.emit == "json":
        _emit({"command": "ldp", "columns": header, "rows": rows, "dominated": prof.dominated,
               "strict": prof.strict, "meanX": prof.mean_x, "meanY": prof.mean_y}, out)
    else:
        write_csv(header, rows, out)
    return 0 if prof.dominated else 1


def cmd_conjecture(args, inst, out) -> int:
    x, y, _ = _vectors(args, inst)
    tol = resolve(args, inst, "tolerance", "tolerance", DEFAULT_TOL)
    grid = inst.params.pGrid or criteria.GRID_GE1
    rep = criteria.conjecture_report(x, y, grid, tol=tol)
    _emit({"command": "conjecture", **rep.to_dict()}, out)
    return 0 if rep.verdict_class is criteria.VerdictClass.PASSES_ALL else 1


def cmd_kyfan(args, inst, out) -> int:
    a, b, _ = _vectors(args, inst)
    tol = resolve(args, inst, "tolerance", "tolerance", DEFAULT_TOL)
    v = criteria.kyfan_dominates(a, b, tol=tol)
    d = max(len(a), len(b))
    _emit({"command": "kyfan", "verdict": v.to_dict(),
           "normsA": [criteria.kyfan_norm(a, k) for k in range(1, d + 1)],
           "normsB": [criteria.kyfan_norm(b, k) for k in range(1, d + 1)]}, out)
    return 0 if v.holds else 1


def cmd_corpus(args, inst, out) -> int:
    """Random instance generator for property-test corpora."""
    rng = np.random.default_rng(args.seed)
    items = []
    for _ in range(args.count):
        d = int(rng.integers(2, args.max_dim + 1))
        x, y = rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d))
        items.append({"x": x.tolist(), "y": y.tolist()})
    _emit({"command": "corpus", "seed": args.seed, "instances": items}, out)
    return 0


COMMANDS = {
    "majorize": (cmd_majorize, "majorization / submajorization verdict"),
    "mlocc": (cmd_mlocc, "least copy count n with x^n majorized by y^n"),
    "catalyst": (cmd_catalyst, "verify a catalyst (--z) or build one from a copy count"),
    "approximate": (cmd_approximate, "nearby vector with a multi-copy witness"),
    "ldp": (cmd_ldp, "limit tail profiles as CSV"),
    "conjecture": (cmd_conjecture, "norm-family condition report"),
    "kyfan": (cmd_kyfan, "Ky Fan dominance of singular-value vectors"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--x", help="vector as a JSON array")
    common.add_argument("--y", help="vector as a JSON array")
    common.add_argument("--file", help="instance file {x, y, z?, params?}")
    common.add_argument("--mode", choices=MODES, help=f"arithmetic backend (default ${ENV_MODE} or float)")
    common.add_argument("--tolerance", type=float)
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--eps", type=float)
    common.add_argument("--emit", choices=("json", "csv"), default=None)
    common.add_argument("--verify", action="store_true",
                        help="re-check positive verdicts with the exact oracle")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="trumpkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("majorize", "mlocc"):
            p.add_argument("--weak", action="store_true", help="use submajorization")
        if name == "catalyst":
            p.add_argument("--z", help="candidate catalyst as a JSON array")
            p.add_argument("--n", type=int, help="copy count for the construction")
            p.add_argument("--z-file", dest="z_file", help="write the built catalyst here")
        if name == "ldp":
            p.add_argument("--n", type=int, action="append", help="add an fn@n column")
            p.add_argument("--t-points", dest="t_points", type=int)
    p = sub.add_parser("corpus", parents=[common], help="random instances for test corpora")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-dim", dest="max_dim", type=int, default=4)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code == 0 else 2
    try:
        if args.command == "corpus":
            return cmd_corpus(args, None, out)
        inst = load_instance(args)
        handler = COMMANDS[args.command][0]
        return handler(args, inst, out)
    except ValidationError as err:
        sys.stderr.write(f"invalid instance: {err}\n")
        return 2
    except (TrumpkitError, ValueError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
