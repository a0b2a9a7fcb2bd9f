"""Batch command-line front end with a versioned JSON interchange format.

One invocation processes one request: a JSON object on standard input
(or ``--input FILE``) goes in, a JSON object comes out on standard
output.  Floating-point values are emitted with 17 significant digits so
round-trips are bit-faithful.  Exit codes: 0 success, 2 no solution,
3 non-real solution, 4 malformed input, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .errors import (
    FamilyOverflow,
    IllConditionedNodes,
    MomentProblemError,
    NonRealSolution,
    NoPositiveBranches,
    NoSolution,
    RankDeficientSignal,
    RepeatedRoots,
    SingularReducedSystem,
)
from .inversion import extend_moments, family_member, invert_min_degree, next_moment
from .markov import markov_certificate
from .structure import analyze
from .tolerances import ToleranceSet
from .transform import BranchSolution, MomentSequence, exp_transform, forward_moments
from .trig import TrigSignal, trig_forward, trig_invert

SCHEMA = "momentkit/1"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_NO_SOLUTION = 2
EXIT_NON_REAL = 3
EXIT_BAD_INPUT = 4


class InputError(ValueError):
    """Malformed or schema-violating request."""


# ---------------------------------------------------------------------------
# JSON emission: floats with 17 significant digits

def _emit(obj) -> str:
    if obj is None or obj is True or obj is False or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite value in output: {obj!r}")
        return format(obj, ".17g")
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_emit(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (json.dumps(str(k)) + ": " + _emit(v) for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# strict input readers

def _check_fields(doc, required: set[str], optional: set[str]):
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    allowed = required | optional | {"schema"}
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise InputError(f"unknown fields: {unknown}")
    missing = sorted(required - set(doc))
    if missing:
        raise InputError(f"missing fields: {missing}")
    if "schema" in doc and doc["schema"] != SCHEMA:
        raise InputError(f"unsupported schema {doc['schema']!r}; expected {SCHEMA!r}")


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"{where} must be a number")
    return float(v)


def _int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{where} must be an integer")
    return v


def _number_list(v, where: str) -> list[float]:
    if not isinstance(v, list):
        raise InputError(f"{where} must be an array of numbers")
    return [_number(x, where) for x in v]


def _complex_list(v, where: str) -> list[complex]:
    if not isinstance(v, list):
        raise InputError(f"{where} must be an array of [re, im] pairs")
    out = []
    for x in v:
        if not (isinstance(x, list) and len(x) == 2):
            raise InputError(f"{where} entries must be [re, im] pairs")
        out.append(complex(_number(x[0], where), _number(x[1], where)))
    return out


def _read_moments(doc) -> MomentSequence:
    _check_fields(doc, {"moments", "n_x", "n_y"}, set())
    try:
        return MomentSequence(
            tuple(_number_list(doc["moments"], "moments")),
            _int(doc["n_x"], "n_x"),
            _int(doc["n_y"], "n_y"),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _read_branches(doc) -> tuple[list[float], list[float], int | None]:
    _check_fields(doc, {"xs", "ys"}, {"degree", "count"})
    xs = _number_list(doc["xs"], "xs")
    ys = _number_list(doc["ys"], "ys")
    count = _int(doc["count"], "count") if "count" in doc else None
    if "degree" in doc:
        _int(doc["degree"], "degree")  # accepted for round-trips, not used
    return xs, ys, count


# ---------------------------------------------------------------------------
# output builders

def _branch_doc(sol: BranchSolution) -> dict:
    return {
        "schema": SCHEMA,
        "xs": list(sol.xs),
        "ys": list(sol.ys),
        "degree": sol.degree,
    }


def _moment_doc(m: MomentSequence) -> dict:
    return {"schema": SCHEMA, "moments": list(m.values), "n_x": m.n_x, "n_y": m.n_y}


# ---------------------------------------------------------------------------
# subcommand handlers (each returns the output document)

def _cmd_forward(doc, args, tol):
    xs, ys, count = _read_branches(doc)
    if count is None:
        count = len(xs) + len(ys)
    if count < 1:
        raise InputError("count must be >= 1")
    return _moment_doc(forward_moments(xs, ys, count))


def _cmd_transform(doc, args, tol):
    m = _read_moments(doc)
    return {"schema": SCHEMA, "a": list(exp_transform(m).values)}


def _cmd_analyze(doc, args, tol):
    report = analyze(_read_moments(doc), tol_rank=tol.rank)
    minimal = None
    if report.minimal_solution is not None:
        minimal = _branch_doc(report.minimal_solution)
        minimal.pop("schema")
    return {
        "schema": SCHEMA,
        "exists": report.exists,
        "rank_A1": report.rank_A1,
        "d_min": report.d_min,
        "d_max": report.d_max,
        "unique": report.unique,
        "minimal_solution": minimal,
        "tol_rank": report.tol_rank,
    }


def _cmd_invert(doc, args, tol):
    m = _read_moments(doc)
    if args.verbose:
        sol, info = invert_min_degree(m, method=args.method, tol=tol, full_output=True)
        out = _branch_doc(sol)
        out["diagnostics"] = {
            "method": info["method"],
            "eigenvalues_x": [_complex_pair(z) for z in info["x"]["eigenvalues"]],
            "eigenvalues_y": [_complex_pair(z) for z in info["y"]["eigenvalues"]],
            "zeros_filtered_x": info["x"]["zeros_filtered"],
            "zeros_filtered_y": info["y"]["zeros_filtered"],
        }
        return out
    return _branch_doc(invert_min_degree(m, method=args.method, tol=tol))


def _cmd_next(doc, args, tol):
    m = _read_moments(doc)
    value = next_moment(m, tol=tol)
    out = {"schema": SCHEMA, "next_moment": value}
    if args.verbose:
        # second route for comparison; unavailable when the branch values
        # are not real even though the recursion itself is fine
        try:
            sol = invert_min_degree(m, tol=tol)
            k = m.K + 1
            power_sum = sum(v**k for v in sol.xs) - sum(v**k for v in sol.ys)
        except MomentProblemError:
            power_sum = None
        out["diagnostics"] = {"power_sum_of_minimal_solution": power_sum}
    return out


def _cmd_extend(doc, args, tol):
    m = _read_moments(doc)
    extended = extend_moments(m, args.count, tol=tol)
    return {"schema": SCHEMA, "moments": list(extended)}


def _parse_roots(text: str) -> list[float]:
    if not text.strip():
        return []
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad --r-roots value {text!r}") from exc


def _cmd_family(doc, args, tol):
    m = _read_moments(doc)
    minimal = invert_min_degree(m, tol=tol)
    member = family_member(minimal, _parse_roots(args.r_roots))
    return _branch_doc(member)


def _cmd_markov_check(doc, args, tol):
    m = _read_moments(doc)
    cert = markov_certificate(m, tol=tol)
    out = {
        "schema": SCHEMA,
        "spd": cert.spd,
        "interlaced": cert.interlaced,
        "extended_singular": cert.extended_singular,
        "weights_positive": cert.weights_positive,
        "interlacing_applicable": cert.interlacing_applicable,
    }
    if args.verbose:
        sol = invert_min_degree(m, tol=tol)
        out["diagnostics"] = {"minimal_solution": {"xs": list(sol.xs), "ys": list(sol.ys)}}
    return out


def _cmd_trig_forward(doc, args, tol):
    _check_fields(doc, {"freqs", "amps"}, set())
    sig = TrigSignal(
        tuple(_number_list(doc["freqs"], "freqs")),
        tuple(_complex_list(doc["amps"], "amps")),
    )
    moments = trig_forward(sig, args.count)
    return {"schema": SCHEMA, "moments": [_complex_pair(z) for z in moments]}


def _cmd_trig_invert(doc, args, tol):
    _check_fields(doc, {"moments"}, set())
    moments = _complex_list(doc["moments"], "moments")
    if args.verbose:
        sig, info = trig_invert(moments, args.modes, tol=tol, full_output=True)
    else:
        sig, info = trig_invert(moments, args.modes, tol=tol), None
    out = {
        "schema": SCHEMA,
        "freqs": list(sig.freqs),
        "amps": [_complex_pair(a) for a in sig.amps],
    }
    if info is not None:
        out["diagnostics"] = {
            "eigenvalues": [_complex_pair(z) for z in info["eigenvalues"]],
            "unit_circle_deviation": info["unit_circle_deviation"],
        }
    return out


_HANDLERS = {
    "forward": _cmd_forward,
    "transform": _cmd_transform,
    "analyze": _cmd_analyze,
    "invert": _cmd_invert,
    "next": _cmd_next,
    "extend": _cmd_extend,
    "family": _cmd_family,
    "markov-check": _cmd_markov_check,
    "trig-forward": _cmd_trig_forward,
    "trig-invert": _cmd_trig_invert,
}

_EXIT_BY_ERROR = {
    NoSolution: EXIT_NO_SOLUTION,
    NonRealSolution: EXIT_NON_REAL,
    SingularReducedSystem: EXIT_NO_SOLUTION,
    RepeatedRoots: EXIT_NO_SOLUTION,
    RankDeficientSignal: EXIT_NO_SOLUTION,
    IllConditionedNodes: EXIT_NO_SOLUTION,
    FamilyOverflow: EXIT_BAD_INPUT,
    NoPositiveBranches: EXIT_BAD_INPUT,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="read the JSON request from FILE instead of stdin")
    common.add_argument("--tol-rank", type=float, default=None, help="relative rank tolerance (default 1e-9; env MOMENTKIT_TOL_RANK)")
    common.add_argument("--tol-zero", type=float, default=None, help="absolute cutoff for structural zero roots (default scale-aware)")
    common.add_argument("--tol-imag", type=float, default=None, help="imaginary-part tolerance for real roots (default 1e-8)")
    common.add_argument("--verbose", action="store_true", help="attach diagnostics to the output object")

    parser = argparse.ArgumentParser(prog="momentkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("forward", parents=[common], help="branch values -> moments")
    sub.add_parser("transform", parents=[common], help="moments -> exponential-transform coefficients")
    sub.add_parser("analyze", parents=[common], help="moments -> solvability report")
    p = sub.add_parser("invert", parents=[common], help="moments -> minimal-degree branch solution")
    p.add_argument("--method", choices=("geneig", "companion"), default="companion")
    sub.add_parser("next", parents=[common], help="moments -> next moment")
    p = sub.add_parser("extend", parents=[common], help="moments -> extended moment sequence")
    p.add_argument("--count", type=int, required=True, help="number of additional moments")
    p = sub.add_parser("family", parents=[common], help="moments -> family member with matched pairs appended")
    p.add_argument("--r-roots", default="", help="comma-separated matched-pair values")
    sub.add_parser("markov-check", parents=[common], help="moments -> Markov certificates")
    p = sub.add_parser("trig-forward", parents=[common], help="trig signal -> complex moments")
    p.add_argument("--count", type=int, required=True, help="number of moments")
    p = sub.add_parser("trig-invert", parents=[common], help="complex moments -> trig signal")
    p.add_argument("--modes", type=int, required=True, help="number of modes r (input has 2r moments)")
    return parser


def _tolerances(args) -> ToleranceSet:
    rank = args.tol_rank
    if rank is None:
        env = os.environ.get("MOMENTKIT_TOL_RANK")
        if env is not None:
            try:
                rank = float(env)
            except ValueError as exc:
                raise InputError(f"bad MOMENTKIT_TOL_RANK value {env!r}") from exc
    if rank is None:
        rank = 1e-9
    return ToleranceSet(
        rank=rank,
        zero=args.tol_zero,
        imag=args.tol_imag if args.tol_imag is not None else 1e-8,
    )


def _fail(kind: str, detail: str, code: int) -> int:
    print(_emit({"error": {"kind": kind, "detail": detail}}))
    return code


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help; anything else is a malformed request
        return EXIT_OK if exc.code == 0 else EXIT_BAD_INPUT

    try:
        tol = _tolerances(args)
        if args.input is not None:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        result = _HANDLERS[args.command](doc, args, tol)
        print(_emit(result))
        return EXIT_OK
    except InputError as exc:
        return _fail("BadInput", str(exc), EXIT_BAD_INPUT)
    except OSError as exc:
        return _fail("BadInput", f"cannot read input: {exc}", EXIT_BAD_INPUT)
    except MomentProblemError as exc:
        code = _EXIT_BY_ERROR.get(type(exc), EXIT_NO_SOLUTION)
        return _fail(type(exc).__name__, str(exc), code)
    except ValueError as exc:
        return _fail("BadInput", str(exc), EXIT_BAD_INPUT)
    except Exception as exc:  # noqa: BLE001  - the CLI must not traceback
        return _fail("InternalError", f"{type(exc).__name__}: {exc}", EXIT_INTERNAL)


if __name__ == "__main__":
    sys.exit(main())
