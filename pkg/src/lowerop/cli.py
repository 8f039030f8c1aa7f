"""``lowerop`` command line: JSON in, deterministic JSON report out.

Exit codes: 0 ok, 1 domain error (the report carries the library error
code), 2 I/O, parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import classify, twoortho
from .errors import BadParameter, LowerOpError
from .jsonio import (
    dump_operator,
    dump_poly,
    jsonable,
    load_operator,
    load_poly,
    load_scalar,
    load_structure,
    dump_report,
    to_json,
    validate_report,
)
from .mps import mps_fixed_point_check, mps_generate
from .operator import (
    BUILDERS,
    OperatorJ,
    op_apply,
    op_compose,
    op_from_images,
    op_invert,
    op_lowering_order,
)

DEFAULT_MAX_N = 64


class UsageError(Exception):
    """Bad flags or unreadable input (exit 2)."""

    def __init__(self, message: str, code: str = "UsageError"):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def max_n() -> int:
    raw = os.environ.get("LOWEROP_MAX_N", str(DEFAULT_MAX_N))
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"LOWEROP_MAX_N={raw!r} is not an integer")
    if cap < 1:
        raise UsageError("LOWEROP_MAX_N must be >= 1")
    return cap


def _cap(N: int, what: str = "N") -> int:
    if N < 1:
        raise UsageError(f"{what} must be >= 1")
    cap = max_n()
    if N > cap:
        raise BadParameter(f"{what} = {N} exceeds LOWEROP_MAX_N = {cap}", index=N)
    return N


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}", code="IOError")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})", code="ParseError")


def _parse(loader, obj, what: str):
    try:
        return loader(obj)
    except LowerOpError:
        raise
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as e:
        raise UsageError(f"{what}: {e}", code="ParseError")


def _operator(path: str) -> OperatorJ:
    J = _parse(load_operator, _read_json(path), path)
    _cap(max(J.N, 1), "operator N")
    return J


def _params(pairs) -> dict:
    out = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects name=value, got {item!r}")
        out[key] = _parse(load_scalar, value, f"--param {key}")
    return out


# subcommands ----------------------------------------------------------------


def cmd_canon(args, diag):
    if args.images:
        obj = _read_json(args.images)
        if isinstance(obj, dict):
            obj = obj.get("images")
        if not isinstance(obj, list) or not obj:
            raise UsageError("images JSON must be a nonempty list of polynomials", code="ParseError")
        images = [_parse(load_poly, d, f"image {n}") for n, d in enumerate(obj)]
        _cap(max(len(images) - 1, 1), "number of images")
        J = op_from_images(images)
    elif args.builder:
        if args.builder not in BUILDERS:
            raise UsageError(f"unknown builder {args.builder!r}; choose from {sorted(BUILDERS)}")
        N = _cap(args.N if args.N is not None else 10)
        try:
            J = BUILDERS[args.builder](N=N, **_params(args.param))
        except TypeError as e:
            raise UsageError(f"builder {args.builder}: {e}")
    else:
        raise UsageError("canon needs --images or --builder")
    diag.append(f"canonical coefficients a_0 .. a_{J.N}")
    return dump_operator(J)


def cmd_apply(args, diag):
    J = _operator(args.inputs[0])
    p = _parse(load_poly, _parse(json.loads, args.poly, "--poly"), "--poly")
    return {"result": dump_poly(op_apply(J, p))}


def cmd_compose(args, diag):
    if len(args.inputs) != 2:
        raise UsageError("compose needs --in K --in J (computes K o J)")
    K, J = (_operator(p) for p in args.inputs)
    out = op_compose(K, J)
    diag.append(f"horizon min(N_K, N_J) = {out.N}")
    return dump_operator(out)


def cmd_invert(args, diag):
    J = op_invert(_operator(args.inputs[0]))
    diag.append(f"inverse determined through N = {J.N}")
    return dump_operator(J)


def cmd_order(args, diag):
    profile = op_lowering_order(_operator(args.inputs[0]))
    diag.append(f"lambdas certified up to degree {profile.horizon}")
    return {"k": profile.order, "lambdas": jsonable(profile.lambdas)}


def detect_k(J: OperatorJ) -> int:
    """Largest ``k <= 2`` meeting the vanishing and degree conditions (lambdas are left to the solver)."""
    first = next((v for v, a in enumerate(J.coeffs) if a), None)
    if first is None:
        raise BadParameter("zero operator")
    for k in range(min(first, 2), -1, -1):
        if all(J.coeffs[v].degree <= v - k for v in range(k, J.N + 1)):
            return k
    return 0


def cmd_solve(args, diag):
    J = _operator(args.inputs[0])
    N = _cap(args.N if args.N is not None else 10)
    k = args.k if args.k is not None else detect_k(J)
    if args.k is None:
        diag.append(f"lowering order auto-detected: k = {k}")
    if not J.relaxed and J.support() <= 2 and J.N < N + k:
        # a_v = 0 for v >= 3, so the horizon extends for free
        J = OperatorJ([J.a(v) for v in range(3)], N + k)
        diag.append(f"three-term operator extended to N = {N + k}")
    if k == 0:
        report, mops, lambdas = classify.solve_k0(J, N)
        diag.extend(report.regularity_notes)
        return {
            "k": 0,
            "case": report.case_tag,
            "family": report.family,
            "params": jsonable(report.params),
            "affine": jsonable(list(report.affine)),
            "intermediate": jsonable(report.intermediate),
            "lambdas": jsonable(lambdas),
            "structure": jsonable(mops.structure),
        }
    solver = classify.solve_k1 if k == 1 else classify.solve_k2
    sol, mps, lambdas = solver(J, N)
    diag.extend(sol.notes)
    diag.append(f"fixed point verified for n <= {sol.verified_up_to}")
    return {
        "k": k,
        "family": sol.family,
        "params": jsonable(sol.params),
        "affine": jsonable(list(sol.affine)),
        "free_parameters": list(sol.free_parameters),
        "lambdas": jsonable(lambdas),
        "structure": jsonable(mps.structure),
        "verified_up_to": sol.verified_up_to,
    }


def cmd_verify(args, diag):
    J = _operator(args.inputs[0])
    if not args.structure:
        raise UsageError("verify-fixed-point needs --structure")
    s = _parse(load_structure, _read_json(args.structure), args.structure)
    N = _cap(args.N if args.N is not None else J.N)
    m = mps_generate(s, N)
    v = mps_fixed_point_check(m, J)
    diag.append(f"polynomials checked for n <= {v.horizon}, dual moments 0..{v.moment_horizon}")
    return {
        "holds": v.holds,
        "polynomial_side": v.polynomial_side,
        "dual_side": v.dual_side,
        "horizon": v.horizon,
        "first_failure": v.first_failure,
    }


def _seeds(raw):
    if raw is None:
        return (0, 1, 1)
    parts = raw.split(",")
    if len(parts) != 3:
        raise UsageError("--seeds expects b0,a1,g1")
    return tuple(_parse(load_scalar, p.strip(), "--seeds") for p in parts)


def cmd_two_ortho(args, diag):
    J = _operator(args.inputs[0])
    N = _cap(args.N if args.N is not None else 6)
    t = twoortho.find_appell_2ortho(J, N, _seeds(args.seeds))
    J = OperatorJ([J.a(v) for v in range(3)], max(J.N, t.N))
    mp = twoortho.build_matrix_pearson(t, J)
    check = twoortho.verify_matrix_pearson(t, mp, J)
    diag.append(f"matrix Pearson relation checked on moments 0..{check.horizon}")
    return {
        "structure": jsonable(t.structure),
        "phi": jsonable(mp.phi),
        "psi": jsonable(mp.psi),
        "dual_recurrence": twoortho.dual_recurrence_check(t),
        "dual_expressions": twoortho.dual_pair_expressions_check(t),
        "pearson": bool(check),
    }


COMMANDS = {
    "canon": cmd_canon,
    "apply": cmd_apply,
    "compose": cmd_compose,
    "invert": cmd_invert,
    "order": cmd_order,
    "solve": cmd_solve,
    "verify-fixed-point": cmd_verify,
    "two-ortho": cmd_two_ortho,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lowerop", description="Exact calculus of degree-nonincreasing operators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--in", dest="inputs", action="append", default=[], metavar="FILE")
        p.add_argument("--out", metavar="FILE")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--N", type=int)
        if name == "canon":
            p.add_argument("--images", metavar="FILE")
            p.add_argument("--builder")
            p.add_argument("--param", action="append", metavar="NAME=VALUE")
        if name == "apply":
            p.add_argument("--poly", required=True, help='coefficients, e.g. \'["0","0","1"]\'')
        if name == "solve":
            p.add_argument("--k", type=int, choices=(0, 1, 2))
        if name == "verify-fixed-point":
            p.add_argument("--structure", metavar="FILE")
        if name == "two-ortho":
            p.add_argument("--seeds", metavar="b0,a1,g1")
    return parser


def render_text(report: dict) -> str:
    lines = [f"status: {report['status']}", f"command: {report['command']}"]
    if report["status"] == "ok":
        for key in sorted(report["payload"]):
            lines.append(f"{key}: {json.dumps(report['payload'][key], sort_keys=True)}")
    else:
        err = report["error"]
        lines.append(f"error: {err['code']}: {err['message']}")
    lines.extend(f"note: {d}" for d in report["diagnostics"])
    return "\n".join(lines) + "\n"


def run(argv=None) -> tuple[int, dict]:
    """Dispatch ``argv``; returns ``(exit_code, report)``."""
    command = "lowerop"
    diag: list = []
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        if command not in ("canon",) and not args.inputs:
            raise UsageError(f"{command} needs --in FILE")
        payload = COMMANDS[command](args, diag)
        code, report = 0, dump_report(command, payload, diagnostics=diag)
    except UsageError as e:
        code, report = 2, dump_report(command, error={"code": e.code, "message": str(e)}, diagnostics=diag)
    except LowerOpError as e:
        code, report = 1, dump_report(command, error=e.to_dict(), diagnostics=diag)
    validate_report(report)
    return code, report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--out")
    pre.add_argument("--format", default="json")
    opts, _ = pre.parse_known_args(argv)
    out = opts.out
    text = render_text(report) if opts.format == "text" else to_json(report)
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            sys.stderr.write(f"lowerop: cannot write {out}: {e.strerror}\n")
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
