"""Command-line interface.

Exit codes: 0 success, 2 unrealizable / selection failed, 3 verification
failure, 4 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import serialize as ser
from .assembler import DEFAULT_RETRIES, full_pattern, realize_full, verify
from .charpoly import MonicPoly, char_poly
from .errors import (
    BadCardinality,
    CertificateFailed,
    NotTriangular,
    SelectionFailed,
    Unrealizable,
    WrongArity,
    ZeroParameter,
)
from .pattern_s import (
    PATTERN_S,
    XParams,
    build_X,
    obstruction_certificate,
    phi_symbolic,
    witness_all_ones_spectrum,
    witness_nilpotent,
)
from .solver import TAU_WEIGHTS, back_substitute, pi_polynomial, realize_coeffs, realize_spectrum_S, solution

EXIT_OK = 0
EXIT_UNREALIZABLE = 2
EXIT_VERIFY = 3
EXIT_INPUT = 4

EXACT_ONLY = ("certify", "solve", "degree")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    backend: str
    seed: int
    retries: int
    as_json: bool
    out: Path | None

    @property
    def exact(self) -> bool:
        return self.backend == "exact"


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--exact", dest="backend", action="store_const", const="exact", default=d("exact"))
    group.add_argument("--float", dest="backend", action="store_const", const="float", default=d("exact"))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--retries", type=int, default=d(DEFAULT_RETRIES))
    parser.add_argument("--out", type=Path, default=d(None), help="write the main artifact here")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spectral-patterns", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", help="check both witnesses and the phi4/phi7 obstruction")
    p.add_argument("--inject-x1", metavar="VALUE", help="replace x1 in both witnesses (negative control)")
    _global_flags(p, suppress=True)

    p = sub.add_parser("solve", help="solve phi_i = tau_i symbolically and build pi")
    p.add_argument("--check", action="store_true", help="also verify the back-substitution identity")
    _global_flags(p, suppress=True)

    p = sub.add_parser("degree", help="weighted degree of pi (94 expected)")
    p.add_argument("--weights", choices=("spectral", "uniform"), default="spectral",
                   help="spectral: tau_i has weight 8 - i (default); uniform: plain total degree")
    p.add_argument("--emit-pi", action="store_true")
    _global_flags(p, suppress=True)

    p = sub.add_parser("realize", help="realize 8 eigenvalues (or 8 coefficients) on S")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spectrum", type=Path, help='JSON {"values": [8 scalars]}')
    src.add_argument("--coeffs", type=Path, help='JSON {"values": [tau0, ..., tau7]}')
    _global_flags(p, suppress=True)

    p = sub.add_parser("assemble", help="realize a spectrum of size 8 + 2m on diag(S, D_2m)")
    p.add_argument("--spectrum", type=Path, required=True)
    _global_flags(p, suppress=True)

    p = sub.add_parser("verify", help="re-check a matrix against a pattern and a spectrum")
    p.add_argument("--matrix", type=Path, required=True)
    p.add_argument("--pattern", type=Path, help="pattern JSON; default diag(S, D_2m) for the matrix size")
    tgt = p.add_mutually_exclusive_group(required=True)
    tgt.add_argument("--spectrum", type=Path)
    tgt.add_argument("--target", type=Path, help='monic polynomial JSON {"degree", "coeffs"}')
    _global_flags(p, suppress=True)
    return parser


def _load(path: Path):
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if cfg.as_json else text)


def _write_out(cfg: RunConfig, payload: dict) -> None:
    if cfg.out is not None:
        cfg.out.write_text(json.dumps(payload))


# subcommands ------------------------------------------------------------------

def _witness_check(name: str, params_fn, target: MonicPoly, inject) -> dict:
    try:
        values = list(params_fn().values)
        if inject is not None:
            values[0] = inject
        params = XParams(tuple(values))
    except ZeroParameter as exc:
        return {"name": name, "passed": False, "detail": f"pattern violation: {exc}"}
    m = build_X(params)
    if not PATTERN_S.matches(m):
        return {"name": name, "passed": False, "detail": "pattern violation"}
    got = char_poly(m)
    ok = got == target
    return {"name": name, "passed": ok, "detail": f"char poly {got}"}


def cmd_certify(cfg: RunConfig, args) -> int:
    inject = None
    if args.inject_x1 is not None:
        try:
            inject = ser.decode_scalar(args.inject_x1)
        except ser.DecodeError as exc:
            raise InputError(str(exc)) from exc
    checks = [
        _witness_check("nilpotent witness realizes t^8", witness_nilpotent, MonicPoly((0,) * 8), inject),
        _witness_check(
            "witness realizes (t-1)^8",
            witness_all_ones_spectrum,
            MonicPoly.from_roots([1] * 8),
            inject,
        ),
    ]
    payload: dict = {"checks": checks}
    try:
        q = obstruction_certificate()
        phi = phi_symbolic()
        checks.append(
            {"name": "phi7 divides phi4", "passed": True, "detail": f"phi4 = ({q}) * ({phi[7]})"}
        )
        payload["quotient"] = {"terms": ser.encode_poly(q), "term_count": len(q), "text": str(q)}
    except CertificateFailed as exc:
        checks.append({"name": "phi7 divides phi4", "passed": False, "detail": str(exc)})
    payload["passed"] = all(c["passed"] for c in checks)
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}: {c['detail']}" for c in checks]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if payload["passed"] else EXIT_VERIFY


def cmd_solve(cfg: RunConfig, args) -> int:
    sm = solution()
    pi = pi_polynomial()
    payload = {"solution": ser.encode_solution(sm), "pi": ser.encode_pi(pi)}
    ok = True
    if args.check:
        ok = all(rf.num == rf.num.context.gens()[i] and rf.den == 1 for i, rf in enumerate(back_substitute(sm)))
        payload["back_substitution_ok"] = ok
    lines = [f"step {k}: phi{i} = tau{i} solved for {v}" for k, (i, v) in enumerate(sm.trace, start=1)]
    lines += [f"{name} = {rf}" for name, rf in sm.items()]
    lines.append(f"pi: {len(pi.pi)} terms, weighted degree {pi.weighted_degree()}")
    if args.check:
        lines.append(f"back-substitution identity: {'ok' if ok else 'FAILED'}")
    _write_out(cfg, payload)
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_degree(cfg: RunConfig, args) -> int:
    pi = pi_polynomial()
    if args.weights == "spectral":
        deg = pi.weighted_degree()
    else:
        deg = pi.pi.total_degree()
    payload: dict = {"weights": args.weights, "degree": deg}
    if args.weights == "spectral":
        payload["expected"] = 94
        payload["matches_expected"] = deg == 94
    if args.emit_pi:
        payload["pi"] = ser.encode_pi(pi)
        _write_out(cfg, payload["pi"])
    text = str(deg)
    if args.emit_pi and not cfg.as_json:
        text += "\n" + str(pi.pi)
    _emit(cfg, payload, text)
    if args.weights == "spectral" and deg != 94:
        print(f"discrepancy: weighted degree {deg}, expected 94", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_realize(cfg: RunConfig, args) -> int:
    path = args.spectrum or args.coeffs
    try:
        values = ser.decode_values(_load(path), cfg.exact)
    except (ser.DecodeError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    try:
        params = realize_spectrum_S(values) if args.spectrum else realize_coeffs(values)
    except WrongArity as exc:
        raise InputError(str(exc)) from exc
    except Unrealizable as exc:
        _emit(cfg, {"realizable": False, "reason": exc.reason}, f"Unrealizable: {exc.reason}")
        return EXIT_UNREALIZABLE
    payload = {"realizable": True, "params": ser.encode_params(params)}
    _write_out(cfg, payload["params"])
    text = "\n".join(f"{k} = {v}" for k, v in params.as_dict().items())
    _emit(cfg, payload, text)
    return EXIT_OK


def _report_text(payload: dict) -> str:
    lines = [
        f"{'PASS' if payload['passed'] else 'FAIL'}  {payload['n']}x{payload['n']} matrix",
        f"  pattern ok: {payload['pattern_ok']}",
        f"  nonzero entries: {payload['nonzero_count']} (expected {payload['expected_nonzero']})",
        f"  diagonal blocks: {payload['block_count']}",
        f"  characteristic polynomial matches target: {payload['poly_ok']}",
    ]
    if "selection" in payload:
        sel = payload["selection"]
        lines.append(f"  S-block branch: {sel['branch']} after {sel['tried']} candidate(s)")
    lines += [f"  failure: {f}" for f in payload["failures"]]
    return "\n".join(lines)


def cmd_assemble(cfg: RunConfig, args) -> int:
    try:
        values = ser.decode_values(_load(args.spectrum), cfg.exact)
    except (ser.DecodeError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    try:
        report = realize_full(values, seed=cfg.seed, retries=cfg.retries)
    except BadCardinality as exc:
        raise InputError(str(exc)) from exc
    except SelectionFailed as exc:
        _emit(cfg, {"passed": False, "error": str(exc), "tried": exc.tried}, f"SelectionFailed: {exc}")
        return EXIT_UNREALIZABLE
    payload = ser.encode_report(report)
    _write_out(cfg, ser.encode_matrix(report.matrix))
    _emit(cfg, payload, _report_text(payload))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_verify(cfg: RunConfig, args) -> int:
    try:
        matrix = ser.decode_matrix(_load(args.matrix), cfg.exact)
        if args.pattern is not None:
            pattern = ser.decode_pattern(_load(args.pattern))
        else:
            if matrix.n < 8 or (matrix.n - 8) % 2:
                raise InputError(f"no default pattern for size {matrix.n}; pass --pattern")
            pattern = full_pattern((matrix.n - 8) // 2)
        if args.spectrum is not None:
            target = MonicPoly.from_roots(ser.decode_values(_load(args.spectrum), cfg.exact))
        else:
            target = ser.decode_monic(_load(args.target), cfg.exact)
        report = verify(matrix, pattern, target)
    except (ser.DecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    payload = ser.encode_report(report)
    _emit(cfg, payload, _report_text(payload))
    return EXIT_OK if report.passed else EXIT_VERIFY


COMMANDS = {
    "certify": cmd_certify,
    "solve": cmd_solve,
    "degree": cmd_degree,
    "realize": cmd_realize,
    "assemble": cmd_assemble,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    cfg = RunConfig(args.subcommand, args.backend, args.seed, args.retries, args.json, args.out)
    if cfg.subcommand in EXACT_ONLY and not cfg.exact:
        print(f"error: {cfg.subcommand} is a certification command and requires --exact", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[cfg.subcommand](cfg, args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotTriangular as exc:
        print(f"elimination failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
