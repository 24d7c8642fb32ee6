"""JSON encodings for scalars, polynomials, matrices and reports.

* exact rationals: ``"p/q"`` (``"p"`` when the denominator is 1)
* Gaussian rationals: ``{"re": "p/q", "im": "p/q"}``
* floating complex values: ``{"re": float, "im": float}``
* polynomials: ``[{"exponents": [...], "coeff": "p/q"}, ...]`` in canonical order
* monic polynomials: ``{"degree": n, "coeffs": [c0, ..., c(n-1)]}``
* matrices: ``{"n": n, "entries": [[row, col, value], ...]}``, 1-based, nonzeros only
* patterns: ``{"n": n, "support": [[row, col], ...]}``, 1-based
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from .assembler import RealizationReport, SubsetSelection
from .charpoly import MonicPoly, SquareMatrix
from .exactalg import MultiPoly, RationalFunction, VariableContext
from .exactalg.scalars import GaussianRational, format_fraction, parse_fraction
from .pattern_s import XParams, ZeroPattern
from .solver import PiPolynomial, SolutionMap, TAU_WEIGHTS

# reports inline full polynomials only up to this degree; larger ones get a digest
INLINE_POLY_MAX_DEGREE = 64


class DecodeError(ValueError):
    pass


def encode_scalar(v) -> Any:
    if isinstance(v, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(v, (int, Fraction)):
        return format_fraction(v)
    if isinstance(v, GaussianRational):
        return {"re": format_fraction(v.re), "im": format_fraction(v.im)}
    if isinstance(v, (float, complex)):
        v = complex(v)
        return {"re": v.real, "im": v.imag}
    raise TypeError(f"cannot encode scalar of type {type(v).__name__}")


def decode_scalar(obj, exact: bool = True):
    """Decode one scalar; ``exact=False`` yields Python ``complex``."""
    try:
        if isinstance(obj, bool):
            raise DecodeError("booleans are not scalars")
        if isinstance(obj, dict):
            if set(obj) - {"re", "im"}:
                raise DecodeError(f"unexpected keys in complex scalar: {sorted(obj)}")
            re, im = obj.get("re", 0), obj.get("im", 0)
            if exact:
                return _simplify(GaussianRational(_exact_part(re), _exact_part(im)))
            return complex(_float_part(re), _float_part(im))
        if exact:
            return _exact_part(obj)
        return complex(_float_part(obj), 0.0)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        if isinstance(exc, DecodeError):
            raise
        raise DecodeError(f"bad scalar {obj!r}: {exc}") from exc


def _simplify(g: GaussianRational):
    return g.re if g.im == 0 else g


def _exact_part(v) -> Fraction:
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        return parse_fraction(v)
    raise DecodeError(f"exact backend needs integers or 'p/q' strings, got {v!r}")


def _float_part(v) -> float:
    if isinstance(v, str):
        return float(Fraction(v))
    return float(v)


def encode_poly(p: MultiPoly) -> list[dict]:
    return [{"exponents": list(e), "coeff": format_fraction(c)} for e, c in p.terms()]


def decode_poly(terms: list[dict], context: VariableContext) -> MultiPoly:
    out: dict = {}
    for t in terms:
        e = tuple(int(k) for k in t["exponents"])
        out[e] = out.get(e, 0) + parse_fraction(str(t["coeff"]))
    return MultiPoly(context, out)


def encode_ratfunc(rf: RationalFunction) -> dict:
    return {"num": encode_poly(rf.num), "den": encode_poly(rf.den)}


def decode_ratfunc(obj: dict, context: VariableContext) -> RationalFunction:
    return RationalFunction(decode_poly(obj["num"], context), decode_poly(obj["den"], context), reduced=True)


def encode_monic(p: MonicPoly) -> dict:
    return {"degree": p.degree, "coeffs": [encode_scalar(c) for c in p.coeffs]}


def decode_monic(obj: dict, exact: bool = True) -> MonicPoly:
    coeffs = [decode_scalar(c, exact) for c in obj["coeffs"]]
    if "degree" in obj and int(obj["degree"]) != len(coeffs):
        raise DecodeError(f"degree {obj['degree']} but {len(coeffs)} coefficients")
    return MonicPoly(tuple(coeffs))


def monic_digest(p: MonicPoly) -> str:
    text = json.dumps(encode_monic(p), separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def encode_params(p: XParams) -> dict:
    return {name: encode_scalar(v) for name, v in p.as_dict().items()}


def decode_params(obj: dict, exact: bool = True) -> XParams:
    return XParams(tuple(decode_scalar(obj[f"x{i}"], exact) for i in range(1, 9)))


def encode_pattern(p: ZeroPattern) -> dict:
    return {"n": p.n, "support": p.one_based()}


def decode_pattern(obj: dict) -> ZeroPattern:
    return ZeroPattern.from_one_based(int(obj["n"]), obj["support"])


def encode_matrix(m: SquareMatrix) -> dict:
    return {"n": m.n, "entries": [[i + 1, j + 1, encode_scalar(v)] for i, j, v in m.nonzero_entries()]}


def decode_matrix(obj: dict, exact: bool = True) -> SquareMatrix:
    n = int(obj["n"])
    entries = []
    for r, c, v in obj["entries"]:
        r, c = int(r), int(c)
        if not (1 <= r <= n and 1 <= c <= n):
            raise DecodeError(f"entry ({r}, {c}) outside a {n}x{n} matrix")
        entries.append((r - 1, c - 1, decode_scalar(v, exact)))
    return SquareMatrix.from_entries(n, entries)


def decode_values(obj, exact: bool = True) -> list:
    """``{"values": [...]}`` or a bare list."""
    values = obj["values"] if isinstance(obj, dict) else obj
    if not isinstance(values, list):
        raise DecodeError("expected a list of values")
    return [decode_scalar(v, exact) for v in values]


def encode_solution(sm: SolutionMap) -> dict:
    return {
        "context": list(sm.values[0].context.names),
        "values": {name: encode_ratfunc(rf) for name, rf in sm.items()},
        "trace": [{"equation": f"phi{i}", "variable": v} for i, v in sm.trace],
    }


def encode_pi(p: PiPolynomial) -> dict:
    return {
        "context": list(p.pi.context.names),
        "term_count": len(p.pi),
        "weighted_degree": p.weighted_degree(),
        "weights": TAU_WEIGHTS,
        "terms": encode_poly(p.pi),
    }


def encode_selection(s: SubsetSelection) -> dict:
    return {
        "branch": s.branch,
        "sigma": [encode_scalar(v) for v in s.sigma],
        "remainder_size": len(s.remainder),
        "tried": s.tried,
        "params": encode_params(s.params),
    }


def _poly_or_digest(p: MonicPoly) -> dict:
    if p.degree <= INLINE_POLY_MAX_DEGREE:
        return encode_monic(p)
    return {"degree": p.degree, "sha256": monic_digest(p)}


def encode_report(r: RealizationReport) -> dict:
    out = {
        "passed": r.passed,
        "n": r.matrix.n,
        "pattern_ok": r.pattern_ok,
        "nonzero_count": r.nonzero_count,
        "expected_nonzero": r.expected_nonzero,
        "block_count": len(r.block_polys),
        "poly_ok": r.poly_ok,
        "whole_matrix_ok": r.whole_matrix_ok,
        "assembled": _poly_or_digest(r.assembled),
        "target": _poly_or_digest(r.target),
        "failures": list(r.failures),
    }
    if r.selection is not None:
        out["selection"] = encode_selection(r.selection)
    return out
