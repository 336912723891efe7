"""JSON wire formats.

Rationals are "p/q" strings in lowest terms, cyclotomic numbers are
{"N": conductor, "coeffs": [...]} with power-basis coordinates of
length phi(N), matrices are {"rows", "cols", "entries"} row-major.
``dumps_canonical`` sorts keys so equal objects serialise to identical
bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cyclotomic import CycNum, ParameterSet
from .linalg import ExactMatrix

__all__ = [
    "rational_str", "parse_rational", "cyc_to_json", "cyc_from_json",
    "matrix_to_json", "matrix_from_json", "system_to_json",
    "dumps_canonical",
]


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def cyc_to_json(x: CycNum) -> dict:
    x._canonicalize()
    return {"N": x.N, "coeffs": [rational_str(c) for c in x.power_coeffs()]}


def cyc_from_json(obj) -> CycNum:
    return CycNum.from_power_coeffs(obj["N"],
                                    [parse_rational(c) for c in obj["coeffs"]])


def matrix_to_json(m: ExactMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[cyc_to_json(x) for x in row] for row in m.data],
    }


def matrix_from_json(obj) -> ExactMatrix:
    m = ExactMatrix([[cyc_from_json(x) for x in row]
                     for row in obj["entries"]])
    if (m.rows, m.cols) != (obj["rows"], obj["cols"]):
        raise ValueError("matrix shape mismatch")
    return m


def params_to_json(p: ParameterSet) -> dict:
    return {"a": rational_str(p.a), "b": rational_str(p.b),
            "c": [rational_str(x) for x in p.c]}


def params_from_json(obj) -> ParameterSet:
    return ParameterSet(parse_rational(obj["a"]), parse_rational(obj["b"]),
                        [parse_rational(x) for x in obj["c"]])


def system_to_json(sys) -> dict:
    """Full system export: parameters, generators, pairing, derived data."""
    return {
        "n": sys.n,
        "size": sys.size,
        "params": params_to_json(sys.params),
        "conductor": sys.roots.conductor,
        "delta0": cyc_to_json(sys.delta0),
        "v": [cyc_to_json(x) for x in sys.v],
        "M": [matrix_to_json(m) for m in sys.M],
        "H": matrix_to_json(sys.H),
    }


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
