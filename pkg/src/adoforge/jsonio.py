"""JSON wire formats for matrices, algebras, representations, certificates.

Rationals travel as strings "p/q" (or "p" when the denominator is 1); matrix
entries are sorted row-major with no zeros, so serialization is canonical and
byte-identical across runs.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import ParseError
from .engine import Certificate
from .linalg import RationalMatrix
from .liealg import Grading, LieAlgebra
from .reps import Representation


def fraction_str(value: Fraction) -> str:
    return str(value)


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {value!r}: {exc}") from exc
    raise ParseError(f"expected a rational string, got {type(value).__name__}")


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


# --- matrices -------------------------------------------------------------

def matrix_to_json(m: RationalMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[r, c, fraction_str(v)] for r, c, v in m.entries()],
    }


def matrix_from_json(obj) -> RationalMatrix:
    if not isinstance(obj, dict):
        raise ParseError("matrix must be an object")
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        raw = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix object: {exc}") from exc
    if rows < 0 or cols < 0 or not isinstance(raw, list):
        raise ParseError("malformed matrix object")
    seen = set()
    entries = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 3):
            raise ParseError(f"matrix entry must be [row, col, value], got {item!r}")
        r, c, v = item
        if not isinstance(r, int) or not isinstance(c, int):
            raise ParseError("matrix entry indices must be integers")
        if not (0 <= r < rows and 0 <= c < cols):
            raise ParseError(f"matrix entry ({r},{c}) outside {rows}x{cols}")
        if (r, c) in seen:
            raise ParseError(f"duplicate matrix entry at ({r},{c})")
        seen.add((r, c))
        entries.append((r, c, parse_rational(v)))
    return RationalMatrix.from_entries(rows, cols, entries)


# --- algebras ---------------------------------------------------------------

def algebra_to_json(algebra: LieAlgebra, name: str) -> dict:
    obj: dict = {
        "name": name,
        "dim": algebra.dim,
        "basis": [algebra.label(i) for i in range(algebra.dim)],
        "brackets": [
            {
                "left": i,
                "right": j,
                "result": {str(k): fraction_str(v) for k, v in sorted(coeffs.items())},
            }
            for (i, j), coeffs in sorted(algebra.brackets.items())
        ],
    }
    if algebra.grading is not None:
        obj["grading"] = list(algebra.grading.degrees)
    return obj


def algebra_from_json(obj) -> tuple[LieAlgebra, str]:
    if not isinstance(obj, dict):
        raise ParseError("algebra document must be a JSON object")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise ParseError("algebra name must be a string")
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise ParseError("algebra dim must be a nonnegative integer")
    basis = obj.get("basis")
    if basis is not None:
        if not (isinstance(basis, list) and len(basis) == dim and all(isinstance(b, str) for b in basis)):
            raise ParseError("basis must be a list of dim strings")
    table = {}
    for rec in obj.get("brackets", []):
        if not isinstance(rec, dict):
            raise ParseError("bracket record must be an object")
        try:
            left, right, result = rec["left"], rec["right"], rec["result"]
        except KeyError as exc:
            raise ParseError(f"bracket record missing field {exc}") from exc
        if not (isinstance(left, int) and isinstance(right, int)):
            raise ParseError("bracket indices must be integers")
        if not (0 <= left < right < dim):
            raise ParseError(f"bracket pair ({left},{right}) must satisfy left < right within dim")
        if (left, right) in table:
            raise ParseError(f"duplicate bracket record for pair ({left},{right})")
        if not isinstance(result, dict):
            raise ParseError("bracket result must be an object")
        coeffs = {}
        for key, value in result.items():
            try:
                k = int(key)
            except ValueError as exc:
                raise ParseError(f"bracket result key {key!r} is not an index") from exc
            if not 0 <= k < dim:
                raise ParseError(f"bracket result index {k} out of range")
            coeffs[k] = parse_rational(value)
        table[(left, right)] = coeffs
    grading = None
    if "grading" in obj and obj["grading"] is not None:
        raw = obj["grading"]
        if not (isinstance(raw, list) and len(raw) == dim and all(isinstance(d, int) and d >= 1 for d in raw)):
            raise ParseError("grading must be a list of dim positive integers")
        grading = Grading(tuple(raw))
    try:
        algebra = LieAlgebra(dim, table, labels=basis, grading=grading)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return algebra, name


# --- representations --------------------------------------------------------

def representation_to_json(rep: Representation, algebra_ref) -> dict:
    return {
        "algebra": algebra_ref,
        "space_dim": rep.space_dim,
        "matrices": [matrix_to_json(m) for m in rep.matrices],
    }


def representation_from_json(obj) -> tuple[list[RationalMatrix], int, object]:
    if not isinstance(obj, dict):
        raise ParseError("representation document must be a JSON object")
    space_dim = obj.get("space_dim")
    if not isinstance(space_dim, int) or space_dim < 0:
        raise ParseError("space_dim must be a nonnegative integer")
    raw = obj.get("matrices")
    if not isinstance(raw, list):
        raise ParseError("matrices must be a list")
    matrices = [matrix_from_json(m) for m in raw]
    for m in matrices:
        if m.rows != space_dim or m.cols != space_dim:
            raise ParseError("every representation matrix must be space_dim x space_dim")
    return matrices, space_dim, obj.get("algebra")


# --- certificates -----------------------------------------------------------

def certificate_to_json(cert: Certificate) -> dict:
    return {"config": cert.config, "steps": cert.steps}


def certificate_from_json(obj) -> Certificate:
    if not isinstance(obj, dict) or "config" not in obj or "steps" not in obj:
        raise ParseError("certificate document must carry config and steps")
    if not isinstance(obj["steps"], list) or not isinstance(obj["config"], dict):
        raise ParseError("malformed certificate document")
    return Certificate(config=obj["config"], steps=obj["steps"])


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
