"""JSON serialization for system files and problem descriptors.

System files carry a mandatory schema_version plus the blocks of a
polynomial system as nested row arrays. Numbers round-trip losslessly:
Python's json emits the shortest decimal that recovers the exact
binary64, so load(save(S)) reproduces S bit for bit.
"""

import json
import math

import numpy as np

from kronlift.errors import SystemFileError
from kronlift.mwr import BoundaryCondition, LinearOperatorSpec, MwrProblem
from kronlift.system_model import PolynomialSystem

SCHEMA_VERSION = 1


def _require(cond, message, field=None):
    if not cond:
        raise SystemFileError(message, field=field)


def _as_rows(value, nrows, ncols, field):
    _require(isinstance(value, list) and len(value) == nrows,
             f"expected {nrows} rows, got {len(value) if isinstance(value, list) else type(value).__name__}",
             field)
    out = np.empty((nrows, ncols))
    for i, row in enumerate(value):
        _require(isinstance(row, list) and len(row) == ncols,
                 f"row {i} has length {len(row) if isinstance(row, list) else '?'}, expected {ncols}",
                 field)
        for j, entry in enumerate(row):
            _require(isinstance(entry, (int, float)) and math.isfinite(entry),
                     f"entry [{i}][{j}] is not a finite number", field)
            out[i, j] = float(entry)
    return out


def system_to_dict(sys):
    """Canonical JSON-ready dict for a polynomial system, fixed key order."""
    out = {
        "schema_version": SCHEMA_VERSION,
        "n": sys.n,
        "D": [[float(v) for v in row] for row in sys.D],
    }
    if sys.G is not None:
        out["G"] = [[float(v) for v in row] for row in sys.G]
    if sys.R is not None:
        out["R"] = [[float(v) for v in row] for row in sys.R]
    out["b"] = [float(v) for v in sys.b]
    out["meta"] = sys.meta
    return out


def system_from_dict(data):
    _require(isinstance(data, dict), "system file must be a JSON object")
    _require("schema_version" in data, "missing", "schema_version")
    _require(data["schema_version"] == SCHEMA_VERSION,
             f"unsupported value {data['schema_version']!r}", "schema_version")
    _require("n" in data, "missing", "n")
    n = data["n"]
    _require(isinstance(n, int) and n >= 1, f"must be a positive integer, got {n!r}", "n")
    _require("D" in data, "missing", "D")
    _require("b" in data, "missing", "b")
    D = _as_rows(data["D"], n, n, "D")
    b = _as_rows([data["b"]], 1, n, "b")[0]
    G = _as_rows(data["G"], n, n * n, "G") if data.get("G") is not None else None
    R = _as_rows(data["R"], n, n**3, "R") if data.get("R") is not None else None
    meta = data.get("meta", "")
    _require(isinstance(meta, str), "must be a string", "meta")
    return PolynomialSystem(D=D, b=b, G=G, R=R, meta=meta)


def dumps_system(sys):
    return json.dumps(system_to_dict(sys), indent=2) + "\n"


def save_system(sys, path):
    with open(path, "w") as fp:
        fp.write(dumps_system(sys))


def load_json(path):
    try:
        with open(path) as fp:
            text = fp.read()
    except OSError as exc:
        err = SystemFileError(f"cannot read {path}: {exc.strerror}")
        err.code = "E_IO"
        raise err from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFileError(
            f"invalid JSON in {path} at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def load_system(path):
    return system_from_dict(load_json(path))


def _operator_from(value, field):
    _require(isinstance(value, list), "operator must be a list of [order, coeffs] terms", field)
    terms = []
    for idx, term in enumerate(value):
        _require(isinstance(term, list) and len(term) == 2,
                 f"term {idx} must be [derivative_order, coeffs]", field)
        order, coeffs = term
        _require(isinstance(order, int), f"term {idx} order must be an integer", field)
        _require(isinstance(coeffs, list) and all(isinstance(c, (int, float)) for c in coeffs),
                 f"term {idx} coeffs must be a list of numbers", field)
        terms.append((order, tuple(float(c) for c in coeffs)))
    return LinearOperatorSpec(terms=tuple(terms))


def _forcing_from(value, field):
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, list):
        _require(all(isinstance(c, (int, float)) for c in value),
                 "polynomial coefficients must be numbers", field)
        return [float(c) for c in value]
    if isinstance(value, dict) and set(value) == {"samples"}:
        samples = value["samples"]
        _require(isinstance(samples, list) and all(isinstance(c, (int, float)) for c in samples),
                 "samples must be a list of numbers", field)
        return np.asarray(samples, dtype=float)
    raise SystemFileError(
        "forcing must be a number, a coefficient list, or {\"samples\": [...]}", field
    )


def problem_from_dict(data):
    """Parse an MwrProblem descriptor (the 'problem' object of a gen file)."""
    _require(isinstance(data, dict), "problem descriptor must be a JSON object")
    for key in ("domain", "p", "r", "L", "f", "n_basis"):
        _require(key in data, "missing", key)
    domain = data["domain"]
    _require(isinstance(domain, list) and len(domain) == 2
             and all(isinstance(v, (int, float)) for v in domain),
             "must be [a, b]", "domain")
    bcs = []
    for idx, cond in enumerate(data.get("bc", [])):
        _require(isinstance(cond, dict) and {"endpoint", "kind", "value"} <= set(cond),
                 f"bc {idx} must carry endpoint/kind/value", "bc")
        bcs.append(BoundaryCondition(
            endpoint=float(cond["endpoint"]), kind=cond["kind"], value=float(cond["value"])
        ))
    n_basis = data["n_basis"]
    _require(isinstance(n_basis, int) and n_basis >= 1, "must be a positive integer", "n_basis")
    return MwrProblem(
        domain=(float(domain[0]), float(domain[1])),
        p=_operator_from(data["p"], "p"),
        r=_operator_from(data["r"], "r"),
        L=_operator_from(data["L"], "L"),
        f=_forcing_from(data["f"], "f"),
        n_basis=n_basis,
        basis_kind=data.get("basis", "chebyshev"),
        bc=tuple(bcs),
    )


def parse_descriptor(data):
    """Classify a gen descriptor: ('random', params) or ('problem', MwrProblem)."""
    _require(isinstance(data, dict), "descriptor must be a JSON object")
    keys = set(data)
    _require(len(keys & {"random", "problem"}) == 1,
             "descriptor must carry exactly one of 'random' or 'problem'")
    if "random" in keys:
        spec = data["random"]
        _require(isinstance(spec, dict), "must be an object", "random")
        for key in ("n", "degree"):
            _require(key in spec, "missing", f"random.{key}")
            _require(isinstance(spec[key], int), "must be an integer", f"random.{key}")
        plant = spec.get("plant_root")
        if plant is not None:
            _require(isinstance(plant, list) and all(isinstance(v, (int, float)) for v in plant),
                     "must be a list of numbers", "random.plant_root")
            plant = np.asarray(plant, dtype=float)
        seed = spec.get("seed")
        if seed is not None:
            _require(isinstance(seed, int), "must be an integer", "random.seed")
        return "random", {
            "n": spec["n"], "degree": spec["degree"], "seed": seed, "planted_root": plant,
        }
    return "problem", problem_from_dict(data["problem"])
