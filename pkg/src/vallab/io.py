"""JSON formats for polytopes, measures, zetas, classification data and tensors.

Scalars are exact strings ``"p/q"`` (or ``{"a": ..., "b": ...}`` for
``a + b*sqrt2``).  Every loader raises :class:`InputError` on malformed input.
"""

from __future__ import annotations

import json
from pathlib import Path

from .measures import DiscreteNormalMeasure
from .polytope import Polytope, hull
from .scalar import QuadScalar, format_scalar, parse_scalar
from .tensors import SymTensor
from .valuations import (
    AbsPower,
    ClassificationData,
    MinusPower,
    PlusPower,
    Polynomial,
    SampledFunction,
    Scaled,
    Sum,
    Table,
    UnaryFunction,
    Zero,
    ZetaSpec,
)

__all__ = [
    "InputError",
    "classification_from_json",
    "classification_to_json",
    "load_json",
    "measure_to_json",
    "polytope_from_json",
    "polytope_to_json",
    "tensor_from_json",
    "tensor_to_json",
    "unary_from_json",
    "unary_to_json",
    "zeta_from_json",
    "zeta_to_json",
]


class InputError(ValueError):
    """Malformed input data."""


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _scalar(obj):
    try:
        return parse_scalar(obj)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"malformed scalar {obj!r}") from exc


def _number(v):
    """Exact scalar, or a float kept as float (tables and float powers)."""
    if isinstance(v, float):
        return v
    return _scalar(v)


def _dump_number(v):
    return v if isinstance(v, float) else format_scalar(v)


# --- polytopes -------------------------------------------------------------


def polytope_to_json(P: Polytope) -> dict:
    return {
        "n": P.ambient_dim,
        "scalar": P.scalar_mode,
        "vertices": [[format_scalar(c) for c in v] for v in P.vertices],
    }


def polytope_from_json(obj) -> Polytope:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise InputError("polytope JSON needs a 'vertices' list")
    verts = obj["vertices"]
    if not isinstance(verts, list):
        raise InputError("'vertices' must be a list")
    n = obj.get("n")
    if n is None:
        if not verts:
            raise InputError("empty polytope needs 'n'")
        n = len(verts[0])
    if not isinstance(n, int) or n < 1:
        raise InputError(f"bad ambient dimension {n!r}")
    pts = []
    for v in verts:
        if not isinstance(v, list) or len(v) != n:
            raise InputError(f"vertex {v!r} is not a list of {n} scalars")
        pts.append(tuple(_scalar(c) for c in v))
    mode = obj.get("scalar", "rational")
    if mode not in ("rational", "quad"):
        raise InputError(f"unknown scalar mode {mode!r}")
    if mode == "rational" and any(isinstance(c, QuadScalar) for p in pts for c in p):
        raise InputError("sqrt2 coordinates need \"scalar\": \"quad\"")
    return hull(pts, n=n)


# --- measures --------------------------------------------------------------


def measure_to_json(M: DiscreteNormalMeasure) -> dict:
    return {
        "kind": M.kind,
        "atoms": [
            {"normal": [format_scalar(c) for c in u], "weight": format_scalar(w)}
            for u, w in sorted(M.atoms.items(), key=lambda kv: [float(c) for c in kv[0]])
        ],
    }


# --- unary functions and zetas ---------------------------------------------

_POWERS = {"abs_power": AbsPower, "plus_power": PlusPower, "minus_power": MinusPower}


def unary_to_json(f: UnaryFunction) -> dict:
    if isinstance(f, Zero):
        return {"kind": "zero"}
    if isinstance(f, Polynomial):
        return {"kind": "poly", "coeffs": [format_scalar(c) for c in f.coeffs]}
    for kind, cls in _POWERS.items():
        if type(f) is cls:
            return {"kind": kind, "p": f.p, "coef": format_scalar(f.coef)}
    if isinstance(f, Table):
        return {"kind": "table", "t": [_dump_number(v) for v in f.ts], "v": [_dump_number(v) for v in f.values]}
    if isinstance(f, SampledFunction):
        keys = sorted(f.table)
        return {"kind": "table", "t": [_dump_number(k) for k in keys], "v": [_dump_number(f.table[k]) for k in keys]}
    if isinstance(f, Sum):
        return {"kind": "sum", "terms": [unary_to_json(t) for t in f.terms]}
    if isinstance(f, Scaled):
        return {"kind": "scaled", "c": format_scalar(f.c), "f": unary_to_json(f.f)}
    raise InputError(f"cannot serialize {f!r}")


def unary_from_json(obj) -> UnaryFunction:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError(f"unary function needs a 'kind': {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "zero":
            return Zero()
        if kind == "poly":
            return Polynomial(tuple(_scalar(c) for c in obj["coeffs"]))
        if kind in _POWERS:
            p = obj.get("p", 1)
            if isinstance(p, bool) or not isinstance(p, (int, float)) or p < 0:
                raise InputError(f"power must be a nonnegative number, got {p!r}")
            if isinstance(p, float) and p.is_integer():
                p = int(p)
            return _POWERS[kind](p, _scalar(obj.get("coef", "1")))
        if kind == "table":
            return Table(tuple(_number(v) for v in obj["t"]), tuple(_number(v) for v in obj["v"]))
        if kind == "sum":
            return Sum(tuple(unary_from_json(t) for t in obj["terms"]))
        if kind == "scaled":
            return Scaled(_scalar(obj["c"]), unary_from_json(obj["f"]))
    except KeyError as exc:
        raise InputError(f"{kind} function missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad {kind} function: {exc}") from exc
    raise InputError(f"unknown function kind {kind!r}")


def zeta_to_json(z: ZetaSpec) -> dict:
    return {"eta_a": unary_to_json(z.eta_a), "eta_b": unary_to_json(z.eta_b)}


def zeta_from_json(obj) -> ZetaSpec:
    if not isinstance(obj, dict) or "eta_a" not in obj:
        raise InputError("zeta JSON needs 'eta_a'")
    return ZetaSpec(unary_from_json(obj["eta_a"]), unary_from_json(obj.get("eta_b", {"kind": "zero"})))


_CONSTANTS = ("c_nm1", "c_nm1_tilde", "c0", "c0_prime", "c0_tilde")


def classification_to_json(data: ClassificationData) -> dict:
    out = {"zeta1": zeta_to_json(data.zeta1), "zeta2": zeta_to_json(data.zeta2)}
    for name in _CONSTANTS:
        out[name] = format_scalar(getattr(data, name))
    return out


def classification_from_json(obj) -> ClassificationData:
    if not isinstance(obj, dict):
        raise InputError("classification JSON must be an object")
    kw = {name: _scalar(obj[name]) for name in _CONSTANTS if name in obj}
    for name in ("zeta1", "zeta2"):
        if name in obj:
            kw[name] = zeta_from_json(obj[name])
    unknown = set(obj) - set(_CONSTANTS) - {"zeta1", "zeta2"}
    if unknown:
        raise InputError(f"unknown fields {sorted(unknown)}")
    return ClassificationData(**kw)


# --- tensors ---------------------------------------------------------------


def tensor_to_json(T: SymTensor) -> dict:
    return {
        "p": T.order,
        "n": T.dim,
        "coeffs": [{"idx": list(idx), "v": format_scalar(v)} for idx, v in sorted(T.coeffs.items())],
    }


def tensor_from_json(obj) -> SymTensor:
    try:
        coeffs = {tuple(int(i) for i in c["idx"]): _scalar(c["v"]) for c in obj["coeffs"]}
        return SymTensor(int(obj["p"]), int(obj["n"]), coeffs)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed tensor JSON: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from exc

