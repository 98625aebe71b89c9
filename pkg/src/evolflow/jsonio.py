"""JSON wire formats shared by the library and the CLI.

Matrix:   {"n": 2, "real": [[...], [...]], "imag": [[...], [...]]}
          ("imag" may be omitted when zero)
Element:  {"coords_real": [...], "coords_imag": [...]}   (imag optional)
Scalar function (curve catalog):
          {"kind": "poly", "coeffs": [c0, c1, ...]}
          {"kind": "sin"|"cos"|"exp"|"cosh"|"sinh", "scale": s, "shift": c}
Matrix function (time-dependent generator):
          {"terms": [{"fun": <scalar function>, "matrix": <matrix>}, ...]}
Curve:    tagged union on "variant", see `curve_from_json`.
"""

from __future__ import annotations

import json

import numpy as np

from . import curves
from .errors import DimensionMismatch
from .matcore import as_matrix, as_vector


def matrix_to_json(M) -> dict:
    M = as_matrix(M)
    out = {"n": int(M.shape[0]), "real": M.real.tolist()}
    if np.iscomplexobj(M) and np.any(M.imag != 0.0):
        out["imag"] = M.imag.tolist()
    return out


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        n = int(obj["n"])
        real = np.asarray(obj["real"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionMismatch(f"bad matrix JSON: {exc}") from exc
    if real.shape != (n, n):
        raise DimensionMismatch(f"matrix JSON says n={n} but real part has shape {real.shape}")
    if "imag" in obj and obj["imag"] is not None:
        imag = np.asarray(obj["imag"], dtype=np.float64)
        if imag.shape != (n, n):
            raise DimensionMismatch(f"matrix JSON imag part has shape {imag.shape}, expected {(n, n)}")
        if np.any(imag != 0.0):
            return as_matrix(real + 1j * imag)
    return as_matrix(real)


def element_to_json(x) -> dict:
    x = as_vector(x)
    out = {"coords_real": x.real.tolist()}
    if np.iscomplexobj(x) and np.any(x.imag != 0.0):
        out["coords_imag"] = x.imag.tolist()
    return out


def element_from_json(obj: dict) -> np.ndarray:
    real = np.asarray(obj["coords_real"], dtype=np.float64)
    if "coords_imag" in obj and obj["coords_imag"] is not None:
        imag = np.asarray(obj["coords_imag"], dtype=np.float64)
        if imag.shape != real.shape:
            raise DimensionMismatch("coords_imag length differs from coords_real")
        if np.any(imag != 0.0):
            return as_vector(real + 1j * imag)
    return as_vector(real)


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))


def save_matrix(path, M) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(M), fh, indent=2, sort_keys=True)
        fh.write("\n")


def scalar_function_to_json(f) -> dict:
    f = curves.as_scalar_function(f)
    if isinstance(f, curves.Poly):
        return {"kind": "poly", "coeffs": list(f.coeffs)}
    return {"kind": f.kind, "scale": f.scale, "shift": f.shift}


def scalar_function_from_json(obj: dict):
    kind = obj["kind"]
    if kind == "poly":
        return curves.Poly(tuple(float(c) for c in obj["coeffs"]))
    if kind in curves.AFFINE_ARG_KINDS:
        return curves.AffineArg(kind, float(obj.get("scale", 1.0)), float(obj.get("shift", 0.0)))
    raise ValueError(f"unknown scalar function kind {kind!r}")


def matrix_function_to_json(mf: "curves.MatrixFunction") -> dict:
    return {
        "terms": [
            {"fun": scalar_function_to_json(f), "matrix": matrix_to_json(M)}
            for f, M in mf.terms
        ]
    }


def matrix_function_from_json(obj: dict) -> "curves.MatrixFunction":
    terms = [
        (scalar_function_from_json(term["fun"]), matrix_from_json(term["matrix"]))
        for term in obj["terms"]
    ]
    return curves.MatrixFunction(terms)


def load_matrix_function(path) -> "curves.MatrixFunction":
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_function_from_json(json.load(fh))


_FN = scalar_function_from_json


def curve_to_json(c) -> dict:
    if isinstance(c, curves.Constant):
        return {"variant": "constant", "A": matrix_to_json(c.A)}
    if isinstance(c, curves.AffineLine):
        return {"variant": "affine_line", "A": matrix_to_json(c.A)}
    if isinstance(c, curves.ExpLine):
        return {"variant": "exp_line", "A0": matrix_to_json(c.A0), "X": matrix_to_json(c.X)}
    if isinstance(c, curves.TangentInduced):
        return {"variant": "tangent_induced", "B": matrix_to_json(c.B), "V": matrix_to_json(c.V)}
    if isinstance(c, curves.So2):
        return {"variant": "so2"}
    if isinstance(c, curves.Lorentz11):
        return {"variant": "lorentz11", "i": c.i}
    if isinstance(c, curves.Heisenberg):
        return {
            "variant": "heisenberg",
            "alpha": scalar_function_to_json(c.alpha),
            "beta": scalar_function_to_json(c.beta),
            "delta": scalar_function_to_json(c.delta),
        }
    if isinstance(c, curves.HeisenbergExp):
        return {
            "variant": "heisenberg_exp",
            "a": scalar_function_to_json(c.a),
            "b": scalar_function_to_json(c.b),
            "c": scalar_function_to_json(c.c),
        }
    if isinstance(c, curves.Sl2Iwasawa):
        return {
            "variant": "sl2_iwasawa",
            "alpha": scalar_function_to_json(c.alpha),
            "beta": scalar_function_to_json(c.beta),
            "delta": scalar_function_to_json(c.delta),
        }
    if isinstance(c, curves.FlipFlop):
        return {"variant": "flip_flop", "lambda": c.lam}
    if isinstance(c, curves.Numeric):
        if c.generator_spec is None:
            raise ValueError("numeric curve built from a bare callable cannot be serialized")
        return {
            "variant": "numeric",
            "A0": matrix_to_json(c.A0),
            "generator": matrix_function_to_json(c.generator_spec),
            "h": c.h,
            "horizon": c.horizon,
        }
    raise TypeError(f"not a curve: {c!r}")


def curve_from_json(obj: dict):
    variant = obj.get("variant")
    if variant == "constant":
        return curves.Constant(matrix_from_json(obj["A"]))
    if variant == "affine_line":
        return curves.AffineLine(matrix_from_json(obj["A"]))
    if variant == "exp_line":
        return curves.ExpLine(matrix_from_json(obj["A0"]), matrix_from_json(obj["X"]))
    if variant == "tangent_induced":
        return curves.TangentInduced(matrix_from_json(obj["B"]), matrix_from_json(obj["V"]))
    if variant == "so2":
        return curves.So2()
    if variant == "lorentz11":
        return curves.Lorentz11(int(obj.get("i", 1)))
    if variant == "heisenberg":
        return curves.Heisenberg(_FN(obj["alpha"]), _FN(obj["beta"]), _FN(obj["delta"]))
    if variant == "heisenberg_exp":
        return curves.HeisenbergExp(_FN(obj["a"]), _FN(obj["b"]), _FN(obj["c"]))
    if variant == "sl2_iwasawa":
        return curves.Sl2Iwasawa(_FN(obj["alpha"]), _FN(obj["beta"]), _FN(obj["delta"]))
    if variant == "flip_flop":
        return curves.FlipFlop(float(obj["lambda"]))
    if variant == "numeric":
        mf = matrix_function_from_json(obj["generator"])
        return curves.Numeric(
            matrix_from_json(obj["A0"]),
            mf,
            h=float(obj.get("h", 1e-3)),
            horizon=float(obj.get("horizon", 2.0)),
        )
    raise ValueError(f"unknown curve variant {variant!r}")


def load_curve(path):
    with open(path, "r", encoding="utf-8") as fh:
        return curve_from_json(json.load(fh))
