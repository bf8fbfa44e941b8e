"""JSON encode/decode for points, tangent vectors and group elements.

Wire format: a complex scalar is [re, im]; a vector is an array of scalars; a
matrix is a row-major array of rows.  Floats are emitted through ``repr``
(shortest round-trip form, at most 17 significant digits), so decode(encode)
is bit-exact.
"""

from __future__ import annotations

import json

import numpy as np

from .domains import JacobiBallPoint, SiegelBallPoint, SiegelUpperPoint
from .groups import JacobiElementC, JacobiElementR, SymplecticC, SymplecticR

__all__ = [
    "encode_complex",
    "decode_complex",
    "encode_matrix",
    "decode_matrix",
    "encode_vector",
    "decode_vector",
    "point_to_json",
    "point_from_json",
    "element_to_json",
    "element_from_json",
    "dumps",
]


def encode_complex(c) -> list[float]:
    c = complex(c)
    return [c.real, c.imag]


def decode_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def encode_vector(vec) -> list:
    return [encode_complex(c) for c in np.asarray(vec).reshape(-1)]


def decode_vector(v) -> np.ndarray:
    return np.array([decode_complex(c) for c in v], dtype=complex)


def encode_matrix(m) -> list:
    return [[encode_complex(c) for c in row] for row in np.asarray(m)]


def decode_matrix(v) -> np.ndarray:
    return np.array([[decode_complex(c) for c in row] for row in v], dtype=complex)


def encode_real_matrix(m) -> list:
    return [[float(c) for c in row] for row in np.asarray(m)]


def point_to_json(pt) -> dict:
    if isinstance(pt, JacobiBallPoint):
        return {"n": pt.n, "z": encode_vector(pt.z), "W": encode_matrix(pt.W)}
    if isinstance(pt, SiegelBallPoint):
        return {"n": pt.n, "W": encode_matrix(pt.W)}
    if isinstance(pt, SiegelUpperPoint):
        out = {"n": pt.n, "V": encode_matrix(pt.V)}
        if pt.u is not None:
            out["u"] = encode_vector(pt.u)
        return out
    raise TypeError(f"cannot serialize {type(pt).__name__}")


def point_from_json(d: dict):
    if "V" in d:
        u = decode_vector(d["u"]) if "u" in d else None
        return SiegelUpperPoint(V=decode_matrix(d["V"]), u=u)
    if "z" in d:
        return JacobiBallPoint(z=decode_vector(d["z"]), W=decode_matrix(d["W"]))
    if "W" in d:
        return SiegelBallPoint(decode_matrix(d["W"]))
    raise ValueError("point JSON needs W, (z, W) or V keys")


def element_to_json(h) -> dict:
    if isinstance(h, JacobiElementC):
        return {
            "p": encode_matrix(h.g.p),
            "q": encode_matrix(h.g.q),
            "alpha": encode_vector(h.alpha),
            "t": float(h.t),
        }
    if isinstance(h, JacobiElementR):
        return {
            "a": encode_real_matrix(h.g.a),
            "b": encode_real_matrix(h.g.b),
            "c": encode_real_matrix(h.g.c),
            "d": encode_real_matrix(h.g.d),
            "lambda_mu": [float(x) for x in h.lambda_mu],
            "k_center": float(h.k_center),
        }
    raise TypeError(f"cannot serialize {type(h).__name__}")


def element_from_json(d: dict):
    if "p" in d:
        g = SymplecticC(decode_matrix(d["p"]), decode_matrix(d["q"]))
        return JacobiElementC(g, decode_vector(d["alpha"]), float(d.get("t", 0.0)))
    if "a" in d:
        g = SymplecticR(
            np.array(d["a"], dtype=float),
            np.array(d["b"], dtype=float),
            np.array(d["c"], dtype=float),
            np.array(d["d"], dtype=float),
        )
        return JacobiElementR(
            g,
            np.array(d["lambda_mu"], dtype=float),
            float(d.get("k_center", 0.0)),
        )
    raise ValueError("element JSON needs (p, q, alpha) or (a, b, c, d, lambda_mu)")


def dumps(obj, pretty: bool = False) -> str:
    """Deterministic JSON text: sorted keys, repr floats."""
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
