"""Dense complex matrices and their JSON wire format.

A matrix is just a square ``numpy`` array of complex128; functions here
validate shape/finiteness and serialize to the row-major schema
``{"n": n, "re": [...], "im": [...]}``.
"""

from __future__ import annotations

import json

import numpy as np


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a square, finite complex128 array (C order)."""
    out = np.ascontiguousarray(m, dtype=np.complex128)
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {out.shape}")
    if out.shape[0] == 0:
        raise ValueError("matrix must have dimension >= 1")
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix entries must all be finite")
    return out


def all_ones(n: int) -> np.ndarray:
    return np.ones((n, n), dtype=np.complex128)


def matrix_to_json(m: np.ndarray) -> dict:
    m = as_complex_matrix(m)
    flat = m.ravel()
    return {
        "n": int(m.shape[0]),
        "re": flat.real.tolist(),
        "im": flat.imag.tolist(),
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    n = int(obj["n"])
    re = np.asarray(obj["re"], dtype=np.float64)
    im = np.asarray(obj["im"], dtype=np.float64)
    if re.size != n * n or im.size != n * n:
        raise ValueError(f"expected {n * n} entries, got re={re.size} im={im.size}")
    return as_complex_matrix((re + 1j * im).reshape(n, n))


def save_matrix(m: np.ndarray, path) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(m), fh)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))
