"""Tensor and transform file formats (JSON).

Tensor files ("T3J") hold ``{"m", "n", "p", "re", "im"}`` with the value
arrays of length m*n*p in slice-major order, row-major within each frontal
slice; ``"im"`` may be omitted for real tensors.  Transform files hold
``{"p", "re", "im"}`` row-major.  Values are serialized as IEEE-754
doubles with round-trip-exact decimal representation (Python's shortest
repr), so save/load is bit-exact.
"""

import json

import numpy as np

from .core import Tensor3


class FormatError(ValueError):
    """A tensor or transform file does not match its schema."""


def _flat_values(path: str, doc: dict, count: int):
    re = doc.get("re")
    if not isinstance(re, list) or len(re) != count:
        raise FormatError(f"{path}: 're' must be a list of {count} numbers")
    values = np.asarray(re, dtype=float).astype(np.complex128)
    im = doc.get("im")
    if im is not None:
        if not isinstance(im, list) or len(im) != count:
            raise FormatError(f"{path}: 'im' must be a list of {count} numbers")
        values += 1j * np.asarray(im, dtype=float)
    return values


def load_tensor(path: str) -> Tensor3:
    """Read a tensor from a T3J file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON: {exc}") from exc
    try:
        m, n, p = int(doc["m"]), int(doc["n"]), int(doc["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: missing or invalid dimensions") from exc
    if min(m, n, p) < 1:
        raise FormatError(f"{path}: dimensions must be positive, got {(m, n, p)}")
    flat = _flat_values(path, doc, m * n * p)
    data = np.moveaxis(flat.reshape(p, m, n), 0, 2)
    return Tensor3(data, copy=False)


def save_tensor(path: str, A: Tensor3) -> None:
    """Write a tensor to a T3J file, omitting 'im' when it is exactly zero."""
    flat = np.moveaxis(A.data, 2, 0).ravel()
    doc = {"m": A.m, "n": A.n, "p": A.p, "re": flat.real.tolist()}
    if np.any(flat.imag != 0.0):
        doc["im"] = flat.imag.tolist()
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_transform_matrix(path: str) -> np.ndarray:
    """Read a p x p transform matrix (row-major) from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON: {exc}") from exc
    try:
        p = int(doc["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: missing or invalid size 'p'") from exc
    if p < 1:
        raise FormatError(f"{path}: size must be positive, got {p}")
    return _flat_values(path, doc, p * p).reshape(p, p)


def save_transform_matrix(path: str, M) -> None:
    """Write a p x p matrix (row-major) to a JSON transform file."""
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise FormatError(f"transform matrix must be square, got {M.shape}")
    flat = M.ravel()
    doc = {"p": M.shape[0], "re": flat.real.tolist()}
    if np.any(flat.imag != 0.0):
        doc["im"] = flat.imag.tolist()
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")
