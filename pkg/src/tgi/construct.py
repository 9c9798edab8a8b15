"""Seeded constructors for tensors with prescribed structure.

Used by the benchmark harness and the test suite: tensors with a chosen
tubal index are assembled directly in the transform domain from block
designs (an invertible well-conditioned core next to a nilpotent Jordan
block), then carried back to the spatial domain.
"""

import numpy as np

from .core import SliceSpectrum, Tensor3, Transform, from_transform_domain


def _random_unitary(rng, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def _conditioned_invertible(rng, n: int) -> np.ndarray:
    # Singular values kept inside [0.5, 2] so power ranks stay well separated.
    U = _random_unitary(rng, n)
    V = _random_unitary(rng, n)
    return U @ np.diag(rng.uniform(0.5, 2.0, n)) @ V.conj().T


def _slice_with_index(rng, m: int, t: int) -> np.ndarray:
    """m x m matrix of index exactly t (0 means invertible)."""
    if t == 0:
        return _conditioned_invertible(rng, m)
    if t >= m:
        raise ValueError(f"index {t} must be below the slice size {m}")
    S = np.zeros((m, m), dtype=np.complex128)
    S[:m - t, :m - t] = _conditioned_invertible(rng, m - t)
    S[m - t:, m - t:] = np.diag(np.ones(t - 1), 1)
    Q = _random_unitary(rng, m)
    return Q @ S @ Q.conj().T


def random_tensor(m: int, n: int, p: int, seed: int,
                  complex_entries: bool = True) -> Tensor3:
    """Dense tensor with i.i.d. standard normal entries."""
    rng = np.random.default_rng(seed)
    data = rng.normal(size=(m, n, p))
    if complex_entries:
        data = data + 1j * rng.normal(size=(m, n, p))
    return Tensor3(data, copy=False)


def random_index_tensor(m: int, p: int, k: int, T: Transform,
                        seed: int) -> Tensor3:
    """Square tensor whose tubal index under T is exactly k.

    Slices are drawn with indices between 0 and k (at least one hitting k)
    in the transform domain, then mapped back.
    """
    if k < 0:
        raise ValueError("tubal index must be non-negative")
    if k >= m and k > 0:
        raise ValueError(f"tubal index {k} must be below the slice size {m}")
    rng = np.random.default_rng(seed)
    targets = [int(rng.integers(0, k + 1)) for _ in range(p)]
    targets[int(rng.integers(0, p))] = k
    slices = [_slice_with_index(rng, m, t) for t in targets]
    return from_transform_domain(SliceSpectrum.from_slices(slices), T)
