"""Constructors for standard transform matrices.

The product algebra is parameterized by an invertible matrix; the classic
choices are the unnormalized DFT matrix (circular-convolution semantics)
and a scaled DCT-II construction (cosine-transform semantics).  Random
transforms use numpy's PCG64 generator, so a seed fully determines the
matrix across platforms.
"""

import numpy as np

from .core import NumericalError, Transform

TRANSFORM_KINDS = ("dft", "dct", "identity", "rand", "file")

_RANDOM_RETRIES = 8


def identity_transform(p: int) -> Transform:
    """The identity matrix; slice-wise products with no mixing."""
    if p < 1:
        raise ValueError("transform size must be positive")
    return Transform(np.eye(p))


def dft_transform(p: int) -> Transform:
    """Unnormalized DFT matrix: M[j, k] = w^(jk) with w = exp(-2*pi*i/p)."""
    if p < 1:
        raise ValueError("transform size must be positive")
    j = np.arange(p)
    M = np.exp(-2j * np.pi / p * np.outer(j, j))
    return Transform(M)


def _dct2_orthonormal(p: int) -> np.ndarray:
    # C[j, k] = c_j * cos(pi * (2k + 1) * j / (2p)), c_0 = sqrt(1/p), else sqrt(2/p)
    j = np.arange(p)[:, None]
    k = np.arange(p)[None, :]
    C = np.sqrt(2.0 / p) * np.cos(np.pi * (2 * k + 1) * j / (2.0 * p))
    C[0, :] /= np.sqrt(2.0)
    return C


def dct_transform(p: int) -> Transform:
    """Scaled DCT-II construction: M = inv(W) C (I + Z).

    C is the orthonormal DCT-II matrix, Z has ones on the first
    superdiagonal, and W holds the first column of C on its diagonal.
    """
    if p < 1:
        raise ValueError("transform size must be positive")
    C = _dct2_orthonormal(p)
    Z = np.diag(np.ones(p - 1), 1)
    W_inv = np.diag(1.0 / C[:, 0])
    return Transform(W_inv @ C @ (np.eye(p) + Z))


def random_invertible_transform(p: int, seed: int) -> Transform:
    """Entries i.i.d. uniform(0, 1) from PCG64(seed); deterministic per seed.

    If the inverse certificate fails, the seed is shifted and the draw
    retried a bounded number of times.
    """
    if p < 1:
        raise ValueError("transform size must be positive")
    last_exc = None
    for attempt in range(_RANDOM_RETRIES):
        rng = np.random.default_rng(seed + attempt)
        M = rng.uniform(0.0, 1.0, size=(p, p))
        try:
            return Transform(M)
        except NumericalError as exc:
            last_exc = exc
    raise NumericalError(
        f"no invertible random transform found after {_RANDOM_RETRIES} attempts"
    ) from last_exc
