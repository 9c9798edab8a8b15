"""Gaussian blur modeling and regularized color-image restoration.

An n x n RGB image maps to an n x n x 3 tensor, channel c becoming frontal
slice c.  Blur is a symmetric banded Toeplitz kernel applied identically to
every slice; restoration solves the blurred system with the ridge-
regularized solver and clamps the result back to displayable range.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import ShapeError, Tensor3, Transform
from .solvers import tikhonov_solve


@dataclass(frozen=True)
class BlurModel:
    """Gaussian point-spread parameters: image side n, width sigma, bandwidth b."""

    n: int
    sigma: float
    b: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("image side length must be positive")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.b < 0:
            raise ValueError("bandwidth must be non-negative")


def build_blur_tensor(model: BlurModel) -> Tensor3:
    """n x n x 3 blur tensor with identical symmetric banded Toeplitz slices.

    Entry (i, j) is ``exp(-(i-j)^2 / (2 sigma^2)) / (sigma sqrt(2 pi))``
    inside the band |i - j| <= b and zero outside it.
    """
    idx = np.arange(model.n)
    D = idx[:, None] - idx[None, :]
    G = np.exp(-D.astype(float) ** 2 / (2.0 * model.sigma ** 2))
    G /= model.sigma * math.sqrt(2.0 * math.pi)
    G[np.abs(D) > model.b] = 0.0
    return Tensor3(np.repeat(G[:, :, None], 3, axis=2), copy=False)


def add_gaussian_noise(X: Tensor3, variance: float, seed: int) -> Tensor3:
    """Add i.i.d. real Gaussian noise of the given variance, seeded."""
    if variance < 0:
        raise ValueError("variance must be non-negative")
    if variance == 0:
        return X
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, math.sqrt(variance), size=X.shape)
    return Tensor3(X.data + noise, copy=False)


def deblur(A: Tensor3, B: Tensor3, lam: float, T: Transform) -> Tensor3:
    """Restore an image tensor from its blurred version.

    Runs the ridge-regularized solve and clamps the real part into [0, 1]
    per channel for image output.
    """
    if A.m != A.n:
        raise ShapeError(f"blur tensor must be square, got ({A.m}, {A.n})")
    X = tikhonov_solve(A, B, lam, T)
    return Tensor3(np.clip(X.data.real, 0.0, 1.0).astype(np.complex128), copy=False)


def psnr(X: Tensor3, Y: Tensor3) -> float:
    """Peak signal-to-noise ratio in dB for unit-range data.

    ``10 log10(1 / MSE)``; identical inputs give +inf.
    """
    if X.shape != Y.shape:
        raise ShapeError(f"shape mismatch {X.shape} vs {Y.shape}")
    mse = float(np.mean(np.abs(X.data - Y.data) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)


def tensor_from_image_array(arr) -> Tensor3:
    """Map an (n, n, 3) unit-range image array to a tensor, channel -> slice."""
    arr = np.asarray(arr, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ShapeError(f"expected an (n, n, 3) image array, got {arr.shape}")
    if arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"only square images are supported, got {arr.shape[:2]}")
    return Tensor3(arr)


def image_array_from_tensor(A: Tensor3) -> np.ndarray:
    """Inverse of :func:`tensor_from_image_array`, clamped to [0, 1]."""
    if A.p != 3:
        raise ShapeError(f"expected 3 channel slices, got {A.p}")
    return np.clip(A.data.real, 0.0, 1.0)
