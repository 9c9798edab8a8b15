"""Blur model, noise injection, restoration, and quality metrics."""

import math

import numpy as np
import pytest

import tgi


def synthetic_image(n: int) -> tgi.Tensor3:
    yy, xx = np.mgrid[0:n, 0:n] / (n - 1)
    r = np.hypot(yy - 0.35, xx - 0.6)
    channels = [
        0.25 + 0.75 * (np.sin(10 * np.pi * xx) > 0),
        np.clip(1.2 - 3.0 * r, 0, 1),
        (np.floor(yy * 8) % 2 == np.floor(xx * 8) % 2) * 0.9,
    ]
    return tgi.Tensor3(np.stack(channels, axis=2))


class TestBlurModel:
    def test_validation(self):
        with pytest.raises(ValueError):
            tgi.BlurModel(n=0, sigma=1.0, b=1)
        with pytest.raises(ValueError):
            tgi.BlurModel(n=4, sigma=0.0, b=1)
        with pytest.raises(ValueError):
            tgi.BlurModel(n=4, sigma=1.0, b=-1)

    def test_zero_bandwidth_is_diagonal(self):
        A = tgi.build_blur_tensor(tgi.BlurModel(n=5, sigma=2.0, b=0))
        expected = 1.0 / (2.0 * math.sqrt(2.0 * math.pi))
        for k in range(3):
            assert np.allclose(A.slice(k), expected * np.eye(5))

    def test_hand_evaluated_entry(self):
        A = tgi.build_blur_tensor(tgi.BlurModel(n=8, sigma=4.0, b=30))
        expected = math.exp(-4.0 / 32.0) / (4.0 * math.sqrt(2.0 * math.pi))
        assert A.data[0, 2, 0].real == pytest.approx(expected, rel=1e-14)

    def test_wide_band_structure(self):
        A = tgi.build_blur_tensor(tgi.BlurModel(n=256, sigma=4.0, b=30))
        G = A.slice(0).real
        assert np.allclose(G, G.T)
        D = np.abs(np.subtract.outer(np.arange(256), np.arange(256)))
        assert np.abs(G[D > 30]).max() == 0.0
        interior = G.sum(axis=1)[40:-40]
        assert interior.std() < 1e-12
        assert np.allclose(A.slice(0), A.slice(1))
        assert np.allclose(A.slice(0), A.slice(2))


class TestNoise:
    def test_zero_variance_identity(self):
        X = synthetic_image(16)
        Y = tgi.add_gaussian_noise(X, 0.0, seed=1)
        assert np.array_equal(Y.data, X.data)

    def test_deterministic(self):
        X = synthetic_image(16)
        Y1 = tgi.add_gaussian_noise(X, 1e-3, seed=7)
        Y2 = tgi.add_gaussian_noise(X, 1e-3, seed=7)
        assert np.array_equal(Y1.data, Y2.data)

    def test_sample_variance(self):
        X = tgi.Tensor3.zeros(128, 128, 3)
        Y = tgi.add_gaussian_noise(X, 1e-3, seed=11)
        sample = Y.data.real.var()
        assert abs(sample - 1e-3) < 1e-4


class TestPsnr:
    def test_identical_is_infinite(self):
        X = synthetic_image(8)
        assert tgi.psnr(X, X) == math.inf

    def test_formula(self):
        X = tgi.Tensor3.zeros(10, 10, 3)
        Y = tgi.Tensor3(np.full((10, 10, 3), 1e-2))
        assert tgi.psnr(X, Y) == pytest.approx(40.0)

    def test_direct_mse_oracle(self):
        rng = np.random.default_rng(0)
        X = tgi.Tensor3(rng.uniform(size=(6, 6, 3)))
        Y = tgi.Tensor3(rng.uniform(size=(6, 6, 3)))
        mse = np.mean(np.abs(X.data - Y.data) ** 2)
        assert tgi.psnr(X, Y) == pytest.approx(10 * math.log10(1 / mse))

    def test_shape_mismatch(self):
        with pytest.raises(tgi.ShapeError):
            tgi.psnr(tgi.Tensor3.zeros(2, 2, 3), tgi.Tensor3.zeros(3, 3, 3))


class TestDeblur:
    def test_identity_blur_returns_input(self):
        T = tgi.identity_transform(3)
        B = synthetic_image(12)
        A = tgi.build_blur_tensor(tgi.BlurModel(n=12, sigma=1.0, b=0))
        scale = 1.0 / A.data[0, 0, 0].real
        A = scale * A
        out = tgi.deblur(A, B, 1e-12, T)
        assert np.abs(out.data - B.data).max() < 1e-6

    def test_noiseless_round_trip(self):
        T = tgi.dct_transform(3)
        X = synthetic_image(32)
        A = tgi.build_blur_tensor(tgi.BlurModel(n=32, sigma=1.0, b=4))
        B = tgi.m_product(A, X, T)
        out = tgi.deblur(A, B, 1e-12, T)
        rel = (np.linalg.norm(out.data - X.data)
               / np.linalg.norm(X.data))
        assert rel < 1e-3

    def test_channel_decoupling_with_identity_transform(self):
        T = tgi.identity_transform(3)
        X = synthetic_image(16)
        A = tgi.build_blur_tensor(tgi.BlurModel(n=16, sigma=2.0, b=5))
        B = tgi.m_product(A, X, T)
        lam = 1e-6
        out = tgi.tikhonov_solve(A, B, lam, T)
        G = A.slice(0)
        for c in range(3):
            ref = np.linalg.solve(G.conj().T @ G + lam * np.eye(16),
                                  G.conj().T @ B.slice(c))
            assert np.abs(out.slice(c) - ref).max() < 1e-8

    def test_psnr_improvement(self):
        T = tgi.dct_transform(3)
        X = synthetic_image(64)
        A = tgi.build_blur_tensor(tgi.BlurModel(n=64, sigma=4.0, b=30))
        B = tgi.add_gaussian_noise(tgi.m_product(A, X, T), 1e-3, seed=99)
        blurred_view = tgi.Tensor3(np.clip(B.data.real, 0.0, 1.0))
        base = tgi.psnr(blurred_view, X)
        best = max(tgi.psnr(tgi.deblur(A, B, lam, T), X)
                   for lam in np.logspace(-6, 0, 13))
        assert best - base >= 2.0


class TestImageMapping:
    def test_round_trip(self):
        rng = np.random.default_rng(1)
        arr = rng.uniform(size=(9, 9, 3))
        A = tgi.tensor_from_image_array(arr)
        assert np.allclose(tgi.image_array_from_tensor(A), arr)

    def test_channel_is_slice(self):
        rng = np.random.default_rng(2)
        arr = rng.uniform(size=(5, 5, 3))
        A = tgi.tensor_from_image_array(arr)
        for c in range(3):
            assert np.allclose(A.slice(c).real, arr[:, :, c])

    def test_non_square_rejected(self):
        with pytest.raises(tgi.ShapeError):
            tgi.tensor_from_image_array(np.zeros((4, 5, 3)))
