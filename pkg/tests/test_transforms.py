"""Transform gallery: DFT, DCT-based, and seeded random constructions."""

import numpy as np
import pytest
import scipy.fft

import tgi


class TestDftTransform:
    def test_size_one(self):
        assert np.allclose(tgi.dft_transform(1).M, [[1.0]])

    def test_two_point(self):
        assert np.allclose(tgi.dft_transform(2).M, [[1, 1], [1, -1]])

    def test_scaled_unitary(self):
        M = np.asarray(tgi.dft_transform(4).M)
        assert np.allclose(M @ M.conj().T, 4.0 * np.eye(4), atol=1e-12)

    def test_circular_convolution_semantics(self):
        # p = 2: product slices are half the sum/difference combinations.
        rng = np.random.default_rng(0)
        T = tgi.dft_transform(2)
        A = tgi.Tensor3(rng.normal(size=(3, 3, 2)))
        B = tgi.Tensor3(rng.normal(size=(3, 3, 2)))
        C = tgi.m_product(A, B, T)
        A1, A2 = A.slice(0), A.slice(1)
        B1, B2 = B.slice(0), B.slice(1)
        assert np.allclose(C.slice(0), A1 @ B1 + A2 @ B2, atol=1e-12)
        assert np.allclose(C.slice(1), A1 @ B2 + A2 @ B1, atol=1e-12)


class TestDctTransform:
    def test_size_one(self):
        assert np.allclose(tgi.dct_transform(1).M, [[1.0]])

    @pytest.mark.parametrize("p", [2, 3, 5, 8, 16])
    def test_real_and_certified(self, p):
        T = tgi.dct_transform(p)
        assert np.abs(np.asarray(T.M).imag).max() == 0.0
        assert np.linalg.norm(T.M @ T.Minv - np.eye(p), 2) <= 1e-8 * np.linalg.norm(T.M, 2)

    def test_hand_assembled_oracle(self):
        p = 3
        C = scipy.fft.dct(np.eye(p), norm="ortho", axis=0)
        Z = np.diag(np.ones(p - 1), 1)
        W = np.diag(C[:, 0])
        expected = np.linalg.inv(W) @ C @ (np.eye(p) + Z)
        assert np.allclose(tgi.dct_transform(p).M, expected, atol=1e-12)


class TestRandomTransform:
    def test_deterministic(self):
        A = tgi.random_invertible_transform(5, seed=42)
        B = tgi.random_invertible_transform(5, seed=42)
        assert np.array_equal(A.M, B.M)

    def test_large_certificate(self):
        T = tgi.random_invertible_transform(100, seed=42)
        resid = np.linalg.norm(T.M @ T.Minv - np.eye(100), 2)
        assert resid <= 1e-8 * np.linalg.norm(T.M, 2)

    def test_size_one(self):
        M = np.asarray(tgi.random_invertible_transform(1, seed=3).M)
        assert 0.0 < M[0, 0].real < 1.0


@pytest.mark.parametrize("make,p", [
    (tgi.dft_transform, 6),
    (tgi.dct_transform, 6),
    (tgi.identity_transform, 6),
    (lambda p: tgi.random_invertible_transform(p, seed=5), 6),
])
def test_gallery_certificate(make, p):
    T = make(p)
    resid = np.linalg.norm(T.M @ T.Minv - np.eye(p), 2)
    assert resid <= 1e-8 * np.linalg.norm(T.M, 2)
