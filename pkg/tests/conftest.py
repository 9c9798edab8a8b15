"""Shared golden data and construction helpers for the test suite."""

import numpy as np

import tgi


def t3(*slices) -> tgi.Tensor3:
    """Stack 2-D arrays as frontal slices of a tensor."""
    return tgi.Tensor3(
        np.stack([np.asarray(s, dtype=complex) for s in slices], axis=2))


def rel_gap(X: tgi.Tensor3, Y: tgi.Tensor3, T: tgi.Transform) -> float:
    """Tubal-norm distance normalized by 1 + the reference norm."""
    return tgi.tubal_norm(X - Y, T) / (1.0 + tgi.tubal_norm(Y, T))


def transform_for(tag: str, p: int, seed: int = 0) -> tgi.Transform:
    if tag == "dft":
        return tgi.dft_transform(p)
    if tag == "dct":
        return tgi.dct_transform(p)
    if tag == "identity":
        return tgi.identity_transform(p)
    return tgi.random_invertible_transform(p, 1000 + seed)


def random_unitary(rng, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def singular_tensor(m: int, p: int, T: tgi.Transform, seed: int,
                    zero_count: int = 2) -> tgi.Tensor3:
    """Tensor whose transform-domain slices each have `zero_count` zero singular values."""
    rng = np.random.default_rng(seed)
    slices = []
    for _ in range(p):
        u = random_unitary(rng, m)
        v = random_unitary(rng, m)
        s = np.concatenate([rng.uniform(0.5, 2.0, m - zero_count),
                            np.zeros(zero_count)])
        slices.append(u @ np.diag(s) @ v.conj().T)
    return tgi.from_transform_domain(tgi.SliceSpectrum.from_slices(slices), T)


def orthogonal_pair(m: int, p: int, T: tgi.Transform, seed: int):
    """Two nonzero tensors A, B with A*B = B*A = A^H*B = 0 (disjoint blocks)."""
    rng = np.random.default_rng(seed)
    sa, sb = 2, 2
    slices_a, slices_b = [], []
    for _ in range(p):
        Q = random_unitary(rng, m)
        Sa = np.zeros((m, m), dtype=complex)
        Sb = np.zeros((m, m), dtype=complex)
        Sa[:sa, :sa] = (rng.normal(size=(sa, sa)) + 1j * rng.normal(size=(sa, sa))
                        + 2 * np.eye(sa))
        Sb[sa:sa + sb, sa:sa + sb] = (rng.normal(size=(sb, sb))
                                      + 1j * rng.normal(size=(sb, sb))
                                      + 2 * np.eye(sb))
        slices_a.append(Q @ Sa @ Q.conj().T)
        slices_b.append(Q @ Sb @ Q.conj().T)
    A = tgi.from_transform_domain(tgi.SliceSpectrum.from_slices(slices_a), T)
    B = tgi.from_transform_domain(tgi.SliceSpectrum.from_slices(slices_b), T)
    return A, B


def diag_dominant_tensor(m: int, p: int, T: tgi.Transform, seed: int) -> tgi.Tensor3:
    """Tensor whose transform-domain slices are strictly diagonally dominant."""
    rng = np.random.default_rng(seed)
    slices = []
    for _ in range(p):
        S = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        S += np.diag(2.0 * np.abs(S).sum(axis=1))
        slices.append(S)
    return tgi.from_transform_domain(tgi.SliceSpectrum.from_slices(slices), T)


# ---------------------------------------------------------------------------
# Golden data: integer worked example of the product.
# ---------------------------------------------------------------------------
GOLDEN_M = np.array([[2, 2, 3], [2, 3, 1], [1, 1, 1]], dtype=float)

PROD_A = t3([[1, 0, 1], [-1, 2, 3], [0, 1, 0]],
            [[2, 3, -1], [-1, 0, 3], [1, 1, 1]],
            [[0, 0, 1], [3, 0, 1], [-1, 0, -1]])
PROD_B = t3([[2, -1, 0], [1, 2, 1], [-1, 1, 0]],
            [[1, -1, 1], [3, 0, 1], [0, 1, 0]],
            [[2, 1, -1], [1, 0, 0], [1, 0, 2]])
PROD_C = t3([[-252, -29, -77], [-147, -127, -124], [-68, -20, -27]],
            [[201, 14, 65], [73, 107, 77], [67, 19, 28]],
            [[81, 20, 20], [89, 37, 65], [11, 5, 3]])

# ---------------------------------------------------------------------------
# Golden data: tubal-index-2 tensor (same transform) and its Drazin inverse.
# The expected values are pinned by the defining equations; the residual
# checks in the test modules verify them independently of this table.
# ---------------------------------------------------------------------------
DRZ_A = t3([[4, -4, -1], [-7, -8, 7], [-1, -2, 0]],
           [[-2, 2, 1], [4, 4, -4], [0, 1, 0]],
           [[-1, 2, 0], [3, 4, -2], [1, 1, 0]])
DRZ_X = t3([[11, -2, 1], [-2, 1, 1], [-4.5, 1.5, -1]],
           [[-6, 1, -1], [0.5, -0.5, -1], [2.75, -0.75, 1]],
           [[-4, 1, 0], [1.5, -0.5, 0], [1.75, -0.75, 0]])
DRZ_INDICES = (1, 1, 2)

# Non-commuting partner of DRZ_A and the golden difference slices for the
# reverse-order law and for additivity without orthogonality.
NC_B = t3([[2, -18, -5], [-1, 9, -11], [4, -4, 2]],
          [[0, 10, 3], [0, -4, 6], [-2, 2, -1]],
          [[-2, 6, 1], [1, -4, 4], [-2, 2, -1]])
ROL_DIFF = t3(
    [[-0.4222, 0.7649, -1.6111], [0.7000, 0.1240, -2.7500], [1.9111, -0.5684, -0.4444]],
    [[0.4611, -0.3824, 1.0556], [0.1500, -0.0620, 1.7500], [-1.2056, 0.2842, 0.2222]],
    [[-0.0389, -0.3824, 0.5556], [-0.8500, -0.0620, 1.0000], [-0.7056, 0.2842, 0.2222]])
ADD_PLUS_DIFF = t3(
    [[4.372, 29.160, -31.112], [0.378, -1.160, 8.112], [-10.628, -0.340, 15.888]],
    [[-2.436, -16.580, 17.056], [0.186, 0.580, -4.056], [5.3140, 0.170, -6.944]],
    [[-1.936, -8.580, 11.056], [-0.564, 0.580, -3.056], [5.314, 0.170, -8.944]])
ADD_MINUS_DIFF = t3(
    [[19.372, 25.910, -6.612], [-3.622, -12.160, 25.112], [-10.628, 2.410, 4.388]],
    [[-10.936, -14.955, 2.806], [1.186, 6.580, -15.056], [6.314, -1.205, -2.194]],
    [[-6.436, -6.955, 2.806], [2.436, 3.580, -7.056], [4.314, -1.205, -2.194]])

# ---------------------------------------------------------------------------
# Golden data: nilpotent tensor (all transform-domain slices nilpotent).
# ---------------------------------------------------------------------------
NIL_M = np.array([[1, 0, -1], [0, 1, 0], [0, 1, -1]], dtype=float)
NIL_A = t3([[1, 3, 1], [-1, -3, -3], [-1, 2, 2]],
           [[0, 2, 2], [0, -2, -2], [0, 2, 2]],
           [[0, 4, 0], [-1, -3, -3], [0, 1, 3]])
NIL_INDICES = (2, 2, 3)

# ---------------------------------------------------------------------------
# Golden data: core-EP worked example and the three composite inverses.
# The third slice's rank sequence stabilizes immediately after the first
# power, so its index is 1 and the tubal index is 2.
# ---------------------------------------------------------------------------
CEP_M = np.array([[-1, 0, -1], [1, 0, 0], [-1, -1, -1]], dtype=float)
CEP_A = t3([[2, 2, -1], [-2, 0, 0], [-2, 2, -1]],
           [[0, -2, -4], [-8, 7, 0], [11, -10, 8]],
           [[-1, -1, 3], [1, 2, 1], [0, -1, 0]])
CEP_X = t3(
    [[0.0714, -0.1429, -0.2143], [-0.1429, 0.2857, 0.4286], [-0.2143, 0.4286, 0.6429]],
    [[-0.3158, 0.2925, 0.6525], [-0.3417, 0.0474, 0.2991], [-0.0620, -0.2299, -0.2230]],
    [[0.2619, -0.1905, -0.4524], [0.4762, -0.2857, -0.7619], [0.2143, -0.0952, -0.3095]])
CEP_INDICES = (1, 2, 1)

DMP_X = t3(
    [[0.8333, -0.3333, 0.1667], [-1.6667, 0.6667, -0.3333], [-2.5, 1, -0.5]],
    [[-0.3158, 0.2925, 0.6525], [-0.3417, 0.0474, 0.2991], [-0.0620, -0.2299, -0.2230]],
    [[-0.5, 0, -0.8333], [2, -0.6667, 0], [2.5, -0.6667, 0.8333]])
MPD_Y = t3(
    [[2, 2, -1], [-0.8, -0.8, 0.4], [0.4, 0.4, -0.2]],
    [[-0.2973, 0.2973, 0.0155], [-0.3694, 0.0361, -0.3488], [-0.7595, 0.4261, -0.2302]],
    [[-1.6667, -2.3333, 1], [1.1333, 0.8, -0.0667], [0.2667, -0.7333, 0.5333]])
CMP_Z = t3(
    [[0.8333, -0.3333, 0.1667], [-0.3333, 0.1333, -0.0667], [0.1667, -0.0667, 0.0333]],
    [[-0.0982, 0.0670, 0.2322], [-0.1241, -0.1781, -0.1211], [-0.2842, -0.0076, 0.2215]],
    [[-0.7222, 0.2222, -0.3889], [0.4444, 0.0889, 0.1778], [0.0556, 0.1778, -0.1444]])
