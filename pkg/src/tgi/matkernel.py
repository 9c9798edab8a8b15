"""Dense complex matrix primitives backing the per-slice tensor algorithms.

Everything here operates on plain 2-D numpy arrays.  The non-classical
pieces are :func:`matrix_index` (rank stabilization of the power sequence)
and the generalized inverses built on it.  To keep the power sequence
well-scaled, matrices are normalized by their spectral norm up front and
the scaling is undone on the way out; rank decisions on the j-th power
additionally apply a noise floor that grows with j, so exactly-singular
powers are not mistaken for full-rank noise.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

_EPS = float(np.finfo(np.float64).eps)
# Accumulated matmul rounding in a unit-scaled power sequence stays a couple
# of orders below this floor; genuine singular values sit far above it.
_POWER_NOISE_FACTOR = 16.0
# Safety factor on the default rank cut: representation noise of exactly
# singular inputs reaches kappa(transform) * eps * sigma_max, a few orders
# above eps; data needing a tighter cut (condition beyond ~1e12) is outside
# what a float64 pseudo-inverse can resolve regardless.
_RANK_TOL_FACTOR = 64.0


@dataclass(frozen=True)
class MatrixIndexResult:
    """Index k of a square matrix plus the ranks of A^0 .. A^(k+1)."""

    k: int
    rank_sequence: tuple

    @property
    def stabilized_rank(self) -> int:
        return self.rank_sequence[self.k]


def resolve_rank_tol(shape, rank_tol: float | None) -> float:
    """Default relative rank tolerance: 64 * max(m, n) * machine epsilon."""
    if rank_tol is not None:
        if rank_tol <= 0:
            raise ValueError("rank tolerance must be positive")
        return float(rank_tol)
    return _RANK_TOL_FACTOR * max(shape) * _EPS


def _as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={A.ndim}")
    return A


def _as_square(A) -> np.ndarray:
    A = _as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def _svd(A: np.ndarray):
    try:
        return np.linalg.svd(A, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("SVD failed to converge") from exc


def _singular_values(A: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("SVD failed to converge") from exc


def matrix_rank(A, rank_tol: float | None = None) -> int:
    """Rank by counting singular values above rank_tol * sigma_max."""
    A = _as_matrix(A)
    s = _singular_values(A)
    if s.size == 0 or s[0] == 0:
        return 0
    tol = resolve_rank_tol(A.shape, rank_tol)
    return int(np.count_nonzero(s > tol * s[0]))


def pinv(A, rank_tol: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudo-inverse via SVD with relative truncation.

    Singular values at or below ``rank_tol * sigma_max`` are treated as
    zero; see :func:`resolve_rank_tol` for the default.
    """
    A = _as_matrix(A)
    u, s, vh = _svd(A)
    out_shape = (A.shape[1], A.shape[0])
    if s.size == 0 or s[0] == 0:
        return np.zeros(out_shape, dtype=np.complex128)
    tol = resolve_rank_tol(A.shape, rank_tol)
    inv = np.where(s > tol * s[0], 1.0 / np.where(s > 0, s, 1.0), 0.0)
    return vh.conj().T @ (inv[:, None] * u.conj().T)


def _pinv_fixed_rank(A: np.ndarray, rank: int) -> np.ndarray:
    """Pseudo-inverse keeping exactly the `rank` largest singular triplets."""
    if rank == 0:
        return np.zeros((A.shape[1], A.shape[0]), dtype=np.complex128)
    u, s, vh = _svd(A)
    inv = np.zeros_like(s)
    inv[:rank] = 1.0 / s[:rank]
    return vh.conj().T @ (inv[:, None] * u.conj().T)


def matrix_index(A, rank_tol: float | None = None) -> MatrixIndexResult:
    """Smallest k >= 0 with rank(A^k) = rank(A^(k+1)), plus the rank sequence.

    Powers are taken of the spectrally normalized matrix, so they can only
    shrink; the rank cut for the j-th power is
    ``max(rank_tol * sigma_max, 16 * n * eps * j)``, the second term being a
    floor above the rounding noise accumulated by j multiplications.
    """
    A = _as_square(A)
    n = A.shape[0]
    tol = resolve_rank_tol(A.shape, rank_tol)
    sigma = float(np.linalg.norm(A, 2)) if A.size else 0.0
    if sigma == 0.0:
        return MatrixIndexResult(k=1, rank_sequence=(n, 0, 0))
    B = A / sigma
    ranks = [n]
    P = np.eye(n, dtype=np.complex128)
    prev = n
    for j in range(1, n + 2):
        P = P @ B
        s = _singular_values(P)
        cut = max(tol * s[0], _POWER_NOISE_FACTOR * n * _EPS * j)
        r = int(np.count_nonzero(s > cut))
        ranks.append(r)
        if r == prev:
            return MatrixIndexResult(k=j - 1, rank_sequence=tuple(ranks))
        prev = r
    # rank(A^n) = rank(A^(n+1)) always holds; reaching here means the noise
    # floor was crossed without stabilizing, so report the last safe value.
    return MatrixIndexResult(k=n, rank_sequence=tuple(ranks))


def _drazin_scaled(B: np.ndarray, idx: MatrixIndexResult) -> np.ndarray:
    # Drazin inverse of a spectrally normalized matrix from its index data:
    # B^k pinv(B^(2k+1)) B^k with the pseudo-inverse cut at the stabilized rank.
    k = idx.k
    r = idx.stabilized_rank
    K = np.linalg.matrix_power(B, k)
    P = np.linalg.matrix_power(B, 2 * k + 1)
    return K @ _pinv_fixed_rank(P, r) @ K


def matrix_drazin(A, rank_tol: float | None = None,
                  index: MatrixIndexResult | None = None) -> np.ndarray:
    """Drazin inverse: the unique X with XAX = X, AX = XA, X A^(k+1) = A^k.

    Computed as ``A^k pinv(A^(2k+1)) A^k`` on the spectrally normalized
    matrix.  A precomputed :func:`matrix_index` result may be passed to skip
    recomputing the power ranks.
    """
    A = _as_square(A)
    sigma = float(np.linalg.norm(A, 2)) if A.size else 0.0
    if sigma == 0.0:
        return np.zeros_like(A)
    B = A / sigma
    idx = matrix_index(B, rank_tol) if index is None else index
    return _drazin_scaled(B, idx) / sigma


def matrix_core_ep(A, k: int | None = None, rank_tol: float | None = None,
                   index: MatrixIndexResult | None = None) -> np.ndarray:
    """Core-EP inverse: X with X A^(k+1) = A^k, A X^2 = X, (AX)^H = AX.

    Uses the representation ``A^D A^l pinv(A^l)`` with l = max(k, 1); any
    k at or above the matrix index yields the same result, and k = 0 inputs
    are promoted to l = 1 since A^0 degenerates the formula.
    """
    A = _as_square(A)
    sigma = float(np.linalg.norm(A, 2)) if A.size else 0.0
    if sigma == 0.0:
        return np.zeros_like(A)
    B = A / sigma
    idx = matrix_index(B, rank_tol) if index is None else index
    if k is None:
        k = idx.k
    elif k < idx.k:
        raise ValueError(f"k={k} is below the matrix index {idx.k}")
    l = max(k, 1)
    r = idx.rank_sequence[min(l, idx.k)]
    D = _drazin_scaled(B, idx)
    Bl = np.linalg.matrix_power(B, l)
    return (D @ Bl @ _pinv_fixed_rank(Bl, r)) / sigma


def eigvals(A) -> np.ndarray:
    """All eigenvalues with multiplicity, in no particular order."""
    A = _as_square(A)
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("eigenvalue iteration failed to converge") from exc


def lstsq(A, b, rank_tol: float | None = None):
    """Minimum-norm least-squares solution and the residual norm ||Ax - b||."""
    A = _as_matrix(A)
    b = np.asarray(b, dtype=np.complex128)
    tol = resolve_rank_tol(A.shape, rank_tol)
    try:
        x = np.linalg.lstsq(A, b, rcond=tol)[0]
    except np.linalg.LinAlgError as exc:
        raise NumericalError("least-squares solve failed") from exc
    residual = float(np.linalg.norm(A @ x - b))
    return x, residual
