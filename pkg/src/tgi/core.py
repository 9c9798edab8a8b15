"""Third-order complex tensors under an invertible 3-mode transform.

The central objects are :class:`Tensor3` (a dense complex m x n x p tensor)
and :class:`Transform` (an invertible p x p matrix M with cached inverse).
Multiplying along the third mode by M carries a tensor into its transform
("tilde") domain, where the tensor-tensor product reduces to independent
matrix products on the p frontal slices.  Everything in this module is a
pure function of immutable inputs.
"""

from dataclasses import dataclass

import numpy as np

from . import matkernel
from .errors import InconsistentSystemError, NumericalError, ShapeError

__all__ = [
    "Tensor3", "Transform", "SliceSpectrum", "IndexProfile",
    "ShapeError", "NumericalError", "InconsistentSystemError",
    "mode3_product", "to_transform_domain", "from_transform_domain",
    "mat_of", "mat_inv_of", "m_product", "identity_tensor", "conj_transpose",
    "m_power", "tubal_norm", "multirank", "index_profile", "spectral_radius",
    "is_diag_dominant", "in_range_of_power",
]


class Tensor3:
    """Dense complex tensor of shape (m, n, p) with frontal-slice access.

    Entries are stored as a read-only complex128 array ``data`` of shape
    ``(m, n, p)``; ``data[:, :, i]`` is the i-th frontal slice.  Serialized
    order (see :mod:`tgi.io`) is slice-major, row-major within each slice.
    """

    __slots__ = ("data",)

    def __init__(self, data, copy: bool = True):
        arr = (np.array(data, dtype=np.complex128) if copy
               else np.asarray(data, dtype=np.complex128))
        if arr.ndim != 3:
            raise ShapeError(f"expected a 3-way array, got ndim={arr.ndim}")
        if min(arr.shape) < 1:
            raise ShapeError(f"all dimensions must be positive, got {arr.shape}")
        if arr.flags.writeable:
            arr.setflags(write=False)
        self.data = arr

    @classmethod
    def from_slices(cls, slices) -> "Tensor3":
        """Stack an iterable of equal-shape frontal slices along the third mode."""
        mats = [np.asarray(s, dtype=np.complex128) for s in slices]
        return cls(np.stack(mats, axis=2), copy=False)

    @classmethod
    def zeros(cls, m: int, n: int, p: int) -> "Tensor3":
        return cls(np.zeros((m, n, p), dtype=np.complex128), copy=False)

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def p(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self) -> tuple:
        return self.data.shape

    def slice(self, i: int) -> np.ndarray:
        """Frontal slice ``data[:, :, i]`` (read-only view)."""
        return self.data[:, :, i]

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.abs(self.data.imag).max() <= tol)

    def __add__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return Tensor3(self.data + other.data, copy=False)

    def __sub__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return Tensor3(self.data - other.data, copy=False)

    def __neg__(self):
        return Tensor3(-self.data, copy=False)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, complex)):
            return Tensor3(self.data * scalar, copy=False)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"Tensor3(m={self.m}, n={self.n}, p={self.p})"


class Transform:
    """Invertible p x p complex matrix defining the tensor product.

    The inverse is computed once at construction and certified by the
    residual test ``||M @ Minv - I||_2 <= inv_tol * ||M||_2``.
    """

    __slots__ = ("p", "M", "Minv", "inv_tol")

    def __init__(self, M, inv_tol: float = 1e-8):
        M = np.array(M, dtype=np.complex128)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ShapeError(f"transform matrix must be square, got {M.shape}")
        try:
            Minv = np.linalg.inv(M)
        except np.linalg.LinAlgError as exc:
            raise NumericalError("transform matrix is singular") from exc
        p = M.shape[0]
        residual = np.linalg.norm(M @ Minv - np.eye(p), 2)
        scale = np.linalg.norm(M, 2)
        if residual > inv_tol * scale:
            raise NumericalError(
                f"inverse certificate failed: residual {residual:.3e} "
                f"exceeds {inv_tol:.1e} * ||M||")
        M.setflags(write=False)
        Minv.setflags(write=False)
        self.p = p
        self.M = M
        self.Minv = Minv
        self.inv_tol = inv_tol

    def __repr__(self):
        return f"Transform(p={self.p})"


class SliceSpectrum:
    """A tensor carried into the transform domain, held as p frontal slices."""

    __slots__ = ("data",)

    def __init__(self, data, copy: bool = True):
        arr = (np.array(data, dtype=np.complex128) if copy
               else np.asarray(data, dtype=np.complex128))
        if arr.ndim != 3:
            raise ShapeError(f"expected a 3-way array, got ndim={arr.ndim}")
        if arr.flags.writeable:
            arr.setflags(write=False)
        self.data = arr

    @classmethod
    def from_slices(cls, slices) -> "SliceSpectrum":
        mats = [np.asarray(s, dtype=np.complex128) for s in slices]
        return cls(np.stack(mats, axis=2), copy=False)

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def p(self) -> int:
        return self.data.shape[2]

    def slice(self, i: int) -> np.ndarray:
        return self.data[:, :, i]

    @property
    def slices(self) -> list:
        return [self.data[:, :, i] for i in range(self.p)]

    def __repr__(self):
        return f"SliceSpectrum(m={self.m}, n={self.n}, p={self.p})"


@dataclass(frozen=True)
class IndexProfile:
    """Per-slice ranks and indices of a square tensor in the transform domain.

    ``indices[i]`` is the smallest k >= 0 at which the rank of the i-th
    slice's powers stabilizes; invertible slices report the raw value 0.
    ``tubal_index`` is the maximum over slices.
    """

    ranks: tuple
    indices: tuple
    tubal_index: int
    rank_tol: float


def _mode3_data(data: np.ndarray, B: np.ndarray) -> np.ndarray:
    # result[i, j, k] = sum_s data[i, j, s] * B[k, s]
    return np.tensordot(data, B, axes=([2], [1]))


def _check_transform(A: Tensor3, T: Transform) -> None:
    if A.p != T.p:
        raise ShapeError(f"tensor has {A.p} slices but transform has p={T.p}")


def _batched_matmul(At: np.ndarray, Bt: np.ndarray) -> np.ndarray:
    # (m, n, p) x (n, k, p) -> (m, k, p), slice-wise
    C = np.matmul(np.moveaxis(At, 2, 0), np.moveaxis(Bt, 2, 0))
    return np.moveaxis(C, 0, 2)


def mode3_product(A: Tensor3, B) -> Tensor3:
    """Multiply a tensor along the third mode by a square matrix.

    The result C satisfies ``C[i, j, k] = sum_s A[i, j, s] * B[k, s]``.
    """
    B = np.asarray(B, dtype=np.complex128)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {B.shape}")
    if B.shape[1] != A.p:
        raise ShapeError(
            f"tensor has {A.p} slices but matrix has {B.shape[1]} columns")
    return Tensor3(_mode3_data(A.data, B), copy=False)


def to_transform_domain(A: Tensor3, T: Transform) -> SliceSpectrum:
    """Carry A into the transform domain determined by T."""
    _check_transform(A, T)
    return SliceSpectrum(_mode3_data(A.data, T.M), copy=False)


def from_transform_domain(S: SliceSpectrum, T: Transform) -> Tensor3:
    """Invert :func:`to_transform_domain`."""
    if S.p != T.p:
        raise ShapeError(f"spectrum has {S.p} slices but transform has p={T.p}")
    return Tensor3(_mode3_data(S.data, T.Minv), copy=False)


def mat_of(A: Tensor3, T: Transform) -> np.ndarray:
    """Pack the transform-domain slices of A into an mp x np block-diagonal matrix."""
    _check_transform(A, T)
    At = _mode3_data(A.data, T.M)
    m, n, p = At.shape
    out = np.zeros((m * p, n * p), dtype=np.complex128)
    for i in range(p):
        out[i * m:(i + 1) * m, i * n:(i + 1) * n] = At[:, :, i]
    return out


def mat_inv_of(Amat, m: int, n: int, T: Transform) -> Tensor3:
    """Rebuild a tensor from an mp x np block matrix of transform-domain slices.

    Only the p diagonal m x n blocks are read; anything off the block
    diagonal is ignored.
    """
    Amat = np.asarray(Amat, dtype=np.complex128)
    if Amat.ndim != 2:
        raise ShapeError(f"expected a matrix, got ndim={Amat.ndim}")
    if Amat.shape[0] % m != 0 or Amat.shape[1] % n != 0:
        raise ShapeError(
            f"matrix shape {Amat.shape} is not divisible by block shape ({m}, {n})")
    p = Amat.shape[0] // m
    if Amat.shape[1] // n != p or p != T.p:
        raise ShapeError(
            f"matrix shape {Amat.shape} implies a slice count incompatible with p={T.p}")
    At = np.stack(
        [Amat[i * m:(i + 1) * m, i * n:(i + 1) * n] for i in range(p)], axis=2)
    return Tensor3(_mode3_data(At, T.Minv), copy=False)


def m_product(A: Tensor3, B: Tensor3, T: Transform) -> Tensor3:
    """Tensor-tensor product: slice-wise matrix products in the transform domain."""
    _check_transform(A, T)
    _check_transform(B, T)
    if A.n != B.m:
        raise ShapeError(
            f"inner dimensions do not match: ({A.m}, {A.n}) x ({B.m}, {B.n})")
    At = _mode3_data(A.data, T.M)
    Bt = _mode3_data(B.data, T.M)
    Ct = _batched_matmul(At, Bt)
    return Tensor3(_mode3_data(Ct, T.Minv), copy=False)


def identity_tensor(m: int, T: Transform) -> Tensor3:
    """The two-sided unit of the product: every transform-domain slice is I_m."""
    if m < 1:
        raise ShapeError("identity size must be positive")
    It = np.broadcast_to(np.eye(m, dtype=np.complex128)[:, :, None], (m, m, T.p))
    return Tensor3(_mode3_data(It, T.Minv), copy=False)


def conj_transpose(A: Tensor3, T: Transform) -> Tensor3:
    """Conjugate transpose: each transform-domain slice is conjugate-transposed."""
    _check_transform(A, T)
    At = _mode3_data(A.data, T.M)
    Ht = np.conj(np.transpose(At, (1, 0, 2)))
    return Tensor3(_mode3_data(Ht, T.Minv), copy=False)


def m_power(A: Tensor3, s: int, T: Transform) -> Tensor3:
    """s-th product power of a square tensor (s = 0 gives the identity tensor)."""
    if A.m != A.n:
        raise ShapeError(f"power requires a square tensor, got ({A.m}, {A.n})")
    if s < 0:
        raise ValueError("power must be a non-negative integer")
    _check_transform(A, T)
    if s == 0:
        return identity_tensor(A.m, T)
    At = _mode3_data(A.data, T.M)
    Pt = np.stack(
        [np.linalg.matrix_power(At[:, :, i], s) for i in range(A.p)], axis=2)
    return Tensor3(_mode3_data(Pt, T.Minv), copy=False)


def tubal_norm(A: Tensor3, T: Transform) -> float:
    """Max over slices of the spectral norm in the transform domain."""
    _check_transform(A, T)
    At = _mode3_data(A.data, T.M)
    return float(max(np.linalg.norm(At[:, :, i], 2) for i in range(A.p)))


def multirank(A: Tensor3, T: Transform, rank_tol: float | None = None) -> tuple:
    """Per-slice ranks of the tensor in the transform domain."""
    _check_transform(A, T)
    At = _mode3_data(A.data, T.M)
    tol = matkernel.resolve_rank_tol((A.m, A.n), rank_tol)
    return tuple(matkernel.matrix_rank(At[:, :, i], tol) for i in range(A.p))


def index_profile(A: Tensor3, T: Transform, rank_tol: float | None = None) -> IndexProfile:
    """Per-slice ranks and rank-stabilization indices, plus the tubal index.

    Requires a square tensor; the raw per-slice index is 0 for invertible
    slices, so an invertible tensor reports tubal index 0.
    """
    if A.m != A.n:
        raise ShapeError(f"index requires a square tensor, got ({A.m}, {A.n})")
    _check_transform(A, T)
    tol = matkernel.resolve_rank_tol((A.m, A.n), rank_tol)
    At = _mode3_data(A.data, T.M)
    ranks = []
    indices = []
    for i in range(A.p):
        res = matkernel.matrix_index(At[:, :, i], tol)
        ranks.append(res.rank_sequence[1])
        indices.append(res.k)
    return IndexProfile(
        ranks=tuple(ranks), indices=tuple(indices),
        tubal_index=max(indices), rank_tol=tol)


def spectral_radius(A: Tensor3, T: Transform) -> float:
    """Max over slices of the eigenvalue spectral radius in the transform domain."""
    if A.m != A.n:
        raise ShapeError(f"spectral radius requires a square tensor, got ({A.m}, {A.n})")
    _check_transform(A, T)
    At = _mode3_data(A.data, T.M)
    return float(max(np.abs(matkernel.eigvals(At[:, :, i])).max()
                     for i in range(A.p)))


def is_diag_dominant(A: Tensor3, T: Transform) -> bool:
    """True iff every transform-domain slice is strictly diagonally dominant row-wise."""
    if A.m != A.n:
        raise ShapeError(f"diagonal dominance requires a square tensor, got ({A.m}, {A.n})")
    _check_transform(A, T)
    At = _mode3_data(A.data, T.M)
    for i in range(A.p):
        S = np.abs(At[:, :, i])
        d = np.diag(S)
        if not np.all(d > S.sum(axis=1) - d):
            return False
    return True


def in_range_of_power(A: Tensor3, k: int, B: Tensor3, T: Transform,
                      tol: float = 1e-8) -> bool:
    """Whether B lies in the range of the k-th power of A, slice by slice.

    Decided by per-slice least squares: each transform-domain slice of B
    must be reproduced by the corresponding slice power within
    ``tol * ||B_slice||``.  k = 0 is the full space, hence always True.
    """
    if A.m != A.n:
        raise ShapeError(f"range test requires a square tensor, got ({A.m}, {A.n})")
    if k < 0:
        raise ValueError("power must be a non-negative integer")
    _check_transform(A, T)
    _check_transform(B, T)
    if B.m != A.m:
        raise ShapeError(f"row counts do not match: {A.m} vs {B.m}")
    if k == 0:
        return True
    At = _mode3_data(A.data, T.M)
    Bt = _mode3_data(B.data, T.M)
    for i in range(A.p):
        S = At[:, :, i]
        scale = np.linalg.norm(S)
        if scale > 0:
            S = S / scale
        P = np.linalg.matrix_power(S, k)
        b = Bt[:, :, i]
        bnorm = np.linalg.norm(b)
        _, residual = matkernel.lstsq(P, b)
        if residual > tol * bnorm:
            return False
    return True
