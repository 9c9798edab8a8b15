"""Tensor generalized inverses under the transform product.

All inverses reduce to independent matrix computations on the
transform-domain slices: the Moore-Penrose inverse applies a truncated-SVD
pseudo-inverse per slice, the Drazin and core-EP inverses apply their
matrix counterparts with each slice's own stabilization index, and the
composite inverses (DMP, MPD, CMP) are products of the slice-level Drazin
and Moore-Penrose factors, reusing both factors rather than re-deriving
them from the block-matrix form.
"""

from dataclasses import asdict, dataclass

from . import matkernel
from .core import (
    IndexProfile, ShapeError, SliceSpectrum, Tensor3, Transform,
    conj_transpose, from_transform_domain, m_power, m_product,
    to_transform_domain, tubal_norm,
)
from .parallel import map_slices

INVERSE_KINDS = ("mp", "drazin", "core-ep", "dmp", "mpd", "cmp")
COMPOSITE_KINDS = ("dmp", "mpd", "cmp")


@dataclass(frozen=True)
class ResidualSuite:
    """Tubal norms of the six defining-equation error tensors.

    ``e1``  : ||A - A X A||         ``e2``  : ||X - X A X||
    ``e3``  : ||A X - (A X)^H||     ``e5``  : ||A X - X A||
    ``e1k`` : ||X A^(k+1) - A^k||   ``e7``  : ||A X^2 - X||

    The last four require a square tensor and are None otherwise.
    """

    e1: float
    e2: float
    e3: float
    e5: float | None
    e1k: float | None
    e7: float | None

    def as_dict(self) -> dict:
        return asdict(self)


def _square_check(A: Tensor3) -> None:
    if A.m != A.n:
        raise ShapeError(f"expected a square tensor, got ({A.m}, {A.n})")


def _slicewise(A: Tensor3, T: Transform, fn, threads: int = 1) -> Tensor3:
    At = to_transform_domain(A, T)
    slices = map_slices(lambda i: fn(At.slice(i)), A.p, threads)
    return from_transform_domain(SliceSpectrum.from_slices(slices), T)


def mp_inverse(A: Tensor3, T: Transform, rank_tol: float | None = None,
               threads: int = 1) -> Tensor3:
    """Moore-Penrose inverse: per-slice truncated-SVD pseudo-inverse."""
    return _slicewise(A, T, lambda S: matkernel.pinv(S, rank_tol), threads)


def drazin_inverse(A: Tensor3, T: Transform, rank_tol: float | None = None,
                   threads: int = 1):
    """Drazin inverse of a square tensor, plus its index profile.

    Each slice is inverted with its own stabilization index; the returned
    :class:`IndexProfile` carries the per-slice ranks/indices and the tubal
    index (their maximum).
    """
    _square_check(A)
    At = to_transform_domain(A, T)
    tol = matkernel.resolve_rank_tol((A.m, A.n), rank_tol)

    def work(i):
        S = At.slice(i)
        idx = matkernel.matrix_index(S, tol)
        return matkernel.matrix_drazin(S, tol, index=idx), idx

    results = map_slices(work, A.p, threads)
    X = from_transform_domain(
        SliceSpectrum.from_slices([Z for Z, _ in results]), T)
    profile = IndexProfile(
        ranks=tuple(idx.rank_sequence[1] for _, idx in results),
        indices=tuple(idx.k for _, idx in results),
        tubal_index=max(idx.k for _, idx in results),
        rank_tol=tol)
    return X, profile


def core_ep_inverse(A: Tensor3, T: Transform, rank_tol: float | None = None,
                    threads: int = 1) -> Tensor3:
    """Core-EP inverse of a square tensor, slice-wise with per-slice indices."""
    _square_check(A)
    return _slicewise(
        A, T, lambda S: matkernel.matrix_core_ep(S, rank_tol=rank_tol), threads)


def composite_inverse(A: Tensor3, kind: str, T: Transform,
                      rank_tol: float | None = None,
                      threads: int = 1) -> Tensor3:
    """DMP, MPD, or CMP inverse of a square tensor.

    dmp: ``A^D A A^+``;  mpd: ``A^+ A A^D``;  cmp: ``A^+ A A^D A A^+``.
    Computed slice-wise from one Drazin and one pseudo-inverse factor.
    """
    if kind not in COMPOSITE_KINDS:
        raise ValueError(f"unknown composite kind {kind!r}; expected one of {COMPOSITE_KINDS}")
    _square_check(A)
    tol = matkernel.resolve_rank_tol((A.m, A.n), rank_tol)

    def work(S):
        D = matkernel.matrix_drazin(S, tol)
        P = matkernel.pinv(S, tol)
        if kind == "dmp":
            return D @ S @ P
        if kind == "mpd":
            return P @ S @ D
        return P @ S @ D @ S @ P

    return _slicewise(A, T, work, threads)


def residual_suite(A: Tensor3, X: Tensor3, k: int, T: Transform) -> ResidualSuite:
    """Evaluate the six defining-equation residuals for a candidate inverse.

    For rectangular A only the first three are defined; the square-only
    entries come back as None.
    """
    if X.m != A.n or X.n != A.m or X.p != A.p:
        raise ShapeError(
            f"inverse candidate of shape {X.shape} does not match tensor {A.shape}")
    AX = m_product(A, X, T)
    XA = m_product(X, A, T)
    e1 = tubal_norm(A - m_product(AX, A, T), T)
    e2 = tubal_norm(X - m_product(XA, X, T), T)
    e3 = tubal_norm(AX - conj_transpose(AX, T), T)
    if A.m != A.n:
        return ResidualSuite(e1=e1, e2=e2, e3=e3, e5=None, e1k=None, e7=None)
    if k < 0:
        raise ValueError("power must be a non-negative integer")
    Ak = m_power(A, k, T)
    e5 = tubal_norm(AX - XA, T)
    e1k = tubal_norm(m_product(X, m_product(A, Ak, T), T) - Ak, T)
    e7 = tubal_norm(m_product(AX, X, T) - X, T)
    return ResidualSuite(e1=e1, e2=e2, e3=e3, e5=e5, e1k=e1k, e7=e7)
