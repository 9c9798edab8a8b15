"""Multilinear-system solvers.

Direct solutions go through the generalized inverses (with range-membership
checks where a solution only exists on a subspace); iterative solutions run
slice-wise Jacobi or Gauss-Seidel splittings in the transform domain; ill-
posed systems get a ridge-regularized solve with a vanishing-penalty limit
equal to the Moore-Penrose solution.

Notes
-----
The splitting iterations run entirely in the transform domain: both the
matrix slices and the right-hand side are mapped by the transform before
iterating, and the assembled iterate is mapped back at the end.  This way
the fixed point of the iteration is exactly the solution of the tensor
system (an iteration against an untransformed right-hand side would
converge to something else).
"""

from dataclasses import dataclass, field

import numpy as np

from . import matkernel
from .core import (
    InconsistentSystemError, NumericalError, ShapeError, SliceSpectrum,
    Tensor3, Transform, identity_tensor, in_range_of_power, m_product,
    spectral_radius, to_transform_domain, from_transform_domain, tubal_norm,
)
from .geninv import composite_inverse, core_ep_inverse, drazin_inverse
from .parallel import map_slices

ITERATIVE_METHODS = ("jacobi", "gauss-seidel")


@dataclass(frozen=True)
class SolverConfig:
    """Stopping control for the splitting iterations.

    ``epsilon`` bounds the per-slice distance between successive iterates;
    ``max_iter`` caps the iteration count per slice.
    """

    epsilon: float = 1e-10
    max_iter: int = 1000
    method: str = "jacobi"

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.method not in ITERATIVE_METHODS:
            raise ValueError(
                f"unknown method {self.method!r}; expected one of {ITERATIVE_METHODS}")


@dataclass(frozen=True)
class SolverReport:
    """Per-slice iteration outcome of a splitting solve.

    ``per_slice_iters[i]`` counts iterate updates including the one whose
    change fell below epsilon; ``converged[i]`` is False when the cap was
    hit first.  ``final_residual`` is the tubal norm of A * X - B and
    ``iteration_spectral_radius`` the largest spectral radius among the
    slice iteration matrices (convergence is expected exactly when < 1).
    """

    per_slice_iters: tuple
    converged: tuple
    final_residual: float
    iteration_spectral_radius: float

    @property
    def all_converged(self) -> bool:
        return all(self.converged)

    def as_dict(self) -> dict:
        return {
            "per_slice_iters": list(self.per_slice_iters),
            "converged": list(self.converged),
            "final_residual": self.final_residual,
            "iteration_spectral_radius": self.iteration_spectral_radius,
        }


def _check_system(A: Tensor3, B: Tensor3, T: Transform) -> None:
    if A.m != A.n:
        raise ShapeError(f"coefficient tensor must be square, got ({A.m}, {A.n})")
    if A.p != T.p or B.p != T.p:
        raise ShapeError("slice counts of A, B, and the transform must agree")
    if B.m != A.m:
        raise ShapeError(f"row counts do not match: A has {A.m}, B has {B.m}")


def solve_drazin(A: Tensor3, B: Tensor3, T: Transform,
                 rank_tol: float | None = None, tol: float = 1e-8) -> Tensor3:
    """Drazin solution ``A^D * B`` of A * X = B.

    Solvable in this form exactly when B lies in the range of A^k (k the
    tubal index); a right-hand side outside that range raises
    :class:`InconsistentSystemError`.
    """
    _check_system(A, B, T)
    AD, profile = drazin_inverse(A, T, rank_tol)
    if not in_range_of_power(A, profile.tubal_index, B, T, tol):
        raise InconsistentSystemError("inconsistent system for Drazin solution")
    return m_product(AD, B, T)


def general_solution_drazin(A: Tensor3, B: Tensor3, Z: Tensor3, T: Transform,
                            rank_tol: float | None = None) -> Tensor3:
    """``A^D * B + (I - A^D * A) * Z`` for arbitrary Z.

    Every such tensor solves the normal-form system
    ``A^(k+1) * X = A^k * B``.
    """
    _check_system(A, B, T)
    if Z.shape != B.shape:
        raise ShapeError(f"Z of shape {Z.shape} does not match B {B.shape}")
    AD, _ = drazin_inverse(A, T, rank_tol)
    proj = identity_tensor(A.m, T) - m_product(AD, A, T)
    return m_product(AD, B, T) + m_product(proj, Z, T)


def general_solution_core_ep(A: Tensor3, B: Tensor3, Z: Tensor3, T: Transform,
                             rank_tol: float | None = None,
                             tol: float = 1e-8) -> Tensor3:
    """Core-EP variant of the general normal-form solution.

    Requires B in the range of ``A * A^CEP`` (checked); returns
    ``A^CEP * B + (I - A^D * A) * Z``.
    """
    _check_system(A, B, T)
    if Z.shape != B.shape:
        raise ShapeError(f"Z of shape {Z.shape} does not match B {B.shape}")
    Acep = core_ep_inverse(A, T, rank_tol)
    head = m_product(A, Acep, T)
    if not in_range_of_power(head, 1, B, T, tol):
        raise InconsistentSystemError(
            "right-hand side outside the admissible range for the core-EP solution")
    AD, _ = drazin_inverse(A, T, rank_tol)
    proj = identity_tensor(A.m, T) - m_product(AD, A, T)
    return m_product(Acep, B, T) + m_product(proj, Z, T)


def solve_composite(A: Tensor3, B: Tensor3, kind: str, T: Transform,
                    rank_tol: float | None = None, tol: float = 1e-8) -> Tensor3:
    """Solution via a composite inverse: X = A^{kind} * B, kind in dmp/mpd/cmp.

    Requires B in the range of A^k; each kind's solution is the unique one
    inside its characteristic subspace.
    """
    _check_system(A, B, T)
    _, profile = drazin_inverse(A, T, rank_tol)
    if not in_range_of_power(A, profile.tubal_index, B, T, tol):
        raise InconsistentSystemError(
            f"inconsistent system for the {kind} solution")
    X = composite_inverse(A, kind, T, rank_tol)
    return m_product(X, B, T)


def _splitting_parts(S: np.ndarray, method: str):
    # Returns (iteration matrix, apply_rhs) for one transform-domain slice.
    d = np.diagonal(S)
    if method == "jacobi":
        if np.any(d == 0):
            raise NumericalError("zero diagonal entry in a transform-domain slice")
        F = S - np.diag(d)
        Tit = -F / d[:, None]
        return Tit, lambda rhs: rhs / d[:, None]
    if np.any(d == 0):
        raise NumericalError(
            "singular lower-triangular part in a transform-domain slice")
    L = np.tril(S)
    U = np.triu(S, 1)
    try:
        Tit = -np.linalg.solve(L, U)
        return Tit, lambda rhs: np.linalg.solve(L, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            "singular lower-triangular part in a transform-domain slice") from exc


def iteration_spectral_radius(A: Tensor3, method: str, T: Transform) -> float:
    """Largest spectral radius among the slice iteration matrices."""
    if method not in ITERATIVE_METHODS:
        raise ValueError(
            f"unknown method {method!r}; expected one of {ITERATIVE_METHODS}")
    if A.m != A.n:
        raise ShapeError(f"splitting requires a square tensor, got ({A.m}, {A.n})")
    At = to_transform_domain(A, T)
    rho = 0.0
    for i in range(A.p):
        Tit, _ = _splitting_parts(At.slice(i), method)
        rho = max(rho, float(np.abs(matkernel.eigvals(Tit)).max()))
    return rho


def _splitting_solve(A: Tensor3, B: Tensor3, X0: Tensor3 | None,
                     cfg: SolverConfig, T: Transform, method: str,
                     threads: int = 1):
    _check_system(A, B, T)
    if X0 is None:
        X0 = Tensor3.zeros(A.n, B.n, B.p)
    if X0.shape != (A.n, B.n, B.p):
        raise ShapeError(
            f"initial guess of shape {X0.shape} does not match solution shape "
            f"({A.n}, {B.n}, {B.p})")
    At = to_transform_domain(A, T)
    Bt = to_transform_domain(B, T)
    X0t = to_transform_domain(X0, T)

    def work(i):
        Tit, apply_rhs = _splitting_parts(At.slice(i), method)
        c = apply_rhs(Bt.slice(i))
        rho = float(np.abs(matkernel.eigvals(Tit)).max())
        x = np.array(X0t.slice(i))
        iters = cfg.max_iter
        converged = False
        for s in range(1, cfg.max_iter + 1):
            x_next = Tit @ x + c
            if np.linalg.norm(x_next - x) <= cfg.epsilon:
                x = x_next
                iters = s
                converged = True
                break
            x = x_next
        return x, iters, converged, rho

    results = map_slices(work, A.p, threads)
    X = from_transform_domain(
        SliceSpectrum.from_slices([r[0] for r in results]), T)
    report = SolverReport(
        per_slice_iters=tuple(r[1] for r in results),
        converged=tuple(r[2] for r in results),
        final_residual=tubal_norm(m_product(A, X, T) - B, T),
        iteration_spectral_radius=max(r[3] for r in results))
    return X, report


def jacobi_solve(A: Tensor3, B: Tensor3, X0: Tensor3 | None,
                 cfg: SolverConfig, T: Transform, threads: int = 1):
    """Slice-wise Jacobi iteration; see the module notes for the domain choice.

    Splits each transform-domain slice into its diagonal and remainder and
    iterates ``x <- -D^-1 F x + D^-1 b`` until successive iterates differ by
    at most epsilon or the cap is reached.  Non-convergence is flagged in
    the report, not raised.
    """
    return _splitting_solve(A, B, X0, cfg, T, "jacobi", threads)


def gauss_seidel_solve(A: Tensor3, B: Tensor3, X0: Tensor3 | None,
                       cfg: SolverConfig, T: Transform, threads: int = 1):
    """Slice-wise Gauss-Seidel iteration (lower triangle swept implicitly).

    Same stopping rule and report as :func:`jacobi_solve` with the
    splitting ``x <- -L^-1 U x + L^-1 b`` (L lower triangular including the
    diagonal, U strictly upper).
    """
    return _splitting_solve(A, B, X0, cfg, T, "gauss-seidel", threads)


def neumann_sum(A: Tensor3, T: Transform, terms: int) -> Tensor3:
    """Partial geometric series ``sum_{s=0}^{terms} A^s``.

    Requires spectral radius strictly below one, in which case the series
    converges to the inverse of (I - A).
    """
    if A.m != A.n:
        raise ShapeError(f"series requires a square tensor, got ({A.m}, {A.n})")
    if terms < 0:
        raise ValueError("terms must be non-negative")
    rho = spectral_radius(A, T)
    if rho >= 1:
        raise ValueError(f"series diverges: spectral radius {rho:.6f} >= 1")
    At = to_transform_domain(A, T)
    out = []
    eye = np.eye(A.m, dtype=np.complex128)
    for i in range(A.p):
        S = At.slice(i)
        acc = eye.copy()
        P = eye
        for _ in range(terms):
            P = P @ S
            acc += P
        out.append(acc)
    return from_transform_domain(SliceSpectrum.from_slices(out), T)


def tikhonov_solve(A: Tensor3, B: Tensor3, lam: float, T: Transform,
                   threads: int = 1) -> Tensor3:
    """Ridge-regularized solve: per slice ``(S^H S + lam I) x = S^H b``.

    ``lam`` must be positive.  The solve goes through each slice's SVD
    with the filter factors ``sigma / (sigma^2 + lam)`` rather than the
    formed normal equations, whose condition number would be squared and
    would swamp the small-lam limit.  As lam -> 0 the solution approaches
    the minimum-norm least-squares (Moore-Penrose) solution.
    """
    if lam <= 0:
        raise ValueError("regularization parameter must be positive")
    if A.p != T.p or B.p != T.p:
        raise ShapeError("slice counts of A, B, and the transform must agree")
    if B.m != A.m:
        raise ShapeError(f"row counts do not match: A has {A.m}, B has {B.m}")
    At = to_transform_domain(A, T)
    Bt = to_transform_domain(B, T)

    def work(i):
        try:
            u, s, vh = np.linalg.svd(At.slice(i), full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise NumericalError("SVD failed in the regularized solve") from exc
        filt = s / (s * s + lam)
        return vh.conj().T @ (filt[:, None] * (u.conj().T @ Bt.slice(i)))

    slices = map_slices(work, A.p, threads)
    return from_transform_domain(SliceSpectrum.from_slices(slices), T)
