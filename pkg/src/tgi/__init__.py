"""Tensor algebra under invertible 3-mode transforms.

Products, generalized inverses (Moore-Penrose, Drazin, core-EP, DMP, MPD,
CMP), multilinear-system solvers (direct, Jacobi, Gauss-Seidel, ridge
regularization), and Gaussian-blur color-image restoration, all built on
slice-wise dense linear algebra in the transform domain.
"""

from .core import (
    IndexProfile, InconsistentSystemError, NumericalError, ShapeError,
    SliceSpectrum, Tensor3, Transform, conj_transpose, from_transform_domain,
    identity_tensor, in_range_of_power, index_profile, is_diag_dominant,
    m_power, m_product, mat_inv_of, mat_of, mode3_product, multirank,
    spectral_radius, to_transform_domain, tubal_norm,
)
from .transforms import (
    dct_transform, dft_transform, identity_transform,
    random_invertible_transform,
)
from .matkernel import (
    MatrixIndexResult, eigvals, lstsq, matrix_core_ep, matrix_drazin,
    matrix_index, matrix_rank, pinv,
)
from .geninv import (
    COMPOSITE_KINDS, INVERSE_KINDS, ResidualSuite, composite_inverse,
    core_ep_inverse, drazin_inverse, mp_inverse, residual_suite,
)
from .solvers import (
    ITERATIVE_METHODS, SolverConfig, SolverReport, gauss_seidel_solve,
    general_solution_core_ep, general_solution_drazin,
    iteration_spectral_radius, jacobi_solve, neumann_sum, solve_composite,
    solve_drazin, tikhonov_solve,
)
from .imaging import (
    BlurModel, add_gaussian_noise, build_blur_tensor, deblur,
    image_array_from_tensor, psnr, tensor_from_image_array,
)
from .construct import random_index_tensor, random_tensor
from .io import (
    FormatError, load_tensor, load_transform_matrix, save_tensor,
    save_transform_matrix,
)

__version__ = "0.1.0"
