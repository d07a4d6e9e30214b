#ifndef CMX_SPECTRAL_HPP
#define CMX_SPECTRAL_HPP

#include "cmx/types.hpp"

namespace cmx {

/// Full symmetric eigendecomposition, eigenvalues ascending.  Deterministic
/// for a fixed input: the solver is iterative but seed-free, and each
/// eigenvector is sign-normalized so that its first component of nontrivial
/// magnitude is positive.
struct EigenDecomposition {
    Vec eigenvalues;   // ascending
    Mat eigenvectors;  // columns aligned with eigenvalues, orthonormal
};

/// Decomposes a symmetric matrix.  Throws NotSymmetric when the input
/// deviates from its transpose by more than symmetry_tol (relative), and
/// NoConvergence if the underlying iteration fails.
EigenDecomposition eig_sym(const Mat& A);

/// Number of eigenvalues of magnitude at most zero_tol * max(|lambda|_max, 1).
int kernel_dimension(const EigenDecomposition& eig, double zero_tol = tol::zero_tol);

/// Orthonormal basis of the numerical kernel of a symmetric matrix: the
/// eigenvectors whose eigenvalues classify as zero under kernel_dimension.
Mat kernel_basis(const Mat& A, double zero_tol = tol::zero_tol);

/// Rank as the number of singular values above zero_tol * sigma_max,
/// computed from a singular value decomposition of the matrix itself.
int numerical_rank(const Mat& M, double zero_tol = tol::zero_tol);

/// Moore-Penrose pseudoinverse via a singular value decomposition; singular
/// values below zero_tol * sigma_max are treated as zero.
Mat pinv(const Mat& M, double zero_tol = tol::zero_tol);

}  // namespace cmx

#endif  // CMX_SPECTRAL_HPP
