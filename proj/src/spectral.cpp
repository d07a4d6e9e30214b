#include "cmx/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cmx {

namespace {

void fix_signs(Mat& vectors) {
    for (int j = 0; j < vectors.cols(); ++j) {
        double peak = vectors.col(j).cwiseAbs().maxCoeff();
        double cut = 1e-12 * std::max(peak, 1.0);
        for (int i = 0; i < vectors.rows(); ++i) {
            double v = vectors(i, j);
            if (std::abs(v) > cut) {
                if (v < 0) vectors.col(j) = -vectors.col(j);
                break;
            }
        }
    }
}

}  // namespace

EigenDecomposition eig_sym(const Mat& A) {
    if (A.rows() != A.cols())
        throw Error(ErrorCode::not_symmetric, "matrix is not square (" +
                                                  std::to_string(A.rows()) + "x" +
                                                  std::to_string(A.cols()) + ")");
    EigenDecomposition out;
    if (A.rows() == 0) {
        out.eigenvalues = Vec(0);
        out.eigenvectors = Mat(0, 0);
        return out;
    }
    double scale = std::max(A.cwiseAbs().maxCoeff(), 1.0);
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > tol::symmetry_tol * scale)
        throw Error(ErrorCode::not_symmetric, "matrix deviates from its transpose");
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (A + A.transpose()));
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::no_convergence, "symmetric eigensolver did not converge");
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    fix_signs(out.eigenvectors);
    return out;
}

int kernel_dimension(const EigenDecomposition& eig, double zero_tol) {
    if (eig.eigenvalues.size() == 0) return 0;
    double lam_max = eig.eigenvalues.cwiseAbs().maxCoeff();
    double cut = zero_tol * std::max(lam_max, 1.0);
    int dim = 0;
    for (int i = 0; i < eig.eigenvalues.size(); ++i)
        if (std::abs(eig.eigenvalues[i]) <= cut) ++dim;
    return dim;
}

Mat kernel_basis(const Mat& A, double zero_tol) {
    EigenDecomposition eig = eig_sym(A);
    if (eig.eigenvalues.size() == 0) return Mat(A.rows(), 0);
    double lam_max = eig.eigenvalues.cwiseAbs().maxCoeff();
    double cut = zero_tol * std::max(lam_max, 1.0);
    std::vector<int> keep;
    for (int i = 0; i < eig.eigenvalues.size(); ++i)
        if (std::abs(eig.eigenvalues[i]) <= cut) keep.push_back(i);
    Mat basis(A.rows(), static_cast<int>(keep.size()));
    for (int j = 0; j < basis.cols(); ++j) basis.col(j) = eig.eigenvectors.col(keep[j]);
    return basis;
}

// Rank and pseudoinverse both read the singular values of M itself rather
// than the eigenvalues of a Gram matrix: squaring halves the attainable
// precision (the Gram spectrum's noise floor sits at machine epsilon times
// sigma_max^2, which a 1e-8 relative cut on sigma cannot separate), while
// SVD singular values carry absolute error on the order of machine epsilon
// times sigma_max.

int numerical_rank(const Mat& M, double zero_tol) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(M);
    const Vec& s = svd.singularValues();
    double sigma_max = s.size() > 0 ? s(0) : 0.0;
    if (sigma_max == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > zero_tol * sigma_max) ++rank;
    return rank;
}

Mat pinv(const Mat& M, double zero_tol) {
    if (M.rows() == 0 || M.cols() == 0) return Mat(M.cols(), M.rows());
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vec& s = svd.singularValues();
    double sigma_max = s.size() > 0 ? s(0) : 0.0;
    if (sigma_max == 0.0) return Mat::Zero(M.cols(), M.rows());
    Vec inv = Vec::Zero(s.size());
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > zero_tol * sigma_max) inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace cmx
