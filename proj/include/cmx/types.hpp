#ifndef CMX_TYPES_HPP
#define CMX_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace cmx {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using IMat = Eigen::MatrixXi;

/// 1-based layer label; layer order is ascending numeric.
using LayerId = int;

/// Which layer's faces are removed when taking a cross boundary.
enum class Perspective { from_ell, from_m };

/// Serial reference path vs OpenMP path for the batch kernels.
enum class ExecMode { serial, parallel };

enum class ErrorCode {
    dangling_reference,
    order_violation,
    multi_layer_cell,
    orientation_error,
    invalid_boundary_cycle,
    duplicate_id,
    unknown_layer,
    invalid_order_pair,
    block_mismatch,
    not_symmetric,
    no_convergence,
    unsupported_order_pair,
    dependent_cells,
    index_mismatch,
    zero_reference,
    infeasible_epsilon,
    zero_signal,
    gamma_too_large,
    zero_harmonic,
    degenerate_config,
    parse_error,
    unknown_cell_id,
    io_error,
};

const char* error_code_name(ErrorCode code);

/// True for errors caused by bad inputs (complex files, signals, flags);
/// false for failures of a numerical procedure on valid inputs.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

namespace tol {
/// Relative threshold separating zero from nonzero eigenvalues / singular values.
inline constexpr double zero_tol = 1e-8;
/// Symmetry check tolerance for eig_sym inputs.
inline constexpr double symmetry_tol = 1e-12;
/// Coefficients with |value| below this fraction of the peak magnitude count
/// as zero when reporting a code's support.
inline constexpr double support_tol = 1e-6;
}  // namespace tol

}  // namespace cmx

#endif  // CMX_TYPES_HPP
