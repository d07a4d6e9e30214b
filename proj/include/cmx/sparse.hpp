#ifndef CMX_SPARSE_HPP
#define CMX_SPARSE_HPP

#include <vector>

#include "cmx/complex.hpp"
#include "cmx/types.hpp"

namespace cmx {

/// Minimum-l1 coding of an observation against a dictionary with a
/// residual-norm budget: min ||c||_1 subject to ||y - U c|| <= epsilon.
struct BasisPursuitProblem {
    Mat dictionary;  // columns are atoms
    Vec observation;
    double epsilon = 0.0;
};

struct SparseCode {
    Vec coefficients;
    std::vector<Eigen::Index> support;  // indices with |coef| > support_tol * max|coef|
    double residual_norm = 0.0;
    double objective = 0.0;   // l1 norm of the coefficients
    double threshold = 0.0;   // l1 penalty level that produced this code
};

/// Exact soft-threshold solution when the dictionary columns are orthonormal;
/// an iterative penalized solver otherwise. Throws InfeasibleEpsilon when no
/// coefficient vector can meet the budget.
SparseCode basis_pursuit(const BasisPursuitProblem& p);

/// Budget for the cross-edge problem derived from the edge-space budget:
/// epsilon * n_cross / n_edges.
double scaled_epsilon(double epsilon, int n_cross, int n_edges);

/// One row of a sparsity/accuracy table. NMSE values are averages over the
/// trials whose achieved support size fell in this bin; the two solvers give
/// separate bin populations.
struct SparsityCurveRow {
    int support = 0;
    double nmse_mono = 0.0;
    int n_mono = 0;
    double nmse_cross = 0.0;
    int n_cross = 0;
};

/// For each trial column: code the full edge signal on the L1 eigenbasis with
/// budget epsilon, code its cross-edge restriction on the cross-Laplacian
/// eigenbasis with the scaled budget, score both reconstructions on the
/// cross-edges only, and bin by achieved support size.
std::vector<SparsityCurveRow> sparsity_curve(const CellMultiComplex& X, LayerId ell, LayerId m,
                                             const Mat& edge_signals, double epsilon,
                                             Perspective perspective = Perspective::from_ell);

/// One row of the swept (envelope) table: per trial and support level k, the
/// best NMSE among grid budgets whose code used at most k atoms, averaged
/// over trials. Both columns are non-increasing in k by construction.
struct SparsityEnvelopeRow {
    int support = 0;
    double nmse_mono = 0.0;
    double nmse_cross = 0.0;
    int n_trials = 0;
};

std::vector<SparsityEnvelopeRow> sparsity_sweep(const CellMultiComplex& X, LayerId ell, LayerId m,
                                                const Mat& edge_signals,
                                                const std::vector<double>& epsilon_fractions,
                                                Perspective perspective = Perspective::from_ell,
                                                ExecMode mode = ExecMode::serial, int threads = 1);

}  // namespace cmx

#endif  // CMX_SPARSE_HPP
