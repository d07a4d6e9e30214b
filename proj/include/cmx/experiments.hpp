#ifndef CMX_EXPERIMENTS_HPP
#define CMX_EXPERIMENTS_HPP

#include <cstdint>
#include <vector>

#include "cmx/complex.hpp"
#include "cmx/learn.hpp"
#include "cmx/signal.hpp"
#include "cmx/sparse.hpp"
#include "cmx/types.hpp"

namespace cmx {

/// Seeded random complex: per-layer Erdos-Renyi intra graphs, Bernoulli
/// cross-edges between consecutive layers, triangle fills inside layers, and
/// wedge fills drawn only from enumerated candidates, kept independent per
/// hub (acyclic pair structure) so the filled columns never become linearly
/// dependent.
struct RandomCmcConfig {
    std::vector<int> layer_nodes;
    double intra_edge_prob = 0.3;
    double cross_edge_prob = 0.2;
    double fill_prob = 0.5;        // acceptance rate over independent wedge candidates
    double intra_fill_prob = 0.3;  // acceptance rate over intra triangles
    int p_max = 2;
    std::uint64_t seed = 0;
    bool require_cross = true;  // raise DegenerateConfig when a pair gets no cross-edges
};

CellMultiComplex random_cmc(const RandomCmcConfig& cfg);

/// M columns of independent standard normal entries; column t is drawn from
/// the trial-t stream of the master seed, so any prefix of trials is stable
/// under changes of M.
Mat gen_gaussian_signals(Eigen::Index dim, int m_trials, std::uint64_t seed);

/// Component scales for the cross-edge signal model
/// s = B_low^T z0 + B_up z2 + H c  with independent normal draws.
struct HodgeModelSigma {
    double irr = 1.0, sol = 1.0, harm = 1.0;
};

struct CrossSignalBatch {
    Mat signals, irrotational, solenoidal, harmonic;  // columns are trials
};

/// Draws M model signals; harmonic_basis must hold orthonormal columns
/// spanning the kernel of the total cross-Laplacian.
CrossSignalBatch gen_hodge_signals(const CrossHodgeOperators& ops, const Mat& harmonic_basis,
                                   const HodgeModelSigma& sigma, int m_trials, std::uint64_t seed);

struct DenoisePoint {
    double snr_db = 0.0;
    double nmse_cross_irr = 0.0, nmse_cross_sol = 0.0;
    double nmse_mono_irr = 0.0, nmse_mono_sol = 0.0;
    double std_cross_irr = 0.0, std_cross_sol = 0.0;
    double std_mono_irr = 0.0, std_mono_sol = 0.0;
    int trials = 0;
};

struct DenoiseReport {
    LayerId ell = 0, m = 0;
    Perspective perspective = Perspective::from_ell;
    int trials = 0;
    std::uint64_t seed = 0;
    HodgeModelSigma sigma;
    std::vector<DenoisePoint> points;
    double runtime_seconds = 0.0;
    int threads = 1;
};

/// Additive-noise recovery comparison.  Per trial, one model signal and one
/// noise field over the whole flattened edge space are fixed; each SNR point
/// scales the same field, so each cross-estimator error is exactly linear in
/// the noise level.  The cross estimator observes the cross-edge restriction
/// of the noise; the mono-complex estimator observes the signal embedded in
/// the full edge space plus the full field, and is scored on the cross-edges.
DenoiseReport denoise_experiment(const CellMultiComplex& X, LayerId ell, LayerId m,
                                 Perspective perspective, int m_trials,
                                 const std::vector<double>& snr_db_grid, std::uint64_t seed,
                                 const HodgeModelSigma& sigma = {},
                                 ExecMode mode = ExecMode::serial, int threads = 1);

struct SparsityReport {
    LayerId ell = 0, m = 0;
    Perspective perspective = Perspective::from_ell;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> fractions;
    std::vector<SparsityEnvelopeRow> rows;
    double runtime_seconds = 0.0;
    int threads = 1;
};

/// Budget fractions used when the caller passes an empty grid: a log grid
/// over [1e-3, 1] plus near-1 ratios at scale 1 and at `scale`, the latter
/// covering the heavy-shrinkage region of a solver whose budget is rescaled
/// (pass sqrt(n_edges / n_cross) for the cross solver of sparsity_sweep).
std::vector<double> default_fraction_grid(double scale = 1.0);

/// Gaussian edge corpus swept through sparsity_sweep.
SparsityReport sparsity_experiment(const CellMultiComplex& X, LayerId ell, LayerId m,
                                   Perspective perspective, int m_trials,
                                   std::vector<double> fractions, std::uint64_t seed,
                                   ExecMode mode = ExecMode::serial, int threads = 1);

/// Noiseless corpus for recovery tests: columns lie in the kernel of the
/// node-level cross boundary and are orthogonal to every planted candidate
/// column, so planted circulation energies vanish identically while the
/// others stay generic.  Throws DegenerateConfig when a non-planted candidate
/// cannot be separated from the planted span.
Mat planted_learning_corpus(const CellMultiComplex& X, LayerId ell, LayerId m,
                            Perspective perspective, const std::vector<CandidateCell>& candidates,
                            const std::vector<int>& planted, int m_trials, std::uint64_t seed);

}  // namespace cmx

#endif  // CMX_EXPERIMENTS_HPP
