#ifndef CMX_LEARN_HPP
#define CMX_LEARN_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmx/complex.hpp"
#include "cmx/types.hpp"

namespace cmx {

/// A fillable wedge: two cross-edges sharing an apex node, closed into a
/// cycle by a shortest intra-layer path between their far endpoints.
struct CandidateCell {
    std::string hub;                                    // apex node id
    std::string edge_a, edge_b;                         // cross-edge ids (+1 / -1 in the cycle)
    Eigen::Index pos_a = 0, pos_b = 0;                  // positions in the cross-edge family
    std::vector<std::pair<std::string, int>> intra_path;  // signed intra edges closing the cycle
    Vec column;                                         // signed incidence over cross-edges
};

struct LearnResult {
    std::vector<CandidateCell> candidates;
    std::vector<int> selected;        // candidate indices, ascending
    std::vector<std::uint8_t> a;      // selection indicator per candidate
    Vec alpha;                        // circulation energy per candidate
    double eta = 0.0;                 // curl-energy ratio of the corpus
    bool gated = false;               // eta fell under the gate; nothing learned
    Mat b_hat;                        // cross-edges x selected cells
    Mat l_hat_upper;                  // b_hat b_hat^T
    Mat l_hat_total;                  // lower cross-Laplacian + learned upper
    bool rank_deficient = false;      // selected columns are linearly dependent
    std::vector<std::string> edge_index;  // cross-edge ids (rows of b_hat)
};

/// Energy fraction of the corpus outside the span of the node-incidence
/// (gradient) eigenvectors, plus the projected corpus itself:
/// X_out = (I - U_d U_d^T) X with U_d the nonzero-eigenvalue eigenvectors of
/// the lower cross-Laplacian; eta = ||X_out||_F^2 / ||X||_F^2.
std::pair<double, Mat> curl_energy_ratio(const CellMultiComplex& X, LayerId ell, LayerId m,
                                         const Mat& signals,
                                         Perspective perspective = Perspective::from_ell);

/// All wedges whose far endpoints are joined by a shortest intra path of
/// length within p_max, in canonical (hub, edge pair) order. Wedges whose two
/// cross-edges share both endpoints are skipped (no closing path).
std::vector<CandidateCell> enumerate_candidates(const CellMultiComplex& X, LayerId ell, LayerId m,
                                                int p_max,
                                                Perspective perspective = Perspective::from_ell);

/// alpha_k = squared Frobenius norm of b_k^T X_projected.
Vec alpha_coefficients(const std::vector<CandidateCell>& candidates, const Mat& projected);

/// Keep the gamma candidates with the smallest circulation energy (ties by
/// candidate order). Throws GammaTooLarge when gamma exceeds the candidate
/// count.
LearnResult select_cells(const std::vector<CandidateCell>& candidates, const Vec& alpha, int gamma,
                         Eigen::Index n_cross_edges);

/// Keep every candidate with circulation energy at most tau.
LearnResult select_cells_threshold(const std::vector<CandidateCell>& candidates, const Vec& alpha,
                                   double tau, Eigen::Index n_cross_edges);

struct LearnOptions {
    Perspective perspective = Perspective::from_ell;
    double eta_threshold = 0.05;
    int p_max = 2;
    int gamma = 0;
    bool threshold_mode = false;  // when set, tau replaces gamma
    double tau = 0.0;
};

/// Full pipeline: gate on eta, enumerate, rank, select, and assemble the
/// learned operators.
LearnResult learn_cross_cells(const CellMultiComplex& X, LayerId ell, LayerId m, const Mat& signals,
                              const LearnOptions& opts);

/// Per cone-hub intensity of a harmonic cross-edge signal:
/// CH(hub) = sum of |x_h| over the hub's cross-edges, normalized by the peak
/// |x_h|. Throws ZeroHarmonic when the signal vanishes.
std::vector<std::pair<std::string, double>> cross_hub_intensity(
    const CellMultiComplex& X, LayerId ell, LayerId m, const Vec& x_h,
    Perspective perspective = Perspective::from_ell);

}  // namespace cmx

#endif  // CMX_LEARN_HPP
