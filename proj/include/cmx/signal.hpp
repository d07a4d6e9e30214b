#ifndef CMX_SIGNAL_HPP
#define CMX_SIGNAL_HPP

#include <string>
#include <vector>

#include "cmx/complex.hpp"
#include "cmx/spectral.hpp"
#include "cmx/types.hpp"

namespace cmx {

/// Signal attached to an ordered cell family.
struct CochainSignal {
    std::vector<std::string> index;
    Vec values;
    int order = 1;
};

/// Orthogonal three-way split of an edge-space signal, with the minimum-norm
/// potentials producing the first two parts:
///   input = irrotational + solenoidal + harmonic,
///   irrotational = B_low^T potential_down,  solenoidal = B_up potential_up.
struct HodgeSplit {
    Vec input, irrotational, solenoidal, harmonic;
    Vec potential_down;  // on the lower-adjacent family (nodes)
    Vec potential_up;    // on the upper-adjacent family (2-cells)
    std::vector<std::string> index, down_index, up_index;
};

/// Precomputed boundary matrices and Gram pseudoinverses for repeated splits
/// on the flattened monocomplex edge space.
struct MonoHodgeOperators {
    Mat b1, b2;                  // node x edge, edge x 2-cell
    Mat pinv_gram_down;          // (B1 B1^T)^+
    Mat pinv_gram_up;            // (B2^T B2)^+
    std::vector<std::string> edge_ids, node_ids, cell_ids;
};

MonoHodgeOperators mono_hodge_operators(const CellMultiComplex& X);

/// Same, for the cross-edge space of a layer pair under one perspective:
/// b_low is the node-level cross boundary (apex side given by perspective),
/// b_up the boundary of the filled wedge cells of that perspective.
struct CrossHodgeOperators {
    Perspective perspective = Perspective::from_ell;
    Mat b_low, b_up;
    Mat pinv_gram_down, pinv_gram_up;
    std::vector<std::string> edge_ids, node_ids, cell_ids;
};

CrossHodgeOperators cross_hodge_operators(const CellMultiComplex& X, LayerId ell, LayerId m,
                                          Perspective perspective);

HodgeSplit hodge_split(const MonoHodgeOperators& ops, const Vec& edge_signal);
HodgeSplit hodge_split(const CrossHodgeOperators& ops, const Vec& cross_signal);

/// Convenience wrappers building the operators on the fly.
HodgeSplit hodge_split_mono(const CellMultiComplex& X, const Vec& edge_signal);
HodgeSplit hodge_split_cross(const CellMultiComplex& X, LayerId ell, LayerId m,
                             Perspective perspective, const Vec& cross_signal);

/// Net flow collected at the perspective's potential nodes: B_low * signal.
Vec cross_divergence(const CellMultiComplex& X, LayerId ell, LayerId m, Perspective perspective,
                     const Vec& cross_signal);

/// Circulation around the perspective's filled wedge cells: B_up^T * signal.
Vec cross_curl(const CellMultiComplex& X, LayerId ell, LayerId m, Perspective perspective,
               const Vec& cross_signal);

/// Fourier pair on the flattened edge space: coefficients in the eigenvector
/// basis of L1.
Vec cft(const EigenDecomposition& l1_eig, const Vec& edge_signal);
Vec icft(const EigenDecomposition& l1_eig, const Vec& coefficients);

/// Fourier pair on a cross-Laplacian eigenbasis.
Vec cmc_ft(const EigenDecomposition& cross_eig, const Vec& cross_signal);
Vec icmc_ft(const EigenDecomposition& cross_eig, const Vec& coefficients);

/// Least-squares estimates of the three components of a noisy cross-edge
/// observation, in closed form:
///   potential_down = (B_low B_low^T)^+ B_low y,
///   potential_up   = (B_up^T B_up)^+ B_up^T y,
///   harmonic       = y - B_low^T potential_down - B_up potential_up.
HodgeSplit estimate_components(const CrossHodgeOperators& ops, const Vec& y);

/// Relative estimation error ||truth - estimate|| / ||truth||.
/// Throws ZeroReference when the reference vanishes.
double nmse(const Vec& estimate, const Vec& truth);

}  // namespace cmx

#endif  // CMX_SIGNAL_HPP
