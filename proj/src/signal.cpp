#include "cmx/signal.hpp"

#include <utility>

#include "cmx/incidence.hpp"
#include "cmx/laplacian.hpp"

namespace cmx {

namespace {

void check_length(const Vec& v, Eigen::Index expected, const char* what) {
    if (v.size() != expected) {
        throw Error(ErrorCode::index_mismatch,
                    std::string(what) + ": signal has length " + std::to_string(v.size()) +
                        ", expected " + std::to_string(expected));
    }
}

HodgeSplit split_with(const Mat& b_low, const Mat& b_up, const Mat& pinv_gram_down,
                      const Mat& pinv_gram_up, const Vec& y) {
    HodgeSplit out;
    out.input = y;
    if (b_low.rows() > 0) {
        out.potential_down = pinv_gram_down * (b_low * y);
        out.irrotational = b_low.transpose() * out.potential_down;
    } else {
        out.potential_down = Vec::Zero(b_low.rows());
        out.irrotational = Vec::Zero(y.size());
    }
    if (b_up.cols() > 0) {
        out.potential_up = pinv_gram_up * (b_up.transpose() * y);
        out.solenoidal = b_up * out.potential_up;
    } else {
        out.potential_up = Vec::Zero(b_up.cols());
        out.solenoidal = Vec::Zero(y.size());
    }
    out.harmonic = y - out.irrotational - out.solenoidal;
    return out;
}

}  // namespace

MonoHodgeOperators mono_hodge_operators(const CellMultiComplex& X) {
    MonoHodgeOperators ops;
    ops.b1 = mono_b1(X).real();
    ops.b2 = mono_b2(X).real();
    ops.pinv_gram_down = pinv(Mat(ops.b1 * ops.b1.transpose()));
    ops.pinv_gram_up = pinv(Mat(ops.b2.transpose() * ops.b2));
    ops.node_ids = X.ids_of(X.flat_nodes());
    ops.edge_ids = X.ids_of(X.flat_edges());
    ops.cell_ids = X.ids_of(X.flat_two_cells());
    return ops;
}

CrossHodgeOperators cross_hodge_operators(const CellMultiComplex& X, LayerId ell, LayerId m,
                                          Perspective perspective) {
    CrossHodgeOperators ops;
    ops.perspective = perspective;
    SignedIncidenceMatrix low, up;
    if (perspective == Perspective::from_ell) {
        low = cross_boundary_from_ell(X, ell, m, 0, 0);
        up = cross_boundary_from_ell(X, ell, m, 1, 0);
    } else {
        low = cross_boundary_from_m(X, ell, m, 0, 0);
        up = cross_boundary_from_m(X, ell, m, 0, 1);
    }
    ops.b_low = low.real();
    ops.b_up = up.real();
    ops.pinv_gram_down = pinv(Mat(ops.b_low * ops.b_low.transpose()));
    ops.pinv_gram_up = pinv(Mat(ops.b_up.transpose() * ops.b_up));
    ops.node_ids = low.row_ids;
    ops.edge_ids = low.col_ids;
    ops.cell_ids = up.col_ids;
    return ops;
}

HodgeSplit hodge_split(const MonoHodgeOperators& ops, const Vec& edge_signal) {
    check_length(edge_signal, ops.b1.cols(), "hodge_split");
    HodgeSplit out = split_with(ops.b1, ops.b2, ops.pinv_gram_down, ops.pinv_gram_up, edge_signal);
    out.index = ops.edge_ids;
    out.down_index = ops.node_ids;
    out.up_index = ops.cell_ids;
    return out;
}

HodgeSplit hodge_split(const CrossHodgeOperators& ops, const Vec& cross_signal) {
    check_length(cross_signal, ops.b_low.cols(), "hodge_split");
    HodgeSplit out =
        split_with(ops.b_low, ops.b_up, ops.pinv_gram_down, ops.pinv_gram_up, cross_signal);
    out.index = ops.edge_ids;
    out.down_index = ops.node_ids;
    out.up_index = ops.cell_ids;
    return out;
}

HodgeSplit hodge_split_mono(const CellMultiComplex& X, const Vec& edge_signal) {
    return hodge_split(mono_hodge_operators(X), edge_signal);
}

HodgeSplit hodge_split_cross(const CellMultiComplex& X, LayerId ell, LayerId m,
                             Perspective perspective, const Vec& cross_signal) {
    return hodge_split(cross_hodge_operators(X, ell, m, perspective), cross_signal);
}

Vec cross_divergence(const CellMultiComplex& X, LayerId ell, LayerId m, Perspective perspective,
                     const Vec& cross_signal) {
    SignedIncidenceMatrix low = perspective == Perspective::from_ell
                                    ? cross_boundary_from_ell(X, ell, m, 0, 0)
                                    : cross_boundary_from_m(X, ell, m, 0, 0);
    check_length(cross_signal, low.cols(), "cross_divergence");
    return low.real() * cross_signal;
}

Vec cross_curl(const CellMultiComplex& X, LayerId ell, LayerId m, Perspective perspective,
               const Vec& cross_signal) {
    SignedIncidenceMatrix up = perspective == Perspective::from_ell
                                   ? cross_boundary_from_ell(X, ell, m, 1, 0)
                                   : cross_boundary_from_m(X, ell, m, 0, 1);
    check_length(cross_signal, up.rows(), "cross_curl");
    return up.real().transpose() * cross_signal;
}

Vec cft(const EigenDecomposition& l1_eig, const Vec& edge_signal) {
    check_length(edge_signal, l1_eig.eigenvectors.rows(), "cft");
    return l1_eig.eigenvectors.transpose() * edge_signal;
}

Vec icft(const EigenDecomposition& l1_eig, const Vec& coefficients) {
    check_length(coefficients, l1_eig.eigenvectors.cols(), "icft");
    return l1_eig.eigenvectors * coefficients;
}

Vec cmc_ft(const EigenDecomposition& cross_eig, const Vec& cross_signal) {
    check_length(cross_signal, cross_eig.eigenvectors.rows(), "cmc_ft");
    return cross_eig.eigenvectors.transpose() * cross_signal;
}

Vec icmc_ft(const EigenDecomposition& cross_eig, const Vec& coefficients) {
    check_length(coefficients, cross_eig.eigenvectors.cols(), "icmc_ft");
    return cross_eig.eigenvectors * coefficients;
}

HodgeSplit estimate_components(const CrossHodgeOperators& ops, const Vec& y) {
    return hodge_split(ops, y);
}

double nmse(const Vec& estimate, const Vec& truth) {
    if (estimate.size() != truth.size()) {
        throw Error(ErrorCode::index_mismatch, "nmse: estimate and reference lengths differ");
    }
    double ref = truth.norm();
    if (ref == 0.0) {
        throw Error(ErrorCode::zero_reference, "nmse: reference signal is identically zero");
    }
    return (truth - estimate).norm() / ref;
}

}  // namespace cmx
