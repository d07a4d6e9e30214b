#include "cmx/learn.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "cmx/laplacian.hpp"
#include "cmx/spectral.hpp"

namespace cmx {

namespace {

struct CrossEdgeView {
    int cell = -1;          // cell index
    Eigen::Index pos = 0;   // position in the cross-edge family
    int tail = -1;          // ell-side node cell index
    int head = -1;          // m-side node cell index
};

/// Cross edges of the pair with resolved endpoints (tail on ell, head on m —
/// the build guarantees this orientation).
std::vector<CrossEdgeView> cross_edge_views(const CellMultiComplex& X, LayerId ell, LayerId m) {
    std::vector<CrossEdgeView> out;
    const std::vector<int>& family = X.cross_family(ell, m, 0, 0);
    for (size_t i = 0; i < family.size(); ++i) {
        CrossEdgeView v;
        v.cell = family[i];
        v.pos = static_cast<Eigen::Index>(i);
        for (const BoundaryEntry& b : X.cell(family[i]).boundary) {
            if (b.sign < 0) {
                v.tail = b.cell;
            } else {
                v.head = b.cell;
            }
        }
        out.push_back(v);
    }
    return out;
}

struct IntraGraph {
    // adjacency: node cell index -> list of (neighbor node, edge cell, +1 when
    // traversed tail->head), in edge declaration order
    std::map<int, std::vector<std::tuple<int, int, int>>> adj;
};

IntraGraph intra_graph(const CellMultiComplex& X, LayerId layer) {
    IntraGraph g;
    for (int e : X.intra_family(layer, 1)) {
        int tail = -1, head = -1;
        for (const BoundaryEntry& b : X.cell(e).boundary) {
            if (b.sign < 0) {
                tail = b.cell;
            } else {
                head = b.cell;
            }
        }
        g.adj[tail].emplace_back(head, e, +1);
        g.adj[head].emplace_back(tail, e, -1);
    }
    return g;
}

/// Shortest path from `from` to `to` (breadth-first, deterministic neighbor
/// order); empty when none exists within max_len.  Each step reports the edge
/// id and +1/-1 for forward/backward traversal.
std::vector<std::pair<std::string, int>> shortest_path(const CellMultiComplex& X,
                                                       const IntraGraph& g, int from, int to,
                                                       int max_len) {
    if (from == to) return {};
    std::map<int, std::pair<int, std::pair<int, int>>> parent;  // node -> (prev, (edge, dir))
    std::deque<std::pair<int, int>> queue{{from, 0}};
    std::map<int, int> dist{{from, 0}};
    while (!queue.empty()) {
        auto [node, d] = queue.front();
        queue.pop_front();
        if (d >= max_len) continue;
        auto it = g.adj.find(node);
        if (it == g.adj.end()) continue;
        for (const auto& [next, edge, dir] : it->second) {
            if (dist.count(next)) continue;
            dist[next] = d + 1;
            parent[next] = {node, {edge, dir}};
            if (next == to) {
                std::vector<std::pair<std::string, int>> path;
                int cur = to;
                while (cur != from) {
                    auto& [prev, step] = parent[cur];
                    path.emplace_back(X.cell(step.first).id, step.second);
                    cur = prev;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.emplace_back(next, d + 1);
        }
    }
    return {};
}

LearnResult assemble(const std::vector<CandidateCell>& candidates, const Vec& alpha,
                     std::vector<int> selected, Eigen::Index n_cross_edges) {
    LearnResult r;
    r.candidates = candidates;
    r.alpha = alpha;
    std::sort(selected.begin(), selected.end());
    r.selected = std::move(selected);
    r.a.assign(candidates.size(), 0);
    for (int idx : r.selected) r.a[static_cast<size_t>(idx)] = 1;
    r.b_hat = Mat::Zero(n_cross_edges, static_cast<Eigen::Index>(r.selected.size()));
    for (size_t j = 0; j < r.selected.size(); ++j) {
        r.b_hat.col(static_cast<Eigen::Index>(j)) =
            candidates[static_cast<size_t>(r.selected[j])].column;
    }
    r.l_hat_upper = r.b_hat * r.b_hat.transpose();
    r.rank_deficient =
        numerical_rank(r.b_hat) < static_cast<int>(r.selected.size());
    return r;
}

}  // namespace

std::pair<double, Mat> curl_energy_ratio(const CellMultiComplex& X, LayerId ell, LayerId m,
                                         const Mat& signals, Perspective perspective) {
    CrossLaplacian lap = cross_laplacian(X, ell, m, 0, 0, perspective);
    if (signals.rows() != lap.lower.rows()) {
        throw Error(ErrorCode::index_mismatch,
                    "curl_energy_ratio: signals must live on the cross-edge space");
    }
    double total = signals.squaredNorm();
    if (total == 0.0) {
        throw Error(ErrorCode::zero_signal, "curl_energy_ratio: signal corpus is identically zero");
    }
    EigenDecomposition eig = eig_sym(lap.lower);
    int zero = kernel_dimension(eig);
    Mat u_d = eig.eigenvectors.rightCols(eig.eigenvectors.cols() - zero);
    Mat projected = signals - u_d * (u_d.transpose() * signals);
    return {projected.squaredNorm() / total, projected};
}

std::vector<CandidateCell> enumerate_candidates(const CellMultiComplex& X, LayerId ell, LayerId m,
                                                int p_max, Perspective perspective) {
    std::vector<CandidateCell> out;
    std::vector<CrossEdgeView> edges = cross_edge_views(X, ell, m);
    const bool apex_on_m = perspective == Perspective::from_ell;
    LayerId path_layer = apex_on_m ? ell : m;
    IntraGraph graph = intra_graph(X, path_layer);
    Eigen::Index n = static_cast<Eigen::Index>(edges.size());

    // hub -> incident cross edges, hubs visited in apex-layer node order
    std::map<int, std::vector<CrossEdgeView>> by_hub;
    for (const CrossEdgeView& e : edges) {
        by_hub[apex_on_m ? e.head : e.tail].push_back(e);
    }
    for (int hub_node : X.intra_family(apex_on_m ? m : ell, 0)) {
        auto it = by_hub.find(hub_node);
        if (it == by_hub.end()) continue;
        const std::vector<CrossEdgeView>& at_hub = it->second;
        for (size_t i = 0; i < at_hub.size(); ++i) {
            for (size_t j = i + 1; j < at_hub.size(); ++j) {
                const CrossEdgeView& ea = at_hub[i];
                const CrossEdgeView& eb = at_hub[j];
                int far_a = apex_on_m ? ea.tail : ea.head;
                int far_b = apex_on_m ? eb.tail : eb.head;
                if (far_a == far_b) continue;  // parallel cross-edges: no closing path
                // Cycle with the apex on m: far_a -> hub (edge_a, +1),
                // hub -> far_b (edge_b, -1), then the intra path far_b ->
                // far_a.  With the apex on ell the +1 traversal of edge_a
                // leaves the hub instead, so the same coefficients need the
                // closing path to run far_a -> far_b.
                std::vector<std::pair<std::string, int>> path =
                    apex_on_m ? shortest_path(X, graph, far_b, far_a, p_max)
                              : shortest_path(X, graph, far_a, far_b, p_max);
                if (path.empty()) continue;
                CandidateCell c;
                c.hub = X.cell(hub_node).id;
                c.edge_a = X.cell(ea.cell).id;
                c.edge_b = X.cell(eb.cell).id;
                c.pos_a = ea.pos;
                c.pos_b = eb.pos;
                c.intra_path = std::move(path);
                c.column = Vec::Zero(n);
                c.column(ea.pos) = 1.0;
                c.column(eb.pos) = -1.0;
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

Vec alpha_coefficients(const std::vector<CandidateCell>& candidates, const Mat& projected) {
    Vec alpha(static_cast<Eigen::Index>(candidates.size()));
    for (size_t k = 0; k < candidates.size(); ++k) {
        const Vec& b = candidates[k].column;
        if (b.size() != projected.rows()) {
            throw Error(ErrorCode::index_mismatch,
                        "alpha_coefficients: candidate columns and signals disagree");
        }
        alpha(static_cast<Eigen::Index>(k)) = (b.transpose() * projected).squaredNorm();
    }
    return alpha;
}

LearnResult select_cells(const std::vector<CandidateCell>& candidates, const Vec& alpha, int gamma,
                         Eigen::Index n_cross_edges) {
    if (gamma < 0 || static_cast<size_t>(gamma) > candidates.size()) {
        throw Error(ErrorCode::gamma_too_large,
                    "select_cells: gamma " + std::to_string(gamma) + " outside [0, " +
                        std::to_string(candidates.size()) + "]");
    }
    if (alpha.size() != static_cast<Eigen::Index>(candidates.size())) {
        throw Error(ErrorCode::index_mismatch, "select_cells: alpha and candidates disagree");
    }
    std::vector<int> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&alpha](int a, int b) { return alpha(a) < alpha(b); });
    order.resize(static_cast<size_t>(gamma));
    return assemble(candidates, alpha, std::move(order), n_cross_edges);
}

LearnResult select_cells_threshold(const std::vector<CandidateCell>& candidates, const Vec& alpha,
                                   double tau, Eigen::Index n_cross_edges) {
    if (alpha.size() != static_cast<Eigen::Index>(candidates.size())) {
        throw Error(ErrorCode::index_mismatch, "select_cells: alpha and candidates disagree");
    }
    std::vector<int> selected;
    for (Eigen::Index k = 0; k < alpha.size(); ++k) {
        if (alpha(k) <= tau) selected.push_back(static_cast<int>(k));
    }
    return assemble(candidates, alpha, std::move(selected), n_cross_edges);
}

LearnResult learn_cross_cells(const CellMultiComplex& X, LayerId ell, LayerId m, const Mat& signals,
                              const LearnOptions& opts) {
    CrossLaplacian lap = cross_laplacian(X, ell, m, 0, 0, opts.perspective);
    auto [eta, projected] = curl_energy_ratio(X, ell, m, signals, opts.perspective);
    LearnResult r;
    if (eta <= opts.eta_threshold) {
        // Negligible curl energy: report the complex as wedge-free.
        r = assemble({}, Vec::Zero(0), {}, lap.lower.rows());
        r.gated = true;
    } else {
        std::vector<CandidateCell> candidates =
            enumerate_candidates(X, ell, m, opts.p_max, opts.perspective);
        Vec alpha = alpha_coefficients(candidates, projected);
        r = opts.threshold_mode
                ? select_cells_threshold(candidates, alpha, opts.tau, lap.lower.rows())
                : select_cells(candidates, alpha, opts.gamma, lap.lower.rows());
    }
    r.eta = eta;
    r.l_hat_total = lap.lower + r.l_hat_upper;
    r.edge_index = lap.index;
    return r;
}

std::vector<std::pair<std::string, double>> cross_hub_intensity(const CellMultiComplex& X,
                                                                LayerId ell, LayerId m,
                                                                const Vec& x_h,
                                                                Perspective perspective) {
    std::vector<CrossEdgeView> edges = cross_edge_views(X, ell, m);
    if (x_h.size() != static_cast<Eigen::Index>(edges.size())) {
        throw Error(ErrorCode::index_mismatch,
                    "cross_hub_intensity: signal must live on the cross-edge space");
    }
    double peak = x_h.size() ? x_h.cwiseAbs().maxCoeff() : 0.0;
    if (peak == 0.0) {
        throw Error(ErrorCode::zero_harmonic, "cross_hub_intensity: harmonic signal is zero");
    }
    const bool apex_on_m = perspective == Perspective::from_ell;
    ApexSide side = apex_on_m ? ApexSide::on_m : ApexSide::on_ell;
    std::vector<std::pair<std::string, double>> out;
    for (const HubCones& hub : harmonic_cross_hubs(X, ell, m, side)) {
        double sum = 0.0;
        for (const CrossEdgeView& e : edges) {
            int apex = apex_on_m ? e.head : e.tail;
            if (X.cell(apex).id == hub.hub) sum += std::abs(x_h(e.pos));
        }
        out.emplace_back(hub.hub, sum / peak);
    }
    return out;
}

}  // namespace cmx
