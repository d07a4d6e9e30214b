#include "cmx/laplacian.hpp"

#include <algorithm>
#include <map>

#include "cmx/spectral.hpp"

namespace cmx {

MonoLaplacians hodge_laplacians(const CellMultiComplex& X) {
    SignedIncidenceMatrix b1 = mono_b1(X);
    SignedIncidenceMatrix b2 = mono_b2(X);
    MonoLaplacians out;
    out.node_ids = b1.row_ids;
    out.edge_ids = b1.col_ids;
    IMat l0 = b1.entries * b1.entries.transpose();
    IMat l1 = b1.entries.transpose() * b1.entries + b2.entries * b2.entries.transpose();
    out.l0 = l0.cast<double>();
    out.l1 = l1.cast<double>();
    return out;
}

CrossLaplacian cross_laplacian(const CellMultiComplex& X, LayerId ell, LayerId m, int k, int n,
                               Perspective perspective) {
    CrossLaplacian out;
    out.perspective = perspective;
    out.ell = ell;
    out.m = m;
    out.k = k;
    out.n = n;
    SignedIncidenceMatrix low, up;
    if (perspective == Perspective::from_ell) {
        low = cross_boundary_from_ell(X, ell, m, k, n);
        up = cross_boundary_from_ell(X, ell, m, k + 1, n);
    } else {
        low = cross_boundary_from_m(X, ell, m, k, n);
        up = cross_boundary_from_m(X, ell, m, k, n + 1);
    }
    out.index = low.col_ids;
    IMat lower = low.entries.transpose() * low.entries;
    IMat upper = up.entries * up.entries.transpose();
    if (lower.rows() != upper.rows())
        throw Error(ErrorCode::block_mismatch,
                    "lower and upper cross-Laplacian terms disagree in dimension");
    out.lower = lower.cast<double>();
    out.upper = upper.cast<double>();
    out.total = out.lower + out.upper;
    return out;
}

CrossBettiVector cross_betti(const CellMultiComplex& X, LayerId ell, LayerId m, int k, int n) {
    const bool supported =
        (k == 0 && n == -1) || (k == -1 && n == 0) || (k == 0 && n == 0);
    if (!supported)
        throw Error(ErrorCode::unsupported_order_pair,
                    "cross-homology is computed for order pairs (0,-1), (-1,0) and (0,0) only "
                    "(got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    CrossBettiVector beta;
    beta.beta_ell = kernel_dimension(
        eig_sym(cross_laplacian(X, ell, m, k, n, Perspective::from_ell).total));
    beta.beta_m = kernel_dimension(
        eig_sym(cross_laplacian(X, ell, m, k, n, Perspective::from_m).total));
    return beta;
}

ConeReport cone_report(const CellMultiComplex& X, LayerId ell, LayerId m, ApexSide side) {
    ConeReport report;
    report.side = side;

    const bool on_m = side == ApexSide::on_m;
    const LayerId apex_layer = on_m ? m : ell;
    const LayerId far_layer = on_m ? ell : m;
    const auto& cross_edges = X.cross_cells_of_order(ell, m, 1);
    report.n_cross_edges = static_cast<int>(cross_edges.size());

    // Cross edges grouped by their apex-layer endpoint, canonical order.
    std::map<int, std::vector<int>> at_hub;  // apex node cell -> cross edge cells
    auto endpoint_on = [&](const Cell& edge, LayerId layer) {
        for (const auto& be : edge.boundary)
            if (X.cell(be.cell).scope.ell == layer) return be.cell;
        return -1;
    };
    for (int e : cross_edges) at_hub[endpoint_on(X.cell(e), apex_layer)].push_back(e);
    report.touched_nodes = static_cast<int>(at_hub.size());

    // Filled wedge cells: (1,0) cells kill apex-on-m wedges, (0,1) cells the
    // apex-on-ell ones.  The count identity needs their incidence columns
    // (over cross edges) to be independent.
    const auto& fill_cells = on_m ? X.cross_family(ell, m, 1, 0) : X.cross_family(ell, m, 0, 1);
    report.fills = static_cast<int>(fill_cells.size());
    if (report.fills > 0) {
        SignedIncidenceMatrix upper = on_m ? cross_boundary_from_ell(X, ell, m, 1, 0)
                                           : cross_boundary_from_m(X, ell, m, 0, 1);
        if (numerical_rank(upper.real()) < report.fills)
            throw Error(ErrorCode::dependent_cells,
                        "filled wedge cells have dependent incidence columns; the cone count "
                        "identity does not apply");
    }
    report.count = report.n_cross_edges - report.touched_nodes - report.fills;

    // Hub of a filled cell: the apex-layer endpoint shared by its boundary
    // cross edges (every generated or shipped fill is a single-hub wedge).
    std::map<int, int> fills_at;
    for (int c : fill_cells) {
        int hub = -1;
        bool single = true;
        for (const auto& be : X.cell(c).boundary) {
            const Cell& face = X.cell(be.cell);
            if (face.scope.kind != ScopeKind::cross) continue;
            int node = endpoint_on(face, apex_layer);
            if (hub == -1) hub = node;
            else if (hub != node) single = false;
        }
        if (single && hub != -1) ++fills_at[hub];
    }

    auto far_components = X.intra_components(far_layer);
    for (const auto& [hub, edges] : at_hub) {
        if (edges.size() < 2) continue;
        HubCones hc;
        hc.hub = X.cell(hub).id;
        hc.cross_degree = static_cast<int>(edges.size());
        hc.fills = fills_at.count(hub) ? fills_at.at(hub) : 0;
        hc.cone_count = std::max(0, hc.cross_degree - 1 - hc.fills);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                Wedge w;
                w.edge_a = X.cell(edges[i]).id;
                w.edge_b = X.cell(edges[j]).id;
                int pa = endpoint_on(X.cell(edges[i]), far_layer);
                int pb = endpoint_on(X.cell(edges[j]), far_layer);
                w.endpoint_a = X.cell(pa).id;
                w.endpoint_b = X.cell(pb).id;
                w.open = far_components.at(pa) != far_components.at(pb);
                w.independent = (j == i + 1);
                if (w.independent && w.open && hc.cone_count > 0) hc.open = true;
                hc.wedges.push_back(w);
            }
        }
        report.hubs.push_back(std::move(hc));
    }
    return report;
}

std::vector<HubCones> harmonic_cross_hubs(const CellMultiComplex& X, LayerId ell, LayerId m,
                                          ApexSide side) {
    std::vector<HubCones> out;
    for (auto& hub : cone_report(X, ell, m, side).hubs)
        if (hub.cone_count > 0) out.push_back(hub);
    return out;
}

}  // namespace cmx
