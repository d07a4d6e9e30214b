#include "cmx/incidence.hpp"

#include <unordered_map>

namespace cmx {

namespace {

void require_pair(const CellMultiComplex& X, LayerId ell, LayerId m) {
    if (!X.has_layer(ell) || !X.has_layer(m))
        throw Error(ErrorCode::unknown_layer, "unknown layer in pair (" + std::to_string(ell) +
                                                  "," + std::to_string(m) + ")");
    if (ell >= m)
        throw Error(ErrorCode::invalid_order_pair,
                    "layer pair must satisfy ell < m (got " + std::to_string(ell) + "," +
                        std::to_string(m) + ")");
}

// The (k, n) family of a layer pair, with the conventions
//   (k, -1) -> intra k-cells of layer ell,   (-1, n) -> intra n-cells of m;
// anything below order -1 is the empty family.
std::vector<int> family_cells(const CellMultiComplex& X, LayerId ell, LayerId m, int k, int n) {
    if (k < -1 || n < -1) return {};
    if (k == -1 && n == -1) return {};
    if (n == -1) return X.intra_family(ell, k);
    if (k == -1) return X.intra_family(m, n);
    return X.cross_family(ell, m, k, n);
}

// Incidence of two cell families: entry (i, j) is the stored sign of row
// cell i inside the direct boundary of column cell j.
SignedIncidenceMatrix incidence_of(const CellMultiComplex& X, const std::vector<int>& row_cells,
                                   const std::vector<int>& col_cells) {
    SignedIncidenceMatrix out;
    out.row_ids = X.ids_of(row_cells);
    out.col_ids = X.ids_of(col_cells);
    out.entries = IMat::Zero(static_cast<int>(row_cells.size()),
                             static_cast<int>(col_cells.size()));
    std::unordered_map<int, int> row_pos;
    for (int i = 0; i < static_cast<int>(row_cells.size()); ++i) row_pos[row_cells[i]] = i;
    for (int j = 0; j < static_cast<int>(col_cells.size()); ++j) {
        for (const BoundaryEntry& be : X.cell(col_cells[j]).boundary) {
            auto it = row_pos.find(be.cell);
            if (it != row_pos.end()) out.entries(it->second, j) = be.sign;
        }
    }
    return out;
}

SignedIncidenceMatrix gather(const SignedIncidenceMatrix& src, const std::vector<int>& row_pos,
                             const std::vector<int>& col_pos) {
    SignedIncidenceMatrix out;
    out.entries = IMat::Zero(static_cast<int>(row_pos.size()), static_cast<int>(col_pos.size()));
    for (int i = 0; i < out.entries.rows(); ++i) {
        out.row_ids.push_back(src.row_ids[row_pos[i]]);
        for (int j = 0; j < out.entries.cols(); ++j)
            out.entries(i, j) = src.entries(row_pos[i], col_pos[j]);
    }
    for (int j = 0; j < out.entries.cols(); ++j) out.col_ids.push_back(src.col_ids[col_pos[j]]);
    return out;
}

bool same_matrix(const SignedIncidenceMatrix& a, const SignedIncidenceMatrix& b) {
    return a.row_ids == b.row_ids && a.col_ids == b.col_ids &&
           a.entries.rows() == b.entries.rows() && a.entries.cols() == b.entries.cols() &&
           a.entries == b.entries;
}

}  // namespace

IMat exact_product(const SignedIncidenceMatrix& a, const SignedIncidenceMatrix& b) {
    if (a.col_ids != b.row_ids)
        throw Error(ErrorCode::index_mismatch,
                    "incidence product: column index of the left factor does not match the row "
                    "index of the right factor");
    return a.entries * b.entries;
}

SignedIncidenceMatrix mono_b1(const CellMultiComplex& X) {
    return incidence_of(X, X.flat_nodes(), X.flat_edges());
}

SignedIncidenceMatrix mono_b2(const CellMultiComplex& X) {
    return incidence_of(X, X.flat_edges(), X.flat_two_cells());
}

SignedIncidenceMatrix cross_boundary_from_ell(const CellMultiComplex& X, LayerId ell, LayerId m,
                                              int k, int n) {
    require_pair(X, ell, m);
    if (k < -1 || n < -1)
        throw Error(ErrorCode::invalid_order_pair,
                    "cross boundary orders must be >= -1 (got k=" + std::to_string(k) +
                        ", n=" + std::to_string(n) + ")");
    auto cols = family_cells(X, ell, m, k, n);
    auto rows = family_cells(X, ell, m, k - 1, n);
    if (k <= 0 && n == -1) rows.clear();  // degenerate: no target family
    return incidence_of(X, rows, cols);
}

SignedIncidenceMatrix cross_boundary_from_m(const CellMultiComplex& X, LayerId ell, LayerId m,
                                            int k, int n) {
    require_pair(X, ell, m);
    if (k < -1 || n < -1)
        throw Error(ErrorCode::invalid_order_pair,
                    "cross boundary orders must be >= -1 (got k=" + std::to_string(k) +
                        ", n=" + std::to_string(n) + ")");
    auto cols = family_cells(X, ell, m, k, n);
    auto rows = family_cells(X, ell, m, k, n - 1);
    if (n <= 0 && k == -1) rows.clear();
    return incidence_of(X, rows, cols);
}

MonoBlocks extract_blocks(const CellMultiComplex& X, LayerId ell, LayerId m) {
    require_pair(X, ell, m);
    SignedIncidenceMatrix b1 = mono_b1(X);
    SignedIncidenceMatrix b2 = mono_b2(X);

    auto positions = [&](const std::vector<int>& cells) {
        std::vector<int> pos;
        pos.reserve(cells.size());
        for (int idx : cells) pos.push_back(X.flat_position(idx));
        return pos;
    };
    std::vector<int> nodes_ell = positions(X.layer_nodes(ell));
    std::vector<int> nodes_m = positions(X.layer_nodes(m));
    std::vector<int> edges_ell = positions(X.intra_family(ell, 1));
    std::vector<int> edges_m = positions(X.intra_family(m, 1));
    std::vector<int> edges_cross = positions(X.cross_cells_of_order(ell, m, 1));
    std::vector<int> cells_ell = positions(X.intra_family(ell, 2));
    std::vector<int> cells_m = positions(X.intra_family(m, 2));
    std::vector<int> cells_cross = positions(X.cross_cells_of_order(ell, m, 2));

    MonoBlocks blocks;
    blocks.b1_ell = gather(b1, nodes_ell, edges_ell);
    blocks.b1_cross_ell = gather(b1, nodes_ell, edges_cross);
    blocks.b1_cross_m = gather(b1, nodes_m, edges_cross);
    blocks.b1_m = gather(b1, nodes_m, edges_m);
    blocks.b2_ell = gather(b2, edges_ell, cells_ell);
    blocks.b2_ell_cross = gather(b2, edges_ell, cells_cross);
    blocks.b2_cross = gather(b2, edges_cross, cells_cross);
    blocks.b2_m_cross = gather(b2, edges_m, cells_cross);
    blocks.b2_m = gather(b2, edges_m, cells_m);

    // Every block with a direct cross-boundary construction must agree with
    // the slice of the flattened matrix.
    auto column_subset = [&](const SignedIncidenceMatrix& wide, int k, int n) {
        std::vector<int> keep;
        const auto& fam = X.cross_family(ell, m, k, n);
        std::unordered_map<std::string, int> pos;
        for (int j = 0; j < wide.cols(); ++j) pos[wide.col_ids[j]] = j;
        for (int idx : fam) keep.push_back(pos.at(X.cell(idx).id));
        std::vector<int> all_rows(wide.rows());
        for (int i = 0; i < wide.rows(); ++i) all_rows[i] = i;
        return gather(wide, all_rows, keep);
    };
    struct Check {
        SignedIncidenceMatrix sliced, direct;
        const char* what;
    };
    const Check checks[] = {
        {blocks.b1_ell, cross_boundary_from_ell(X, ell, m, 1, -1), "b1_ell"},
        {blocks.b1_m, cross_boundary_from_m(X, ell, m, -1, 1), "b1_m"},
        {blocks.b1_cross_m, cross_boundary_from_ell(X, ell, m, 0, 0), "b1_cross_m"},
        {blocks.b1_cross_ell, cross_boundary_from_m(X, ell, m, 0, 0), "b1_cross_ell"},
        {column_subset(blocks.b2_cross, 1, 0), cross_boundary_from_ell(X, ell, m, 1, 0),
         "b2_cross|(1,0)"},
        {column_subset(blocks.b2_cross, 0, 1), cross_boundary_from_m(X, ell, m, 0, 1),
         "b2_cross|(0,1)"},
        {column_subset(blocks.b2_ell_cross, 1, 0), cross_boundary_from_m(X, ell, m, 1, 0),
         "b2_ell_cross|(1,0)"},
        {column_subset(blocks.b2_m_cross, 0, 1), cross_boundary_from_ell(X, ell, m, 0, 1),
         "b2_m_cross|(0,1)"},
    };
    for (const Check& c : checks) {
        if (!same_matrix(c.sliced, c.direct))
            throw Error(ErrorCode::block_mismatch,
                        std::string("flattened slice disagrees with direct construction for ") +
                            c.what);
    }
    return blocks;
}

}  // namespace cmx
