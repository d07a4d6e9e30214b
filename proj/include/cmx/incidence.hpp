#ifndef CMX_INCIDENCE_HPP
#define CMX_INCIDENCE_HPP

#include <string>
#include <vector>

#include "cmx/complex.hpp"
#include "cmx/types.hpp"

namespace cmx {

/// Signed incidence matrix with its row/column cell ids carried along.
/// Entries are exact integers in {-1, 0, +1}; all products of these matrices
/// are computed in integer arithmetic.
struct SignedIncidenceMatrix {
    std::vector<std::string> row_ids;
    std::vector<std::string> col_ids;
    IMat entries;  // row_ids.size() x col_ids.size()

    int rows() const { return static_cast<int>(row_ids.size()); }
    int cols() const { return static_cast<int>(col_ids.size()); }
    Mat real() const { return entries.cast<double>(); }
    bool is_zero() const { return entries.size() == 0 || (entries.array() == 0).all(); }
};

/// Exact integer product; throws IndexMismatch if a.col_ids != b.row_ids.
IMat exact_product(const SignedIncidenceMatrix& a, const SignedIncidenceMatrix& b);

/// Node-edge incidence of the flattened monocomplex.  Rows follow the node
/// blocks (layer by layer), columns the edge blocks
/// E_1, E_{1,2}, ..., E_{1,L}, E_2, E_{2,3}, ...; each column holds -1 at the
/// tail and +1 at the head.
SignedIncidenceMatrix mono_b1(const CellMultiComplex& X);

/// Edge/2-cell incidence of the flattened monocomplex, same edge ordering as
/// mono_b1 rows; 2-cell blocks P_1, P_{1,2}, ..., P_L.
SignedIncidenceMatrix mono_b2(const CellMultiComplex& X);

/// Cross boundary taken from the ell side: columns are the (k, n) cross cells
/// of the pair, rows the (k-1, n) family — cross cells for k >= 1, the
/// intra-layer n-cells of layer m for k == 0.  Degenerate order pairs
/// (k == -1, or (k, n) == (0, -1)) give the zero-shaped matrix.
SignedIncidenceMatrix cross_boundary_from_ell(const CellMultiComplex& X, LayerId ell,
                                              LayerId m, int k, int n);

/// Cross boundary taken from the m side: rows are the (k, n-1) family —
/// cross cells for n >= 1, the intra-layer k-cells of layer ell for n == 0.
/// Degenerate order pairs (n == -1, or (k, n) == (-1, 0)) give the
/// zero-shaped matrix.
SignedIncidenceMatrix cross_boundary_from_m(const CellMultiComplex& X, LayerId ell,
                                            LayerId m, int k, int n);

/// Named sub-blocks of mono_b1/mono_b2 for one layer pair, obtained by
/// slicing the flattened matrices.
struct MonoBlocks {
    SignedIncidenceMatrix b1_ell;         // ell-nodes x ell-edges
    SignedIncidenceMatrix b1_cross_ell;   // ell-nodes x cross-edges
    SignedIncidenceMatrix b1_cross_m;     // m-nodes  x cross-edges
    SignedIncidenceMatrix b1_m;           // m-nodes  x m-edges
    SignedIncidenceMatrix b2_ell;         // ell-edges x ell 2-cells
    SignedIncidenceMatrix b2_ell_cross;   // ell-edges x cross 2-cells
    SignedIncidenceMatrix b2_cross;       // cross-edges x cross 2-cells
    SignedIncidenceMatrix b2_m_cross;     // m-edges x cross 2-cells
    SignedIncidenceMatrix b2_m;           // m-edges x m 2-cells
};

/// Slices the flattened incidence matrices into the named blocks of a layer
/// pair and cross-checks every block that also has a direct cross-boundary
/// construction; any disagreement raises BlockMismatch.
MonoBlocks extract_blocks(const CellMultiComplex& X, LayerId ell, LayerId m);

}  // namespace cmx

#endif  // CMX_INCIDENCE_HPP
