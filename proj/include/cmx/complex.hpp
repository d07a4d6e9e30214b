#ifndef CMX_COMPLEX_HPP
#define CMX_COMPLEX_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmx/types.hpp"

namespace cmx {

/// Raw description of a layered cell complex, as parsed from a complex file
/// or produced by a generator.  build_complex() validates it and produces the
/// indexed CellMultiComplex.  The on-disk format lives in io.hpp; this struct
/// is the single in-memory form both share.
struct ComplexSpec {
    struct Layer {
        LayerId id = 0;
        std::vector<std::string> nodes;
    };
    struct IntraEdge {
        LayerId layer = 0;
        std::string id, tail, head;
    };
    struct CrossEdge {
        LayerId ell = 0, m = 0;  // ell < m required
        std::string id, tail, head;
    };
    struct BoundaryRef {
        std::string edge_id;
        int sign = 0;  // +1 or -1
    };
    struct TwoCell {
        // scope: intra (layer != 0) or cross (ell < m, layer == 0)
        LayerId layer = 0;
        LayerId ell = 0, m = 0;
        std::string id;
        std::vector<BoundaryRef> boundary;
    };

    std::vector<Layer> layers;
    std::vector<IntraEdge> intra_edges;
    std::vector<CrossEdge> cross_edges;
    std::vector<TwoCell> two_cells;
};

enum class ScopeKind { intra, cross };

/// Which layer(s) a cell lives on: intra cells carry one layer, cross cells
/// exactly two (ell < m).
struct LayerScope {
    ScopeKind kind = ScopeKind::intra;
    LayerId ell = 0;
    LayerId m = 0;  // 0 for intra cells

    friend bool operator==(const LayerScope&, const LayerScope&) = default;
};

struct BoundaryEntry {
    int cell = -1;  // index into CellMultiComplex::cells()
    int sign = 0;
};

struct Cell {
    std::string id;
    int order = 0;
    LayerScope scope;
    std::vector<BoundaryEntry> boundary;  // direct faces, order-1 lower
    // Cross-cell face-order type (k, n): max order of faces on the ell / m
    // layer, -1 when that layer contributes none.  Intra cells keep (-2,-2).
    int k = -2, n = -2;
};

/// Identifies one family of cells for indexing purposes: either the intra
/// cells of one order on one layer, or the cross cells of one (k, n) type
/// between a layer pair.
struct FamilyKey {
    ScopeKind kind = ScopeKind::intra;
    LayerId ell = 0, m = 0;
    int k = 0, n = 0;  // intra: (order, -1) with n unused

    friend auto operator<=>(const FamilyKey&, const FamilyKey&) = default;
};

class CellMultiComplex {
public:
    /// Validates and indexes a raw description.  Throws cmx::Error with the
    /// offending record named in the message.
    static CellMultiComplex build(const ComplexSpec& spec);

    // --- layers -------------------------------------------------------------
    int num_layers() const { return static_cast<int>(layer_ids_.size()); }
    const std::vector<LayerId>& layer_ids() const { return layer_ids_; }
    bool has_layer(LayerId id) const { return layer_pos_.count(id) > 0; }
    /// Node cell indices of one layer, declaration order.
    const std::vector<int>& layer_nodes(LayerId id) const;

    // --- cells --------------------------------------------------------------
    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(int idx) const { return cells_[idx]; }
    /// Lookup by id within a category (0 = node, 1 = edge, 2 = two-cell and up);
    /// returns -1 when absent.
    int find_node(const std::string& id) const;
    int find_edge(const std::string& id) const;
    int find_two_cell(const std::string& id) const;

    /// Intra cells of a given order on a layer, declaration order.
    const std::vector<int>& intra_family(LayerId layer, int order) const;
    /// Cross cells of face-order type (k, n) between layers ell < m,
    /// declaration order.  Empty for unknown types.
    const std::vector<int>& cross_family(LayerId ell, LayerId m, int k, int n) const;
    /// All cross cells of a given order between ell < m (any (k, n)).
    const std::vector<int>& cross_cells_of_order(LayerId ell, LayerId m, int order) const;

    /// Count of a family; (k, -1) with n == -1 counts intra k-cells of layer
    /// ell.  Throws UnknownLayer / InvalidOrderPair on bad arguments.
    int cell_count(LayerId ell, LayerId m, int k, int n) const;

    // --- flattened monocomplex ----------------------------------------------
    // Canonical orderings (frozen at build): nodes by layer block; edges and
    // 2-cells in the block order  E_1, E_{1,2}, ..., E_{1,L}, E_2, E_{2,3}, ...
    const std::vector<int>& flat_nodes() const { return flat_nodes_; }
    const std::vector<int>& flat_edges() const { return flat_edges_; }
    const std::vector<int>& flat_two_cells() const { return flat_two_cells_; }
    /// Position of a cell index inside the flattened ordering of its order
    /// (-1 if not part of it).
    int flat_position(int cell_idx) const;

    /// Positions (into flat_edges) of the cross-edge block of a layer pair.
    std::vector<int> cross_edge_positions(LayerId ell, LayerId m) const;

    /// Ids of the cells listed, in order.
    std::vector<std::string> ids_of(const std::vector<int>& cell_indices) const;

    /// Nodes reachable from each other via intra edges of one layer:
    /// component label per node cell index (labels are 0-based, stable).
    std::unordered_map<int, int> intra_components(LayerId layer) const;

    const ComplexSpec& spec() const { return spec_; }

private:
    ComplexSpec spec_;
    std::vector<LayerId> layer_ids_;
    std::unordered_map<LayerId, int> layer_pos_;
    std::vector<std::vector<int>> nodes_by_layer_;
    std::vector<Cell> cells_;
    std::unordered_map<std::string, int> node_by_id_, edge_by_id_, two_cell_by_id_;
    std::map<FamilyKey, std::vector<int>> families_;
    std::map<std::tuple<LayerId, LayerId, int>, std::vector<int>> cross_by_order_;
    std::vector<int> flat_nodes_, flat_edges_, flat_two_cells_;
    std::unordered_map<int, int> flat_pos_;

    void index_families();
    void freeze_flatten();
};

/// Validates axioms and builds the indexed complex (alias of
/// CellMultiComplex::build taking the description struct directly).
CellMultiComplex build_complex(const ComplexSpec& spec);

/// Family sizes of every populated (k, n) type between a layer pair.
std::map<std::pair<int, int>, int> cross_type_counts(const CellMultiComplex& X,
                                                     LayerId ell, LayerId m);

}  // namespace cmx

#endif  // CMX_COMPLEX_HPP
