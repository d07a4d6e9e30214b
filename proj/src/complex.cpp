#include "cmx/complex.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace cmx {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::dangling_reference: return "DanglingReference";
        case ErrorCode::order_violation: return "OrderViolation";
        case ErrorCode::multi_layer_cell: return "MultiLayerCell";
        case ErrorCode::orientation_error: return "OrientationError";
        case ErrorCode::invalid_boundary_cycle: return "InvalidBoundaryCycle";
        case ErrorCode::duplicate_id: return "DuplicateId";
        case ErrorCode::unknown_layer: return "UnknownLayer";
        case ErrorCode::invalid_order_pair: return "InvalidOrderPair";
        case ErrorCode::block_mismatch: return "BlockMismatch";
        case ErrorCode::not_symmetric: return "NotSymmetric";
        case ErrorCode::no_convergence: return "NoConvergence";
        case ErrorCode::unsupported_order_pair: return "UnsupportedOrderPair";
        case ErrorCode::dependent_cells: return "DependentCells";
        case ErrorCode::index_mismatch: return "IndexMismatch";
        case ErrorCode::zero_reference: return "ZeroReference";
        case ErrorCode::infeasible_epsilon: return "InfeasibleEpsilon";
        case ErrorCode::zero_signal: return "ZeroSignal";
        case ErrorCode::gamma_too_large: return "GammaTooLarge";
        case ErrorCode::zero_harmonic: return "ZeroHarmonic";
        case ErrorCode::degenerate_config: return "DegenerateConfig";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::unknown_cell_id: return "UnknownCellId";
        case ErrorCode::io_error: return "IoError";
    }
    return "UnknownError";
}

bool is_validation_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::no_convergence:
        case ErrorCode::dependent_cells:
        case ErrorCode::zero_reference:
        case ErrorCode::infeasible_epsilon:
        case ErrorCode::zero_signal:
        case ErrorCode::zero_harmonic:
            return false;
        default:
            return true;
    }
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

// Verifies that the signed 1-cells form one closed directed cycle: each
// boundary edge is traversed forward (+1) or backward (-1), consecutive
// arcs must chain head-to-tail, and every touched node is visited once.
void check_closed_walk(const std::string& cell_id,
                       const std::vector<std::pair<int, int>>& arcs) {
    if (arcs.empty())
        fail(ErrorCode::invalid_boundary_cycle,
             "2-cell '" + cell_id + "' has an empty boundary");
    std::unordered_map<int, int> next;
    std::unordered_map<int, int> indeg;
    for (const auto& [from, to] : arcs) {
        if (!next.emplace(from, to).second || ++indeg[to] > 1)
            fail(ErrorCode::invalid_boundary_cycle,
                 "boundary of 2-cell '" + cell_id +
                     "' is not a single closed cycle (branching node)");
    }
    int start = arcs.front().first;
    int cur = start;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto it = next.find(cur);
        if (it == next.end())
            fail(ErrorCode::invalid_boundary_cycle,
                 "boundary of 2-cell '" + cell_id + "' does not close up");
        cur = it->second;
        next.erase(it);
    }
    if (cur != start || !next.empty())
        fail(ErrorCode::invalid_boundary_cycle,
             "boundary of 2-cell '" + cell_id + "' does not close up");
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

CellMultiComplex CellMultiComplex::build(const ComplexSpec& spec) {
    CellMultiComplex X;
    X.spec_ = spec;

    if (spec.layers.empty())
        fail(ErrorCode::unknown_layer, "complex defines no layers");
    for (const auto& layer : spec.layers) {
        if (layer.id <= 0)
            fail(ErrorCode::unknown_layer,
                 "layer ids must be positive (got " + std::to_string(layer.id) + ")");
        if (!X.layer_pos_.emplace(layer.id, 0).second)
            fail(ErrorCode::duplicate_id, "layer " + std::to_string(layer.id) + " declared twice");
        X.layer_ids_.push_back(layer.id);
    }
    std::sort(X.layer_ids_.begin(), X.layer_ids_.end());
    for (int i = 0; i < static_cast<int>(X.layer_ids_.size()); ++i)
        X.layer_pos_[X.layer_ids_[i]] = i;

    // Nodes, in layer blocks (ascending layer, declaration order within).
    X.nodes_by_layer_.resize(X.layer_ids_.size());
    for (LayerId lid : X.layer_ids_) {
        const auto& layer = *std::find_if(spec.layers.begin(), spec.layers.end(),
                                          [&](const auto& l) { return l.id == lid; });
        for (const auto& name : layer.nodes) {
            if (X.node_by_id_.count(name))
                fail(ErrorCode::duplicate_id, "node '" + name + "' declared twice");
            Cell c;
            c.id = name;
            c.order = 0;
            c.scope = {ScopeKind::intra, lid, 0};
            int idx = static_cast<int>(X.cells_.size());
            X.cells_.push_back(std::move(c));
            X.node_by_id_[name] = idx;
            X.nodes_by_layer_[X.layer_pos_[lid]].push_back(idx);
        }
    }

    auto node_in_layer = [&](const std::string& name, LayerId lid) -> int {
        auto it = X.node_by_id_.find(name);
        if (it == X.node_by_id_.end()) return -1;
        return X.cells_[it->second].scope.ell == lid ? it->second : -1;
    };

    for (const auto& e : spec.intra_edges) {
        if (!X.layer_pos_.count(e.layer))
            fail(ErrorCode::unknown_layer,
                 "intra edge '" + e.id + "' names unknown layer " + std::to_string(e.layer));
        int tail = node_in_layer(e.tail, e.layer);
        int head = node_in_layer(e.head, e.layer);
        if (tail < 0 || head < 0)
            fail(ErrorCode::dangling_reference,
                 "intra edge '" + e.id + "' references a node not on layer " +
                     std::to_string(e.layer));
        if (tail == head)
            fail(ErrorCode::orientation_error,
                 "intra edge '" + e.id + "' is a self-loop; its incidence column would vanish");
        if (X.edge_by_id_.count(e.id))
            fail(ErrorCode::duplicate_id, "edge '" + e.id + "' declared twice");
        Cell c;
        c.id = e.id;
        c.order = 1;
        c.scope = {ScopeKind::intra, e.layer, 0};
        c.boundary = {{tail, -1}, {head, +1}};
        int idx = static_cast<int>(X.cells_.size());
        X.cells_.push_back(std::move(c));
        X.edge_by_id_[e.id] = idx;
    }

    for (const auto& e : spec.cross_edges) {
        if (!X.layer_pos_.count(e.ell) || !X.layer_pos_.count(e.m))
            fail(ErrorCode::unknown_layer, "cross edge '" + e.id + "' names an unknown layer");
        if (e.ell >= e.m)
            fail(ErrorCode::multi_layer_cell,
                 "cross edge '" + e.id + "' must span two distinct layers ell < m");
        // Default orientation runs lower layer -> higher layer; a file may
        // override by declaring the tail on the higher layer.
        int tail = node_in_layer(e.tail, e.ell);
        int head = node_in_layer(e.head, e.m);
        if (tail < 0 || head < 0) {
            tail = node_in_layer(e.tail, e.m);
            head = node_in_layer(e.head, e.ell);
        }
        if (tail < 0 || head < 0)
            fail(ErrorCode::dangling_reference,
                 "cross edge '" + e.id + "' must join one node on layer " +
                     std::to_string(e.ell) + " and one on layer " + std::to_string(e.m));
        if (X.edge_by_id_.count(e.id))
            fail(ErrorCode::duplicate_id, "edge '" + e.id + "' declared twice");
        Cell c;
        c.id = e.id;
        c.order = 1;
        c.scope = {ScopeKind::cross, e.ell, e.m};
        c.boundary = {{tail, -1}, {head, +1}};
        c.k = 0;
        c.n = 0;
        int idx = static_cast<int>(X.cells_.size());
        X.cells_.push_back(std::move(c));
        X.edge_by_id_[e.id] = idx;
    }

    for (const auto& tc : spec.two_cells) {
        bool intra = tc.layer != 0;
        if (intra && !X.layer_pos_.count(tc.layer))
            fail(ErrorCode::unknown_layer,
                 "2-cell '" + tc.id + "' names unknown layer " + std::to_string(tc.layer));
        if (!intra) {
            if (!X.layer_pos_.count(tc.ell) || !X.layer_pos_.count(tc.m))
                fail(ErrorCode::unknown_layer, "2-cell '" + tc.id + "' names an unknown layer");
            if (tc.ell >= tc.m)
                fail(ErrorCode::multi_layer_cell,
                     "cross 2-cell '" + tc.id + "' must declare a layer pair ell < m");
        }
        if (X.two_cell_by_id_.count(tc.id))
            fail(ErrorCode::duplicate_id, "2-cell '" + tc.id + "' declared twice");

        Cell c;
        c.id = tc.id;
        c.order = 2;
        c.scope = intra ? LayerScope{ScopeKind::intra, tc.layer, 0}
                        : LayerScope{ScopeKind::cross, tc.ell, tc.m};

        std::set<int> seen_edges;
        std::vector<std::pair<int, int>> arcs;
        for (const auto& ref : tc.boundary) {
            auto it = X.edge_by_id_.find(ref.edge_id);
            if (it == X.edge_by_id_.end()) {
                if (X.node_by_id_.count(ref.edge_id))
                    fail(ErrorCode::order_violation,
                         "2-cell '" + tc.id + "' lists order-0 cell '" + ref.edge_id +
                             "' on its boundary; boundaries must be order-1 cells");
                fail(ErrorCode::dangling_reference,
                     "2-cell '" + tc.id + "' references unknown edge '" + ref.edge_id + "'");
            }
            if (ref.sign != 1 && ref.sign != -1)
                fail(ErrorCode::orientation_error,
                     "2-cell '" + tc.id + "' carries sign " + std::to_string(ref.sign) +
                         " on edge '" + ref.edge_id + "' (must be +1 or -1)");
            int edge_idx = it->second;
            if (!seen_edges.insert(edge_idx).second)
                fail(ErrorCode::orientation_error,
                     "2-cell '" + tc.id + "' references edge '" + ref.edge_id + "' twice");
            const Cell& edge = X.cells_[edge_idx];
            const LayerScope& es = edge.scope;
            bool scope_ok;
            if (intra) {
                scope_ok = es.kind == ScopeKind::intra && es.ell == tc.layer;
            } else {
                scope_ok = (es.kind == ScopeKind::intra && (es.ell == tc.ell || es.ell == tc.m)) ||
                           (es.kind == ScopeKind::cross && es.ell == tc.ell && es.m == tc.m);
            }
            if (!scope_ok)
                fail(ErrorCode::multi_layer_cell,
                     "2-cell '" + tc.id + "' reaches outside its declared layer scope via edge '" +
                         ref.edge_id + "'");
            c.boundary.push_back({edge_idx, ref.sign});
            int tail = edge.boundary[0].cell, head = edge.boundary[1].cell;
            arcs.emplace_back(ref.sign > 0 ? tail : head, ref.sign > 0 ? head : tail);
        }
        check_closed_walk(tc.id, arcs);

        if (!intra) {
            // Face-order type: max order of faces contributed to each layer
            // (an edge contributes order 1, its endpoints order 0).
            int k = -1, n = -1;
            auto bump = [&](LayerId lid, int order) {
                if (lid == tc.ell) k = std::max(k, order);
                else if (lid == tc.m) n = std::max(n, order);
            };
            for (const auto& be : c.boundary) {
                const Cell& edge = X.cells_[be.cell];
                if (edge.scope.kind == ScopeKind::intra) bump(edge.scope.ell, 1);
                for (const auto& ne : edge.boundary)
                    bump(X.cells_[ne.cell].scope.ell, 0);
            }
            static const std::set<std::pair<int, int>> allowed_q2 = {{1, 0}, {0, 1}, {1, 1}};
            if (!allowed_q2.count({k, n}))
                fail(ErrorCode::invalid_order_pair,
                     "cross 2-cell '" + tc.id + "' has face-order type (" + std::to_string(k) +
                         "," + std::to_string(n) + "); 2-order cross cells must be (1,0), (0,1) or (1,1)");
            c.k = k;
            c.n = n;
        }

        int idx = static_cast<int>(X.cells_.size());
        X.cells_.push_back(std::move(c));
        X.two_cell_by_id_[tc.id] = idx;
    }

    X.index_families();
    X.freeze_flatten();
    return X;
}

void CellMultiComplex::index_families() {
    for (int idx = 0; idx < static_cast<int>(cells_.size()); ++idx) {
        const Cell& c = cells_[idx];
        if (c.scope.kind == ScopeKind::intra) {
            families_[{ScopeKind::intra, c.scope.ell, 0, c.order, -1}].push_back(idx);
        } else {
            families_[{ScopeKind::cross, c.scope.ell, c.scope.m, c.k, c.n}].push_back(idx);
            cross_by_order_[{c.scope.ell, c.scope.m, c.order}].push_back(idx);
        }
    }
}

void CellMultiComplex::freeze_flatten() {
    for (std::size_t i = 0; i < layer_ids_.size(); ++i)
        for (int idx : nodes_by_layer_[i]) flat_nodes_.push_back(idx);
    auto append_blocks = [&](int order, std::vector<int>& out) {
        for (std::size_t i = 0; i < layer_ids_.size(); ++i) {
            for (int idx : intra_family(layer_ids_[i], order)) out.push_back(idx);
            for (std::size_t j = i + 1; j < layer_ids_.size(); ++j)
                for (int idx : cross_cells_of_order(layer_ids_[i], layer_ids_[j], order))
                    out.push_back(idx);
        }
    };
    append_blocks(1, flat_edges_);
    append_blocks(2, flat_two_cells_);
    for (int p = 0; p < static_cast<int>(flat_nodes_.size()); ++p)
        flat_pos_[flat_nodes_[p]] = p;
    for (int p = 0; p < static_cast<int>(flat_edges_.size()); ++p)
        flat_pos_[flat_edges_[p]] = p;
    for (int p = 0; p < static_cast<int>(flat_two_cells_.size()); ++p)
        flat_pos_[flat_two_cells_[p]] = p;
}

const std::vector<int>& CellMultiComplex::layer_nodes(LayerId id) const {
    auto it = layer_pos_.find(id);
    if (it == layer_pos_.end())
        fail(ErrorCode::unknown_layer, "unknown layer " + std::to_string(id));
    return nodes_by_layer_[it->second];
}

int CellMultiComplex::find_node(const std::string& id) const {
    auto it = node_by_id_.find(id);
    return it == node_by_id_.end() ? -1 : it->second;
}

int CellMultiComplex::find_edge(const std::string& id) const {
    auto it = edge_by_id_.find(id);
    return it == edge_by_id_.end() ? -1 : it->second;
}

int CellMultiComplex::find_two_cell(const std::string& id) const {
    auto it = two_cell_by_id_.find(id);
    return it == two_cell_by_id_.end() ? -1 : it->second;
}

const std::vector<int>& CellMultiComplex::intra_family(LayerId layer, int order) const {
    static const std::vector<int> empty;
    auto it = families_.find({ScopeKind::intra, layer, 0, order, -1});
    return it == families_.end() ? empty : it->second;
}

const std::vector<int>& CellMultiComplex::cross_family(LayerId ell, LayerId m, int k,
                                                       int n) const {
    static const std::vector<int> empty;
    auto it = families_.find({ScopeKind::cross, ell, m, k, n});
    return it == families_.end() ? empty : it->second;
}

const std::vector<int>& CellMultiComplex::cross_cells_of_order(LayerId ell, LayerId m,
                                                               int order) const {
    static const std::vector<int> empty;
    auto it = cross_by_order_.find({ell, m, order});
    return it == cross_by_order_.end() ? empty : it->second;
}

int CellMultiComplex::cell_count(LayerId ell, LayerId m, int k, int n) const {
    if (k == -1 && n == -1) return 0;
    if (n == -1) {
        if (!layer_pos_.count(ell))
            fail(ErrorCode::unknown_layer, "unknown layer " + std::to_string(ell));
        if (k < 0) fail(ErrorCode::invalid_order_pair, "negative intra order");
        return static_cast<int>(intra_family(ell, k).size());
    }
    if (k == -1) {
        if (!layer_pos_.count(m))
            fail(ErrorCode::unknown_layer, "unknown layer " + std::to_string(m));
        return static_cast<int>(intra_family(m, n).size());
    }
    if (!layer_pos_.count(ell) || !layer_pos_.count(m))
        fail(ErrorCode::unknown_layer, "unknown layer in pair (" + std::to_string(ell) + "," +
                                           std::to_string(m) + ")");
    if (ell >= m)
        fail(ErrorCode::invalid_order_pair,
             "cross families require ell < m (got " + std::to_string(ell) + "," +
                 std::to_string(m) + ")");
    return static_cast<int>(cross_family(ell, m, k, n).size());
}

int CellMultiComplex::flat_position(int cell_idx) const {
    auto it = flat_pos_.find(cell_idx);
    return it == flat_pos_.end() ? -1 : it->second;
}

std::vector<int> CellMultiComplex::cross_edge_positions(LayerId ell, LayerId m) const {
    std::vector<int> out;
    for (int idx : cross_cells_of_order(ell, m, 1)) out.push_back(flat_position(idx));
    return out;
}

std::vector<std::string> CellMultiComplex::ids_of(const std::vector<int>& cell_indices) const {
    std::vector<std::string> out;
    out.reserve(cell_indices.size());
    for (int idx : cell_indices) out.push_back(cells_[idx].id);
    return out;
}

std::unordered_map<int, int> CellMultiComplex::intra_components(LayerId layer) const {
    const auto& nodes = layer_nodes(layer);
    std::unordered_map<int, int> local;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) local[nodes[i]] = i;
    UnionFind uf(static_cast<int>(nodes.size()));
    for (int e : intra_family(layer, 1))
        uf.unite(local[cells_[e].boundary[0].cell], local[cells_[e].boundary[1].cell]);
    std::unordered_map<int, int> root_label;
    std::unordered_map<int, int> result;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        int root = uf.find(i);
        auto [it, fresh] = root_label.emplace(root, static_cast<int>(root_label.size()));
        result[nodes[i]] = it->second;
    }
    return result;
}

CellMultiComplex build_complex(const ComplexSpec& spec) { return CellMultiComplex::build(spec); }

std::map<std::pair<int, int>, int> cross_type_counts(const CellMultiComplex& X, LayerId ell,
                                                     LayerId m) {
    std::map<std::pair<int, int>, int> out;
    for (const Cell& c : X.cells())
        if (c.scope.kind == ScopeKind::cross && c.scope.ell == ell && c.scope.m == m)
            ++out[{c.k, c.n}];
    return out;
}

}  // namespace cmx
