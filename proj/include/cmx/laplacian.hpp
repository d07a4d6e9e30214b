#ifndef CMX_LAPLACIAN_HPP
#define CMX_LAPLACIAN_HPP

#include <string>
#include <vector>

#include "cmx/complex.hpp"
#include "cmx/incidence.hpp"
#include "cmx/types.hpp"

namespace cmx {

/// Node and edge Laplacians of the flattened monocomplex:
///   L0 = B1 B1^T,   L1 = B1^T B1 + B2 B2^T.
struct MonoLaplacians {
    Mat l0, l1;
    std::vector<std::string> node_ids, edge_ids;
};

MonoLaplacians hodge_laplacians(const CellMultiComplex& X);

/// Cross Laplacian of one (k, n) family of a layer pair, from one of the two
/// perspectives:  lower + upper  with
///   lower = B_{k,n}^T B_{k,n},   upper = B_{k+1,n} B_{k+1,n}^T   (from ell)
/// and the n-shifted analogue from m.  Both terms are assembled from exact
/// integer incidence products.
struct CrossLaplacian {
    Mat lower, upper, total;
    std::vector<std::string> index;  // ids of the (k, n) family
    Perspective perspective = Perspective::from_ell;
    LayerId ell = 0, m = 0;
    int k = 0, n = 0;
};

CrossLaplacian cross_laplacian(const CellMultiComplex& X, LayerId ell, LayerId m, int k, int n,
                               Perspective perspective);

/// Kernel dimensions of the two perspective Laplacians of one (k, n) family.
/// Supported order pairs: (0,-1), (-1,0), (0,0); anything else raises
/// UnsupportedOrderPair.
struct CrossBettiVector {
    int beta_ell = 0;  // dim ker of the from-ell Laplacian
    int beta_m = 0;    // dim ker of the from-m Laplacian
};

CrossBettiVector cross_betti(const CellMultiComplex& X, LayerId ell, LayerId m, int k, int n);

/// Which layer carries the cone apexes being counted.
enum class ApexSide { on_m, on_ell };

/// One wedge of two cross edges sharing an apex node.  `open` reflects the
/// intra-layer connectivity of the two opposite-layer endpoints;
/// `independent` marks the consecutive-pair wedges that form the counted
/// independent family at the hub (the remaining pairs are informational).
struct Wedge {
    std::string edge_a, edge_b;
    std::string endpoint_a, endpoint_b;
    bool open = false;
    bool independent = false;
};

struct HubCones {
    std::string hub;
    int cross_degree = 0;
    int fills = 0;       // filled wedge cells attached to this hub
    int cone_count = 0;  // cross_degree - 1 - fills, clamped at 0
    bool open = false;   // at least one independent wedge bridges components
    std::vector<Wedge> wedges;
};

/// Cone accounting for the node-level cross complex of a layer pair:
///   count = N_cross_edges - touched_apex_nodes - filled_wedge_cells,
/// the dimension-count identity behind the node-level harmonic space.  The
/// identity requires the filled cells' incidence columns to be independent;
/// a rank drop raises DependentCells.
struct ConeReport {
    ApexSide side = ApexSide::on_m;
    int count = 0;
    int n_cross_edges = 0;
    int touched_nodes = 0;
    int fills = 0;
    std::vector<HubCones> hubs;  // hubs with at least one wedge
};

ConeReport cone_report(const CellMultiComplex& X, LayerId ell, LayerId m,
                       ApexSide side = ApexSide::on_m);

/// Hubs owning at least one counted cone, from cone_report.
std::vector<HubCones> harmonic_cross_hubs(const CellMultiComplex& X, LayerId ell, LayerId m,
                                          ApexSide side = ApexSide::on_m);

}  // namespace cmx

#endif  // CMX_LAPLACIAN_HPP
