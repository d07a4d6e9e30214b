#ifndef CMX_FIXTURES_HPP
#define CMX_FIXTURES_HPP

#include "cmx/complex.hpp"

namespace cmx::fixtures {

/// Smallest nontrivial two-layer complex: one intra edge e1 = (u1 -> u2) on
/// layer 1, a single node v1 on layer 2, cross edges x1 = (u1 -> v1),
/// x2 = (u2 -> v1), and one filled (1,0) cell T with boundary
/// {x1: -1, x2: +1, e1: +1}.
ComplexSpec tri();

/// Two-layer complex with 10 layer-1 edges, 6 cross edges and one filled
/// (1,0) cell over the wedge at q1; pins the cross-boundary columns
/// [-1, 1, 0, 0, 0, 0]^T (over cross edges) and [1, 0, ..., 0]^T (over
/// layer-1 edges).
ComplexSpec fig2();

/// Two-layer complex with an open cone at hub 10 and a closed cone at hub 13:
/// layer 1 holds nodes {4,5,6,8} with intra edges (5,6), (6,8) (node 4
/// isolated), layer 2 holds {10,13} joined by one intra edge, cross edges
/// (4,10), (5,10), (5,13), (8,13), and a filled (0,1) cell over the wedge at
/// node 5.  Cross-homology: beta = (2, 0).
ComplexSpec fig3();

/// Variant of fig3 without the layer-2 edge and without the filled cell; the
/// wedge at node 5 then survives as a kernel vector (beta = (2, 1)).
ComplexSpec fig3_open();

/// Three-layer benchmark complex: 27 nodes, 61 edges, 49 two-cells.
/// Layers 1 and 2 are triangulated strips of 9 nodes; layer 3 is split into
/// two strip components (19..23 and 24..27).  The (1,2) cross graph is a
/// ladder fully filled with squares and two (0,1) triangles; the (2,3) cross
/// graph has wedge hubs at nodes 12/14/15/17 with exactly one filled (0,1)
/// cell (at hub 17), one (1,0) quad and two mixed cells, leaving two unfilled
/// cross-triangles.  Frozen properties: dim ker L1 = 2, and between layers
/// (2,3) the node-level cross-homology is (0, 3) — two closed cones and one
/// open cone with apexes on layer 2.
ComplexSpec f3();

}  // namespace cmx::fixtures

#endif  // CMX_FIXTURES_HPP
