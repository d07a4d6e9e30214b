#include <vector>

#include "doctest.h"

#include "cmx/complex.hpp"
#include "cmx/fixtures.hpp"
#include "cmx/incidence.hpp"
#include "support.hpp"

using namespace cmx;
using cmx::testsupport::exact_rank;

TEST_SUITE("boundary-ops") {
    TEST_CASE("node-edge incidence of the smallest fixture") {
        CellMultiComplex X = build_complex(fixtures::tri());
        SignedIncidenceMatrix b1 = mono_b1(X);
        REQUIRE(b1.row_ids == std::vector<std::string>{"u1", "u2", "v1"});
        REQUIRE(b1.col_ids == std::vector<std::string>{"e1", "x1", "x2"});
        IMat expected(3, 3);
        expected << -1, -1, 0,  //
            1, 0, -1,           //
            0, 1, 1;
        CHECK(b1.entries == expected);
    }

    TEST_CASE("edge-cell incidence of the smallest fixture") {
        CellMultiComplex X = build_complex(fixtures::tri());
        SignedIncidenceMatrix b2 = mono_b2(X);
        REQUIRE(b2.row_ids == std::vector<std::string>{"e1", "x1", "x2"});
        REQUIRE(b2.col_ids == std::vector<std::string>{"T"});
        IMat expected(3, 1);
        expected << 1, -1, 1;
        CHECK(b2.entries == expected);
    }

    TEST_CASE("composed flatten boundaries vanish exactly") {
        for (const ComplexSpec& spec :
             {fixtures::tri(), fixtures::fig2(), fixtures::fig3(), fixtures::f3()}) {
            CellMultiComplex X = build_complex(spec);
            SignedIncidenceMatrix b1 = mono_b1(X);
            SignedIncidenceMatrix b2 = mono_b2(X);
            if (b2.cols() == 0) continue;
            IMat product = exact_product(b1, b2);
            CHECK((product.array() == 0).all());
        }
    }

    TEST_CASE("pinned two-layer wedge columns, both perspectives") {
        CellMultiComplex X = build_complex(fixtures::fig2());
        SignedIncidenceMatrix from_ell = cross_boundary_from_ell(X, 1, 2, 1, 0);
        REQUIRE(from_ell.rows() == 6);  // the six cross-edges
        REQUIRE(from_ell.cols() == 1);
        IMat col_ell(6, 1);
        col_ell << -1, 1, 0, 0, 0, 0;
        CHECK(from_ell.entries == col_ell);

        SignedIncidenceMatrix from_m = cross_boundary_from_m(X, 1, 2, 1, 0);
        REQUIRE(from_m.rows() == 10);  // the ten layer-1 edges
        REQUIRE(from_m.cols() == 1);
        IMat col_m = IMat::Zero(10, 1);
        col_m(0, 0) = 1;
        CHECK(from_m.entries == col_m);
    }

    TEST_CASE("node-level cross boundaries are single-entry columns") {
        CellMultiComplex X = build_complex(fixtures::f3());
        for (LayerId ell : {1, 2}) {
            const LayerId m = ell + 1;
            SignedIncidenceMatrix onto_m = cross_boundary_from_ell(X, ell, m, 0, 0);
            SignedIncidenceMatrix onto_ell = cross_boundary_from_m(X, ell, m, 0, 0);
            CHECK(onto_m.cols() == X.cell_count(ell, m, 0, 0));
            CHECK(onto_ell.cols() == onto_m.cols());
            CHECK(onto_m.rows() == static_cast<int>(X.layer_nodes(m).size()));
            CHECK(onto_ell.rows() == static_cast<int>(X.layer_nodes(ell).size()));
            for (int c = 0; c < onto_m.cols(); ++c) {
                CHECK(onto_m.entries.col(c).cwiseAbs().sum() == 1);
                CHECK(onto_m.entries.col(c).sum() == 1);  // head side, +1
                CHECK(onto_ell.entries.col(c).cwiseAbs().sum() == 1);
                CHECK(onto_ell.entries.col(c).sum() == -1);  // tail side, -1
            }
        }
    }

    TEST_CASE("defined boundary compositions vanish exactly on the 3-layer fixture") {
        CellMultiComplex X = build_complex(fixtures::f3());
        for (LayerId ell : {1, 2}) {
            const LayerId m = ell + 1;
            {
                SignedIncidenceMatrix low = cross_boundary_from_ell(X, ell, m, 0, 0);
                SignedIncidenceMatrix up = cross_boundary_from_ell(X, ell, m, 1, 0);
                if (up.cols() > 0) {
                    IMat product = exact_product(low, up);
                    CHECK((product.array() == 0).all());
                }
            }
            {
                SignedIncidenceMatrix low = cross_boundary_from_m(X, ell, m, 0, 0);
                SignedIncidenceMatrix up = cross_boundary_from_m(X, ell, m, 0, 1);
                if (up.cols() > 0) {
                    IMat product = exact_product(low, up);
                    CHECK((product.array() == 0).all());
                }
            }
        }
    }

    TEST_CASE("degenerate order pairs give empty-shaped matrices") {
        CellMultiComplex X = build_complex(fixtures::tri());
        CHECK(cross_boundary_from_ell(X, 1, 2, 0, -1).is_zero());
        CHECK(cross_boundary_from_m(X, 1, 2, -1, 0).is_zero());
    }

    TEST_CASE("mismatched inner ids are rejected in exact products") {
        CellMultiComplex X = build_complex(fixtures::tri());
        SignedIncidenceMatrix b1 = mono_b1(X);
        try {
            exact_product(b1, b1);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::index_mismatch);
        }
    }

    TEST_CASE("block extraction agrees with the direct constructions") {
        CellMultiComplex X = build_complex(fixtures::f3());
        for (LayerId ell : {1, 2}) {
            MonoBlocks blocks = extract_blocks(X, ell, ell + 1);  // throws on any mismatch
            CHECK(blocks.b1_cross_m.entries ==
                  cross_boundary_from_ell(X, ell, ell + 1, 0, 0).entries);
            CHECK(blocks.b1_cross_ell.entries ==
                  cross_boundary_from_m(X, ell, ell + 1, 0, 0).entries);
        }
    }

    TEST_CASE("frozen integer ranks of the 3-layer fixture") {
        CellMultiComplex X = build_complex(fixtures::f3());
        IMat b1 = mono_b1(X).entries;
        IMat b2 = mono_b2(X).entries;
        CHECK(exact_rank(b1) == 26);  // 27 nodes, one connected flatten
        CHECK(exact_rank(b2) == 33);
        // dim ker L1 = E - rank B1 - rank B2 = 61 - 26 - 33 = 2
        CHECK(static_cast<int>(X.flat_edges().size()) - exact_rank(b1) - exact_rank(b2) == 2);
    }
}
