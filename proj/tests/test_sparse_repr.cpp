#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"

#include "cmx/complex.hpp"
#include "cmx/experiments.hpp"
#include "cmx/fixtures.hpp"
#include "cmx/laplacian.hpp"
#include "cmx/sparse.hpp"
#include "cmx/spectral.hpp"
#include "support.hpp"

using namespace cmx;
using cmx::testsupport::bp_oracle;
using cmx::testsupport::OracleSolution;

namespace {

Mat random_orthogonal(int n, std::uint64_t seed) {
    Mat a = gen_gaussian_signals(n, n, seed);
    Eigen::HouseholderQR<Mat> qr(a);
    return qr.householderQ() * Mat::Identity(n, n);
}

}  // namespace

TEST_SUITE("sparse-repr") {
    TEST_CASE("a basis atom with a zero budget codes as a unit coefficient") {
        CellMultiComplex X = build_complex(fixtures::f3());
        Mat u = eig_sym(hodge_laplacians(X).l1).eigenvectors;
        Vec y = u.col(5);
        SparseCode code = basis_pursuit({u, y, 0.0});
        REQUIRE(code.support.size() == 1);
        CHECK(code.support[0] == 5);
        CHECK(std::abs(code.coefficients(5) - 1.0) < 1e-10);
        CHECK(code.residual_norm < 1e-10);
        CHECK(std::abs(code.objective - 1.0) < 1e-10);
    }

    TEST_CASE("budgets at or above the signal norm give the zero code") {
        Mat u = random_orthogonal(6, 3);
        Vec y = gen_gaussian_signals(6, 1, 4).col(0);
        for (double eps : {y.norm(), 2.0 * y.norm()}) {
            SparseCode code = basis_pursuit({u, y, eps});
            CHECK(code.support.empty());
            CHECK(code.coefficients.cwiseAbs().maxCoeff() == 0.0);
            CHECK(code.objective == 0.0);
            CHECK(std::abs(code.residual_norm - y.norm()) < 1e-12);
        }
    }

    TEST_CASE("budget rescaling follows the cross/edge count ratio") {
        CHECK(scaled_epsilon(1.0, 6, 12) == doctest::Approx(0.5));
        CHECK(scaled_epsilon(0.0, 5, 7) == 0.0);
        CHECK(scaled_epsilon(0.7, 61, 61) == doctest::Approx(0.7));
        std::vector<std::pair<int, int>> bad_counts{{0, 5}, {5, 0}, {-1, 5}};
        for (auto [nc, ne] : bad_counts) {
            try {
                scaled_epsilon(1.0, nc, ne);
                FAIL("expected an error");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::degenerate_config);
            }
        }
        try {
            scaled_epsilon(-0.1, 3, 5);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::degenerate_config);
        }
    }

    TEST_CASE("an active budget is spent exactly") {
        Mat u = random_orthogonal(8, 11);
        Vec y = gen_gaussian_signals(8, 1, 12).col(0);
        double prev_support = 9;
        for (double frac : {0.05, 0.2, 0.4, 0.6, 0.8}) {
            double eps = frac * y.norm();
            SparseCode code = basis_pursuit({u, y, eps});
            CHECK(std::abs(code.residual_norm - eps) < 1e-9 * (1.0 + y.norm()));
            // growing budgets only shrink the support
            CHECK(static_cast<double>(code.support.size()) <= prev_support);
            prev_support = static_cast<double>(code.support.size());
        }
    }

    TEST_CASE("soft-threshold optimality conditions hold on the returned code") {
        Mat u = random_orthogonal(8, 21);
        Vec y = gen_gaussian_signals(8, 1, 22).col(0);
        double eps = 0.35 * y.norm();
        SparseCode code = basis_pursuit({u, y, eps});
        Vec c0 = u.transpose() * y;
        REQUIRE(code.threshold > 0.0);
        for (Eigen::Index i = 0; i < 8; ++i) {
            if (code.coefficients(i) == 0.0) {
                CHECK(std::abs(c0(i)) <= code.threshold + 1e-10);
            } else {
                CHECK(code.coefficients(i) * c0(i) > 0.0);
                CHECK(std::abs(std::abs(c0(i)) - std::abs(code.coefficients(i)) -
                               code.threshold) < 1e-10);
            }
        }
    }

    TEST_CASE("solutions match the exhaustive face-enumeration oracle") {
        for (int trial = 0; trial < 50; ++trial) {
            std::uint64_t seed = 100 + static_cast<std::uint64_t>(trial);
            Mat u = random_orthogonal(8, seed);
            Vec y = gen_gaussian_signals(8, 1, seed ^ 0x9E3779B9u).col(0);
            double frac = 0.1 + 0.8 * static_cast<double>(trial) / 49.0;
            double eps = frac * y.norm();
            SparseCode code = basis_pursuit({u, y, eps});
            OracleSolution oracle = bp_oracle(u.transpose() * y, eps);
            REQUIRE(oracle.feasible);
            CHECK(std::abs(code.objective - oracle.objective) <
                  1e-5 * std::max(1.0, oracle.objective));
            CHECK((code.coefficients - oracle.coefficients).cwiseAbs().maxCoeff() < 1e-5);
        }
    }

    TEST_CASE("strict subspaces reject budgets below the off-subspace residual") {
        Mat q = random_orthogonal(8, 31);
        Mat u = q.leftCols(4);
        Vec y = gen_gaussian_signals(8, 1, 32).col(0);
        double off = (y - u * (u.transpose() * y)).norm();
        REQUIRE(off > 1e-3);
        try {
            basis_pursuit({u, y, 0.5 * off});
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::infeasible_epsilon);
        }

        // just-feasible budget: the in-subspace part still gets shrunk, and
        // the reduced problem matches the oracle with the remaining budget
        double eps = std::sqrt(off * off + 0.2 * 0.2 * (u.transpose() * y).squaredNorm());
        SparseCode code = basis_pursuit({u, y, eps});
        CHECK(code.residual_norm <= eps + 1e-9);
        OracleSolution oracle =
            bp_oracle(u.transpose() * y, 0.2 * (u.transpose() * y).norm());
        REQUIRE(oracle.feasible);
        CHECK(std::abs(code.objective - oracle.objective) <
              1e-6 * std::max(1.0, oracle.objective));
    }

    TEST_CASE("general dictionaries go through the penalized solver") {
        Mat u = gen_gaussian_signals(6, 10, 41);
        Vec y = gen_gaussian_signals(6, 1, 42).col(0);
        double eps = 0.3 * y.norm();
        SparseCode code = basis_pursuit({u, y, eps});
        CHECK(code.residual_norm <= eps * (1.0 + 1e-6));
        // stationarity of the penalized form at the reported penalty
        Vec g = u.transpose() * (y - u * code.coefficients);
        double lam = code.threshold;
        REQUIRE(lam > 0.0);
        for (Eigen::Index i = 0; i < 10; ++i) {
            if (code.coefficients(i) == 0.0) {
                CHECK(std::abs(g(i)) <= lam + 1e-4 * std::max(1.0, lam));
            } else {
                double sign = code.coefficients(i) > 0.0 ? 1.0 : -1.0;
                CHECK(std::abs(g(i) - lam * sign) <= 1e-4 * std::max(1.0, lam));
            }
        }

        // unreachable budget on an independent-column tall dictionary
        Mat tall = 2.0 * gen_gaussian_signals(8, 3, 43);
        Vec y8 = gen_gaussian_signals(8, 1, 44).col(0);
        double r_min = (y8 - tall * tall.colPivHouseholderQr().solve(y8)).norm();
        REQUIRE(r_min > 1e-3);
        try {
            basis_pursuit({tall, y8, 0.5 * r_min});
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::infeasible_epsilon);
        }
    }

    TEST_CASE("degenerate problems are rejected up front") {
        Mat u = random_orthogonal(4, 51);
        Vec y = gen_gaussian_signals(4, 1, 52).col(0);
        for (double bad : {-1.0, std::nan("")}) {
            try {
                basis_pursuit({u, y, bad});
                FAIL("expected an error");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::degenerate_config);
            }
        }
        try {
            basis_pursuit({u, Vec(Vec::Zero(5)), 1.0});
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::index_mismatch);
        }
        try {
            basis_pursuit({Mat(4, 0), y, 0.0});
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::infeasible_epsilon);
        }
        SparseCode empty_ok = basis_pursuit({Mat(4, 0), Vec(Vec::Zero(4)), 0.0});
        CHECK(empty_ok.coefficients.size() == 0);
        CHECK(empty_ok.residual_norm == 0.0);
    }

    TEST_CASE("oversized budgets collapse the accuracy table to the zero code") {
        CellMultiComplex X = build_complex(fixtures::f3());
        Mat signals = gen_gaussian_signals(61, 5, 61);
        double eps = 20.0 * std::sqrt(61.0);
        std::vector<SparsityCurveRow> rows = sparsity_curve(X, 2, 3, signals, eps);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].support == 0);
        CHECK(rows[0].n_mono == 5);
        CHECK(rows[0].n_cross == 5);
        CHECK(rows[0].nmse_mono == doctest::Approx(1.0));
        CHECK(rows[0].nmse_cross == doctest::Approx(1.0));
    }

    TEST_CASE("signals with no cross-edge energy cannot be scored") {
        CellMultiComplex X = build_complex(fixtures::f3());
        Mat signals = Mat::Zero(61, 1);
        signals(0, 0) = 1.0;  // flattened order starts with intra edges
        std::vector<int> mask = X.cross_edge_positions(2, 3);
        for (int p : mask) REQUIRE(p != 0);
        try {
            sparsity_curve(X, 2, 3, signals, 0.1);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::zero_reference);
        }
    }

    TEST_CASE("swept envelopes are complete, anchored, and non-increasing") {
        CellMultiComplex X = build_complex(fixtures::f3());
        Mat signals = gen_gaussian_signals(61, 6, 71);
        std::vector<double> fractions = {0.02, 0.1, 0.3, 0.5, 0.9, 2.0};
        std::vector<SparsityEnvelopeRow> rows =
            sparsity_sweep(X, 2, 3, signals, fractions, Perspective::from_ell);
        REQUIRE(rows.size() == 9);  // supports 0..8 on the cross axis
        CHECK(rows[0].support == 0);
        CHECK(rows[0].nmse_mono == doctest::Approx(1.0));
        CHECK(rows[0].nmse_cross == doctest::Approx(1.0));
        for (size_t k = 0; k < rows.size(); ++k) {
            CHECK(rows[k].support == static_cast<int>(k));
            CHECK(rows[k].n_trials == 6);
            CHECK(std::isfinite(rows[k].nmse_mono));
            CHECK(std::isfinite(rows[k].nmse_cross));
            if (k > 0) {
                CHECK(rows[k].nmse_mono <= rows[k - 1].nmse_mono + 1e-12);
                CHECK(rows[k].nmse_cross <= rows[k - 1].nmse_cross + 1e-12);
            }
        }
        // an exact-fit budget is always present, so the right end reaches zero
        CHECK(rows[8].nmse_cross < 1e-8);
    }

    TEST_CASE("default budget grids cover both ends and stay sorted") {
        std::vector<double> grid = default_fraction_grid();
        REQUIRE(!grid.empty());
        CHECK(grid.front() == 0.0);
        CHECK(std::is_sorted(grid.begin(), grid.end()));
        CHECK(grid.back() >= 1.0);
        std::vector<double> scaled = default_fraction_grid(2.76);
        CHECK(std::is_sorted(scaled.begin(), scaled.end()));
        CHECK(scaled.back() >= 2.0);
        CHECK(scaled.size() > grid.size());
    }
}
