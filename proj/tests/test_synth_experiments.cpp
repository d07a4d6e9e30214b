#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"

#include "cmx/complex.hpp"
#include "cmx/experiments.hpp"
#include "cmx/fixtures.hpp"
#include "cmx/incidence.hpp"
#include "cmx/io.hpp"
#include "cmx/laplacian.hpp"
#include "cmx/learn.hpp"
#include "cmx/signal.hpp"
#include "cmx/spectral.hpp"
#include "support.hpp"

using namespace cmx;

namespace {

RandomCmcConfig small_config(std::uint64_t seed) {
    RandomCmcConfig cfg;
    cfg.layer_nodes = {7, 6};
    cfg.intra_edge_prob = 0.5;
    cfg.cross_edge_prob = 0.4;
    cfg.seed = seed;
    return cfg;
}

int component_count(const CellMultiComplex& X, LayerId layer) {
    std::set<int> labels;
    for (const auto& [node, comp] : X.intra_components(layer)) labels.insert(comp);
    return static_cast<int>(labels.size());
}

}  // namespace

TEST_SUITE("synth-experiments") {
    TEST_CASE("generated complexes are reproducible from their seed") {
        CellMultiComplex a = random_cmc(small_config(42));
        CellMultiComplex b = random_cmc(small_config(42));
        CellMultiComplex c = random_cmc(small_config(43));
        CHECK(complex_to_json(a.spec()) == complex_to_json(b.spec()));
        CHECK(complex_to_json(a.spec()) != complex_to_json(c.spec()));
    }

    TEST_CASE("a zero fill rate leaves every wedge open") {
        RandomCmcConfig cfg = small_config(7);
        cfg.fill_prob = 0.0;
        CellMultiComplex X = random_cmc(cfg);
        for (const auto& [type, count] : cross_type_counts(X, 1, 2)) {
            if (type != std::pair<int, int>{0, 0}) {
                CHECK(count == 0);
            }
        }
    }

    TEST_CASE("without cross-edges the flattened complex is a disjoint union") {
        RandomCmcConfig cfg = small_config(11);
        cfg.cross_edge_prob = 0.0;
        cfg.require_cross = false;
        cfg.intra_edge_prob = 0.9;
        CellMultiComplex X = random_cmc(cfg);
        CHECK(X.cell_count(1, 2, 0, 0) == 0);
        int expected = component_count(X, 1) + component_count(X, 2);
        MonoLaplacians lap = hodge_laplacians(X);
        CHECK(kernel_dimension(eig_sym(lap.l0)) == expected);

        cfg.require_cross = true;
        try {
            random_cmc(cfg);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::degenerate_config);
        }
    }

    TEST_CASE("random complexes build cleanly and their boundaries compose to zero") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RandomCmcConfig cfg = small_config(seed);
            cfg.layer_nodes = {6, 7};
            cfg.fill_prob = 0.7;
            cfg.intra_fill_prob = 0.5;
            CellMultiComplex X = random_cmc(cfg);
            CHECK(exact_product(mono_b1(X), mono_b2(X)).isZero());
            CHECK(exact_product(cross_boundary_from_ell(X, 1, 2, 0, 0),
                                cross_boundary_from_ell(X, 1, 2, 1, 0))
                      .isZero());
            CHECK(exact_product(cross_boundary_from_m(X, 1, 2, 0, 0),
                                cross_boundary_from_m(X, 1, 2, 0, 1))
                      .isZero());
        }
    }

    TEST_CASE("gaussian draws are standardized and prefix-stable") {
        Mat wide = gen_gaussian_signals(400, 40, 99);
        CHECK(std::abs(wide.mean()) < 0.05);
        double var = (wide.array() - wide.mean()).square().mean();
        CHECK(var == doctest::Approx(1.0).epsilon(0.05));
        // adding trials must not disturb earlier columns
        Mat prefix = gen_gaussian_signals(400, 7, 99);
        CHECK((wide.leftCols(7) - prefix).norm() == 0.0);
        // distinct trials differ
        CHECK((wide.col(0) - wide.col(1)).norm() > 1e-3);
    }

    TEST_CASE("model signals decompose exactly into their drawn parts") {
        CellMultiComplex X = build_complex(fixtures::f3());
        CrossHodgeOperators ops = cross_hodge_operators(X, 2, 3, Perspective::from_m);
        CrossLaplacian lap = cross_laplacian(X, 2, 3, 0, 0, Perspective::from_m);
        Mat kernel = kernel_basis(lap.total);

        CrossSignalBatch batch = gen_hodge_signals(ops, kernel, HodgeModelSigma{}, 6, 3);
        CHECK((batch.signals - batch.irrotational - batch.solenoidal - batch.harmonic).norm() <
              1e-12);
        for (int t = 0; t < 6; ++t) {
            CHECK(std::abs(batch.irrotational.col(t).dot(batch.solenoidal.col(t))) < 1e-10);
            CHECK(std::abs(batch.irrotational.col(t).dot(batch.harmonic.col(t))) < 1e-10);
            CHECK(std::abs(batch.solenoidal.col(t).dot(batch.harmonic.col(t))) < 1e-10);
        }
        CrossSignalBatch again = gen_hodge_signals(ops, kernel, HodgeModelSigma{}, 6, 3);
        CHECK((batch.signals - again.signals).norm() == 0.0);

        HodgeModelSigma no_harm;
        no_harm.harm = 0.0;
        CrossSignalBatch flat = gen_hodge_signals(ops, kernel, no_harm, 6, 3);
        CHECK(flat.harmonic.norm() == 0.0);
        CHECK((kernel.transpose() * flat.signals).norm() < 1e-10);
    }

    TEST_CASE("noise recovery runs are deterministic across modes and threads") {
        CellMultiComplex X = build_complex(fixtures::f3());
        std::vector<double> grid{0.0, 10.0};
        DenoiseReport serial = denoise_experiment(X, 2, 3, Perspective::from_m, 6, grid, 5,
                                                  HodgeModelSigma{}, ExecMode::serial, 1);
        DenoiseReport parallel = denoise_experiment(X, 2, 3, Perspective::from_m, 6, grid, 5,
                                                    HodgeModelSigma{}, ExecMode::parallel, 4);
        REQUIRE(serial.points.size() == 2);
        REQUIRE(parallel.points.size() == 2);
        for (size_t p = 0; p < 2; ++p) {
            CHECK(serial.points[p].nmse_cross_irr == parallel.points[p].nmse_cross_irr);
            CHECK(serial.points[p].nmse_cross_sol == parallel.points[p].nmse_cross_sol);
            CHECK(serial.points[p].nmse_mono_irr == parallel.points[p].nmse_mono_irr);
            CHECK(serial.points[p].nmse_mono_sol == parallel.points[p].nmse_mono_sol);
            CHECK(serial.points[p].std_cross_irr == parallel.points[p].std_cross_irr);
            CHECK(serial.points[p].trials == 6);
        }
    }

    TEST_CASE("scaling the shared noise scales every cross error exactly") {
        CellMultiComplex X = build_complex(fixtures::f3());
        std::vector<double> grid{0.0, 20.0};
        DenoiseReport report = denoise_experiment(X, 2, 3, Perspective::from_m, 8, grid, 17);
        REQUIRE(report.points.size() == 2);
        const DenoisePoint& loud = report.points[0];
        const DenoisePoint& quiet = report.points[1];
        CHECK(loud.snr_db == 0.0);
        CHECK(quiet.snr_db == 20.0);
        // the same noise field is rescaled per SNR point, and the estimators
        // are linear, so the 20 dB gap is exactly a factor of ten
        CHECK(loud.nmse_cross_irr / quiet.nmse_cross_irr == doctest::Approx(10.0).epsilon(1e-9));
        CHECK(loud.nmse_cross_sol / quiet.nmse_cross_sol == doctest::Approx(10.0).epsilon(1e-9));
        CHECK(loud.std_cross_irr / quiet.std_cross_irr == doctest::Approx(10.0).epsilon(1e-9));
        CHECK(loud.nmse_cross_irr > 0.0);

        try {
            denoise_experiment(X, 2, 3, Perspective::from_m, 0, grid, 17);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::degenerate_config);
        }
    }

    TEST_CASE("budget sweeps are deterministic and shrink with support") {
        CellMultiComplex X = build_complex(fixtures::f3());
        std::vector<double> fractions{0.05, 0.3, 0.8, 1.2};
        SparsityReport serial = sparsity_experiment(X, 2, 3, Perspective::from_ell, 4, fractions,
                                                    21, ExecMode::serial, 1);
        SparsityReport parallel = sparsity_experiment(X, 2, 3, Perspective::from_ell, 4, fractions,
                                                      21, ExecMode::parallel, 3);
        REQUIRE(serial.rows.size() == 9);
        REQUIRE(parallel.rows.size() == 9);
        for (size_t k = 0; k < serial.rows.size(); ++k) {
            CHECK(serial.rows[k].nmse_mono == parallel.rows[k].nmse_mono);
            CHECK(serial.rows[k].nmse_cross == parallel.rows[k].nmse_cross);
            if (k > 0) {
                CHECK(serial.rows[k].nmse_mono <= serial.rows[k - 1].nmse_mono + 1e-12);
                CHECK(serial.rows[k].nmse_cross <= serial.rows[k - 1].nmse_cross + 1e-12);
            }
        }
        CHECK(serial.rows[0].nmse_mono == doctest::Approx(1.0));
        // empty grid: the default budgets are filled in and recorded
        SparsityReport defaulted =
            sparsity_experiment(X, 2, 3, Perspective::from_ell, 2, {}, 21);
        CHECK(defaulted.fractions.size() > 20);
        CHECK(std::is_sorted(defaulted.fractions.begin(), defaulted.fractions.end()));
    }

    TEST_CASE("recovery corpora separate planted cells from open wedges") {
        CellMultiComplex X = build_complex(fixtures::f3());
        std::vector<CandidateCell> cands =
            enumerate_candidates(X, 2, 3, 2, Perspective::from_m);
        REQUIRE(cands.size() == 3);
        std::vector<int> planted{0, 2};
        Mat corpus =
            planted_learning_corpus(X, 2, 3, Perspective::from_m, cands, planted, 10, 31);
        CHECK(corpus.cols() == 10);

        SignedIncidenceMatrix low = cross_boundary_from_m(X, 2, 3, 0, 0);
        CHECK((low.real() * corpus).norm() < 1e-10);
        CHECK((cands[0].column.transpose() * corpus).norm() < 1e-10);
        CHECK((cands[2].column.transpose() * corpus).norm() < 1e-10);
        CHECK((cands[1].column.transpose() * corpus).norm() > 1e-3);
    }
}
