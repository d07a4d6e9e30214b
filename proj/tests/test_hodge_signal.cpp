#include <cmath>
#include <vector>

#include "doctest.h"

#include "cmx/complex.hpp"
#include "cmx/experiments.hpp"
#include "cmx/fixtures.hpp"
#include "cmx/laplacian.hpp"
#include "cmx/signal.hpp"
#include "cmx/spectral.hpp"
#include "support.hpp"

using namespace cmx;
using cmx::testsupport::rel_err;

namespace {

void check_split_invariants(const HodgeSplit& split, double tol = 1e-10) {
    double scale = std::max(1.0, split.input.norm());
    Vec sum = split.irrotational + split.solenoidal + split.harmonic;
    CHECK((sum - split.input).norm() / scale < tol);
    CHECK(std::abs(split.irrotational.dot(split.solenoidal)) / (scale * scale) < tol);
    CHECK(std::abs(split.irrotational.dot(split.harmonic)) / (scale * scale) < tol);
    CHECK(std::abs(split.solenoidal.dot(split.harmonic)) / (scale * scale) < tol);
}

}  // namespace

TEST_SUITE("hodge-signal") {
    TEST_CASE("worked two-edge splits on the smallest fixture") {
        CellMultiComplex X = build_complex(fixtures::tri());
        Vec parallel(2), opposed(2), mixed(2);
        parallel << 1, 1;
        opposed << 1, -1;
        mixed << 2, 0;

        HodgeSplit a = hodge_split_cross(X, 1, 2, Perspective::from_ell, parallel);
        CHECK(rel_err(a.irrotational, parallel) < 1e-12);
        CHECK(a.solenoidal.norm() < 1e-12);
        CHECK(a.harmonic.norm() < 1e-12);

        HodgeSplit b = hodge_split_cross(X, 1, 2, Perspective::from_ell, opposed);
        CHECK(b.irrotational.norm() < 1e-12);
        CHECK(rel_err(b.solenoidal, opposed) < 1e-12);
        CHECK(b.harmonic.norm() < 1e-12);

        HodgeSplit c = hodge_split_cross(X, 1, 2, Perspective::from_ell, mixed);
        CHECK(rel_err(c.irrotational, parallel) < 1e-12);
        CHECK(rel_err(c.solenoidal, opposed) < 1e-12);
        CHECK(c.harmonic.norm() < 1e-12);

        HodgeSplit z = hodge_split_cross(X, 1, 2, Perspective::from_ell, Vec::Zero(2));
        CHECK(z.irrotational.norm() == 0.0);
        CHECK(z.solenoidal.norm() == 0.0);
        CHECK(z.harmonic.norm() == 0.0);
    }

    TEST_CASE("splits are orthogonal and reconstruct on random cross signals") {
        CellMultiComplex X = build_complex(fixtures::f3());
        for (LayerId ell : {1, 2}) {
            for (Perspective p : {Perspective::from_ell, Perspective::from_m}) {
                Eigen::Index n = X.cross_edge_positions(ell, ell + 1).size();
                Mat signals = gen_gaussian_signals(n, 20, 77u + static_cast<unsigned>(ell));
                for (int t = 0; t < signals.cols(); ++t) {
                    HodgeSplit split = hodge_split_cross(X, ell, ell + 1, p, signals.col(t));
                    check_split_invariants(split);
                }
            }
        }
    }

    TEST_CASE("pure gradients and pure kernel vectors project cleanly") {
        CellMultiComplex X = build_complex(fixtures::f3());
        MonoHodgeOperators ops = mono_hodge_operators(X);
        Vec node_potential = gen_gaussian_signals(ops.b1.rows(), 1, 5).col(0);
        Vec gradient = ops.b1.transpose() * node_potential;
        HodgeSplit g = hodge_split(ops, gradient);
        CHECK(g.solenoidal.norm() / gradient.norm() < 1e-10);
        CHECK(g.harmonic.norm() / gradient.norm() < 1e-10);
        CHECK(rel_err(g.irrotational, gradient) < 1e-10);

        MonoLaplacians lap = hodge_laplacians(X);
        Mat kernel = kernel_basis(lap.l1);
        Vec h = kernel.col(0);
        HodgeSplit hs = hodge_split(ops, h);
        CHECK(hs.irrotational.norm() < 1e-10);
        CHECK(hs.solenoidal.norm() < 1e-10);
        CHECK(rel_err(hs.harmonic, h) < 1e-10);
    }

    TEST_CASE("flatten split agrees with spectral projectors of each half") {
        CellMultiComplex X = build_complex(fixtures::f3());
        MonoHodgeOperators ops = mono_hodge_operators(X);
        Vec y = gen_gaussian_signals(61, 1, 123).col(0);

        // independent route: range projectors assembled from the strictly
        // positive eigenspaces of B1^T B1 and B2 B2^T
        auto range_projector = [](const Mat& gram) {
            EigenDecomposition eig = eig_sym(gram);
            double lam_max = std::max(eig.eigenvalues.cwiseAbs().maxCoeff(), 1.0);
            Mat p = Mat::Zero(gram.rows(), gram.cols());
            for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
                if (eig.eigenvalues(i) > tol::zero_tol * lam_max) {
                    p += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).transpose();
                }
            }
            return p;
        };
        Mat p_irr = range_projector(ops.b1.transpose() * ops.b1);
        Mat p_sol = range_projector(ops.b2 * ops.b2.transpose());
        Vec por_irr = p_irr * y;
        Vec por_sol = p_sol * y;
        Vec por_harm = y - por_irr - por_sol;

        HodgeSplit split = hodge_split(ops, y);
        CHECK(rel_err(split.irrotational, por_irr) < 1e-9);
        CHECK(rel_err(split.solenoidal, por_sol) < 1e-9);
        CHECK(rel_err(split.harmonic, por_harm) < 1e-9);
    }

    TEST_CASE("divergence and curl of the worked two-edge signals") {
        CellMultiComplex X = build_complex(fixtures::tri());
        Vec parallel(2), opposed(2);
        parallel << 1, 1;
        opposed << -1, 1;
        Vec div = cross_divergence(X, 1, 2, Perspective::from_ell, parallel);
        REQUIRE(div.size() == 1);
        CHECK(div(0) == doctest::Approx(2.0));
        Vec curl = cross_curl(X, 1, 2, Perspective::from_ell, opposed);
        REQUIRE(curl.size() == 1);
        CHECK(curl(0) == doctest::Approx(2.0));
        CHECK(cross_curl(X, 1, 2, Perspective::from_ell, parallel).cwiseAbs().maxCoeff() <
              1e-12);
    }

    TEST_CASE("harmonic parts have zero divergence and curl") {
        CellMultiComplex X = build_complex(fixtures::f3());
        Mat signals = gen_gaussian_signals(8, 10, 31);
        for (int t = 0; t < signals.cols(); ++t) {
            HodgeSplit split =
                hodge_split_cross(X, 2, 3, Perspective::from_m, signals.col(t));
            double scale = std::max(1.0, signals.col(t).norm());
            CHECK(cross_divergence(X, 2, 3, Perspective::from_m, split.harmonic).norm() / scale <
                  1e-10);
            CHECK(cross_curl(X, 2, 3, Perspective::from_m, split.harmonic).norm() / scale < 1e-10);
            CHECK(cross_curl(X, 2, 3, Perspective::from_m, split.irrotational).norm() / scale <
                  1e-10);
            CHECK(cross_divergence(X, 2, 3, Perspective::from_m, split.solenoidal).norm() / scale <
                  1e-10);
        }
    }

    TEST_CASE("Fourier pairs are isometric round trips") {
        CellMultiComplex X = build_complex(fixtures::f3());
        MonoLaplacians lap = hodge_laplacians(X);
        EigenDecomposition eig = eig_sym(lap.l1);
        Vec y = gen_gaussian_signals(61, 1, 9).col(0);
        Vec coef = cft(eig, y);
        CHECK(std::abs(coef.norm() - y.norm()) / y.norm() < 1e-10);
        CHECK(rel_err(icft(eig, coef), y) < 1e-10);
        Vec unit = cft(eig, eig.eigenvectors.col(5));
        Vec expected = Vec::Zero(61);
        expected(5) = 1.0;
        CHECK((unit - expected).cwiseAbs().maxCoeff() < 1e-10);

        CrossLaplacian cl = cross_laplacian(X, 2, 3, 0, 0, Perspective::from_m);
        EigenDecomposition ceig = eig_sym(cl.total);
        Vec s = gen_gaussian_signals(8, 1, 10).col(0);
        CHECK(rel_err(icmc_ft(ceig, cmc_ft(ceig, s)), s) < 1e-10);
        CHECK(std::abs(cmc_ft(ceig, s).norm() - s.norm()) / s.norm() < 1e-10);
    }

    TEST_CASE("component estimates solve the constrained least-squares problem") {
        CellMultiComplex X = build_complex(fixtures::f3());
        for (Perspective p : {Perspective::from_ell, Perspective::from_m}) {
            CrossHodgeOperators ops = cross_hodge_operators(X, 2, 3, p);
            CrossLaplacian lap = cross_laplacian(X, 2, 3, 0, 0, p);
            Mat kernel = kernel_basis(lap.total);
            Mat ys = gen_gaussian_signals(8, 10, 55);
            for (int t = 0; t < ys.cols(); ++t) {
                Vec y = ys.col(t);
                HodgeSplit est = estimate_components(ops, y);
                check_split_invariants(est);

                // generic oracle: least squares over the stacked component basis
                Eigen::Index n0 = ops.b_low.rows(), n2 = ops.b_up.cols(),
                             nh = kernel.cols();
                Mat a(8, n0 + n2 + nh);
                a.leftCols(n0) = ops.b_low.transpose();
                a.middleCols(n0, n2) = ops.b_up;
                a.rightCols(nh) = kernel;
                Vec z = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
                CHECK(rel_err(est.irrotational, ops.b_low.transpose() * z.head(n0)) < 1e-8);
                CHECK(rel_err(est.solenoidal, ops.b_up * z.segment(n0, n2)) < 1e-8);
                CHECK(rel_err(est.harmonic, kernel * z.tail(nh)) < 1e-8);

                // constraint residuals of the harmonic estimate
                CHECK((ops.b_low * est.harmonic).norm() < 1e-8 * std::max(1.0, y.norm()));
                CHECK((ops.b_up.transpose() * est.harmonic).norm() <
                      1e-8 * std::max(1.0, y.norm()));
            }
        }
    }

    TEST_CASE("noiseless model observations are recovered exactly") {
        CellMultiComplex X = build_complex(fixtures::f3());
        CrossHodgeOperators ops = cross_hodge_operators(X, 2, 3, Perspective::from_m);
        CrossLaplacian lap = cross_laplacian(X, 2, 3, 0, 0, Perspective::from_m);
        CrossSignalBatch batch =
            gen_hodge_signals(ops, kernel_basis(lap.total), HodgeModelSigma{}, 10, 4);
        for (int t = 0; t < 10; ++t) {
            HodgeSplit est = estimate_components(ops, batch.signals.col(t));
            CHECK(nmse(est.irrotational, Vec(batch.irrotational.col(t))) < 1e-8);
            CHECK(nmse(est.solenoidal, Vec(batch.solenoidal.col(t))) < 1e-8);
            CHECK(nmse(est.harmonic, Vec(batch.harmonic.col(t))) < 1e-8);
        }
    }

    TEST_CASE("relative error scores the canonical cases") {
        Vec truth(3);
        truth << 1, 2, 2;
        CHECK(nmse(truth, truth) == 0.0);
        CHECK(nmse(Vec(Vec::Zero(3)), truth) == 1.0);
        CHECK(nmse(Vec(2.0 * truth), truth) == doctest::Approx(1.0));
        try {
            nmse(truth, Vec(Vec::Zero(3)));
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::zero_reference);
        }
    }

    TEST_CASE("mismatched signal lengths are rejected") {
        CellMultiComplex X = build_complex(fixtures::tri());
        try {
            hodge_split_cross(X, 1, 2, Perspective::from_ell, Vec::Zero(5));
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::index_mismatch);
        }
    }
}
