#include <cmath>

#include "doctest.h"

#include "cmx/complex.hpp"
#include "cmx/fixtures.hpp"
#include "cmx/laplacian.hpp"
#include "cmx/spectral.hpp"

using namespace cmx;

namespace {

Mat random_sym(Eigen::Index n, unsigned seed) {
    std::srand(seed);
    Mat a = Mat::Random(n, n);
    return Mat(0.5 * (a + a.transpose()));
}

}  // namespace

TEST_SUITE("spectral-core") {
    TEST_CASE("eigenvalues come back ascending with orthonormal vectors") {
        Mat a = random_sym(12, 42);
        EigenDecomposition eig = eig_sym(a);
        for (Eigen::Index i = 1; i < eig.eigenvalues.size(); ++i) {
            CHECK(eig.eigenvalues(i) >= eig.eigenvalues(i - 1));
        }
        Mat gram = eig.eigenvectors.transpose() * eig.eigenvectors;
        CHECK((gram - Mat::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-10);
        Mat recon = eig.eigenvectors * eig.eigenvalues.asDiagonal() *
                    eig.eigenvectors.transpose();
        CHECK((recon - a).cwiseAbs().maxCoeff() < 1e-10);
    }

    TEST_CASE("decomposition is deterministic and sign-normalized") {
        Mat a = random_sym(9, 7);
        EigenDecomposition e1 = eig_sym(a);
        EigenDecomposition e2 = eig_sym(a);
        CHECK(e1.eigenvalues == e2.eigenvalues);
        CHECK(e1.eigenvectors == e2.eigenvectors);
        for (Eigen::Index c = 0; c < e1.eigenvectors.cols(); ++c) {
            Vec v = e1.eigenvectors.col(c);
            double cut = 1e-12 * std::max(v.cwiseAbs().maxCoeff(), 1.0);
            Eigen::Index lead = 0;
            while (lead < v.size() && std::abs(v(lead)) <= cut) ++lead;
            REQUIRE(lead < v.size());
            CHECK(v(lead) > 0.0);
        }
    }

    TEST_CASE("asymmetric input is rejected") {
        Mat a = Mat::Zero(3, 3);
        a(0, 1) = 1.0;
        try {
            eig_sym(a);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::not_symmetric);
        }
    }

    TEST_CASE("kernel dimension counts the zero group relative to the spectrum") {
        Vec d(4);
        d << 0.0, 1e-12, 1e-3, 2.0;
        EigenDecomposition eig = eig_sym(Mat(d.asDiagonal()));
        CHECK(kernel_dimension(eig) == 2);  // 1e-12 < 1e-8 * 2.0
        CHECK(kernel_dimension(eig, 1e-1) == 3);
    }

    TEST_CASE("kernel basis spans the exact kernel of a graph Laplacian") {
        CellMultiComplex X = build_complex(fixtures::f3());
        MonoLaplacians lap = hodge_laplacians(X);
        Mat basis = kernel_basis(lap.l1);
        REQUIRE(basis.cols() == 2);  // frozen: dim ker L1 = 2
        CHECK((lap.l1 * basis).cwiseAbs().maxCoeff() < 1e-8);
        Mat gram = basis.transpose() * basis;
        CHECK((gram - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    }

    TEST_CASE("rank thresholds scale with the largest singular value") {
        Mat a = Mat::Zero(3, 2);
        a(0, 0) = 1.0;
        a(1, 1) = 1e-12;
        CHECK(numerical_rank(a) == 1);
        CHECK(numerical_rank(Mat::Zero(4, 4)) == 0);
        CHECK(numerical_rank(Mat::Identity(5, 5)) == 5);
    }

    TEST_CASE("pseudoinverse satisfies the Moore-Penrose identities") {
        Mat a(4, 3);
        a << 1, 0, 2,  //
            0, 1, 1,   //
            1, 1, 3,   //
            2, 0, 4;   // rank 2: col2 = col0 + col1 (scaled)
        Mat ap = pinv(a);
        CHECK((a * ap * a - a).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((ap * a * ap - ap).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(((a * ap) - (a * ap).transpose()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(((ap * a) - (ap * a).transpose()).cwiseAbs().maxCoeff() < 1e-9);
    }

    TEST_CASE("pseudoinverse of an orthogonal projector is itself") {
        Mat u(3, 1);
        u << 1, 2, 2;
        u /= 3.0;
        Mat proj = u * u.transpose();
        CHECK((pinv(proj) - proj).cwiseAbs().maxCoeff() < 1e-10);
    }
}
