#ifndef CMX_TESTS_SUPPORT_HPP
#define CMX_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cmx/complex.hpp"
#include "cmx/types.hpp"

namespace cmx::testsupport {

inline std::string fixture_path(const std::string& name) {
#ifdef CMX_FIXTURE_DIR
    return std::string(CMX_FIXTURE_DIR) + "/" + name;
#else
    return "fixtures/" + name;
#endif
}

// --- exact rank over GF(p) --------------------------------------------------
// For an integer matrix the rank over GF(p) is at most the rational rank, and
// equals it unless p divides every maximal nonzero minor.  Agreement across
// two large primes certifies the rational rank for the small incidence
// matrices used here.

inline int rank_mod_p(IMat m, std::int64_t p) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    std::vector<std::vector<std::int64_t>> a(static_cast<size_t>(rows),
                                             std::vector<std::int64_t>(static_cast<size_t>(cols)));
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = ((m(i, j) % p) + p) % p;

    auto mod_pow = [p](std::int64_t base, std::int64_t exp) {
        std::int64_t result = 1 % p;
        base %= p;
        while (exp > 0) {
            if (exp & 1) result = (__int128)result * base % p;
            base = (__int128)base * base % p;
            exp >>= 1;
        }
        return result;
    };

    int rank = 0;
    Eigen::Index col = 0;
    for (Eigen::Index row = 0; row < rows && col < cols; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index i = row; i < rows; ++i) {
            if (a[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(row)]);
        std::int64_t inv = mod_pow(a[static_cast<size_t>(row)][static_cast<size_t>(col)], p - 2);
        for (Eigen::Index i = row + 1; i < rows; ++i) {
            std::int64_t factor =
                (__int128)a[static_cast<size_t>(i)][static_cast<size_t>(col)] * inv % p;
            if (factor == 0) continue;
            for (Eigen::Index j = col; j < cols; ++j) {
                std::int64_t sub =
                    (__int128)factor * a[static_cast<size_t>(row)][static_cast<size_t>(j)] % p;
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (a[static_cast<size_t>(i)][static_cast<size_t>(j)] - sub % p + p) % p;
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

/// Rational rank of a small integer matrix, certified by agreement over two
/// large primes.  Returns -1 when the primes disagree (never expected here).
inline int exact_rank(const IMat& m) {
    int r1 = rank_mod_p(m, 2147483647LL);       // 2^31 - 1
    int r2 = rank_mod_p(m, 2305843009213693951LL);  // 2^61 - 1
    return r1 == r2 ? r1 : -1;
}

// --- exhaustive basis-pursuit oracle ---------------------------------------
// Solves  min ||c||_1  s.t.  ||y - U c|| <= eps  for an orthonormal square
// dictionary by enumerating the sign pattern (face) of the optimum.  In the
// coefficient domain the problem is  min ||c||_1 s.t. ||c0 - c|| <= rho with
// c0 = U^T y and rho = eps (orthonormal U preserves norms).  On a fixed face
// {sign(c_i) = s_i, c_i = 0 for s_i = 0} the optimum shrinks c0 along the
// face's sign vector; the globally optimal face reproduces the optimum
// exactly, so the minimum over all 3^n faces of the feasible candidates is
// the global optimum.

struct OracleSolution {
    Vec coefficients;
    double objective = std::numeric_limits<double>::infinity();
    bool feasible = false;
};

inline OracleSolution bp_oracle(const Vec& c0, double eps) {
    const int n = static_cast<int>(c0.size());
    OracleSolution best;
    if (eps >= c0.norm() - 1e-15) {
        best.coefficients = Vec::Zero(n);
        best.objective = 0.0;
        best.feasible = true;
        return best;
    }
    std::vector<int> signs(static_cast<size_t>(n), -1);
    const long long total = static_cast<long long>(std::pow(3.0, n) + 0.5);
    for (long long code = 0; code < total; ++code) {
        long long rest = code;
        for (int i = 0; i < n; ++i) {
            signs[static_cast<size_t>(i)] = static_cast<int>(rest % 3) - 1;
            rest /= 3;
        }
        // Off-face coordinates are fixed at zero and contribute their whole
        // magnitude to the residual; infeasible faces are skipped.
        double off_sq = 0.0;
        double s_norm_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            if (signs[static_cast<size_t>(i)] == 0)
                off_sq += c0(i) * c0(i);
            else
                s_norm_sq += 1.0;
        }
        double r_sq = eps * eps - off_sq;
        if (r_sq < 0.0) continue;
        Vec c = Vec::Zero(n);
        double l1 = 0.0;
        bool ok = true;
        if (s_norm_sq > 0.0) {
            // Minimize sum_i s_i c_i (the l1 norm on this face) over the ball
            // ||c_S - c0_S|| <= r: shift c0_S against the face sign vector.
            double r = std::sqrt(r_sq);
            double shift = r / std::sqrt(s_norm_sq);
            for (int i = 0; i < n; ++i) {
                int s = signs[static_cast<size_t>(i)];
                if (s == 0) continue;
                c(i) = c0(i) - shift * static_cast<double>(s);
                if (c(i) * static_cast<double>(s) < 0.0) {
                    ok = false;  // left the face: this face's optimum lies elsewhere
                    break;
                }
                l1 += std::abs(c(i));
            }
        }
        if (!ok) continue;
        if (l1 < best.objective) {
            best.objective = l1;
            best.coefficients = c;
            best.feasible = true;
        }
    }
    return best;
}

// --- misc -------------------------------------------------------------------

inline double rel_err(const Vec& a, const Vec& b) {
    double scale = std::max(1.0, b.norm());
    return (a - b).norm() / scale;
}

}  // namespace cmx::testsupport

#endif  // CMX_TESTS_SUPPORT_HPP
