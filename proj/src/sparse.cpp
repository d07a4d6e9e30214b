#include "cmx/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cmx/laplacian.hpp"
#include "cmx/parallel.hpp"
#include "cmx/signal.hpp"
#include "cmx/spectral.hpp"

namespace cmx {

namespace {

bool columns_orthonormal(const Mat& u) {
    if (u.cols() == 0) return true;
    Mat gram = u.transpose() * u;
    gram.diagonal().array() -= 1.0;
    return gram.cwiseAbs().maxCoeff() <= 1e-8;
}

std::vector<Eigen::Index> support_of(const Vec& c) {
    std::vector<Eigen::Index> out;
    if (c.size() == 0) return out;
    double peak = c.cwiseAbs().maxCoeff();
    if (peak == 0.0) return out;
    double floor = tol::support_tol * peak;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (std::abs(c(i)) > floor) out.push_back(i);
    }
    return out;
}

SparseCode finish_code(const Mat& u, const Vec& y, Vec c, double threshold) {
    SparseCode code;
    code.coefficients = std::move(c);
    code.support = support_of(code.coefficients);
    code.residual_norm = (y - u * code.coefficients).norm();
    code.objective = code.coefficients.cwiseAbs().sum();
    code.threshold = threshold;
    return code;
}

/// Exact path for orthonormal dictionaries. The constraint splits as
/// ||y - Uc||^2 = ||c - c0||^2 + ||off||^2 with c0 = U^T y, so the problem
/// reduces to min ||c||_1 s.t. ||c - c0|| <= rho, solved by soft-thresholding
/// c0 at the smallest lambda with sum_i min(|c0_i|, lambda)^2 = rho^2.
SparseCode basis_pursuit_orthonormal(const Mat& u, const Vec& y, double eps) {
    Vec c0 = u.transpose() * y;
    double off2 = (y - u * c0).squaredNorm();
    double off = std::sqrt(off2);
    if (eps < off - 1e-12 * (1.0 + y.norm())) {
        throw Error(ErrorCode::infeasible_epsilon,
                    "basis_pursuit: budget " + std::to_string(eps) +
                        " below the off-subspace residual " + std::to_string(off));
    }
    double rho2 = std::max(eps * eps - off2, 0.0);
    double rho = std::sqrt(rho2);
    Eigen::Index n = c0.size();
    if (rho >= c0.norm()) {
        return finish_code(u, y, Vec::Zero(n), c0.size() ? c0.cwiseAbs().maxCoeff() : 0.0);
    }
    std::vector<double> a(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) a[static_cast<size_t>(i)] = std::abs(c0(i));
    std::sort(a.begin(), a.end());
    double lambda = 0.0;
    double prefix = 0.0;  // sum of a_i^2 for the entries below the current segment
    for (Eigen::Index j = 0; j < n; ++j) {
        double lo = j == 0 ? 0.0 : a[static_cast<size_t>(j - 1)];
        double hi = a[static_cast<size_t>(j)];
        double denom = static_cast<double>(n - j);
        double lam2 = (rho2 - prefix) / denom;
        if (lam2 >= 0.0) {
            double lam = std::sqrt(lam2);
            if (lam >= lo - 1e-12 * (1.0 + lo) && lam <= hi + 1e-12 * (1.0 + hi)) {
                lambda = std::clamp(lam, lo, hi);
                break;
            }
        }
        prefix += hi * hi;
    }
    Vec c(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double mag = std::abs(c0(i)) - lambda;
        c(i) = mag > 0.0 ? (c0(i) > 0.0 ? mag : -mag) : 0.0;
    }
    return finish_code(u, y, std::move(c), lambda);
}

Vec soft_threshold(const Vec& v, double t) {
    Vec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double mag = std::abs(v(i)) - t;
        out(i) = mag > 0.0 ? (v(i) > 0.0 ? mag : -mag) : 0.0;
    }
    return out;
}

/// Accelerated proximal-gradient solve of the penalized form
/// min 0.5||y - Uc||^2 + lambda ||c||_1.
Vec lasso_fista(const Mat& u, const Vec& y, double lambda, double lipschitz) {
    Vec c = Vec::Zero(u.cols());
    Vec z = c;
    double t = 1.0;
    double step = 1.0 / lipschitz;
    for (int it = 0; it < 2000; ++it) {
        Vec grad = u.transpose() * (u * z - y);
        Vec next = soft_threshold(z - step * grad, lambda * step);
        double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        z = next + ((t - 1.0) / t_next) * (next - c);
        double move = (next - c).norm();
        c = std::move(next);
        t = t_next;
        if (move <= 1e-12 * (1.0 + c.norm())) break;
    }
    return c;
}

/// Fallback for general dictionaries: bisect the l1 penalty until the
/// penalized solution's residual meets the budget.
SparseCode basis_pursuit_general(const Mat& u, const Vec& y, double eps) {
    Vec c_ls = u.colPivHouseholderQr().solve(y);
    double r_min = (y - u * c_ls).norm();
    if (eps < r_min - 1e-9 * (1.0 + y.norm())) {
        throw Error(ErrorCode::infeasible_epsilon,
                    "basis_pursuit: budget " + std::to_string(eps) +
                        " below the attainable residual " + std::to_string(r_min));
    }
    double lipschitz = std::max((u.transpose() * u).operatorNorm(), 1e-12);
    double lam_hi = (u.transpose() * y).cwiseAbs().maxCoeff();
    double lam_lo = 0.0;
    Vec best = c_ls;
    for (int it = 0; it < 80; ++it) {
        double lam = 0.5 * (lam_lo + lam_hi);
        Vec c = lasso_fista(u, y, lam, lipschitz);
        double r = (y - u * c).norm();
        if (r <= eps) {
            best = c;
            lam_lo = lam;  // push toward the largest feasible penalty
        } else {
            lam_hi = lam;
        }
        if (lam_hi - lam_lo <= 1e-12 * (1.0 + lam_hi)) break;
    }
    return finish_code(u, y, std::move(best), 0.5 * (lam_lo + lam_hi));
}

Vec gather(const Vec& full, const std::vector<int>& pos) {
    Vec out(static_cast<Eigen::Index>(pos.size()));
    for (size_t i = 0; i < pos.size(); ++i) out(static_cast<Eigen::Index>(i)) = full(pos[i]);
    return out;
}

struct TrialOutcome {
    int support_mono = 0, support_cross = 0;
    double nmse_mono = 0.0, nmse_cross = 0.0;
};

struct SparsityContext {
    Mat u_mono;   // eigenbasis of the flattened L1
    Mat u_cross;  // eigenbasis of the total cross-Laplacian
    std::vector<int> mask;
    Eigen::Index n_edges = 0, n_cross = 0;
};

SparsityContext make_sparsity_context(const CellMultiComplex& X, LayerId ell, LayerId m,
                                      Perspective perspective) {
    SparsityContext ctx;
    MonoLaplacians mono = hodge_laplacians(X);
    ctx.u_mono = eig_sym(mono.l1).eigenvectors;
    CrossLaplacian cross = cross_laplacian(X, ell, m, 0, 0, perspective);
    ctx.u_cross = eig_sym(cross.total).eigenvectors;
    ctx.mask = X.cross_edge_positions(ell, m);
    ctx.n_edges = ctx.u_mono.rows();
    ctx.n_cross = static_cast<Eigen::Index>(ctx.mask.size());
    if (ctx.n_cross == 0) {
        throw Error(ErrorCode::degenerate_config,
                    "sparsity: layer pair (" + std::to_string(ell) + "," + std::to_string(m) +
                        ") has no cross-edges");
    }
    return ctx;
}

TrialOutcome run_trial(const SparsityContext& ctx, const Vec& signal, double epsilon) {
    Vec y_cross = gather(signal, ctx.mask);
    double ref = y_cross.norm();
    if (ref == 0.0) {
        throw Error(ErrorCode::zero_reference,
                    "sparsity_curve: trial has zero cross-edge restriction");
    }
    TrialOutcome out;
    SparseCode mono = basis_pursuit({ctx.u_mono, signal, epsilon});
    Vec recon_masked = gather(ctx.u_mono * mono.coefficients, ctx.mask);
    out.support_mono = static_cast<int>(mono.support.size());
    out.nmse_mono = (y_cross - recon_masked).norm() / ref;
    double eps_cross = scaled_epsilon(epsilon, static_cast<int>(ctx.n_cross),
                                      static_cast<int>(ctx.n_edges));
    SparseCode cross = basis_pursuit({ctx.u_cross, y_cross, eps_cross});
    out.support_cross = static_cast<int>(cross.support.size());
    out.nmse_cross = cross.residual_norm / ref;
    return out;
}

}  // namespace

SparseCode basis_pursuit(const BasisPursuitProblem& p) {
    if (!(p.epsilon >= 0.0) || !std::isfinite(p.epsilon)) {
        throw Error(ErrorCode::degenerate_config, "basis_pursuit: epsilon must be non-negative");
    }
    if (p.dictionary.rows() != p.observation.size()) {
        throw Error(ErrorCode::index_mismatch,
                    "basis_pursuit: dictionary has " + std::to_string(p.dictionary.rows()) +
                        " rows, observation has " + std::to_string(p.observation.size()));
    }
    if (p.dictionary.cols() == 0) {
        if (p.observation.norm() > p.epsilon + 1e-12 * (1.0 + p.observation.norm())) {
            throw Error(ErrorCode::infeasible_epsilon,
                        "basis_pursuit: empty dictionary cannot meet the budget");
        }
        return finish_code(p.dictionary, p.observation, Vec::Zero(0), 0.0);
    }
    // The zero code is optimal as soon as it is feasible: nothing has a
    // smaller l1 norm, and feasibility of c = 0 reads ||y|| <= eps directly
    // off the constraint.  Deciding this before dispatch keeps the boundary
    // eps = ||y|| exact instead of leaving it to rounding inside the solvers
    // (the orthonormal path would otherwise compare eps against ||U^T y||,
    // which differs from ||y|| by a few ulps).  The reported threshold is the
    // smallest l1 penalty whose solution is the zero vector.
    if (p.observation.norm() <= p.epsilon) {
        double lam0 = (p.dictionary.transpose() * p.observation).cwiseAbs().maxCoeff();
        return finish_code(p.dictionary, p.observation, Vec::Zero(p.dictionary.cols()), lam0);
    }
    if (columns_orthonormal(p.dictionary)) {
        return basis_pursuit_orthonormal(p.dictionary, p.observation, p.epsilon);
    }
    return basis_pursuit_general(p.dictionary, p.observation, p.epsilon);
}

double scaled_epsilon(double epsilon, int n_cross, int n_edges) {
    if (n_cross <= 0 || n_edges <= 0) {
        throw Error(ErrorCode::degenerate_config, "scaled_epsilon: counts must be positive");
    }
    if (!(epsilon >= 0.0)) {
        throw Error(ErrorCode::degenerate_config, "scaled_epsilon: epsilon must be non-negative");
    }
    return epsilon * static_cast<double>(n_cross) / static_cast<double>(n_edges);
}

std::vector<SparsityCurveRow> sparsity_curve(const CellMultiComplex& X, LayerId ell, LayerId m,
                                             const Mat& edge_signals, double epsilon,
                                             Perspective perspective) {
    SparsityContext ctx = make_sparsity_context(X, ell, m, perspective);
    if (edge_signals.rows() != ctx.n_edges) {
        throw Error(ErrorCode::index_mismatch, "sparsity_curve: signals must live on the edge space");
    }
    struct Bin {
        double sum_mono = 0.0, sum_cross = 0.0;
        int n_mono = 0, n_cross = 0;
    };
    std::map<int, Bin> bins;
    for (Eigen::Index t = 0; t < edge_signals.cols(); ++t) {
        TrialOutcome o = run_trial(ctx, edge_signals.col(t), epsilon);
        Bin& bm = bins[o.support_mono];
        bm.sum_mono += o.nmse_mono;
        bm.n_mono += 1;
        Bin& bc = bins[o.support_cross];
        bc.sum_cross += o.nmse_cross;
        bc.n_cross += 1;
    }
    std::vector<SparsityCurveRow> rows;
    for (const auto& [support, bin] : bins) {
        SparsityCurveRow row;
        row.support = support;
        row.n_mono = bin.n_mono;
        row.n_cross = bin.n_cross;
        row.nmse_mono =
            bin.n_mono ? bin.sum_mono / bin.n_mono : std::numeric_limits<double>::quiet_NaN();
        row.nmse_cross =
            bin.n_cross ? bin.sum_cross / bin.n_cross : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
    }
    return rows;
}

std::vector<SparsityEnvelopeRow> sparsity_sweep(const CellMultiComplex& X, LayerId ell, LayerId m,
                                                const Mat& edge_signals,
                                                const std::vector<double>& epsilon_fractions,
                                                Perspective perspective, ExecMode mode,
                                                int threads) {
    SparsityContext ctx = make_sparsity_context(X, ell, m, perspective);
    if (edge_signals.rows() != ctx.n_edges) {
        throw Error(ErrorCode::index_mismatch, "sparsity_sweep: signals must live on the edge space");
    }
    std::vector<double> fractions = epsilon_fractions;
    // The envelope needs the two extremes: a budget large enough that both
    // solvers return the zero code (the cross budget is scaled down by
    // n_cross/n_edges, hence the n_edges/n_cross factor) and an exact-fit
    // budget anchoring the right end.
    double top = std::max(1.0, static_cast<double>(ctx.n_edges) / static_cast<double>(ctx.n_cross));
    if (std::none_of(fractions.begin(), fractions.end(), [top](double f) { return f >= top; })) {
        fractions.push_back(top);
    }
    if (std::none_of(fractions.begin(), fractions.end(), [](double f) { return f == 0.0; })) {
        fractions.push_back(0.0);
    }
    std::sort(fractions.begin(), fractions.end());
    for (double f : fractions) {
        if (!(f >= 0.0) || !std::isfinite(f)) {
            throw Error(ErrorCode::degenerate_config, "sparsity_sweep: fractions must be >= 0");
        }
    }

    const int n_trials = static_cast<int>(edge_signals.cols());
    const int k_max = static_cast<int>(ctx.n_cross);
    const double inf = std::numeric_limits<double>::infinity();
    // Per-trial envelopes, filled in parallel and reduced serially in trial
    // order so results do not depend on the thread count.
    std::vector<std::vector<double>> env_mono(static_cast<size_t>(n_trials)),
        env_cross(static_cast<size_t>(n_trials));
    std::vector<std::string> failures(static_cast<size_t>(n_trials));

    run_trials(n_trials, mode, threads, [&](int t) {
        try {
            std::vector<double> em(static_cast<size_t>(k_max) + 1, inf),
                ec(static_cast<size_t>(k_max) + 1, inf);
            Vec signal = edge_signals.col(t);
            double base = signal.norm();
            for (double f : fractions) {
                TrialOutcome o = run_trial(ctx, signal, f * base);
                // A code only witnesses support levels at or above its own
                // size; codes larger than the common axis are dropped (the
                // edge-space code may use up to n_edges atoms).
                if (o.support_mono <= k_max) {
                    double& slot = em[static_cast<size_t>(o.support_mono)];
                    slot = std::min(slot, o.nmse_mono);
                }
                if (o.support_cross <= k_max) {
                    double& slot = ec[static_cast<size_t>(o.support_cross)];
                    slot = std::min(slot, o.nmse_cross);
                }
            }
            for (int k = 1; k <= k_max; ++k) {
                em[static_cast<size_t>(k)] =
                    std::min(em[static_cast<size_t>(k)], em[static_cast<size_t>(k - 1)]);
                ec[static_cast<size_t>(k)] =
                    std::min(ec[static_cast<size_t>(k)], ec[static_cast<size_t>(k - 1)]);
            }
            env_mono[static_cast<size_t>(t)] = std::move(em);
            env_cross[static_cast<size_t>(t)] = std::move(ec);
        } catch (const Error& e) {
            failures[static_cast<size_t>(t)] = e.what();
        }
    });
    for (const std::string& msg : failures) {
        if (!msg.empty()) throw Error(ErrorCode::zero_reference, msg);
    }

    std::vector<SparsityEnvelopeRow> rows(static_cast<size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        SparsityEnvelopeRow& row = rows[static_cast<size_t>(k)];
        row.support = k;
        row.n_trials = n_trials;
        double sm = 0.0, sc = 0.0;
        for (int t = 0; t < n_trials; ++t) {
            sm += env_mono[static_cast<size_t>(t)][static_cast<size_t>(k)];
            sc += env_cross[static_cast<size_t>(t)][static_cast<size_t>(k)];
        }
        row.nmse_mono = n_trials ? sm / n_trials : 0.0;
        row.nmse_cross = n_trials ? sc / n_trials : 0.0;
    }
    return rows;
}

}  // namespace cmx
