#include "cmx/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "cmx/laplacian.hpp"
#include "cmx/parallel.hpp"
#include "cmx/spectral.hpp"

namespace cmx {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Minimal counter-based stream: a splitmix64 state advanced per draw.
/// Normal deviates use Box-Muller on our own uniforms so the byte stream
/// depends only on the seed, not on the standard library's distributions.
class SplitStream {
public:
    explicit SplitStream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    double uniform() {  // in (0, 1)
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t state_;
};

SplitStream trial_stream(std::uint64_t master, std::uint64_t index) {
    return SplitStream(mix64(master ^ (kGolden * (index + 1))));
}

Vec gather(const Vec& full, const std::vector<int>& pos) {
    Vec out(static_cast<Eigen::Index>(pos.size()));
    for (size_t i = 0; i < pos.size(); ++i) out(static_cast<Eigen::Index>(i)) = full(pos[i]);
    return out;
}

Vec scatter(const Vec& part, const std::vector<int>& pos, Eigen::Index dim) {
    Vec out = Vec::Zero(dim);
    for (size_t i = 0; i < pos.size(); ++i) out(pos[i]) = part(static_cast<Eigen::Index>(i));
    return out;
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<size_t>(a)] = b;
        return true;
    }
};

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::degenerate_config,
                    std::string("random_cmc: ") + name + " must lie in [0, 1]");
    }
}

/// Wedge fills for one layer pair and perspective, drawn from the candidate
/// list with only pairings that stay acyclic per hub, so the accepted columns
/// are linearly independent.
void add_wedge_fills(ComplexSpec& spec, const CellMultiComplex& partial, LayerId ell, LayerId m,
                     Perspective perspective, double fill_prob, int p_max, SplitStream& rng,
                     int& counter) {
    std::vector<CandidateCell> candidates =
        enumerate_candidates(partial, ell, m, p_max, perspective);
    // Per hub, pair structure over its cross-edges must stay a forest.
    std::map<std::string, DisjointSets> forests;
    std::map<std::string, std::map<std::string, int>> edge_slots;
    for (const CandidateCell& c : candidates) {
        auto& slots = edge_slots[c.hub];
        for (const std::string& e : {c.edge_a, c.edge_b}) {
            if (!slots.count(e)) {
                int next = static_cast<int>(slots.size());
                slots[e] = next;
            }
        }
    }
    for (auto& [hub, slots] : edge_slots) {
        forests.emplace(hub, DisjointSets(static_cast<int>(slots.size())));
    }
    for (const CandidateCell& c : candidates) {
        auto& forest = forests.at(c.hub);
        auto& slots = edge_slots.at(c.hub);
        int sa = slots.at(c.edge_a), sb = slots.at(c.edge_b);
        if (forest.find(sa) == forest.find(sb)) continue;  // would repeat a cycle
        if (!rng.bernoulli(fill_prob)) continue;
        forest.unite(sa, sb);
        ComplexSpec::TwoCell cell;
        cell.ell = ell;
        cell.m = m;
        cell.id = (perspective == Perspective::from_ell ? "w" : "v") + std::to_string(ell) + "_" +
                  std::to_string(m) + "_" + std::to_string(counter++);
        cell.boundary.push_back({c.edge_a, +1});
        cell.boundary.push_back({c.edge_b, -1});
        for (const auto& [edge_id, sign] : c.intra_path) {
            cell.boundary.push_back({edge_id, sign});
        }
        spec.two_cells.push_back(std::move(cell));
    }
}

double sample_std(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

}  // namespace

CellMultiComplex random_cmc(const RandomCmcConfig& cfg) {
    check_probability(cfg.intra_edge_prob, "intra_edge_prob");
    check_probability(cfg.cross_edge_prob, "cross_edge_prob");
    check_probability(cfg.fill_prob, "fill_prob");
    check_probability(cfg.intra_fill_prob, "intra_fill_prob");
    if (cfg.layer_nodes.empty()) {
        throw Error(ErrorCode::degenerate_config, "random_cmc: need at least one layer");
    }
    for (int n : cfg.layer_nodes) {
        if (n <= 0) {
            throw Error(ErrorCode::degenerate_config, "random_cmc: layers need at least one node");
        }
    }
    SplitStream rng = trial_stream(cfg.seed, 0);
    ComplexSpec spec;
    int n_layers = static_cast<int>(cfg.layer_nodes.size());
    auto node_id = [](LayerId layer, int i) {
        return "n" + std::to_string(layer) + "_" + std::to_string(i);
    };
    for (int l = 1; l <= n_layers; ++l) {
        ComplexSpec::Layer layer;
        layer.id = l;
        for (int i = 0; i < cfg.layer_nodes[static_cast<size_t>(l - 1)]; ++i) {
            layer.nodes.push_back(node_id(l, i));
        }
        spec.layers.push_back(std::move(layer));
    }
    for (int l = 1; l <= n_layers; ++l) {
        int n = cfg.layer_nodes[static_cast<size_t>(l - 1)];
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (!rng.bernoulli(cfg.intra_edge_prob)) continue;
                spec.intra_edges.push_back({l,
                                            "e" + std::to_string(l) + "_" + std::to_string(i) +
                                                "_" + std::to_string(j),
                                            node_id(l, i), node_id(l, j)});
            }
        }
    }
    for (int l = 1; l < n_layers; ++l) {
        int n_a = cfg.layer_nodes[static_cast<size_t>(l - 1)];
        int n_b = cfg.layer_nodes[static_cast<size_t>(l)];
        bool any = false;
        for (int i = 0; i < n_a; ++i) {
            for (int j = 0; j < n_b; ++j) {
                if (!rng.bernoulli(cfg.cross_edge_prob)) continue;
                spec.cross_edges.push_back({l, l + 1,
                                            "x" + std::to_string(l) + "_" + std::to_string(i) +
                                                "_" + std::to_string(j),
                                            node_id(l, i), node_id(l + 1, j)});
                any = true;
            }
        }
        if (cfg.require_cross && !any) {
            throw Error(ErrorCode::degenerate_config,
                        "random_cmc: layer pair (" + std::to_string(l) + "," +
                            std::to_string(l + 1) + ") received no cross-edges");
        }
    }

    // Triangle fills inside each layer, over the edges actually generated.
    std::map<std::pair<std::string, std::string>, std::string> edge_of;
    for (const auto& e : spec.intra_edges) {
        edge_of[{e.tail, e.head}] = e.id;
    }
    int tri_counter = 0;
    for (int l = 1; l <= n_layers; ++l) {
        int n = cfg.layer_nodes[static_cast<size_t>(l - 1)];
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                auto eij = edge_of.find({node_id(l, i), node_id(l, j)});
                if (eij == edge_of.end()) continue;
                for (int k = j + 1; k < n; ++k) {
                    auto ejk = edge_of.find({node_id(l, j), node_id(l, k)});
                    auto eik = edge_of.find({node_id(l, i), node_id(l, k)});
                    if (ejk == edge_of.end() || eik == edge_of.end()) continue;
                    if (!rng.bernoulli(cfg.intra_fill_prob)) continue;
                    ComplexSpec::TwoCell cell;
                    cell.layer = l;
                    cell.id = "t" + std::to_string(l) + "_" + std::to_string(tri_counter++);
                    cell.boundary.push_back({eij->second, +1});
                    cell.boundary.push_back({ejk->second, +1});
                    cell.boundary.push_back({eik->second, -1});
                    spec.two_cells.push_back(std::move(cell));
                }
            }
        }
    }

    // Wedge fills need path queries, so build the 1-skeleton first.
    CellMultiComplex partial = build_complex(spec);
    int fill_counter = 0;
    for (int l = 1; l < n_layers; ++l) {
        add_wedge_fills(spec, partial, l, l + 1, Perspective::from_ell, cfg.fill_prob, cfg.p_max,
                        rng, fill_counter);
        add_wedge_fills(spec, partial, l, l + 1, Perspective::from_m, cfg.fill_prob, cfg.p_max,
                        rng, fill_counter);
    }
    return build_complex(spec);
}

Mat gen_gaussian_signals(Eigen::Index dim, int m_trials, std::uint64_t seed) {
    Mat out(dim, m_trials);
    for (int t = 0; t < m_trials; ++t) {
        SplitStream s = trial_stream(seed, static_cast<std::uint64_t>(t) + 1);
        for (Eigen::Index i = 0; i < dim; ++i) out(i, t) = s.normal();
    }
    return out;
}

CrossSignalBatch gen_hodge_signals(const CrossHodgeOperators& ops, const Mat& harmonic_basis,
                                   const HodgeModelSigma& sigma, int m_trials,
                                   std::uint64_t seed) {
    Eigen::Index n = ops.b_low.cols();
    if (harmonic_basis.rows() != n && harmonic_basis.size() != 0) {
        throw Error(ErrorCode::index_mismatch,
                    "gen_hodge_signals: harmonic basis must live on the cross-edge space");
    }
    CrossSignalBatch batch;
    batch.signals = Mat::Zero(n, m_trials);
    batch.irrotational = Mat::Zero(n, m_trials);
    batch.solenoidal = Mat::Zero(n, m_trials);
    batch.harmonic = Mat::Zero(n, m_trials);
    for (int t = 0; t < m_trials; ++t) {
        SplitStream s = trial_stream(seed, static_cast<std::uint64_t>(t) + 1);
        Vec z0(ops.b_low.rows());
        for (Eigen::Index i = 0; i < z0.size(); ++i) z0(i) = sigma.irr * s.normal();
        Vec z2(ops.b_up.cols());
        for (Eigen::Index i = 0; i < z2.size(); ++i) z2(i) = sigma.sol * s.normal();
        Vec ch(harmonic_basis.cols());
        for (Eigen::Index i = 0; i < ch.size(); ++i) ch(i) = sigma.harm * s.normal();
        batch.irrotational.col(t) = ops.b_low.transpose() * z0;
        batch.solenoidal.col(t) = ops.b_up * z2;
        if (harmonic_basis.size() != 0) batch.harmonic.col(t) = harmonic_basis * ch;
        batch.signals.col(t) =
            batch.irrotational.col(t) + batch.solenoidal.col(t) + batch.harmonic.col(t);
    }
    return batch;
}

DenoiseReport denoise_experiment(const CellMultiComplex& X, LayerId ell, LayerId m,
                                 Perspective perspective, int m_trials,
                                 const std::vector<double>& snr_db_grid, std::uint64_t seed,
                                 const HodgeModelSigma& sigma, ExecMode mode, int threads) {
    auto start = std::chrono::steady_clock::now();
    if (m_trials <= 0) {
        throw Error(ErrorCode::degenerate_config, "denoise_experiment: need at least one trial");
    }
    CrossHodgeOperators ops = cross_hodge_operators(X, ell, m, perspective);
    Eigen::Index n = ops.b_low.cols();
    if (n == 0) {
        throw Error(ErrorCode::degenerate_config, "denoise_experiment: pair has no cross-edges");
    }
    CrossLaplacian lap = cross_laplacian(X, ell, m, 0, 0, perspective);
    Mat harmonic = kernel_basis(lap.total);
    MonoHodgeOperators mono = mono_hodge_operators(X);
    std::vector<int> mask = X.cross_edge_positions(ell, m);
    Eigen::Index n_edges = static_cast<Eigen::Index>(mono.edge_ids.size());

    CrossSignalBatch batch = gen_hodge_signals(ops, harmonic, sigma, m_trials, seed);
    // One fixed noise field per trial over the whole flattened edge space;
    // every SNR point rescales it, so the comparison across SNR uses common
    // random numbers.  Both estimators see the same noisy measurements on the
    // cross-edges; the flattened estimator additionally measures the
    // remaining edges, whose true value in this scenario is zero.
    Mat noise = gen_gaussian_signals(n_edges, m_trials, seed ^ 0xD1B54A32D192ED03ULL);

    const int n_points = static_cast<int>(snr_db_grid.size());
    // per point x trial results, filled in parallel, reduced in trial order
    Mat r_cross_irr = Mat::Zero(n_points, m_trials), r_cross_sol = Mat::Zero(n_points, m_trials);
    Mat r_mono_irr = Mat::Zero(n_points, m_trials), r_mono_sol = Mat::Zero(n_points, m_trials);
    std::vector<std::string> failures(static_cast<size_t>(m_trials));

    run_trials(m_trials, mode, threads, [&](int t) {
        try {
            Vec s = batch.signals.col(t);
            Vec truth_irr = batch.irrotational.col(t);
            Vec truth_sol = batch.solenoidal.col(t);
            Vec g_full = noise.col(t);
            Vec g_cross = gather(g_full, mask);
            Vec s_full = scatter(s, mask, n_edges);
            double signal_power = s.squaredNorm() / static_cast<double>(n);
            for (int p = 0; p < n_points; ++p) {
                double snr_linear = std::pow(10.0, snr_db_grid[static_cast<size_t>(p)] / 10.0);
                double sigma_n = std::sqrt(signal_power / snr_linear);
                HodgeSplit cross = hodge_split(ops, s + sigma_n * g_cross);
                r_cross_irr(p, t) = nmse(cross.irrotational, truth_irr);
                r_cross_sol(p, t) = nmse(cross.solenoidal, truth_sol);
                HodgeSplit full = hodge_split(mono, s_full + sigma_n * g_full);
                r_mono_irr(p, t) = nmse(gather(full.irrotational, mask), truth_irr);
                r_mono_sol(p, t) = nmse(gather(full.solenoidal, mask), truth_sol);
            }
        } catch (const Error& e) {
            failures[static_cast<size_t>(t)] = e.what();
        }
    });
    for (const std::string& msg : failures) {
        if (!msg.empty()) throw Error(ErrorCode::zero_reference, msg);
    }

    DenoiseReport report;
    report.ell = ell;
    report.m = m;
    report.perspective = perspective;
    report.trials = m_trials;
    report.seed = seed;
    report.sigma = sigma;
    report.threads = threads;
    for (int p = 0; p < n_points; ++p) {
        DenoisePoint point;
        point.snr_db = snr_db_grid[static_cast<size_t>(p)];
        point.trials = m_trials;
        auto reduce = [m_trials, p](const Mat& r, double& mean_out, double& std_out) {
            std::vector<double> values(static_cast<size_t>(m_trials));
            double sum = 0.0;
            for (int t = 0; t < m_trials; ++t) {
                values[static_cast<size_t>(t)] = r(p, t);
                sum += r(p, t);
            }
            mean_out = sum / static_cast<double>(m_trials);
            std_out = sample_std(values, mean_out);
        };
        reduce(r_cross_irr, point.nmse_cross_irr, point.std_cross_irr);
        reduce(r_cross_sol, point.nmse_cross_sol, point.std_cross_sol);
        reduce(r_mono_irr, point.nmse_mono_irr, point.std_mono_irr);
        reduce(r_mono_sol, point.nmse_mono_sol, point.std_mono_sol);
        report.points.push_back(point);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<double> default_fraction_grid(double scale) {
    std::vector<double> grid{0.0};
    for (int i = 0; i <= 24; ++i) {
        grid.push_back(std::pow(10.0, -3.0 + 3.0 * static_cast<double>(i) / 24.0));
    }
    // The log grid jumps from 0.75 straight to 1.0; budgets in between are
    // the ones that produce small nonzero codes, so the envelope's
    // low-support bins get real witnesses.  They are added once per solver
    // scale: a budget fraction f of the full-signal norm reaches the
    // rescaled cross solver as roughly f / scale of its own signal norm.
    for (double f : {0.8, 0.85, 0.9, 0.95, 0.98}) {
        grid.push_back(f);
        if (scale != 1.0) grid.push_back(f * scale);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

SparsityReport sparsity_experiment(const CellMultiComplex& X, LayerId ell, LayerId m,
                                   Perspective perspective, int m_trials,
                                   std::vector<double> fractions, std::uint64_t seed,
                                   ExecMode mode, int threads) {
    auto start = std::chrono::steady_clock::now();
    if (m_trials <= 0) {
        throw Error(ErrorCode::degenerate_config, "sparsity_experiment: need at least one trial");
    }
    Eigen::Index n_edges = static_cast<Eigen::Index>(X.flat_edges().size());
    Eigen::Index n_cross = static_cast<Eigen::Index>(X.cross_edge_positions(ell, m).size());
    if (fractions.empty()) {
        double scale = n_cross > 0 ? std::sqrt(static_cast<double>(n_edges) /
                                               static_cast<double>(n_cross))
                                   : 1.0;
        fractions = default_fraction_grid(scale);
    }
    Mat signals = gen_gaussian_signals(n_edges, m_trials, seed);
    SparsityReport report;
    report.ell = ell;
    report.m = m;
    report.perspective = perspective;
    report.trials = m_trials;
    report.seed = seed;
    report.fractions = fractions;
    report.threads = threads;
    report.rows = sparsity_sweep(X, ell, m, signals, fractions, perspective, mode, threads);
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Mat planted_learning_corpus(const CellMultiComplex& X, LayerId ell, LayerId m,
                            Perspective perspective, const std::vector<CandidateCell>& candidates,
                            const std::vector<int>& planted, int m_trials, std::uint64_t seed) {
    CrossLaplacian lap = cross_laplacian(X, ell, m, 0, 0, perspective);
    Mat kernel = kernel_basis(lap.lower);
    Eigen::Index n = lap.lower.rows();
    Mat b_planted(n, static_cast<Eigen::Index>(planted.size()));
    for (size_t j = 0; j < planted.size(); ++j) {
        int idx = planted[j];
        if (idx < 0 || static_cast<size_t>(idx) >= candidates.size()) {
            throw Error(ErrorCode::index_mismatch, "planted_learning_corpus: bad planted index");
        }
        b_planted.col(static_cast<Eigen::Index>(j)) = candidates[static_cast<size_t>(idx)].column;
    }
    Mat pinv_planted = pinv(b_planted);
    // Every non-planted candidate must keep a component outside the planted
    // span, or its circulation could vanish too and recovery be ambiguous.
    for (size_t k = 0; k < candidates.size(); ++k) {
        if (std::find(planted.begin(), planted.end(), static_cast<int>(k)) != planted.end()) {
            continue;
        }
        Vec b = candidates[k].column;
        Vec residual = b - b_planted * (pinv_planted * b);
        if (residual.norm() < 1e-9) {
            throw Error(ErrorCode::degenerate_config,
                        "planted_learning_corpus: candidate " + std::to_string(k) +
                            " lies in the planted span");
        }
    }
    Mat corpus(n, m_trials);
    for (int t = 0; t < m_trials; ++t) {
        SplitStream s = trial_stream(seed, static_cast<std::uint64_t>(t) + 1);
        Vec z(kernel.cols());
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = s.normal();
        Vec x = kernel * z;
        if (planted.size() > 0) {
            x -= b_planted * (pinv_planted * x);
        }
        corpus.col(t) = x;
    }
    return corpus;
}

}  // namespace cmx
