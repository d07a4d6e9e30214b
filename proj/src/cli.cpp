#include "cmx/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmx/complex.hpp"
#include "cmx/experiments.hpp"
#include "cmx/io.hpp"
#include "cmx/laplacian.hpp"
#include "cmx/learn.hpp"
#include "cmx/signal.hpp"
#include "cmx/sparse.hpp"
#include "cmx/spectral.hpp"
#include "cmx/types.hpp"

namespace fs = std::filesystem;

namespace cmx {
namespace {

// Shared option storage for all subcommands; only the options registered on
// the chosen subcommand are ever read.
struct Options {
    std::string complex_path;
    std::string signals_path;
    std::string out_dir;
    std::vector<int> layers;       // --layers ell,m
    std::vector<int> orders{0, 0};  // --orders k,n
    std::string from = "ell";      // --from {ell,m}
    double epsilon = 0.0;
    int gamma = 0;
    double tau = 0.0;
    bool tau_set = false;
    double eta_threshold = 0.05;
    int p_max = 2;
    std::vector<double> snr_grid{0.0, 5.0, 10.0, 15.0, 20.0};
    std::vector<double> fractions;  // empty -> built-in budget grid
    int trials = 100;
    std::uint64_t seed = 0;
    int threads = 1;
    bool parallel = false;
    // gen complex
    std::vector<int> nodes;
    double intra_prob = 0.3;
    double cross_prob = 0.2;
    double fill_prob = 0.5;
    double intra_fill_prob = 0.3;
    // gen signals
    std::string model = "gaussian";
    double sigma_irr = 1.0, sigma_sol = 1.0, sigma_harm = 1.0;
};

fs::path resolve_out_dir(const std::string& flag_value) {
    std::string dir = flag_value;
    if (dir.empty()) {
        const char* env = std::getenv("CMX_OUT_DIR");
        dir = (env != nullptr && *env != '\0') ? env : ".";
    }
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot create output directory '" + dir + "'");
    return p;
}

void emit(const fs::path& dir, const std::string& name, const std::string& content) {
    fs::path p = dir / name;
    write_text_file(p.string(), content);
    std::cout << "wrote " << p.string() << "\n";
}

Perspective perspective_of(const Options& o) {
    return o.from == "m" ? Perspective::from_m : Perspective::from_ell;
}

std::pair<LayerId, LayerId> layer_pair(const Options& o) {
    if (o.layers.size() != 2)
        throw Error(ErrorCode::parse_error, "--layers expects two comma-separated layer ids");
    return {o.layers[0], o.layers[1]};
}

std::pair<int, int> order_pair(const Options& o) {
    if (o.orders.size() != 2)
        throw Error(ErrorCode::parse_error, "--orders expects two comma-separated orders");
    return {o.orders[0], o.orders[1]};
}

CellMultiComplex load_complex(const Options& o) {
    if (o.complex_path.empty())
        throw Error(ErrorCode::parse_error, "--complex is required for this subcommand");
    return build_complex(read_complex_file(o.complex_path));
}

/// Signals aligned to an expected row index; enforces an exact column count
/// when `exact_columns` is positive.
Mat load_signals(const Options& o, const std::vector<std::string>& expected, int exact_columns) {
    if (o.signals_path.empty())
        throw Error(ErrorCode::parse_error, "--signals is required for this subcommand");
    SignalTable table = read_signal_file(o.signals_path);
    Mat aligned = align_signals(table, expected, o.signals_path);
    if (exact_columns > 0 && aligned.cols() != exact_columns)
        throw Error(ErrorCode::index_mismatch,
                    o.signals_path + ": expected " + std::to_string(exact_columns) +
                        " signal column(s), found " + std::to_string(aligned.cols()));
    return aligned;
}

std::vector<std::string> atom_names(Eigen::Index n) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
    return names;
}

void run_validate(const Options& o) {
    CellMultiComplex X = load_complex(o);
    std::string json = validation_summary_json(X);
    emit(resolve_out_dir(o.out_dir), "validate.json", json);
    std::cout << json;
}

void run_counts(const Options& o) {
    CellMultiComplex X = load_complex(o);
    std::string json = counts_json(X);
    emit(resolve_out_dir(o.out_dir), "counts.json", json);
    std::cout << json;
}

void run_laplacian(const Options& o) {
    CellMultiComplex X = load_complex(o);
    fs::path dir = resolve_out_dir(o.out_dir);
    if (!o.layers.empty()) {
        auto [ell, m] = layer_pair(o);
        auto [k, n] = order_pair(o);
        CrossLaplacian lap = cross_laplacian(X, ell, m, k, n, perspective_of(o));
        emit(dir, "cross_laplacian_low.csv", matrix_to_csv(lap.lower, lap.index, lap.index, "cell_id"));
        emit(dir, "cross_laplacian_up.csv", matrix_to_csv(lap.upper, lap.index, lap.index, "cell_id"));
        emit(dir, "cross_laplacian_total.csv",
             matrix_to_csv(lap.total, lap.index, lap.index, "cell_id"));
        emit(dir, "cross_eigenvalues.csv", eigenvalues_to_csv(eig_sym(lap.total).eigenvalues));
    } else {
        MonoLaplacians lap = hodge_laplacians(X);
        emit(dir, "l0.csv", matrix_to_csv(lap.l0, lap.node_ids, lap.node_ids, "cell_id"));
        emit(dir, "l1.csv", matrix_to_csv(lap.l1, lap.edge_ids, lap.edge_ids, "cell_id"));
        emit(dir, "l1_eigenvalues.csv", eigenvalues_to_csv(eig_sym(lap.l1).eigenvalues));
    }
}

void run_betti(const Options& o) {
    CellMultiComplex X = load_complex(o);
    auto [ell, m] = layer_pair(o);
    auto [k, n] = order_pair(o);
    CrossBettiVector betti = cross_betti(X, ell, m, k, n);
    std::string json = betti_json(X, ell, m, k, n, betti);
    emit(resolve_out_dir(o.out_dir), "betti.json", json);
    std::cout << json;
}

void run_cones(const Options& o) {
    CellMultiComplex X = load_complex(o);
    auto [ell, m] = layer_pair(o);
    // The from-ell picture keeps the faces on layer m, so its cone apexes sit
    // on m; symmetrically for from-m.
    ApexSide side = perspective_of(o) == Perspective::from_ell ? ApexSide::on_m : ApexSide::on_ell;
    ConeReport report = cone_report(X, ell, m, side);
    std::string json = cones_json(report);
    emit(resolve_out_dir(o.out_dir), "cones.json", json);
    std::cout << json;
}

void run_decompose(const Options& o) {
    CellMultiComplex X = load_complex(o);
    fs::path dir = resolve_out_dir(o.out_dir);
    HodgeSplit split;
    if (!o.layers.empty()) {
        auto [ell, m] = layer_pair(o);
        CrossHodgeOperators ops = cross_hodge_operators(X, ell, m, perspective_of(o));
        Mat y = load_signals(o, ops.edge_ids, 1);
        split = hodge_split(ops, y.col(0));
    } else {
        MonoHodgeOperators ops = mono_hodge_operators(X);
        Mat y = load_signals(o, ops.edge_ids, 1);
        split = hodge_split(ops, y.col(0));
    }
    emit(dir, "split.csv", split_csv(split));
    emit(dir, "potentials.csv", potentials_csv(split));
}

void run_estimate(const Options& o) {
    CellMultiComplex X = load_complex(o);
    auto [ell, m] = layer_pair(o);
    CrossHodgeOperators ops = cross_hodge_operators(X, ell, m, perspective_of(o));
    Mat y = load_signals(o, ops.edge_ids, 1);
    HodgeSplit split = estimate_components(ops, y.col(0));
    double div_residual = (ops.b_low * split.harmonic).norm();
    double curl_residual = (ops.b_up.transpose() * split.harmonic).norm();
    fs::path dir = resolve_out_dir(o.out_dir);
    std::string json = estimate_json(split, div_residual, curl_residual);
    emit(dir, "estimate.json", json);
    emit(dir, "estimate_split.csv", split_csv(split));
    std::cout << json;
}

void run_sparsify(const Options& o) {
    CellMultiComplex X = load_complex(o);
    fs::path dir = resolve_out_dir(o.out_dir);
    BasisPursuitProblem problem;
    problem.epsilon = o.epsilon;
    if (!o.layers.empty()) {
        auto [ell, m] = layer_pair(o);
        auto [k, n] = order_pair(o);
        CrossLaplacian lap = cross_laplacian(X, ell, m, k, n, perspective_of(o));
        Mat y = load_signals(o, lap.index, 1);
        problem.dictionary = eig_sym(lap.total).eigenvectors;
        problem.observation = y.col(0);
    } else {
        MonoLaplacians lap = hodge_laplacians(X);
        Mat y = load_signals(o, lap.edge_ids, 1);
        problem.dictionary = eig_sym(lap.l1).eigenvectors;
        problem.observation = y.col(0);
    }
    SparseCode code = basis_pursuit(problem);
    emit(dir, "code.csv", code_csv(code, atom_names(problem.dictionary.cols())));
    std::string json = code_summary_json(code, o.epsilon);
    emit(dir, "code_summary.json", json);
    std::cout << json;
}

void run_learn(const Options& o) {
    CellMultiComplex X = load_complex(o);
    auto [ell, m] = layer_pair(o);
    Perspective persp = perspective_of(o);
    CrossLaplacian lap = cross_laplacian(X, ell, m, 0, 0, persp);
    Mat corpus = load_signals(o, lap.index, 0);
    LearnOptions opts;
    opts.perspective = persp;
    opts.eta_threshold = o.eta_threshold;
    opts.p_max = o.p_max;
    opts.gamma = o.gamma;
    opts.threshold_mode = o.tau_set;
    opts.tau = o.tau;
    LearnResult result = learn_cross_cells(X, ell, m, corpus, opts);
    std::string json = learn_json(result);
    emit(resolve_out_dir(o.out_dir), "learn.json", json);
    std::cout << json;
}

void run_gen_complex(const Options& o) {
    RandomCmcConfig cfg;
    cfg.layer_nodes = o.nodes;
    cfg.intra_edge_prob = o.intra_prob;
    cfg.cross_edge_prob = o.cross_prob;
    cfg.fill_prob = o.fill_prob;
    cfg.intra_fill_prob = o.intra_fill_prob;
    cfg.p_max = o.p_max;
    cfg.seed = o.seed;
    CellMultiComplex X = random_cmc(cfg);
    emit(resolve_out_dir(o.out_dir), "complex.json", complex_to_json(X.spec()));
}

void run_gen_signals(const Options& o) {
    CellMultiComplex X = load_complex(o);
    fs::path dir = resolve_out_dir(o.out_dir);
    if (o.model == "hodge") {
        auto [ell, m] = layer_pair(o);
        CrossHodgeOperators ops = cross_hodge_operators(X, ell, m, perspective_of(o));
        CrossLaplacian lap = cross_laplacian(X, ell, m, 0, 0, perspective_of(o));
        Mat harmonic = kernel_basis(lap.total);
        HodgeModelSigma sigma{o.sigma_irr, o.sigma_sol, o.sigma_harm};
        CrossSignalBatch batch = gen_hodge_signals(ops, harmonic, sigma, o.trials, o.seed);
        emit(dir, "signals.csv", signals_to_csv(ops.edge_ids, batch.signals));
    } else {
        MonoLaplacians lap = hodge_laplacians(X);
        Mat signals =
            gen_gaussian_signals(static_cast<Eigen::Index>(lap.edge_ids.size()), o.trials, o.seed);
        emit(dir, "signals.csv", signals_to_csv(lap.edge_ids, signals));
    }
}

void run_experiment_denoise(const Options& o) {
    CellMultiComplex X = load_complex(o);
    auto [ell, m] = layer_pair(o);
    ExecMode mode = o.parallel ? ExecMode::parallel : ExecMode::serial;
    int threads = o.parallel ? o.threads : 1;
    HodgeModelSigma sigma{o.sigma_irr, o.sigma_sol, o.sigma_harm};
    DenoiseReport report = denoise_experiment(X, ell, m, perspective_of(o), o.trials, o.snr_grid,
                                              o.seed, sigma, mode, threads);
    fs::path dir = resolve_out_dir(o.out_dir);
    emit(dir, "denoise.csv", denoise_csv(report));
    emit(dir, "denoise_meta.json", denoise_meta_json(report));
}

void run_experiment_sparsity(const Options& o) {
    CellMultiComplex X = load_complex(o);
    auto [ell, m] = layer_pair(o);
    ExecMode mode = o.parallel ? ExecMode::parallel : ExecMode::serial;
    int threads = o.parallel ? o.threads : 1;
    SparsityReport report = sparsity_experiment(X, ell, m, perspective_of(o), o.trials, o.fractions,
                                                o.seed, mode, threads);
    fs::path dir = resolve_out_dir(o.out_dir);
    emit(dir, "sparsity.csv", sparsity_csv(report));
    emit(dir, "sparsity_meta.json", sparsity_meta_json(report));
}

void add_complex_option(CLI::App* sub, Options& o, bool required = true) {
    auto* opt = sub->add_option("--complex", o.complex_path, "Complex description file (JSON)");
    if (required) opt->required();
}

void add_out_option(CLI::App* sub, Options& o) {
    sub->add_option("--out", o.out_dir,
                    "Output directory (default: $CMX_OUT_DIR, then the working directory)");
}

void add_layers_option(CLI::App* sub, Options& o, bool required = true) {
    auto* opt = sub->add_option("--layers", o.layers, "Layer pair as ell,m")->delimiter(',');
    if (required) opt->required();
}

void add_from_option(CLI::App* sub, Options& o) {
    sub->add_option("--from", o.from, "Perspective: which layer keeps its faces")
        ->check(CLI::IsMember({"ell", "m"}));
}

void add_orders_option(CLI::App* sub, Options& o) {
    sub->add_option("--orders", o.orders, "Face order pair as k,n (default 0,0)")->delimiter(',');
}

void add_signals_option(CLI::App* sub, Options& o) {
    sub->add_option("--signals", o.signals_path, "Signal file (CSV: cell_id,value|t1..tM)")
        ->required();
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
    Options o;
    CLI::App app{"Topological signal processing over layered cell complexes"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "Check a complex file and report counts");
    add_complex_option(validate, o);
    add_out_option(validate, o);
    validate->callback([&] { run_validate(o); });

    auto* counts = app.add_subcommand("counts", "Cell counts per layer, pair, and order type");
    add_complex_option(counts, o);
    add_out_option(counts, o);
    counts->callback([&] { run_counts(o); });

    auto* laplacian =
        app.add_subcommand("laplacian", "Emit Laplacian matrices and their eigenvalues");
    add_complex_option(laplacian, o);
    add_layers_option(laplacian, o, false);
    add_from_option(laplacian, o);
    add_orders_option(laplacian, o);
    add_out_option(laplacian, o);
    laplacian->callback([&] { run_laplacian(o); });

    auto* betti = app.add_subcommand("betti", "Kernel dimensions of the two perspective Laplacians");
    add_complex_option(betti, o);
    add_layers_option(betti, o);
    add_orders_option(betti, o);
    add_out_option(betti, o);
    betti->callback([&] { run_betti(o); });

    auto* cones = app.add_subcommand("cones", "Cone accounting for the node-level cross complex");
    add_complex_option(cones, o);
    add_layers_option(cones, o);
    add_from_option(cones, o);
    add_out_option(cones, o);
    cones->callback([&] { run_cones(o); });

    auto* decompose =
        app.add_subcommand("decompose", "Three-way orthogonal split of an edge signal");
    add_complex_option(decompose, o);
    add_signals_option(decompose, o);
    add_layers_option(decompose, o, false);
    add_from_option(decompose, o);
    add_out_option(decompose, o);
    decompose->callback([&] { run_decompose(o); });

    auto* estimate =
        app.add_subcommand("estimate", "Closed-form component estimates of a cross-edge signal");
    add_complex_option(estimate, o);
    add_signals_option(estimate, o);
    add_layers_option(estimate, o);
    add_from_option(estimate, o);
    add_out_option(estimate, o);
    estimate->callback([&] { run_estimate(o); });

    auto* sparsify = app.add_subcommand(
        "sparsify", "Minimum-l1 code of a signal on a Laplacian eigenbasis with a residual budget");
    add_complex_option(sparsify, o);
    add_signals_option(sparsify, o);
    add_layers_option(sparsify, o, false);
    add_from_option(sparsify, o);
    add_orders_option(sparsify, o);
    sparsify->add_option("--epsilon", o.epsilon, "Residual-norm budget")->required();
    add_out_option(sparsify, o);
    sparsify->callback([&] { run_sparsify(o); });

    auto* learn =
        app.add_subcommand("learn", "Infer filled wedge cells from a cross-edge signal corpus");
    add_complex_option(learn, o);
    add_signals_option(learn, o);
    add_layers_option(learn, o);
    add_from_option(learn, o);
    learn->add_option("--gamma", o.gamma, "Number of cells to select");
    auto* tau_opt = learn->add_option("--tau", o.tau, "Select every candidate with energy <= tau");
    learn->add_option("--eta-threshold", o.eta_threshold,
                      "Curl-energy gate below which nothing is learned (default 0.05)");
    learn->add_option("--pmax", o.p_max, "Longest closing intra path considered (default 2)");
    add_out_option(learn, o);
    learn->callback([&] {
        o.tau_set = tau_opt->count() > 0;
        run_learn(o);
    });

    auto* gen = app.add_subcommand("gen", "Generate complexes or signal corpora");
    gen->require_subcommand(1);

    auto* gen_complex = gen->add_subcommand("complex", "Seeded random layered complex");
    gen_complex->add_option("--nodes", o.nodes, "Nodes per layer, comma-separated")
        ->delimiter(',')
        ->required();
    gen_complex->add_option("--intra-prob", o.intra_prob, "Intra-layer edge probability")
        ->check(CLI::Range(0.0, 1.0));
    gen_complex->add_option("--cross-prob", o.cross_prob, "Cross-edge probability")
        ->check(CLI::Range(0.0, 1.0));
    gen_complex->add_option("--fill-prob", o.fill_prob, "Wedge fill acceptance rate")
        ->check(CLI::Range(0.0, 1.0));
    gen_complex->add_option("--intra-fill-prob", o.intra_fill_prob, "Triangle fill acceptance rate")
        ->check(CLI::Range(0.0, 1.0));
    gen_complex->add_option("--pmax", o.p_max, "Path bound for wedge candidates (default 2)");
    gen_complex->add_option("--seed", o.seed, "Generator seed");
    add_out_option(gen_complex, o);
    gen_complex->callback([&] { run_gen_complex(o); });

    auto* gen_signals = gen->add_subcommand("signals", "Seeded signal corpus for a complex");
    add_complex_option(gen_signals, o);
    gen_signals->add_option("--model", o.model, "gaussian (edge space) or hodge (cross-edge model)")
        ->check(CLI::IsMember({"gaussian", "hodge"}));
    add_layers_option(gen_signals, o, false);
    add_from_option(gen_signals, o);
    gen_signals->add_option("--trials", o.trials, "Number of signal columns")->required();
    gen_signals->add_option("--seed", o.seed, "Generator seed");
    gen_signals->add_option("--sigma-irr", o.sigma_irr, "Scale of the gradient-part draw");
    gen_signals->add_option("--sigma-sol", o.sigma_sol, "Scale of the rotational-part draw");
    gen_signals->add_option("--sigma-harm", o.sigma_harm, "Scale of the harmonic-part draw");
    add_out_option(gen_signals, o);
    gen_signals->callback([&] { run_gen_signals(o); });

    auto* experiment = app.add_subcommand("experiment", "Seeded synthetic studies");
    experiment->require_subcommand(1);

    auto* denoise = experiment->add_subcommand(
        "denoise", "Component recovery from noisy cross-edge observations over an SNR grid");
    add_complex_option(denoise, o);
    add_layers_option(denoise, o);
    add_from_option(denoise, o);
    denoise->add_option("--trials", o.trials, "Trials per SNR point (default 100)");
    denoise->add_option("--snr-grid", o.snr_grid, "SNR points in dB (default 0,5,10,15,20)")
        ->delimiter(',');
    denoise->add_option("--seed", o.seed, "Master seed");
    denoise->add_option("--sigma-irr", o.sigma_irr, "Scale of the gradient-part draw");
    denoise->add_option("--sigma-sol", o.sigma_sol, "Scale of the rotational-part draw");
    denoise->add_option("--sigma-harm", o.sigma_harm, "Scale of the harmonic-part draw");
    denoise->add_flag("--parallel", o.parallel, "Run trials on the OpenMP path");
    denoise->add_option("--threads", o.threads, "Thread count for --parallel");
    add_out_option(denoise, o);
    denoise->callback([&] { run_experiment_denoise(o); });

    auto* sparsity = experiment->add_subcommand(
        "sparsity", "Reconstruction error versus code size for edge-space vs cross-space coding");
    add_complex_option(sparsity, o);
    add_layers_option(sparsity, o);
    add_from_option(sparsity, o);
    sparsity->add_option("--trials", o.trials, "Number of trial signals (default 100)");
    sparsity->add_option("--fractions", o.fractions, "Budget fractions of ||y|| (default: built-in grid)")
        ->delimiter(',');
    sparsity->add_option("--seed", o.seed, "Master seed");
    sparsity->add_flag("--parallel", o.parallel, "Run trials on the OpenMP path");
    sparsity->add_option("--threads", o.threads, "Thread count for --parallel");
    add_out_option(sparsity, o);
    sparsity->callback([&] { run_experiment_sparsity(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_validation_error(e.code()) ? 2 : 3;
    }
    return 0;
}

}  // namespace cmx
