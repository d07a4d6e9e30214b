#include "cmx/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace cmx {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& origin, const std::string& what) {
    throw Error(ErrorCode::parse_error, origin + ": " + what);
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(origin, e.what());
    }
}

const json& need(const json& obj, const char* key, const std::string& record) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw Error(ErrorCode::parse_error, record + ": missing field '" + key + "'");
    }
    return *it;
}

std::string need_string(const json& obj, const char* key, const std::string& record) {
    const json& v = need(obj, key, record);
    if (!v.is_string()) {
        throw Error(ErrorCode::parse_error, record + ": field '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

int need_int(const json& obj, const char* key, const std::string& record) {
    const json& v = need(obj, key, record);
    if (!v.is_number_integer()) {
        throw Error(ErrorCode::parse_error, record + ": field '" + key + "' must be an integer");
    }
    return v.get<int>();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

json spec_to_json_value(const ComplexSpec& spec) {
    json layers = json::array();
    for (const auto& l : spec.layers) {
        layers.push_back({{"id", l.id}, {"nodes", l.nodes}});
    }
    json intra = json::array();
    for (const auto& e : spec.intra_edges) {
        intra.push_back({{"layer", e.layer}, {"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    }
    json cross = json::array();
    for (const auto& e : spec.cross_edges) {
        cross.push_back(
            {{"layers", json::array({e.ell, e.m})}, {"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    }
    json cells = json::array();
    for (const auto& c : spec.two_cells) {
        json scope = c.layer != 0 ? json::array({c.layer}) : json::array({c.ell, c.m});
        json boundary = json::array();
        for (const auto& b : c.boundary) {
            boundary.push_back({{"edge_id", b.edge_id}, {"sign", b.sign}});
        }
        cells.push_back({{"scope", scope}, {"id", c.id}, {"boundary", boundary}});
    }
    return json{{"layers", layers},
                {"intra_edges", intra},
                {"cross_edges", cross},
                {"two_cells", cells}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json hodge_sigma_json(const HodgeModelSigma& sigma) {
    return json{{"irr", sigma.irr}, {"sol", sigma.sol}, {"harm", sigma.harm}};
}

json version_json() {
    return json{{"cmx", "0.1.0"},
                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)}};
}

const char* perspective_name(Perspective p) {
    return p == Perspective::from_ell ? "ell" : "m";
}

}  // namespace

ComplexSpec parse_complex_json(const std::string& text, const std::string& origin) {
    json j = parse_json(text, origin);
    if (!j.is_object()) parse_fail(origin, "top level must be an object");
    ComplexSpec spec;
    if (j.contains("layers")) {
        int i = 0;
        for (const json& l : need(j, "layers", origin)) {
            std::string record = origin + ": layers[" + std::to_string(i++) + "]";
            ComplexSpec::Layer layer;
            layer.id = need_int(l, "id", record);
            const json& nodes = need(l, "nodes", record);
            if (!nodes.is_array()) parse_fail(record, "'nodes' must be an array");
            for (const json& n : nodes) {
                if (!n.is_string()) parse_fail(record, "node ids must be strings");
                layer.nodes.push_back(n.get<std::string>());
            }
            spec.layers.push_back(std::move(layer));
        }
    }
    if (j.contains("intra_edges")) {
        int i = 0;
        for (const json& e : j["intra_edges"]) {
            std::string record = origin + ": intra_edges[" + std::to_string(i++) + "]";
            spec.intra_edges.push_back({need_int(e, "layer", record), need_string(e, "id", record),
                                        need_string(e, "tail", record),
                                        need_string(e, "head", record)});
        }
    }
    if (j.contains("cross_edges")) {
        int i = 0;
        for (const json& e : j["cross_edges"]) {
            std::string record = origin + ": cross_edges[" + std::to_string(i++) + "]";
            const json& pair = need(e, "layers", record);
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                !pair[1].is_number_integer()) {
                parse_fail(record, "'layers' must be a pair of integers");
            }
            spec.cross_edges.push_back({pair[0].get<int>(), pair[1].get<int>(),
                                        need_string(e, "id", record),
                                        need_string(e, "tail", record),
                                        need_string(e, "head", record)});
        }
    }
    if (j.contains("two_cells")) {
        int i = 0;
        for (const json& c : j["two_cells"]) {
            std::string record = origin + ": two_cells[" + std::to_string(i++) + "]";
            ComplexSpec::TwoCell cell;
            cell.id = need_string(c, "id", record);
            record += " ('" + cell.id + "')";
            const json& scope = need(c, "scope", record);
            if (scope.is_array() && scope.size() == 1 && scope[0].is_number_integer()) {
                cell.layer = scope[0].get<int>();
            } else if (scope.is_array() && scope.size() == 2 && scope[0].is_number_integer() &&
                       scope[1].is_number_integer()) {
                cell.ell = scope[0].get<int>();
                cell.m = scope[1].get<int>();
            } else {
                parse_fail(record, "'scope' must be [layer] or [ell, m]");
            }
            const json& boundary = need(c, "boundary", record);
            if (!boundary.is_array()) parse_fail(record, "'boundary' must be an array");
            for (const json& b : boundary) {
                ComplexSpec::BoundaryRef ref;
                ref.edge_id = need_string(b, "edge_id", record);
                ref.sign = need_int(b, "sign", record);
                if (ref.sign != 1 && ref.sign != -1) {
                    parse_fail(record, "sign of edge '" + ref.edge_id + "' must be 1 or -1");
                }
                cell.boundary.push_back(std::move(ref));
            }
            spec.two_cells.push_back(std::move(cell));
        }
    }
    return spec;
}

ComplexSpec read_complex_file(const std::string& path) {
    return parse_complex_json(read_text_file(path), path);
}

std::string complex_to_json(const ComplexSpec& spec) {
    return dump_canonical(spec_to_json_value(spec));
}

void write_complex_file(const std::string& path, const ComplexSpec& spec) {
    write_text_file(path, complex_to_json(spec));
}

SignalTable parse_signal_csv(const std::string& text, const std::string& origin) {
    SignalTable table;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> fields = split_csv_line(line);
        std::string where = origin + ":" + std::to_string(line_no);
        if (line_no == 1) {
            if (fields.size() < 2 || fields[0] != "cell_id") {
                parse_fail(where, "header must start with 'cell_id' and name at least one column");
            }
            table.columns.assign(fields.begin() + 1, fields.end());
            continue;
        }
        if (fields.size() != table.columns.size() + 1) {
            parse_fail(where, "expected " + std::to_string(table.columns.size() + 1) +
                                  " fields, got " + std::to_string(fields.size()));
        }
        table.ids.push_back(fields[0]);
        std::vector<double> row;
        for (size_t i = 1; i < fields.size(); ++i) {
            try {
                size_t used = 0;
                double v = std::stod(fields[i], &used);
                if (used != fields[i].size() || !std::isfinite(v)) throw std::invalid_argument("");
                row.push_back(v);
            } catch (const std::exception&) {
                parse_fail(where, "field '" + fields[i] + "' of cell '" + fields[0] +
                                      "' is not a finite number");
            }
        }
        rows.push_back(std::move(row));
    }
    if (table.columns.empty()) parse_fail(origin, "empty signal file");
    table.values = Mat(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(table.columns.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t c = 0; c < rows[r].size(); ++c) {
            table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return table;
}

SignalTable read_signal_file(const std::string& path) {
    return parse_signal_csv(read_text_file(path), path);
}

Mat align_signals(const SignalTable& table, const std::vector<std::string>& expected,
                  const std::string& origin) {
    std::map<std::string, Eigen::Index> row_of;
    for (size_t i = 0; i < table.ids.size(); ++i) {
        if (!row_of.emplace(table.ids[i], static_cast<Eigen::Index>(i)).second) {
            throw Error(ErrorCode::parse_error,
                        origin + ": duplicate row for cell '" + table.ids[i] + "'");
        }
    }
    for (const std::string& id : table.ids) {
        if (std::find(expected.begin(), expected.end(), id) == expected.end()) {
            throw Error(ErrorCode::unknown_cell_id,
                        origin + ": cell '" + id + "' is not part of the target index");
        }
    }
    Mat out(static_cast<Eigen::Index>(expected.size()), table.values.cols());
    for (size_t i = 0; i < expected.size(); ++i) {
        auto it = row_of.find(expected[i]);
        if (it == row_of.end()) {
            throw Error(ErrorCode::index_mismatch,
                        origin + ": no value for cell '" + expected[i] + "'");
        }
        out.row(static_cast<Eigen::Index>(i)) = table.values.row(it->second);
    }
    return out;
}

std::string signals_to_csv(const std::vector<std::string>& index, const Mat& values,
                           std::vector<std::string> columns) {
    if (columns.empty()) {
        if (values.cols() == 1) {
            columns.push_back("value");
        } else {
            for (Eigen::Index c = 0; c < values.cols(); ++c) {
                columns.push_back("t" + std::to_string(c + 1));
            }
        }
    }
    std::string out = "cell_id";
    for (const std::string& c : columns) out += "," + c;
    out += "\n";
    for (size_t i = 0; i < index.size(); ++i) {
        out += index[i];
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            out += "," + format_double(values(static_cast<Eigen::Index>(i), c));
        }
        out += "\n";
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw Error(ErrorCode::io_error, "failed writing '" + path + "'");
    }
}

std::string matrix_to_csv(const Mat& m, const std::vector<std::string>& row_ids,
                          const std::vector<std::string>& col_ids, const std::string& corner) {
    std::string out = corner;
    for (const std::string& c : col_ids) out += "," + c;
    out += "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out += row_ids[static_cast<size_t>(r)];
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out += "," + format_double(m(r, c));
        }
        out += "\n";
    }
    return out;
}

std::string eigenvalues_to_csv(const Vec& eigenvalues) {
    std::string out = "index,eigenvalue\n";
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        out += std::to_string(i) + "," + format_double(eigenvalues(i)) + "\n";
    }
    return out;
}

std::string validation_summary_json(const CellMultiComplex& X) {
    json layers = json::array();
    for (LayerId id : X.layer_ids()) {
        layers.push_back({{"id", id},
                          {"nodes", static_cast<int>(X.layer_nodes(id).size())},
                          {"edges", static_cast<int>(X.intra_family(id, 1).size())},
                          {"two_cells", static_cast<int>(X.intra_family(id, 2).size())}});
    }
    json pairs = json::array();
    const std::vector<LayerId>& ids = X.layer_ids();
    for (size_t a = 0; a < ids.size(); ++a) {
        for (size_t b = a + 1; b < ids.size(); ++b) {
            int edges = X.cell_count(ids[a], ids[b], 0, 0);
            auto counts = cross_type_counts(X, ids[a], ids[b]);
            int cells2 = 0;
            for (const auto& [type, count] : counts) {
                if (type.first + type.second == 1) cells2 += count;  // (1,0) and (0,1)
            }
            if (edges == 0 && cells2 == 0) continue;
            pairs.push_back({{"layers", json::array({ids[a], ids[b]})},
                             {"cross_edges", edges},
                             {"cross_two_cells", cells2}});
        }
    }
    return dump_canonical(json{{"valid", true},
                               {"n_nodes", static_cast<int>(X.flat_nodes().size())},
                               {"n_edges", static_cast<int>(X.flat_edges().size())},
                               {"n_two_cells", static_cast<int>(X.flat_two_cells().size())},
                               {"layers", layers},
                               {"pairs", pairs}});
}

std::string counts_json(const CellMultiComplex& X) {
    json per_pair = json::array();
    const std::vector<LayerId>& ids = X.layer_ids();
    for (size_t a = 0; a < ids.size(); ++a) {
        for (size_t b = a + 1; b < ids.size(); ++b) {
            auto counts = cross_type_counts(X, ids[a], ids[b]);
            if (counts.empty()) continue;
            json types = json::object();
            for (const auto& [type, count] : counts) {
                types[std::to_string(type.first) + "," + std::to_string(type.second)] = count;
            }
            per_pair.push_back({{"layers", json::array({ids[a], ids[b]})}, {"types", types}});
        }
    }
    return dump_canonical(json{{"n_nodes", static_cast<int>(X.flat_nodes().size())},
                               {"n_edges", static_cast<int>(X.flat_edges().size())},
                               {"n_two_cells", static_cast<int>(X.flat_two_cells().size())},
                               {"cross_families", per_pair}});
}

std::string betti_json(const CellMultiComplex& X, LayerId ell, LayerId m, int k, int n,
                       const CrossBettiVector& betti) {
    (void)X;
    return dump_canonical(json{{"layers", json::array({ell, m})},
                               {"orders", json::array({k, n})},
                               {"beta_ell", betti.beta_ell},
                               {"beta_m", betti.beta_m}});
}

std::string cones_json(const ConeReport& report) {
    json hubs = json::array();
    for (const HubCones& h : report.hubs) {
        json wedges = json::array();
        for (const Wedge& w : h.wedges) {
            wedges.push_back({{"edge_a", w.edge_a},
                              {"edge_b", w.edge_b},
                              {"endpoint_a", w.endpoint_a},
                              {"endpoint_b", w.endpoint_b},
                              {"open", w.open},
                              {"independent", w.independent}});
        }
        hubs.push_back({{"hub", h.hub},
                        {"cross_degree", h.cross_degree},
                        {"fills", h.fills},
                        {"cones", h.cone_count},
                        {"open", h.open},
                        {"wedges", wedges}});
    }
    return dump_canonical(json{{"apex_side", report.side == ApexSide::on_m ? "m" : "ell"},
                               {"count", report.count},
                               {"n_cross_edges", report.n_cross_edges},
                               {"touched_nodes", report.touched_nodes},
                               {"fills", report.fills},
                               {"hubs", hubs}});
}

std::string split_csv(const HodgeSplit& split) {
    std::string out = "cell_id,input,irrotational,solenoidal,harmonic\n";
    for (size_t i = 0; i < split.index.size(); ++i) {
        Eigen::Index r = static_cast<Eigen::Index>(i);
        out += split.index[i] + "," + format_double(split.input(r)) + "," +
               format_double(split.irrotational(r)) + "," + format_double(split.solenoidal(r)) +
               "," + format_double(split.harmonic(r)) + "\n";
    }
    return out;
}

std::string potentials_csv(const HodgeSplit& split) {
    std::string out = "cell_id,potential\n";
    for (size_t i = 0; i < split.down_index.size(); ++i) {
        out += split.down_index[i] + "," +
               format_double(split.potential_down(static_cast<Eigen::Index>(i))) + "\n";
    }
    for (size_t i = 0; i < split.up_index.size(); ++i) {
        out += split.up_index[i] + "," +
               format_double(split.potential_up(static_cast<Eigen::Index>(i))) + "\n";
    }
    return out;
}

std::string estimate_json(const HodgeSplit& split, double divergence_residual,
                          double curl_residual) {
    return dump_canonical(json{{"norm_input", split.input.norm()},
                               {"norm_irrotational", split.irrotational.norm()},
                               {"norm_solenoidal", split.solenoidal.norm()},
                               {"norm_harmonic", split.harmonic.norm()},
                               {"harmonic_divergence_residual", divergence_residual},
                               {"harmonic_curl_residual", curl_residual}});
}

std::string code_csv(const SparseCode& code, const std::vector<std::string>& atoms) {
    std::string out = "atom,coefficient\n";
    for (Eigen::Index i = 0; i < code.coefficients.size(); ++i) {
        std::string name = static_cast<size_t>(i) < atoms.size() ? atoms[static_cast<size_t>(i)]
                                                                 : std::to_string(i);
        out += name + "," + format_double(code.coefficients(i)) + "\n";
    }
    return out;
}

std::string code_summary_json(const SparseCode& code, double epsilon) {
    json support = json::array();
    for (Eigen::Index i : code.support) support.push_back(static_cast<int>(i));
    return dump_canonical(json{{"epsilon", epsilon},
                               {"support_size", static_cast<int>(code.support.size())},
                               {"support", support},
                               {"residual_norm", code.residual_norm},
                               {"objective", code.objective},
                               {"threshold", code.threshold}});
}

std::string sparsity_curve_csv(const std::vector<SparsityCurveRow>& rows) {
    std::string out = "sparsity,nmse_mono,n_mono,nmse_cross,n_cross\n";
    for (const SparsityCurveRow& r : rows) {
        out += std::to_string(r.support) + "," +
               (r.n_mono ? format_double(r.nmse_mono) : std::string("")) + "," +
               std::to_string(r.n_mono) + "," +
               (r.n_cross ? format_double(r.nmse_cross) : std::string("")) + "," +
               std::to_string(r.n_cross) + "\n";
    }
    return out;
}

std::string learn_json(const LearnResult& result) {
    json candidates = json::array();
    for (size_t k = 0; k < result.candidates.size(); ++k) {
        const CandidateCell& c = result.candidates[k];
        json path = json::array();
        for (const auto& [edge, sign] : c.intra_path) {
            path.push_back({{"edge_id", edge}, {"sign", sign}});
        }
        candidates.push_back({{"hub", c.hub},
                              {"edge_a", c.edge_a},
                              {"edge_b", c.edge_b},
                              {"intra_path", path},
                              {"alpha", result.alpha(static_cast<Eigen::Index>(k))},
                              {"selected", result.a[k] != 0}});
    }
    json selected = json::array();
    for (int idx : result.selected) selected.push_back(idx);
    return dump_canonical(json{{"eta", result.eta},
                               {"gated", result.gated},
                               {"n_candidates", static_cast<int>(result.candidates.size())},
                               {"selected", selected},
                               {"rank_deficient", result.rank_deficient},
                               {"candidates", candidates}});
}

std::string denoise_csv(const DenoiseReport& report) {
    std::string out =
        "snr_db,nmse_cross_irr,nmse_cross_sol,nmse_mono_irr,nmse_mono_sol,"
        "std_cross_irr,std_cross_sol,std_mono_irr,std_mono_sol,trials\n";
    for (const DenoisePoint& p : report.points) {
        out += format_double(p.snr_db) + "," + format_double(p.nmse_cross_irr) + "," +
               format_double(p.nmse_cross_sol) + "," + format_double(p.nmse_mono_irr) + "," +
               format_double(p.nmse_mono_sol) + "," + format_double(p.std_cross_irr) + "," +
               format_double(p.std_cross_sol) + "," + format_double(p.std_mono_irr) + "," +
               format_double(p.std_mono_sol) + "," + std::to_string(p.trials) + "\n";
    }
    return out;
}

std::string denoise_meta_json(const DenoiseReport& report) {
    json grid = json::array();
    for (const DenoisePoint& p : report.points) grid.push_back(p.snr_db);
    return dump_canonical(json{{"experiment", "denoise"},
                               {"layers", json::array({report.ell, report.m})},
                               {"perspective", perspective_name(report.perspective)},
                               {"trials", report.trials},
                               {"seed", report.seed},
                               {"snr_db_grid", grid},
                               {"sigma", hodge_sigma_json(report.sigma)},
                               {"threads", report.threads},
                               {"runtime_seconds", report.runtime_seconds},
                               {"versions", version_json()}});
}

std::string sparsity_csv(const SparsityReport& report) {
    std::string out = "sparsity,nmse_mono,nmse_cross,n_trials\n";
    for (const SparsityEnvelopeRow& r : report.rows) {
        out += std::to_string(r.support) + "," + format_double(r.nmse_mono) + "," +
               format_double(r.nmse_cross) + "," + std::to_string(r.n_trials) + "\n";
    }
    return out;
}

std::string sparsity_meta_json(const SparsityReport& report) {
    json fractions = json::array();
    for (double f : report.fractions) fractions.push_back(f);
    return dump_canonical(json{{"experiment", "sparsity"},
                               {"layers", json::array({report.ell, report.m})},
                               {"perspective", perspective_name(report.perspective)},
                               {"trials", report.trials},
                               {"seed", report.seed},
                               {"epsilon_fractions", fractions},
                               {"threads", report.threads},
                               {"runtime_seconds", report.runtime_seconds},
                               {"versions", version_json()}});
}

}  // namespace cmx
