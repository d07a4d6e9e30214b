#ifndef CMX_IO_HPP
#define CMX_IO_HPP

#include <string>
#include <vector>

#include "cmx/complex.hpp"
#include "cmx/experiments.hpp"
#include "cmx/laplacian.hpp"
#include "cmx/learn.hpp"
#include "cmx/signal.hpp"
#include "cmx/sparse.hpp"
#include "cmx/types.hpp"

namespace cmx {

// --- complex files ---------------------------------------------------------
// JSON layout:
//   {"layers":[{"id":1,"nodes":["u1",...]}],
//    "intra_edges":[{"layer":1,"id":"e1","tail":"u1","head":"u2"}],
//    "cross_edges":[{"layers":[1,2],"id":"x1","tail":"u1","head":"v1"}],
//    "two_cells":[{"scope":[1],"id":"T","boundary":[{"edge_id":"e1","sign":1}]}]}
// scope is [layer] for intra cells and [ell, m] for cross cells.  Writing is
// canonical: keys sorted, two-space indent, trailing newline.

ComplexSpec parse_complex_json(const std::string& text, const std::string& origin);
ComplexSpec read_complex_file(const std::string& path);
std::string complex_to_json(const ComplexSpec& spec);
void write_complex_file(const std::string& path, const ComplexSpec& spec);

// --- signal files ----------------------------------------------------------
// CSV with header "cell_id,value" (single trial) or "cell_id,t1,...,tM".

struct SignalTable {
    std::vector<std::string> ids;      // row order as read
    std::vector<std::string> columns;  // trial column names
    Mat values;                        // ids x columns
};

SignalTable parse_signal_csv(const std::string& text, const std::string& origin);
SignalTable read_signal_file(const std::string& path);

/// Reorders table rows onto an expected cell index.  Unknown ids raise
/// UnknownCellId; missing ids raise IndexMismatch.
Mat align_signals(const SignalTable& table, const std::vector<std::string>& expected,
                  const std::string& origin);

std::string signals_to_csv(const std::vector<std::string>& index, const Mat& values,
                           std::vector<std::string> columns = {});

// --- generic text / numeric helpers ---------------------------------------

/// Shortest-faithful decimal: %.17g.
std::string format_double(double v);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::string matrix_to_csv(const Mat& m, const std::vector<std::string>& row_ids,
                          const std::vector<std::string>& col_ids, const std::string& corner);
std::string eigenvalues_to_csv(const Vec& eigenvalues);

// --- reports ---------------------------------------------------------------

std::string validation_summary_json(const CellMultiComplex& X);
std::string counts_json(const CellMultiComplex& X);
std::string betti_json(const CellMultiComplex& X, LayerId ell, LayerId m, int k, int n,
                       const CrossBettiVector& betti);
std::string cones_json(const ConeReport& report);
std::string split_csv(const HodgeSplit& split);
std::string potentials_csv(const HodgeSplit& split);
std::string estimate_json(const HodgeSplit& split, double divergence_residual,
                          double curl_residual);
std::string code_csv(const SparseCode& code, const std::vector<std::string>& atoms);
std::string code_summary_json(const SparseCode& code, double epsilon);
std::string sparsity_curve_csv(const std::vector<SparsityCurveRow>& rows);
std::string learn_json(const LearnResult& result);
std::string denoise_csv(const DenoiseReport& report);
std::string denoise_meta_json(const DenoiseReport& report);
std::string sparsity_csv(const SparsityReport& report);
std::string sparsity_meta_json(const SparsityReport& report);

}  // namespace cmx

#endif  // CMX_IO_HPP
