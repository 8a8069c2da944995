#pragma once

#include "mcgap/estimator.hpp"
#include "mcgap/matrix.hpp"
#include "mcgap/simulator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcgap {

// Path files: whitespace/newline-separated base-10 integers, 0-based states;
// '#' starts a comment that runs to end of line.
std::vector<std::int64_t> load_states(const std::string& filename);
void save_path(const std::string& filename, const SamplePath& path);

// d x d CSV of reals. Row-stochasticity is validated at 1e-9 and rows are
// then normalized exactly so the strict StochasticMatrix invariant holds.
Matrix load_matrix_csv(const std::string& filename);
StochasticMatrix to_stochastic_checked(Matrix m);

// 17-significant-digit decimal; +inf serializes as the string "inf".
std::string format_double(double x);

// Minimal JSON emitter with insertion-ordered fields, so equal inputs always
// produce byte-equal documents. Parsing (tests, tooling) uses a real JSON
// library; this exists because the reports pin exact number formatting.
class JsonWriter {
public:
    std::string str() const;

    void open_object();
    void close_object();
    void open_object(const std::string& key);
    void open_array();
    void open_array(const std::string& key);
    void close_array();

    void field(const std::string& key, double v);
    void field(const std::string& key, std::int64_t v);
    void field(const std::string& key, int v);
    void field(const std::string& key, std::uint64_t v);
    void field(const std::string& key, bool v);
    void field(const std::string& key, const std::string& v);
    void field(const std::string& key, const std::vector<double>& v);

    void element(double v);

private:
    void comma();
    void indent();

    std::string out_;
    std::vector<bool> first_;
    int depth_ = 0;
};

inline constexpr int kSchemaVersion = 1;

// include_timings = false gives byte-identical output for identical inputs.
std::string report_to_json(const EstimationReport& report, bool include_timings = true);

std::string truth_to_json(const ChainModel& model);

// Coverage summaries carry no timings and no worker counts: the same seeds
// must produce the same bytes regardless of --jobs.
std::string coverage_to_json(const CoverageSummary& summary, const std::string& chain_desc);

} // namespace mcgap
