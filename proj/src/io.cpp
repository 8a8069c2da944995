#include "mcgap/io.hpp"

#include "mcgap/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcgap {

std::vector<std::int64_t> load_states(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) fail(errc::io_error, "cannot open '" + filename + "'");
    std::vector<std::int64_t> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                const long long v = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                out.push_back(v);
            } catch (const std::exception&) {
                fail(errc::io_error, "'" + filename + "' line " + std::to_string(lineno) +
                                         ": bad state token '" + tok + "'");
            }
        }
    }
    return out;
}

void save_path(const std::string& filename, const SamplePath& path) {
    std::ofstream out(filename);
    if (!out) fail(errc::io_error, "cannot write '" + filename + "'");
    for (std::int64_t t = 0; t < path.length(); ++t) out << path.state(t) << '\n';
    if (!out) fail(errc::io_error, "short write to '" + filename + "'");
}

Matrix load_matrix_csv(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) fail(errc::io_error, "cannot open '" + filename + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                blank = false;
                break;
            }
        if (blank) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                fail(errc::io_error, "'" + filename + "' line " + std::to_string(lineno) +
                                         ": bad cell '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(errc::io_error, "'" + filename + "' contains no data");
    const std::size_t d = rows.size();
    Matrix m(static_cast<int>(d), static_cast<int>(d));
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d)
            fail(errc::io_error, "'" + filename + "': row " + std::to_string(i + 1) + " has " +
                                     std::to_string(rows[i].size()) + " cells, expected " +
                                     std::to_string(d));
        for (std::size_t j = 0; j < d; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
}

StochasticMatrix to_stochastic_checked(Matrix m) {
    if (m.rows() != m.cols()) fail(errc::non_stochastic, "matrix is not square");
    // File inputs are validated at 1e-9 and then normalized row by row, so
    // hand-typed matrices with short decimals still meet the strict internal
    // invariant.
    for (int i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (int j = 0; j < m.cols(); ++j) {
            if (!(m(i, j) >= 0.0) || !std::isfinite(m(i, j)))
                fail(errc::non_stochastic, "entry (" + std::to_string(i) + "," +
                                               std::to_string(j) + ") is not a probability");
            sum += m(i, j);
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            fail(errc::non_stochastic,
                 "row " + std::to_string(i) + " sums to " + std::to_string(sum));
        for (int j = 0; j < m.cols(); ++j) m(i, j) /= sum;
    }
    return StochasticMatrix(std::move(m));
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(x)) return "\"nan\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string JsonWriter::str() const { return out_; }

void JsonWriter::comma() {
    if (first_.empty()) return;
    if (first_.back())
        first_.back() = false;
    else
        out_ += ',';
    out_ += '\n';
    indent();
}

void JsonWriter::indent() { out_.append(static_cast<std::size_t>(depth_) * 2, ' '); }

void JsonWriter::open_object() {
    comma();
    out_ += '{';
    first_.push_back(true);
    ++depth_;
}

void JsonWriter::open_object(const std::string& key) {
    comma();
    out_ += '"' + key + "\": {";
    first_.push_back(true);
    ++depth_;
}

void JsonWriter::close_object() {
    --depth_;
    if (!first_.back()) {
        out_ += '\n';
        indent();
    }
    out_ += '}';
    first_.pop_back();
}

void JsonWriter::open_array() {
    comma();
    out_ += '[';
    first_.push_back(true);
    ++depth_;
}

void JsonWriter::open_array(const std::string& key) {
    comma();
    out_ += '"' + key + "\": [";
    first_.push_back(true);
    ++depth_;
}

void JsonWriter::close_array() {
    --depth_;
    if (!first_.back()) {
        out_ += '\n';
        indent();
    }
    out_ += ']';
    first_.pop_back();
}

void JsonWriter::field(const std::string& key, double v) {
    comma();
    out_ += '"' + key + "\": " + format_double(v);
}

void JsonWriter::field(const std::string& key, std::int64_t v) {
    comma();
    out_ += '"' + key + "\": " + std::to_string(v);
}

void JsonWriter::field(const std::string& key, int v) {
    field(key, static_cast<std::int64_t>(v));
}

void JsonWriter::field(const std::string& key, std::uint64_t v) {
    comma();
    out_ += '"' + key + "\": " + std::to_string(v);
}

void JsonWriter::field(const std::string& key, bool v) {
    comma();
    out_ += '"' + key + "\": " + (v ? "true" : "false");
}

void JsonWriter::field(const std::string& key, const std::string& v) {
    comma();
    out_ += '"' + key + "\": \"" + v + '"';
}

void JsonWriter::field(const std::string& key, const std::vector<double>& v) {
    open_array(key);
    for (double x : v) element(x);
    close_array();
}

void JsonWriter::element(double v) {
    comma();
    out_ += format_double(v);
}

namespace {

void write_interval(JsonWriter& w, const std::string& key, const Interval& iv) {
    w.open_array(key);
    w.element(iv.lo);
    w.element(iv.hi);
    w.close_array();
}

void write_matrix(JsonWriter& w, const std::string& key, const Matrix& m) {
    w.open_array(key);
    for (int i = 0; i < m.rows(); ++i) {
        w.open_array();
        for (int j = 0; j < m.cols(); ++j) w.element(m(i, j));
        w.close_array();
    }
    w.close_array();
}

} // namespace

std::string report_to_json(const EstimationReport& report, bool include_timings) {
    JsonWriter w;
    w.open_object();
    w.field("schema_version", kSchemaVersion);
    w.field("n", report.n);
    w.field("d", report.d);
    w.field("delta", report.delta);
    w.field("c", report.c);
    w.field("pi_hat", report.pi_hat.values());
    w.field("eigenvalues", report.eigenvalues.values);
    w.field("gap_hat", report.gap_hat);
    w.field("tau_hat", report.tau_hat);
    w.field("kappa_hat", report.kappa_hat);
    w.field("b_hat", report.b_hat);
    w.field("rho_hat", report.rho_hat);
    w.field("w_hat", report.w_hat);
    w.field("max_b", report.max_b);

    w.open_object("intervals");
    w.open_array("pi");
    for (const Interval& iv : report.intervals.pi) {
        w.open_object();
        w.field("lo", iv.lo);
        w.field("hi", iv.hi);
        w.close_object();
    }
    w.close_array();
    write_interval(w, "gap", report.intervals.gap);
    write_interval(w, "pi_min", report.intervals.pi_min);
    write_interval(w, "relaxation_time", report.intervals.relaxation);
    if (report.intervals.has_combined) {
        write_interval(w, "combined_pi_min", report.intervals.combined_pi_min);
        write_interval(w, "combined_gap", report.intervals.combined_gap);
        w.field("degenerate_lower_bound", report.intervals.degenerate_lower_bound);
    }
    w.close_object();

    if (report.has_matrices) {
        write_matrix(w, "p_hat", report.P_hat);
        write_matrix(w, "a_group_inverse", report.a_group);
        write_matrix(w, "entrywise_bounds", report.B);
    }

    if (include_timings) {
        w.open_object("timings_ms");
        w.field("count", report.timings.count_ms);
        w.field("spectral", report.timings.spectral_ms);
        w.field("bounds", report.timings.bounds_ms);
        w.field("total", report.timings.total_ms);
        w.close_object();
    }
    w.close_object();
    std::string s = w.str();
    s += '\n';
    return s;
}

std::string truth_to_json(const ChainModel& model) {
    JsonWriter w;
    w.open_object();
    w.field("schema_version", kSchemaVersion);
    w.field("d", model.dim());
    w.field("pi", model.pi.values());
    w.field("gap", model.gap);
    w.field("pi_min", model.pi_min());
    w.field("kappa", model.kappa);
    w.field("reversible", model.reversible);
    w.field("eigenvalues", model.eigenvalues.values);
    w.close_object();
    std::string s = w.str();
    s += '\n';
    return s;
}

std::string coverage_to_json(const CoverageSummary& summary, const std::string& chain_desc) {
    JsonWriter w;
    w.open_object();
    w.field("schema_version", kSchemaVersion);
    w.field("chain", chain_desc);
    w.field("n", summary.n);
    w.field("delta", summary.delta);
    w.field("trials", summary.trials);
    w.field("master_seed", summary.master_seed);
    w.field("true_gap", summary.true_gap);
    w.field("true_pi_min", summary.true_pi_min);

    w.open_object("coverage");
    w.field("pi_simultaneous", summary.cov_pi);
    w.field("pi_simultaneous_se", summary.se_pi);
    w.field("gap", summary.cov_gap);
    w.field("gap_se", summary.se_gap);
    w.field("pi_min_combined", summary.cov_u);
    w.field("pi_min_combined_se", summary.se_u);
    w.field("gap_combined", summary.cov_v);
    w.field("gap_combined_se", summary.se_v);
    w.field("v_subset_alg1", summary.frac_v_subset);
    w.field("degenerate_lower_bound", summary.frac_degenerate);
    w.close_object();

    const auto quart = [&w](const std::string& key, const Quartiles& q) {
        w.open_object(key);
        w.field("q25", q.q25);
        w.field("median", q.median);
        w.field("q75", q.q75);
        w.close_object();
    };
    w.open_object("widths");
    quart("b_hat", summary.b_hat);
    quart("w_hat", summary.w_hat);
    quart("u_width", summary.u_width);
    quart("v_width", summary.v_width);
    w.close_object();

    w.close_object();
    std::string s = w.str();
    s += '\n';
    return s;
}

} // namespace mcgap
