#include "mcgap/errors.hpp"
#include "mcgap/estimator.hpp"
#include "mcgap/io.hpp"
#include "mcgap/log.hpp"
#include "mcgap/simulator.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace mcgap;

struct ChainOpts {
    std::string kind;
    int d = 0;
    std::vector<double> up;
    std::vector<double> down;
    std::string weights_file;
    std::string matrix_file;
    bool allow_nonreversible = false;
};

void add_chain_flags(CLI::App* cmd, ChainOpts& co) {
    cmd->add_option("--chain", co.kind, "chain family: birth-death, graph, or file")
        ->required()
        ->check(CLI::IsMember({"birth-death", "graph", "file"}));
    cmd->add_option("--d", co.d, "state count (birth-death)");
    cmd->add_option("--up", co.up, "birth-death up rates, comma separated; one value broadcasts")
        ->delimiter(',');
    cmd->add_option("--down", co.down, "birth-death down rates, comma separated; one value broadcasts")
        ->delimiter(',');
    cmd->add_option("--weights", co.weights_file, "CSV of symmetric edge weights (graph)");
    cmd->add_option("--matrix", co.matrix_file, "CSV of the transition matrix (file)");
    cmd->add_flag("--allow-nonreversible", co.allow_nonreversible,
                  "accept a non-reversible --matrix chain (intervals lose their guarantee)");
}

std::vector<double> broadcast(std::vector<double> v, int len, const char* flag) {
    if (static_cast<int>(v.size()) == 1 && len > 1) return std::vector<double>(static_cast<std::size_t>(len), v[0]);
    if (static_cast<int>(v.size()) != len)
        fail(errc::invalid_rates, std::string(flag) + " needs " + std::to_string(len) +
                                      " values (or one to broadcast), got " +
                                      std::to_string(v.size()));
    return v;
}

std::string join_rates(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double(v[i]);
    }
    return s;
}

ChainModel build_chain(const ChainOpts& co, std::string& desc) {
    if (co.kind == "birth-death") {
        if (co.d < 2) fail(errc::invalid_rates, "--chain birth-death requires --d >= 2");
        if (co.up.empty() || co.down.empty())
            fail(errc::invalid_rates, "--chain birth-death requires --up and --down");
        const std::vector<double> up = broadcast(co.up, co.d - 1, "--up");
        const std::vector<double> down = broadcast(co.down, co.d - 1, "--down");
        desc = "birth-death(d=" + std::to_string(co.d) + ",up=" + join_rates(up) +
               ",down=" + join_rates(down) + ")";
        return birth_death_chain(co.d, up, down);
    }
    if (co.kind == "graph") {
        if (co.weights_file.empty()) fail(errc::invalid_rates, "--chain graph requires --weights");
        desc = "graph(" + co.weights_file + ")";
        return random_walk_on_weighted_graph(load_matrix_csv(co.weights_file));
    }
    if (co.matrix_file.empty()) fail(errc::invalid_rates, "--chain file requires --matrix");
    desc = "file(" + co.matrix_file + ")";
    const StochasticMatrix P = to_stochastic_checked(load_matrix_csv(co.matrix_file));
    ChainModel model = make_chain_model(P.matrix());
    if (!model.reversible && !co.allow_nonreversible)
        fail(errc::not_reversible,
             "matrix in '" + co.matrix_file +
                 "' is not reversible; the estimator's guarantees assume reversibility "
                 "(pass --allow-nonreversible to proceed anyway)");
    if (!model.reversible)
        log::write(log_level::warn, "chain is not reversible; proceeding because "
                                    "--allow-nonreversible was given");
    return model;
}

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        fail(errc::invalid_delta, "--delta must be in (0, 1), got " + std::to_string(delta));
}

void write_output(const std::string& target, const std::string& payload) {
    if (target.empty() || target == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(target);
    if (!out) fail(errc::io_error, "cannot write '" + target + "'");
    out << payload;
    if (!out) fail(errc::io_error, "short write to '" + target + "'");
}

StartSpec parse_start(const std::string& s) {
    if (s == "stationary") return StartSpec::from_stationary();
    try {
        std::size_t used = 0;
        const int state = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return StartSpec::at(state);
    } catch (const std::exception&) {
        fail(errc::invalid_argument, "--start must be 'stationary' or a state index, got '" + s + "'");
    }
}

int cmd_estimate(const std::string& input, double delta, std::optional<int> num_states,
                 const std::string& output, bool emit_matrix, bool no_combined) {
    check_delta(delta);
    const std::vector<std::int64_t> raw = load_states(input);
    const SamplePath path = validate_path(raw, num_states);
    if (!num_states.has_value())
        log::write(log_level::warn,
                   "inferred %d states from the path; pass --num-states if the chain has "
                   "states the path never visits",
                   path.num_states());

    EstimateOptions opts;
    opts.combined = !no_combined;
    opts.keep_matrices = emit_matrix;
    const EstimationReport report = estimate_path(path, delta, opts);
    write_output(output, report_to_json(report));
    return 0;
}

int cmd_simulate(const ChainOpts& co, std::int64_t n, std::uint64_t seed, const std::string& start,
                 const std::string& output, const std::string& truth_file) {
    std::string desc;
    const ChainModel model = build_chain(co, desc);
    const SamplePath path = sample_path(model, n, seed, parse_start(start));
    save_path(output, path);
    if (!truth_file.empty()) write_output(truth_file, truth_to_json(model));
    log::write(log_level::info, "wrote %lld states from %s to %s",
               static_cast<long long>(path.length()), desc.c_str(), output.c_str());
    return 0;
}

int cmd_coverage(const ChainOpts& co, std::int64_t n, double delta, int trials,
                 std::uint64_t seed, int jobs, const std::string& output) {
    check_delta(delta);
    std::string desc;
    const ChainModel model = build_chain(co, desc);
    const CoverageSummary summary = run_coverage(model, n, delta, trials, seed, jobs);
    write_output(output, coverage_to_json(summary, desc));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"confidence intervals for the stationary distribution, spectral gap, and "
                 "relaxation time of a reversible Markov chain, from one sample path"};
    app.require_subcommand(1);

    // estimate
    auto* est = app.add_subcommand("estimate", "estimate from a path file");
    std::string est_input;
    double est_delta = 0.0;
    int est_num_states = 0;
    std::string est_output = "-";
    bool est_emit_matrix = false;
    bool est_no_combined = false;
    est->add_option("--input", est_input, "path file: whitespace-separated 0-based states, '#' comments")
        ->required();
    est->add_option("--delta", est_delta, "confidence parameter in (0,1)")->required();
    auto* ns_opt = est->add_option("--num-states", est_num_states, "state-space size d (else inferred)")
                       ->check(CLI::PositiveNumber);
    est->add_option("--output", est_output, "output file or '-' for stdout");
    est->add_flag("--emit-matrix", est_emit_matrix, "include P_hat, A#, and B in the report");
    est->add_flag("--no-combined", est_no_combined, "skip the intersected two-delta intervals");

    // simulate
    auto* sim = app.add_subcommand("simulate", "sample a path from a known chain");
    ChainOpts sim_chain;
    std::int64_t sim_n = 0;
    std::uint64_t sim_seed = 0;
    std::string sim_start = "stationary";
    std::string sim_output;
    std::string sim_truth;
    add_chain_flags(sim, sim_chain);
    sim->add_option("--n", sim_n, "path length (>= 2)")->required();
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--start", sim_start, "'stationary' or a start state index");
    sim->add_option("--output", sim_output, "path file to write")->required();
    sim->add_option("--emit-truth", sim_truth, "also write ground-truth JSON here");

    // coverage
    auto* cov = app.add_subcommand("coverage", "Monte-Carlo coverage of the intervals");
    ChainOpts cov_chain;
    std::int64_t cov_n = 0;
    double cov_delta = 0.0;
    int cov_trials = 0;
    std::uint64_t cov_seed = 0;
    int cov_jobs = 0;
    std::string cov_output = "-";
    add_chain_flags(cov, cov_chain);
    cov->add_option("--n", cov_n, "path length per trial")->required();
    cov->add_option("--delta", cov_delta, "confidence parameter in (0,1)")->required();
    cov->add_option("--trials", cov_trials, "number of trials")->required()->check(CLI::PositiveNumber);
    cov->add_option("--seed", cov_seed, "master seed; trial t uses a derived seed");
    cov->add_option("--jobs", cov_jobs, "worker threads (0 = all)");
    cov->add_option("--output", cov_output, "output file or '-' for stdout");

    try {
        app.parse(argc, argv);
        if (est->parsed())
            return cmd_estimate(est_input, est_delta,
                                *ns_opt ? std::optional<int>(est_num_states) : std::nullopt,
                                est_output, est_emit_matrix, est_no_combined);
        if (sim->parsed())
            return cmd_simulate(sim_chain, sim_n, sim_seed, sim_start, sim_output, sim_truth);
        return cmd_coverage(cov_chain, cov_n, cov_delta, cov_trials, cov_seed, cov_jobs,
                            cov_output);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 2;
    } catch (const mcgap::Error& e) {
        std::cerr << "mcgap: " << e.what() << '\n';
        return e.numerical() ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "mcgap: internal error: " << e.what() << '\n';
        return 3;
    }
}
