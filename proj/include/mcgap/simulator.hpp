#pragma once

#include "mcgap/estimator.hpp"
#include "mcgap/linalg.hpp"
#include "mcgap/types.hpp"

#include <cstdint>
#include <vector>

namespace mcgap {

// A chain with known ground truth, used both for simulation and as the
// reference side of coverage experiments. The spectral gap comes from the
// symmetric representation built on the true (P, pi); kappa from the true
// group inverse.
struct ChainModel {
    StochasticMatrix P;
    ProbabilityVector pi;
    double gap = 0.0;
    bool reversible = false;
    double kappa = 0.0;
    Matrix a_group;
    EigenvalueList eigenvalues;

    // cumulative rows for inverse-CDF sampling, last entry forced to 1
    std::vector<double> pi_cum;
    std::vector<double> row_cum;

    int dim() const noexcept { return P.dim(); }
    double pi_min() const { return pi.min_value(); }
};

// Build a model from an arbitrary stochastic matrix: solves for pi, checks
// reversibility at 1e-12, computes gap and kappa from the truth.
ChainModel make_chain_model(Matrix P);

// Tridiagonal birth-death chain with up-rates up[0..d-2] and down-rates
// down[0..d-2] (down[i] is the rate from state i+1 to state i). Reversible
// by construction; pi computed by the product formula and cross-checked
// against the linear solve.
ChainModel birth_death_chain(int d, const std::vector<double>& up,
                             const std::vector<double>& down);

// Random walk on a weighted undirected graph: P_ij = w_ij / sum_k w_ik,
// pi_i proportional to the weighted degree. Weights must be symmetric and
// nonnegative with connected support.
ChainModel random_walk_on_weighted_graph(const Matrix& weights);

struct StartSpec {
    bool stationary = true;
    int state = 0;

    static StartSpec from_stationary() { return StartSpec{}; }
    static StartSpec at(int s) { return StartSpec{false, s}; }
};

// Sample X_1..X_n. Deterministic given the seed: the generator is
// std::mt19937_64 seeded directly; each uniform is the top 53 bits of one
// output mapped to [0,1); each draw picks the first index whose cumulative
// probability is >= u.
SamplePath sample_path(const ChainModel& model, std::int64_t n, std::uint64_t seed,
                       const StartSpec& start = {});

// Stable per-trial seed derivation (splitmix64 finalizer over
// master + odd-constant * (trial+1)); documented so parallel runs are
// reproducible anywhere this implementation runs.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

struct TrialResult {
    std::uint64_t seed = 0;
    double gap_hat = 0.0;
    double pi_min_hat = 0.0;
    double b_hat = 0.0;
    double w_hat = 0.0;
    bool covered_pi = false;       // all pi_i simultaneously
    bool covered_gap = false;
    bool covered_u = false;        // pi_min in U
    bool covered_v = false;        // gap in V
    bool v_subset_alg1 = false;
    bool degenerate = false;
    double u_width = 0.0;
    double v_width = 0.0;
};

struct Quartiles {
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
};

struct CoverageSummary {
    std::int64_t n = 0;
    double delta = 0.0;
    int trials = 0;
    std::uint64_t master_seed = 0;
    double true_gap = 0.0;
    double true_pi_min = 0.0;

    double cov_pi = 0.0, cov_gap = 0.0, cov_u = 0.0, cov_v = 0.0;
    double se_pi = 0.0, se_gap = 0.0, se_u = 0.0, se_v = 0.0;
    double frac_v_subset = 0.0;
    double frac_degenerate = 0.0;
    Quartiles b_hat, w_hat, u_width, v_width;

    std::vector<TrialResult> trial_results;
};

// Monte-Carlo coverage of the intervals against the model's ground truth.
// Trials run independently (in parallel across `jobs` workers when OpenMP is
// available, all workers when jobs <= 0); per-trial seeds come from
// trial_seed, and aggregation is order-independent, so the summary is a
// deterministic function of (model, n, delta, trials, master_seed).
CoverageSummary run_coverage(const ChainModel& model, std::int64_t n, double delta,
                             int trials, std::uint64_t master_seed, int jobs = 0);

} // namespace mcgap
