#pragma once

#include "mcgap/intervals.hpp"
#include "mcgap/linalg.hpp"
#include "mcgap/path_stats.hpp"
#include "mcgap/types.hpp"

#include <cstdint>

namespace mcgap {

struct EstimateOptions {
    bool combined = true;        // compute the intersected U, V intervals
    bool keep_matrices = false;  // retain P_hat, A#, B in the report
};

struct Timings {
    double count_ms = 0.0;
    double spectral_ms = 0.0;  // stationary solve + group inverse + eigenvalues
    double bounds_ms = 0.0;
    double total_ms = 0.0;
};

// Every output of the estimation pipeline for one path.
struct EstimationReport {
    std::int64_t n = 0;
    int d = 0;
    double delta = 0.0;
    double c = 0.0;

    ProbabilityVector pi_hat;
    EigenvalueList eigenvalues;
    double gap_hat = 0.0;
    double tau_hat = 0.0;
    double kappa_hat = 0.0;
    double b_hat = 0.0;
    double rho_hat = 0.0;
    double w_hat = 0.0;
    double max_b = 0.0;

    IntervalSet intervals;
    Timings timings;

    bool has_matrices = false;
    Matrix P_hat;    // only filled when keep_matrices
    Matrix a_group;  // "
    Matrix B;        // "
};

// The full pipeline: counts -> smoothed matrix -> stationary distribution ->
// group inverse -> symmetric spectrum -> tail threshold -> entrywise bounds
// -> sensitivity -> b, rho, w -> intervals (and combined intervals unless
// disabled). Deterministic function of (path, delta, opts).
EstimationReport estimate_path(const SamplePath& path, double delta,
                               const EstimateOptions& opts = {});

} // namespace mcgap
