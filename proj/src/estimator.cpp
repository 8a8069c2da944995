#include "mcgap/estimator.hpp"

#include "mcgap/log.hpp"

#include <chrono>
#include <cmath>

namespace mcgap {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

EstimationReport estimate_path(const SamplePath& path, double delta, const EstimateOptions& opts) {
    const auto t_start = std::chrono::steady_clock::now();
    const int d = path.num_states();
    const std::int64_t n = path.length();

    EstimationReport rep;
    rep.n = n;
    rep.d = d;
    rep.delta = delta;

    auto t0 = std::chrono::steady_clock::now();
    const TransitionCounts counts = count_transitions(path);
    StochasticMatrix p_hat = smoothed_matrix(counts, d);
    rep.timings.count_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    rep.pi_hat = stationary_distribution(p_hat);

    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - p_hat(i, j);
    Matrix a_sharp = group_inverse(a, rep.pi_hat);

    const Matrix sym_l = build_sym_L(p_hat, rep.pi_hat);
    rep.eigenvalues = symmetric_eigenvalues(sym_l);
    rep.gap_hat = spectral_gap_estimate(rep.eigenvalues);
    rep.timings.spectral_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const TailParams tail = tail_threshold(n, d, delta);
    rep.c = tail.c;
    rep.tau_hat = tail.tau;

    Matrix B = entrywise_bounds(p_hat, counts, tail);
    rep.kappa_hat = sensitivity(a_sharp);

    BoundSet bounds;
    bounds.gap_hat = rep.gap_hat;
    bounds.kappa = rep.kappa_hat;
    bounds.max_b = max_abs(B);
    const PiBounds pb = pi_bounds(rep.kappa_hat, B, rep.pi_hat);
    bounds.b = pb.b;
    bounds.rho = pb.rho;
    bounds.w = gap_width(pb.rho, rep.pi_hat, B);
    rep.b_hat = bounds.b;
    rep.rho_hat = bounds.rho;
    rep.w_hat = bounds.w;
    rep.max_b = bounds.max_b;

    bounds.B = B;  // BoundSet keeps its own copy for callers that want it
    rep.intervals = empirical_intervals(rep.pi_hat, bounds);

    if (opts.combined) {
        const CombinedResult comb =
            combined_intervals(rep.intervals, rep.pi_hat, bounds, n, d, delta);
        rep.intervals.combined_pi_min = comb.u;
        rep.intervals.combined_gap = comb.v;
        rep.intervals.has_combined = true;
        rep.intervals.degenerate_lower_bound = comb.degenerate;
        if (comb.degenerate)
            log::write(log_level::info,
                       "combined intervals degenerate (b=%.3g, w=%.3g); reporting the "
                       "one-delta intervals",
                       bounds.b, bounds.w);
    }
    rep.timings.bounds_ms = ms_since(t0);

    if (opts.keep_matrices) {
        rep.has_matrices = true;
        rep.P_hat = p_hat.matrix();
        rep.a_group = std::move(a_sharp);
        rep.B = std::move(B);
    }

    rep.timings.total_ms = ms_since(t_start);
    return rep;
}

} // namespace mcgap
