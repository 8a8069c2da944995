#include "mcgap/simulator.hpp"

#include "mcgap/errors.hpp"
#include "mcgap/log.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace mcgap {

namespace {

// Shared tail end of the factory functions: wrap and validate P, fix pi
// (closed form if the family provides one, linear solve otherwise), then
// derive gap, kappa and the sampling tables from the truth.
ChainModel finish_model(Matrix p_raw, std::vector<double> pi_closed) {
    StochasticMatrix P(std::move(p_raw));
    const int d = P.dim();

    ProbabilityVector pi;
    if (!pi_closed.empty()) {
        double sum = 0.0;
        for (double v : pi_closed) sum += v;
        for (double& v : pi_closed) v /= sum;
        ProbabilityVector closed(std::move(pi_closed));
        const ProbabilityVector solved = stationary_distribution(P);
        double diff = 0.0;
        for (int i = 0; i < d; ++i) diff = std::max(diff, std::fabs(closed[i] - solved[i]));
        if (diff > 1e-10)
            fail(errc::singular_system,
                 "closed-form stationary distribution disagrees with the linear solve by " +
                     std::to_string(diff));
        pi = std::move(closed);
    } else {
        pi = stationary_distribution(P);
    }

    const bool reversible = check_reversible(P, pi, 1e-12);

    EigenvalueList eigs = symmetric_eigenvalues(build_sym_L(P, pi));
    const double gap = spectral_gap_estimate(eigs);

    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - P(i, j);
    Matrix a_sharp = group_inverse(a, pi);
    const double kappa = sensitivity(a_sharp);

    std::vector<double> pi_cum(static_cast<std::size_t>(d));
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        acc += pi[i];
        pi_cum[static_cast<std::size_t>(i)] = acc;
    }
    pi_cum[static_cast<std::size_t>(d - 1)] = 1.0;

    std::vector<double> row_cum(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        acc = 0.0;
        for (int j = 0; j < d; ++j) {
            acc += P(i, j);
            row_cum[static_cast<std::size_t>(i) * d + j] = acc;
        }
        row_cum[static_cast<std::size_t>(i) * d + (d - 1)] = 1.0;
    }

    return ChainModel{std::move(P),    std::move(pi),       gap,
                      reversible,      kappa,               std::move(a_sharp),
                      std::move(eigs), std::move(pi_cum),   std::move(row_cum)};
}

inline double next_uniform(std::mt19937_64& eng) {
    // top 53 bits -> [0, 1)
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline int draw(const double* cum, int d, double u) {
    int j = 0;
    while (j < d - 1 && cum[j] < u) ++j;  // first index with cumulative >= u
    return j;
}

double nearest_rank(const std::vector<double>& sorted, double p) {
    const std::size_t t = sorted.size();
    std::size_t k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(t)));
    if (k == 0) k = 1;
    if (k > t) k = t;
    return sorted[k - 1];
}

Quartiles quartiles_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return Quartiles{nearest_rank(v, 0.25), nearest_rank(v, 0.5), nearest_rank(v, 0.75)};
}

} // namespace

ChainModel make_chain_model(Matrix P) { return finish_model(std::move(P), {}); }

ChainModel birth_death_chain(int d, const std::vector<double>& up,
                             const std::vector<double>& down) {
    if (d < 2) fail(errc::invalid_rates, "need d >= 2, got " + std::to_string(d));
    if (static_cast<int>(up.size()) != d - 1 || static_cast<int>(down.size()) != d - 1)
        fail(errc::invalid_rates, "need d-1 = " + std::to_string(d - 1) +
                                      " up and down rates, got " + std::to_string(up.size()) +
                                      " and " + std::to_string(down.size()));
    for (int i = 0; i < d - 1; ++i) {
        if (!(up[static_cast<std::size_t>(i)] > 0.0) || !(down[static_cast<std::size_t>(i)] > 0.0))
            fail(errc::invalid_rates, "rates must be strictly positive (index " +
                                          std::to_string(i) + ")");
    }
    for (int i = 0; i < d; ++i) {
        const double out = (i < d - 1 ? up[static_cast<std::size_t>(i)] : 0.0) +
                           (i > 0 ? down[static_cast<std::size_t>(i - 1)] : 0.0);
        if (out > 1.0 + 1e-12)
            fail(errc::invalid_rates,
                 "row " + std::to_string(i) + " rates sum to " + std::to_string(out) + " > 1");
    }

    Matrix p(d, d);
    for (int i = 0; i < d; ++i) {
        const double u = i < d - 1 ? up[static_cast<std::size_t>(i)] : 0.0;
        const double w = i > 0 ? down[static_cast<std::size_t>(i - 1)] : 0.0;
        if (i > 0) p(i, i - 1) = w;
        if (i < d - 1) p(i, i + 1) = u;
        p(i, i) = std::max(0.0, 1.0 - u - w);
    }

    // Product-form stationary distribution; finish_model rechecks it against
    // the generic solve.
    std::vector<double> pi(static_cast<std::size_t>(d));
    pi[0] = 1.0;
    for (int i = 0; i + 1 < d; ++i)
        pi[static_cast<std::size_t>(i + 1)] =
            pi[static_cast<std::size_t>(i)] * up[static_cast<std::size_t>(i)] /
            down[static_cast<std::size_t>(i)];
    return finish_model(std::move(p), std::move(pi));
}

ChainModel random_walk_on_weighted_graph(const Matrix& weights) {
    if (weights.rows() != weights.cols())
        fail(errc::invalid_rates, "weight matrix is not square");
    const int d = weights.rows();
    if (d < 2) fail(errc::invalid_rates, "need at least 2 vertices");
    const double scale = std::max(1.0, max_abs(weights));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double w = weights(i, j);
            if (!(w >= 0.0) || !std::isfinite(w))
                fail(errc::invalid_rates, "weight (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") = " + std::to_string(w));
            if (std::fabs(w - weights(j, i)) > 1e-12 * scale)
                fail(errc::invalid_rates, "weights are not symmetric at (" + std::to_string(i) +
                                              "," + std::to_string(j) + ")");
        }

    std::vector<double> strength(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += weights(i, j);
        if (!(s > 0.0))
            fail(errc::disconnected_graph, "vertex " + std::to_string(i) + " has no edges");
        strength[static_cast<std::size_t>(i)] = s;
    }

    // Reachability over the support; an unreached vertex means no stationary
    // distribution is unique and sampling would be meaningless.
    std::vector<char> seen(static_cast<std::size_t>(d), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < d; ++j)
            if (weights(i, j) > 0.0 && !seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = 1;
                stack.push_back(j);
            }
    }
    for (int i = 0; i < d; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            fail(errc::disconnected_graph, "vertex " + std::to_string(i) +
                                               " is not reachable from vertex 0");

    Matrix p(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) p(i, j) = weights(i, j) / strength[static_cast<std::size_t>(i)];
    return finish_model(std::move(p), std::move(strength));
}

SamplePath sample_path(const ChainModel& model, std::int64_t n, std::uint64_t seed,
                       const StartSpec& start) {
    if (n < 2) fail(errc::path_too_short, "n = " + std::to_string(n) + " < 2");
    const int d = model.dim();
    int cur;
    std::mt19937_64 eng(seed);
    if (start.stationary) {
        cur = draw(model.pi_cum.data(), d, next_uniform(eng));
    } else {
        if (start.state < 0 || start.state >= d)
            fail(errc::index_out_of_range, "start state " + std::to_string(start.state));
        cur = start.state;
    }

    std::vector<std::int32_t> states;
    states.reserve(static_cast<std::size_t>(n));
    states.push_back(static_cast<std::int32_t>(cur));
    for (std::int64_t t = 1; t < n; ++t) {
        cur = draw(model.row_cum.data() + static_cast<std::size_t>(cur) * d, d, next_uniform(eng));
        states.push_back(static_cast<std::int32_t>(cur));
    }
    return SamplePath(std::move(states), d);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    // splitmix64 finalizer over master + odd step * (trial+1); stable across
    // platforms and safe to evaluate from any worker in any order.
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (trial_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CoverageSummary run_coverage(const ChainModel& model, std::int64_t n, double delta, int trials,
                             std::uint64_t master_seed, int jobs) {
    if (trials < 1) fail(errc::invalid_argument, "trials must be >= 1");

    const double true_gap = model.gap;
    const double true_pi_min = model.pi_min();
    std::vector<TrialResult> results(static_cast<std::size_t>(trials));

#ifdef _OPENMP
    const int workers = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#else
    (void)jobs;
#endif
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t seed = trial_seed(master_seed, static_cast<std::uint64_t>(t));
        const SamplePath path = sample_path(model, n, seed, StartSpec::from_stationary());
        const EstimationReport rep = estimate_path(path, delta);

        TrialResult r;
        r.seed = seed;
        r.gap_hat = rep.gap_hat;
        r.pi_min_hat = rep.pi_hat.min_value();
        r.b_hat = rep.b_hat;
        r.w_hat = rep.w_hat;
        r.covered_pi = true;
        for (int i = 0; i < model.dim(); ++i)
            r.covered_pi = r.covered_pi && rep.intervals.pi[static_cast<std::size_t>(i)].contains(model.pi[i]);
        r.covered_gap = rep.intervals.gap.contains(true_gap);
        r.covered_u = rep.intervals.combined_pi_min.contains(true_pi_min);
        r.covered_v = rep.intervals.combined_gap.contains(true_gap);
        r.v_subset_alg1 = rep.intervals.combined_gap.lo >= rep.intervals.gap.lo &&
                          rep.intervals.combined_gap.hi <= rep.intervals.gap.hi;
        r.degenerate = rep.intervals.degenerate_lower_bound;
        r.u_width = rep.intervals.combined_pi_min.width();
        r.v_width = rep.intervals.combined_gap.width();
        results[static_cast<std::size_t>(t)] = r;
    }

    CoverageSummary s;
    s.n = n;
    s.delta = delta;
    s.trials = trials;
    s.master_seed = master_seed;
    s.true_gap = true_gap;
    s.true_pi_min = true_pi_min;

    const double t_inv = 1.0 / trials;
    int c_pi = 0, c_gap = 0, c_u = 0, c_v = 0, c_sub = 0, c_deg = 0;
    std::vector<double> bs, ws, us, vs;
    bs.reserve(results.size());
    ws.reserve(results.size());
    us.reserve(results.size());
    vs.reserve(results.size());
    for (const TrialResult& r : results) {
        c_pi += r.covered_pi;
        c_gap += r.covered_gap;
        c_u += r.covered_u;
        c_v += r.covered_v;
        c_sub += r.v_subset_alg1;
        c_deg += r.degenerate;
        bs.push_back(r.b_hat);
        ws.push_back(r.w_hat);
        us.push_back(r.u_width);
        vs.push_back(r.v_width);
    }
    const auto rate_se = [&](int count, double& rate, double& se) {
        rate = count * t_inv;
        se = std::sqrt(rate * (1.0 - rate) * t_inv);
    };
    rate_se(c_pi, s.cov_pi, s.se_pi);
    rate_se(c_gap, s.cov_gap, s.se_gap);
    rate_se(c_u, s.cov_u, s.se_u);
    rate_se(c_v, s.cov_v, s.se_v);
    s.frac_v_subset = c_sub * t_inv;
    s.frac_degenerate = c_deg * t_inv;
    s.b_hat = quartiles_of(std::move(bs));
    s.w_hat = quartiles_of(std::move(ws));
    s.u_width = quartiles_of(std::move(us));
    s.v_width = quartiles_of(std::move(vs));
    s.trial_results = std::move(results);
    return s;
}

} // namespace mcgap
