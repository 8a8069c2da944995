#include "mcgap/intervals.hpp"

#include "mcgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mcgap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval clip01(double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (hi < lo) hi = lo;
    return Interval{lo, hi};
}

Interval intersect(const Interval& a, const Interval& b) {
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (r.hi < r.lo) r.hi = r.lo;
    return r;
}

} // namespace

double tail_function(double t, std::int64_t n, int d, double c) {
    if (t <= 0.0) return kInf;
    const double dd = static_cast<double>(d);
    double factor = 1.0;
    const double ratio = 2.0 * static_cast<double>(n) / t;
    if (ratio > 1.0) {
        const double ceil_plus = std::max(std::ceil(std::log(ratio) / std::log(c)), 0.0);
        factor += ceil_plus;
    }
    return 2.0 * dd * dd * factor * std::exp(-t);
}

TailParams tail_threshold(std::int64_t n, int d, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        fail(errc::invalid_delta, "delta = " + std::to_string(delta) + " outside (0, 1)");
    if (n < 2) fail(errc::path_too_short, "n = " + std::to_string(n) + " < 2");
    if (d < 2) fail(errc::index_out_of_range, "d = " + std::to_string(d) + " < 2");

    const double c = 1.1;
    // Bracket the threshold by doubling, then bisect. f is non-increasing
    // with downward jumps at the ceiling steps, so we keep the invariant
    // f(hi) <= delta < f(lo) and return hi: a value that satisfies the
    // inequality even when the infimum sits exactly on a jump.
    double lo = 0.0;
    double hi = 1.0;
    int guard = 0;
    while (tail_function(hi, n, d, c) > delta) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 1100) fail(errc::no_convergence, "tail threshold bracket failed");
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (tail_function(mid, n, d, c) <= delta)
            hi = mid;
        else
            lo = mid;
    }
    return TailParams{c, hi, n, d, delta};
}

Matrix entrywise_bounds(const StochasticMatrix& P_hat, const TransitionCounts& counts,
                        const TailParams& tail) {
    const int d = P_hat.dim();
    const double tau = tail.tau;
    const double c = tail.c;
    const double inv_d = 1.0 / d;
    Matrix B(d, d);
    for (int i = 0; i < d; ++i) {
        const auto n_i = counts.n_visits[static_cast<std::size_t>(i)];
        if (n_i == 0) {
            for (int j = 0; j < d; ++j) B(i, j) = 1.0;
            continue;
        }
        const double ni = static_cast<double>(n_i);
        const double lead = c * tau / (2.0 * ni);
        const double sqrt_lead = std::sqrt(lead);
        for (int j = 0; j < d; ++j) {
            const double p = P_hat(i, j);
            const double inner =
                lead + std::sqrt(2.0 * c * p * (1.0 - p) * tau / ni) +
                ((4.0 / 3.0) * tau + std::fabs(p - inv_d)) / ni;
            const double root = sqrt_lead + std::sqrt(inner);
            B(i, j) = std::min(root * root, 1.0);
        }
    }
    return B;
}

double spectral_gap_estimate(const EigenvalueList& eigs) {
    const int d = eigs.dim();
    if (d < 2)
        fail(errc::too_few_eigenvalues, "need at least 2 eigenvalues, got " + std::to_string(d));
    const double second = eigs.values[1];
    const double last = eigs.values[static_cast<std::size_t>(d - 1)];
    return 1.0 - std::max(second, std::fabs(last));
}

double sensitivity(const Matrix& a_group_inv) {
    const int d = a_group_inv.rows();
    double worst = 0.0;
    for (int j = 0; j < d; ++j) {
        double col_min = a_group_inv(0, j);
        for (int i = 1; i < d; ++i) col_min = std::min(col_min, a_group_inv(i, j));
        worst = std::max(worst, a_group_inv(j, j) - col_min);
    }
    return 0.5 * worst;
}

PiBounds pi_bounds(double kappa, const Matrix& B, const ProbabilityVector& pi_hat) {
    const double b = kappa * max_abs(B);
    double worst = 0.0;
    for (int i = 0; i < pi_hat.dim(); ++i) {
        const double p = pi_hat[i];
        worst = std::max(worst, b / p);
        const double floor = p - b;
        // x/0 is +inf by convention: once b eats the smallest entry the
        // relative bound carries no information and the intervals go trivial.
        worst = std::max(worst, floor > 0.0 ? b / floor : (b > 0.0 ? kInf : 0.0));
    }
    return PiBounds{b, 0.5 * worst};
}

double gap_width(double rho, const ProbabilityVector& pi_hat, const Matrix& B) {
    if (std::isinf(rho)) return kInf;
    const int d = pi_hat.dim();
    double sum = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double bij = B(i, j);
            sum += (pi_hat[i] / pi_hat[j]) * bij * bij;
        }
    const double stretch = 1.0 + 2.0 * rho + rho * rho;
    return 2.0 * rho + rho * rho + stretch * std::sqrt(sum);
}

IntervalSet empirical_intervals(const ProbabilityVector& pi_hat, const BoundSet& bounds) {
    const int d = pi_hat.dim();
    IntervalSet s;
    s.pi.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) s.pi.push_back(clip01(pi_hat[i] - bounds.b, pi_hat[i] + bounds.b));

    const double g = bounds.gap_hat;
    const double w = bounds.w;
    s.gap = clip01(g - w, g + w);

    const double pm = pi_hat.min_value();
    s.pi_min = clip01(pm - bounds.b, pm + bounds.b);

    // Derived output, not a separate guarantee: relaxation time is 1/gap, a
    // monotone transform of the gap interval.
    const double up = g + w;
    const double down = g - w;
    double lo = up > 0.0 ? 1.0 / up : kInf;
    const double hi = down > 0.0 ? 1.0 / down : kInf;
    if (lo > hi) lo = hi;
    s.relaxation = Interval{lo, hi};
    return s;
}

CombinedResult combined_intervals(const IntervalSet& empirical, const ProbabilityVector& pi_hat,
                                  const BoundSet& bounds, std::int64_t n, int d, double delta) {
    const double pm_hat = pi_hat.min_value();
    const double pi_min_lo = std::max(pm_hat - bounds.b, 0.0);
    const double gap_lo = std::max(bounds.gap_hat - bounds.w, 0.0);

    if (!(pi_min_lo > 0.0) || !(gap_lo > 0.0)) {
        // Nothing to plug in; hand back the one-delta intervals unchanged so
        // callers still get valid (if wide) answers, and flag it.
        return CombinedResult{empirical.pi_min, empirical.gap, true};
    }

    const double dev = gap_deviation_bound(n, d, delta, pi_min_lo, gap_lo);
    const Interval v = intersect(clip01(bounds.gap_hat - dev, bounds.gap_hat + dev), empirical.gap);

    const double r = pi_min_relative_error(n, d, delta, pi_min_lo, gap_lo);
    const double u_lo = pm_hat / (1.0 + r);
    const double u_hi = r < 1.0 ? pm_hat / (1.0 - r) : kInf;
    const Interval u = intersect(clip01(u_lo, u_hi), empirical.pi_min);

    return CombinedResult{u, v, false};
}

// The deviation bounds for the plug-in point estimates, phrased in terms of
// lower bounds on pi_min and the gap so that observable quantities can be
// substituted. Kept in one place: everything else treats them as opaque.
double gap_deviation_bound(std::int64_t n, int d, double delta, double pi_min_lo, double gap_lo) {
    const double nn = static_cast<double>(n);
    return std::sqrt(std::log(d / delta) * std::log(nn) / (pi_min_lo * gap_lo * nn));
}

double pi_min_relative_error(std::int64_t n, int d, double delta, double pi_min_lo, double gap_lo) {
    const double nn = static_cast<double>(n);
    return std::sqrt(std::log(d / (pi_min_lo * delta)) / (pi_min_lo * gap_lo * nn));
}

} // namespace mcgap
