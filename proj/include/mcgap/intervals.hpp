#pragma once

#include "mcgap/linalg.hpp"
#include "mcgap/path_stats.hpp"
#include "mcgap/types.hpp"

#include <cstdint>

namespace mcgap {

// Parameters of the empirical tail threshold: the least t >= 0 with
// f(t) = 2 d^2 (1 + ceil_plus(log_c(2n/t))) e^{-t} <= delta, at c = 1.1.
struct TailParams {
    double c = 1.1;
    double tau = 0.0;
    std::int64_t n = 0;
    int d = 0;
    double delta = 0.0;
};

// f(t) above, with ceil_plus(x) = max(ceil(x), 0); for t >= 2n the log term
// contributes nothing. Non-increasing in t, with downward jumps where the
// ceiling steps. Exposed so tests can check the threshold inequality directly.
double tail_function(double t, std::int64_t n, int d, double c);

// Solve for tau: bracket by doubling from t = 1, then bisect to 1e-9 and
// return the upper endpoint, so f(tau) <= delta is guaranteed (never rounds
// below the infimum across a jump).
TailParams tail_threshold(std::int64_t n, int d, double delta);

// Entrywise confidence bounds B_ij for |P_ij - P_hat_ij|:
//   B_ij = ( sqrt(c tau / (2 N_i))
//          + sqrt( c tau / (2 N_i)
//                + sqrt(2 c P_ij (1 - P_ij) tau / N_i)
//                + ((4/3) tau + |P_ij - 1/d|) / N_i ) )^2
// capped at 1; rows with N_i = 0 get B_ij = 1 outright.
Matrix entrywise_bounds(const StochasticMatrix& P_hat, const TransitionCounts& counts,
                        const TailParams& tail);

// gap_hat = 1 - max(lambda_2, |lambda_d|). May be negative; callers clip.
double spectral_gap_estimate(const EigenvalueList& eigs);

// Relative sensitivity of the stationary distribution:
// kappa = (1/2) max_j ( A#_jj - min_i A#_ij ). Always >= 0.
double sensitivity(const Matrix& a_group_inv);

struct PiBounds {
    double b = 0.0;    // kappa * max_ij B_ij
    double rho = 0.0;  // may be +inf
};

// b and rho = (1/2) max_i max( b / pi_i, b / max(pi_i - b, 0) ), with
// x/0 = +inf. An infinite rho propagates to trivial intervals downstream
// rather than failing; small-n runs are expected to land here.
PiBounds pi_bounds(double kappa, const Matrix& B, const ProbabilityVector& pi_hat);

// w = 2 rho + rho^2 + (1 + 2 rho + rho^2) (sum_ij (pi_i/pi_j) B_ij^2)^{1/2};
// +inf when rho is +inf.
double gap_width(double rho, const ProbabilityVector& pi_hat, const Matrix& B);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    double width() const noexcept { return hi - lo; }
};

// Everything Steps 5 through 9 produce, bundled for reporting.
struct BoundSet {
    Matrix B;
    double gap_hat = 0.0;
    double kappa = 0.0;
    double b = 0.0;
    double rho = 0.0;
    double w = 0.0;
    double max_b = 0.0;
};

struct IntervalSet {
    std::vector<Interval> pi;  // per-state, clipped to [0,1]
    Interval gap;              // clipped to [0,1]
    Interval pi_min;           // clipped to [0,1]
    Interval relaxation;       // derived plumbing: 1/gap interval, hi may be +inf
    Interval combined_pi_min;  // U
    Interval combined_gap;     // V
    bool has_combined = false;
    bool degenerate_lower_bound = false;
};

// Confidence intervals at level 1 - delta from the computed bounds:
// pi_i in [pi_hat_i +- b], gap in [gap_hat +- w], pi_min in [min_i pi_hat_i
// +- b], all clipped to [0,1]. The relaxation-time interval is the monotone
// transform [1/(gap_hat + w), 1/max(gap_hat - w, 0)] and is derived output,
// not a separate guarantee.
IntervalSet empirical_intervals(const ProbabilityVector& pi_hat, const BoundSet& bounds);

struct CombinedResult {
    Interval u;  // for pi_min
    Interval v;  // for gap
    bool degenerate = false;
};

// Sharper intervals holding with probability >= 1 - 2 delta: plug the
// observable lower bounds pi_min_lo = max(min_i pi_hat_i - b, 0) and
// gap_lo = max(gap_hat - w, 0) into the point-estimate deviation bounds,
// solve for pi_min where it appears on both sides, and intersect with the
// intervals above. If either lower bound is zero the plug-in is vacuous:
// the unintersected intervals are returned with the degenerate flag set.
CombinedResult combined_intervals(const IntervalSet& empirical, const ProbabilityVector& pi_hat,
                                  const BoundSet& bounds, std::int64_t n, int d, double delta);

// The two deviation-bound formulas the combined construction rests on,
// isolated here so nothing else depends on their exact algebraic shape.
// gap_deviation_bound: additive bound on |gap_hat - gap|.
// pi_min_relative_error: relative bound r with pi_min in
//   [min_i pi_hat_i / (1 + r), min_i pi_hat_i / (1 - r)] after solving.
double gap_deviation_bound(std::int64_t n, int d, double delta, double pi_min_lo, double gap_lo);
double pi_min_relative_error(std::int64_t n, int d, double delta, double pi_min_lo, double gap_lo);

} // namespace mcgap
