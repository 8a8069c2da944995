#include "mcgap/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mcgap {

namespace {

void check_states(const std::vector<std::int32_t>& states, int d) {
    if (states.empty()) fail(errc::empty_input, "path has no states");
    if (states.size() < 2)
        fail(errc::path_too_short, "need at least 2 states (one transition), got " +
                                       std::to_string(states.size()));
    if (d < 2) fail(errc::index_out_of_range, "state space must have at least 2 states, got d=" +
                                                  std::to_string(d));
    for (std::size_t t = 0; t < states.size(); ++t) {
        const std::int32_t s = states[t];
        if (s < 0 || s >= d)
            fail(errc::index_out_of_range, "state " + std::to_string(s) + " at position " +
                                               std::to_string(t) + " outside [0, " +
                                               std::to_string(d) + ")");
    }
}

} // namespace

SamplePath::SamplePath(std::vector<std::int32_t> states, int num_states)
    : states_(std::move(states)), num_states_(num_states) {
    check_states(states_, num_states_);
}

SamplePath validate_path(const std::vector<std::int64_t>& raw, std::optional<int> d_hint) {
    if (raw.empty()) fail(errc::empty_input, "path has no states");
    std::vector<std::int32_t> states;
    states.reserve(raw.size());
    for (std::size_t t = 0; t < raw.size(); ++t) {
        const std::int64_t s = raw[t];
        if (s < 0 || s > std::numeric_limits<std::int32_t>::max())
            fail(errc::index_out_of_range,
                 "state " + std::to_string(s) + " at position " + std::to_string(t));
        states.push_back(static_cast<std::int32_t>(s));
    }
    int d;
    if (d_hint.has_value()) {
        d = *d_hint;
    } else {
        d = 1 + *std::max_element(states.begin(), states.end());
    }
    return SamplePath(std::move(states), d);
}

StochasticMatrix::StochasticMatrix(Matrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) fail(errc::non_stochastic, "matrix is not square");
    if (m_.rows() == 0) fail(errc::empty_input, "matrix is empty");
    for (int i = 0; i < m_.rows(); ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < m_.cols(); ++j) {
            const double p = m_(i, j);
            if (!(p >= 0.0) || !std::isfinite(p))
                fail(errc::non_stochastic, "entry (" + std::to_string(i) + "," +
                                               std::to_string(j) + ") = " + std::to_string(p) +
                                               " is not a probability");
            row_sum += p;
        }
        if (std::fabs(row_sum - 1.0) > tol)
            fail(errc::non_stochastic, "row " + std::to_string(i) + " sums to " +
                                           std::to_string(row_sum) + ", off by more than " +
                                           std::to_string(tol));
    }
}

ProbabilityVector::ProbabilityVector(std::vector<double> v, double tol) : v_(std::move(v)) {
    if (v_.empty()) fail(errc::empty_input, "probability vector is empty");
    double sum = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (!(v_[i] >= 0.0) || !std::isfinite(v_[i]))
            fail(errc::non_stochastic,
                 "entry " + std::to_string(i) + " = " + std::to_string(v_[i]) + " is negative");
        sum += v_[i];
    }
    if (std::fabs(sum - 1.0) > tol)
        fail(errc::non_stochastic,
             "probabilities sum to " + std::to_string(sum) + ", off by more than " +
                 std::to_string(tol));
}

double ProbabilityVector::min_value() const {
    return *std::min_element(v_.begin(), v_.end());
}

bool check_reversible(const StochasticMatrix& P, const ProbabilityVector& pi, double tol) {
    const int d = P.dim();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (std::fabs(pi[i] * P(i, j) - pi[j] * P(j, i)) > tol) return false;
    return true;
}

} // namespace mcgap
