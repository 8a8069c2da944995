#pragma once

#include "mcgap/errors.hpp"
#include "mcgap/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mcgap {

// One observed trajectory X_1..X_n over a state space {0..d-1}. States are
// 0-based internally; any 1-based convention is handled at the I/O boundary.
// Immutable after construction; construction enforces the invariants
// (n >= 2, d >= 2, every state in range).
class SamplePath {
public:
    SamplePath(std::vector<std::int32_t> states, int num_states);

    std::int64_t length() const noexcept { return static_cast<std::int64_t>(states_.size()); }
    int num_states() const noexcept { return num_states_; }
    std::int32_t state(std::int64_t t) const noexcept { return states_[static_cast<std::size_t>(t)]; }
    const std::vector<std::int32_t>& states() const noexcept { return states_; }

private:
    std::vector<std::int32_t> states_;
    int num_states_ = 0;
};

// Validate raw integer states and build a SamplePath. When d_hint is absent,
// d is inferred as 1 + max(state); inference is risky if the top states were
// never visited, so callers that can know d should pass it.
SamplePath validate_path(const std::vector<std::int64_t>& raw, std::optional<int> d_hint);

// Row-stochastic square matrix: entries >= 0, each row summing to 1 within
// tol (default 1e-12). Entries are stored exactly as given; no renormalizing.
class StochasticMatrix {
public:
    explicit StochasticMatrix(Matrix m, double tol = 1e-12);

    int dim() const noexcept { return m_.rows(); }
    double operator()(int i, int j) const noexcept { return m_(i, j); }
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

// Nonnegative vector summing to 1 within tol (default 1e-12). A default
// constructed instance is empty and only valid as a placeholder.
class ProbabilityVector {
public:
    ProbabilityVector() = default;
    explicit ProbabilityVector(std::vector<double> v, double tol = 1e-12);

    int dim() const noexcept { return static_cast<int>(v_.size()); }
    double operator[](int i) const noexcept { return v_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const noexcept { return v_; }
    double min_value() const;

private:
    std::vector<double> v_;
};

// Detailed balance test: true iff |pi_i P_ij - pi_j P_ji| <= tol for all
// i, j. Pure predicate, never throws for valid inputs.
bool check_reversible(const StochasticMatrix& P, const ProbabilityVector& pi, double tol);

} // namespace mcgap
