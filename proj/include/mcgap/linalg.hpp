#pragma once

#include "mcgap/matrix.hpp"
#include "mcgap/types.hpp"

#include <vector>

namespace mcgap {

// Partial-pivoted LU factorization, PA = LU packed in one matrix. Throws
// errc::singular_system when a pivot falls below d * eps * max|A|, which for
// our inputs signals a non-ergodic chain rather than a numerics bug.
struct LuFactors {
    Matrix lu;
    std::vector<int> piv;
};

LuFactors lu_factor(Matrix a);
std::vector<double> lu_solve(const LuFactors& f, std::vector<double> b);
Matrix lu_inverse(const LuFactors& f);

// Unique stationary distribution of an ergodic stochastic matrix, from the
// linear system (P^T - I) x = 0 with the last equation replaced by the
// normalization sum(x) = 1. Result is normalized to sum exactly 1 and checked
// to satisfy pi^T P = pi^T within 1e-12; entries must come out positive.
ProbabilityVector stationary_distribution(const StochasticMatrix& P);

// Group inverse A# of A = I - P for an ergodic chain with stationary
// distribution pi, via the fundamental matrix: Z = (A + 1 pi^T)^{-1},
// A# = Z - 1 pi^T. Postcondition I - A A# = 1 pi^T is verified internally.
Matrix group_inverse(const Matrix& A, const ProbabilityVector& pi);

// Sym(L) for L = Diag(pi)^{1/2} P Diag(pi)^{-1/2}: entries
// (sqrt(pi_i/pi_j) P_ij + sqrt(pi_j/pi_i) P_ji) / 2, written once per
// unordered pair so the output is symmetric bit-for-bit.
Matrix build_sym_L(const StochasticMatrix& P, const ProbabilityVector& pi);

// All eigenvalues, sorted non-increasing.
struct EigenvalueList {
    std::vector<double> values;

    int dim() const noexcept { return static_cast<int>(values.size()); }
};

// Full symmetric eigenvalue computation by cyclic Jacobi with the usual
// threshold schedule. Input must be symmetric within 1e-12 (absolute);
// accuracy is that of any backward-stable dense symmetric solver.
EigenvalueList symmetric_eigenvalues(const Matrix& S);

} // namespace mcgap
