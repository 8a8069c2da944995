// Independent oracles for the test suite. Everything here deliberately takes
// a different route from the library code it checks: eigenvalues by inertia
// bisection instead of Jacobi, the group inverse by a bordered solve instead
// of the fundamental matrix, counting by sort-and-run-length, and the tail
// threshold by brute-force grid scan.
#pragma once

#include "mcgap/linalg.hpp"
#include "mcgap/path_stats.hpp"
#include "mcgap/simulator.hpp"
#include "mcgap/types.hpp"

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace oracle {

mcgap::Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

// Eigenvalues (descending) by Sylvester inertia counting on LDL^T plus
// bisection. O(d^4); keep d small.
std::vector<double> eigenvalues_by_bisection(const mcgap::Matrix& S);

// Group inverse column by column from the bordered system
// [A 1; pi^T 0] [x; y] = [e_j; 0], whose x block is A#'s j-th column.
mcgap::Matrix group_inverse_bordered(const mcgap::Matrix& A, const std::vector<double>& pi);

// Recount transitions by sorting the pair list; order-insensitive by
// construction.
mcgap::TransitionCounts recount(const mcgap::SamplePath& path);

// First t with f(t) <= delta, located on a geometric grid of `geom_points`
// points and refined by linear scan to 1e-7. Reimplements f locally.
double tau_grid_scan(std::int64_t n, int d, double delta, std::int64_t geom_points);

// Random strictly-positive symmetric-weight chains for property sweeps:
// aperiodic, connected, reversible by construction.
mcgap::ChainModel random_reversible_chain(std::uint64_t seed, int d);

// Random birth-death chain with rates in [0.05, 0.45].
mcgap::ChainModel random_birth_death(std::uint64_t seed, int d);

// Convenience factory, not an oracle: birth-death chain with constant rates
// (the library itself takes the full d-1 rate vectors).
mcgap::ChainModel bd_chain(int d, double up, double down);

// Max residual over the three group-inverse axioms
// A A# A = A, A# A A# = A#, A A# = A# A.
double group_axiom_residual(const mcgap::Matrix& A, const mcgap::Matrix& sharp);

} // namespace oracle
