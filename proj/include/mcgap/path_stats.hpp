#pragma once

#include "mcgap/types.hpp"

#include <cstdint>
#include <vector>

namespace mcgap {

// Visit counts N_i over t in [1, n-1] and transition pair counts N_{i,j}.
// Always satisfies sum_i N_i = n - 1 and sum_j N_{i,j} = N_i.
struct TransitionCounts {
    std::vector<std::int64_t> n_visits;  // N_i, size d
    std::vector<std::int64_t> n_pairs;   // N_{i,j}, row-major d*d
    std::int64_t path_length = 0;        // n

    int dim() const noexcept { return static_cast<int>(n_visits.size()); }
    std::int64_t pair(int i, int j) const noexcept {
        return n_pairs[static_cast<std::size_t>(i) * n_visits.size() + j];
    }
};

// Single-pass reference implementation; the contract baseline.
TransitionCounts count_transitions_serial(const SamplePath& path);

// Splits the transition range [0, n-1) into nchunks disjoint slices, counts
// each independently, and merges the integer tallies. The merge is exact, so
// the result equals the serial version for any nchunks >= 1. The per-chunk
// loop parallelizes under OpenMP; without it the chunks run in sequence.
TransitionCounts count_transitions_chunked(const SamplePath& path, int nchunks);

// Same result as the serial version, dispatching to the chunked counter when
// the path is long enough and more than one OpenMP thread is available.
TransitionCounts count_transitions(const SamplePath& path);

// Smoothed transition probability estimates
// P_ij = (N_ij + 1/d) / (N_i + 1). Strictly positive everywhere; an
// unvisited state yields a uniform row.
StochasticMatrix smoothed_matrix(const TransitionCounts& counts, int d);

} // namespace mcgap
