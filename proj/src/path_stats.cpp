#include "mcgap/path_stats.hpp"

#include "mcgap/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstddef>
#include <string>

namespace mcgap {

namespace {

// Count transitions t in [lo, hi) of the path (pairs (X_t, X_{t+1})).
void count_range(const SamplePath& path, std::int64_t lo, std::int64_t hi,
                 std::vector<std::int64_t>& visits, std::vector<std::int64_t>& pairs) {
    const int d = path.num_states();
    const std::int32_t* s = path.states().data();
    for (std::int64_t t = lo; t < hi; ++t) {
        const std::int32_t i = s[t];
        const std::int32_t j = s[t + 1];
        ++visits[static_cast<std::size_t>(i)];
        ++pairs[static_cast<std::size_t>(i) * d + j];
    }
}

} // namespace

TransitionCounts count_transitions_serial(const SamplePath& path) {
    const int d = path.num_states();
    TransitionCounts c;
    c.n_visits.assign(static_cast<std::size_t>(d), 0);
    c.n_pairs.assign(static_cast<std::size_t>(d) * d, 0);
    c.path_length = path.length();
    count_range(path, 0, path.length() - 1, c.n_visits, c.n_pairs);
    return c;
}

TransitionCounts count_transitions_chunked(const SamplePath& path, int nchunks) {
    if (nchunks < 1)
        fail(errc::index_out_of_range,
             "count_transitions_chunked: nchunks must be >= 1, got " + std::to_string(nchunks));
    const std::int64_t transitions = path.length() - 1;
    const int d = path.num_states();
    const std::size_t dd = static_cast<std::size_t>(d) * d;
    std::vector<std::vector<std::int64_t>> visits(static_cast<std::size_t>(nchunks));
    std::vector<std::vector<std::int64_t>> pairs(static_cast<std::size_t>(nchunks));

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int k = 0; k < nchunks; ++k) {
        const std::int64_t lo = transitions * k / nchunks;
        const std::int64_t hi = transitions * (k + 1) / nchunks;
        auto& v = visits[static_cast<std::size_t>(k)];
        auto& p = pairs[static_cast<std::size_t>(k)];
        v.assign(static_cast<std::size_t>(d), 0);
        p.assign(dd, 0);
        count_range(path, lo, hi, v, p);
    }

    TransitionCounts c;
    c.n_visits.assign(static_cast<std::size_t>(d), 0);
    c.n_pairs.assign(dd, 0);
    c.path_length = path.length();
    // Integer merges commute, so the result is exactly the serial one.
    for (int k = 0; k < nchunks; ++k) {
        for (int i = 0; i < d; ++i)
            c.n_visits[static_cast<std::size_t>(i)] += visits[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        for (std::size_t e = 0; e < dd; ++e) c.n_pairs[e] += pairs[static_cast<std::size_t>(k)][e];
    }
    return c;
}

TransitionCounts count_transitions(const SamplePath& path) {
#ifdef _OPENMP
    const std::int64_t transitions = path.length() - 1;
    const int max_threads = omp_get_max_threads();
    // Below ~1M transitions the fork/merge overhead wins; keep it serial.
    if (max_threads > 1 && transitions >= (1 << 20))
        return count_transitions_chunked(path, max_threads);
#endif
    return count_transitions_serial(path);
}

StochasticMatrix smoothed_matrix(const TransitionCounts& counts, int d) {
    if (counts.dim() != d)
        fail(errc::index_out_of_range, "smoothed_matrix: counts are over " +
                                           std::to_string(counts.dim()) + " states, not " +
                                           std::to_string(d));
    const double alpha = 1.0 / d;  // formed once so all rows share the bits
    Matrix p(d, d);
    for (int i = 0; i < d; ++i) {
        const double denom = static_cast<double>(counts.n_visits[static_cast<std::size_t>(i)]) + 1.0;
        for (int j = 0; j < d; ++j)
            p(i, j) = (static_cast<double>(counts.pair(i, j)) + alpha) / denom;
    }
    // Row sums are (N_i + d*(1/d)) / (N_i + 1) = 1 up to a few ulps; the
    // strict constructor tolerance is far above that.
    return StochasticMatrix(std::move(p));
}

} // namespace mcgap
