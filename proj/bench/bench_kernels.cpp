// Timings for the parallel kernels against their serial reference. Not a
// test: run it by hand when touching the counting loop or the trial fan-out.

#include "mcgap/path_stats.hpp"
#include "mcgap/simulator.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mcgap;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run the serial code\n\n");
#endif

    const ChainModel chain =
        birth_death_chain(8, std::vector<double>(7, 0.45), std::vector<double>(7, 0.45));

    {
        const std::int64_t n = 20'000'000;
        std::printf("count_transitions, d=8, n=%lld\n", static_cast<long long>(n));
        const SamplePath path = sample_path(chain, n, 12345);
        TransitionCounts serial, parallel, chunked;
        const double t_serial = time_ms([&] { serial = count_transitions_serial(path); }, 3);
        const double t_par = time_ms([&] { parallel = count_transitions(path); }, 3);
        const double t_chunk = time_ms([&] { chunked = count_transitions_chunked(path, 8); }, 3);
        const bool equal =
            serial.n_visits == parallel.n_visits && serial.n_pairs == parallel.n_pairs;
        const bool equal_chunk =
            serial.n_visits == chunked.n_visits && serial.n_pairs == chunked.n_pairs;
        std::printf("  serial      %8.2f ms\n", t_serial);
        std::printf("  parallel    %8.2f ms   speedup %.2fx   results %s\n", t_par,
                    t_serial / t_par, equal ? "identical" : "DIFFER (bug!)");
        std::printf("  8 chunks    %8.2f ms   speedup %.2fx   results %s\n\n", t_chunk,
                    t_serial / t_chunk, equal_chunk ? "identical" : "DIFFER (bug!)");
    }

    {
        const std::int64_t n = 20'000;
        const int trials = 64;
        std::printf("run_coverage, d=8, n=%lld, trials=%d\n", static_cast<long long>(n), trials);
        CoverageSummary one, all;
        const double t_one = time_ms([&] { one = run_coverage(chain, n, 0.1, trials, 7, 1); }, 2);
        const double t_all = time_ms([&] { all = run_coverage(chain, n, 0.1, trials, 7, 0); }, 2);
        const bool equal = one.cov_pi == all.cov_pi && one.cov_gap == all.cov_gap &&
                           one.b_hat.median == all.b_hat.median &&
                           one.w_hat.median == all.w_hat.median;
        std::printf("  jobs=1   %8.2f ms\n", t_one);
        std::printf("  jobs=max %8.2f ms   speedup %.2fx   summaries %s\n", t_all, t_one / t_all,
                    equal ? "identical" : "DIFFER (bug!)");
    }
    return 0;
}
