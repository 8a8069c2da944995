#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcgap/path_stats.hpp"
#include "mcgap/simulator.hpp"
#include "support/oracles.hpp"

#include <cstdint>

using namespace mcgap;

TEST_CASE("hand-counted alternating path") {
    const SamplePath path({0, 1, 0, 1, 0}, 2);
    const TransitionCounts c = count_transitions(path);
    CHECK(c.path_length == 5);
    CHECK(c.n_visits[0] == 2);  // visits at t = 0 and 2; t = 4 excluded
    CHECK(c.n_visits[1] == 2);
    CHECK(c.pair(0, 1) == 2);
    CHECK(c.pair(1, 0) == 2);
    CHECK(c.pair(0, 0) == 0);
    CHECK(c.pair(1, 1) == 0);
}

TEST_CASE("hand-counted constant path") {
    const SamplePath path({0, 0, 0}, 2);
    const TransitionCounts c = count_transitions(path);
    CHECK(c.n_visits[0] == 2);
    CHECK(c.n_visits[1] == 0);
    CHECK(c.pair(0, 0) == 2);
}

TEST_CASE("counting invariants and agreement with a sort-based recount") {
    const ChainModel m = oracle::bd_chain(5, 0.3, 0.2);
    const SamplePath path = sample_path(m, 10000, 11);
    const TransitionCounts c = count_transitions(path);

    int64_t visit_total = 0, pair_total = 0;
    for (int i = 0; i < 5; ++i) {
        int64_t row = 0;
        for (int j = 0; j < 5; ++j) row += c.pair(i, j);
        CHECK(row == c.n_visits[i]);  // every counted visit produces one pair
        visit_total += c.n_visits[i];
        pair_total += row;
    }
    CHECK(visit_total == 9999);
    CHECK(pair_total == 9999);

    const TransitionCounts ref = oracle::recount(path);
    CHECK(ref.n_visits == c.n_visits);
    CHECK(ref.n_pairs == c.n_pairs);
}

TEST_CASE("parallel counting merges to exactly the serial result") {
    const ChainModel m = oracle::bd_chain(8, 0.45, 0.45);
    const SamplePath path = sample_path(m, 3000000, 99);
    const TransitionCounts serial = count_transitions_serial(path);
    const TransitionCounts parallel = count_transitions(path);
    CHECK(serial.n_visits == parallel.n_visits);
    CHECK(serial.n_pairs == parallel.n_pairs);
}

TEST_CASE("chunked counting is exact for any chunk count") {
    // Forces the chunked code path regardless of how many OpenMP threads the
    // host machine offers, including chunk counts that do not divide the
    // transition count and chunk counts exceeding it.
    const ChainModel m = oracle::bd_chain(5, 0.3, 0.2);
    const SamplePath path = sample_path(m, 10007, 42);
    const TransitionCounts serial = count_transitions_serial(path);
    for (int nchunks : {1, 2, 3, 7, 64, 20000}) {
        const TransitionCounts chunked = count_transitions_chunked(path, nchunks);
        CHECK(chunked.path_length == serial.path_length);
        CHECK(chunked.n_visits == serial.n_visits);
        CHECK(chunked.n_pairs == serial.n_pairs);
    }
    CHECK_THROWS_AS(count_transitions_chunked(path, 0), Error);
}

TEST_CASE("smoothed matrix on a tiny hand example") {
    // two states, visits (2, 2), pairs 0->1 twice and 1->0 twice
    const SamplePath path({0, 1, 0, 1, 0}, 2);
    const Matrix p = smoothed_matrix(count_transitions(path), 2).matrix();
    CHECK(p(0, 0) == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(p(0, 1) == doctest::Approx(5.0 / 6).epsilon(1e-15));
    CHECK(p(1, 0) == doctest::Approx(5.0 / 6).epsilon(1e-15));
}

TEST_CASE("smoothed matrix gives an unvisited state the uniform row") {
    const SamplePath path({0, 0, 0}, 3);
    const Matrix p = smoothed_matrix(count_transitions(path), 3).matrix();
    for (int j = 0; j < 3; ++j) CHECK(p(1, j) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    for (int j = 0; j < 3; ++j) CHECK(p(2, j) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(p(0, 0) == doctest::Approx((2.0 + 1.0 / 3) / 3.0).epsilon(1e-15));
}

TEST_CASE("smoothed matrix entries have the additive-smoothing floor") {
    const ChainModel m = oracle::bd_chain(5, 0.3, 0.2);
    const SamplePath path = sample_path(m, 5000, 4);
    const TransitionCounts c = count_transitions(path);
    const Matrix p = smoothed_matrix(c, 5).matrix();
    for (int i = 0; i < 5; ++i) {
        const double floor = (1.0 / 5) / (static_cast<double>(c.n_visits[i]) + 1.0);
        for (int j = 0; j < 5; ++j) CHECK(p(i, j) >= floor - 1e-18);
    }
}

TEST_CASE("smoothed matrix converges to the truth on a long path") {
    const ChainModel m = oracle::bd_chain(5, 0.3, 0.2);
    const SamplePath path = sample_path(m, 1000000, 21);
    const Matrix p = smoothed_matrix(count_transitions(path), 5).matrix();
    CHECK(max_abs_diff(p, m.P.matrix()) < 0.01);
}

TEST_CASE("smoothed matrix rejects a dimension mismatch") {
    const SamplePath path({0, 1, 0}, 2);
    const TransitionCounts c = count_transitions(path);
    CHECK_THROWS_AS(smoothed_matrix(c, 3), Error);
}
