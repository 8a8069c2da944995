#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcgap/io.hpp"
#include "mcgap/simulator.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

using namespace mcgap;

TEST_CASE("two-state birth-death closed forms, p = q") {
    const ChainModel m = birth_death_chain(2, {0.4}, {0.4});
    CHECK(m.pi[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.pi[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.gap == doctest::Approx(0.8).epsilon(1e-13));
    CHECK(m.kappa == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(m.reversible);
    CHECK(m.pi_min() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("two-state birth-death closed forms, p != q") {
    const ChainModel m = birth_death_chain(2, {0.3}, {0.2});
    CHECK(m.pi[0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(m.pi[1] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(m.gap == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(m.kappa == doctest::Approx(1.0).epsilon(1e-12));
    // A# = A / (p+q)^2 for the two-state chain
    CHECK(m.a_group(0, 0) == doctest::Approx(0.3 / 0.25).epsilon(1e-12));
    CHECK(m.a_group(1, 0) == doctest::Approx(-0.2 / 0.25).epsilon(1e-12));
}

TEST_CASE("five-state birth-death has the product-form stationary distribution") {
    const ChainModel m = oracle::bd_chain(5, 0.3, 0.2);
    const double z = 1 + 1.5 + 2.25 + 3.375 + 5.0625;  // sum of (0.3/0.2)^i
    for (int i = 0; i < 5; ++i)
        CHECK(m.pi[i] == doctest::Approx(std::pow(1.5, i) / z).epsilon(1e-13));
    CHECK(m.gap == doctest::Approx(0.10366423410825798).epsilon(1e-12));
    CHECK(m.kappa == doctest::Approx(4.597156398104266).epsilon(1e-11));
}

TEST_CASE("eight-state lazy walk: uniform pi and the path-Laplacian gap") {
    const ChainModel m = oracle::bd_chain(8, 0.45, 0.45);
    for (int i = 0; i < 8; ++i) CHECK(m.pi[i] == doctest::Approx(0.125).epsilon(1e-14));
    // P = I - 0.45 L for the path graph, whose smallest nonzero Laplacian
    // eigenvalue is 4 sin^2(pi/16)
    const double expect = 1.8 * std::pow(std::sin(std::numbers::pi / 16), 2);
    CHECK(m.gap == doctest::Approx(expect).epsilon(1e-12));
    // detailed balance, directly
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(std::fabs(m.pi[i] * m.P(i, j) - m.pi[j] * m.P(j, i)) < 1e-12);
    // kappa against the independent bordered-solve group inverse
    Matrix a(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - m.P(i, j);
    const Matrix sharp = oracle::group_inverse_bordered(a, m.pi.values());
    double kappa_ref = 0.0;
    for (int j = 0; j < 8; ++j) {
        double col_min = sharp(0, j);
        for (int i = 1; i < 8; ++i) col_min = std::min(col_min, sharp(i, j));
        kappa_ref = std::max(kappa_ref, 0.5 * (sharp(j, j) - col_min));
    }
    CHECK(m.kappa == doctest::Approx(kappa_ref).epsilon(1e-9));
}

TEST_CASE("birth-death input validation") {
    CHECK_THROWS_AS(birth_death_chain(1, {}, {}), Error);
    CHECK_THROWS_AS(birth_death_chain(3, {0.3}, {0.2, 0.2}), Error);       // wrong length
    CHECK_THROWS_AS(birth_death_chain(3, {0.3, -0.1}, {0.2, 0.2}), Error); // negative
    CHECK_THROWS_AS(birth_death_chain(3, {0.0, 0.3}, {0.2, 0.2}), Error);  // zero disconnects
    CHECK_THROWS_AS(birth_death_chain(3, {0.6, 0.6}, {0.5, 0.2}), Error);  // state 1 rates sum to 1.1
}

TEST_CASE("random walk on the complete graph K3") {
    Matrix w(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w(i, j) = (i == j) ? 0.0 : 1.0;
    const ChainModel m = random_walk_on_weighted_graph(w);
    for (int i = 0; i < 3; ++i) CHECK(m.pi[i] == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(m.P(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.gap == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.reversible);
}

TEST_CASE("random walk on the 3-path weights degrees correctly") {
    Matrix w(3, 3);
    w(0, 1) = w(1, 0) = 1.0;
    w(1, 2) = w(2, 1) = 1.0;
    const ChainModel m = random_walk_on_weighted_graph(w);
    CHECK(m.pi[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(m.pi[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.pi[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("random walk rejects bad weight matrices") {
    Matrix asym(2, 2);
    asym(0, 1) = 1.0;
    asym(1, 0) = 2.0;
    CHECK_THROWS_AS(random_walk_on_weighted_graph(asym), Error);

    Matrix neg(2, 2);
    neg(0, 1) = neg(1, 0) = -1.0;
    CHECK_THROWS_AS(random_walk_on_weighted_graph(neg), Error);

    Matrix isolated(3, 3);
    isolated(0, 1) = isolated(1, 0) = 1.0;  // vertex 2 has no edges
    CHECK_THROWS_AS(random_walk_on_weighted_graph(isolated), Error);

    Matrix split(4, 4);  // two components, each with self-loops for strength
    split(0, 1) = split(1, 0) = 1.0;
    split(2, 3) = split(3, 2) = 1.0;
    CHECK_THROWS_AS(random_walk_on_weighted_graph(split), Error);
}

TEST_CASE("make_chain_model solves pi and flags reversibility") {
    Matrix p(2, 2);
    p(0, 0) = 0.7; p(0, 1) = 0.3; p(1, 0) = 0.6; p(1, 1) = 0.4;
    const ChainModel m = make_chain_model(p);
    CHECK(m.pi[0] == doctest::Approx(2.0 / 3).epsilon(1e-13));
    CHECK(m.reversible);  // every two-state chain satisfies detailed balance

    Matrix rot(3, 3);
    rot(0, 1) = rot(1, 2) = rot(2, 0) = 1.0;
    const ChainModel cyc = make_chain_model(rot);
    CHECK(cyc.pi[0] == doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK_FALSE(cyc.reversible);
}

TEST_CASE("sample_path is deterministic in the seed") {
    const ChainModel m = oracle::bd_chain(5, 0.3, 0.2);
    const SamplePath a = sample_path(m, 5000, 123);
    const SamplePath b = sample_path(m, 5000, 123);
    const SamplePath c = sample_path(m, 5000, 124);
    CHECK(a.states() == b.states());
    CHECK(a.states() != c.states());
    CHECK(a.length() == 5000);
    CHECK(a.num_states() == 5);
}

TEST_CASE("deterministic two-state flip chain alternates") {
    const ChainModel m = birth_death_chain(2, {1.0}, {1.0});
    const SamplePath p = sample_path(m, 10, 7, StartSpec::at(0));
    for (int64_t t = 0; t < 10; ++t) CHECK(p.state(t) == (t % 2 == 0 ? 0 : 1));
}

TEST_CASE("start specification controls the first state") {
    const ChainModel m = oracle::bd_chain(5, 0.3, 0.2);
    CHECK(sample_path(m, 10, 3, StartSpec::at(2)).state(0) == 2);
    CHECK(sample_path(m, 10, 3, StartSpec::at(4)).state(0) == 4);
    CHECK_THROWS_AS(sample_path(m, 10, 3, StartSpec::at(9)), Error);
}

TEST_CASE("long-run state frequencies approach pi") {
    const ChainModel m = oracle::bd_chain(5, 0.3, 0.2);
    const SamplePath p = sample_path(m, 1000000, 17);
    std::vector<double> freq(5, 0.0);
    for (int64_t t = 0; t < p.length(); ++t) freq[static_cast<std::size_t>(p.state(t))] += 1.0;
    for (int i = 0; i < 5; ++i)
        CHECK(std::fabs(freq[static_cast<std::size_t>(i)] / 1e6 - m.pi[i]) < 0.01);
}

TEST_CASE("trial seeds match frozen values and do not collide") {
    CHECK(trial_seed(0, 0) == 16294208416658607535ULL);
    CHECK(trial_seed(42, 3) == 6349198060258255764ULL);
    std::set<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(trial_seed(7, t));
    CHECK(seen.size() == 1000);
}

TEST_CASE("run_coverage with one trial produces that trial's numbers") {
    const ChainModel m = birth_death_chain(2, {0.4}, {0.4});
    const CoverageSummary s = run_coverage(m, 20000, 0.1, 1, 5);
    REQUIRE(s.trial_results.size() == 1);
    const TrialResult& tr = s.trial_results[0];
    CHECK(tr.seed == trial_seed(5, 0));
    CHECK(s.cov_gap == (tr.covered_gap ? 1.0 : 0.0));
    CHECK(s.b_hat.median == tr.b_hat);
    CHECK(s.b_hat.q25 == tr.b_hat);
    CHECK(s.b_hat.q75 == tr.b_hat);
    CHECK(s.true_gap == m.gap);
    CHECK(s.true_pi_min == m.pi_min());
}

TEST_CASE("run_coverage is deterministic and independent of the worker count") {
    const ChainModel m = birth_death_chain(2, {0.4}, {0.4});
    const CoverageSummary a = run_coverage(m, 20000, 0.1, 16, 99, 1);
    const CoverageSummary b = run_coverage(m, 20000, 0.1, 16, 99, 4);
    CHECK(coverage_to_json(a, "x") == coverage_to_json(b, "x"));
    const CoverageSummary c = run_coverage(m, 20000, 0.1, 16, 99, 0);
    CHECK(coverage_to_json(a, "x") == coverage_to_json(c, "x"));
}

TEST_CASE("run_coverage sanity of aggregate fields") {
    const ChainModel m = birth_death_chain(2, {0.3}, {0.2});
    const CoverageSummary s = run_coverage(m, 50000, 0.1, 8, 11);
    CHECK(s.trials == 8);
    CHECK(s.n == 50000);
    CHECK(s.master_seed == 11);
    for (double v : {s.cov_pi, s.cov_gap, s.cov_u, s.cov_v, s.frac_v_subset, s.frac_degenerate}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(s.b_hat.q25 <= s.b_hat.median);
    CHECK(s.b_hat.median <= s.b_hat.q75);
}

TEST_CASE("run_coverage rejects a non-positive trial count") {
    const ChainModel m = birth_death_chain(2, {0.4}, {0.4});
    CHECK_THROWS_AS(run_coverage(m, 1000, 0.1, 0, 1), Error);
}
