#include "support/oracles.hpp"

#include "mcgap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace oracle {

using mcgap::Matrix;

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const int n = static_cast<int>(rows.size());
    const int m = static_cast<int>(rows.begin()->size());
    Matrix a(n, m);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) a(i, j++) = v;
        ++i;
    }
    return a;
}

namespace {

// Number of eigenvalues of S strictly below sigma: eliminate without
// pivoting and count negative pivots (Sylvester's law of inertia). Zero
// pivots are nudged; the bisection tolerance absorbs the perturbation.
int count_below(Matrix a, double sigma) {
    const int n = a.rows();
    const double tiny = 1e-300;
    for (int i = 0; i < n; ++i) a(i, i) -= sigma;
    int neg = 0;
    for (int k = 0; k < n; ++k) {
        double piv = a(k, k);
        if (std::fabs(piv) < tiny) piv = piv < 0.0 ? -tiny : tiny;
        if (piv < 0.0) ++neg;
        for (int i = k + 1; i < n; ++i) {
            const double l = a(i, k) / piv;
            if (l == 0.0) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
        }
    }
    return neg;
}

} // namespace

std::vector<double> eigenvalues_by_bisection(const Matrix& S) {
    const int n = S.rows();
    double radius = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::fabs(S(i, j));
        radius = std::max(radius, row);
    }
    radius += 1.0;

    std::vector<double> eigs(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {  // k-th smallest
        double lo = -radius, hi = radius;
        for (int iter = 0; iter < 120 && hi - lo > 1e-13 * radius; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(S, mid) >= k + 1)
                hi = mid;
            else
                lo = mid;
        }
        eigs[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
    }
    std::reverse(eigs.begin(), eigs.end());
    return eigs;
}

Matrix group_inverse_bordered(const Matrix& A, const std::vector<double>& pi) {
    const int d = A.rows();
    Matrix bordered(d + 1, d + 1);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) bordered(i, j) = A(i, j);
        bordered(i, d) = 1.0;
        bordered(d, i) = pi[static_cast<std::size_t>(i)];
    }
    bordered(d, d) = 0.0;
    const mcgap::LuFactors f = mcgap::lu_factor(std::move(bordered));

    Matrix sharp(d, d);
    std::vector<double> rhs(static_cast<std::size_t>(d + 1), 0.0);
    for (int j = 0; j < d; ++j) {
        rhs[static_cast<std::size_t>(j)] = 1.0;
        const std::vector<double> sol = mcgap::lu_solve(f, rhs);
        rhs[static_cast<std::size_t>(j)] = 0.0;
        for (int i = 0; i < d; ++i) sharp(i, j) = sol[static_cast<std::size_t>(i)];
    }
    return sharp;
}

mcgap::TransitionCounts recount(const mcgap::SamplePath& path) {
    const int d = path.num_states();
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    pairs.reserve(static_cast<std::size_t>(path.length() - 1));
    for (std::int64_t t = 0; t + 1 < path.length(); ++t)
        pairs.emplace_back(path.state(t), path.state(t + 1));
    std::sort(pairs.begin(), pairs.end());

    mcgap::TransitionCounts c;
    c.n_visits.assign(static_cast<std::size_t>(d), 0);
    c.n_pairs.assign(static_cast<std::size_t>(d) * d, 0);
    c.path_length = path.length();
    for (const auto& [i, j] : pairs) {
        ++c.n_visits[static_cast<std::size_t>(i)];
        ++c.n_pairs[static_cast<std::size_t>(i) * d + j];
    }
    return c;
}

namespace {

double f_local(double t, std::int64_t n, int d, double c) {
    if (t <= 0.0) return std::numeric_limits<double>::infinity();
    const double arg = 2.0 * static_cast<double>(n) / t;
    double count = 0.0;
    if (arg > 1.0) count = std::max(std::ceil(std::log(arg) / std::log(c)), 0.0);
    return 2.0 * static_cast<double>(d) * static_cast<double>(d) * (1.0 + count) * std::exp(-t);
}

} // namespace

double tau_grid_scan(std::int64_t n, int d, double delta, std::int64_t geom_points) {
    const double c = 1.1;
    const double t_lo = 1e-6;
    double t_hi = 1.0;
    while (f_local(t_hi, n, d, c) > delta) t_hi *= 2.0;

    const double ratio = std::pow(t_hi / t_lo, 1.0 / static_cast<double>(geom_points - 1));
    double prev = 0.0;
    double hit = t_hi;
    for (std::int64_t k = 0; k < geom_points; ++k) {
        const double t = t_lo * std::pow(ratio, static_cast<double>(k));
        if (f_local(t, n, d, c) <= delta) {
            hit = t;
            break;
        }
        prev = t;
    }
    // Linear refinement of (prev, hit] at 1e-7 resolution.
    const double step = 1e-7;
    const auto steps = static_cast<std::int64_t>(std::ceil((hit - prev) / step));
    for (std::int64_t k = 1; k <= steps; ++k) {
        const double t = prev + step * static_cast<double>(k);
        if (f_local(t, n, d, c) <= delta) return t;
    }
    return hit;
}

mcgap::ChainModel random_reversible_chain(std::uint64_t seed, int d) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    Matrix w(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const double v = unif(eng);
            w(i, j) = v;
            w(j, i) = v;
        }
    return mcgap::random_walk_on_weighted_graph(w);
}

mcgap::ChainModel random_birth_death(std::uint64_t seed, int d) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> unif(0.05, 0.45);
    std::vector<double> up(static_cast<std::size_t>(d - 1));
    std::vector<double> down(static_cast<std::size_t>(d - 1));
    for (auto& v : up) v = unif(eng);
    for (auto& v : down) v = unif(eng);
    return mcgap::birth_death_chain(d, up, down);
}

mcgap::ChainModel bd_chain(int d, double up, double down) {
    return mcgap::birth_death_chain(d, std::vector<double>(static_cast<std::size_t>(d - 1), up),
                                    std::vector<double>(static_cast<std::size_t>(d - 1), down));
}

double group_axiom_residual(const Matrix& A, const Matrix& sharp) {
    const Matrix a1 = A * sharp * A;
    const Matrix a2 = sharp * A * sharp;
    const Matrix c1 = A * sharp;
    const Matrix c2 = sharp * A;
    double r = mcgap::max_abs_diff(a1, A);
    r = std::max(r, mcgap::max_abs_diff(a2, sharp));
    r = std::max(r, mcgap::max_abs_diff(c1, c2));
    return r;
}

} // namespace oracle
