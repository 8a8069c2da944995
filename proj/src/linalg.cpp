#include "mcgap/linalg.hpp"

#include "mcgap/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace mcgap {

namespace {

void require_square(const Matrix& a, const char* who) {
    if (a.rows() != a.cols()) fail(errc::singular_system, std::string(who) + ": matrix not square");
    if (a.rows() == 0) fail(errc::empty_input, std::string(who) + ": empty matrix");
}

} // namespace

LuFactors lu_factor(Matrix a) {
    require_square(a, "lu_factor");
    const int n = a.rows();
    const double scale = std::max(1.0, max_abs(a));
    const double tiny = n * std::numeric_limits<double>::epsilon() * scale;

    LuFactors f{std::move(a), std::vector<int>(static_cast<std::size_t>(n))};
    Matrix& m = f.lu;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(m(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= tiny)
            fail(errc::singular_system,
                 "pivot " + std::to_string(best) + " at column " + std::to_string(k) +
                     " (matrix is singular to working precision)");
        f.piv[static_cast<std::size_t>(k)] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        const double inv_pivot = 1.0 / m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double l = m(i, k) * inv_pivot;
            m(i, k) = l;
            if (l == 0.0) continue;
            for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    return f;
}

std::vector<double> lu_solve(const LuFactors& f, std::vector<double> b) {
    const int n = f.lu.rows();
    assert(static_cast<int>(b.size()) == n);
    for (int k = 0; k < n; ++k) std::swap(b[static_cast<std::size_t>(k)],
                                          b[static_cast<std::size_t>(f.piv[static_cast<std::size_t>(k)])]);
    for (int i = 1; i < n; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) s -= f.lu(i, j) * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(i)] = s / f.lu(i, i);
    }
    return b;
}

Matrix lu_inverse(const LuFactors& f) {
    const int n = f.lu.rows();
    Matrix inv(n, n);
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        e[static_cast<std::size_t>(j)] = 1.0;
        const std::vector<double> col = lu_solve(f, e);
        e[static_cast<std::size_t>(j)] = 0.0;
        for (int i = 0; i < n; ++i) inv(i, j) = col[static_cast<std::size_t>(i)];
    }
    return inv;
}

ProbabilityVector stationary_distribution(const StochasticMatrix& P) {
    const int d = P.dim();
    // (P^T - I) x = 0 with the last equation replaced by sum(x) = 1.
    Matrix m(d, d);
    for (int i = 0; i + 1 < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = P(j, i) - (i == j ? 1.0 : 0.0);
    for (int j = 0; j < d; ++j) m(d - 1, j) = 1.0;
    std::vector<double> rhs(static_cast<std::size_t>(d), 0.0);
    rhs[static_cast<std::size_t>(d - 1)] = 1.0;

    std::vector<double> x = lu_solve(lu_factor(std::move(m)), std::move(rhs));

    double sum = 0.0;
    for (double v : x) sum += v;
    for (double& v : x) v /= sum;

    for (int i = 0; i < d; ++i)
        if (!(x[static_cast<std::size_t>(i)] > 0.0))
            fail(errc::singular_system, "stationary solve produced a non-positive entry at state " +
                                            std::to_string(i) + "; chain is not ergodic");

    double residual = 0.0;
    for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += x[static_cast<std::size_t>(i)] * P(i, j);
        residual = std::max(residual, std::fabs(s - x[static_cast<std::size_t>(j)]));
    }
    if (residual > 1e-12)
        fail(errc::singular_system, "stationarity residual " + std::to_string(residual) +
                                        " exceeds 1e-12; system is too ill-conditioned");

    return ProbabilityVector(std::move(x));
}

Matrix group_inverse(const Matrix& A, const ProbabilityVector& pi) {
    require_square(A, "group_inverse");
    const int d = A.rows();
    if (pi.dim() != d) fail(errc::singular_system, "group_inverse: dimension mismatch");

    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = A(i, j) + pi[j];
    const Matrix z = lu_inverse(lu_factor(std::move(g)));

    Matrix sharp(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) sharp(i, j) = z(i, j) - pi[j];

    // I - A A# must be the rank-one projector 1 pi^T; a large residual means
    // pi was not the stationary distribution of I - A.
    const Matrix prod = A * sharp;
    double residual = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double expect = (i == j ? 1.0 : 0.0) - pi[j];
            residual = std::max(residual, std::fabs(prod(i, j) - expect));
        }
    if (residual > 1e-8)
        fail(errc::singular_system, "group inverse residual " + std::to_string(residual) +
                                        "; inputs are inconsistent or near-singular");
    return sharp;
}

Matrix build_sym_L(const StochasticMatrix& P, const ProbabilityVector& pi) {
    const int d = P.dim();
    if (pi.dim() != d) fail(errc::zero_stationary_entry, "build_sym_L: dimension mismatch");
    std::vector<double> root(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        if (!(pi[i] > 0.0))
            fail(errc::zero_stationary_entry,
                 "pi[" + std::to_string(i) + "] = " + std::to_string(pi[i]));
        root[static_cast<std::size_t>(i)] = std::sqrt(pi[i]);
    }
    Matrix s(d, d);
    for (int i = 0; i < d; ++i) {
        s(i, i) = P(i, i);
        for (int j = i + 1; j < d; ++j) {
            const double ratio = root[static_cast<std::size_t>(i)] / root[static_cast<std::size_t>(j)];
            const double v = 0.5 * (ratio * P(i, j) + P(j, i) / ratio);
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

EigenvalueList symmetric_eigenvalues(const Matrix& S) {
    require_square(S, "symmetric_eigenvalues");
    const int n = S.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(S(i, j) - S(j, i)) > 1e-12)
                fail(errc::not_symmetric, "entries (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") differ by " +
                                              std::to_string(std::fabs(S(i, j) - S(j, i))));

    // Cyclic Jacobi with Rutishauser's threshold schedule and accumulator
    // vectors: rotate away a(p,q), track diagonal updates in z, fold into d
    // only at sweep end to limit roundoff.
    Matrix a = S;
    std::vector<double> b(static_cast<std::size_t>(n));
    std::vector<double> d(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)] = a(i, i);

    const int max_sweeps = 100;
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += std::fabs(a(p, q));
        if (off == 0.0) {
            std::sort(d.begin(), d.end(), std::greater<double>());
            return EigenvalueList{std::move(d)};
        }
        const double tresh = sweep < 4 ? 0.2 * off / (n * n) : 0.0;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double g = 100.0 * std::fabs(a(p, q));
                if (sweep > 4 && std::fabs(d[static_cast<std::size_t>(p)]) + g == std::fabs(d[static_cast<std::size_t>(p)]) &&
                    std::fabs(d[static_cast<std::size_t>(q)]) + g == std::fabs(d[static_cast<std::size_t>(q)])) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                } else if (std::fabs(a(p, q)) > tresh) {
                    double h = d[static_cast<std::size_t>(q)] - d[static_cast<std::size_t>(p)];
                    double t;
                    if (std::fabs(h) + g == std::fabs(h)) {
                        t = a(p, q) / h;
                    } else {
                        const double theta = 0.5 * h / a(p, q);
                        t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                        if (theta < 0.0) t = -t;
                    }
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const double tau = s / (1.0 + c);
                    h = t * a(p, q);
                    z[static_cast<std::size_t>(p)] -= h;
                    z[static_cast<std::size_t>(q)] += h;
                    d[static_cast<std::size_t>(p)] -= h;
                    d[static_cast<std::size_t>(q)] += h;
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    for (int j = 0; j < n; ++j) {
                        if (j == p || j == q) continue;
                        const double gj = a(j, p);
                        const double hj = a(j, q);
                        const double np = gj - s * (hj + gj * tau);  // = c*gj - s*hj, stable form
                        const double nq = hj + s * (gj - hj * tau);  // = s*gj + c*hj
                        a(j, p) = np;
                        a(p, j) = np;
                        a(j, q) = nq;
                        a(q, j) = nq;
                    }
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            b[static_cast<std::size_t>(i)] += z[static_cast<std::size_t>(i)];
            d[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)];
            z[static_cast<std::size_t>(i)] = 0.0;
        }
    }
    fail(errc::no_convergence, "Jacobi eigensolver did not converge in 100 sweeps");
}

} // namespace mcgap
