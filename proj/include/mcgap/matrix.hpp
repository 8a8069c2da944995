#pragma once

#include <cstddef>
#include <vector>

namespace mcgap {

// Dense row-major matrix of doubles. Small and deliberately boring: the
// project only ever sees d x d matrices with d in the hundreds at most, so
// there is no blocking, no views, no expression templates.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0);

    static Matrix identity(int n);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    double& operator()(int i, int j) noexcept { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    double* data() noexcept { return a_.data(); }
    const double* data() const noexcept { return a_.data(); }

    bool empty() const noexcept { return a_.empty(); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

// max_ij |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

// max_ij |a_ij|
double max_abs(const Matrix& a);

// a * x for a vector x (x.size() == cols)
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

} // namespace mcgap
