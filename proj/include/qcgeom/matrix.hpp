#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qcgeom {

// Dense row-major real matrix. Everything in this project is small
// (at most a few hundred rows), so no blocking or sparsity.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static RealMatrix identity(std::size_t n) {
        RealMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RealMatrix& operator+=(const RealMatrix& o);
    RealMatrix& operator-=(const RealMatrix& o);
    RealMatrix& operator*=(double s);

    RealMatrix transposed() const;
    double frobenius_norm() const;
    double max_abs() const;

    std::vector<double> apply(const std::vector<double>& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

RealMatrix operator+(RealMatrix a, const RealMatrix& b);
RealMatrix operator-(RealMatrix a, const RealMatrix& b);
RealMatrix operator*(RealMatrix a, double s);
RealMatrix operator*(double s, RealMatrix a);
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double vec_norm(const std::vector<double>& a);

struct SymEigen {
    std::vector<double> values;  // ascending
    RealMatrix vectors;          // columns, orthonormal
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
// 1e-14 * ||M||_F. Rejects matrices that are not symmetric to 1e-12 relative.
SymEigen sym_eigen(const RealMatrix& m);

// Cholesky solve for symmetric positive definite systems. Throws
// LinearSolveFailure when a pivot collapses.
std::vector<double> solve_spd(const RealMatrix& a, const std::vector<double>& b);

// Least squares min ||A x - b|| via Householder QR; throws RankDeficientFit
// when a diagonal of R falls below rank_tol relative to the largest one.
std::vector<double> solve_least_squares(const RealMatrix& a, const std::vector<double>& b,
                                        double rank_tol = 1e-10);

// Pfaffian of a complex skew-symmetric matrix by skew Gaussian elimination
// with partial pivoting. Odd dimension gives 0.
std::complex<double> pfaffian(std::vector<std::vector<std::complex<double>>> a);

}  // namespace qcgeom
