#include "qcgeom/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcgeom/errors.hpp"

namespace qcgeom {

RealMatrix& RealMatrix::operator+=(const RealMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

RealMatrix& RealMatrix::operator-=(const RealMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

RealMatrix& RealMatrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

RealMatrix RealMatrix::transposed() const {
    RealMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double RealMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double RealMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> RealMatrix::apply(const std::vector<double>& v) const {
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
RealMatrix operator*(RealMatrix a, double s) { return a *= s; }
RealMatrix operator*(double s, RealMatrix a) { return a *= s; }

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double vec_norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

namespace {

double off_diagonal_norm(const RealMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

}  // namespace

SymEigen sym_eigen(const RealMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw InputError("sym_eigen: matrix not square");
    const double scale = m.max_abs();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * (scale > 0 ? scale : 1.0))
                throw InputError("sym_eigen: matrix not symmetric");

    RealMatrix a = m;
    RealMatrix v = RealMatrix::identity(n);
    const double norm = a.frobenius_norm();
    const double stop = 1e-14 * (norm > 0 ? norm : 1.0);

    for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymEigen out;
    out.values.resize(n);
    out.vectors = RealMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> solve_spd(const RealMatrix& a, const std::vector<double>& b) {
    const std::size_t n = a.rows();
    RealMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) throw LinearSolveFailure("solve_spd: matrix not positive definite");
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

std::vector<double> solve_least_squares(const RealMatrix& a, const std::vector<double>& b,
                                        double rank_tol) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw RankDeficientFit("least squares: fewer rows than unknowns");
    RealMatrix r = a;
    std::vector<double> rhs = b;

    for (std::size_t k = 0; k < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k; i < m; ++i) alpha += r(i, k) * r(i, k);
        alpha = std::sqrt(alpha);
        if (r(k, k) > 0) alpha = -alpha;
        std::vector<double> u(m, 0.0);
        u[k] = r(k, k) - alpha;
        for (std::size_t i = k + 1; i < m; ++i) u[i] = r(i, k);
        double unorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) unorm2 += u[i] * u[i];
        if (unorm2 > 0.0) {
            for (std::size_t j = k; j < n; ++j) {
                double s = 0.0;
                for (std::size_t i = k; i < m; ++i) s += u[i] * r(i, j);
                s *= 2.0 / unorm2;
                for (std::size_t i = k; i < m; ++i) r(i, j) -= s * u[i];
            }
            double s = 0.0;
            for (std::size_t i = k; i < m; ++i) s += u[i] * rhs[i];
            s *= 2.0 / unorm2;
            for (std::size_t i = k; i < m; ++i) rhs[i] -= s * u[i];
        }
        r(k, k) = alpha;
    }

    double diag_max = 0.0;
    for (std::size_t k = 0; k < n; ++k) diag_max = std::max(diag_max, std::abs(r(k, k)));
    std::vector<double> x(n, 0.0);
    for (std::size_t kk = n; kk-- > 0;) {
        if (std::abs(r(kk, kk)) < rank_tol * (diag_max > 0 ? diag_max : 1.0))
            throw RankDeficientFit("least squares: rank deficient design matrix");
        double s = rhs[kk];
        for (std::size_t j = kk + 1; j < n; ++j) s -= r(kk, j) * x[j];
        x[kk] = s / r(kk, kk);
    }
    return x;
}

std::complex<double> pfaffian(std::vector<std::vector<std::complex<double>>> a) {
    const std::size_t n = a.size();
    if (n % 2 != 0) return 0.0;
    std::complex<double> pf = 1.0;

    for (std::size_t k = 0; k + 1 < n; k += 2) {
        // pivot: bring the largest |a[k][i]|, i > k, into position (k, k+1)
        std::size_t piv = k + 1;
        for (std::size_t i = k + 2; i < n; ++i)
            if (std::abs(a[k][i]) > std::abs(a[k][piv])) piv = i;
        if (std::abs(a[k][piv]) == 0.0) return 0.0;
        if (piv != k + 1) {
            std::swap(a[piv], a[k + 1]);
            for (std::size_t r = 0; r < n; ++r) std::swap(a[r][piv], a[r][k + 1]);
            pf = -pf;
        }
        const std::complex<double> pivot = a[k][k + 1];
        pf *= pivot;
        for (std::size_t i = k + 2; i < n; ++i) {
            const std::complex<double> f = a[k][i] / pivot;
            if (f == 0.0) continue;
            // row/col i <- row/col i - f * (row/col k+1), preserving skew symmetry
            for (std::size_t r = 0; r < n; ++r) a[r][i] -= f * a[r][k + 1];
            for (std::size_t cidx = 0; cidx < n; ++cidx) a[i][cidx] -= f * a[k + 1][cidx];
        }
        for (std::size_t i = k + 2; i < n; ++i) {
            const std::complex<double> g = a[k + 1][i] / pivot;
            if (g == 0.0) continue;
            for (std::size_t r = 0; r < n; ++r) a[r][i] += g * a[r][k];
            for (std::size_t cidx = 0; cidx < n; ++cidx) a[i][cidx] += g * a[k][cidx];
        }
    }
    return pf;
}

}  // namespace qcgeom
