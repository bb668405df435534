#include "qcgeom/quat_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qcgeom/errors.hpp"

namespace qcgeom {

QuatMatrix QuatMatrix::identity(std::size_t n) {
    QuatMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion{1, 0, 0, 0};
    return m;
}

QVector QuatMatrix::apply(const QVector& v) const {
    if (v.quat_dim() != n_) throw DimensionMismatch("QuatMatrix::apply: dimension mismatch");
    QVector out(n_);
    for (std::size_t a = 0; a < n_; ++a) {
        Quaternion acc;
        for (std::size_t b = 0; b < n_; ++b) acc += qmul((*this)(a, b), v.slot(b));
        out.set_slot(a, acc);
    }
    return out;
}

QuatMatrix QuatMatrix::conj_transpose() const {
    QuatMatrix t(n_);
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) t(a, b) = (*this)(b, a).conj();
    return t;
}

QuatMatrix QuatMatrix::inverse() const {
    const std::size_t n = n_;
    QuatMatrix a = *this;
    QuatMatrix inv = QuatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (a(r, col).norm() > a(piv, col).norm()) piv = r;
        if (a(piv, col).norm() < 1e-300)
            throw LinearSolveFailure("QuatMatrix::inverse: singular matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(piv, c), a(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        }
        const Quaternion pinv = a(col, col).inverse();
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) = qmul(pinv, a(col, c));
            inv(col, c) = qmul(pinv, inv(col, c));
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Quaternion f = a(r, col);
            if (f.norm() == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= qmul(f, a(col, c));
                inv(r, c) -= qmul(f, inv(col, c));
            }
        }
    }
    return inv;
}

double QuatMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Quaternion& q : e_) s += q.norm_sq();
    return std::sqrt(s);
}

RealMatrix QuatMatrix::to_real() const {
    RealMatrix m(4 * n_, 4 * n_);
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) {
            const Quaternion& h = (*this)(a, b);
            // left multiplication block: column m is h * e_m
            const double blk[4][4] = {{h.t, -h.x, -h.y, -h.z},
                                      {h.x, h.t, -h.z, h.y},
                                      {h.y, h.z, h.t, -h.x},
                                      {h.z, -h.y, h.x, h.t}};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) m(4 * a + r, 4 * b + c) = blk[r][c];
        }
    return m;
}

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
    const std::size_t n = a.dim();
    QuatMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Quaternion& aik = a(i, k);
            if (aik.norm_sq() == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += qmul(aik, b(k, j));
        }
    return c;
}

AffineMap AffineMap::identity(std::size_t n) {
    AffineMap f;
    f.a = QuatMatrix::identity(n);
    f.q0 = QVector(n);
    return f;
}

AffineMap AffineMap::inverse() const {
    AffineMap g;
    g.a = a.inverse();
    g.omega = omega.conj();
    // F^-1(y) = A^-1 (y - q0) omega = A^-1 y omega - A^-1 q0 omega
    g.q0 = -right_mul(g.a.apply(q0), omega);
    return g;
}

double AffineMap::condition_estimate() const {
    return a.frobenius_norm() * a.inverse().frobenius_norm();
}

QVector affine_apply(const AffineMap& f, const QVector& x) {
    return right_mul(f.a.apply(x), f.omega.conj()) + f.q0;
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
    // f(g(x)) = A_f (A_g x conj(w_g) + q_g) conj(w_f) + q_f
    //         = (A_f A_g) x conj(w_f w_g) + f(q_g)
    AffineMap h;
    h.a = f.a * g.a;
    h.omega = qmul(f.omega, g.omega);
    h.q0 = affine_apply(f, g.q0);
    return h;
}

Quaternion qherm_dot(const QVector& u, const QVector& v) {
    Quaternion acc;
    for (std::size_t a = 0; a < u.quat_dim(); ++a) acc += qmul(u.slot(a).conj(), v.slot(a));
    return acc;
}

Quaternion QHermitian::hermitian_dot(const QVector& u, const QVector& v) const {
    return qherm_dot(u, m.apply(v));
}

QHermitian to_quat_hermitian(const RealMatrix& delta) {
    const std::size_t dim = delta.rows();
    const std::size_t n = dim / 4;
    const double scale = delta.frobenius_norm();

    // commutator test against all three J_s
    for (int s = 1; s <= 3; ++s) {
        double resid = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            QVector ej = QVector::unit(n, j);
            const QVector lhs = QVector(delta.apply(apply_J(s, ej).coords()));
            const QVector rhs = apply_J(s, QVector(delta.apply(ej.coords())));
            resid = std::max(resid, (lhs - rhs).norm());
        }
        if (resid > 1e-10 * (scale > 0 ? scale : 1.0))
            throw NotJInvariant("to_quat_hermitian: matrix does not commute with J_" +
                                std::to_string(s));
    }

    QHermitian h;
    h.m = QuatMatrix(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            h.m(a, b) = Quaternion{delta(4 * a + 0, 4 * b + 0), delta(4 * a + 1, 4 * b + 0),
                                   delta(4 * a + 2, 4 * b + 0), delta(4 * a + 3, 4 * b + 0)};
    return h;
}

RealMatrix quat_hermitian_to_real(const QHermitian& h) { return h.m.to_real(); }

CongruenceResult congruence_diagonalize(const QHermitian& h, double eps_rank) {
    const std::size_t n = h.dim();
    QuatMatrix m = h.m;
    QuatMatrix a = QuatMatrix::identity(n);

    std::vector<int> sign(n, 0);
    std::vector<bool> done(n, false);

    double diag_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) diag_max = std::max(diag_max, std::abs(m(i, i).t));

    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && std::abs(m(i, i).t) > best) {
                best = std::abs(m(i, i).t);
                p = i;
            }
        diag_max = std::max(diag_max, best);
        if (p == n || best < eps_rank * (diag_max > 0 ? diag_max : 1.0)) {
            break;  // remaining pivots are zero class
        }
        const double d = m(p, p).t;
        done[p] = true;
        sign[p] = d > 0 ? 1 : -1;
        for (std::size_t c = 0; c < n; ++c) {
            if (done[c] || c == p) continue;
            const Quaternion lambda = m(p, c) * (1.0 / d);
            if (lambda.norm_sq() == 0.0) continue;
            // column op: col_c -= col_p * lambda, plus the Hermitian row op
            for (std::size_t r = 0; r < n; ++r) {
                m(r, c) -= qmul(m(r, p), lambda);
                a(r, c) -= qmul(a(r, p), lambda);
            }
            for (std::size_t cc = 0; cc < n; ++cc) m(c, cc) -= qmul(lambda.conj(), m(p, cc));
        }
        const double scale = 1.0 / std::sqrt(std::abs(d));
        for (std::size_t r = 0; r < n; ++r) {
            m(r, p) *= scale;
            a(r, p) *= scale;
        }
        for (std::size_t c = 0; c < n; ++c) m(p, c) *= scale;
    }

    // order columns: +1 block, then -1, then zero
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
        if (sign[i] > 0) order.push_back(i);
    const std::size_t pos = order.size();
    for (std::size_t i = 0; i < n; ++i)
        if (sign[i] < 0) order.push_back(i);
    const std::size_t neg = order.size() - pos;
    for (std::size_t i = 0; i < n; ++i)
        if (sign[i] == 0) order.push_back(i);

    CongruenceResult out;
    out.a = QuatMatrix(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) out.a(r, c) = a(r, order[c]);
    out.inertia = {pos, neg, n - pos - neg};
    return out;
}

}  // namespace qcgeom
