#include "qcgeom/qvector.hpp"

#include <cmath>
#include <ostream>

#include "qcgeom/errors.hpp"

namespace qcgeom {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.t << "," << q.x << "," << q.y << "," << q.z << ")";
}

QVector& QVector::operator+=(const QVector& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

QVector& QVector::operator-=(const QVector& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

QVector& QVector::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

double QVector::norm_sq() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
}

double QVector::norm() const { return std::sqrt(norm_sq()); }

QVector operator+(QVector a, const QVector& b) { return a += b; }
QVector operator-(QVector a, const QVector& b) { return a -= b; }
QVector operator*(QVector a, double s) { return a *= s; }
QVector operator*(double s, QVector a) { return a *= s; }
QVector operator-(const QVector& a) { return a * -1.0; }

double flat_inner(const QVector& v, const QVector& w) {
    if (v.real_dim() != w.real_dim())
        throw DimensionMismatch("flat_inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < v.real_dim(); ++i) s += v[i] * w[i];
    return s;
}

QVector apply_J(int s, const QVector& v) {
    QVector out(v.quat_dim());
    for (std::size_t a = 0; a < v.quat_dim(); ++a) {
        const std::size_t o = 4 * a;
        const double t = v[o], x = v[o + 1], y = v[o + 2], z = v[o + 3];
        switch (s) {
            case 1:  // q -> q * (-i)
                out[o] = x; out[o + 1] = -t; out[o + 2] = -z; out[o + 3] = y;
                break;
            case 2:  // q -> q * (-j)
                out[o] = y; out[o + 1] = z; out[o + 2] = -t; out[o + 3] = -x;
                break;
            case 3:  // q -> q * (-k)
                out[o] = z; out[o + 1] = -y; out[o + 2] = x; out[o + 3] = -t;
                break;
            default:
                throw InputError("apply_J: axis index must be 1, 2 or 3");
        }
    }
    return out;
}

QVector right_mul(const QVector& v, const Quaternion& q) {
    QVector out(v.quat_dim());
    for (std::size_t a = 0; a < v.quat_dim(); ++a) out.set_slot(a, qmul(v.slot(a), q));
    return out;
}

}  // namespace qcgeom
