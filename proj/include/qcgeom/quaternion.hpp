#pragma once

#include <cmath>
#include <iosfwd>

namespace qcgeom {

// Hamilton quaternion t + i x + j y + k z with double components.
struct Quaternion {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Quaternion() = default;
    Quaternion(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_) {}

    static Quaternion unit(int axis) {
        Quaternion q;
        switch (axis) {
            case 0: q.t = 1.0; break;
            case 1: q.x = 1.0; break;
            case 2: q.y = 1.0; break;
            default: q.z = 1.0; break;
        }
        return q;
    }

    double norm_sq() const { return t * t + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }

    Quaternion conj() const { return {t, -x, -y, -z}; }

    Quaternion inverse() const {
        const double n2 = norm_sq();
        return {t / n2, -x / n2, -y / n2, -z / n2};
    }

    Quaternion operator-() const { return {-t, -x, -y, -z}; }
    Quaternion& operator+=(const Quaternion& o) {
        t += o.t; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        t -= o.t; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    Quaternion& operator*=(double s) {
        t *= s; x *= s; y *= s; z *= s;
        return *this;
    }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator*(Quaternion a, double s) { return a *= s; }
inline Quaternion operator*(double s, Quaternion a) { return a *= s; }

// Hamilton product.
inline Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
            a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
            a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
            a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t};
}

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }

inline double qdot(const Quaternion& a, const Quaternion& b) {
    return a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qcgeom
