#pragma once

#include <cstddef>
#include <vector>

#include "qcgeom/quaternion.hpp"

namespace qcgeom {

// Point or tangent vector of H^d, d quaternionic slots stored as 4d reals
// with layout c[4a+m], m in {0:t, 1:x, 2:y, 3:z}.
class QVector {
public:
    QVector() = default;
    explicit QVector(std::size_t quat_dim) : c_(4 * quat_dim, 0.0) {}
    explicit QVector(std::vector<double> coords) : c_(std::move(coords)) {}

    std::size_t quat_dim() const { return c_.size() / 4; }
    std::size_t real_dim() const { return c_.size(); }

    double& operator[](std::size_t i) { return c_[i]; }
    double operator[](std::size_t i) const { return c_[i]; }

    Quaternion slot(std::size_t a) const {
        return {c_[4 * a], c_[4 * a + 1], c_[4 * a + 2], c_[4 * a + 3]};
    }
    void set_slot(std::size_t a, const Quaternion& q) {
        c_[4 * a] = q.t;
        c_[4 * a + 1] = q.x;
        c_[4 * a + 2] = q.y;
        c_[4 * a + 3] = q.z;
    }

    const std::vector<double>& coords() const { return c_; }
    std::vector<double>& coords() { return c_; }

    static QVector unit(std::size_t quat_dim, std::size_t real_index) {
        QVector v(quat_dim);
        v[real_index] = 1.0;
        return v;
    }

    QVector& operator+=(const QVector& o);
    QVector& operator-=(const QVector& o);
    QVector& operator*=(double s);

    double norm_sq() const;
    double norm() const;

private:
    std::vector<double> c_;
};

QVector operator+(QVector a, const QVector& b);
QVector operator-(QVector a, const QVector& b);
QVector operator*(QVector a, double s);
QVector operator*(double s, QVector a);
QVector operator-(const QVector& a);

// Flat hyper-Kahler metric <v,w> = Re(sum_a v_a conj(w_a)), i.e. the
// coordinate dot product. Throws DimensionMismatch on length disagreement.
double flat_inner(const QVector& v, const QVector& w);

// Complex structure J_s, s in {1,2,3}: per-slot right multiplication by -e_s.
// J_1 J_2 = J_3 and J_s^2 = -Id.
QVector apply_J(int s, const QVector& v);

// Per-slot right multiplication v -> v * q.
QVector right_mul(const QVector& v, const Quaternion& q);

}  // namespace qcgeom
