#include "qcgeom/jet.hpp"

#include <cmath>

namespace qcgeom {

Jet2& Jet2::operator+=(const Jet2& o) {
    v_ += o.v_;
    for (std::size_t i = 0; i < g_.size(); ++i) g_[i] += o.g_[i];
    h_ += o.h_;
    return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
    v_ -= o.v_;
    for (std::size_t i = 0; i < g_.size(); ++i) g_[i] -= o.g_[i];
    h_ -= o.h_;
    return *this;
}

Jet2 operator-(const Jet2& a) {
    Jet2 r = a;
    r.v_ = -r.v_;
    for (double& g : r.g_) g = -g;
    r.h_ *= -1.0;
    return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    const std::size_t n = a.g_.size();
    Jet2 r(a.v_ * b.v_, n);
    for (std::size_t i = 0; i < n; ++i) r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.h_(i, j) = a.v_ * b.h_(i, j) + b.v_ * a.h_(i, j) + a.g_[i] * b.g_[j] +
                         b.g_[i] * a.g_[j];
    return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (std::abs(b.v_) < 1e-300) throw DivisionByZero("jet evaluation: division by zero");
    const std::size_t n = a.g_.size();
    // reciprocal of b, then multiply
    Jet2 r(1.0 / b.v_, n);
    const double iv = 1.0 / b.v_, iv2 = iv * iv, iv3 = iv2 * iv;
    for (std::size_t i = 0; i < n; ++i) r.g_[i] = -b.g_[i] * iv2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.h_(i, j) = -b.h_(i, j) * iv2 + 2.0 * b.g_[i] * b.g_[j] * iv3;
    return a * r;
}

Jet2 pow_int(const Jet2& base, long long k) {
    const std::size_t n = base.dim();
    if (k < 0) return Jet2::constant(1.0, n) / pow_int(base, -k);
    Jet2 acc = Jet2::constant(1.0, n);
    Jet2 b = base;
    for (long long e = k; e > 0; e >>= 1) {
        if (e & 1) acc = acc * b;
        if (e > 1) b = b * b;
    }
    return acc;
}

Jet1& Jet1::operator+=(const Jet1& o) {
    v_ += o.v_;
    for (std::size_t i = 0; i < g_.size(); ++i) g_[i] += o.g_[i];
    return *this;
}

Jet1& Jet1::operator-=(const Jet1& o) {
    v_ -= o.v_;
    for (std::size_t i = 0; i < g_.size(); ++i) g_[i] -= o.g_[i];
    return *this;
}

Jet1 operator-(const Jet1& a) {
    Jet1 r = a;
    r.v_ = -r.v_;
    for (double& g : r.g_) g = -g;
    return r;
}

Jet1 operator*(const Jet1& a, const Jet1& b) {
    const std::size_t n = a.g_.size();
    Jet1 r(a.v_ * b.v_, n);
    for (std::size_t i = 0; i < n; ++i) r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
    return r;
}

Jet1 operator/(const Jet1& a, const Jet1& b) {
    if (std::abs(b.v_) < 1e-300) throw DivisionByZero("jet evaluation: division by zero");
    const std::size_t n = a.g_.size();
    Jet1 r(a.v_ / b.v_, n);
    const double iv = 1.0 / b.v_;
    for (std::size_t i = 0; i < n; ++i) r.g_[i] = (a.g_[i] - r.v_ * b.g_[i]) * iv;
    return r;
}

Jet1 pow_int(const Jet1& base, long long k) {
    const std::size_t n = base.dim();
    if (k < 0) return Jet1::constant(1.0, n) / pow_int(base, -k);
    Jet1 acc = Jet1::constant(1.0, n);
    Jet1 b = base;
    for (long long e = k; e > 0; e >>= 1) {
        if (e & 1) acc = acc * b;
        if (e > 1) b = b * b;
    }
    return acc;
}

}  // namespace qcgeom
