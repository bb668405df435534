#pragma once

#include <cstddef>
#include <vector>

#include "qcgeom/errors.hpp"
#include "qcgeom/matrix.hpp"

namespace qcgeom {

// Second-order truncated Taylor value: f, grad f, Hess f propagated through
// arithmetic. The Hessian is kept symmetric by construction.
class Jet2 {
public:
    Jet2() = default;
    Jet2(double value, std::size_t dim) : v_(value), g_(dim, 0.0), h_(dim, dim) {}

    static Jet2 variable(double value, std::size_t dim, std::size_t index) {
        Jet2 j(value, dim);
        j.g_[index] = 1.0;
        return j;
    }
    static Jet2 constant(double value, std::size_t dim) { return Jet2(value, dim); }

    double value() const { return v_; }
    const std::vector<double>& grad() const { return g_; }
    const RealMatrix& hess() const { return h_; }

    std::size_t dim() const { return g_.size(); }

    Jet2& operator+=(const Jet2& o);
    Jet2& operator-=(const Jet2& o);

    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator-(const Jet2& a);
    friend Jet2 operator*(const Jet2& a, const Jet2& b);
    friend Jet2 operator/(const Jet2& a, const Jet2& b);

private:
    double v_ = 0.0;
    std::vector<double> g_;
    RealMatrix h_;
};

Jet2 pow_int(const Jet2& base, long long k);

// First-order variant; Newton projection needs only value and gradient.
class Jet1 {
public:
    Jet1() = default;
    Jet1(double value, std::size_t dim) : v_(value), g_(dim, 0.0) {}

    static Jet1 variable(double value, std::size_t dim, std::size_t index) {
        Jet1 j(value, dim);
        j.g_[index] = 1.0;
        return j;
    }
    static Jet1 constant(double value, std::size_t dim) { return Jet1(value, dim); }

    double value() const { return v_; }
    const std::vector<double>& grad() const { return g_; }
    std::size_t dim() const { return g_.size(); }

    Jet1& operator+=(const Jet1& o);
    Jet1& operator-=(const Jet1& o);

    friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
    friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
    friend Jet1 operator-(const Jet1& a);
    friend Jet1 operator*(const Jet1& a, const Jet1& b);
    friend Jet1 operator/(const Jet1& a, const Jet1& b);

private:
    double v_ = 0.0;
    std::vector<double> g_;
};

Jet1 pow_int(const Jet1& base, long long k);

inline double pow_int(double base, long long k) {
    if (k < 0) return 1.0 / pow_int(base, -k);
    double acc = 1.0, b = base;
    for (long long e = k; e > 0; e >>= 1) {
        if (e & 1) acc *= b;
        b *= b;
    }
    return acc;
}

}  // namespace qcgeom
