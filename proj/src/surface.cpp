#include "qcgeom/surface.hpp"

#include <cmath>

#include "qcgeom/errors.hpp"

namespace qcgeom {

namespace {

template <class S, class ConstFn, class CoordFn>
S eval_generic(const Expr& e, const ConstFn& make_const, const CoordFn& coord) {
    switch (e.kind) {
        case Expr::Kind::Constant: return make_const(e.cval);
        case Expr::Kind::Coord: return coord(4 * e.slot + e.comp);
        case Expr::Kind::NormQ: {
            S acc = coord(4 * e.slot) * coord(4 * e.slot);
            for (int m = 1; m < 4; ++m) {
                const S c = coord(4 * e.slot + m);
                acc += c * c;
            }
            return acc;
        }
        case Expr::Kind::Add:
            return eval_generic<S>(*e.lhs, make_const, coord) +
                   eval_generic<S>(*e.rhs, make_const, coord);
        case Expr::Kind::Sub:
            return eval_generic<S>(*e.lhs, make_const, coord) -
                   eval_generic<S>(*e.rhs, make_const, coord);
        case Expr::Kind::Mul:
            return eval_generic<S>(*e.lhs, make_const, coord) *
                   eval_generic<S>(*e.rhs, make_const, coord);
        case Expr::Kind::Div:
            return eval_generic<S>(*e.lhs, make_const, coord) /
                   eval_generic<S>(*e.rhs, make_const, coord);
        case Expr::Kind::Neg: return -eval_generic<S>(*e.lhs, make_const, coord);
        case Expr::Kind::Pow:
            return pow_int(eval_generic<S>(*e.lhs, make_const, coord), e.exponent);
    }
    return make_const(0.0);
}

struct DivDouble {
    double v;
    DivDouble operator+(DivDouble o) const { return {v + o.v}; }
    DivDouble& operator+=(DivDouble o) { v += o.v; return *this; }
    DivDouble operator-(DivDouble o) const { return {v - o.v}; }
    DivDouble operator*(DivDouble o) const { return {v * o.v}; }
    DivDouble operator/(DivDouble o) const {
        if (std::abs(o.v) < 1e-300) throw DivisionByZero("evaluation: division by zero");
        return {v / o.v};
    }
    DivDouble operator-() const { return {-v}; }
};

DivDouble pow_int(DivDouble b, long long k) {
    if (k < 0) return DivDouble{1.0} / pow_int(b, -k);
    return {qcgeom::pow_int(b.v, k)};
}

void check_dim(const SurfaceSpec& spec, const QVector& p, const char* who) {
    if (p.quat_dim() != spec.dim) throw DimensionMismatch(std::string(who) + ": point dimension mismatch");
}

}  // namespace

double eval_value(const SurfaceSpec& spec, const QVector& p) {
    check_dim(spec, p, "eval_value");
    return eval_generic<DivDouble>(
               *spec.rho, [](double c) { return DivDouble{c}; },
               [&p](std::size_t i) { return DivDouble{p[i]}; })
        .v;
}

Jet1 eval_jet1(const SurfaceSpec& spec, const QVector& p) {
    check_dim(spec, p, "eval_jet1");
    const std::size_t d = spec.real_dim();
    return eval_generic<Jet1>(
        *spec.rho, [d](double c) { return Jet1::constant(c, d); },
        [&p, d](std::size_t i) { return Jet1::variable(p[i], d, i); });
}

Jet2 eval_jet2(const SurfaceSpec& spec, const QVector& p) {
    check_dim(spec, p, "eval_jet2");
    const std::size_t d = spec.real_dim();
    return eval_generic<Jet2>(
        *spec.rho, [d](double c) { return Jet2::constant(c, d); },
        [&p, d](std::size_t i) { return Jet2::variable(p[i], d, i); });
}

QVector project_to_surface(const SurfaceSpec& spec, const QVector& seed) {
    check_dim(spec, seed, "project_to_surface");
    QVector x = seed;
    for (int iter = 0; iter < 50; ++iter) {
        const Jet1 j = eval_jet1(spec, x);
        const QVector grad{j.grad()};
        const double g2 = grad.norm_sq();
        if (std::abs(j.value()) < 1e-12 * (1.0 + std::sqrt(g2) * x.norm())) return x;
        if (g2 < 1e-28) throw NoConvergence("project_to_surface: gradient vanished");
        x -= grad * (j.value() / g2);
    }
    const double resid = std::abs(eval_value(spec, x));
    const double tol = 1e-12 * (1.0 + QVector(eval_jet1(spec, x).grad()).norm() * x.norm());
    if (resid < tol) return x;
    throw NoConvergence("project_to_surface: no convergence after 50 iterations");
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

Quaternion random_unit_quaternion(std::mt19937_64& rng) {
    while (true) {
        Quaternion q{uniform_real(rng, -1, 1), uniform_real(rng, -1, 1),
                     uniform_real(rng, -1, 1), uniform_real(rng, -1, 1)};
        const double n = q.norm();
        if (n > 1e-3 && n <= 1.0) return q * (1.0 / n);
    }
}

std::vector<QVector> sample_points(const SurfaceSpec& spec, std::size_t count,
                                   std::uint64_t rng_seed) {
    if (count < 1) throw InputError("sample_points: count must be at least 1");
    std::mt19937_64 rng(rng_seed);
    std::vector<QVector> points;
    points.reserve(count);
    const std::size_t max_attempts = 100 * count;
    for (std::size_t attempt = 0; attempt < max_attempts && points.size() < count; ++attempt) {
        QVector seed(spec.dim);
        for (std::size_t i = 0; i < spec.real_dim(); ++i)
            seed[i] = spec.box_center[i] +
                      uniform_real(rng, -spec.box_halfwidth, spec.box_halfwidth);
        try {
            points.push_back(project_to_surface(spec, seed));
        } catch (const NoConvergence&) {
            continue;
        } catch (const DivisionByZero&) {
            continue;
        }
    }
    if (points.size() < count)
        throw SamplingExhausted("sample_points: could not find " + std::to_string(count) +
                                " surface points in " + std::to_string(max_attempts) +
                                " attempts");
    return points;
}

}  // namespace qcgeom
