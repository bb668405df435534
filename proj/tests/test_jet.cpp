#include <doctest.h>

#include <random>

#include "qcgeom/surface.hpp"
#include "test_util.hpp"

using namespace qcgeom;

namespace {

// Central finite differences with one Richardson level, the independent
// oracle for jet derivatives.
double fd_grad(const SurfaceSpec& spec, const QVector& p, std::size_t i, double h) {
    auto at = [&](double step) {
        QVector q = p;
        q[i] += step;
        return eval_value(spec, q);
    };
    auto central = [&](double step) { return (at(step) - at(-step)) / (2 * step); };
    return (4 * central(h / 2) - central(h)) / 3.0;
}

double fd_hess(const SurfaceSpec& spec, const QVector& p, std::size_t i, std::size_t j,
               double h) {
    auto grad_at = [&](double step) {
        QVector q = p;
        q[j] += step;
        return fd_grad(spec, q, i, h);
    };
    auto central = [&](double step) { return (grad_at(step) - grad_at(-step)) / (2 * step); };
    return (4 * central(h / 2) - central(h)) / 3.0;
}

}  // namespace

TEST_CASE("eval_jet2 closed forms") {
    const SurfaceSpec heis = parse_surface("dim = 2\nrho = normq(0) + re(1)");
    const Jet2 j = eval_jet2(heis, QVector(2));
    CHECK(j.value() == doctest::Approx(0.0));
    for (int i = 0; i < 8; ++i) CHECK(j.grad()[i] == doctest::Approx(i == 4 ? 1.0 : 0.0));
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k)
            CHECK(j.hess()(i, k) == doctest::Approx((i == k && i < 4) ? 2.0 : 0.0));

    const SurfaceSpec sph = parse_surface("dim = 2\nrho = normq(0) + normq(1) - 1");
    QVector p(2);
    p[4] = 1.0;
    const Jet2 js = eval_jet2(sph, p);
    CHECK(js.value() == doctest::Approx(0.0));
    for (int i = 0; i < 8; ++i) CHECK(js.grad()[i] == doctest::Approx(i == 4 ? 2.0 : 0.0));
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k) CHECK(js.hess()(i, k) == doctest::Approx(i == k ? 2.0 : 0.0));
}

TEST_CASE("eval_jet2 agrees with finite differences on random polynomials") {
    std::mt19937_64 rng(59);
    const char* sources[] = {
        "re(0)^3 - 2*imj(0)*imk(1) + normq(1)^2 / (4 + normq(0))",
        "(re(0) + imi(1))^4 - imk(0)^2 * re(1)",
        "normq(0)*normq(1) - re(0)*re(1)*imi(0) + 0.5*imj(1)^3",
    };
    for (const char* src : sources) {
        const SurfaceSpec spec = parse_surface(std::string("dim = 2\nrho = ") + src);
        for (int trial = 0; trial < 3; ++trial) {
            QVector p(2);
            for (int i = 0; i < 8; ++i) p[i] = uniform_real(rng, -1, 1);
            const Jet2 jet = eval_jet2(spec, p);
            double gscale = 1.0, hscale = 1.0;
            for (int i = 0; i < 8; ++i) gscale = std::max(gscale, std::abs(jet.grad()[i]));
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) hscale = std::max(hscale, std::abs(jet.hess()(i, j)));
            for (int i = 0; i < 8; ++i)
                CHECK(std::abs(jet.grad()[i] - fd_grad(spec, p, i, 1e-4)) < 1e-8 * gscale);
            for (int i = 0; i < 8; ++i)
                for (int j = i; j < 8; ++j)
                    CHECK(std::abs(jet.hess()(i, j) - fd_hess(spec, p, i, j, 1e-3)) <
                          1e-6 * hscale);
            // symmetry is exact by construction
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    CHECK(jet.hess()(i, j) == jet.hess()(j, i));
        }
    }
}

TEST_CASE("division by zero is reported") {
    const SurfaceSpec spec = parse_surface("dim = 2\nrho = 1 / re(0)");
    CHECK_THROWS_AS(eval_jet2(spec, QVector(2)), DivisionByZero);
    CHECK_THROWS_AS(eval_value(spec, QVector(2)), DivisionByZero);
}
