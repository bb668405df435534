#include <doctest.h>

#include "qcgeom/surface.hpp"
#include "test_util.hpp"

using namespace qcgeom;
using qcgeom::testutil::load_surface;

TEST_CASE("project_to_surface fixed point and radial Newton") {
    const SurfaceSpec sph = load_surface("sphere_n1.qcs");
    QVector on(2);
    on[4] = 1.0;
    CHECK((project_to_surface(sph, on) - on).norm() < 1e-15);

    QVector seed(2);
    seed[4] = 2.0;
    const QVector proj = project_to_surface(sph, seed);
    CHECK(proj[4] == doctest::Approx(1.0));
    for (int i = 0; i < 8; ++i)
        if (i != 4) CHECK(proj[i] == doctest::Approx(0.0));
}

TEST_CASE("project_to_surface residuals on Heisenberg") {
    const SurfaceSpec heis = load_surface("heisenberg_n1.qcs");
    std::mt19937_64 rng(61);
    for (int k = 0; k < 100; ++k) {
        QVector seed(2);
        for (int i = 0; i < 8; ++i) seed[i] = uniform_real(rng, -2, 2);
        const QVector p = project_to_surface(heis, seed);
        const Jet1 j = eval_jet1(heis, p);
        CHECK(std::abs(j.value()) <
              1e-12 * (1.0 + QVector(j.grad()).norm() * p.norm()));
    }
}

TEST_CASE("Newton locality near the surface") {
    const SurfaceSpec sph = load_surface("sphere_n1.qcs");
    std::mt19937_64 rng(67);
    for (int k = 0; k < 50; ++k) {
        QVector seed(2);
        for (int i = 0; i < 8; ++i) seed[i] = uniform_real(rng, -1, 1);
        seed *= 1.0 / seed.norm();          // on the sphere
        seed *= 1.0 + uniform_real(rng, -4e-4, 4e-4);  // |rho| < 1e-3
        const Jet1 j = eval_jet1(sph, seed);
        if (std::abs(j.value()) >= 1e-3) continue;
        const QVector p = project_to_surface(sph, seed);
        const double bound = 2.0 * std::abs(j.value()) / QVector(j.grad()).norm();
        CHECK((p - seed).norm() <= bound * (1.0 + 1e-6));
    }
}

TEST_CASE("sample_points determinism and residuals") {
    const SurfaceSpec sph = load_surface("sphere_n1.qcs");
    const std::vector<QVector> a = sample_points(sph, 10, 42);
    const std::vector<QVector> b = sample_points(sph, 10, 42);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK((a[i] - b[i]).norm() == 0.0);  // bitwise deterministic
        CHECK(std::abs(eval_value(sph, a[i])) < 1e-11);
    }
    const std::vector<QVector> c = sample_points(sph, 10, 43);
    CHECK((a[0] - c[0]).norm() > 0.0);

    CHECK_THROWS_AS(sample_points(sph, 0, 1), InputError);
}

TEST_CASE("sampling an empty level set is exhausted") {
    const SurfaceSpec empty = parse_surface("dim = 2\nrho = normq(0) + normq(1) + 10");
    CHECK_THROWS_AS(sample_points(empty, 3, 1), SamplingExhausted);
}
