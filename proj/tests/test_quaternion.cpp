#include <doctest.h>

#include <random>

#include "qcgeom/quat_matrix.hpp"
#include "qcgeom/surface.hpp"

using namespace qcgeom;

namespace {

QVector random_qvector(std::size_t dim, std::mt19937_64& rng, double lo = -1, double hi = 1) {
    QVector v(dim);
    for (std::size_t i = 0; i < 4 * dim; ++i) v[i] = uniform_real(rng, lo, hi);
    return v;
}

}  // namespace

TEST_CASE("qmul defining relations") {
    const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    const Quaternion ij = qmul(i, j);
    CHECK(ij.z == doctest::Approx(1.0));
    CHECK(qmul(j, k).x == doctest::Approx(1.0));
    CHECK(qmul(k, i).y == doctest::Approx(1.0));
    const Quaternion ii = qmul(i, i);
    CHECK(ii.t == doctest::Approx(-1.0));

    // (1+i)(1-i) = 2
    const Quaternion a{1, 1, 0, 0}, b{1, -1, 0, 0};
    const Quaternion p = qmul(a, b);
    CHECK(p.t == doctest::Approx(2.0));
    CHECK(p.norm() == doctest::Approx(2.0));

    // (2+3i) j = 2j + 3k
    const Quaternion q = qmul(Quaternion{2, 3, 0, 0}, j);
    CHECK(q.t == doctest::Approx(0.0));
    CHECK(q.x == doctest::Approx(0.0));
    CHECK(q.y == doctest::Approx(2.0));
    CHECK(q.z == doctest::Approx(3.0));
}

TEST_CASE("qmul norm multiplicativity and associativity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Quaternion a{uniform_real(rng, -2, 2), uniform_real(rng, -2, 2),
                           uniform_real(rng, -2, 2), uniform_real(rng, -2, 2)};
        const Quaternion b{uniform_real(rng, -2, 2), uniform_real(rng, -2, 2),
                           uniform_real(rng, -2, 2), uniform_real(rng, -2, 2)};
        const Quaternion c{uniform_real(rng, -2, 2), uniform_real(rng, -2, 2),
                           uniform_real(rng, -2, 2), uniform_real(rng, -2, 2)};
        CHECK(qmul(a, b).norm() == doctest::Approx(a.norm() * b.norm()));
        const Quaternion lhs = qmul(qmul(a, b), c);
        const Quaternion rhs = qmul(a, qmul(b, c));
        CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }
}

TEST_CASE("apply_J slot action and quaternion relations") {
    QVector v(2);
    v[0] = 1.0;  // slot 0 value 1
    const QVector j1 = apply_J(1, v);
    CHECK(j1[0] == doctest::Approx(0.0));
    CHECK(j1[1] == doctest::Approx(-1.0));  // 1 -> -i

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const QVector w = random_qvector(3, rng);
        for (int s = 1; s <= 3; ++s) {
            const QVector ww = apply_J(s, apply_J(s, w));
            CHECK((ww + w).norm() < 1e-14);
        }
        const QVector j12 = apply_J(1, apply_J(2, w));
        CHECK((j12 - apply_J(3, w)).norm() < 1e-14);
    }
}

TEST_CASE("flat_inner basics and J-compatibility") {
    QVector e0 = QVector::unit(2, 0);
    CHECK(flat_inner(e0, e0) == doctest::Approx(1.0));

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const QVector v = random_qvector(2, rng);
        const QVector w = random_qvector(2, rng);
        CHECK(flat_inner(v, apply_J(1, v)) == doctest::Approx(0.0).epsilon(1e-12));
        // coordinate-sum oracle
        double s = 0.0;
        for (std::size_t i = 0; i < 8; ++i) s += v[i] * w[i];
        CHECK(flat_inner(v, w) == doctest::Approx(s).epsilon(1e-15));
        for (int axis = 1; axis <= 3; ++axis) {
            CHECK(flat_inner(apply_J(axis, v), apply_J(axis, w)) ==
                  doctest::Approx(flat_inner(v, w)).epsilon(1e-13));
            CHECK(flat_inner(apply_J(axis, v), w) ==
                  doctest::Approx(-flat_inner(v, apply_J(axis, w))).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(flat_inner(QVector(2), QVector(3)), DimensionMismatch);
}

TEST_CASE("affine_apply identity, scaling, inverse round trip") {
    std::mt19937_64 rng(17);
    const AffineMap id = AffineMap::identity(2);
    const QVector x = random_qvector(2, rng);
    CHECK((affine_apply(id, x) - x).norm() < 1e-15);

    AffineMap twice = AffineMap::identity(2);
    twice.a(0, 0) = Quaternion{2, 0, 0, 0};
    twice.a(1, 1) = Quaternion{2, 0, 0, 0};
    CHECK((affine_apply(twice, x) - x * 2.0).norm() < 1e-15);

    for (int trial = 0; trial < 20; ++trial) {
        AffineMap f;
        f.a = QuatMatrix(2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                f.a(i, j) = Quaternion{uniform_real(rng, -2, 2), uniform_real(rng, -2, 2),
                                       uniform_real(rng, -2, 2), uniform_real(rng, -2, 2)};
        f.omega = random_unit_quaternion(rng);
        f.q0 = random_qvector(2, rng);
        const QVector y = random_qvector(2, rng);
        const QVector back = affine_apply(f.inverse(), affine_apply(f, y));
        CHECK((back - y).norm() < 1e-12 * (1.0 + y.norm()));
    }
}

TEST_CASE("affine composition is associative") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        AffineMap f[3];
        for (auto& m : f) {
            m.a = QuatMatrix(2);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    m.a(i, j) = Quaternion{uniform_real(rng, -1, 1), uniform_real(rng, -1, 1),
                                           uniform_real(rng, -1, 1), uniform_real(rng, -1, 1)};
            m.omega = random_unit_quaternion(rng);
            m.q0 = random_qvector(2, rng);
        }
        const AffineMap lhs = compose(compose(f[0], f[1]), f[2]);
        const AffineMap rhs = compose(f[0], compose(f[1], f[2]));
        const QVector x = random_qvector(2, rng);
        CHECK((affine_apply(lhs, x) - affine_apply(rhs, x)).norm() < 1e-12);
        // composition matches pointwise application
        const QVector direct = affine_apply(f[0], affine_apply(f[1], affine_apply(f[2], x)));
        CHECK((affine_apply(lhs, x) - direct).norm() < 1e-12);
    }
}

TEST_CASE("QuatMatrix real representation commutes with J") {
    std::mt19937_64 rng(23);
    QuatMatrix m(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            m(i, j) = Quaternion{uniform_real(rng, -1, 1), uniform_real(rng, -1, 1),
                                 uniform_real(rng, -1, 1), uniform_real(rng, -1, 1)};
    const RealMatrix r = m.to_real();
    const QVector v = random_qvector(2, rng);
    // real representation reproduces the quaternionic action
    CHECK((QVector(r.apply(v.coords())) - m.apply(v)).norm() < 1e-13);
    for (int s = 1; s <= 3; ++s) {
        const QVector a = QVector(r.apply(apply_J(s, v).coords()));
        const QVector b = apply_J(s, QVector(r.apply(v.coords())));
        CHECK((a - b).norm() < 1e-13);
    }
}
