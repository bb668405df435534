#include <doctest.h>

#include <random>

#include "qcgeom/expr.hpp"
#include "qcgeom/surface.hpp"
#include "test_util.hpp"

using namespace qcgeom;

TEST_CASE("parse_surface model specs") {
    const SurfaceSpec heis = parse_surface("dim = 2\nrho = normq(0) + re(1)");
    CHECK(heis.dim == 2);
    CHECK(heis.n() == 1);
    CHECK(print_expr(*heis.rho) == "(normq(0) + re(1))");

    const SurfaceSpec sph = parse_surface("dim = 2\nrho = normq(0) + normq(1) - 1");
    CHECK(print_expr(*sph.rho) == "((normq(0) + normq(1)) - 1)");

    // comments, blank lines, box options
    const SurfaceSpec full = parse_surface(
        "# a comment\n\ndim = 2\nrho = normq(0) - 1 # trailing\n"
        "box_center = 0,0,0,0, 0,0,0,1\nbox_halfwidth = 3\n");
    CHECK(full.box_halfwidth == doctest::Approx(3.0));
    CHECK(full.box_center[7] == doctest::Approx(1.0));
}

TEST_CASE("parse_surface error positions") {
    // second '+' is unexpected at line 2, col 18
    try {
        parse_surface("dim = 2\nrho = normq(0) + + 1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 18);
    }

    CHECK_THROWS_AS(parse_surface("rho = 1\ndim = 2"), ParseError);  // dim must come first
    CHECK_THROWS_AS(parse_surface("dim = 1\nrho = normq(0)"), ParseError);  // n >= 1
    CHECK_THROWS_AS(parse_surface("dim = 2\nrho = foo(0)"), ParseError);
    CHECK_THROWS_AS(parse_surface("dim = 2\nrho = re(5)"), ParseError);
    CHECK_THROWS_AS(parse_surface("dim = 2\nrho = (normq(0)"), ParseError);
    CHECK_THROWS_AS(parse_surface("dim = 2"), ParseError);

    try {
        parse_surface("dim = 2\nrho = normq(2)");
        FAIL("expected slot range error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
    try {
        parse_surface("dim = 2\nrho = bogus(0)");
        FAIL("expected unknown identifier error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
    }
}

TEST_CASE("precedence and unary minus") {
    const SurfaceSpec s = parse_surface("dim = 2\nrho = -re(0)^2 + 2*re(1)");
    // ^ binds tighter than unary minus: -(re(0)^2)
    const QVector p{std::vector<double>{3, 0, 0, 0, 5, 0, 0, 0}};
    CHECK(eval_value(s, p) == doctest::Approx(-9.0 + 10.0));

    const SurfaceSpec q = parse_surface("dim = 2\nrho = 2 - 1 - 1");  // left associative
    CHECK(eval_value(q, QVector(2)) == doctest::Approx(0.0));

    const SurfaceSpec r = parse_surface("dim = 2\nrho = 6 / 2 / 3");
    CHECK(eval_value(r, QVector(2)) == doctest::Approx(1.0));

    const SurfaceSpec t = parse_surface("dim = 2\nrho = re(0)^-2");
    QVector p2(2);
    p2[0] = 2.0;
    CHECK(eval_value(t, p2) == doctest::Approx(0.25));
}

TEST_CASE("print/parse round trip is the identity on trees") {
    const char* sources[] = {
        "normq(0) + re(1)",
        "normq(0) + normq(1) - 1",
        "4*re(0)^2 + imi(0)^2 + imj(0)^2 + imk(0)^2 + normq(1) - 1",
        "-(re(0) - imj(1))^3 / (1 + normq(0))",
        "2.5e-3 * imk(1) - -7",
    };
    for (const char* src : sources) {
        const SurfaceSpec a = parse_surface(std::string("dim = 2\nrho = ") + src);
        const SurfaceSpec b = parse_surface("dim = 2\nrho = " + print_expr(*a.rho));
        CHECK(expr_equal(*a.rho, *b.rho));
        CHECK(print_expr(*a.rho) == print_expr(*b.rho));
    }
}

TEST_CASE("surface_to_text round trips the whole spec") {
    const SurfaceSpec a =
        parse_surface("dim = 2\nrho = normq(0) - 1\nbox_center = 1,0,0,0,0,0,0,0\n"
                      "box_halfwidth = 1.5\n");
    const SurfaceSpec b = parse_surface(surface_to_text(a));
    CHECK(b.dim == a.dim);
    CHECK(expr_equal(*a.rho, *b.rho));
    CHECK(b.box_halfwidth == doctest::Approx(a.box_halfwidth));
    CHECK((b.box_center - a.box_center).norm() < 1e-15);
}

TEST_CASE("transform_surface matches pointwise composition") {
    std::mt19937_64 rng(53);
    const SurfaceSpec sphere = parse_surface("dim = 2\nrho = normq(0) + normq(1) - 1");
    for (int trial = 0; trial < 10; ++trial) {
        const AffineMap f = qcgeom::testutil::random_affine(2, rng);
        const SurfaceSpec image = transform_surface(sphere, f);
        for (int k = 0; k < 5; ++k) {
            QVector x(2);
            for (int i = 0; i < 8; ++i) x[i] = uniform_real(rng, -2, 2);
            const double lhs = eval_value(image, x);
            const double rhs = eval_value(sphere, affine_apply(f.inverse(), x));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
        // points of the original surface land on the image surface
        const QVector on = project_to_surface(sphere, QVector::unit(2, 4));
        CHECK(std::abs(eval_value(image, affine_apply(f, on))) < 1e-8);
    }
}
