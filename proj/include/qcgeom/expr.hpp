#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qcgeom/quat_matrix.hpp"
#include "qcgeom/qvector.hpp"

namespace qcgeom {

// Expression tree for defining functions rho. Coordinate accessors pick real
// components of quaternionic slots; normq(a) is the squared slot norm.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Constant, Coord, NormQ, Add, Sub, Mul, Div, Neg, Pow };

    Kind kind;
    double cval = 0.0;       // Constant
    std::size_t slot = 0;    // Coord, NormQ
    int comp = 0;            // Coord: 0 t, 1 x, 2 y, 3 z
    long long exponent = 0;  // Pow
    ExprPtr lhs, rhs;

    static ExprPtr constant(double v);
    static ExprPtr coord(std::size_t slot, int comp);
    static ExprPtr normq(std::size_t slot);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr div(ExprPtr a, ExprPtr b);
    static ExprPtr neg(ExprPtr a);
    static ExprPtr pow(ExprPtr a, long long k);
};

bool expr_equal(const Expr& a, const Expr& b);

// Canonical fully parenthesized form; parse(print(e)) reproduces e.
std::string print_expr(const Expr& e);

struct SurfaceSpec {
    std::size_t dim = 0;  // quaternionic ambient dimension n+1
    ExprPtr rho;
    QVector box_center;
    double box_halfwidth = 2.0;

    std::size_t n() const { return dim - 1; }
    std::size_t real_dim() const { return 4 * dim; }
};

// Parses the surface file format: '#' comments, `dim = <int>` before
// `rho = <expr>`, optional `box_center` / `box_halfwidth`. Throws ParseError
// with 1-based line/column on malformed input.
SurfaceSpec parse_surface(const std::string& text);

// Canonical file text for a spec (round-trips through parse_surface).
std::string surface_to_text(const SurfaceSpec& spec);

// Defining function of the image surface F(M): rho' = rho o F^-1, expanded
// into the expression language, with the sampling box carried along.
SurfaceSpec transform_surface(const SurfaceSpec& spec, const AffineMap& f);

// Real 4n x 4n matrix of v -> v * q (per-slot right multiplication).
RealMatrix right_mul_real(const Quaternion& q, std::size_t quat_dim);

// Real matrix of the linear part x -> A x conj(omega) of an affine map.
RealMatrix affine_linear_real(const AffineMap& f);

}  // namespace qcgeom
