#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qcgeom/matrix.hpp"
#include "qcgeom/quaternion.hpp"
#include "qcgeom/qvector.hpp"

namespace qcgeom {

// Square quaternionic matrix acting on the left of column vectors,
// (M v)_a = sum_b M[a][b] * v_b. Scalars act on the right of vectors, so
// left matrix action commutes with all J_s.
class QuatMatrix {
public:
    QuatMatrix() = default;
    explicit QuatMatrix(std::size_t n) : n_(n), e_(n * n) {}

    static QuatMatrix identity(std::size_t n);

    std::size_t dim() const { return n_; }

    Quaternion& operator()(std::size_t a, std::size_t b) { return e_[a * n_ + b]; }
    const Quaternion& operator()(std::size_t a, std::size_t b) const { return e_[a * n_ + b]; }

    QVector apply(const QVector& v) const;
    QuatMatrix conj_transpose() const;

    // Gauss-Jordan inverse with partial pivoting by quaternion magnitude.
    // Throws LinearSolveFailure on (near-)singular input.
    QuatMatrix inverse() const;

    double frobenius_norm() const;

    // Real 4n x 4n representation of the left action in the c[4a+m] layout.
    RealMatrix to_real() const;

private:
    std::size_t n_ = 0;
    std::vector<Quaternion> e_;
};

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b);

// Quaternionic affine transformation F(x) = A x conj(omega) + q0 of H^{n+1}.
struct AffineMap {
    QuatMatrix a;
    Quaternion omega{1.0, 0.0, 0.0, 0.0};
    QVector q0;

    static AffineMap identity(std::size_t n);

    AffineMap inverse() const;

    // Frobenius-based condition estimate of the linear part.
    double condition_estimate() const;
};

QVector affine_apply(const AffineMap& f, const QVector& x);
AffineMap compose(const AffineMap& f, const AffineMap& g);  // x -> f(g(x))

// Quaternionic Hermitian matrix H[a][b] = conj(H[b][a]); the induced real
// quadratic form is v -> <Hv, v> with H acting as a left quaternionic matrix.
struct QHermitian {
    QuatMatrix m;

    std::size_t dim() const { return m.dim(); }
    Quaternion hermitian_dot(const QVector& u, const QVector& v) const;  // <<u, Hv>>
};

// Extracts the quaternionic Hermitian matrix from a real symmetric matrix
// commuting with all three J_s. Throws NotJInvariant when the commutator
// residual exceeds 1e-10 relative.
QHermitian to_quat_hermitian(const RealMatrix& delta);

// Inverse direction; exact by construction.
RealMatrix quat_hermitian_to_real(const QHermitian& h);

struct Inertia {
    std::size_t pos = 0;
    std::size_t neg = 0;
    std::size_t zero = 0;
};

struct CongruenceResult {
    QuatMatrix a;  // A* H A = diag(+1 x pos, -1 x neg, 0 x zero)
    Inertia inertia;
};

// Quaternionic symmetric Gaussian elimination with full diagonal pivoting;
// pivots with |pivot| < eps_rank * max|diag| are treated as zero.
CongruenceResult congruence_diagonalize(const QHermitian& h, double eps_rank = 1e-8);

// Quaternion-valued Hermitian dot sum_a conj(u_a) v_a.
Quaternion qherm_dot(const QVector& u, const QVector& v);

}  // namespace qcgeom
