#pragma once

#include <array>
#include <vector>

#include "qcgeom/errors.hpp"
#include "qcgeom/jet.hpp"
#include "qcgeom/matrix.hpp"
#include "qcgeom/qvector.hpp"
#include "qcgeom/surface.hpp"

namespace qcgeom {

enum class Definiteness { NegativeDefinite, PositiveDefinite, Indefinite };

struct QCDiagnostics {
    Definiteness definiteness = Definiteness::Indefinite;
    double sp1_residual = 0.0;      // relative Sp(1)-invariance defect of II on H
    double min_abs_ii_eigen = 0.0;  // smallest |eigenvalue| of II on H
    bool passes(double tol) const {
        return definiteness != Definiteness::Indefinite && sp1_residual < tol;
    }
};

struct NotQCHypersurface : GeomError {
    QCDiagnostics diag;
    NotQCHypersurface(const std::string& what_, QCDiagnostics d)
        : GeomError(what_), diag(d) {}
};

// Induced structure at a surface point: oriented normal, horizontal basis,
// second fundamental form, hat metric, Reeb corrections and sp(1) forms.
struct HatFrame {
    QVector p;
    Jet2 jet;
    double grad_norm = 0.0;
    int orientation = 1;  // N = orientation * grad/|grad|
    QVector N;
    std::array<QVector, 3> JN;
    std::vector<QVector> h_basis;  // 4n ambient-orthonormal vectors spanning H
    RealMatrix II_H;               // negative definite on h_basis
    RealMatrix ghat;               // -II_H
    std::array<QVector, 3> rhat;
    std::array<std::vector<double>, 3> alpha_hat;  // alpha_s(h_i) = II(J_sN, h_i)
    QCDiagnostics diag;

    std::size_t n() const { return h_basis.size() / 4; }
    std::size_t quat_dim() const { return p.quat_dim(); }

    // Second fundamental form of two tangent vectors via the stored jet.
    double ii(const QVector& a, const QVector& b) const;

    // II on tangent_basis(), order h_basis then J_sN.
    RealMatrix ii_tangent() const;

    // h_basis coordinates of a horizontal vector.
    std::vector<double> h_coords(const QVector& x) const;
    QVector from_h_coords(const std::vector<double>& c) const;

    // h_basis followed by J_1 N, J_2 N, J_3 N.
    std::vector<QVector> tangent_basis() const;
};

// Oriented unit normal: grad/|grad| sign-fixed so that II on H comes out
// negative definite. Throws VanishingGradient below 1e-12.
QVector unit_normal(const Jet2& jet);

// -Hess(a,b)/|grad| with the sign tied to the orientation of n.
// Requires a, b tangent to 1e-10.
double second_fundamental(const Jet2& jet, const QVector& n, const QVector& a,
                          const QVector& b);

// Definiteness and Sp(1)-invariance diagnostics of II restricted to H.
QCDiagnostics check_qc(const Jet2& jet, double tol = 1e-8);

// Full induced structure; throws NotQCHypersurface (with diagnostics) when
// check_qc fails, GeomError when p is off the surface.
HatFrame hat_structure(const SurfaceSpec& spec, const QVector& p, double sp1_tol = 1e-8);

// Conformal pair data of the appendix lemma: two structures with the same
// horizontal space differ by a positive factor and an SO(3) rotation.
struct HorizontalStructure {
    QVector p;
    std::vector<QVector> h_basis;      // ambient-orthonormal
    RealMatrix metric;                 // on h_basis
    std::array<RealMatrix, 3> cplx;    // I_s in h_basis coordinates
};

HorizontalStructure horizontal_structure(const HatFrame& frame);

struct ConformalPair {
    double factor = 1.0;
    RealMatrix rotation;  // SO(3), columns: new structures in terms of old
    double residual = 0.0;
};

ConformalPair recover_conformal_pair(const HorizontalStructure& a,
                                     const HorizontalStructure& b, double tol = 1e-8);
ConformalPair recover_conformal_pair(const HatFrame& a, const HatFrame& b,
                                     double tol = 1e-8);

}  // namespace qcgeom
