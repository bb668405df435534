#pragma once

#include <array>
#include <functional>

#include "qcgeom/frame.hpp"

namespace qcgeom {

// Conformally rescaled qc-Einstein data at a point: eta_s = f * hat-eta_s with
// f = mu^{1/(n+2)}, horizontal metric g = f ghat, the common vector r, the
// scalar constant S and the calibrated Reeb fields xi_s = f^-1 J_sN + J_s r.
struct CalibratedFrame {
    HatFrame base;
    double mu = 1.0;
    double f = 1.0;
    RealMatrix g;  // on base.h_basis
    QVector r;
    double S = 0.0;
    double S_spread = 0.0;     // spread of the three per-s values of S
    double r_cross_dev = 0.0;  // worst deviation of the s=2,3 solutions for r
    double mu_s_dev = 0.0;     // worst relative deviation of the three mu ratios
    std::array<QVector, 3> xi;

    // eta_s(a) = f <J_sN, a>, defined for ambient vectors
    double eta(int s, const QVector& a) const { return f * flat_inner(base.JN[s - 1], a); }
};

// Ratio of the Pfaffians of the ambient and induced fundamental (2,0)-forms
// on H in a fixed complex basis; equal for s = 1,2,3 to 1e-10 relative.
double compute_mu(const HatFrame& frame);

// Independent route: fourth root of det of the ambient metric on H expressed
// in a ghat-orthonormal basis.
double mu_determinant_oracle(const HatFrame& frame);

CalibratedFrame calibrate(const HatFrame& frame);

// Max over points of |f(p)/ref(p) - c| / c with c taken at the first point.
double f_ratio_check(const SurfaceSpec& spec, const std::vector<QVector>& points,
                     const std::function<double(const QVector&)>& ref);

// Richardson-extrapolated derivative of f along the projected curve p + tX.
double df_along(const SurfaceSpec& spec, const QVector& p, const QVector& x,
                double step = 1e-3);

// Finite-difference exterior derivative d eta_s(x, y) at p via the circulation
// around a projected parallelogram, Richardson extrapolated. With calibrated
// = false the pairing is hat-eta_s = <J_sN, .>, otherwise f * hat-eta_s.
double deta_fd(const SurfaceSpec& spec, const QVector& p, int s, const QVector& x,
               const QVector& y, double step = 1e-3, bool calibrated = false);

}  // namespace qcgeom
