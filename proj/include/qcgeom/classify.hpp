#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcgeom/calibrate.hpp"
#include "qcgeom/quat_matrix.hpp"

namespace qcgeom {

// The constant J-invariant symmetric bilinear form of the ambient restriction,
// averaged over sample points, with its constancy and J-invariance defects.
struct DeltaForm {
    RealMatrix matrix;
    double constancy_dev = 0.0;
    double j_residual = 0.0;
};

enum class QuadricClass { Parabolic, Sphere, Hyperboloid };

std::string to_string(QuadricClass c);

struct Classification {
    QuadricClass label = QuadricClass::Sphere;
    Inertia inertia;  // quaternionic units
    AffineMap normalizer;
    double residual = 0.0;  // max model-equation residual over samples
    DeltaForm delta;
    std::vector<double> fit_b;
    double fit_c = 0.0;
    double fit_residual = 0.0;
    // aggregates over sample points
    double sp1_max = 0.0;
    double s_mean = 0.0;
    double s_spread = 0.0;
    double mu_dev_max = 0.0;
    std::size_t points_used = 0;
};

struct ClassifyOptions {
    std::size_t samples = 32;
    std::uint64_t rng_seed = 1;
    double tol_sp1 = 1e-8;
    double tol_const = 1e-6;
    double eps_rank = 1e-8;
};

// Delta(v, w) = -f II(v', w') + (S/2) lambda(v) lambda(w) on the ambient basis,
// with lambda = f <N, .> and v' = v - lambda(v) (f^-1 N + r).
RealMatrix assemble_delta(const CalibratedFrame& cf);

// Mean of per-point forms; throws NotParallel when the relative entrywise
// spread exceeds tol.
DeltaForm delta_constancy(const std::vector<RealMatrix>& deltas, double tol = 1e-6);
DeltaForm delta_constancy(const SurfaceSpec& spec, const std::vector<QVector>& points,
                          double tol = 1e-6, double sp1_tol = 1e-8);

// Quaternionic inertia: eigenvalues counted in quadruples. Throws
// QuadrupleViolation when multiplicities are not divisible by 4.
Inertia signature(const DeltaForm& delta, double eps_rank = 1e-8);

struct QuadricFit {
    std::vector<double> b;
    double c = 0.0;
    double residual = 0.0;
};

// Least squares fit of <Delta x, x> + <b, x> + c = 0 over the sample points;
// needs at least 4(n+1)+2 of them.
QuadricFit fit_quadric(const RealMatrix& delta, const std::vector<QVector>& points);

// Affine map carrying the fitted quadric onto its model hyperquadric.
AffineMap normalize_affine(const DeltaForm& delta, const std::vector<double>& b, double c,
                           const Inertia& inertia, double eps_rank = 1e-8);

// Model equation residual of a (transformed) point for the given class.
double model_equation(QuadricClass label, const QVector& z);

// Full pipeline: sample, frame, calibrate, assemble, aggregate, fit, normalize.
Classification classify(const SurfaceSpec& spec, const ClassifyOptions& opts = {});

struct HeisenbergReport {
    double fl0_dev = 0.0;
    double potential_fit_residual = 0.0;
    double c0 = 0.0;  // the constant f * l0
};

// Degenerate-case potentials: f l0 constant and f^2 h affine in the kernel
// coordinates. Requires inertia (n, 0, 1).
HeisenbergReport heisenberg_invariants(const SurfaceSpec& spec,
                                       const std::vector<QVector>& points,
                                       const DeltaForm& delta, double eps_rank = 1e-8);

}  // namespace qcgeom
