#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qcgeom/expr.hpp"
#include "qcgeom/jet.hpp"
#include "qcgeom/qvector.hpp"

namespace qcgeom {

double eval_value(const SurfaceSpec& spec, const QVector& p);
Jet1 eval_jet1(const SurfaceSpec& spec, const QVector& p);

// Value, gradient and Hessian of rho at p, exact to roundoff.
Jet2 eval_jet2(const SurfaceSpec& spec, const QVector& p);

// Newton iteration x <- x - rho(x) grad/|grad|^2 until
// |rho| < 1e-12 (1 + |grad| |x|); at most 50 steps.
QVector project_to_surface(const SurfaceSpec& spec, const QVector& seed);

// Deterministic surface sampling: uniform seeds in the box, projected;
// non-convergent seeds are redrawn (at most 100*count attempts).
std::vector<QVector> sample_points(const SurfaceSpec& spec, std::size_t count,
                                   std::uint64_t rng_seed);

// Deterministic uniform helpers shared by sampling and the test batteries.
double uniform_real(std::mt19937_64& rng, double lo, double hi);
Quaternion random_unit_quaternion(std::mt19937_64& rng);

}  // namespace qcgeom
