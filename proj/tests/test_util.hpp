#pragma once

#include <random>
#include <string>

#include "qcgeom/expr.hpp"
#include "qcgeom/surface.hpp"

namespace qcgeom::testutil {

std::string surface_path(const std::string& name);
SurfaceSpec load_surface(const std::string& name);

// Random quaternionic affine map: entries uniform in [-2,2] with condition
// estimate capped at 1e3 (resampled otherwise), random unit omega,
// translation uniform in [-1,1].
AffineMap random_affine(std::size_t dim, std::mt19937_64& rng);

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args);

}  // namespace qcgeom::testutil
