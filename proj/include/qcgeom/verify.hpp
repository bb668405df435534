#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcgeom/classify.hpp"

namespace qcgeom {

struct BatteryResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    double score = 0.0;  // worst residual / its tolerance; < 1 passes
    std::string note;
    std::vector<std::pair<std::string, double>> metrics;
};

struct VerifyOptions {
    std::size_t samples = 32;
    std::uint64_t rng_seed = 1;
    double tol_sp1 = 1e-8;
    double tol_const = 1e-6;
};

extern const std::vector<std::string> kAllBatteries;  // einstein mu delta reeb potentials conformal

bool is_known_battery(const std::string& name);

// Runs the named invariant batteries on the surface. "potentials" is reported
// as skipped on surfaces whose form is not degenerate unless it was the only
// battery requested (then NotDegenerate propagates).
std::vector<BatteryResult> run_batteries(const SurfaceSpec& spec,
                                         const std::vector<std::string>& names,
                                         const VerifyOptions& opts = {});

}  // namespace qcgeom
