#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcgeom/classify.hpp"
#include "qcgeom/verify.hpp"

namespace qcgeom {

// Structured run report. Serialized with a fixed key order and 17 significant
// digits so identical runs produce byte-identical JSON.
struct Report {
    std::string schema_version = "1";
    std::string command;
    std::string surface_file;
    std::size_t dim = 0;
    std::string rho;
    std::string outcome;  // OK | Rejected | Error
    std::string message;

    bool has_classification = false;
    std::string label;
    Inertia inertia;
    std::vector<double> normalizer_a;  // quaternion components, row-major
    std::vector<double> normalizer_omega;
    std::vector<double> normalizer_q0;
    double residual = 0.0;

    std::vector<std::pair<std::string, double>> diagnostics;
    std::vector<BatteryResult> batteries;

    bool has_frame = false;
    std::vector<double> frame_point;
    std::vector<double> frame_normal;
    std::vector<std::vector<double>> frame_eta;  // <J_sN, .> pairing vectors
    std::vector<double> frame_ii_eigenvalues;
    std::vector<double> frame_r;
    std::vector<double> frame_delta;  // row-major

    std::string normalized_surface;  // normalize command output

    std::size_t points_used = 0;
    std::uint64_t rng_seed = 0;
};

std::string to_json(const Report& report);
std::string to_table(const Report& report);

void fill_classification(Report& report, const Classification& c);

}  // namespace qcgeom
