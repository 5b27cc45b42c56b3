#pragma once

// Configuration ingestion: one strict JSON document per run (unknown keys
// are errors), validated into a ready-to-run CompletedL plus check spec.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/identities.hpp"

namespace heckelab {

struct KernelSpec {
    std::string name; // L2 | L5 | L6 | Q1 | Q2 | I2
    KernelParams params;
};

struct CheckSpec {
    std::string type; // fe | first | second | residues | kernels
    int rho = 0;
    std::vector<double> grid;  // x (first) / y (second)
    std::vector<double> sigma; // fe grid, real parts
    std::vector<double> t;     // fe grid, imaginary parts
    double tol = 1e-8;
    long bessel_cap = 100000;
    bool flip_lambda4_i = false;
    double radius = 0.4; // residues contour radius
    int points = 64;     // residues trapezoid points
    std::vector<KernelSpec> kernels;
};

struct RunConfig {
    CompletedL L;
    CheckSpec check;
    EvalBudget budget;
    std::uint64_t seed = 12345;
    std::string echo; // canonical dump of the parsed document
};

RunConfig parse_config(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);

} // namespace heckelab
