#pragma once

// Subcommand execution and report persistence: deterministic CSV (17
// significant digits) plus a JSON sidecar echoing the full configuration.

#include <optional>
#include <string>
#include <vector>

#include "heckelab/config.hpp"

namespace heckelab {

struct RunOptions {
    std::string out_dir = ".";
    std::optional<double> tol_override;
    std::optional<long> max_terms_override;
    std::optional<std::uint64_t> seed_override;
    int threads = 1;
};

struct RunOutcome {
    int exit_code = 0; // 0 all residuals in tolerance, 2 breach (1 = error, thrown)
    std::vector<std::string> lines;
    std::string csv_path;
    std::string json_path;
};

RunOutcome run_config(const RunConfig& cfg, const RunOptions& opt);

std::string format_sci(double v); // scientific, 17 significant digits
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

} // namespace heckelab
