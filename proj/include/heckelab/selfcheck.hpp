#pragma once

// The library's invariant suite: every module contributes property checks
// (reflection/recurrence laws, slash composition, T-relation on random
// Lemma-family draws, continuation-piece symmetries, the Mellin quadrature
// cross-check of the E-pieces, identity bookkeeping).  Run by the selfcheck
// subcommand and reused by the tests.

#include <cstdint>
#include <string>
#include <vector>

namespace heckelab {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

std::vector<CheckResult> run_selfcheck(std::uint64_t seed);

} // namespace heckelab
