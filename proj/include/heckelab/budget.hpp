#pragma once

#include "heckelab/errors.hpp"

namespace heckelab {

// Truncation/accuracy budget shared by all series and quadrature loops.
struct EvalBudget {
    int max_terms = 2000;      // series truncation cap
    double rel_tol = 1e-12;    // target relative accuracy
    double abs_floor = 1e-300; // underflow guard for relative-error denominators

    void validate() const {
        if (max_terms < 1) throw domain_error("EvalBudget: max_terms must be >= 1");
        if (!(rel_tol > 0.0 && rel_tol < 1.0))
            throw domain_error("EvalBudget: rel_tol must lie in (0,1)");
        if (!(abs_floor > 0.0)) throw domain_error("EvalBudget: abs_floor must be > 0");
    }
};

} // namespace heckelab
