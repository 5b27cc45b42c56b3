#pragma once

// Rational period functions built from the two-parameter family
//   f_r(z,0)     = z^{-r} - (-1)^r z^{-2k+r}
//   f_r(z,alpha) = (z-alpha)^{-r} - (-1)^r alpha^{-r} z^{-2k+r} (z+1/alpha)^{-r}
// which satisfies q|T + q = 0 identically.

#include <complex>
#include <string>
#include <vector>

#include "heckelab/hecke.hpp"

namespace heckelab {

struct ZeroPoleTerm {
    int r = 1;      // k <= r
    cd coeff{0.0};  // C_r
};

struct PoleBlock {
    double alpha = 1.0;      // nonzero real pole location
    std::vector<cd> coeffs;  // coeffs[r-1] holds C_{r j}, r = 1..M_j
};

struct RationalPeriodFunction {
    std::vector<ZeroPoleTerm> zero_terms;
    std::vector<PoleBlock> pole_blocks;
    std::vector<std::string> warnings; // e.g. identically-zero degenerate terms

    bool empty() const { return zero_terms.empty() && pole_blocks.empty(); }
    int max_zero_r() const; // L; 0 when no zero terms
    void validate(const HeckeGroup& g);
};

// Assembles and validates an RPF, attaching degenerate-term warnings.
RationalPeriodFunction make_rpf(std::vector<ZeroPoleTerm> zero_terms,
                                std::vector<PoleBlock> pole_blocks,
                                const HeckeGroup& g);

// The trivial period function alpha0 (1 - z^{-2k}) of the F = -alpha0
// construction, expressed in the family as C_{2k} = -alpha0.
RationalPeriodFunction trivial_rpf(cd alpha0, const HeckeGroup& g);

// Evaluate q(z); refuses within `guard` of any pole 0, alpha_j, -1/alpha_j.
cd eval_rpf(const RationalPeriodFunction& q, const HeckeGroup& g, cd z,
            double guard = 1e-8);

// max over samples of |(q|T)(z) + q(z)| / (1 + |q(z)|)
double check_T_relation(const RationalPeriodFunction& q, const HeckeGroup& g,
                        const std::vector<cd>& samples);

// max residual of the p-term cocycle sum q|(ST)^{p-1} + ... + q|(ST) + q
// over the samples (default: 50 deterministic upper-half-plane points).
// Reported, not asserted: the Lemma family only enforces the T-relation.
double check_cocycle_relation(const RationalPeriodFunction& q, const HeckeGroup& g,
                              const std::vector<cd>& samples = {});

} // namespace heckelab
