#pragma once

// The completed series Phi(s) = (2pi/lambda)^{-s} Gamma(s) sum a_m m^{-s},
// its five-piece meromorphic continuation
//     Phi = D + D0 + E0 + EH + EB,
// the functional-equation residual R(s) = EB(2k-s) - i^{2k} EB(s), per-piece
// residue formulas, and a trapezoid contour-integration residue oracle.

#include <complex>
#include <vector>

#include "heckelab/budget.hpp"
#include "heckelab/coefficients.hpp"
#include "heckelab/hecke.hpp"
#include "heckelab/quadrature.hpp"
#include "heckelab/rpf.hpp"

namespace heckelab {

struct ContinuationConfig {
    double delta_strip = 0.0;          // the strip half-width parameter (> 2k, >= beta)
    double quad_abs_tol = 1e-12;
    double quad_y_max = 0.0;           // upper limit for the D-integral
    double pole_exclusion_radius = 1e-3;
    bool exact_i2k = true;             // i^{2k} as (-1)^k; complex path kept for probing

    void validate() const;
};

// delta = max(beta, 2k, L) + 1.55 nudged off integers; y_max chosen so the
// dropped exponential tail is far below quad_abs_tol.
ContinuationConfig default_config(const HeckeGroup& g, const CoefficientSeries& s,
                                  const RationalPeriodFunction& q);

struct CompletedL {
    HeckeGroup group;
    CoefficientSeries series;
    RationalPeriodFunction rpf;
    ContinuationConfig config;

    cd i2k() const;
};

CompletedL make_completed(HeckeGroup g, CoefficientSeries s, RationalPeriodFunction q);
CompletedL make_completed(HeckeGroup g, CoefficientSeries s, RationalPeriodFunction q,
                          ContinuationConfig cfg);

// Dirichlet-product form, valid for Re s > beta + 1; optionally reports the
// certified truncation tail bound.
cd phi_dirichlet(const CompletedL& L, cd s, double* tail_bound = nullptr);

// Continuation pieces.
cd D_integral(const CompletedL& L, cd s, const EvalBudget& budget = {});
cd D0(const CompletedL& L, cd s);
cd E0(const CompletedL& L, cd s);
cd EH(const CompletedL& L, cd s, const EvalBudget& budget = {});
cd EB(const CompletedL& L, cd s);

cd phi_continued(const CompletedL& L, cd s, const EvalBudget& budget = {});

// R(s) = EB(2k-s) - i^{2k} EB(s); also evaluated through the closed
// Beta-product form and asserted to agree.
cd R_of(const CompletedL& L, cd s);

// |Phi(2k-s) - i^{2k} Phi(s) - R(s)| / (1 + |Phi(s)|)
double fe_residual(const CompletedL& L, cd s, const EvalBudget& budget = {});

enum class PoleSet { S0, SE0, SH, SB };

// Integer pole locations of each piece inside the strip [2k-delta, delta].
std::vector<double> pole_points(const CompletedL& L, PoleSet which);

// Every point where some continuation piece is singular (includes the
// mirrored EH/EB pair poles at s = 2k+n whose total residue cancels).
std::vector<double> all_singular_points(const CompletedL& L);

// Closed-form residue sums over each pole set, exactly as attributed
// per piece.
cd residue_sum(const CompletedL& L, PoleSet which);

// Sum over all pieces of the closed-form residue at the integer point s0.
cd residue_at(const CompletedL& L, double s0);

// (1/2*pi*i) contour integral of phi_continued around s0; n-point trapezoid.
cd contour_residue_oracle(const CompletedL& L, cd s0, double radius, int n,
                          const EvalBudget& budget = {});

} // namespace heckelab
