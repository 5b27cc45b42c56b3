#pragma once

// The two arithmetical identities equivalent to the functional equation:
//  - Riesz-sum / Bessel-series identity (Lambda_1..Lambda_5 right side),
//  - exponential-sum / Tricomi-Psi identity (six named right-side groups),
// plus the Perron-formula oracle and numeric checks of the proof kernels.

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "heckelab/lseries.hpp"

namespace heckelab {

enum class IdentityKind { First, Second };

struct IdentityRequest {
    IdentityKind which = IdentityKind::First;
    int rho = 0;
    std::vector<double> grid;     // x values (first) or y values (second)
    EvalBudget truncation;        // rel_tol drives the certified stop
    long bessel_cap = 100000;
    bool flip_lambda4_i = false;  // probe flag for the Lambda_4 1/i convention

    void validate(const CompletedL& L) const;
};

struct IdentityReport {
    double point = 0.0;
    cd lhs{0.0};
    std::vector<std::pair<std::string, cd>> rhs_terms;
    cd rhs_total{0.0};
    double abs_err = 0.0;
    double rel_err = 0.0; // abs_err / (1 + |lhs|)
    long terms_used = 0;
    std::vector<std::string> warnings;
    std::string error; // nonempty when evaluation failed at this grid point
};

// (1/Gamma(rho+1)) sum'_{0<=m<=x} a_m (x-m)^rho; the primed sum counts a_m/2
// when rho = 0 and x = m within 1e-12.
cd riesz_lhs(const CompletedL& L, double x, int rho);

struct FirstTerms {
    cd L1{0.0}, L2{0.0}, L3{0.0}, L4{0.0}, L5{0.0};
    long bessel_terms_used = 0;
    bool bessel_certified = true;
    std::vector<std::string> warnings;
    cd total() const { return L1 + L2 + L3 + L4 + L5; }
};

FirstTerms first_rhs_terms(const CompletedL& L, double x, int rho,
                           const EvalBudget& budget = {}, long bessel_cap = 100000,
                           bool flip_lambda4_i = false);

struct PerronResult {
    cd value{0.0};
    double trunc_estimate = 0.0; // O(T^{-rho}) envelope from Stirling decay
};

PerronResult perron_oracle(const CompletedL& L, double x, int rho, double sigma,
                           double T, double step = 0.02);

// (-(1/y) d/dy)^rho [ (1/y) sum a_m e^{-y sqrt(m)} ] via the exact
// coefficient recurrence, evaluated in double-double.
cd second_lhs(const CompletedL& L, double y, int rho);

struct SecondTerms {
    cd a0term{0.0}, resolvent{0.0}, psi1{0.0}, psi2{0.0}, gammapair{0.0}, extra{0.0};
    long terms_used = 0;
    double resolvent_tail_bound = 0.0;
    std::vector<std::string> warnings;
    cd total() const { return a0term + resolvent + psi1 + psi2 + gammapair + extra; }
};

SecondTerms second_rhs_terms(const CompletedL& L, double y, int rho,
                             const EvalBudget& budget = {});

std::vector<IdentityReport> identity_report(const CompletedL& L, const IdentityRequest& req);

// Proof-kernel checks: closed form vs an independent quadrature of the
// defining integral.  Selectors: L2, L5, L6, Q1, Q2, I2.
struct KernelParams {
    int r = 1;
    double alpha = 1.0;
    int rho = 1;
    double y = 2.0;    // Laplace-type kernels
    double x = 2.0;    // I2
    double theta = 1.0; // vertical-line abscissa for I2
};

struct KernelCheck {
    std::string name;
    cd closed_form{0.0};
    cd quadrature{0.0};
    double rel_err = 0.0;
};

KernelCheck verify_proof_kernel(const CompletedL& L, const std::string& selector,
                                const KernelParams& p, const EvalBudget& budget = {});

} // namespace heckelab
