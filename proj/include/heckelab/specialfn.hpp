#pragma once

// Self-contained special-function kernel: Gamma/Beta for complex argument,
// Bessel J of real order, Gauss and confluent hypergeometric series, and
// the Tricomi function of the second kind.  Everything is pure; accuracy is
// governed by the EvalBudget passed in (defaults aim at ~1e-12 relative).

#include <complex>

#include "heckelab/budget.hpp"
#include "heckelab/errors.hpp"

namespace heckelab::sf {

using cd = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Gamma on C minus the nonpositive integers (Lanczos + reflection).
cd gamma(cd z);

// log Gamma suitable for exponentiated combinations (branch not guaranteed
// principal away from the real axis; exp(sum of lgamma) is branch-safe).
cd lgamma(cd z);

// 1/Gamma, entire: returns 0 at nonpositive integers.
cd rgamma(cd z);

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), computed via lgamma.
cd beta_fn(cd a, cd b);

// Bessel J_nu(t) for real nu >= 0, t >= 0.
double bessel_j(double nu, double t, const EvalBudget& budget = {});

// Kummer's M = 1F1(a;b;z).
cd hyp1f1(cd a, cd b, cd z, const EvalBudget& budget = {});

// Gauss 2F1(a,b;c;z) for |z| < 1.
cd hyp2f1(cd a, cd b, cd c, cd z, const EvalBudget& budget = {});

// Tricomi Psi(a,b;z), b non-integer, via the two-term 1F1 connection formula.
// z^{1-b} uses the principal branch.
cd tricomi_u(cd a, cd b, cd z, const EvalBudget& budget = {});

// Same, with the phase of z given explicitly (may lie outside (-pi,pi]);
// needed when z moves along a contour that crosses the principal cut.
cd tricomi_u_branch(cd a, cd b, double abs_z, double arg_z,
                    const EvalBudget& budget = {});

// Pochhammer (x)_n for small integer n >= 0.
double poch(double x, int n);

// True if z is within tol of an integer <= 0 (a Gamma pole).
bool is_gamma_pole(cd z, double tol = 1e-12);

} // namespace heckelab::sf
