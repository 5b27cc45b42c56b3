#pragma once

#include <complex>
#include <functional>

#include "heckelab/errors.hpp"

namespace heckelab::quad {

using cd = std::complex<double>;

struct QuadResult {
    cd value;
    double abs_err = 0.0;
    int evals = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a,b] for a complex-valued integrand.
QuadResult adaptive_gk(const std::function<cd(double)>& f, double a, double b,
                       double abs_tol, double rel_tol = 0.0, int max_intervals = 4000);

// (1/2*pi*i) * integral of f over the vertical segment Re s = c, Im s in [-T,T],
// by the trapezoid rule with n uniform panels.
cd line_integral(const std::function<cd(cd)>& f, double c, double T, int n);

// Trapezoid around the circle |s - s0| = radius, counterclockwise:
// (1/2*pi*i) * contour integral of f, spectrally accurate for f analytic
// in an annulus around the circle.
cd circle_integral(const std::function<cd(cd)>& f, cd s0, double radius, int n);

} // namespace heckelab::quad
