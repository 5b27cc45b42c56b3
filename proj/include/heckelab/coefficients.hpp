#pragma once

// Fourier-coefficient models of entire automorphic integrals: built-in
// generators (normalized Eisenstein series, Delta), truncated evaluation of
// F(z) with a certified exponential tail bound, and the modular-relation
// residual check.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "heckelab/budget.hpp"
#include "heckelab/hecke.hpp"
#include "heckelab/rpf.hpp"

namespace heckelab {

struct CoefficientSeries {
    cd a0{0.0};
    std::vector<cd> coeffs; // coeffs[m-1] holds a_m, m = 1..mmax
    double beta = 1.0;      // sum |a_m| m^{-beta} declared finite
    std::string label;
    double growth_K = 0.0;  // reported: max_m |a_m| / m^{beta - 1/4} over the stored range
    bool finite = false;    // true when coeffs is the complete series (zeros beyond)

    std::size_t mmax() const { return coeffs.size(); }
    cd a(std::size_t m) const { return coeffs.at(m - 1); }
    void finalize_growth();
};

// a0 = 1, a_m = c_{2k} sigma_{2k-1}(m); weights 4, 6, 8, 10, 14.
CoefficientSeries coeffs_eisenstein(int weight2k, std::size_t mmax);

// a0 = 0, a_m = tau(m) from the exact-integer expansion of q prod (1-q^n)^24.
CoefficientSeries coeffs_delta(std::size_t mmax);

// Inline coefficient list with a declared growth exponent.
CoefficientSeries coeffs_list(cd a0, std::vector<cd> a, double beta,
                              const std::string& label = "list");

// Truncated Fourier sum with certified geometric tail bound; throws
// tail_error when the stored range cannot certify the requested accuracy.
cd eval_F(const CoefficientSeries& s, const HeckeGroup& g, cd z,
          const EvalBudget& budget = {});

// max over samples of |z^{-2k} F(-1/z) - F(z) - q(z)| / (1 + |F(z)|)
double check_modular_relation(const CoefficientSeries& s, const RationalPeriodFunction& q,
                              const HeckeGroup& g, const std::vector<cd>& samples,
                              const EvalBudget& budget = {});

// CSV columns: m, re, im (row m = 0 carries a0).
void write_coeffs_csv(const CoefficientSeries& s, const std::string& path);
CoefficientSeries read_coeffs_csv(const std::string& path, double beta,
                                  const std::string& label = "csv");

} // namespace heckelab
