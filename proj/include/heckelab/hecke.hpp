#pragma once

#include <complex>
#include <functional>
#include <optional>

#include "heckelab/errors.hpp"

namespace heckelab {

using cd = std::complex<double>;

// lambda_p = 2 cos(pi/p); p = infinity (theta group) gives lambda = 2.
double lambda_of(int p);
double lambda_of_infinity();

// The group parameter: p (>= 3, or unset for p = infinity with lambda = 2,
// or unset with an explicit lambda), and the weight 2k.
struct HeckeGroup {
    std::optional<int> p;  // empty means "infinity" when lambda == 2
    double lambda = 1.0;
    int k = 1; // weight is 2k

    int weight() const { return 2 * k; }
    // i^{2k} = (-1)^k, exact for integer k
    double i2k() const { return (k % 2 == 0) ? 1.0 : -1.0; }
    void validate() const;
};

HeckeGroup make_group(int p, int k);
HeckeGroup make_group_infinity(int k);
HeckeGroup make_group_lambda(double lambda, int k);

// 2x2 real matrix acting as a Moebius transformation; det = 1.
struct GroupElement {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    cd apply(cd z) const { return (a * z + b) / (c * z + d); }
    void validate() const {
        if (std::abs(a * d - b * c - 1.0) > 1e-12)
            throw domain_error("GroupElement: determinant must be 1");
    }
};

GroupElement mat_mul(const GroupElement& m1, const GroupElement& m2);
GroupElement translation(double lambda); // S: z -> z + lambda
GroupElement inversion();                // T: z -> -1/z

// (f|M)(z) = (cz+d)^{-2k} f(Mz)
cd slash(const std::function<cd(cd)>& f, const GroupElement& m, const HeckeGroup& g, cd z);

} // namespace heckelab
