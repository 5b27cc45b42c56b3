#include "heckelab/hecke.hpp"

#include <cmath>

#include "heckelab/specialfn.hpp"

namespace heckelab {

double lambda_of(int p) {
    if (p < 3) throw domain_error("lambda_of: p must be >= 3 (or infinity)");
    return 2.0 * std::cos(sf::pi / p);
}

double lambda_of_infinity() { return 2.0; }

void HeckeGroup::validate() const {
    if (k < 1) throw domain_error("HeckeGroup: k must be >= 1");
    if (!(lambda > 0.0)) throw domain_error("HeckeGroup: lambda must be positive");
    if (p) {
        if (*p < 3) throw domain_error("HeckeGroup: p must be >= 3");
        if (std::abs(lambda - lambda_of(*p)) > 1e-14)
            throw domain_error("HeckeGroup: lambda inconsistent with 2cos(pi/p)");
    }
}

HeckeGroup make_group(int p, int k) {
    HeckeGroup g;
    g.p = p;
    g.lambda = lambda_of(p);
    g.k = k;
    g.validate();
    return g;
}

HeckeGroup make_group_infinity(int k) {
    HeckeGroup g;
    g.lambda = 2.0;
    g.k = k;
    g.validate();
    return g;
}

HeckeGroup make_group_lambda(double lambda, int k) {
    HeckeGroup g;
    g.lambda = lambda;
    g.k = k;
    g.validate();
    return g;
}

GroupElement mat_mul(const GroupElement& m1, const GroupElement& m2) {
    return {m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
            m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

GroupElement translation(double lambda) { return {1.0, lambda, 0.0, 1.0}; }

GroupElement inversion() { return {0.0, 1.0, -1.0, 0.0}; }

cd slash(const std::function<cd(cd)>& f, const GroupElement& m, const HeckeGroup& g, cd z) {
    cd den = m.c * z + m.d;
    if (std::abs(den) < 1e-14)
        throw pole_error("slash: cz+d vanishes at this point");
    // integer weight 2k: (cz+d)^{-2k} is branch-free
    cd denpow = std::pow(den, -2 * g.k);
    return denpow * f(m.apply(z));
}

} // namespace heckelab
