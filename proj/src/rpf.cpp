#include "heckelab/rpf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace heckelab {

namespace {

cd ipow(cd z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cd acc = 1.0, base = z;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

double parity(int r) { return (r % 2 == 0) ? 1.0 : -1.0; }

cd f_zero(int r, int k, cd z) {
    // z^{-r} - (-1)^r z^{-2k+r}
    return ipow(z, -r) - parity(r) * ipow(z, -2 * k + r);
}

cd f_pole(int r, int k, double alpha, cd z) {
    // (z-alpha)^{-r} - (-1)^r alpha^{-r} z^{-2k+r} (z+1/alpha)^{-r}
    return ipow(z - alpha, -r) -
           parity(r) * std::pow(alpha, -r) * ipow(z, -2 * k + r) * ipow(z + 1.0 / alpha, -r);
}

} // namespace

int RationalPeriodFunction::max_zero_r() const {
    int L = 0;
    for (const auto& t : zero_terms) L = std::max(L, t.r);
    return L;
}

void RationalPeriodFunction::validate(const HeckeGroup& g) {
    std::set<int> rs;
    for (const auto& t : zero_terms) {
        if (t.r < g.k)
            throw domain_error("RationalPeriodFunction: zero-term index r must satisfy r >= k");
        if (!rs.insert(t.r).second)
            throw domain_error("RationalPeriodFunction: duplicate zero-term index r");
        if (t.r == g.k && g.k % 2 == 0)
            warnings.push_back("zero-term r = k with k even is identically zero (degenerate)");
    }
    std::set<double> alphas;
    for (const auto& b : pole_blocks) {
        if (b.alpha == 0.0) throw domain_error("PoleBlock: alpha must be nonzero");
        if (b.coeffs.empty()) throw domain_error("PoleBlock: coefficient list must be nonempty");
        if (!alphas.insert(b.alpha).second)
            throw domain_error("RationalPeriodFunction: pole locations must be distinct");
    }
}

RationalPeriodFunction make_rpf(std::vector<ZeroPoleTerm> zero_terms,
                                std::vector<PoleBlock> pole_blocks, const HeckeGroup& g) {
    RationalPeriodFunction q;
    q.zero_terms = std::move(zero_terms);
    q.pole_blocks = std::move(pole_blocks);
    q.validate(g);
    return q;
}

RationalPeriodFunction trivial_rpf(cd alpha0, const HeckeGroup& g) {
    // alpha0 (1 - z^{-2k}) = -alpha0 f_{2k}(z, 0)
    if (alpha0 == cd(0.0)) return make_rpf({}, {}, g);
    return make_rpf({{2 * g.k, -alpha0}}, {}, g);
}

cd eval_rpf(const RationalPeriodFunction& q, const HeckeGroup& g, cd z, double guard) {
    if (std::abs(z) < guard) throw pole_error("eval_rpf: z too close to the pole at 0");
    for (const auto& b : q.pole_blocks) {
        if (std::abs(z - b.alpha) < guard || std::abs(z + 1.0 / b.alpha) < guard)
            throw pole_error("eval_rpf: z too close to a pole of q");
    }
    cd sum = 0.0;
    for (const auto& t : q.zero_terms) sum += t.coeff * f_zero(t.r, g.k, z);
    for (const auto& b : q.pole_blocks)
        for (std::size_t r = 1; r <= b.coeffs.size(); ++r)
            sum += b.coeffs[r - 1] * f_pole(static_cast<int>(r), g.k, b.alpha, z);
    return sum;
}

double check_T_relation(const RationalPeriodFunction& q, const HeckeGroup& g,
                        const std::vector<cd>& samples) {
    double worst = 0.0;
    for (cd z : samples) {
        cd qz = eval_rpf(q, g, z);
        cd qTz = ipow(z, -2 * g.k) * eval_rpf(q, g, -1.0 / z);
        worst = std::max(worst, std::abs(qTz + qz) / (1.0 + std::abs(qz)));
    }
    return worst;
}

double check_cocycle_relation(const RationalPeriodFunction& q, const HeckeGroup& g,
                              const std::vector<cd>& samples) {
    if (!g.p)
        throw domain_error("check_cocycle_relation: requires finite p (theta group excluded)");
    std::vector<cd> pts = samples;
    if (pts.empty()) {
        for (int i = 0; i < 50; ++i) {
            double x = -2.0 + 4.0 * (i + 0.5) / 50.0;
            double y = 0.7 + 0.05 * i;
            pts.emplace_back(x + 0.137, y);
        }
    }
    const GroupElement st = mat_mul(translation(g.lambda), inversion());
    auto qfun = [&](cd w) { return eval_rpf(q, g, w); };

    double worst = 0.0;
    for (cd z : pts) {
        cd total = eval_rpf(q, g, z);
        GroupElement m = st;
        for (int j = 1; j <= *g.p - 1; ++j) {
            total += slash(qfun, m, g, z);
            m = mat_mul(m, st);
        }
        worst = std::max(worst, std::abs(total));
    }
    return worst;
}

} // namespace heckelab
