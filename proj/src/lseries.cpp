#include "heckelab/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "heckelab/numerics.hpp"
#include "heckelab/specialfn.hpp"

namespace heckelab {

using sf::pi;

namespace {

// exact powers of i and -i for integer exponents
cd i_pow(long n) {
    long r = ((n % 4) + 4) % 4;
    switch (r) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

cd neg_i_pow(long n) { return i_pow(-n); }

cd ipow(cd z, long n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cd acc = 1.0, base = z;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

double dist_to(cd s, double p) { return std::abs(s - cd(p, 0.0)); }

void require_off(cd s, const std::vector<double>& pts, double radius, const char* who) {
    for (double p : pts)
        if (dist_to(s, p) < radius)
            throw pole_error(std::string(who) + ": s within exclusion radius of pole at " +
                             std::to_string(p));
}

int eb_rmax(const CompletedL& L, const PoleBlock& b) {
    return std::min<int>(static_cast<int>(b.coeffs.size()), L.group.k);
}

// (i alpha)^{w} with the principal branch; alpha real nonzero.
cd ialpha_pow(double alpha, cd w) {
    double arg = alpha > 0.0 ? 0.5 * pi : -0.5 * pi;
    return std::exp(w * cd(std::log(std::abs(alpha)), arg));
}

} // namespace

void ContinuationConfig::validate() const {
    if (!(quad_abs_tol > 0.0))
        throw domain_error("ContinuationConfig: quad_abs_tol must be positive");
    if (!(quad_y_max > 1.0))
        throw domain_error("ContinuationConfig: quad_y_max must exceed 1");
    if (!(pole_exclusion_radius > 0.0))
        throw domain_error("ContinuationConfig: pole_exclusion_radius must be positive");
    double frac = std::abs(delta_strip - std::round(delta_strip));
    if (frac < 1e-3)
        throw domain_error("ContinuationConfig: delta_strip must stay 1e-3 away from integers");
}

ContinuationConfig default_config(const HeckeGroup& g, const CoefficientSeries& s,
                                  const RationalPeriodFunction& q) {
    ContinuationConfig cfg;
    double L = q.max_zero_r();
    double delta = std::max({s.beta, 2.0 * g.k, L}) + 1.55;
    while (std::abs(delta - std::round(delta)) < 1e-3) delta += 0.051;
    cfg.delta_strip = delta;

    // pick y_max so e^{-2 pi y/lambda} y^P < quad_abs_tol * 1e-2, P = max(delta, 2k)
    double P = std::max(delta, 2.0 * g.k);
    double target = std::log(1.0 / (cfg.quad_abs_tol * 1e-2));
    double y = g.lambda * target / (2.0 * pi) + 1.0;
    for (int it = 0; it < 40; ++it)
        y = g.lambda / (2.0 * pi) * (target + P * std::log(std::max(y, 2.0)));
    cfg.quad_y_max = std::max(y, 3.0);
    return cfg;
}

cd CompletedL::i2k() const {
    if (config.exact_i2k) return {group.i2k(), 0.0};
    return ipow(cd(0.0, 1.0), 2L * group.k);
}

CompletedL make_completed(HeckeGroup g, CoefficientSeries s, RationalPeriodFunction q) {
    ContinuationConfig cfg = default_config(g, s, q);
    return make_completed(std::move(g), std::move(s), std::move(q), cfg);
}

CompletedL make_completed(HeckeGroup g, CoefficientSeries s, RationalPeriodFunction q,
                          ContinuationConfig cfg) {
    g.validate();
    q.validate(g);
    if (!(cfg.delta_strip > 2.0 * g.k))
        throw domain_error("ContinuationConfig: delta_strip must exceed 2k");
    if (!(cfg.delta_strip >= s.beta))
        throw domain_error("ContinuationConfig: delta_strip must be >= beta");
    cfg.validate();
    return CompletedL{std::move(g), std::move(s), std::move(q), cfg};
}

cd phi_dirichlet(const CompletedL& L, cd s, double* tail_bound) {
    const double beta = L.series.beta;
    if (!(s.real() > beta + 1.0))
        throw domain_error("phi_dirichlet: Re s must exceed beta + 1 (abscissa bound)");
    num::kahan_complex sum;
    for (std::size_t m = 1; m <= L.series.mmax(); ++m) {
        if (L.series.coeffs[m - 1] == cd(0.0)) continue;
        sum.add(L.series.coeffs[m - 1] * std::exp(-s * std::log(static_cast<double>(m))));
    }
    // integral-test tail: |a_m| <= K m^{beta-1/4}
    double bK = beta - 0.25;
    double M = static_cast<double>(L.series.mmax());
    double tail = L.series.finite
                      ? 0.0
                      : L.series.growth_K * std::pow(M, bK - s.real() + 1.0) /
                            (s.real() - bK - 1.0);
    if (tail_bound) *tail_bound = tail;
    cd pref = std::exp(-s * std::log(2.0 * pi / L.group.lambda)) * sf::gamma(s);
    return pref * sum.value();
}

cd D_integral(const CompletedL& L, cd s, const EvalBudget& budget) {
    if (L.series.growth_K == 0.0 && L.series.mmax() >= 1) {
        bool all_zero = true;
        for (const auto& c : L.series.coeffs)
            if (c != cd(0.0)) { all_zero = false; break; }
        if (all_zero) return 0.0;
    }
    const cd eps = L.i2k();
    const cd a0 = L.series.a0;
    auto integrand = [&](double y) -> cd {
        cd F = eval_F(L.series, L.group, cd(0.0, y), budget);
        double ly = std::log(y);
        cd w1 = std::exp((s - 1.0) * ly);
        cd w2 = std::exp((2.0 * L.group.k - s - 1.0) * ly);
        return (F - a0) * (w1 + eps * w2);
    };
    auto r = quad::adaptive_gk(integrand, 1.0, L.config.quad_y_max, L.config.quad_abs_tol,
                               1e-13);
    return r.value;
}

cd D0(const CompletedL& L, cd s) {
    if (L.series.a0 == cd(0.0)) return 0.0;
    const double twok = 2.0 * L.group.k;
    require_off(s, {0.0, twok}, L.config.pole_exclusion_radius, "D0");
    return -L.series.a0 * (1.0 / s - L.i2k() / (s - twok));
}

cd E0(const CompletedL& L, cd s) {
    if (L.rpf.zero_terms.empty()) return 0.0;
    require_off(s, pole_points(L, PoleSet::SE0), L.config.pole_exclusion_radius, "E0");
    const cd eps = L.i2k();
    const double twok = 2.0 * L.group.k;
    cd sum = 0.0;
    for (const auto& t : L.rpf.zero_terms) {
        double r = t.r;
        sum += t.coeff * neg_i_pow(t.r) * (1.0 / (r - s) + eps / (r - (twok - s)));
    }
    return sum;
}

cd EH(const CompletedL& L, cd s, const EvalBudget& budget) {
    if (L.rpf.pole_blocks.empty()) return 0.0;
    const double twok = 2.0 * L.group.k;
    const double excl = L.config.pole_exclusion_radius;
    // genuine poles at 0,-1,... and mirrored ones at 2k, 2k+1, ...
    std::vector<double> guard = pole_points(L, PoleSet::SH);
    int top = static_cast<int>(std::floor(L.config.delta_strip)) - 2 * L.group.k;
    for (int m = 0; m <= top; ++m) guard.push_back(twok + m);
    guard.push_back(0.0);
    guard.push_back(twok);
    require_off(s, guard, excl, "EH");

    const cd eps = L.i2k();
    cd sum = 0.0;
    for (const auto& b : L.rpf.pole_blocks) {
        cd w = 1.0 / cd(1.0, b.alpha); // 1/(i alpha + 1)
        for (std::size_t r = 1; r <= b.coeffs.size(); ++r) {
            if (b.coeffs[r - 1] == cd(0.0)) continue;
            cd pref = b.coeffs[r - 1] * neg_i_pow(static_cast<long>(r)) *
                      ipow(w, static_cast<long>(r));
            cd f1 = sf::hyp2f1(1.0, cd(static_cast<double>(r)), 1.0 + s, w, budget);
            cd f2 = sf::hyp2f1(1.0, cd(static_cast<double>(r)), 1.0 + (twok - s), w, budget);
            sum += pref * (f1 / s + eps * f2 / (twok - s));
        }
    }
    return -sum;
}

cd EB(const CompletedL& L, cd s) {
    if (L.rpf.pole_blocks.empty()) return 0.0;
    const double twok = 2.0 * L.group.k;
    const double excl = L.config.pole_exclusion_radius;
    std::vector<double> guard = pole_points(L, PoleSet::SB);
    int top = static_cast<int>(std::floor(L.config.delta_strip)) - 2 * L.group.k;
    for (int m = 0; m <= top; ++m) guard.push_back(twok + m);
    require_off(s, guard, excl, "EB");

    cd sum = 0.0;
    for (const auto& b : L.rpf.pole_blocks) {
        int rmax = eb_rmax(L, b);
        for (int r = 1; r <= rmax; ++r) {
            if (b.coeffs[r - 1] == cd(0.0)) continue;
            cd B = sf::beta_fn(twok - s, cd(r) - (twok - s));
            sum += b.coeffs[r - 1] * std::pow(-1.0 / b.alpha, r) * B *
                   ialpha_pow(b.alpha, twok - s);
        }
    }
    return L.i2k() * sum;
}

cd phi_continued(const CompletedL& L, cd s, const EvalBudget& budget) {
    require_off(s, all_singular_points(L), L.config.pole_exclusion_radius, "phi_continued");
    return D_integral(L, s, budget) + D0(L, s) + E0(L, s) + EH(L, s, budget) + EB(L, s);
}

cd R_of(const CompletedL& L, cd s) {
    const double twok = 2.0 * L.group.k;
    cd r1 = EB(L, twok - s) - L.i2k() * EB(L, s);

    // closed Beta-product form; for alpha < 0 the real power alpha^{2k-s}
    // takes arg = -pi so the two routes are branch-consistent
    cd r2 = 0.0;
    for (const auto& b : L.rpf.pole_blocks) {
        int rmax = eb_rmax(L, b);
        for (int r = 1; r <= rmax; ++r) {
            if (b.coeffs[r - 1] == cd(0.0)) continue;
            cd t1 = ialpha_pow(b.alpha, s) * sf::beta_fn(s, cd(r) - s);
            double la = std::log(std::abs(b.alpha));
            cd apow = b.alpha > 0.0 ? std::exp((twok - s) * la)
                                    : std::exp((twok - s) * cd(la, -pi));
            cd t2 = std::exp(-s * cd(0.0, 0.5 * pi)) * apow *
                    sf::beta_fn(twok - s, cd(r) - (twok - s));
            r2 += b.coeffs[r - 1] * std::pow(-1.0 / b.alpha, r) * (t1 - t2);
        }
    }
    r2 *= L.i2k();
    if (std::abs(r1 - r2) > 1e-8 * (1.0 + std::abs(r1)))
        throw error("R_of: the two closed forms disagree (branch or formula bug)");
    return r1;
}

double fe_residual(const CompletedL& L, cd s, const EvalBudget& budget) {
    const double twok = 2.0 * L.group.k;
    cd phi_s = phi_continued(L, s, budget);
    cd phi_m = phi_continued(L, twok - s, budget);
    cd r = L.rpf.pole_blocks.empty() ? cd(0.0) : R_of(L, s);
    return std::abs(phi_m - L.i2k() * phi_s - r) / (1.0 + std::abs(phi_s));
}

std::vector<double> pole_points(const CompletedL& L, PoleSet which) {
    std::set<double> pts;
    const int k = L.group.k;
    const double delta = L.config.delta_strip;
    switch (which) {
        case PoleSet::S0:
            if (L.series.a0 != cd(0.0)) {
                pts.insert(0.0);
                pts.insert(2.0 * k);
            }
            break;
        case PoleSet::SE0:
            for (const auto& t : L.rpf.zero_terms) {
                pts.insert(static_cast<double>(t.r));
                pts.insert(static_cast<double>(2 * k - t.r));
            }
            break;
        case PoleSet::SH:
            if (!L.rpf.pole_blocks.empty()) {
                int top = static_cast<int>(std::floor(delta)) - 2 * k;
                for (int m = 0; m <= top; ++m) pts.insert(static_cast<double>(-m));
            }
            break;
        case PoleSet::SB:
            for (const auto& b : L.rpf.pole_blocks) {
                int rmax = eb_rmax(L, b);
                for (int r = 1; r <= rmax; ++r) {
                    if (b.coeffs[r - 1] == cd(0.0)) continue;
                    int top = static_cast<int>(std::floor(delta)) - r;
                    for (int m = 0; m <= top; ++m)
                        pts.insert(static_cast<double>(2 * k - r - m));
                }
            }
            break;
    }
    return {pts.begin(), pts.end()};
}

std::vector<double> all_singular_points(const CompletedL& L) {
    std::set<double> pts;
    for (auto w : {PoleSet::S0, PoleSet::SE0, PoleSet::SH, PoleSet::SB})
        for (double p : pole_points(L, w)) pts.insert(p);
    if (!L.rpf.pole_blocks.empty()) {
        int top = static_cast<int>(std::floor(L.config.delta_strip)) - 2 * L.group.k;
        for (int m = 0; m <= top; ++m) pts.insert(2.0 * L.group.k + m);
        pts.insert(0.0);
        pts.insert(2.0 * L.group.k);
    }
    return {pts.begin(), pts.end()};
}

cd residue_sum(const CompletedL& L, PoleSet which) {
    const int k = L.group.k;
    const cd eps = L.i2k();
    cd sum = 0.0;
    switch (which) {
        case PoleSet::S0:
            if (L.series.a0 != cd(0.0)) sum = L.series.a0 * (eps - 1.0);
            break;
        case PoleSet::SE0:
            for (const auto& t : L.rpf.zero_terms)
                sum += t.coeff * (-neg_i_pow(t.r) + i_pow(2L * k - t.r));
            break;
        case PoleSet::SH: {
            int top = static_cast<int>(std::floor(L.config.delta_strip)) - 2 * k;
            for (const auto& b : L.rpf.pole_blocks)
                for (std::size_t r = 1; r <= b.coeffs.size(); ++r) {
                    cd inner = 0.0;
                    double pr = 1.0, fact = 1.0;
                    for (int m = 0; m <= top; ++m) {
                        if (m > 0) {
                            pr *= (static_cast<double>(r) + m - 1.0);
                            fact *= m;
                        }
                        inner += (pr / fact) * i_pow(m) *
                                 std::pow(b.alpha, -static_cast<double>(r) - m);
                    }
                    double sgn = (r % 2 == 0) ? 1.0 : -1.0;
                    sum += b.coeffs[r - 1] * sgn * inner;
                }
            sum = -sum;
            break;
        }
        case PoleSet::SB: {
            for (const auto& b : L.rpf.pole_blocks) {
                int rmax = eb_rmax(L, b);
                for (int r = 1; r <= rmax; ++r) {
                    int top = static_cast<int>(std::floor(L.config.delta_strip)) - r;
                    cd inner = 0.0;
                    double pr = 1.0, fact = 1.0;
                    for (int m = 0; m <= top; ++m) {
                        if (m > 0) {
                            pr *= (static_cast<double>(r) + m - 1.0);
                            fact *= m;
                        }
                        double sgn = ((r + m) % 2 == 0) ? 1.0 : -1.0;
                        inner += (pr / fact) * sgn * i_pow(m + r - 2L * k) *
                                 std::pow(b.alpha, m);
                    }
                    sum += b.coeffs[r - 1] * inner;
                }
            }
            break;
        }
    }
    return sum;
}

cd residue_at(const CompletedL& L, double s0) {
    const int k = L.group.k;
    const int twok = 2 * k;
    const cd eps = L.i2k();
    long n = std::lround(s0);
    if (std::abs(s0 - n) > 1e-9)
        throw domain_error("residue_at: all poles sit at integers");
    cd res = 0.0;

    if (L.series.a0 != cd(0.0)) {
        if (n == 0) res += -L.series.a0;
        if (n == twok) res += L.series.a0 * eps;
    }
    for (const auto& t : L.rpf.zero_terms) {
        if (n == t.r) res += -t.coeff * neg_i_pow(t.r);
        if (n == twok - t.r) res += t.coeff * neg_i_pow(t.r) * eps;
    }
    for (const auto& b : L.rpf.pole_blocks) {
        // EH: poles at -m and mirrored at 2k+m
        for (std::size_t r = 1; r <= b.coeffs.size(); ++r) {
            double sgn_r = (r % 2 == 0) ? 1.0 : -1.0;
            if (n <= 0) {
                long m = -n;
                res += -b.coeffs[r - 1] * sgn_r * i_pow(m) *
                       (sf::poch(static_cast<double>(r), static_cast<int>(m)) /
                        std::tgamma(static_cast<double>(m) + 1.0)) *
                       std::pow(b.alpha, -static_cast<double>(r) - m);
            }
            if (n >= twok) {
                long m = n - twok;
                res += eps * b.coeffs[r - 1] * sgn_r * i_pow(m) *
                       (sf::poch(static_cast<double>(r), static_cast<int>(m)) /
                        std::tgamma(static_cast<double>(m) + 1.0)) *
                       std::pow(b.alpha, -static_cast<double>(r) - m);
            }
        }
        // EB: poles at 2k-r-m and the upper family at 2k+m
        int rmax = eb_rmax(L, b);
        for (int r = 1; r <= rmax; ++r) {
            if (b.coeffs[r - 1] == cd(0.0)) continue;
            if (n <= twok - r) {
                long m = twok - r - n;
                double sgn = ((r + m) % 2 == 0) ? 1.0 : -1.0;
                res += b.coeffs[r - 1] * sgn * i_pow(m + r - twok) *
                       (sf::poch(static_cast<double>(r), static_cast<int>(m)) /
                        std::tgamma(static_cast<double>(m) + 1.0)) *
                       std::pow(b.alpha, static_cast<double>(m));
            }
            if (n >= twok) {
                long m = n - twok;
                double sgn_r = (r % 2 == 0) ? 1.0 : -1.0;
                res += -eps * b.coeffs[r - 1] * sgn_r * i_pow(m) *
                       (sf::poch(static_cast<double>(r), static_cast<int>(m)) /
                        std::tgamma(static_cast<double>(m) + 1.0)) *
                       std::pow(b.alpha, -static_cast<double>(r) - m);
            }
        }
    }
    return res;
}

cd contour_residue_oracle(const CompletedL& L, cd s0, double radius, int n,
                          const EvalBudget& budget) {
    for (double p : all_singular_points(L)) {
        double d = std::abs(s0 - cd(p, 0.0));
        if (std::abs(d - radius) < L.config.pole_exclusion_radius)
            throw pole_error("contour_residue_oracle: circle passes through a pole at " +
                             std::to_string(p));
    }
    return quad::circle_integral(
        [&](cd s) { return phi_continued(L, s, budget); }, s0, radius, n);
}

} // namespace heckelab
