#include "heckelab/selfcheck.hpp"

#include <cmath>
#include <functional>

#include "heckelab/identities.hpp"
#include "heckelab/lseries.hpp"
#include "heckelab/sampling.hpp"
#include "heckelab/numerics.hpp"
#include "heckelab/specialfn.hpp"

namespace heckelab {

using sampling::rng_t;
using sampling::uniform;
using sf::pi;

namespace {

void add(std::vector<CheckResult>& out, const std::string& name, double residual, double tol) {
    out.push_back({name, residual, tol, residual <= tol});
}

cd random_off_integer(rng_t& rng) {
    for (;;) {
        cd z(uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0));
        if (std::abs(z.real() - std::round(z.real())) > 0.1 || std::abs(z.imag()) > 0.1)
            return z;
    }
}

double check_gamma_laws(rng_t& rng, bool reflection) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        cd z = random_off_integer(rng);
        if (reflection) {
            cd v = sf::gamma(z) * sf::gamma(1.0 - z) * std::sin(pi * z) / pi;
            worst = std::max(worst, std::abs(v - 1.0));
        } else {
            cd lhs = sf::gamma(z + 1.0);
            cd rhs = z * sf::gamma(z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    }
    return worst;
}

double check_bessel_recurrence() {
    double worst = 0.0;
    for (int nu = 1; nu <= 8; ++nu)
        for (double t : {0.5, 2.0, 10.0, 40.0}) {
            double jm = sf::bessel_j(nu - 1.0, t);
            double jp = sf::bessel_j(nu + 1.0, t);
            double j = sf::bessel_j(nu, t);
            double lhs = jm + jp;
            double rhs = (2.0 * nu / t) * j;
            double scale = std::max({std::abs(jm), std::abs(jp), std::abs(rhs), 1e-280});
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
    return worst;
}

double check_kummer_invariance(rng_t& rng) {
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        cd a(uniform(rng, 0.5, 4.0), uniform(rng, -1.0, 1.0));
        cd b(uniform(rng, 4.5, 8.0), uniform(rng, -1.0, 1.0));
        double r = uniform(rng, 0.5, 20.0);
        double th = uniform(rng, 0.0, 2.0 * pi);
        cd z(r * std::cos(th), r * std::sin(th));
        cd direct = sf::hyp1f1(a, b, z);
        cd flipped = std::exp(z) * sf::hyp1f1(b - a, b, -z);
        worst = std::max(worst, std::abs(direct - flipped) / (1.0 + std::abs(direct)));
    }
    return worst;
}

double check_tricomi_integral() {
    double worst = 0.0;
    for (double a : {1.0, 2.0, 3.0})
        for (double b : {0.5, 1.5})
            for (cd z : {cd(1.0, 0.0), cd(4.0, 0.0), cd(2.0, 2.0)}) {
                cd direct = sf::tricomi_u(a, b, z);
                double Tmax = 80.0 / z.real();
                auto f = [&](double t) -> cd {
                    if (t <= 0.0) return a > 1.0 ? cd(0.0) : std::pow(1.0 + t, b - a - 1.0);
                    return std::exp(-z * t) * std::pow(t, a - 1.0) *
                           std::pow(1.0 + t, b - a - 1.0);
                };
                auto q = quad::adaptive_gk(f, 0.0, Tmax, 1e-13, 1e-12);
                cd viaint = q.value / sf::gamma(cd(a));
                worst = std::max(worst, std::abs(direct - viaint) / std::abs(viaint));
            }
    return worst;
}

double check_slash_composition(rng_t& rng) {
    HeckeGroup g = make_group(3, 2);
    const GroupElement S = translation(g.lambda);
    const GroupElement T = inversion();
    auto random_word = [&](rng_t& r) {
        GroupElement m{1.0, 0.0, 0.0, 1.0};
        int len = std::uniform_int_distribution<int>(1, 4)(r);
        for (int i = 0; i < len; ++i)
            m = mat_mul(m, std::uniform_int_distribution<int>(0, 1)(r) ? S : T);
        return m;
    };
    std::vector<std::function<cd(cd)>> fs = {
        [](cd) { return cd(1.0); }, [](cd z) { return z; }, [](cd z) { return z * z; }};
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        cd z(uniform(rng, -2.0, 2.0), uniform(rng, 0.4, 2.5));
        GroupElement m1 = random_word(rng), m2 = random_word(rng);
        const auto& f = fs[static_cast<std::size_t>(i % 3)];
        cd m2z = m2.apply(z);
        if (std::abs(m1.c * m2z + m1.d) < 0.05 || std::abs(m2.c * z + m2.d) < 0.05) continue;
        auto inner = [&](cd w) { return slash(f, m1, g, w); };
        cd lhs = slash(inner, m2, g, z);
        cd rhs = slash(f, mat_mul(m1, m2), g, z);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    return worst;
}

double check_fr_antisymmetry(rng_t& rng) {
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) {
        HeckeGroup g = make_group(3, k);
        for (int r = k; r <= k + 4; ++r) {
            auto q = make_rpf({{r, cd(1.0)}}, {}, g);
            auto samples = sampling::rpf_samples(rng, q, 50);
            worst = std::max(worst, check_T_relation(q, g, samples));
        }
    }
    return worst;
}

double check_lemma_family(rng_t& rng) {
    double worst = 0.0;
    for (int draw = 0; draw < 50; ++draw) {
        int p = 3 + static_cast<int>(draw % 3);
        int k = 1 + static_cast<int>(draw % 3);
        HeckeGroup g = make_group(p, k);
        auto q = sampling::random_rpf(rng, g);
        if (q.empty()) continue;
        auto samples = sampling::rpf_samples(rng, q, 100);
        worst = std::max(worst, check_T_relation(q, g, samples));
    }
    return worst;
}

double check_trivial_cocycle() {
    HeckeGroup g = make_group(3, 2);
    auto q = trivial_rpf(cd(0.7, -0.3), g);
    return check_cocycle_relation(q, g);
}

double check_eval_f_periodicity(rng_t& rng) {
    HeckeGroup g = make_group(3, 2);
    auto e4 = coeffs_eisenstein(4, 4000);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        cd z(uniform(rng, -1.0, 1.0), uniform(rng, 0.5, 2.0));
        cd a = eval_F(e4, g, z);
        cd b = eval_F(e4, g, z + g.lambda);
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
    }
    return worst;
}

// Halving the truncation point changes F by less than the certified bound.
double check_tail_soundness(rng_t& rng) {
    HeckeGroup g = make_group(3, 2);
    auto e4 = coeffs_eisenstein(4, 4000);
    const double bK = e4.beta - 0.25;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        cd z(uniform(rng, -1.0, 1.0), uniform(rng, 0.5, 2.0));
        double y = z.imag();
        double rho = std::exp(-2.0 * pi * y / g.lambda);
        auto partial = [&](std::size_t M) {
            num::kahan_complex s;
            s.add(e4.a0);
            for (std::size_t m = 1; m <= M; ++m) {
                double damp = std::exp(-2.0 * pi * m * y / g.lambda);
                double ph = 2.0 * pi * m * z.real() / g.lambda;
                s.add(e4.coeffs[m - 1] * cd(damp * std::cos(ph), damp * std::sin(ph)));
            }
            return s.value();
        };
        std::size_t M = 120, Mh = 60;
        cd full = partial(M), half = partial(Mh);
        double rho_hat = rho * std::pow(1.0 + 1.0 / Mh, bK);
        double bound = e4.growth_K * std::pow(Mh + 1.0, bK) *
                       std::exp(-2.0 * pi * Mh * y / g.lambda) * rho / (1.0 - rho_hat);
        if (std::abs(full - half) > bound) worst = std::max(worst, 1.0);
    }
    return worst;
}

double check_modular_builtin() {
    EvalBudget bud;
    double worst = 0.0;
    {
        HeckeGroup g = make_group(3, 2);
        auto e4 = coeffs_eisenstein(4, 4000);
        std::vector<cd> arc;
        for (int i = 1; i <= 9; ++i) {
            double th = pi * i / 10.0;
            arc.emplace_back(std::cos(th), std::sin(th));
        }
        worst = std::max(worst, check_modular_relation(e4, make_rpf({}, {}, g), g, arc, bud));
    }
    {
        HeckeGroup g = make_group(3, 6);
        auto dl = coeffs_delta(4000);
        std::vector<cd> arc;
        for (int i = 2; i <= 8; ++i) {
            double th = pi * i / 10.0;
            arc.emplace_back(std::cos(th), std::sin(th));
        }
        worst = std::max(worst, check_modular_relation(dl, make_rpf({}, {}, g), g, arc, bud));
    }
    return worst;
}

double check_trivial_modular() {
    HeckeGroup g = make_group(3, 2);
    cd alpha0(0.8, 0.1);
    auto q = trivial_rpf(alpha0, g);
    auto s = coeffs_list(-alpha0, {cd(0.0)}, 1.0, "const");
    std::vector<cd> pts{{0.3, 1.1}, {-0.4, 0.9}, {0.1, 1.7}};
    return check_modular_relation(s, q, g, pts);
}

double check_piece_symmetries(rng_t& rng, double twok_ignored = 0.0) {
    (void)twok_ignored;
    double worst = 0.0;
    for (int cfg = 0; cfg < 4; ++cfg) {
        int k = 1 + cfg % 3;
        HeckeGroup g = make_group(3 + cfg % 2, k);
        auto q = sampling::random_rpf(rng, g, 2, 3, true);
        auto s = sampling::random_series(rng);
        auto L = make_completed(g, s, q);
        const double twok = 2.0 * k;
        const cd eps = L.i2k();
        for (int i = 0; i < 5; ++i) {
            cd sp = sampling::strip_sample(rng, twok, L.config.delta_strip,
                                           all_singular_points(L), 0.05);
            auto rel = [&](cd a, cd b) { return std::abs(a - b) / (1.0 + std::abs(b)); };
            worst = std::max(worst, rel(D_integral(L, twok - sp), eps * D_integral(L, sp)));
            worst = std::max(worst, rel(D0(L, twok - sp), eps * D0(L, sp)));
            worst = std::max(worst, rel(E0(L, twok - sp), eps * E0(L, sp)));
            worst = std::max(worst, rel(EH(L, twok - sp), eps * EH(L, sp)));
        }
    }
    return worst;
}

// E0 + EH + EB against direct quadrature of -int_0^1 q(iy) y^{s-1} dy,
// the Mellin block the three pieces were derived from.
double check_mellin_pieces(rng_t& rng) {
    double worst = 0.0;
    for (int cfg = 0; cfg < 3; ++cfg) {
        int k = 1 + cfg;
        HeckeGroup g = make_group(3, k);
        auto q = sampling::random_rpf(rng, g, 2, 3, true);
        if (q.empty()) continue;
        auto s = sampling::random_series(rng);
        auto L = make_completed(g, s, q);
        double P = std::max<double>(q.max_zero_r(), 2.0 * k);
        for (int i = 0; i < 2; ++i) {
            cd sp(P + 4.0 + uniform(rng, 0.0, 0.4), uniform(rng, -0.7, 0.7));
            cd pieces = E0(L, sp) + EH(L, sp) + EB(L, sp);
            auto f = [&](double y) -> cd {
                if (y < 1e-4) return 0.0;
                return -eval_rpf(q, g, cd(0.0, y)) * std::exp((sp - 1.0) * std::log(y));
            };
            auto qr = quad::adaptive_gk(f, 0.0, 1.0, 1e-12, 1e-11);
            worst = std::max(worst, std::abs(pieces - qr.value) / (1.0 + std::abs(qr.value)));
        }
    }
    return worst;
}

double check_fe_random(rng_t& rng) {
    double worst = 0.0;
    for (int cfg = 0; cfg < 3; ++cfg) {
        int k = 1 + cfg;
        HeckeGroup g = make_group(3 + cfg % 2, k);
        auto q = sampling::random_rpf(rng, g, 2, 3, true);
        auto s = sampling::random_series(rng);
        auto L = make_completed(g, s, q);
        for (int i = 0; i < 3; ++i) {
            cd sp = sampling::strip_sample(rng, 2.0 * k, L.config.delta_strip,
                                           all_singular_points(L), 0.05);
            worst = std::max(worst, fe_residual(L, sp));
        }
    }
    return worst;
}

double check_identity_linearity(rng_t& rng) {
    HeckeGroup g = make_group(3, 1);
    auto q = sampling::random_rpf(rng, g, 1, 1, true);
    auto s = sampling::random_series(rng, 8, 1.5);
    auto s2 = s;
    for (auto& c : s2.coeffs) c *= 2.0;
    s2.a0 *= 2.0;
    s2.finalize_growth();
    auto L1 = make_completed(g, s, q);
    auto L2 = make_completed(g, s2, q);
    double worst = 0.0;
    double x = 5.5;
    int rho = 3;
    cd a = riesz_lhs(L1, x, rho), b = riesz_lhs(L2, x, rho);
    worst = std::max(worst, std::abs(b - 2.0 * a));
    auto ta = first_rhs_terms(L1, x, rho), tb = first_rhs_terms(L2, x, rho);
    worst = std::max(worst, std::abs(tb.L1 - 2.0 * ta.L1));
    worst = std::max(worst, std::abs(tb.L2 - 2.0 * ta.L2));
    worst = std::max(worst, std::abs(tb.L3 - ta.L3)); // RPF terms unchanged
    worst = std::max(worst, std::abs(tb.L4 - ta.L4));
    worst = std::max(worst, std::abs(tb.L5 - ta.L5));
    return worst;
}

} // namespace

std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
    std::vector<CheckResult> out;
    rng_t rng(seed);

    add(out, "specialfn.gamma_reflection", check_gamma_laws(rng, true), 1e-12);
    add(out, "specialfn.gamma_recurrence", check_gamma_laws(rng, false), 1e-12);
    add(out, "specialfn.bessel_recurrence", check_bessel_recurrence(), 1e-11);
    add(out, "specialfn.kummer_invariance", check_kummer_invariance(rng), 1e-11);
    add(out, "specialfn.tricomi_integral", check_tricomi_integral(), 1e-8);
    add(out, "hecke_rpf.slash_composition", check_slash_composition(rng), 1e-10);
    add(out, "hecke_rpf.f_r_antisymmetry", check_fr_antisymmetry(rng), 1e-10);
    add(out, "hecke_rpf.lemma_family_T_relation", check_lemma_family(rng), 1e-10);
    add(out, "hecke_rpf.trivial_cocycle", check_trivial_cocycle(), 1e-10);
    add(out, "automorphic.periodicity", check_eval_f_periodicity(rng), 1e-12);
    add(out, "automorphic.tail_soundness", check_tail_soundness(rng), 0.5);
    add(out, "automorphic.modular_relation_builtin", check_modular_builtin(), 1e-8);
    add(out, "automorphic.trivial_pair_modular", check_trivial_modular(), 1e-12);
    add(out, "lseries.piece_symmetries", check_piece_symmetries(rng), 1e-9);
    add(out, "lseries.mellin_piece_quadrature", check_mellin_pieces(rng), 1e-8);
    add(out, "lseries.fe_residual_random", check_fe_random(rng), 1e-9);
    add(out, "identities.coefficient_linearity", check_identity_linearity(rng), 1e-12);
    return out;
}

} // namespace heckelab
