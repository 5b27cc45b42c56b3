#include "heckelab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heckelab/numerics.hpp"
#include "heckelab/specialfn.hpp"

namespace heckelab {

using num::dd;
using num::ddcomplex;
using sf::pi;

namespace {

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

// 1/Gamma(v) for real v, zero at nonpositive integers.
double inv_gamma_real(double v) {
    double r = std::round(v);
    if (r <= 0.0 && std::abs(v - r) < 1e-9) return 0.0;
    return 1.0 / std::tgamma(v);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

struct Lambda1Sum {
    cd value{0.0};
    long used = 0;
    bool certified = false;
};

// i^{-2k} (2pi/lambda)^{-rho} sum_m a_m (x/m)^{(rho+2k)/2} J_{rho+2k}(4pi sqrt(mx)/lambda).
// Certified stop via the |J| envelope and the beta growth bound; otherwise the
// hard cap applies and the partial sums are averaged over the last slow-phase
// period to suppress truncation ringing.
Lambda1Sum lambda1_series(const CompletedL& L, double x, int rho, const EvalBudget& budget,
                          long cap) {
    const double lam = L.group.lambda;
    const double nu = rho + 2.0 * L.group.k;
    const double pref = std::pow(2.0 * pi / lam, -static_cast<double>(rho));
    const double bK = L.series.beta - 0.25;
    const double expo = 0.5 * nu + 0.25 - bK; // envelope decay exponent

    const long PBUF = 4096;
    std::vector<cd> ring(static_cast<std::size_t>(PBUF));
    num::kahan_complex acc;
    Lambda1Sum out;

    long M = std::min<long>(cap, static_cast<long>(L.series.mmax()));
    EvalBudget bessel_budget = budget;
    bessel_budget.rel_tol = std::min(budget.rel_tol, 1e-10);

    for (long m = 1; m <= M; ++m) {
        const cd am = L.series.coeffs[static_cast<std::size_t>(m - 1)];
        double t = 4.0 * pi * std::sqrt(m * x) / lam;
        double w = std::pow(x / m, 0.5 * nu);
        if (am != cd(0.0)) {
            double J = sf::bessel_j(nu, t, bessel_budget);
            acc.add(am * (pref * w * J));
        }
        ring[static_cast<std::size_t>((m - 1) % PBUF)] = acc.value();
        out.used = m;
        if (m >= 32 && expo > 1.0) {
            double env = pref * L.series.growth_K * std::pow(static_cast<double>(m), bK) * w *
                         std::sqrt(2.0 / (pi * t));
            double tail_bound = env * m / (expo - 1.0);
            if (tail_bound <= 0.1 * budget.rel_tol * (1.0 + std::abs(acc.value()))) {
                out.certified = true;
                break;
            }
        }
    }
    if (out.used == static_cast<long>(L.series.mmax()) && L.series.finite)
        out.certified = true; // complete series: nothing was dropped
    if (out.certified || out.used < 64) {
        out.value = L.i2k() * acc.value();
        return out;
    }
    long P = std::lround(lam * std::sqrt(static_cast<double>(out.used) / x));
    P = std::clamp(P, 1L, std::min(PBUF, out.used / 4));
    cd avg = 0.0;
    for (long j = 0; j < P; ++j)
        avg += ring[static_cast<std::size_t>((out.used - 1 - j) % PBUF)];
    out.value = L.i2k() * (avg / static_cast<double>(P));
    return out;
}

} // namespace

void IdentityRequest::validate(const CompletedL& L) const {
    truncation.validate();
    if (rho < 0) throw config_error("IdentityRequest: rho must be a nonnegative integer");
    const double beta = L.series.beta;
    const double twok = 2.0 * L.group.k;
    if (which == IdentityKind::First) {
        double bound = 2.0 * beta - twok - 0.5;
        if (rho < bound)
            throw config_error("rho >= 2*beta - 2k - 1/2 violated: " + fmt(rho) + " < " +
                               fmt(bound));
    } else {
        double bound = beta + 0.5 - twok;
        if (rho < bound)
            throw config_error("rho + 2k >= beta + 1/2 violated: " + fmt(rho) + " < " +
                               fmt(bound));
        if (!L.rpf.pole_blocks.empty()) {
            double ybound = 0.0;
            for (const auto& b : L.rpf.pole_blocks) {
                double a = std::abs(b.alpha);
                ybound = std::max({ybound, 2.0 * pi * a / L.group.lambda,
                                   2.0 * pi / (a * L.group.lambda)});
            }
            for (double y : grid)
                if (!(y > ybound))
                    throw config_error(
                        "y > max_j{2 pi alpha_j/lambda, 2 pi/(alpha_j lambda)} violated: " +
                        fmt(y) + " <= " + fmt(ybound));
        }
    }
    for (double p : grid)
        if (!(p > 0.0)) throw config_error("IdentityRequest: grid points must be positive");
}

cd riesz_lhs(const CompletedL& L, double x, int rho) {
    if (!(x > 0.0)) throw domain_error("riesz_lhs: x must be positive");
    if (!L.series.finite && x > static_cast<double>(L.series.mmax()))
        throw domain_error("riesz_lhs: x exceeds the stored coefficient range");
    if (rho < 0) throw domain_error("riesz_lhs: rho must be nonnegative");

    long mtop = static_cast<long>(std::floor(x + 1e-12));
    mtop = std::min<long>(mtop, static_cast<long>(L.series.mmax()));
    ddcomplex acc;
    for (long m = 0; m <= mtop; ++m) {
        cd am = (m == 0) ? L.series.a0 : L.series.coeffs[static_cast<std::size_t>(m - 1)];
        if (am == cd(0.0)) continue;
        dd dx = dd(x) - dd(static_cast<double>(m));
        double w = 1.0;
        if (rho == 0 && std::abs(x - static_cast<double>(m)) <= 1e-12) w = 0.5;
        dd p = num::dd_npow(dx, rho) * dd(w);
        acc += ddcomplex(am) * p;
    }
    double g = std::tgamma(rho + 1.0);
    return acc.to_complex() / g;
}

FirstTerms first_rhs_terms(const CompletedL& L, double x, int rho, const EvalBudget& budget,
                           long bessel_cap, bool flip_lambda4_i) {
    budget.validate();
    if (!(x > 0.0)) throw domain_error("first_rhs_terms: x must be positive");
    IdentityRequest probe;
    probe.which = IdentityKind::First;
    probe.rho = rho;
    probe.grid = {x};
    probe.truncation = budget;
    probe.validate(L);

    const double lam = L.group.lambda;
    const int k = L.group.k;
    const double twok = 2.0 * k;
    const cd eps = L.i2k();
    FirstTerms out;

    auto l1 = lambda1_series(L, x, rho, budget, bessel_cap);
    out.L1 = l1.value;
    out.bessel_terms_used = l1.used;
    out.bessel_certified = l1.certified;
    if (!l1.certified && l1.used >= 64)
        out.warnings.push_back("Lambda1: tail bound not certified at " +
                               std::to_string(l1.used) + " terms; period-averaged value");

    out.L2 = eps * std::pow(2.0 * pi / lam, twok) * L.series.a0 *
             std::pow(x, twok + rho) / std::tgamma(twok + rho + 1.0);

    cd l3 = 0.0, l4 = 0.0;
    for (const auto& b : L.rpf.pole_blocks) {
        for (std::size_t r = 1; r <= b.coeffs.size(); ++r) {
            const cd C = b.coeffs[r - 1];
            if (C == cd(0.0)) continue;
            long rl = static_cast<long>(r);
            // Lambda3: C (-1/a)^r (i a)^r (2pi/lam)^r x^{r+rho}/Gamma(r+rho+1)
            //          * 1F1(r, r+rho+1; -2 pi i a x / lam)
            cd z3(0.0, -2.0 * pi * b.alpha * x / lam);
            cd f3 = sf::hyp1f1(cd(static_cast<double>(r)), cd(r + rho + 1.0), z3, budget);
            l3 += C * neg_i_pow(rl) * std::pow(2.0 * pi / lam, static_cast<double>(r)) *
                  std::pow(x, r + static_cast<double>(rho)) /
                  std::tgamma(r + rho + 1.0) * f3;
            // Lambda4: C (-1/a)^r i^{-2k} (2pi/lam)^{2k} x^{2k+rho}/Gamma(2k+rho+1)
            //          * 1F1(r, 2k+rho+1; -2 pi x/(i a lam)) ;  -1/i = +i
            double im4 = 2.0 * pi * x / (b.alpha * lam);
            cd z4(0.0, flip_lambda4_i ? -im4 : im4);
            cd f4 = sf::hyp1f1(cd(static_cast<double>(r)), cd(twok + rho + 1.0), z4, budget);
            l4 += C * std::pow(-1.0 / b.alpha, static_cast<double>(r)) * f4;
        }
    }
    out.L3 = -l3;
    out.L4 = l4 * eps * std::pow(2.0 * pi / lam, twok) * std::pow(x, twok + rho) /
             std::tgamma(twok + rho + 1.0);

    cd l5 = 0.0;
    for (const auto& t : L.rpf.zero_terms) {
        long m = t.r;
        cd first = neg_i_pow(m) * std::pow(2.0 * pi / lam, static_cast<double>(m)) *
                   std::pow(x, m + static_cast<double>(rho)) *
                   inv_gamma_real(m + rho + 1.0);
        cd second = i_pow(2L * k - m) * std::pow(2.0 * pi / lam, twok - m) *
                    std::pow(x, twok - m + rho) * inv_gamma_real(twok - m + rho + 1.0);
        l5 += t.coeff * (first - second);
    }
    out.L5 = -l5;
    return out;
}

PerronResult perron_oracle(const CompletedL& L, double x, int rho, double sigma, double T,
                           double step) {
    if (rho < 0) throw domain_error("perron_oracle: rho must be nonnegative");
    if (!(sigma > L.series.beta + 1.0))
        throw domain_error("perron_oracle: sigma must exceed the abscissa bound beta + 1");
    if (!(T > 0.0) || !(step > 0.0)) throw domain_error("perron_oracle: T and step must be positive");

    long n = static_cast<long>(std::ceil(2.0 * T / step));
    if (n % 2 == 1) ++n;
    const double h = 2.0 * T / n;

    // plain |a_m| m^{-sigma} mass, for the coefficient truncation and estimate
    double A = 0.0;
    for (std::size_t m = 1; m <= L.series.mmax(); ++m)
        A += std::abs(L.series.coeffs[m - 1]) * std::pow(static_cast<double>(m), -sigma);

    const double bK = L.series.beta - 0.25;
    long Mphi = static_cast<long>(L.series.mmax());
    for (long M = 64; M < static_cast<long>(L.series.mmax()); M *= 2) {
        double tail = L.series.growth_K * std::pow(static_cast<double>(M), bK - sigma + 1.0) /
                      (sigma - bK - 1.0);
        if (tail <= 1e-7 * std::max(A, 1e-30)) {
            Mphi = M;
            break;
        }
    }

    // phi(sigma + i t_j) accumulated with a per-m phase recurrence
    std::vector<cd> phi(static_cast<std::size_t>(n + 1), cd(0.0));
    for (long m = 1; m <= Mphi; ++m) {
        cd am = L.series.coeffs[static_cast<std::size_t>(m - 1)];
        if (am == cd(0.0)) continue;
        double lm = std::log(static_cast<double>(m));
        cd w = am * std::pow(static_cast<double>(m), -sigma);
        cd rot = std::exp(cd(0.0, -h * lm));
        cd cur = std::exp(cd(0.0, T * lm));
        for (long j = 0; j <= n; ++j) {
            phi[static_cast<std::size_t>(j)] += w * cur;
            cur *= rot;
            if ((j & 1023) == 1023) cur = std::exp(cd(0.0, (T - h * (j + 1)) * lm));
        }
    }

    num::kahan_complex S;
    const double lx = std::log(x);
    for (long j = 0; j <= n; ++j) {
        cd s(sigma, -T + h * j);
        cd f = sf::gamma(s) * phi[static_cast<std::size_t>(j)] *
               std::exp((s + static_cast<double>(rho)) * lx) * sf::rgamma(s + static_cast<double>(rho) + 1.0);
        double wt = (j == 0 || j == n) ? 0.5 : 1.0;
        S.add(wt * f);
    }
    PerronResult out;
    // the contour gives the m >= 1 part; the primed sum starts at m = 0
    out.value = S.value() * (h / (2.0 * pi)) +
                L.series.a0 * std::pow(x, rho) / std::tgamma(rho + 1.0);
    out.trunc_estimate = std::pow(x, sigma + rho) * A * std::pow(T, -static_cast<double>(rho)) /
                         (pi * std::max(rho, 1));
    return out;
}

cd second_lhs(const CompletedL& L, double y, int rho) {
    if (!(y > 0.0)) throw domain_error("second_lhs: y must be positive");
    if (rho < 0) throw domain_error("second_lhs: rho must be nonnegative");

    const double bK = L.series.beta - 0.25;
    const dd ydd(y);
    std::vector<dd> ypow(static_cast<std::size_t>(2 * rho + 4), dd(1.0));
    dd yinv = dd(1.0) / ydd;
    for (std::size_t j = 1; j < ypow.size(); ++j) ypow[j] = ypow[j - 1] * yinv;

    ddcomplex total;
    bool certified = false;
    for (std::size_t m = 1; m <= L.series.mmax(); ++m) {
        dd sq = num::dd_sqrt(dd(static_cast<double>(m)));
        // coefficients of e^{-y sqrt(m)} sum_j b_j y^{-j} under -(1/y) d/dy
        std::vector<dd> b(static_cast<std::size_t>(2 * rho + 4), dd(0.0));
        b[1] = dd(1.0);
        for (int it = 0; it < rho; ++it) {
            std::vector<dd> nb(b.size(), dd(0.0));
            for (std::size_t j = 1; j + 2 < b.size(); ++j) {
                if (b[j].hi == 0.0 && b[j].lo == 0.0) continue;
                nb[j + 1] += sq * b[j];
                nb[j + 2] += dd(static_cast<double>(j)) * b[j];
            }
            b = nb;
        }
        dd e = num::dd_exp(-(ydd * sq));
        dd poly(0.0);
        double poly_abs = 0.0;
        for (std::size_t j = 1; j < b.size(); ++j) {
            poly += b[j] * ypow[j];
            poly_abs += std::abs((b[j] * ypow[j]).to_double());
        }
        const cd am = L.series.coeffs[m - 1];
        if (am != cd(0.0)) total += ddcomplex(am) * (e * poly);

        double env = L.series.growth_K * std::pow(static_cast<double>(m), bK) *
                     e.to_double() * poly_abs;
        if (m >= 16 && env < 1e-18 * (1.0 + num::dd_cabs(total))) {
            certified = true;
            break;
        }
    }
    if (L.series.finite) certified = true;
    if (!certified)
        throw tail_error("second_lhs: stored coefficients cannot certify the tail at y = " +
                         std::to_string(y));
    return total.to_complex();
}

SecondTerms second_rhs_terms(const CompletedL& L, double y, int rho, const EvalBudget& budget) {
    budget.validate();
    IdentityRequest probe;
    probe.which = IdentityKind::Second;
    probe.rho = rho;
    probe.grid = {y};
    probe.truncation = budget;
    probe.validate(L);

    const double lam = L.group.lambda;
    const int k = L.group.k;
    const double twok = 2.0 * k;
    const double eps_d = L.group.i2k();
    SecondTerms out;

    const double K0 = std::pow(2.0, rho) / (std::sqrt(pi) * std::pow(y, 2.0 * rho + 1.0));
    out.a0term = -K0 * L.series.a0 * std::tgamma(rho + 0.5);

    // resolvent series sum_{m>=1} a_m (y^2 + (4pi/lam)^2 m)^{-(2k+rho+1/2)}
    const double nu_res = twok + rho + 0.5;
    const double c = std::pow(4.0 * pi / lam, 2);
    num::kahan_complex rs;
    long used = 0;
    for (std::size_t m = 1; m <= L.series.mmax(); ++m) {
        const cd am = L.series.coeffs[m - 1];
        ++used;
        if (am == cd(0.0)) continue;
        rs.add(am * std::exp(-nu_res * std::log(y * y + c * m)));
    }
    const double Cres =
        eps_d * std::pow(2.0, 4.0 * k + rho) * std::tgamma(nu_res) *
        std::pow(2.0 * pi / lam, twok) / std::sqrt(pi);
    out.resolvent = Cres * rs.value();
    out.terms_used = used;
    const double bK = L.series.beta - 0.25;
    const double M = static_cast<double>(L.series.mmax());
    out.resolvent_tail_bound =
        L.series.finite ? 0.0
                        : std::abs(Cres) * L.series.growth_K * std::pow(c, -nu_res) *
                              std::pow(M, bK - nu_res + 1.0) / (nu_res - bK - 1.0);

    out.extra = L.series.a0 * eps_d * std::pow(2.0 * pi / lam, twok) *
                std::pow(2.0, 4.0 * k + rho) * std::tgamma(nu_res) /
                (std::sqrt(pi) * std::pow(y, 4.0 * k + 2.0 * rho + 1.0));

    cd p1 = 0.0, p2 = 0.0;
    for (const auto& b : L.rpf.pole_blocks) {
        for (std::size_t r = 1; r <= b.coeffs.size(); ++r) {
            const cd C = b.coeffs[r - 1];
            if (C == cd(0.0)) continue;
            cd fac = C * std::pow(-1.0 / b.alpha, static_cast<double>(r));
            // Psi(r, 1/2 - rho; lam y^2/(8 pi i alpha)), argument on the imaginary axis
            cd z1(0.0, -lam * y * y / (8.0 * pi * b.alpha));
            p1 += fac * std::tgamma(r + rho + 0.5) *
                  sf::tricomi_u(cd(static_cast<double>(r)), cd(0.5 - rho), z1, budget);
            cd z2(0.0, b.alpha * lam * y * y / (8.0 * pi));
            p2 += fac * std::pow(std::abs(b.alpha), twok) * std::tgamma(nu_res) *
                  ipow(z2, static_cast<long>(r) - 2L * k) *
                  sf::tricomi_u(cd(static_cast<double>(r)),
                                cd(static_cast<double>(r) - twok - rho + 0.5), z2, budget);
        }
    }
    out.psi1 = -K0 * p1;
    out.psi2 = K0 * p2;

    cd gp = 0.0;
    const double w8 = 8.0 * pi / (lam * y * y);
    for (const auto& t : L.rpf.zero_terms) {
        long m = t.r;
        cd A = ipow(cd(0.0, w8), 2L * k - m) * std::tgamma(twok - m + rho + 0.5);
        cd B = ipow(cd(0.0, -w8), m) * std::tgamma(m + rho + 0.5);
        gp += t.coeff * (A - B);
    }
    out.gammapair = K0 * gp;
    return out;
}

std::vector<IdentityReport> identity_report(const CompletedL& L, const IdentityRequest& req) {
    req.validate(L);
    std::vector<IdentityReport> rows;
    rows.reserve(req.grid.size());
    for (double point : req.grid) {
        IdentityReport row;
        row.point = point;
        try {
            if (req.which == IdentityKind::First) {
                row.lhs = riesz_lhs(L, point, req.rho);
                auto t = first_rhs_terms(L, point, req.rho, req.truncation, req.bessel_cap,
                                         req.flip_lambda4_i);
                row.rhs_terms = {{"L1", t.L1}, {"L2", t.L2}, {"L3", t.L3},
                                 {"L4", t.L4}, {"L5", t.L5}};
                row.terms_used = t.bessel_terms_used;
                row.warnings = t.warnings;
            } else {
                row.lhs = second_lhs(L, point, req.rho);
                auto t = second_rhs_terms(L, point, req.rho, req.truncation);
                row.rhs_terms = {{"a0term", t.a0term},   {"resolvent", t.resolvent},
                                 {"psi1", t.psi1},       {"psi2", t.psi2},
                                 {"gammapair", t.gammapair}, {"extra", t.extra}};
                row.terms_used = t.terms_used;
                row.warnings = t.warnings;
                if (t.resolvent_tail_bound >
                    req.truncation.rel_tol * (1.0 + std::abs(row.lhs)))
                    row.warnings.push_back("resolvent tail bound " +
                                           std::to_string(t.resolvent_tail_bound) +
                                           " exceeds the requested tolerance");
            }
            cd total = 0.0;
            for (const auto& [name, v] : row.rhs_terms) {
                (void)name;
                total += v;
            }
            row.rhs_total = total;
            row.abs_err = std::abs(row.lhs - row.rhs_total);
            row.rel_err = row.abs_err / (1.0 + std::abs(row.lhs));
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

KernelCheck kernel_L2(const CompletedL& L, const KernelParams& p, const EvalBudget& budget) {
    const double lam = L.group.lambda;
    const double twok = 2.0 * L.group.k;
    const double y = p.y;
    const cd eps = L.i2k();

    num::kahan_complex closed;
    const double q = std::exp(-4.0 * pi * pi / (lam * lam * y));
    double damp = 1.0;
    for (std::size_t m = 1; m <= L.series.mmax(); ++m) {
        damp *= q;
        if (damp < 1e-40) break;
        closed.add(L.series.coeffs[m - 1] * damp);
    }
    cd closed_v = eps * std::pow(2.0 * pi / (lam * y), twok) * closed.value();

    const double Xmax = (60.0 + 4.0 * (twok + p.rho)) / y;
    auto f = [&](double x) -> cd {
        if (x <= 0.0) return 0.0;
        auto l1 = lambda1_series(L, x, p.rho, budget, static_cast<long>(L.series.mmax()));
        return l1.value * std::pow(y, p.rho + 1.0) * std::exp(-x * y);
    };
    auto qr = quad::adaptive_gk(f, 0.0, Xmax, 1e-10 * (1.0 + std::abs(closed_v)), 1e-9);
    double rel = std::abs(closed_v - qr.value) / (1.0 + std::abs(closed_v));
    return {"L2", closed_v, qr.value, rel};
}

KernelCheck kernel_L5(const CompletedL& L, const KernelParams& p, const EvalBudget& budget) {
    const double lam = L.group.lambda;
    const double y = p.y;
    if (!(lam * y > 2.0 * pi * std::abs(p.alpha)))
        throw domain_error("kernel L5 requires lambda y > 2 pi alpha");
    // sum_m (r)_m/m! (-1)^m (2 pi i alpha/(lam y))^m y^{-r}
    cd u(0.0, 2.0 * pi * p.alpha / (lam * y));
    cd term = 1.0, sum = 0.0;
    for (int m = 0; m < budget.max_terms; ++m) {
        sum += term;
        double tail = std::abs(term) * std::abs(u) / (1.0 - std::abs(u));
        if (m > 4 && tail < 1e-14 * std::abs(sum)) break;
        term *= -(static_cast<double>(p.r) + m) / (m + 1.0) * u;
    }
    cd closed_v = sum * std::pow(y, -static_cast<double>(p.r));

    const double Xmax = (60.0 + 2.0 * (p.rho + p.r)) / y;
    auto f = [&](double x) -> cd {
        if (x <= 0.0) return 0.0;
        cd z(0.0, -2.0 * pi * p.alpha * x / lam);
        cd m1 = sf::hyp1f1(cd(static_cast<double>(p.r)), cd(p.rho + p.r + 1.0), z, budget);
        return m1 * std::pow(x, p.rho + static_cast<double>(p.r)) *
               std::pow(y, p.rho + 1.0) * std::exp(-x * y) /
               std::tgamma(p.rho + p.r + 1.0);
    };
    auto qr = quad::adaptive_gk(f, 0.0, Xmax, 1e-11 * (1.0 + std::abs(closed_v)), 1e-9);
    double rel = std::abs(closed_v - qr.value) / (1.0 + std::abs(closed_v));
    return {"L5", closed_v, qr.value, rel};
}

KernelCheck kernel_L6(const CompletedL& L, const KernelParams& p, const EvalBudget& budget) {
    const double lam = L.group.lambda;
    const double twok = 2.0 * L.group.k;
    const double y = p.y;
    if (!(y * lam * std::abs(p.alpha) > 2.0 * pi))
        throw domain_error("kernel L6 requires y > 2 pi/(lambda alpha)");
    cd u(0.0, -2.0 * pi / (lam * y * p.alpha)); // 2 pi/(i lam y alpha)
    cd term = 1.0, sum = 0.0;
    for (int m = 0; m < budget.max_terms; ++m) {
        sum += term;
        double tail = std::abs(term) * std::abs(u) / (1.0 - std::abs(u));
        if (m > 4 && tail < 1e-14 * std::abs(sum)) break;
        term *= -(static_cast<double>(p.r) + m) / (m + 1.0) * u;
    }
    cd closed_v = sum * std::pow(y, -twok);

    const double Xmax = (60.0 + 2.0 * (p.rho + twok)) / y;
    auto f = [&](double x) -> cd {
        if (x <= 0.0) return 0.0;
        cd z(0.0, 2.0 * pi * x / (p.alpha * lam)); // -2 pi x/(i alpha lam)
        cd m1 = sf::hyp1f1(cd(static_cast<double>(p.r)), cd(twok + p.rho + 1.0), z, budget);
        return m1 * std::pow(x, p.rho + twok) * std::pow(y, p.rho + 1.0) *
               std::exp(-x * y) / std::tgamma(twok + p.rho + 1.0);
    };
    auto qr = quad::adaptive_gk(f, 0.0, Xmax, 1e-11 * (1.0 + std::abs(closed_v)), 1e-9);
    double rel = std::abs(closed_v - qr.value) / (1.0 + std::abs(closed_v));
    return {"L6", closed_v, qr.value, rel};
}

KernelCheck kernel_Q1(const CompletedL& L, const KernelParams& p, const EvalBudget& budget) {
    const double lam = L.group.lambda;
    const int k = L.group.k;
    const double delta = L.config.delta_strip;
    const double y = p.y;
    cd base(0.0, 8.0 * pi * p.alpha / (y * y * lam)); // 8 pi i alpha/(lam y^2)

    cd closed_v = std::tgamma(p.rho + p.r + 0.5) *
                  sf::tricomi_u(cd(static_cast<double>(p.r)), cd(0.5 - p.rho),
                                cd(0.0, -lam * y * y / (8.0 * pi * p.alpha)), budget);
    int mtop = static_cast<int>(std::floor(delta)) - 2 * k;
    double fact = 1.0;
    for (int m = 0; m <= mtop; ++m) {
        if (m > 0) fact *= m;
        double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        closed_v -= ipow(base, -m) * sgn / fact * sf::poch(p.r, m) *
                    std::tgamma(p.rho - m + 0.5);
    }

    cd lbase = std::log(base);
    auto f = [&](cd s) -> cd {
        return std::exp(s * lbase) * sf::gamma(s) * sf::gamma(cd(p.r) - s) *
               sf::gamma(s + (p.rho + 0.5)) / std::tgamma(static_cast<double>(p.r));
    };
    cd qv = quad::line_integral(f, 2.0 * k - delta, 38.0, 7600);
    double rel = std::abs(closed_v - qv) / (1.0 + std::abs(closed_v));
    return {"Q1", closed_v, qv, rel};
}

KernelCheck kernel_Q2(const CompletedL& L, const KernelParams& p, const EvalBudget& budget) {
    const double lam = L.group.lambda;
    const int k = L.group.k;
    const double twok = 2.0 * k;
    const double delta = L.config.delta_strip;
    const double y = p.y;
    cd z2(0.0, p.alpha * lam * y * y / (8.0 * pi));
    cd base(0.0, -8.0 * pi / (lam * y * y * p.alpha)); // 8 pi/(i lam y^2 alpha)

    cd closed_v = std::tgamma(twok + p.rho + 0.5) * ipow(z2, p.r - 2L * k) *
                  sf::tricomi_u(cd(static_cast<double>(p.r)),
                                cd(p.r - twok - p.rho + 0.5), z2, budget);
    int mtop = static_cast<int>(std::floor(delta)) - p.r;
    double fact = 1.0;
    for (int m = 0; m <= mtop; ++m) {
        if (m > 0) fact *= m;
        double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        closed_v -= ipow(base, 2L * k - m - p.r) * sgn / fact * sf::poch(p.r, m) *
                    std::tgamma(twok - m - p.r + p.rho + 0.5);
    }

    cd lbase = std::log(base);
    auto f = [&](cd s) -> cd {
        return std::exp(s * lbase) * sf::gamma(twok - s) * sf::gamma(cd(p.r) + s - twok) *
               sf::gamma(s + (p.rho + 0.5)) / std::tgamma(static_cast<double>(p.r));
    };
    cd qv = quad::line_integral(f, 2.0 * k - delta, 38.0, 7600);
    double rel = std::abs(closed_v - qv) / (1.0 + std::abs(closed_v));
    return {"Q2", closed_v, qv, rel};
}

KernelCheck kernel_I2(const CompletedL& L, const KernelParams& p, const EvalBudget& budget) {
    const double lam = L.group.lambda;
    const int k = L.group.k;
    const double twok = 2.0 * k;
    const double x = p.x;

    // closed: sqrt(pi) (i a lam/8pi)^{-2k} x^{2k+rho} 2^{2r-4k-2rho}
    //         / (Gamma(2k+rho+1/2) Gamma(2k+rho+1)) * 1F1(r, 2k+rho+1; -2 pi x/(i a lam))
    cd zc(0.0, 2.0 * pi * x / (p.alpha * lam));
    cd m1 = sf::hyp1f1(cd(static_cast<double>(p.r)), cd(twok + p.rho + 1.0), zc, budget);
    cd closed_v = std::sqrt(pi) * ipow(cd(0.0, p.alpha * lam / (8.0 * pi)), -2L * k) *
                  std::pow(x, twok + p.rho) *
                  std::pow(2.0, 2.0 * p.r - 4.0 * k - 2.0 * p.rho) /
                  (std::tgamma(twok + p.rho + 0.5) * std::tgamma(twok + p.rho + 1.0)) * m1;

    // quadrature: (1/2 pi i) int_(theta) e^{y sqrt(x)} y^{-2rho-1}
    //   (i a lam y^2/8pi)^{r-2k} Psi(r, r-2k-rho+1/2; i a lam y^2/8pi) dy
    // with the Psi branch tracked continuously along the line.
    const double th = p.theta;
    const double sqx = std::sqrt(x);
    const double zfac = std::abs(p.alpha) * lam / (8.0 * pi);
    const double zarg0 = (p.alpha > 0.0 ? 0.5 : -0.5) * pi;
    auto f = [&](cd yv) -> cd {
        cd y2 = yv * yv;
        double absz = zfac * std::abs(y2);
        double argz = zarg0 + 2.0 * std::atan2(yv.imag(), yv.real());
        cd psi = sf::tricomi_u_branch(cd(static_cast<double>(p.r)),
                                      cd(p.r - twok - p.rho + 0.5), absz, argz, budget);
        cd zpow = ipow(cd(0.0, p.alpha * lam / (8.0 * pi)) * y2, p.r - 2L * k);
        return std::exp(yv * sqx) * ipow(yv, -(2L * p.rho + 1L)) * zpow * psi;
    };
    const double T = 140.0;
    const int n = 14000;
    cd qv = quad::line_integral(f, th, T, n);
    double rel = std::abs(closed_v - qv) / (1.0 + std::abs(closed_v));
    return {"I2", closed_v, qv, rel};
}

} // namespace

KernelCheck verify_proof_kernel(const CompletedL& L, const std::string& selector,
                                const KernelParams& p, const EvalBudget& budget) {
    budget.validate();
    if (p.r < 1) throw domain_error("verify_proof_kernel: r must be >= 1");
    if (p.alpha == 0.0) throw domain_error("verify_proof_kernel: alpha must be nonzero");
    if (selector == "L2") return kernel_L2(L, p, budget);
    if (selector == "L5") return kernel_L5(L, p, budget);
    if (selector == "L6") return kernel_L6(L, p, budget);
    if (selector == "Q1") return kernel_Q1(L, p, budget);
    if (selector == "Q2") return kernel_Q2(L, p, budget);
    if (selector == "I2") return kernel_I2(L, p, budget);
    throw domain_error("verify_proof_kernel: unknown selector " + selector);
}

} // namespace heckelab
