#include "heckelab/coefficients.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "heckelab/numerics.hpp"
#include "heckelab/specialfn.hpp"

namespace heckelab {

namespace {

// Exact Bernoulli numbers B_{2k} as num/den for the supported weights.
struct Rational {
    long long num, den;
};

Rational bernoulli_for_weight(int w) {
    switch (w) {
        case 4: return {-1, 30};
        case 6: return {1, 42};
        case 8: return {-1, 30};
        case 10: return {5, 66};
        case 14: return {7, 6};
        default:
            throw domain_error("coeffs_eisenstein: weight must be one of 4, 6, 8, 10, 14");
    }
}

} // namespace

void CoefficientSeries::finalize_growth() {
    double K = 0.0;
    for (std::size_t m = 1; m <= coeffs.size(); ++m)
        K = std::max(K, std::abs(coeffs[m - 1]) / std::pow(static_cast<double>(m), beta - 0.25));
    growth_K = K;
}

CoefficientSeries coeffs_eisenstein(int weight2k, std::size_t mmax) {
    if (mmax < 1) throw domain_error("coeffs_eisenstein: mmax must be >= 1");
    Rational b = bernoulli_for_weight(weight2k);
    // normalization -2w/B_w, exact in integers for the supported weights
    long long cnum = -2LL * weight2k * b.den;
    if (cnum % b.num != 0) throw domain_error("coeffs_eisenstein: non-integer normalization");
    double c = static_cast<double>(cnum / b.num);

    std::vector<double> sigma(mmax + 1, 0.0);
    for (std::size_t d = 1; d <= mmax; ++d) {
        double dp = std::pow(static_cast<double>(d), weight2k - 1);
        for (std::size_t m = d; m <= mmax; m += d) sigma[m] += dp;
    }
    CoefficientSeries s;
    s.a0 = 1.0;
    s.coeffs.resize(mmax);
    for (std::size_t m = 1; m <= mmax; ++m) s.coeffs[m - 1] = c * sigma[m];
    s.beta = weight2k - 1 + 0.25;
    s.label = "eisenstein" + std::to_string(weight2k);
    s.finalize_growth();
    return s;
}

CoefficientSeries coeffs_delta(std::size_t mmax) {
    if (mmax < 1) throw domain_error("coeffs_delta: mmax must be >= 1");
    const std::size_t deg = mmax - 1; // need tau(m) = [q^{m-1}] P^24 up to deg

    // Jacobi: P^3 = prod(1-q^n)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}
    std::vector<std::pair<std::size_t, long long>> p3;
    for (std::size_t j = 0;; ++j) {
        std::size_t e = j * (j + 1) / 2;
        if (e > deg) break;
        p3.emplace_back(e, (j % 2 == 0 ? 1LL : -1LL) * static_cast<long long>(2 * j + 1));
    }

    // P^24 = ((P^3) multiplied in eight passes), exact in __int128
    std::vector<__int128> acc(deg + 1, 0), nxt(deg + 1);
    acc[0] = 1;
    for (int pass = 0; pass < 8; ++pass) {
        std::fill(nxt.begin(), nxt.end(), static_cast<__int128>(0));
        for (const auto& [e, c] : p3) {
            for (std::size_t i = 0; i + e <= deg; ++i) {
                if (acc[i] != 0) nxt[i + e] += acc[i] * c;
            }
        }
        acc.swap(nxt);
    }

    CoefficientSeries s;
    s.a0 = 0.0;
    s.coeffs.resize(mmax);
    for (std::size_t m = 1; m <= mmax; ++m)
        s.coeffs[m - 1] = static_cast<double>(acc[m - 1]);
    s.beta = 6.25; // Hecke bound tau(m) = O(m^6) with margin
    s.label = "delta";
    s.finalize_growth();
    return s;
}

CoefficientSeries coeffs_list(cd a0, std::vector<cd> a, double beta, const std::string& label) {
    if (!(beta > 0.0)) throw domain_error("coeffs_list: beta must be positive");
    CoefficientSeries s;
    s.a0 = a0;
    s.coeffs = std::move(a);
    s.beta = beta;
    s.label = label;
    s.finite = true;
    s.finalize_growth();
    return s;
}

cd eval_F(const CoefficientSeries& s, const HeckeGroup& g, cd z, const EvalBudget& budget) {
    budget.validate();
    double y = z.imag();
    if (!(y > 0.0)) throw domain_error("eval_F: Im z must be positive");
    // reduce the real part mod lambda so periodicity is termwise exact
    double x = std::fmod(z.real(), g.lambda);

    const double rho = std::exp(-2.0 * sf::pi * y / g.lambda);
    const double bK = s.beta - 0.25;
    num::kahan_complex sum;
    sum.add(s.a0);
    for (std::size_t m = 1; m <= s.mmax(); ++m) {
        double damp = std::exp(-2.0 * sf::pi * m * y / g.lambda);
        double phase = 2.0 * sf::pi * m * x / g.lambda;
        sum.add(s.coeffs[m - 1] * cd(damp * std::cos(phase), damp * std::sin(phase)));
        // certified geometric tail: |a_n| <= K n^{bK}, n > m
        double rho_hat = rho * std::pow(1.0 + 1.0 / m, bK);
        if (rho_hat < 1.0) {
            double bound = s.growth_K * std::pow(m + 1.0, bK) * damp * rho / (1.0 - rho_hat);
            double ref = std::max(std::abs(sum.value()), budget.abs_floor);
            if (bound <= 0.5 * budget.rel_tol * ref) return sum.value();
        }
    }
    if (s.finite) return sum.value(); // complete series: the tail is exactly zero
    throw tail_error("eval_F: stored coefficients cannot certify the tail at Im z = " +
                     std::to_string(y));
}

double check_modular_relation(const CoefficientSeries& s, const RationalPeriodFunction& q,
                              const HeckeGroup& g, const std::vector<cd>& samples,
                              const EvalBudget& budget) {
    double worst = 0.0;
    for (cd z : samples) {
        cd fz = eval_F(s, g, z, budget);
        cd ftz = std::pow(z, -2 * g.k) * eval_F(s, g, -1.0 / z, budget);
        cd qz = q.empty() ? cd(0.0) : eval_rpf(q, g, z);
        worst = std::max(worst, std::abs(ftz - fz - qz) / (1.0 + std::abs(fz)));
    }
    return worst;
}

void write_coeffs_csv(const CoefficientSeries& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("write_coeffs_csv: cannot open " + path);
    out << "m,re,im\n";
    out.precision(17);
    out << std::scientific;
    out << 0 << ',' << s.a0.real() << ',' << s.a0.imag() << '\n';
    for (std::size_t m = 1; m <= s.mmax(); ++m)
        out << m << ',' << s.coeffs[m - 1].real() << ',' << s.coeffs[m - 1].imag() << '\n';
}

CoefficientSeries read_coeffs_csv(const std::string& path, double beta,
                                  const std::string& label) {
    std::ifstream in(path);
    if (!in) throw io_error("read_coeffs_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error("read_coeffs_csv: empty file");
    cd a0 = 0.0;
    std::vector<cd> a;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string fm, fre, fim;
        if (!std::getline(ss, fm, ',') || !std::getline(ss, fre, ',') || !std::getline(ss, fim))
            throw io_error("read_coeffs_csv: malformed row: " + line);
        std::size_t m = std::stoul(fm);
        cd v(std::stod(fre), std::stod(fim));
        if (m == 0) {
            a0 = v;
        } else {
            if (a.size() < m) a.resize(m, cd(0.0));
            a[m - 1] = v;
        }
    }
    return coeffs_list(a0, std::move(a), beta, label);
}

} // namespace heckelab
