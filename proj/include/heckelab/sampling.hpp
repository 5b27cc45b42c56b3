#pragma once

// Seeded random inputs shared by the selfcheck suite, tests, and the
// acceptance runner: Lemma-family RPF draws, coefficient lists, and
// upper-half-plane / strip sample points kept clear of poles.

#include <random>
#include <vector>

#include "heckelab/coefficients.hpp"
#include "heckelab/rpf.hpp"

namespace heckelab::sampling {

using rng_t = std::mt19937_64;

inline double uniform(rng_t& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cd unit_disk(rng_t& rng) {
    double r = std::sqrt(uniform(rng, 0.0, 1.0));
    double th = uniform(rng, 0.0, 2.0 * 3.141592653589793);
    return {r * std::cos(th), r * std::sin(th)};
}

// Random member of the Lemma family: C in the unit disk, alpha in
// +-[0.3, 3], M_j <= max_m, L <= k + 3.  cap_m_at_k keeps every block
// within the pole-order bound M_j <= k of a genuine RPF.
inline RationalPeriodFunction random_rpf(rng_t& rng, const HeckeGroup& g, int max_blocks = 2,
                                         int max_m = 3, bool cap_m_at_k = false) {
    std::vector<ZeroPoleTerm> zt;
    int nz = std::uniform_int_distribution<int>(0, 2)(rng);
    int L = g.k + std::uniform_int_distribution<int>(0, 3)(rng);
    std::vector<int> avail;
    for (int r = g.k; r <= L; ++r) avail.push_back(r);
    std::shuffle(avail.begin(), avail.end(), rng);
    for (int i = 0; i < nz && i < static_cast<int>(avail.size()); ++i)
        zt.push_back({avail[static_cast<std::size_t>(i)], unit_disk(rng)});

    std::vector<PoleBlock> pb;
    int nb = std::uniform_int_distribution<int>(0, max_blocks)(rng);
    int mcap = cap_m_at_k ? std::min(max_m, g.k) : max_m;
    for (int j = 0; j < nb; ++j) {
        PoleBlock b;
        double mag = uniform(rng, 0.3, 3.0);
        b.alpha = (uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag);
        int M = std::uniform_int_distribution<int>(1, std::max(1, mcap))(rng);
        for (int r = 0; r < M; ++r) b.coeffs.push_back(unit_disk(rng));
        pb.push_back(std::move(b));
    }
    auto q = make_rpf(std::move(zt), std::move(pb), g);
    return q;
}

// Short random coefficient list with a declared growth exponent.
inline CoefficientSeries random_series(rng_t& rng, std::size_t n = 8, double beta = 1.5) {
    std::vector<cd> a;
    for (std::size_t m = 0; m < n; ++m) a.push_back(unit_disk(rng));
    cd a0 = unit_disk(rng);
    return coeffs_list(a0, std::move(a), beta, "random");
}

// Upper-half-plane samples keeping z, -1/z clear of q's poles.
inline std::vector<cd> rpf_samples(rng_t& rng, const RationalPeriodFunction& q, int count,
                                   double clearance = 0.05) {
    std::vector<double> poles{0.0};
    for (const auto& b : q.pole_blocks) {
        poles.push_back(b.alpha);
        poles.push_back(-1.0 / b.alpha);
    }
    std::vector<cd> out;
    while (static_cast<int>(out.size()) < count) {
        cd z(uniform(rng, -3.0, 3.0), uniform(rng, 0.2, 2.5));
        cd w = -1.0 / z;
        bool ok = true;
        for (double p : poles)
            if (std::abs(z - p) < clearance || std::abs(w - p) < clearance) ok = false;
        if (ok) out.push_back(z);
    }
    return out;
}

// Random point of the strip (2k - delta, delta), clear of every singular
// point in `avoid` (and of its own reflection 2k - s).
inline cd strip_sample(rng_t& rng, double twok, double delta,
                       const std::vector<double>& avoid, double clearance) {
    for (int tries = 0; tries < 10000; ++tries) {
        double sig = uniform(rng, twok - delta + 0.2, delta - 0.2);
        double t = uniform(rng, -3.0, 3.0);
        cd s(sig, t);
        cd sm(twok - sig, -t);
        bool ok = true;
        for (double p : avoid)
            if (std::abs(s - p) < clearance || std::abs(sm - p) < clearance) ok = false;
        if (ok) return s;
    }
    throw error("strip_sample: could not find a clear sample point");
}

} // namespace heckelab::sampling
