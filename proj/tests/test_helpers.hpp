#pragma once

#include <random>

#include "aniso_mhd/spectral.hpp"
#include "aniso_mhd/state.hpp"

namespace mhd::test {

inline PhysicalField random_physical(const GridSpec& g, std::uint64_t seed) {
    PhysicalField f(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : f.val) v = u(rng);
    return f;
}

// Hermitian spectrum supported on 0 < |k| <= kmax.
inline SpectralField random_bandlimited(const GridSpec& g, std::uint64_t seed, int kmax) {
    SpectralField f(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            if (k1 * k1 + k2 * k2 > kmax * kmax) continue;
            const Complex c(u(rng), u(rng));
            f.at_mode(k1, k2) = c;
            f.at_mode(-k1, -k2) = std::conj(c);
        }
    }
    return f;
}

// Divergence-free Hermitian velocity from a random stream function.
inline std::pair<SpectralField, SpectralField> random_solenoidal(const GridSpec& g,
                                                                 std::uint64_t seed, int kmax) {
    const SpectralField chi = random_bandlimited(g, seed, kmax);
    SpectralField v1 = derivative(chi, 2);
    SpectralField v2 = derivative(chi, 1);
    for (Complex& c : v2.coef) c = -c;
    return {std::move(v1), std::move(v2)};
}

inline State random_state(const GridSpec& g, std::uint64_t seed, int kmax, double amp) {
    State s(g);
    s.psi = random_bandlimited(g, seed, kmax);
    auto [v1, v2] = random_solenoidal(g, seed + 1, kmax);
    s.v1 = std::move(v1);
    s.v2 = std::move(v2);
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.psi.coef[i] *= amp;
        s.v1.coef[i] *= amp;
        s.v2.coef[i] *= amp;
    }
    enforce_state_invariants(s);
    return s;
}

inline double max_coef_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.coef.size(); ++i)
        m = std::max(m, std::abs(a.coef[i] - b.coef[i]));
    return m;
}

inline double max_val_diff(const PhysicalField& a, const PhysicalField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.val.size(); ++i) m = std::max(m, std::abs(a.val[i] - b.val[i]));
    return m;
}

}  // namespace mhd::test
