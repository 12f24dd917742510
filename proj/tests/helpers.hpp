#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "chfif/system.hpp"

namespace chfif::testing {

inline CoalescenceSystem make_uniform(std::size_t n, std::vector<double> alpha,
                                      std::vector<double> beta, std::vector<double> gamma,
                                      std::vector<double> y, std::vector<double> z) {
    return build_system(Knots::uniform(n),
                        HiddenParams{std::move(alpha), std::move(beta), std::move(gamma)},
                        DataPoints{std::move(y), std::move(z)});
}

// The two-interval parameter set used throughout the worked construction:
// alpha = (0, sqrt(7)-3), gamma = (-9/10, (-67+29 sqrt(7))/10),
// beta = (1/20, (3-sqrt(7))/20).
inline HiddenParams reference_params() {
    const double s7 = std::sqrt(7.0);
    return HiddenParams{{0.0, s7 - 3.0},
                        {1.0 / 20.0, (3.0 - s7) / 20.0},
                        {-9.0 / 10.0, (-67.0 + 29.0 * s7) / 10.0}};
}

inline double reference_r1() { return std::sqrt(7.0) - 3.0; }

// Admissible parameter draw with contraction modulus at most cap.
inline HiddenParams random_params(std::mt19937& rng, std::size_t n, double cap = 0.9) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    HiddenParams p;
    for (std::size_t i = 0; i < n; ++i) {
        const double ga = cap * u(rng);
        const double be = (cap - std::abs(ga)) * u(rng);
        p.alpha.push_back((cap - std::abs(be)) * u(rng));
        p.beta.push_back(be);
        p.gamma.push_back(ga);
    }
    return p;
}

inline DataPoints random_points(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DataPoints d;
    for (std::size_t i = 0; i <= n; ++i) {
        d.y.push_back(u(rng));
        d.z.push_back(u(rng));
    }
    return d;
}

}  // namespace chfif::testing
