#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>

#include "chfif/system.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace chfif;
using namespace chfif::testing;

TEST_CASE("uniform knots") {
    const Knots k = Knots::uniform(4);
    CHECK(k.intervals() == 4);
    CHECK(k.left() == 0.0);
    CHECK(k.right() == 1.0);
    CHECK(k[1] == 0.25);
    for (std::size_t n = 1; n <= 4; ++n) {
        CHECK(k.a(n) == doctest::Approx(0.25));
        CHECK(k.map(n, 0.0) == k[n - 1]);
        CHECK(k.map(n, 1.0) == k[n]);
        CHECK(k.unmap(n, k.map(n, 0.37)) == doctest::Approx(0.37));
    }
}

TEST_CASE("knot validation") {
    CHECK_THROWS_AS(Knots({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Knots({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Knots({0.0, 0.7, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(Knots::uniform(0), std::invalid_argument);
    CHECK_NOTHROW(Knots({-1.0, 0.25, 2.0}));
}

TEST_CASE("parameter validation") {
    const std::size_t n = 2;
    CHECK_THROWS_AS((HiddenParams{{0.5}, {0.0, 0.0}, {0.0, 0.0}}.validate(n)),
                    std::invalid_argument);
    CHECK_THROWS_AS((HiddenParams{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}.validate(n)),
                    std::invalid_argument);
    CHECK_THROWS_AS((HiddenParams{{0.0, 0.0}, {0.0, 0.0}, {0.0, -1.0}}.validate(n)),
                    std::invalid_argument);
    CHECK_THROWS_AS((HiddenParams{{0.0, 0.0}, {0.6, 0.0}, {0.4, 0.0}}.validate(n)),
                    std::invalid_argument);
    CHECK_NOTHROW((HiddenParams{{0.0, 0.0}, {0.59, 0.0}, {0.4, 0.0}}.validate(n)));
    CHECK_NOTHROW(reference_params().validate(n));
}

TEST_CASE("affine special case has linear interpolant coefficients") {
    const auto sys = make_uniform(2, {0, 0}, {0, 0}, {0, 0}, {0, 1, 0}, {0, 0, 0});
    CHECK(sys.coeffs().c[0] == doctest::Approx(1.0));
    CHECK(sys.coeffs().d[0] == doctest::Approx(0.0));
    CHECK(sys.coeffs().c[1] == doctest::Approx(-1.0));
    CHECK(sys.coeffs().d[1] == doctest::Approx(1.0));
    for (int i : {0, 1}) {
        CHECK(sys.coeffs().e[i] == 0.0);
        CHECK(sys.coeffs().h[i] == 0.0);
    }
}

TEST_CASE("join-up conditions hold for every map") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        const auto sys = build_system(Knots::uniform(n), random_params(rng, n),
                                      random_points(rng, n));
        const auto& kn = sys.knots();
        const auto& dt = sys.data();
        for (std::size_t k = 1; k <= n; ++k) {
            const auto lo = sys.apply_map(k, {kn.left(), dt.y.front(), dt.z.front()});
            const auto hi = sys.apply_map(k, {kn.right(), dt.y.back(), dt.z.back()});
            CHECK(lo[0] == doctest::Approx(kn[k - 1]).epsilon(1e-12));
            CHECK(lo[1] == doctest::Approx(dt.y[k - 1]).epsilon(1e-12));
            CHECK(lo[2] == doctest::Approx(dt.z[k - 1]).epsilon(1e-12));
            CHECK(hi[0] == doctest::Approx(kn[k]).epsilon(1e-12));
            CHECK(hi[1] == doctest::Approx(dt.y[k]).epsilon(1e-12));
            CHECK(hi[2] == doctest::Approx(dt.z[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("join-up on non-uniform knots") {
    const Knots kn({-1.0, -0.2, 0.5, 2.0});
    const auto sys = build_system(kn, HiddenParams{{0.3, -0.4, 0.2}, {0.1, 0.2, -0.3},
                                                   {-0.5, 0.6, 0.4}},
                                  DataPoints{{1.0, -2.0, 0.5, 3.0}, {0.0, 1.0, -1.0, 2.0}});
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto lo = sys.apply_map(k, {-1.0, 1.0, 0.0});
        const auto hi = sys.apply_map(k, {2.0, 3.0, 2.0});
        CHECK(lo[1] == doctest::Approx(sys.data().y[k - 1]).epsilon(1e-12));
        CHECK(lo[2] == doctest::Approx(sys.data().z[k - 1]).epsilon(1e-12));
        CHECK(hi[1] == doctest::Approx(sys.data().y[k]).epsilon(1e-12));
        CHECK(hi[2] == doctest::Approx(sys.data().z[k]).epsilon(1e-12));
    }
}

TEST_CASE("apply_map rejects bad input") {
    const auto sys = make_uniform(2, {0, 0}, {0, 0}, {0, 0}, {0, 1, 0}, {0, 0, 0});
    CHECK_THROWS_AS(sys.apply_map(0, {0.5, 0, 0}), std::out_of_range);
    CHECK_THROWS_AS(sys.apply_map(3, {0.5, 0, 0}), std::out_of_range);
    CHECK_THROWS_AS(sys.apply_map(1, {1.5, 0, 0}), std::domain_error);
}

TEST_CASE("build rejects mismatched data") {
    CHECK_THROWS_AS(make_uniform(2, {0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_uniform(2, {0, 0}, {0, 0}, {0, 0}, {0, 1, 0}, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_uniform(2, {0.0}, {0.0}, {0.0}, {0, 1, 0}, {0, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("contraction modulus") {
    const auto p = reference_params();
    const double s7 = std::sqrt(7.0);
    const double expected = (-67.0 + 29.0 * s7) / 10.0;  // biggest |gamma|
    CHECK(p.contraction_modulus() == doctest::Approx(expected));
    CHECK(HiddenParams{{0.2}, {0.3}, {0.1}}.contraction_modulus() == doctest::Approx(0.5));
}
