#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>

#include "chfif/piecewise.hpp"
#include "chfif/system.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace chfif;
using namespace chfif::testing;

namespace {

SystemPtr hat_sys() {
    return make_system(Knots::uniform(2), HiddenParams{{0, 0}, {0, 0}, {0, 0}},
                       DataPoints{{0, 1, 0}, {0, 0, 0}});
}

SystemPtr reference_sys(std::vector<double> y, std::vector<double> z) {
    return make_system(Knots::uniform(2), reference_params(),
                       DataPoints{std::move(y), std::move(z)});
}

}  // namespace

TEST_CASE("single piece reproduces the attractor pairings") {
    const auto hat = PiecewiseFunction::from_system(hat_sys(), 1, 0.0, 1.0);
    PairingCache cache;
    CHECK(norm2(hat, cache) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(hat.evaluate(0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hat.evaluate(2.0) == 0.0);
    CHECK(hat.evaluate(-1.0) == 0.0);
}

TEST_CASE("linear pieces integrate in closed form") {
    Piece ramp;
    ramp.sys = hat_sys();
    ramp.cy = 0.0;
    ramp.slope = 1.0;
    const PiecewiseFunction lin({ramp});
    const auto hat = PiecewiseFunction::from_system(hat_sys(), 1, 0.0, 1.0);
    PairingCache cache;
    CHECK(inner(lin, hat, cache) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(norm2(lin, cache) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    Piece one = ramp;
    one.slope = 0.0;
    one.offset = 1.0;
    CHECK(inner(PiecewiseFunction({one}), hat, cache) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("transform identities") {
    const auto f = PiecewiseFunction::from_system(reference_sys({1.0, reference_r1(), 0.0},
                                                                {0, 0, 0}),
                                                  1, 0.0, 1.0);
    const auto g = PiecewiseFunction::from_system(reference_sys({0.0, 1.0, 0.0}, {0, 0, 0}), 1,
                                                  0.0, 1.0);
    PairingCache cache;
    const double base = inner(f, g, cache);
    CHECK(inner(f.translated(3.0), g.translated(3.0), cache) ==
          doctest::Approx(base).epsilon(1e-13));
    CHECK(norm2(f.dilated(2.0), cache) == doctest::Approx(2.0 * norm2(f, cache)).epsilon(1e-13));
    CHECK(norm2(f.scaled(-3.0), cache) == doctest::Approx(9.0 * norm2(f, cache)).epsilon(1e-13));
}

TEST_CASE("splitting preserves values and pairings") {
    const auto sys = reference_sys({0.4, -0.7, 0.2}, {0.1, 0.5, -0.3});
    const auto f = PiecewiseFunction::from_system(sys, 1, 0.0, 1.0);
    const auto g = PiecewiseFunction::from_system(sys, 2, 0.0, 1.0);
    PairingCache cache;
    const double base = inner(f, g, cache);
    CHECK(inner(f.split(), g, cache) == doctest::Approx(base).epsilon(1e-13));
    CHECK(inner(f.split().split(), g.split(), cache) == doctest::Approx(base).epsilon(1e-13));
    for (int j = 0; j <= 16; ++j) {
        const double x = static_cast<double>(j) / 16.0;
        CHECK(f.split().evaluate(x, 10) == doctest::Approx(f.evaluate(x, 10)).epsilon(1e-10));
    }
}

TEST_CASE("disjoint and touching supports pair to zero") {
    const auto hat = PiecewiseFunction::from_system(hat_sys(), 1, 0.0, 1.0);
    PairingCache cache;
    CHECK(inner(hat, hat.translated(1.0), cache) == 0.0);
    CHECK(inner(hat, hat.translated(5.0), cache) == 0.0);
}

TEST_CASE("partial overlap resolves by splitting") {
    const auto hat = PiecewiseFunction::from_system(hat_sys(), 1, 0.0, 1.0);
    PairingCache cache;
    // <hat(x/2), hat(x-1)> = int_0^1 (1-u) hat(u) du = 1/4
    CHECK(inner(hat.dilated(2.0), hat.translated(1.0), cache) ==
          doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("incommensurable intervals are rejected") {
    const auto hat = PiecewiseFunction::from_system(hat_sys(), 1, 0.0, 1.0);
    PairingCache cache;
    CHECK_THROWS_AS(inner(hat, hat.translated(0.3), cache), std::invalid_argument);
}

TEST_CASE("piece validation") {
    Piece p;
    p.sys = hat_sys();
    Piece q = p;
    q.a = 0.5;  // overlaps p = [0, 1]
    CHECK_THROWS_AS(PiecewiseFunction({p, q}), std::invalid_argument);
    Piece empty = p;
    empty.b = empty.a;
    CHECK_THROWS_AS(PiecewiseFunction({empty}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseFunction::from_system(hat_sys(), 3, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("sampling matches pointwise evaluation") {
    const auto sys = reference_sys({0.4, -0.7, 0.2}, {0.1, 0.5, -0.3});
    const auto f = PiecewiseFunction::from_system(sys, 1, 0.0, 1.0).dilated(2.0).translated(-1.0);
    std::vector<double> xs;
    for (int j = -4; j <= 8; ++j) xs.push_back(static_cast<double>(j) / 4.0);
    const std::vector<double> vals = f.sample(xs, 10);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(vals[i] == doctest::Approx(f.evaluate(xs[i], 10)).epsilon(1e-12));
}

TEST_CASE("combination norm reduces exact cancellations to zero") {
    const auto f = PiecewiseFunction::from_system(reference_sys({0.4, -0.7, 0.2},
                                                                {0.1, 0.5, -0.3}),
                                                  1, 0.0, 1.0);
    PairingCache cache;
    // a function minus itself, and minus its one-level refinement (which
    // represents the same values on narrower pieces)
    CHECK(combo_norm2({{1.0, f}, {-1.0, f}}, cache) == 0.0);
    CHECK(combo_norm2({{1.0, f}, {-1.0, f.split()}}, cache) == 0.0);
    CHECK(combo_norm2({{1.0, f.dilated(2.0)}, {-1.0, f.dilated(2.0).split()}}, cache) == 0.0);
}

TEST_CASE("combination norm agrees with the expanded pairings") {
    const auto f = PiecewiseFunction::from_system(reference_sys({0.4, -0.7, 0.2},
                                                                {0.1, 0.5, -0.3}),
                                                  1, 0.0, 1.0);
    const auto g = PiecewiseFunction::from_system(reference_sys({0.0, 1.0, 0.0},
                                                                {-0.2, 0.3, 0.6}),
                                                  2, 0.0, 1.0)
                       .translated(0.5);
    PairingCache cache;
    const double direct = combo_norm2({{2.0, f}, {-0.5, g}}, cache);
    const double expanded = 4.0 * norm2(f, cache) - 2.0 * inner(f, g, cache) +
                            0.25 * norm2(g, cache);
    CHECK(direct == doctest::Approx(expanded).epsilon(1e-13));
    CHECK(combo_norm2({{2.0, f}}, cache) == doctest::Approx(4.0 * norm2(f, cache)).epsilon(1e-13));
}

TEST_CASE("combination norm rejects mixed parameter families") {
    const auto f = PiecewiseFunction::from_system(reference_sys({0.4, -0.7, 0.2},
                                                                {0.1, 0.5, -0.3}),
                                                  1, 0.0, 1.0);
    const auto h = PiecewiseFunction::from_system(hat_sys(), 1, 0.0, 1.0);
    PairingCache cache;
    CHECK_THROWS_AS((combo_norm2({{1.0, f}, {1.0, h}}, cache)), std::invalid_argument);
}
