#include "apointlab/zeros.hpp"

#include <cmath>
#include <random>

#include "apointlab/errors.hpp"
#include "apointlab/special.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apl;

namespace {
constexpr double kPi = 3.14159265358979323846;

double main_term(double t) {
    return t / (2.0 * kPi) *
               std::log(t / (2.0 * kPi * 2.71828182845904523536)) +
           7.0 / 8.0;
}
}  // namespace

TEST_CASE("find_zeros: first zero and bracket contract") {
    const auto zl = find_zeros(10.0, 20.0);
    REQUIRE(zl.ordinates.size() == 1);
    CHECK(zl.ordinates[0].gamma ==
          doctest::Approx(14.134725141734695).epsilon(1e-8));
    CHECK(zl.ordinates[0].bracket_width <= 1e-8);
    // the bracket really straddles a sign change
    const double g = zl.ordinates[0].gamma;
    const double w = std::max(zl.ordinates[0].bracket_width, 1e-9);
    CHECK(hardy_z(g - w) * hardy_z(g + w) < 0.0);
}

TEST_CASE("find_zeros: count vs main term on [1e2, 1e3]") {
    const auto zl = find_zeros(100.0, 1000.0);
    const double expected = main_term(1000.0) - main_term(100.0);
    CHECK(std::abs(double(zl.ordinates.size()) - expected) <= 2.0);
    for (std::size_t i = 0; i + 1 < zl.ordinates.size(); ++i) {
        CHECK(zl.ordinates[i].gamma < zl.ordinates[i + 1].gamma);
        CHECK(zl.ordinates[i].index + 1 == zl.ordinates[i + 1].index);
    }
}

TEST_CASE("find_zeros: no zeros inside a constant-sign sliver") {
    // between gamma_1 = 14.1347 and gamma_2 = 21.0220
    const auto zl = find_zeros(15.0, 20.0);
    CHECK(zl.ordinates.empty());
    CHECK(zl.lo == 15.0);
    CHECK(zl.hi == 20.0);
}

TEST_CASE("find_zeros: known low ordinates") {
    const auto zl = find_zeros(10.0, 60.0);
    // first ten zeros, classical values
    const double known[] = {14.134725, 21.022040, 25.010858, 30.424876,
                            32.935062, 37.586178, 40.918719, 43.327073,
                            48.005151, 49.773832, 52.970321, 56.446248,
                            59.347044};
    REQUIRE(zl.ordinates.size() == 13);
    for (std::size_t i = 0; i < zl.ordinates.size(); ++i)
        CHECK(zl.ordinates[i].gamma == doctest::Approx(known[i]).epsilon(1e-6));
}

TEST_CASE("find_zeros: precondition checks") {
    CHECK_THROWS_AS(find_zeros(5.0, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(find_zeros(200.0, 100.0), std::invalid_argument);
}

TEST_CASE("eta: stored ordinate, midpoint, and coverage") {
    const auto zl = find_zeros(100.0, 130.0);
    REQUIRE(zl.ordinates.size() >= 4);
    // a pair comfortably inside the scan, so the +-2 window is covered
    const double g0 = zl.ordinates[1].gamma;
    const double g1 = zl.ordinates[2].gamma;
    CHECK(eta(g0, zl) == 0.0);
    CHECK(eta(0.5 * (g0 + g1), zl) ==
          doctest::Approx(0.5 * (g1 - g0)).epsilon(1e-12));
    CHECK_THROWS_AS(eta(101.0, zl), CoverageError);   // [99, 103] not covered
    CHECK_THROWS_AS(eta(129.5, zl), CoverageError);
}

TEST_CASE("eta: matches a linear scan oracle") {
    const auto zl = find_zeros(1e4, 2e4);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const double t =
            1e4 + 2.0 + (1e4 - 4.0) * double(rng() % 1000000) / 1000000.0;
        double best = 1e300;
        for (const auto& z : zl.ordinates)
            best = std::min(best, std::abs(t - z.gamma));
        CHECK(eta(t, zl) == best);
    }
}

TEST_CASE("eta: empty covered window reports infinity") {
    const auto zl = find_zeros(15.0, 20.0);
    CHECK(std::isinf(eta(17.5, zl)));
}
