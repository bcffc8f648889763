#include "apointlab/approx.hpp"

#include <cmath>
#include <cstring>

#include "apointlab/errors.hpp"
#include "apointlab/special.hpp"
#include "apointlab/zeros.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apl;

namespace {

ZeroView view_of(const std::vector<ZetaZero>& zs, double lo, double hi) {
    return ZeroView{std::span<const ZetaZero>(zs.data(), zs.size()), lo, hi};
}

}  // namespace

TEST_CASE("weight_w: branch values") {
    const double X = 100.0;
    CHECK(weight_w(5.0, X) == 1.0);
    CHECK(weight_w(X, X) == 1.0);
    CHECK(weight_w(X * X, X) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(weight_w(X * X * X, X) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(weight_w(X * X * X + 1.0, X) == 0.0);
    // branch two collapses to 1 at n = X: (4 ln^2 X - 2 ln^2 X)/(2 ln^2 X)
    const double L = std::log(X);
    const double u = 3.0 * L - std::log(X + 1e-9);
    const double v = 2.0 * L - std::log(X + 1e-9);
    CHECK((u * u - 2.0 * v * v) / (2.0 * L * L) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("weight_w: seam continuity and range") {
    for (double X : {2.0, 10.0, 100.0, 1000.0}) {
        for (double seam : {X, X * X, X * X * X}) {
            const double lo = weight_w(seam * (1.0 - 1e-12), X);
            const double hi = weight_w(seam * (1.0 + 1e-12), X);
            CHECK(std::abs(hi - lo) <= 1e-11);
        }
        double prev = 1.0;
        for (double n = X * 1.0001; n <= X * X * X; n *= 1.07) {
            const double w = weight_w(n, X);
            CHECK(w >= 0.0);
            CHECK(w <= 1.0);
            CHECK(w <= prev + 1e-15);  // nonincreasing past X
            prev = w;
        }
    }
}

TEST_CASE("sigma_xt: on-line zeros give 1/2 + 4/ln X") {
    std::vector<ZetaZero> zs;
    for (double g = 990.0; g < 1010.0; g += 0.7) zs.push_back({0.5, g});
    const double X = 100.0;
    const double got = sigma_xt(1000.0, X, view_of(zs, 980.0, 1020.0));
    CHECK(got == doctest::Approx(0.5 + 4.0 / std::log(X)).epsilon(1e-14));
}

TEST_CASE("sigma_xt: synthetic off-line zero branches") {
    const double X = 5e8;  // ln X > 20 so 2/ln X < 0.1
    const double L = std::log(X);
    REQUIRE(2.0 / L < 0.1);
    SUBCASE("zero at distance zero wins the max") {
        std::vector<ZetaZero> zs = {{0.6, 1000.0}};
        const double got = sigma_xt(1000.0, X, view_of(zs, 0.0, 1e9));
        CHECK(got == doctest::Approx(0.5 + 0.2).epsilon(1e-12));
    }
    SUBCASE("zero just outside its window is ignored") {
        const double window = std::pow(X, 0.3) / L;
        std::vector<ZetaZero> zs = {{0.6, 1000.0 + window * 1.01}};
        const double got = sigma_xt(1000.0, X, view_of(zs, 0.0, 1e9));
        CHECK(got == doctest::Approx(0.5 + 4.0 / L).epsilon(1e-12));
    }
    SUBCASE("coverage error") {
        std::vector<ZetaZero> zs = {{0.6, 1000.0}};
        CHECK_THROWS_AS(sigma_xt(1000.0, X, view_of(zs, 999.0, 1001.0)),
                        CoverageError);
    }
}

TEST_CASE("f_term: closed form under on-line zeros, saturation at a zero") {
    const double X = 100.0;
    const double L = std::log(X);
    std::vector<ZetaZero> zs = {{0.5, 999.0}, {0.5, 1001.0}};
    // eta = 1 >= 1/ln X, so the ln+ term vanishes
    const auto f = f_term(1000.0, X, view_of(zs, 900.0, 1100.0));
    REQUIRE(f.has_value());
    CHECK(*f == doctest::Approx(4.0 * (std::exp(-2.0) + 4.0) / L).epsilon(1e-12));

    std::vector<ZetaZero> at = {{0.5, 1000.0}};
    CHECK_FALSE(f_term(1000.0, X, view_of(at, 900.0, 1100.0)).has_value());
}

TEST_CASE("prime_sum: anchors and the quad-precision oracle") {
    const auto table = primes_up_to(1000000);
    // t = 0: plain sum of p^{-1/2}
    double direct = 0.0;
    for (std::size_t i = 0; i < table.count() && table.primes[i] <= 1000; ++i)
        direct += table.inv_sqrt[i];
    CHECK(prime_sum(0.0, 10.0, table) == doctest::Approx(direct).epsilon(1e-15));
    // X^3 below the first prime: empty sum
    CHECK(prime_sum(5.0, 1.2, table) == 0.0);
    // quad-precision reference at t = 1e3, X = 10
    const double ref = oracle::prime_sum_quad(1000.0, 10.0);
    const double got = prime_sum(1000.0, 10.0, table);
    CHECK(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    CHECK_THROWS_AS(prime_sum(5.0, 101.0, table), std::invalid_argument);
}

TEST_CASE("error_terms: structure of E2, E3 and the integral") {
    const auto table = primes_up_to(1000);
    const double X = 10.0, t = 37.5;
    const double sigma = 0.5 + 4.0 / std::log(X);
    const auto e = error_terms(t, X, sigma, table);

    // E2 must equal the direct sum over X < p <= X^3 only (w = 1 kills the rest)
    {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < table.count(); ++i) {
            const double p = double(table.primes[i]);
            if (p <= X || p > X * X * X) continue;
            const double c = (1.0 - weight_w(p, X)) * table.inv_sqrt[i];
            re += c * std::cos(t * table.logs[i]);
            im -= c * std::sin(t * table.logs[i]);
        }
        CHECK(e.E2 == doctest::Approx(std::hypot(re, im)).epsilon(1e-13));
    }

    // E3 at t = 0 is the positive sum of w(p^2)/p
    {
        const auto e0 = error_terms(0.0, X, sigma, table);
        double s = 0.0;
        for (std::size_t i = 0; i < table.count(); ++i) {
            const double p = double(table.primes[i]);
            if (p > std::pow(X, 1.5)) break;
            s += weight_w(p * p, X) / p;
        }
        CHECK(e0.E3 == doctest::Approx(s).epsilon(1e-13));
        CHECK(e0.E3 > 0.0);
    }

    // integral against an independent fine-trapezoid evaluation
    {
        const double L = std::log(X);
        auto inner = [&](double u) {
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < table.count(); ++i) {
                const double p = double(table.primes[i]);
                if (p > X * X * X) break;
                const double c = table.logs[i] * (table.logs[i] + L) *
                                 weight_w(p, X) * std::exp(-u * table.logs[i]);
                re += c * std::cos(t * table.logs[i]);
                im -= c * std::sin(t * table.logs[i]);
            }
            return std::pow(X, 0.5 - u) * std::hypot(re, im);
        };
        const double umax = 0.5 + 40.0 / L;
        double acc = 0.0;
        const int n = 40000;
        for (int i = 0; i < n; ++i) {
            const double u0 = 0.5 + (umax - 0.5) * i / n;
            const double u1 = 0.5 + (umax - 0.5) * (i + 1) / n;
            acc += 0.5 * (inner(u0) + inner(u1)) * (u1 - u0);
        }
        CHECK(e.dirichlet_integral == doctest::Approx(acc).epsilon(1e-5));
        // panel doubling barely moves the value (smooth integrand)
        const auto e2 = error_terms(t, X, sigma, table, 32);
        CHECK(std::abs(e2.dirichlet_integral - e.dirichlet_integral) <=
              1e-6 * std::max(1.0, e.dirichlet_integral));
    }
}

TEST_CASE("decompose: definitional wiring and determinism") {
    const auto table = primes_up_to(1000);
    const auto zl = find_zeros(995.0, 1015.0);
    const auto zs = to_zeta_zeros(zl);
    const auto zv = view_of(zs, zl.lo, zl.hi);

    // pick t with |Z(t)| = 1 by bisection of log|Z| between a zero (where
    // log|Z| -> -inf) and a nearby max
    const double g0 = zl.ordinates[2].gamma, g1 = zl.ordinates[3].gamma;
    const double mid = 0.5 * (g0 + g1);
    REQUIRE(std::abs(hardy_z(mid)) > 1.0);
    const double t1 = oracle::bisect(
        [](double t) { return std::log(std::abs(hardy_z(t))); },
        g0 + 1e-6, mid, 1e-12);

    const auto d = decompose(t1, 10.0, zv, table);
    CHECK(std::abs(d.lhs_half) < 1e-6);
    CHECK(d.residual_half == d.lhs_half - d.prime_sum);
    CHECK(d.residual_sigma == d.lhs_sigma - d.prime_sum);
    CHECK(d.sigma_xt == doctest::Approx(0.5 + 4.0 / std::log(10.0)));
    CHECK(!d.f_saturated);
    CHECK(d.budget_half > 0.0);

    const auto d2 = decompose(t1, 10.0, zv, table);
    CHECK(std::memcmp(&d, &d2, sizeof(d)) == 0);  // bit-identical rerun

    // saturated at a zero ordinate
    const auto ds = decompose(zl.ordinates[2].gamma, 10.0, zv, table);
    CHECK(ds.f_saturated);
}

TEST_CASE("decompose: residual shrinks when X grows (spot sample)") {
    const auto table = primes_up_to(8000000);
    const auto zl = find_zeros(99990.0, 100110.0);
    const auto zs = to_zeta_zeros(zl);
    const auto zv = view_of(zs, zl.lo, zl.hi);
    double m100 = 0.0, m200 = 0.0;
    int used = 0;
    for (double t = 1e5; t < 1e5 + 100.0; t += 2.37) {
        if (eta(t, zl) < 0.05) continue;
        m100 += std::abs(decompose(t, 100.0, zv, table).residual_half);
        m200 += std::abs(decompose(t, 200.0, zv, table).residual_half);
        ++used;
    }
    REQUIRE(used > 20);
    CHECK(std::isfinite(m100));
    CHECK(m200 < m100);
}

TEST_CASE("hough_check: saturation guard and margin wiring") {
    const auto zl = find_zeros(995.0, 1015.0);
    const auto zs = to_zeta_zeros(zl);
    const auto zv = view_of(zs, zl.lo, zl.hi);
    const auto g = shifted_gram(652, 0.0);  // t ~ 1006
    REQUIRE(g.t > 995.0);
    REQUIRE(g.t < 1015.0);
    const auto h = hough_check(g, 100.0, zv);
    const double sigma = sigma_xt(g.t, 100.0, zv);
    const double rhs = std::log(std::abs(zeta({sigma, g.t}))) +
                       0.5 * (sigma - 0.5) * std::log(g.t);
    CHECK(h.rhs == doctest::Approx(rhs));
    CHECK(h.margin == doctest::Approx(h.rhs - h.lhs));

    ShiftedGramPoint at_zero = g;
    at_zero.t = zl.ordinates[2].gamma;
    CHECK_THROWS_AS(hough_check(at_zero, 100.0, zv), NumericalError);
}
