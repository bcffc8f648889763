#include "oracles.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kLogPiL = 1.1447298858494001741434273513530587L;
constexpr long double kLog2PiL = 1.8378770664093454835606594728112353L;

// B_{2k}/(2k(2k-1)) for Stirling, k = 1..12
constexpr long double kStirling[] = {
    1.0L / 12.0L,           -1.0L / 360.0L,
    1.0L / 1260.0L,         -1.0L / 1680.0L,
    1.0L / 1188.0L,         -691.0L / 360360.0L,
    1.0L / 156.0L,          -3617.0L / 122400.0L,
    43867.0L / 244188.0L,   -174611.0L / 125400.0L,
    77683.0L / 5796.0L,     -236364091.0L / 1506960.0L,
};

std::complex<long double> log_gamma_ld(std::complex<long double> z) {
    std::complex<long double> shift{0.0L, 0.0L};
    while (std::abs(z) < 16.0L) {
        shift += std::log(z);
        z += 1.0L;
    }
    std::complex<long double> res =
        (z - 0.5L) * std::log(z) - z + 0.5L * kLog2PiL;
    std::complex<long double> zpow = 1.0L / z;
    const std::complex<long double> z2inv = zpow * zpow;
    for (long double c : kStirling) {
        res += c * zpow;
        zpow *= z2inv;
    }
    return res - shift;
}

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol)
        return left + right + diff / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

}  // namespace

long double theta_reference(long double t) {
    const std::complex<long double> z{0.25L, 0.5L * t};
    return std::imag(log_gamma_ld(z)) - 0.5L * t * kLogPiL;
}

std::complex<double> zeta_series(std::complex<double> s) {
    if (s.real() <= 1.2)
        throw std::domain_error("zeta_series: needs Re s > 1.2");
    std::complex<long double> acc{0.0L, 0.0L};
    const long double sig = s.real(), t = s.imag();
    const std::complex<long double> sc{sig, t};
    // partial sum to N, then the integral tail N^{1-s}/(s-1) + N^{-s}/2,
    // whose own error is below |s| N^{-sig-1}/12
    long long N = 1000;
    while (std::abs(sc) * std::pow((long double)N, -sig - 1.0L) / 12.0L > 1e-14L)
        N *= 2;
    for (long long n = 1; n < N; ++n) {
        const long double ln = std::log(static_cast<long double>(n));
        const long double r = std::exp(-sig * ln);
        acc += std::complex<long double>{r * std::cos(t * ln),
                                         -r * std::sin(t * ln)};
    }
    const long double lnN = std::log(static_cast<long double>(N));
    const long double rN = std::exp(-sig * lnN);
    const std::complex<long double> Ns{rN * std::cos(t * lnN),
                                       -rN * std::sin(t * lnN)};
    acc += Ns * static_cast<long double>(N) / (sc - 1.0L) + 0.5L * Ns;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::complex<double> zeta_em_alt(std::complex<double> s) {
    // deliberately different truncation pair than the library route
    const double sigma = s.real(), t = std::abs(s.imag());
    const long long N = std::max(80LL, (long long)std::ceil(0.8 * t));
    std::complex<double> sum{0.0, 0.0};
    for (long long n = 1; n < N; ++n) {
        const double ln = std::log(double(n));
        const double r = std::exp(-sigma * ln);
        sum += std::complex<double>{r * std::cos(t * ln), -r * std::sin(t * ln)};
    }
    const double lnN = std::log(double(N));
    const double rN = std::exp(-sigma * lnN);
    const std::complex<double> Ns{rN * std::cos(t * lnN), -rN * std::sin(t * lnN)};
    std::complex<double> sc{sigma, t};
    sum += Ns * double(N) / (sc - 1.0) + 0.5 * Ns;
    static const double c[] = {1.0 / 12, -1.0 / 720, 1.0 / 30240,
                               -1.0 / 1209600, 1.0 / 47900160,
                               -5.2841901386874932e-10, 1.3382536530684679e-11,
                               -3.3896802963225829e-13, 8.5860620562778446e-15,
                               -2.1748686985580619e-16};
    std::complex<double> run = sc / double(N);
    const double N2 = double(N) * double(N);
    for (int k = 1; k <= 10; ++k) {
        sum += c[k - 1] * run * Ns;
        run *= (sc + double(2 * k - 1)) * (sc + double(2 * k)) / N2;
    }
    if (s.imag() < 0) return std::conj(sum);
    return sum;
}

double bessel_j0_quadrature(double z) {
    auto f = [z](double w) { return std::cos(z * std::sin(w)); };
    return integrate(f, 0.0, 3.14159265358979323846, 1e-12) /
           3.14159265358979323846;
}

double bisect(const std::function<double(double)>& f, double a, double b,
              double tol) {
    double fa = f(a), fb = f(b);
    if ((fa < 0.0) == (fb < 0.0))
        throw std::invalid_argument("bisect: no sign change on [a, b]");
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return 0.5 * (a + b);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    const double m = 0.5 * (a + b);
    return simpson_rec(f, a, b, f(a), f(m), f(b), tol, 30);
}

double prime_sum_quad(double t, double X) {
    const double x3 = X * X * X;
    const auto limit = static_cast<std::uint64_t>(x3);
    std::vector<char> comp(limit + 1, 0);
    // long double terms, binary128 accumulator; only arithmetic, so no
    // libquadmath dependency
    __float128 acc = 0;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (comp[p]) continue;
        for (std::uint64_t q = p * p; q <= limit; q += p) comp[q] = 1;
        const long double lp = std::log(static_cast<long double>(p));
        const long double term =
            std::cos(static_cast<long double>(t) * lp) /
            std::sqrt(static_cast<long double>(p));
        acc += static_cast<__float128>(term);
    }
    return static_cast<double>(acc);
}

}  // namespace oracle
