#include "apointlab/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace apl {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kLogPiL = 1.1447298858494001741434273513530587L;
constexpr long double kLog2PiL = 1.8378770664093454835606594728112353L;

// B_{2k} / (2k)! for k = 1..14, enough Euler-Maclaurin tail for 1e-8 at
// N = |t|/2 (geometric ratio (|s|/2piN)^2 ~ 1/pi^2 per term).
constexpr std::array<double, 14> kBernoulliOverFact = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -5.2841901386874932e-10,  // B12/12!
    1.3382536530684679e-11,   // B14/14!
    -3.3896802963225829e-13,  // B16/16!
    8.5860620562778446e-15,   // B18/18!
    -2.1748686985580619e-16,  // B20/20!
    5.5090028283602295e-18,   // B22/22!
    -1.3954464685812522e-19,  // B24/24!
    3.5347070396294675e-21,   // B26/26!
    -8.9535174270375469e-23,  // B28/28!
};

// B_{2k} / (2k (2k-1)) for the Stirling log-gamma series, k = 1..10.
constexpr std::array<long double, 10> kStirling = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
};

// log Gamma(z) for Re z > 0 in long double: recurrence up to |z| >= 12,
// then Stirling. Chosen so Im lgamma is the continuous branch.
std::complex<long double> log_gamma(std::complex<long double> z) {
    std::complex<long double> shift{0.0L, 0.0L};
    int steps = 0;
    while (std::abs(z) < 12.0L && steps < 64) {
        shift += std::log(z);
        z += 1.0L;
        ++steps;
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

// ---------------------------------------------------------------------
// Riemann-Siegel correction factor Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p)
// and its derivatives, from Taylor tables about p = 1/2 and p = 0. Psi is
// entire and symmetric about 1/2, so two anchors with |eps| <= 0.26 cover
// [0,1) without ever dividing by a small cosine.
// ---------------------------------------------------------------------

constexpr int kPsiOrder = 44;
using PsiTable = std::array<double, kPsiOrder>;

PsiTable divide_series(const std::array<double, kPsiOrder>& a,
                       const std::array<double, kPsiOrder>& b) {
    PsiTable q{};
    for (int j = 0; j < kPsiOrder; ++j) {
        double s = a[j];
        for (int i = 0; i < j; ++i) s -= q[i] * b[j - i];
        q[j] = s / b[0];
    }
    return q;
}

// Anchor 1/2: u(1/2+e) = 2pi e^2 - 5pi/8, cos(2pi(1/2+e)) = -cos(2pi e).
PsiTable build_psi_half() {
    std::array<double, kPsiOrder> a{}, b{};
    const double c58 = std::cos(5.0 * kPi / 8.0);
    const double s58 = std::sin(5.0 * kPi / 8.0);
    for (int k = 0; 4 * k < kPsiOrder; ++k) {
        a[4 * k] += ((k % 2) ? -1.0 : 1.0) * std::pow(2.0 * kPi, 2 * k) /
                    std::tgamma(2.0 * k + 1.0) * c58;
    }
    for (int k = 0; 4 * k + 2 < kPsiOrder; ++k) {
        a[4 * k + 2] += ((k % 2) ? -1.0 : 1.0) *
                        std::pow(2.0 * kPi, 2 * k + 1) /
                        std::tgamma(2.0 * k + 2.0) * s58;
    }
    for (int k = 0; 2 * k < kPsiOrder; ++k) {
        b[2 * k] = -((k % 2) ? -1.0 : 1.0) * std::pow(2.0 * kPi, 2 * k) /
                   std::tgamma(2.0 * k + 1.0);
    }
    return divide_series(a, b);
}

// Anchor 0: u(e) = 2pi e^2 - 2pi e - pi/8; A = Re[e^{-i pi/8} e^{i(-2pi e + 2pi e^2)}].
PsiTable build_psi_zero() {
    std::array<std::complex<double>, kPsiOrder> expo{};  // exp(i(ae+be^2))
    expo[0] = 1.0;
    std::array<std::complex<double>, kPsiOrder> term{};
    term[0] = 1.0;
    const std::complex<double> ia{0.0, -2.0 * kPi};  // i * a, a = -2pi
    const std::complex<double> ib{0.0, 2.0 * kPi};   // i * b, b = +2pi
    for (int k = 1; k < kPsiOrder; ++k) {
        std::array<std::complex<double>, kPsiOrder> next{};
        for (int j = 0; j < kPsiOrder; ++j) {
            if (term[j] == std::complex<double>{}) continue;
            if (j + 1 < kPsiOrder) next[j + 1] += term[j] * ia;
            if (j + 2 < kPsiOrder) next[j + 2] += term[j] * ib;
        }
        for (int j = 0; j < kPsiOrder; ++j) next[j] /= double(k);
        term = next;
        bool all_zero = true;
        for (int j = 0; j < kPsiOrder; ++j) {
            expo[j] += term[j];
            if (term[j] != std::complex<double>{}) all_zero = false;
        }
        if (all_zero) break;
    }
    const std::complex<double> rot{std::cos(kPi / 8.0), -std::sin(kPi / 8.0)};
    std::array<double, kPsiOrder> a{}, b{};
    for (int j = 0; j < kPsiOrder; ++j) a[j] = (rot * expo[j]).real();
    for (int k = 0; 2 * k < kPsiOrder; ++k) {
        b[2 * k] = ((k % 2) ? -1.0 : 1.0) * std::pow(2.0 * kPi, 2 * k) /
                   std::tgamma(2.0 * k + 1.0);
    }
    return divide_series(a, b);
}

double psi_eval_deriv(const PsiTable& q, double eps, int k) {
    double acc = 0.0;
    for (int j = kPsiOrder - 1; j >= k; --j) {
        double fall = 1.0;
        for (int m = 0; m < k; ++m) fall *= double(j - m);
        acc = acc * eps + q[j] * fall;
    }
    return acc;
}

// Psi^{(k)}(p) for p in [0,1), k <= 6.
double psi_derivative(double p, int k) {
    const static PsiTable half = build_psi_half();
    const static PsiTable zero = build_psi_zero();
    double sign = 1.0;
    if (p > 0.74) {  // Psi(p) = Psi(1-p)
        p = 1.0 - p;
        if (k % 2) sign = -1.0;
    }
    if (p < 0.26) return sign * psi_eval_deriv(zero, p, k);
    return sign * psi_eval_deriv(half, p - 0.5, k);
}

struct MainSumTable {
    std::vector<double> log_n, rsqrt_n;
    MainSumTable() {
        // covers m = floor(sqrt(t/2pi)) up to t = 1e7
        const int cap = 1300;
        log_n.resize(cap + 1);
        rsqrt_n.resize(cap + 1);
        for (int n = 1; n <= cap; ++n) {
            log_n[n] = std::log(double(n));
            rsqrt_n[n] = 1.0 / std::sqrt(double(n));
        }
    }
};

double hardy_z_riemann_siegel(double t) {
    static const MainSumTable tab;
    const double theta = riemann_siegel_theta(t);
    const double tau = std::sqrt(t / (2.0 * kPi));
    const long long m = static_cast<long long>(tau);
    const double p = tau - double(m);
    double main = 0.0;
    for (long long n = m; n >= 1; --n) {
        main += std::cos(theta - t * tab.log_n[n]) * tab.rsqrt_n[n];
    }
    main *= 2.0;
    const double c0 = psi_derivative(p, 0);
    const double c1 = -psi_derivative(p, 3) / (96.0 * kPi * kPi);
    const double c2 = psi_derivative(p, 2) / (64.0 * kPi * kPi) +
                      psi_derivative(p, 6) /
                          (18432.0 * kPi * kPi * kPi * kPi);
    const double corr = c0 + c1 / tau + c2 / (tau * tau);
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m-1}
    return main + sign * corr / std::sqrt(tau);
}

}  // namespace

namespace detail {

long double theta_ld(long double t) {
    if (t < 0.0L) return -theta_ld(-t);
    if (t < 10.0L) {
        // direct log-gamma route; the asymptotic series degrades here
        const std::complex<long double> z{0.25L, 0.5L * t};
        return std::imag(log_gamma(z)) - 0.5L * t * kLogPiL;
    }
    const long double half_t = 0.5L * t;
    const long double t2 = t * t;
    return half_t * std::log(half_t / kPiL) - half_t - kPiL / 8.0L +
           1.0L / (48.0L * t) + 7.0L / (5760.0L * t * t2) +
           31.0L / (80640.0L * t * t2 * t2);
}

double arg_gamma_quarter(double t) {
    const std::complex<long double> z{0.25L, 0.5L * static_cast<long double>(t)};
    return static_cast<double>(std::imag(log_gamma(z)));
}

}  // namespace detail

double riemann_siegel_theta(double t) {
    return static_cast<double>(detail::theta_ld(static_cast<long double>(t)));
}

double theta_derivative(double t) {
    if (t < 10.0) throw std::domain_error("theta_derivative: t < 10");
    const double t2 = t * t;
    return 0.5 * std::log(t / (2.0 * kPi)) - 1.0 / (48.0 * t2) -
           7.0 / (1920.0 * t2 * t2);
}

double hardy_z(double t) {
    if (t < 10.0) throw std::domain_error("hardy_z: t < 10");
    if (t < 2000.0) {
        // Riemann-Siegel truncation error exceeds 1e-6 down here; the
        // Euler-Maclaurin route is still cheap.
        const Complex z = zeta(Complex{0.5, t});
        const double th = riemann_siegel_theta(t);
        return std::cos(th) * z.real() - std::sin(th) * z.imag();
    }
    return hardy_z_riemann_siegel(t);
}

Complex zeta(Complex s) {
    return zeta_with_derivative(s).first;
}

std::pair<Complex, Complex> zeta_with_derivative(Complex s) {
    const double sigma = s.real();
    const double t = s.imag();
    if (t < 0.0) {
        auto [z, dz] = zeta_with_derivative(std::conj(s));
        return {std::conj(z), std::conj(dz)};
    }
    if (sigma <= -5.0 || sigma >= 13.0)
        throw std::domain_error("zeta: Re s outside (-5, 13)");
    if (std::abs(s - Complex{1.0, 0.0}) < 1e-12)
        throw std::domain_error("zeta: pole at s = 1");

    const long long N = std::max(64LL, static_cast<long long>(std::ceil(0.5 * t)));
    Complex sum{0.0, 0.0};
    Complex dsum{0.0, 0.0};
    for (long long n = 1; n < N; ++n) {
        const double ln = std::log(double(n));
        const double r = std::exp(-sigma * ln);
        const double ph = t * ln;
        const Complex term{r * std::cos(ph), -r * std::sin(ph)};  // n^{-s}
        sum += term;
        dsum -= ln * term;
    }
    const double lnN = std::log(double(N));
    const double rN = std::exp(-sigma * lnN);
    const double phN = t * lnN;
    const Complex Ns{rN * std::cos(phN), -rN * std::sin(phN)};  // N^{-s}
    const Complex sm1 = s - 1.0;
    sum += Ns * double(N) / sm1 + 0.5 * Ns;
    dsum += Ns * double(N) * (-lnN / sm1 - 1.0 / (sm1 * sm1)) -
            0.5 * lnN * Ns;

    // Bernoulli tail: c_k (s)_{2k-1} N^{-s-2k+1}, built as pairwise products
    // so intermediates stay O(1).
    const double N2 = double(N) * double(N);
    Complex run = s / double(N);      // (s)_{2k-1} N^{-(2k-1)}
    Complex drun{1.0 / double(N), 0.0};
    for (int k = 1; k <= 14; ++k) {
        const double c = kBernoulliOverFact[k - 1];
        sum += c * run * Ns;
        dsum += c * Ns * (drun - run * lnN);
        const Complex f = (s + double(2 * k - 1)) * (s + double(2 * k)) / N2;
        drun = drun * f + run * (2.0 * s + double(4 * k - 1)) / N2;
        run *= f;
    }
    return {sum, dsum};
}

double lambert_w0(double x) {
    if (x < 0.0) throw std::domain_error("lambert_w0: x < 0");
    if (x == 0.0) return 0.0;
    double w = std::log1p(x);
    for (int it = 0; it < 40; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        const double step = f / denom;  // Halley
        w -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
    }
    return w;
}

double bessel_j0(double z) {
    z = std::abs(z);
    if (z > 50.0) throw std::domain_error("bessel_j0: |z| > 50");
    if (z <= 20.0) {
        const long double q = 0.25L * static_cast<long double>(z) *
                              static_cast<long double>(z);
        long double term = 1.0L, acc = 1.0L;
        for (int n = 1; n < 200; ++n) {
            term *= -q / (static_cast<long double>(n) * n);
            acc += term;
            if (std::abs(term) < 1e-16L * 0.5L) break;
        }
        return static_cast<double>(acc);
    }
    return std::cyl_bessel_j(0.0, z);
}

}  // namespace apl
