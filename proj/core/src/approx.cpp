#include "apointlab/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "apointlab/errors.hpp"
#include "apointlab/special.hpp"

namespace apl {

namespace {

constexpr double kPi = 3.14159265358979323846;

double ln_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double eta_from_view(double t, const ZeroView& zeros) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : zeros.zeros) best = std::min(best, std::abs(t - z.gamma));
    return best;
}

void require_table(double X, const PrimeTable& table) {
    if (double(table.limit) < X * X * X - 0.5)
        throw std::invalid_argument("prime table does not cover X^3");
}

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGlNode[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

// composite GL with geometrically shrinking panels toward a (the integrand
// decays like X^{1/2-u}, so most mass sits at the left end)
template <typename F>
double integrate_decaying(const F& f, double a, double b, int panels) {
    double acc = 0.0;
    double left = a;
    double width = (b - a) * 0.5 / (std::pow(2.0, panels - 1) - 0.5);
    // widths w, 2w, 4w, ...: sum = b - a
    for (int p = 0; p < panels; ++p) {
        const double right = (p + 1 == panels) ? b : left + width;
        for (int q = 0; q < 8; ++q) {
            const double u = 0.5 * (left + right) +
                             0.5 * (right - left) * kGlNode[q];
            acc += 0.5 * (right - left) * kGlWeight[q] * f(u);
        }
        left = right;
        width *= 2.0;
    }
    return acc;
}

}  // namespace

std::vector<ZetaZero> to_zeta_zeros(const ZeroList& list) {
    std::vector<ZetaZero> out;
    out.reserve(list.ordinates.size());
    for (const auto& z : list.ordinates) out.push_back({0.5, z.gamma});
    return out;
}

double weight_w(double n, double X) {
    if (X < 2.0) throw std::domain_error("weight_w: X < 2");
    if (n < 1.0) throw std::domain_error("weight_w: n < 1");
    const double L = std::log(X);
    if (n <= X) return 1.0;
    const double ln_n = std::log(n);
    if (n <= X * X) {
        const double u = 3.0 * L - ln_n;  // ln(X^3/n)
        const double v = 2.0 * L - ln_n;  // ln(X^2/n)
        return (u * u - 2.0 * v * v) / (2.0 * L * L);
    }
    if (n <= X * X * X) {
        const double u = 3.0 * L - ln_n;
        return u * u / (2.0 * L * L);
    }
    return 0.0;
}

double sigma_xt(double t, double X, const ZeroView& zeros) {
    if (X < 2.0) throw std::domain_error("sigma_xt: X < 2");
    const double L = std::log(X);
    double max_dev = 0.0;
    for (const auto& z : zeros.zeros)
        max_dev = std::max(max_dev, std::abs(z.beta - 0.5));
    const double needed = std::pow(X, 3.0 * max_dev) / L + 1.0;
    if (!zeros.covers(t - needed, t + needed))
        throw CoverageError("sigma_xt: zero view does not cover the window");

    double best = 2.0 / L;
    for (const auto& z : zeros.zeros) {
        const double dev = std::abs(z.beta - 0.5);
        const double window = std::pow(X, 3.0 * dev) / L;
        if (std::abs(t - z.gamma) <= window)
            best = std::max(best, z.beta - 0.5);
    }
    return 0.5 + 2.0 * best;
}

std::optional<double> f_term(double t, double X, const ZeroView& zeros) {
    const double sigma = sigma_xt(t, X, zeros);
    const double eta = eta_from_view(t, zeros);
    if (eta == 0.0) return std::nullopt;  // saturated; excluded from averages
    const double L = std::log(X);
    const double d = sigma - 0.5;
    return (std::pow(X, -0.5 * d) / L + d) * (d * L + ln_plus(1.0 / (eta * L)));
}

double prime_sum(double t, double X, const PrimeTable& table) {
    require_table(X, table);
    const std::size_t n = table.upper_index(X * X * X);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += std::cos(t * table.logs[i]) * table.inv_sqrt[i];
    return acc;
}

ErrorTerms error_terms(double t, double X, double sigma, const PrimeTable& table,
                       int panels) {
    require_table(X, table);
    const double X3 = X * X * X;
    const double L = std::log(X);
    const std::size_t n3 = table.upper_index(X3);
    ErrorTerms out;

    // E1: von Mangoldt sum over p^r <= X^3 at sigma_{X,t}
    {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n3; ++i) {
            const double lp = table.logs[i];
            double n = double(table.primes[i]);
            double ln_n = lp;
            while (n <= X3) {
                const double w = weight_w(n, X);
                if (w > 0.0) {
                    const double amp = lp * std::exp(-sigma * ln_n) * w;
                    re += amp * std::cos(t * ln_n);
                    im -= amp * std::sin(t * ln_n);
                }
                if (n > X3 / double(table.primes[i])) break;
                n *= double(table.primes[i]);
                ln_n += lp;
            }
        }
        out.E1 = std::hypot(re, im);
    }

    // E2: only X < p <= X^3 contributes (w = 1 below X)
    {
        double re = 0.0, im = 0.0;
        for (std::size_t i = table.upper_index(X); i < n3; ++i) {
            const double c = (1.0 - weight_w(double(table.primes[i]), X)) *
                             table.inv_sqrt[i];
            re += c * std::cos(t * table.logs[i]);
            im -= c * std::sin(t * table.logs[i]);
        }
        out.E2 = std::hypot(re, im);
    }

    // E3: p <= X^{3/2}, weight at p^2, abscissa 1
    {
        double re = 0.0, im = 0.0;
        const std::size_t n32 = table.upper_index(std::pow(X, 1.5));
        for (std::size_t i = 0; i < n32; ++i) {
            const double p = double(table.primes[i]);
            const double c = weight_w(p * p, X) / p;
            re += c * std::cos(2.0 * t * table.logs[i]);
            im -= c * std::sin(2.0 * t * table.logs[i]);
        }
        out.E3 = std::hypot(re, im);
    }

    // integral_{1/2}^{inf} X^{1/2-u} |sum_p ln p ln(pX) w_X(p) p^{-u-it}| du;
    // phases are u-independent, so precompute them once
    {
        std::vector<double> cre(n3), cim(n3);
        for (std::size_t i = 0; i < n3; ++i) {
            const double c =
                table.logs[i] * (table.logs[i] + L) *
                weight_w(double(table.primes[i]), X);
            cre[i] = c * std::cos(t * table.logs[i]);
            cim[i] = -c * std::sin(t * table.logs[i]);
        }
        auto integrand = [&](double u) {
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < n3; ++i) {
                const double r = std::exp(-u * table.logs[i]);
                re += cre[i] * r;
                im += cim[i] * r;
            }
            return std::pow(X, 0.5 - u) * std::hypot(re, im);
        };
        const double u_max = 0.5 + 40.0 / L;
        const double body = integrate_decaying(integrand, 0.5, u_max, panels);
        // tail: |S(u)| <= S_abs(u_max) 2^{-(u - u_max)} for u >= u_max
        double s_abs = 0.0;
        for (std::size_t i = 0; i < n3; ++i)
            s_abs += std::abs(table.logs[i] * (table.logs[i] + L) *
                              weight_w(double(table.primes[i]), X)) *
                     std::exp(-u_max * table.logs[i]);
        const double tail =
            std::pow(X, 0.5 - u_max) * s_abs / (L + std::log(2.0));
        out.dirichlet_integral = body + tail;
    }
    return out;
}

ApproxDecomposition decompose(double t, double X, const ZeroView& zeros,
                              const PrimeTable& table) {
    if (t < 10.0) throw std::domain_error("decompose: t < 10");
    require_table(X, table);

    ApproxDecomposition d;
    d.t = t;
    d.X = X;
    d.sigma_xt = sigma_xt(t, X, zeros);
    d.prime_sum = prime_sum(t, X, table);
    const auto errs = error_terms(t, X, d.sigma_xt, table);
    d.E1 = errs.E1;
    d.E2 = errs.E2;
    d.E3 = errs.E3;
    d.dirichlet_integral = errs.dirichlet_integral;

    const double eta = eta_from_view(t, zeros);
    if (eta <= 1e-8) {
        d.f_saturated = true;
        d.F = std::numeric_limits<double>::infinity();
    } else {
        d.F = *f_term(t, X, zeros);
    }

    d.lhs_half = std::log(std::abs(hardy_z(t)));
    d.lhs_sigma = std::log(std::abs(zeta({d.sigma_xt, t})));
    d.residual_half = d.lhs_half - d.prime_sum;
    d.residual_sigma = d.lhs_sigma - d.prime_sum;

    const double L = std::log(X);
    const double dv = d.sigma_xt - 0.5;
    const double lnt = std::log(t);
    d.budget_half = d.F * lnt + d.E2 + d.E3 +
                    d.F * std::pow(X, dv) * d.dirichlet_integral;
    d.budget_sigma =
        (std::pow(X, -0.5 * dv) / L + dv) * lnt + d.E2 + d.E3 +
        (std::pow(X, 0.5 * dv) / L + dv * std::pow(X, dv)) *
            d.dirichlet_integral;
    return d;
}

HoughBound hough_check(const ShiftedGramPoint& g, double X,
                       const ZeroView& zeros) {
    if (!(g.t > 10.0)) throw std::domain_error("hough_check: t <= 10");
    const double eta = eta_from_view(g.t, zeros);
    if (eta <= 1e-6)
        throw NumericalError("hough_check: saturated, t within 1e-6 of a zero");
    HoughBound h;
    const double sigma = sigma_xt(g.t, X, zeros);
    h.lhs = std::log(std::abs(hardy_z(g.t)));
    h.rhs = std::log(std::abs(zeta({sigma, g.t}))) +
            0.5 * (sigma - 0.5) * std::log(g.t);
    h.margin = h.rhs - h.lhs;
    return h;
}

}  // namespace apl
