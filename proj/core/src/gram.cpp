#include "apointlab/gram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "apointlab/errors.hpp"
#include "apointlab/parallel.hpp"
#include "apointlab/special.hpp"

namespace apl {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr double kE = 2.71828182845904523536;

// theta(t) + phi - pi n, the two ~1e7 halves cancelled in long double.
long double defect(long double t, double phi, std::int64_t n) {
    return detail::theta_ld(t) + static_cast<long double>(phi) -
           kPiL * static_cast<long double>(n);
}

}  // namespace

namespace detail {
long double gram_index(long double t, double phi) {
    return (theta_ld(t) + static_cast<long double>(phi)) / kPiL;
}
}  // namespace detail

double phase_of(std::complex<double> a) {
    if (a == std::complex<double>{0.0, 0.0})
        throw std::invalid_argument("phase_of: a = 0 has no phase");
    double phi = std::atan2(a.imag(), a.real());
    if (phi <= -kPi) phi = kPi;  // land the branch cut on +pi
    return phi;
}

double shifted_gram_seed(std::int64_t n, double phi) {
    const double arg = double(n) / kE + 1.0 / (8.0 * kE) - phi / (kPi * kE);
    if (arg < 0.0)
        throw std::domain_error("shifted_gram_seed: index below seed range");
    return 2.0 * kPi * std::exp(1.0 + lambert_w0(arg));
}

ShiftedGramPoint shifted_gram(std::int64_t n, double phi) {
    const double seed = shifted_gram_seed(n, phi);
    if (seed < 10.0)
        throw std::domain_error("shifted_gram: seed below t = 10");

    long double t = seed;
    bool converged = false;
    for (int it = 0; it < 8; ++it) {
        const long double f = defect(t, phi, n);
        const double fp = theta_derivative(std::max(10.0, double(t)));
        t -= f / fp;
        if (std::abs(double(f)) < 1e-10 * fp) {
            converged = true;
            break;
        }
    }
    if (!converged || !(t >= 10.0L)) {
        // bisection fallback on a bracket around the seed
        const double w = 4.0 * kPi / std::log(seed);
        long double a = std::max(10.0, seed - w), b = seed + w;
        if (defect(a, phi, n) > 0.0L || defect(b, phi, n) < 0.0L)
            throw ConvergenceError("shifted_gram: no bracket around seed");
        for (int it = 0; it < 200 && (b - a) > 1e-13L * b; ++it) {
            const long double mid = 0.5L * (a + b);
            (defect(mid, phi, n) < 0.0L ? a : b) = mid;
        }
        t = 0.5L * (a + b);
    }

    // pick the representable double minimizing the defect
    double best = double(t);
    long double best_f = std::abs(defect(best, phi, n));
    for (double cand : {std::nextafter(best, 0.0),
                        std::nextafter(best, 2.0 * best)}) {
        const long double f = std::abs(defect(cand, phi, n));
        if (f < best_f) {
            best_f = f;
            best = cand;
        }
    }

    ShiftedGramPoint g;
    g.n = n;
    g.phi = phi;
    g.t = best;
    g.residual = double(best_f);
    g.seed_gap = std::abs(best - seed);
    return g;
}

std::vector<ShiftedGramPoint> grams_in_range(double t1, double t2, double phi) {
    if (!(t1 >= 1e3 && t1 < t2 && t2 <= 1e7))
        throw std::invalid_argument("grams_in_range: need 1e3 <= t1 < t2 <= 1e7");
    // exact theta at the endpoints, not the asymptotic A(t), so the range
    // seams carry no off-by-one
    const auto n_lo =
        static_cast<std::int64_t>(std::floor(detail::gram_index(t1, phi)));
    const auto n_hi =
        static_cast<std::int64_t>(std::floor(detail::gram_index(t2, phi)));
    if (n_hi <= n_lo) return {};

    std::vector<ShiftedGramPoint> out(static_cast<std::size_t>(n_hi - n_lo));
    parallel_for(out.size(), [&](std::size_t i) {
        out[i] = shifted_gram(n_lo + 1 + static_cast<std::int64_t>(i), phi);
    });
    // endpoint guard: indices were chosen from exact theta, so this only
    // trims ties sitting right on t1
    std::erase_if(out, [&](const ShiftedGramPoint& g) {
        return !(g.t > t1 && g.t <= t2);
    });
    return out;
}

double spacing_check(std::span<const ShiftedGramPoint> points, double T) {
    if (points.size() < 2) return 0.0;
    for (const auto& g : points) {
        if (!(g.t > T && g.t <= 2.0 * T))
            throw std::invalid_argument("spacing_check: point outside (T, 2T]");
        if (g.phi != points.front().phi)
            throw std::invalid_argument("spacing_check: mixed phases");
    }
    const double scale = std::log(T) / (2.0 * kPi);
    double worst = 0.0;
    auto dev = [&](std::size_t i, std::size_t j) {
        const double dn = double(points[j].n - points[i].n);
        return std::abs((points[j].t - points[i].t) * scale / dn - 1.0);
    };
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        worst = std::max(worst, dev(i, i + 1));
    // distant pairs, fixed-seed sample to stay subquadratic
    std::mt19937_64 rng(0x5eedULL);
    const std::size_t n = points.size();
    for (std::size_t k = 0; k < 4 * n; ++k) {
        const std::size_t i = rng() % n;
        const std::size_t j = rng() % n;
        if (i == j) continue;  // degenerate l = m pair excluded
        worst = std::max(worst, dev(std::min(i, j), std::max(i, j)));
    }
    return worst;
}

GramClass classify_gram(const ShiftedGramPoint& g, const ZeroList& zeros) {
    if (!zeros.covers(g.t - 1.0, g.t + 1.0))
        throw CoverageError("classify_gram: zero list does not cover [t-1, t+1]");
    double eta = std::numeric_limits<double>::infinity();
    const auto& ord = zeros.ordinates;
    const auto it = std::lower_bound(
        ord.begin(), ord.end(), g.t,
        [](const ZeroOrdinate& z, double t) { return z.gamma < t; });
    if (it != ord.end()) eta = std::min(eta, std::abs(it->gamma - g.t));
    if (it != ord.begin()) eta = std::min(eta, std::abs(std::prev(it)->gamma - g.t));
    const double threshold =
        1.0 / (std::log(std::abs(g.t) + 2.0) * std::log(std::log(std::abs(g.t) + 3.0)));
    return eta >= threshold ? GramClass::star : GramClass::substar;
}

}  // namespace apl
