#include "apointlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "apointlab/errors.hpp"
#include "apointlab/gram.hpp"
#include "apointlab/parallel.hpp"
#include "apointlab/special.hpp"

namespace apl {

namespace {

constexpr double kPi = 3.14159265358979323846;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// bias-free bounded draw; written out so outputs do not depend on the
// standard library's distribution internals
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= lim);
    return v % n;
}

// Floyd's sampling: k distinct values from [lo, lo + n)
std::vector<std::int64_t> sample_indices(std::int64_t lo, std::int64_t n,
                                         std::int64_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::unordered_set<std::int64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (std::int64_t j = n - k; j < n; ++j) {
        const auto r = static_cast<std::int64_t>(bounded(rng, std::uint64_t(j + 1)));
        if (!chosen.insert(lo + r).second) chosen.insert(lo + j);
    }
    std::vector<std::int64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

double ks_to_normal(const std::vector<double>& sorted) {
    const double n = double(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double c = normal_cdf(sorted[i]);
        d = std::max(d, std::max(double(i + 1) / n - c, c - double(i) / n));
    }
    return d;
}

template <typename F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb,
               double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol)
        return left + right + diff / 15.0;
    return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    if (a >= b) return 0.0;
    const double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), tol, 28);
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

double moment_quadrature(int m, double T, std::size_t n_primes,
                         const PrimeTable& table, double panel_width) {
    const auto panels = static_cast<std::int64_t>(std::ceil(T / panel_width));
    const double w = T / double(panels);
    const std::int64_t block = 4096;
    const auto n_blocks = static_cast<std::size_t>((panels + block - 1) / block);
    std::vector<double> partial(n_blocks, 0.0);
    parallel_for(n_blocks, [&](std::size_t b) {
        const std::int64_t first = std::int64_t(b) * block;
        const std::int64_t last = std::min(panels, first + block);
        double acc = 0.0;
        for (std::int64_t p = first; p < last; ++p) {
            const double a = w * double(p);
            for (int q = 0; q < 8; ++q) {
                const double t = a + 0.5 * w * (1.0 + kGlNode[q]);
                double s = 0.0;
                for (std::size_t i = 0; i < n_primes; ++i)
                    s += std::cos(t * table.logs[i]) * table.inv_sqrt[i];
                acc += kGlWeight[q] * 0.5 * w * std::pow(s, m);
            }
        }
        partial[b] = acc;
    });
    // fixed-order reduction keeps the value independent of the worker count
    double total = 0.0;
    for (double v : partial) total += v;
    return total / T;
}

}  // namespace

DistSummary dist_log_zeta(double T, double phi, std::int64_t sample_cap,
                          std::uint64_t seed) {
    return dist_log_zeta_detailed(T, phi, sample_cap, seed).summary;
}

DistDetailed dist_log_zeta_detailed(double T, double phi,
                                    std::int64_t sample_cap,
                                    std::uint64_t seed) {
    if (!(T >= 1e4 && T <= 5e6))
        throw std::invalid_argument("dist_log_zeta: need 1e4 <= T <= 5e6");
    if (sample_cap < 1000)
        throw std::invalid_argument("dist_log_zeta: sample_cap < 1e3");

    const auto n1 = static_cast<std::int64_t>(
        std::floor(double(detail::gram_index(T, phi))));
    const auto n2 = static_cast<std::int64_t>(
        std::floor(double(detail::gram_index(2.0 * T, phi))));
    const std::int64_t m = n2 - n1;

    std::vector<std::int64_t> indices;
    if (m <= sample_cap) {
        indices.resize(static_cast<std::size_t>(m));
        std::iota(indices.begin(), indices.end(), n1 + 1);
    } else {
        indices = sample_indices(n1 + 1, m, sample_cap, seed);
    }

    std::vector<ShiftedGramPoint> points(indices.size());
    parallel_for(indices.size(), [&](std::size_t i) {
        points[i] = shifted_gram(indices[i], phi);
    });
    std::erase_if(points, [&](const ShiftedGramPoint& g) {
        return !(g.t > T && g.t <= 2.0 * T);
    });

    // zero coverage: merge the per-point windows, then scan each merged run
    struct Window {
        double lo, hi;
        std::size_t first_point;
    };
    std::vector<Window> windows;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double lo = points[i].t - 1.5, hi = points[i].t + 1.5;
        if (!windows.empty() && lo <= windows.back().hi + 0.5) {
            windows.back().hi = hi;
        } else {
            windows.push_back({lo, hi, i});
        }
    }
    // outer parallelism: each merged run is a handful of Gram intervals, so
    // the find_zeros-internal parallel_for degenerates to serial inside
    std::vector<ZeroList> zero_runs(windows.size());
    parallel_for(windows.size(), [&](std::size_t w) {
        zero_runs[w] = find_zeros(windows[w].lo, windows[w].hi);
    });

    const double psi = 0.5 * std::log(std::log(T));
    const double norm = 1.0 / std::sqrt(psi);

    std::vector<double> values;
    values.reserve(points.size());
    std::vector<double> raw(points.size(),
                            std::numeric_limits<double>::quiet_NaN());
    std::vector<std::size_t> point_window(points.size());
    {
        std::size_t w = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            while (w + 1 < windows.size() && windows[w + 1].first_point <= i) ++w;
            point_window[i] = w;
        }
    }
    std::vector<char> keep(points.size(), 0);
    parallel_for(points.size(), [&](std::size_t i) {
        const auto& zl = zero_runs[point_window[i]];
        if (classify_gram(points[i], zl) == GramClass::star) {
            keep[i] = 1;
            raw[i] = std::log(std::abs(hardy_z(points[i].t))) * norm;
        }
    });
    DistDetailed det;
    std::int64_t dropped = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (keep[i]) {
            values.push_back(raw[i]);
            det.points.push_back({points[i].n, points[i].t,
                                  raw[i] * std::sqrt(psi), raw[i]});
        } else {
            ++dropped;
        }
    }
    std::sort(values.begin(), values.end());

    DistSummary out;
    out.T = T;
    out.phi = phi;
    out.seed = seed;
    out.sample_count = static_cast<std::int64_t>(values.size());
    out.dropped_fraction =
        points.empty() ? 0.0 : double(dropped) / double(points.size());
    out.ks_distance = ks_to_normal(values);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= std::max<std::size_t>(values.size(), 1);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= std::max<std::size_t>(values.size(), 1);
    out.mean = mean;
    out.variance = var;
    out.values = std::move(values);
    det.summary = std::move(out);
    return det;
}

std::complex<double> char_fn_empirical(double u, const DistSummary& dist) {
    if (dist.values.empty())
        throw std::invalid_argument("char_fn_empirical: empty sample");
    double re = 0.0, im = 0.0;
    for (double v : dist.values) {
        re += std::cos(u * v);
        im += std::sin(u * v);
    }
    const double n = double(dist.values.size());
    return {re / n, im / n};
}

double char_fn_model(double u, double Y, double psi, const PrimeTable& table) {
    if (psi <= 0.0) throw std::domain_error("char_fn_model: Psi <= 0");
    if (double(table.limit) < Y)
        throw std::invalid_argument("char_fn_model: table does not cover Y");
    const std::size_t n = table.upper_index(Y);
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        prod *= bessel_j0(u * table.inv_sqrt[i] / std::sqrt(psi));
    return prod;
}

std::vector<CharFnSample> char_fn_profile(const DistSummary& dist,
                                          const std::vector<double>& us,
                                          double Y, const PrimeTable& table) {
    const double psi = 0.5 * std::log(std::log(dist.T));
    std::vector<CharFnSample> out;
    out.reserve(us.size());
    for (double u : us) {
        CharFnSample s;
        s.u = u;
        s.empirical = char_fn_empirical(u, dist);
        s.model_j0 = char_fn_model(u, Y, psi, table);
        s.gaussian = std::exp(-0.5 * u * u);
        out.push_back(s);
    }
    return out;
}

double random_model_moment_exact(int m, double Y, const PrimeTable& table) {
    if (m < 0 || m > 8)
        throw std::invalid_argument("random_model_moment_exact: need 0 <= m <= 8");
    if (double(table.limit) < Y)
        throw std::invalid_argument("random_model_moment_exact: table too small");
    const std::size_t n = table.upper_index(Y);
    if (n > 10000)
        throw std::invalid_argument("random_model_moment_exact: pi(Y) > 1e4");
    if (m == 0) return 1.0;

    // E[(sum_p X_p)^m] = m! [x^m] prod_p M_p(x), with per-prime exponential
    // moment series M_p(x) = sum_j binom(2j,j)/4^j (x/sqrt p)^{2j}/(2j)!.
    // (E cos^k vanishes for odd k, equals binom(k,k/2)/2^k for even k.)
    std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
    std::vector<double> g(static_cast<std::size_t>(m) + 1, 0.0);
    std::vector<double> next(static_cast<std::size_t>(m) + 1, 0.0);
    c[0] = 1.0;
    double fact2j[5] = {1.0, 2.0, 24.0, 720.0, 40320.0};
    double binom_over[5];
    for (int j = 0; j <= 4; ++j) {
        double b = 1.0;  // binom(2j, j)
        for (int i = 1; i <= j; ++i) b = b * double(j + i) / double(i);
        binom_over[j] = b / std::pow(4.0, j) / fact2j[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(g.begin(), g.end(), 0.0);
        const double p = double(table.primes[i]);
        double pj = 1.0;
        for (int j = 0; 2 * j <= m; ++j) {
            g[static_cast<std::size_t>(2 * j)] = binom_over[j] / pj;
            pj *= p;
        }
        std::fill(next.begin(), next.end(), 0.0);
        for (int x = 0; x <= m; ++x) {
            if (c[static_cast<std::size_t>(x)] == 0.0) continue;
            for (int y = 0; x + y <= m; y += 2)
                next[static_cast<std::size_t>(x + y)] +=
                    c[static_cast<std::size_t>(x)] * g[static_cast<std::size_t>(y)];
        }
        std::swap(c, next);
    }
    double mfact = 1.0;
    for (int i = 2; i <= m; ++i) mfact *= double(i);
    return mfact * c[static_cast<std::size_t>(m)];
}

double time_average_moment(int m, double Y, double T, const PrimeTable& table) {
    if (m < 0 || m > 6)
        throw std::invalid_argument("time_average_moment: need 0 <= m <= 6");
    if (Y > 1e3) throw std::invalid_argument("time_average_moment: Y > 1e3");
    if (T > 1e6) throw std::invalid_argument("time_average_moment: T > 1e6");
    if (double(table.limit) < Y)
        throw std::invalid_argument("time_average_moment: table too small");
    if (m == 0) return 1.0;

    const std::size_t n = table.upper_index(Y);
    const double fastest = std::max(1.0, double(m) * std::log(Y));
    const double width = kPi / (3.0 * fastest);
    const double coarse = moment_quadrature(m, T, n, table, width);
    const double fine = moment_quadrature(m, T, n, table, 0.5 * width);
    if (std::abs(fine - coarse) > 1e-6 * std::max(1.0, std::abs(fine)))
        throw ConvergenceError("time_average_moment: quadrature not converged");
    return fine;
}

ExpSumResult exp_sum_over_grams(double x, double T, double phi) {
    if (!(x > 0.0) || x == 1.0)
        throw std::domain_error(
            "exp_sum_over_grams: requires positive x not equal to one");
    if (!(T >= 1e3 && T <= 1e5))
        throw std::invalid_argument("exp_sum_over_grams: need 1e3 <= T <= 1e5");
    const double lx = std::log(x);
    const auto points = grams_in_range(T, 2.0 * T, phi);
    double re = 0.0, im = 0.0;
    for (const auto& g : points) {
        re += std::cos(g.t * lx);
        im += std::sin(g.t * lx);
    }
    ExpSumResult out;
    out.sum = {re, im};
    const double lT = std::log(T);
    out.bound = std::sqrt(T * std::abs(lx) / lT) +
                std::sqrt(T * lT * lT * lT / std::abs(lx)) + std::abs(lx);
    out.terms = static_cast<std::int64_t>(points.size());
    return out;
}

PairCorrStat pair_correlation(const ZeroList& zeros, double T, double alpha,
                              double beta) {
    if (!(alpha < beta))
        throw std::invalid_argument("pair_correlation: need alpha < beta");
    if (!zeros.covers(10.0, T))
        throw CoverageError("pair_correlation: zeros must cover (0, T]");

    std::vector<double> g;
    g.reserve(zeros.ordinates.size());
    for (const auto& z : zeros.ordinates)
        if (z.gamma <= T) g.push_back(z.gamma);

    const double lT = std::log(T);
    const double wlo = 2.0 * kPi * alpha / lT;
    const double whi = 2.0 * kPi * beta / lT;
    // ordered pairs (gamma, gamma') with gamma - gamma' in [wlo, whi];
    // diagonal pairs enter exactly when 0 is in the window
    std::int64_t count = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto lo =
            std::lower_bound(g.begin(), g.end(), g[i] - whi) - g.begin();
        const auto hi =
            std::upper_bound(g.begin(), g.end(), g[i] - wlo) - g.begin();
        count += hi - lo;
    }

    PairCorrStat out;
    out.T = T;
    out.alpha = alpha;
    out.beta = beta;
    out.normalized_count = g.empty() ? 0.0 : double(count) / double(g.size());
    auto gue_density = [](double x) {
        if (x == 0.0) return 0.0;
        const double s = std::sin(kPi * x) / (kPi * x);
        return 1.0 - s * s;
    };
    out.gue_value = integrate(gue_density, alpha, beta, 1e-10) +
                    ((alpha <= 0.0 && 0.0 <= beta) ? 1.0 : 0.0);
    return out;
}

HypSStat hypothesis_s_stat(const ZeroList& zeros, double T, int n,
                           double epsilon) {
    if (n < 1) throw std::invalid_argument("hypothesis_s_stat: n < 1");
    if (epsilon < 0.0)
        throw std::invalid_argument("hypothesis_s_stat: epsilon < 0");
    if (!zeros.covers(T, 2.0 * T))
        throw CoverageError("hypothesis_s_stat: zeros must cover (T, 2T]");

    std::vector<double> g;
    for (const auto& z : zeros.ordinates)
        if (z.gamma > T && z.gamma <= 2.0 * T) g.push_back(z.gamma);

    const double lT = std::log(T);
    const double lo = 2.0 * kPi * (double(n) - epsilon) / lT;
    const double hi = 2.0 * kPi * (double(n) + epsilon) / lT;
    std::int64_t count = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        // strict inequality: gamma - gamma' in (lo, hi)
        const auto a =
            std::upper_bound(g.begin(), g.end(), g[i] - hi) - g.begin();
        const auto b =
            std::lower_bound(g.begin(), g.end(), g[i] - lo) - g.begin();
        if (b > a) count += b - a;
    }
    HypSStat out;
    out.T = T;
    out.n = n;
    out.epsilon = epsilon;
    out.normalized = double(count) / (T * lT);
    return out;
}

}  // namespace apl
