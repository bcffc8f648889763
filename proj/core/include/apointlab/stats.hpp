#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "apointlab/primes.hpp"
#include "apointlab/zeros.hpp"

namespace apl {

// Empirical distribution of log|zeta(1/2 + ig)| Psi^{-1/2} over star Gram
// points sampled from (T, 2T], Psi = (1/2) ln ln T.
struct DistSummary {
    double T = 0.0;
    double phi = 0.0;
    std::int64_t sample_count = 0;
    std::vector<double> values;  // sorted normalized values
    double ks_distance = 0.0;    // vs the standard normal CDF
    double mean = 0.0;
    double variance = 0.0;
    double dropped_fraction = 0.0;  // substar points excluded (g != gamma guard)
    std::uint64_t seed = 0;
};

// Seeded uniform sample without replacement of Gram indices in (T, 2T],
// capped at sample_cap. 1e4 <= T <= 5e6, sample_cap >= 1e3.
DistSummary dist_log_zeta(double T, double phi, std::int64_t sample_cap,
                          std::uint64_t seed);

// Per-point records (kept star points, ascending index) for file output.
struct DistPoint {
    std::int64_t index = 0;
    double t = 0.0;
    double log_abs_zeta = 0.0;
    double normalized = 0.0;
};

struct DistDetailed {
    DistSummary summary;
    std::vector<DistPoint> points;
};

DistDetailed dist_log_zeta_detailed(double T, double phi,
                                    std::int64_t sample_cap,
                                    std::uint64_t seed);

// (1/N) sum_k exp(i u v_k) over the sample values.
std::complex<double> char_fn_empirical(double u, const DistSummary& dist);

// prod_{p <= Y} J0(u / sqrt(p Psi)).
double char_fn_model(double u, double Y, double psi, const PrimeTable& table);

struct CharFnSample {
    double u = 0.0;
    std::complex<double> empirical;
    double model_j0 = 0.0;
    double gaussian = 0.0;  // e^{-u^2/2}
};

std::vector<CharFnSample> char_fn_profile(const DistSummary& dist,
                                          const std::vector<double>& us,
                                          double Y, const PrimeTable& table);

// Exact value of int_{[0,1]^{pi(Y)}} (sum_{p <= Y} cos(2 pi theta_p)/sqrt p)^m
// by per-prime moment composition (dynamic programming over primes).
// Exactly zero for odd m. 0 <= m <= 8, pi(Y) <= 1e4.
double random_model_moment_exact(int m, double Y, const PrimeTable& table);

// (1/T) int_0^T (sum_{p <= Y} cos(t ln p)/sqrt p)^m dt by composite
// Gauss-Legendre with panel width <= pi/(3 m ln Y); self-convergence under
// panel halving is enforced to 1e-6 relative. m <= 6, Y <= 1e3, T <= 1e6.
double time_average_moment(int m, double Y, double T, const PrimeTable& table);

struct ExpSumResult {
    std::complex<double> sum;  // sum_{T < g <= 2T} x^{ig}
    double bound = 0.0;        // sqrt(T|ln x|/ln T) + sqrt(T ln^3 T/|ln x|) + |ln x|
    std::int64_t terms = 0;
};

// Brute-force oscillatory sum over refined shifted Gram points.
// x > 0, x != 1 (the sum degenerates to a point count at x = 1), T <= 1e5.
ExpSumResult exp_sum_over_grams(double x, double T, double phi);

struct PairCorrStat {
    double T = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double normalized_count = 0.0;  // (1/N(T)) #{gamma - gamma' in window}
    double gue_value = 0.0;  // int_alpha^beta 1 - (sin pi x/pi x)^2 dx + 1_{[a,b]}(0)
};

// Montgomery pair-correlation statistic; zeros must cover (0, T].
PairCorrStat pair_correlation(const ZeroList& zeros, double T, double alpha,
                              double beta);

struct HypSStat {
    double T = 0.0;
    int n = 0;
    double epsilon = 0.0;
    double normalized = 0.0;  // pair count / (T ln T)
};

// #{gamma, gamma' in (T, 2T] : |(gamma - gamma') ln T / 2pi - n| < eps}
// normalized by T ln T; two-pointer sweep over the sorted ordinates.
HypSStat hypothesis_s_stat(const ZeroList& zeros, double T, int n,
                           double epsilon);

}  // namespace apl
