#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "apointlab/zeros.hpp"

namespace apl {

// Ordinate t solving theta(t) + phi = pi n. residual is evaluated in
// extended precision at the stored double t; seed_gap is the distance to
// the closed-form Lambert-W seed.
struct ShiftedGramPoint {
    std::int64_t n = 0;
    double phi = 0.0;
    double t = 0.0;
    double residual = 0.0;
    double seed_gap = 0.0;
};

// Phase of a in (-pi, pi]; a = 0 has no phase and throws.
double phase_of(std::complex<double> a);

// Closed-form seed 2 pi exp(1 + W(n/e + 1/(8e) - phi/(pi e))). Throws
// std::domain_error when the W argument is negative.
double shifted_gram_seed(std::int64_t n, double phi);

// Newton refinement from the seed; residual <= 1e-9 (bisection fallback,
// then ConvergenceError). Requires seed >= 10.
ShiftedGramPoint shifted_gram(std::int64_t n, double phi);

// All shifted Gram points with t1 < t <= t2: exactly the integer indices in
// (A(t1), A(t2)], A(t) = (theta(t) + phi)/pi. 1e3 <= t1 < t2 <= 1e7.
std::vector<ShiftedGramPoint> grams_in_range(double t1, double t2, double phi);

// Max over pairs (all adjacent ones plus a fixed-seed sample of distant
// ones) of |(g_l - g_m) ln T / (2 pi (l - m)) - 1|. Points must share phi
// and lie in (T, 2T].
double spacing_check(std::span<const ShiftedGramPoint> points, double T);

enum class GramClass { star, substar };

// star iff min distance to a zero ordinate >= 1/(ln(t+2) ln ln(t+3)).
// The zero list must cover [t-1, t+1].
GramClass classify_gram(const ShiftedGramPoint& g, const ZeroList& zeros);

namespace detail {
// Gram index function A(t) = (theta(t) + phi)/pi in extended precision.
long double gram_index(long double t, double phi);
}  // namespace detail

}  // namespace apl
