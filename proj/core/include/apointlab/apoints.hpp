#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "apointlab/gram.hpp"

namespace apl {

// A root of zeta(s) = a with provenance of the seed that found it.
struct APoint {
    std::complex<double> a;
    double beta = 0.0;
    double gamma = 0.0;
    double residual = 0.0;  // |zeta(beta + i gamma) - a|
    enum class Seed { gram, midpoint, grid } seed_kind = Seed::gram;
};

struct APointCount {
    std::complex<double> a;
    double T = 0.0;
    double t_used = 0.0;  // T after boundary-proximity perturbations
    std::int64_t count = 0;
    double main_term = 0.0;
    std::vector<std::string> notes;
};

// Winding number of zeta(s) - a around [-0.5, 6] x [1, T] (right edge 12
// when a is within 0.1 of 1), walked adaptively so consecutive boundary
// values subtend < pi/2. main_term = (T/2pi) ln(T/2pi) - T/2pi, minus
// (ln 2) T/2pi when a = 1.  Preconditions: a != 0, 1e2 <= T <= 1e4.
APointCount count_apoints(std::complex<double> a, double T);

struct APointScan {
    std::vector<APoint> points;
    std::vector<std::string> warnings;  // incomplete-capture reports
};

// Complex Newton on zeta(s) - a seeded on the critical line at every
// shifted Gram point of phase phi(a) in range, at midpoints between
// consecutive ones, and on a coarse sigma grid {0.25, 0.75, 1.5, 3}.
// Converged roots (residual <= 1e-7) are deduplicated at distance 1e-5 and
// cross-checked against the argument principle on subranges of height 1e3.
// Preconditions: a != 0, 1 <= t1 < t2 <= 1e5.
APointScan find_apoints(std::complex<double> a, double t1, double t2);

// Necessary condition for an a-point on the critical line at g:
// | |zeta(1/2 + i g)| - |a| | <= tol. g must carry the phase of a.
bool online_apoint_test(std::complex<double> a, const ShiftedGramPoint& g,
                        double tol);

namespace detail {
// Winding number of zeta - a over [sl, sr] x [tb, tt]; throws
// NumericalError when the contour passes within 1e-6 of an a-point.
// refine_mult multiplies the coarse boundary resolution (the count must
// not depend on it).
std::int64_t winding_count(std::complex<double> a, double sl, double sr,
                           double tb, double tt, int refine_mult = 1);
}  // namespace detail

}  // namespace apl
