#pragma once

#include <cstdint>
#include <vector>

namespace apl {

// One critical-line zero ordinate, bracketed by a sign change of Z.
struct ZeroOrdinate {
    std::int64_t index = 0;  // estimated global rank (continuity-anchored)
    double gamma = 0.0;
    double bracket_width = 0.0;
};

// Ordinates found by a scan of [lo, hi]. lo/hi record what was actually
// scanned; coverage tests need them because an empty stretch of list says
// nothing by itself. A scan bottom at or below 10 covers everything under
// the first zero.
struct ZeroList {
    std::vector<ZeroOrdinate> ordinates;
    double lo = 0.0;
    double hi = 0.0;

    bool covers(double a, double b) const {
        return (a >= lo - 1e-9 || lo <= 10.0 + 1e-9) && b <= hi + 1e-9;
    }
};

// Sign-change scan of Z at classical Gram points with adaptive subdivision
// (up to 64 subpoints per Gram interval, deepened to 256 before giving up).
// The count over (t1, t2] is validated within +-2 against the counting
// main term (t/2pi) ln(t/2pi e) + 7/8; MissingZeroError on failure. Each
// zero is refined by bisection to a 1e-8 bracket.
// Preconditions: 10 <= t1 < t2 <= 1e7.
ZeroList find_zeros(double t1, double t2);

// eta_t = min_gamma |t - gamma|. The list must cover [t-2, t+2]
// (CoverageError otherwise). Returns +infinity when the covered window
// holds no zero at all.
double eta(double t, const ZeroList& zeros);

}  // namespace apl
