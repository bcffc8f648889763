#pragma once

#include <optional>
#include <span>
#include <vector>

#include "apointlab/gram.hpp"
#include "apointlab/primes.hpp"
#include "apointlab/zeros.hpp"

namespace apl {

// A zeta zero as (beta, gamma). Scans at these heights put every beta at
// 1/2; synthetic off-line zeros are injected by tests to exercise the
// general branches.
struct ZetaZero {
    double beta = 0.5;
    double gamma = 0.0;
};

// Non-owning view of a zero set plus the height range it is known to cover.
struct ZeroView {
    std::span<const ZetaZero> zeros;
    double lo = 0.0;
    double hi = 0.0;

    bool covers(double a, double b) const {
        return (a >= lo - 1e-9 || lo <= 10.0 + 1e-9) && b <= hi + 1e-9;
    }
};

// Materialize a ZeroList (all beta = 1/2) for use as a ZeroView.
std::vector<ZetaZero> to_zeta_zeros(const ZeroList& list);

// The smoothing weight: 1 up to X, (ln^2(X^3/n) - 2 ln^2(X^2/n))/(2 ln^2 X)
// on (X, X^2], ln^2(X^3/n)/(2 ln^2 X) on (X^2, X^3], 0 above.
double weight_w(double n, double X);

// sigma_{X,t} = 1/2 + 2 max(beta - 1/2, 2/ln X), max over zeros with
// |t - gamma| <= X^{3|beta - 1/2|}/ln X. Equals 1/2 + 4/ln X when every
// nearby zero sits on the line.
double sigma_xt(double t, double X, const ZeroView& zeros);

// F(t;X) = (X^{(1/2-sigma)/2}/ln X + (sigma-1/2)) *
//          ((sigma-1/2) ln X + ln^+ (1/(eta_t ln X))).
// nullopt when t is a zero ordinate (eta_t = 0): the value saturates and
// the point is excluded from averages.
std::optional<double> f_term(double t, double X, const ZeroView& zeros);

// sum_{p <= X^3} cos(t ln p)/sqrt(p), ascending p (fixed order for
// bit-reproducibility). Table must cover X^3.
double prime_sum(double t, double X, const PrimeTable& table);

struct ErrorTerms {
    double E1 = 0.0;  // | sum_{p^r <= X^3} ln p * n^{-sigma - it} w_X(n) |
    double E2 = 0.0;  // | sum_{p <= X^3} (1 - w_X(p)) p^{-1/2 - it} |
    double E3 = 0.0;  // | sum_{p <= X^{3/2}} w_X(p^2) p^{-1 - 2it} |
    double dirichlet_integral = 0.0;
};

// E1 needs sigma_{X,t}; callers pass the value they computed. The integral
// uses composite Gauss-Legendre over `panels` panels on [1/2, 1/2 + 40/lnX]
// plus an analytic tail bound; doubling panels moves the value < 1e-6
// relative (the integrand is smooth).
ErrorTerms error_terms(double t, double X, double sigma, const PrimeTable& table,
                       int panels = 16);

struct ApproxDecomposition {
    double t = 0.0;
    double X = 0.0;
    double prime_sum = 0.0;
    double sigma_xt = 0.0;
    double F = 0.0;
    bool f_saturated = false;  // t within 1e-8 of a zero ordinate
    double E1 = 0.0, E2 = 0.0, E3 = 0.0;
    double dirichlet_integral = 0.0;
    double lhs_half = 0.0;   // log|zeta(1/2 + it)|
    double lhs_sigma = 0.0;  // log|zeta(sigma_{X,t} + it)|
    double residual_half = 0.0;
    double residual_sigma = 0.0;
    double budget_half = 0.0;   // F ln t + E2 + E3 + F X^{sigma-1/2} integral
    double budget_sigma = 0.0;  // same shape with the sigma-line prefactors
};

ApproxDecomposition decompose(double t, double X, const ZeroView& zeros,
                              const PrimeTable& table);

struct HoughBound {
    double lhs = 0.0;     // log|zeta(1/2 + ig)|
    double rhs = 0.0;     // log|zeta(sigma_{X,g} + ig)| + (sigma-1/2)/2 ln g
    double margin = 0.0;  // rhs - lhs; the O(1) constant is set to zero
};

// Requires g.t > 10 and eta > 1e-6 (NumericalError when saturated).
HoughBound hough_check(const ShiftedGramPoint& g, double X,
                       const ZeroView& zeros);

}  // namespace apl
