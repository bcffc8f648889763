#include "apointlab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "apointlab/errors.hpp"
#include "apointlab/gram.hpp"
#include "apointlab/parallel.hpp"
#include "apointlab/special.hpp"

namespace apl {

namespace {

constexpr double kPi = 3.14159265358979323846;

double counting_main_term(double t) {
    return t / (2.0 * kPi) * std::log(t / (2.0 * kPi * 2.71828182845904523536)) +
           7.0 / 8.0;
}

// Classical Gram ordinate theta(t) = pi n, loose tolerance: this is only a
// scan grid, the zeros themselves get bisected.
double gram_ordinate(std::int64_t n) {
    constexpr double kE = 2.71828182845904523536;
    const double warg = double(n) / kE + 1.0 / (8.0 * kE);
    // n <= -1 sits under theta's monotone range; clamp the grid at t = 10
    if (warg < 1e-12) return 10.0;
    double t = 2.0 * kPi * std::exp(1.0 + lambert_w0(warg));
    if (t < 10.0) return 10.0;
    for (int it = 0; it < 4; ++it) {
        const double f =
            double(detail::theta_ld(t)) - kPi * double(n);
        t -= f / theta_derivative(std::max(10.0, t));
    }
    return std::max(t, 10.0);
}

double bisect_zero(double a, double b, double za, double zb, double tol,
                   double* width_out) {
    (void)za;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const double zm = hardy_z(mid);
        if ((zm < 0.0) == (zb < 0.0)) {
            b = mid;
            zb = zm;
        } else {
            a = mid;
        }
    }
    *width_out = b - a;
    return 0.5 * (a + b);
}

// All zeros of Z inside [a, b), located by scanning `pts` equispaced
// values and bisecting each sign change.
void scan_interval(double a, double b, int pts, std::vector<ZeroOrdinate>* out) {
    double prev_t = a;
    double prev_z = hardy_z(a);
    for (int i = 1; i <= pts; ++i) {
        const double t = a + (b - a) * double(i) / double(pts);
        const double z = hardy_z(t);
        if ((prev_z < 0.0) != (z < 0.0)) {
            ZeroOrdinate zero;
            double width = 0.0;
            zero.gamma = bisect_zero(prev_t, t, prev_z, z, 1e-8, &width);
            zero.bracket_width = width;
            out->push_back(zero);
        }
        prev_t = t;
        prev_z = z;
    }
}

}  // namespace

ZeroList find_zeros(double t1, double t2) {
    if (!(t1 >= 10.0 && t1 < t2 && t2 <= 1e7))
        throw std::invalid_argument("find_zeros: need 10 <= t1 < t2 <= 1e7");

    // Gram indices whose intervals cover [t1, t2]
    const auto n_lo = static_cast<std::int64_t>(
        std::floor(double(detail::gram_index(t1, 0.0)))) - 1;
    const auto n_hi = static_cast<std::int64_t>(
        std::floor(double(detail::gram_index(t2, 0.0)))) + 1;

    const std::int64_t n_intervals = n_hi - n_lo;
    const std::int64_t chunk = 512;
    const auto n_chunks = static_cast<std::size_t>((n_intervals + chunk - 1) / chunk);
    std::vector<std::vector<ZeroOrdinate>> found(n_chunks);

    auto scan_chunks = [&](int subdivisions) {
        parallel_for(n_chunks, [&](std::size_t c) {
            found[c].clear();
            const std::int64_t first = n_lo + std::int64_t(c) * chunk;
            const std::int64_t last = std::min(n_hi, first + chunk);
            double left = gram_ordinate(first);
            for (std::int64_t n = first; n < last; ++n) {
                const double right = gram_ordinate(n + 1);
                // first pass: ends only; subdivide when the interval
                // disagrees with one-zero-per-interval
                double za = hardy_z(left), zb = hardy_z(right);
                if (subdivisions <= 2 && (za < 0.0) != (zb < 0.0)) {
                    ZeroOrdinate zero;
                    double width = 0.0;
                    zero.gamma = bisect_zero(left, right, za, zb, 1e-8, &width);
                    zero.bracket_width = width;
                    found[c].push_back(zero);
                } else {
                    int pts = (za < 0.0) != (zb < 0.0) ? subdivisions
                                                       : std::max(subdivisions, 8);
                    std::size_t got = found[c].size();
                    scan_interval(left, right, pts, &found[c]);
                    // missed pairs show up as even counts; deepen until the
                    // parity matches the endpoint signs or the cap is hit
                    while (pts < 64) {
                        const std::size_t k = found[c].size() - got;
                        const bool parity_ok =
                            ((k % 2 == 1) == ((za < 0.0) != (zb < 0.0)));
                        if (parity_ok && k > 0) break;
                        if (parity_ok && pts >= 8) break;
                        found[c].resize(got);
                        pts *= 2;
                        scan_interval(left, right, pts, &found[c]);
                    }
                }
                left = right;
            }
        });
    };

    scan_chunks(2);

    auto assemble = [&]() {
        std::vector<ZeroOrdinate> all;
        for (auto& v : found)
            all.insert(all.end(), v.begin(), v.end());
        std::sort(all.begin(), all.end(),
                  [](const ZeroOrdinate& x, const ZeroOrdinate& y) {
                      return x.gamma < y.gamma;
                  });
        std::erase_if(all, [&](const ZeroOrdinate& z) {
            return !(z.gamma > t1 && z.gamma <= t2);
        });
        return all;
    };

    std::vector<ZeroOrdinate> zeros = assemble();
    const double expected = counting_main_term(t2) - counting_main_term(t1);
    if (std::abs(double(zeros.size()) - expected) > 2.0) {
        // deepen everywhere before declaring zeros missing
        for (int pts : {64, 256}) {
            scan_chunks(pts);
            zeros = assemble();
            if (std::abs(double(zeros.size()) - expected) <= 2.0) break;
        }
        if (std::abs(double(zeros.size()) - expected) > 2.0)
            throw MissingZeroError(
                "find_zeros: count off by more than 2 vs the main term after "
                "maximum subdivision");
    }

    // global rank estimate: anchor the first zero at the main term, then
    // count upward
    std::int64_t base = 0;
    if (!zeros.empty())
        base = static_cast<std::int64_t>(
            std::llround(counting_main_term(zeros.front().gamma)));
    for (std::size_t i = 0; i < zeros.size(); ++i)
        zeros[i].index = base + static_cast<std::int64_t>(i);

    ZeroList list;
    list.ordinates = std::move(zeros);
    list.lo = t1;
    list.hi = t2;
    return list;
}

double eta(double t, const ZeroList& zeros) {
    if (!zeros.covers(t - 2.0, t + 2.0))
        throw CoverageError("eta: zero list does not cover [t-2, t+2]");
    const auto& ord = zeros.ordinates;
    if (ord.empty()) return std::numeric_limits<double>::infinity();
    const auto it = std::lower_bound(
        ord.begin(), ord.end(), t,
        [](const ZeroOrdinate& z, double v) { return z.gamma < v; });
    double best = std::numeric_limits<double>::infinity();
    if (it != ord.end()) best = std::min(best, std::abs(it->gamma - t));
    if (it != ord.begin())
        best = std::min(best, std::abs(std::prev(it)->gamma - t));
    return best;
}

}  // namespace apl
