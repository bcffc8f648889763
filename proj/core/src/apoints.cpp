#include "apointlab/apoints.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apointlab/errors.hpp"
#include "apointlab/parallel.hpp"
#include "apointlab/special.hpp"

namespace apl {

namespace {

constexpr double kPi = 3.14159265358979323846;
using Cx = std::complex<double>;

struct ArgWalker {
    Cx a;
    double total = 0.0;  // accumulated arg change
    Cx prev;
    bool started = false;

    Cx value(Cx s) const { return zeta(s) - a; }

    // advance to f(s_next), subdividing so each hop subtends < pi/2
    void advance(Cx s_prev, Cx s_next, Cx f_prev, Cx f_next, int depth) {
        if (std::abs(f_next) < 1e-6 || std::abs(f_prev) < 1e-6)
            throw NumericalError("winding: contour too close to an a-point");
        const double da = std::arg(f_next / f_prev);
        if (std::abs(da) < kPi / 2.0) {
            total += da;
            return;
        }
        if (depth > 48)
            throw NumericalError("winding: subdivision depth exhausted");
        const Cx mid = 0.5 * (s_prev + s_next);
        const Cx fm = value(mid);
        advance(s_prev, mid, f_prev, fm, depth + 1);
        advance(mid, s_next, fm, f_next, depth + 1);
    }

    void walk_edge(Cx from, Cx to, int coarse) {
        Cx s_prev = from;
        Cx f_prev = value(from);
        for (int i = 1; i <= coarse; ++i) {
            const Cx s = from + (to - from) * (double(i) / coarse);
            const Cx f = value(s);
            advance(s_prev, s, f_prev, f, 0);
            s_prev = s;
            f_prev = f;
        }
    }
};

double apoint_main_term(Cx a, double T) {
    double m = T / (2.0 * kPi) * std::log(T / (2.0 * kPi)) - T / (2.0 * kPi);
    if (std::abs(a - Cx{1.0, 0.0}) < 1e-12)
        m -= std::log(2.0) * T / (2.0 * kPi);
    return m;
}

double right_edge_for(Cx a) { return std::abs(a - Cx{1.0, 0.0}) <= 0.1 ? 12.0 : 6.0; }

struct NewtonRoot {
    Cx s;
    double residual;
    bool ok;
};

NewtonRoot newton_apoint(Cx a, Cx seed) {
    Cx s = seed;
    for (int it = 0; it < 30; ++it) {
        if (!(s.real() > -4.0 && s.real() < 9.5 && s.imag() > 0.2))
            return {s, 0.0, false};
        const auto [z, dz] = zeta_with_derivative(s);
        const Cx f = z - a;
        if (std::abs(dz) < 1e-14) return {s, 0.0, false};
        const Cx step = f / dz;
        if (std::abs(step) > 5.0) return {s, 0.0, false};
        s -= step;
        if (std::abs(step) < 1e-11) break;
    }
    const double res = std::abs(zeta(s) - a);
    return {s, res, res <= 1e-7};
}

}  // namespace

namespace detail {

std::int64_t winding_count(Cx a, double sl, double sr, double tb, double tt,
                           int refine_mult) {
    ArgWalker w;
    w.a = a;
    const Cx c1{sr, tb}, c2{sr, tt}, c3{sl, tt}, c4{sl, tb};
    // coarse step ~0.5 in t, ~0.25 in sigma; the walker refines adaptively
    const int vert = std::max(8, int((tt - tb) * 2.0)) * refine_mult;
    const int horiz = std::max(8, int((sr - sl) * 4.0)) * refine_mult;
    w.walk_edge(c1, c2, vert);
    w.walk_edge(c2, c3, horiz);
    w.walk_edge(c3, c4, vert);
    w.walk_edge(c4, c1, horiz);
    const double turns = w.total / (2.0 * kPi);
    const auto n = std::llround(turns);
    if (std::abs(turns - double(n)) > 0.05)
        throw NumericalError("winding: accumulated angle not near a multiple of 2 pi");
    return n;
}

}  // namespace detail

APointCount count_apoints(Cx a, double T) {
    if (a == Cx{0.0, 0.0}) throw std::invalid_argument("count_apoints: a = 0");
    if (!(T >= 1e2 && T <= 1e4))
        throw std::invalid_argument("count_apoints: need 1e2 <= T <= 1e4");

    APointCount out;
    out.a = a;
    out.T = T;
    const double sr = right_edge_for(a);
    double t_used = T;
    for (int attempt = 0;; ++attempt) {
        try {
            out.count = detail::winding_count(a, -0.5, sr, 1.0, t_used);
            break;
        } catch (const NumericalError&) {
            if (attempt >= 3) throw;
            // a-point hugging the contour: move the lid by one unit and retry
            t_used += 1.0;
            out.notes.push_back("top edge perturbed to t = " +
                                std::to_string(t_used));
        }
    }
    out.t_used = t_used;
    out.main_term = apoint_main_term(a, t_used);
    return out;
}

APointScan find_apoints(Cx a, double t1, double t2) {
    if (a == Cx{0.0, 0.0}) throw std::invalid_argument("find_apoints: a = 0");
    if (!(t1 >= 1.0 && t1 < t2 && t2 <= 1e5))
        throw std::invalid_argument("find_apoints: need 1 <= t1 < t2 <= 1e5");

    const double phi = phase_of(a);

    // seed ordinates: shifted Gram points and their midpoints above t = 18,
    // a fixed lattice below, where the Gram parametrization degenerates
    std::vector<double> gram_ts;
    {
        const double lo = std::max(t1, 18.0);
        if (lo < t2) {
            const double kE = 2.71828182845904523536;
            const auto n_lo = static_cast<std::int64_t>(
                std::floor(double(detail::gram_index(lo, phi))));
            const auto n_hi = static_cast<std::int64_t>(
                std::floor(double(detail::gram_index(t2, phi))));
            for (std::int64_t n = n_lo; n <= n_hi + 1; ++n) {
                const double warg =
                    double(n) / kE + 1.0 / (8.0 * kE) - phi / (kPi * kE);
                if (warg < 0.0) continue;  // below the Gram range; lattice covers it
                double t = 2.0 * kPi * std::exp(1.0 + lambert_w0(warg));
                if (t < 12.0) continue;
                for (int it = 0; it < 3; ++it) {
                    const double f = double(detail::theta_ld(t)) + phi -
                                     kPi * double(n);
                    t -= f / theta_derivative(std::max(10.0, t));
                }
                if (t > t1 - 1.0 && t <= t2 + 1.0) gram_ts.push_back(t);
            }
        }
        std::sort(gram_ts.begin(), gram_ts.end());
    }

    struct SeedPoint {
        Cx s;
        APoint::Seed kind;
    };
    std::vector<SeedPoint> seeds;
    for (double t : gram_ts) seeds.push_back({Cx{0.5, t}, APoint::Seed::gram});
    for (std::size_t i = 0; i + 1 < gram_ts.size(); ++i)
        seeds.push_back(
            {Cx{0.5, 0.5 * (gram_ts[i] + gram_ts[i + 1])}, APoint::Seed::midpoint});
    const double grid_sigmas[] = {0.25, 0.75, 1.5, 3.0};
    for (double sg : grid_sigmas) {
        for (double t : gram_ts) seeds.push_back({Cx{sg, t}, APoint::Seed::grid});
        for (double t = std::max(1.5, t1); t < std::min(t2, 19.0); t += 0.5)
            seeds.push_back({Cx{sg, t}, APoint::Seed::grid});
    }
    if (t1 < 18.0)
        for (double t = std::max(1.5, t1); t < std::min(t2, 19.0); t += 0.5)
            seeds.push_back({Cx{0.5, t}, APoint::Seed::gram});

    std::vector<NewtonRoot> roots(seeds.size());
    std::vector<APoint::Seed> kinds(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        roots[i] = newton_apoint(a, seeds[i].s);
        kinds[i] = seeds[i].kind;
    });

    std::vector<APoint> pts;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        if (!r.ok) continue;
        const double beta = r.s.real(), gamma = r.s.imag();
        if (!(gamma > std::max(t1, 1.0) && gamma <= t2)) continue;
        if (!(beta > 0.0 && beta < 10.0)) continue;
        APoint p;
        p.a = a;
        p.beta = beta;
        p.gamma = gamma;
        p.residual = r.residual;
        p.seed_kind = kinds[i];
        pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end(), [](const APoint& x, const APoint& y) {
        return x.gamma != y.gamma ? x.gamma < y.gamma : x.beta < y.beta;
    });
    // dedup radius 1e-5; root gaps at these heights sit well above 1e-2
    std::vector<APoint> dedup;
    for (const auto& p : pts) {
        bool dup = false;
        for (auto it = dedup.rbegin(); it != dedup.rend(); ++it) {
            if (p.gamma - it->gamma > 1e-5) break;
            if (std::hypot(p.gamma - it->gamma, p.beta - it->beta) <= 1e-5) {
                dup = true;
                break;
            }
        }
        if (!dup) dedup.push_back(p);
    }

    APointScan scan;
    scan.points = std::move(dedup);

    // completeness: argument principle over height-1e3 slabs (every slab up
    // to 1e4; spot checks above, where each contour walk costs seconds)
    std::vector<std::pair<double, double>> slabs;
    for (double w = t1; w < t2; w += 1e3)
        slabs.emplace_back(w, std::min(w + 1e3, t2));
    if (t2 > 1e4 + 1.0 && slabs.size() > 3)
        slabs = {slabs.front(), slabs[slabs.size() / 2], slabs.back()};
    const double sr = right_edge_for(a);
    // completeness is enforced by recursive winding bisection: any box whose
    // argument-principle count exceeds the captured roots is split until
    // small, then micro-seeded
    struct Capturer {
        Cx a;
        double t1, t2;
        APointScan* scan;

        // On a grazing contour the lids move inward, so the certified box
        // stays consistent with the stored point set; the skipped sliver is
        // noted by the caller.
        std::int64_t winding_retry(double sl, double sr, double* w1, double* w2) {
            for (int k = 0;; ++k) {
                try {
                    return detail::winding_count(a, sl, sr, *w1, *w2);
                } catch (const NumericalError&) {
                    if (k >= 4) throw;
                    *w2 -= 0.041;
                    *w1 += 0.037;
                }
            }
        }

        std::int64_t in_box(double sl, double sr, double w1, double w2) const {
            return std::count_if(
                scan->points.begin(), scan->points.end(), [&](const APoint& p) {
                    return p.gamma > w1 && p.gamma <= w2 && p.beta >= sl &&
                           p.beta < sr;
                });
        }

        void add_root(const NewtonRoot& r) {
            if (!r.ok) return;
            const double beta = r.s.real(), gamma = r.s.imag();
            if (!(gamma > std::max(t1, 1.0) && gamma <= t2)) return;
            if (!(beta > 0.0 && beta < 10.0)) return;
            for (const auto& q : scan->points)
                if (std::hypot(gamma - q.gamma, beta - q.beta) <= 1e-5) return;
            APoint p;
            p.a = a;
            p.beta = beta;
            p.gamma = gamma;
            p.residual = r.residual;
            p.seed_kind = APoint::Seed::grid;
            scan->points.push_back(p);
        }

        void capture(double sl, double sr, double w1, double w2, int depth) {
            std::int64_t expected;
            const double w1_in = w1, w2_in = w2;
            try {
                expected = winding_retry(sl, sr, &w1, &w2);
            } catch (const NumericalError&) {
                scan->warnings.push_back("contour kept grazing roots near (" +
                                         std::to_string(w1_in) + ", " +
                                         std::to_string(w2_in) + "]");
                return;
            }
            if (w1 != w1_in || w2 != w2_in)
                scan->warnings.push_back(
                    "certification shrunk to (" + std::to_string(w1) + ", " +
                    std::to_string(w2) + "] inside (" + std::to_string(w1_in) +
                    ", " + std::to_string(w2_in) + "]");
            if (in_box(sl, sr, w1, w2) == expected) return;
            if (depth > 24 ||
                ((w2 - w1) <= 0.75 && (sr - sl) <= 0.5)) {
                // micro-lattice Newton inside the certified box
                std::vector<Cx> seeds;
                for (double t = w1; t <= w2 + 1e-9; t += 0.05)
                    for (double sg = sl; sg < sr + 1e-9; sg += 0.05)
                        seeds.push_back(Cx{std::max(sg, 0.01), t});
                std::vector<NewtonRoot> rs(seeds.size());
                parallel_for(seeds.size(), [&](std::size_t i) {
                    rs[i] = newton_apoint(a, seeds[i]);
                });
                for (const auto& r : rs) add_root(r);
                const auto got = in_box(sl, sr, w1, w2);
                if (got != expected) {
                    scan->warnings.push_back(
                        "capture mismatch in beta [" + std::to_string(sl) +
                        ", " + std::to_string(sr) + "), t (" +
                        std::to_string(w1) + ", " + std::to_string(w2) +
                        "]: found " + std::to_string(got) +
                        ", argument principle says " + std::to_string(expected));
                }
                return;
            }
            if (w2 - w1 >= sr - sl || (w2 - w1) > 0.75) {
                const double m = 0.5 * (w1 + w2);
                capture(sl, sr, w1, m, depth + 1);
                capture(sl, sr, m, w2, depth + 1);
            } else {
                const double m = 0.5 * (sl + sr);
                capture(sl, m, w1, w2, depth + 1);
                capture(m, sr, w1, w2, depth + 1);
            }
        }
    };

    // left edge at 0: the count must match the nontrivial filter beta > 0
    // (a-points do stray into -0.5 < beta < 0 at low heights, but those are
    // trivial by definition and stay out of the scan)
    Capturer cap{a, t1, t2, &scan};
    for (auto [w1, w2] : slabs) cap.capture(0.0, sr, w1, w2, 0);
    std::sort(scan.points.begin(), scan.points.end(),
              [](const APoint& x, const APoint& y) {
                  return x.gamma != y.gamma ? x.gamma < y.gamma
                                            : x.beta < y.beta;
              });
    return scan;
}

bool online_apoint_test(Cx a, const ShiftedGramPoint& g, double tol) {
    if (a == Cx{0.0, 0.0}) throw std::invalid_argument("online_apoint_test: a = 0");
    if (std::abs(g.phi - phase_of(a)) > 1e-9)
        throw std::invalid_argument("online_apoint_test: g does not carry phase(a)");
    return std::abs(std::abs(hardy_z(g.t)) - std::abs(a)) <= tol;
}

}  // namespace apl
