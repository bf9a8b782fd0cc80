#pragma once

// internal helpers shared by the propagators and solvers

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "rkb/errors.hpp"

namespace rkb::detail {

// toms748 to full double precision on a sign-changing bracket
template <class F>
double refine_root(F&& fn, double a, double b, double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    std::uintmax_t it = 200;
    auto r = boost::math::tools::toms748_solve(fn, a, b, fa, fb,
                                               boost::math::tools::eps_tolerance<double>(52), it);
    return 0.5 * (r.first + r.second);
}

template <class F>
double refine_root(F&& fn, double a, double b) {
    return refine_root(fn, a, b, fn(a), fn(b));
}

// first sample i·dt (i ≥ 1) where fn ≤ 0; fn is positive just after t = 0
template <class F>
std::optional<double> first_crossing(F&& fn, double t_max, int steps) {
    const double dt = t_max / steps;
    double prev_t = 0.0, prev_f = 0.0;
    for (int i = 1; i <= steps; ++i) {
        const double t = dt * i;
        const double f = fn(t);
        if (f <= 0.0) {
            if (i == 1) {
                // crossing inside the first step: rescan finely
                const double dt2 = dt / 64.0;
                double pt = 0.0, pf = 0.0;
                for (int j = 1; j <= 64; ++j) {
                    const double t2 = dt2 * j;
                    const double f2 = fn(t2);
                    if (f2 <= 0.0) {
                        if (j == 1) return std::nullopt;
                        return refine_root(fn, pt, t2, pf, f2);
                    }
                    pt = t2;
                    pf = f2;
                }
                return std::nullopt;
            }
            return refine_root(fn, prev_t, t, prev_f, f);
        }
        prev_t = t;
        prev_f = f;
    }
    return std::nullopt;
}

// expand [x0-d, x0+d] inside [lo, hi] until fn changes sign; returns the bracket
template <class F>
std::optional<std::pair<double, double>> expand_bracket(F&& fn, double x0, double d, double lo, double hi,
                                                        int max_steps = 40) {
    double a = std::max(lo, x0 - d), b = std::min(hi, x0 + d);
    double fa = fn(a), fb = fn(b);
    for (int i = 0; i < max_steps; ++i) {
        if (fa == 0.0 || fb == 0.0 || (fa < 0.0) != (fb < 0.0)) return std::make_pair(a, b);
        if (a <= lo && b >= hi) return std::nullopt;
        d *= 1.6;
        if (a > lo) {
            a = std::max(lo, x0 - d);
            fa = fn(a);
        }
        if (b < hi) {
            b = std::min(hi, x0 + d);
            fb = fn(b);
        }
    }
    return std::nullopt;
}

inline double wrap_pi(double a) {
    return std::remainder(a, 2.0 * 3.14159265358979323846);
}

}  // namespace rkb::detail
