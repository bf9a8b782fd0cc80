#include "rkb/variational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "detail.hpp"
#include "rkb/errors.hpp"
#include "rkb/inner.hpp"
#include "rkb/outer.hpp"

namespace rkb {

namespace {

const double kSqrt2 = std::sqrt(2.0);

template <class F>
double integrate(F&& fn, double a, double b) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, a, b, 15, 1e-13, &err);
    if (!(err <= 1e-10)) throw QuadratureTolUnmet("quadrature error estimate " + std::to_string(err));
    return v;
}

// ∫|z'|² ds along the arc
double kinetic_integral(const ArcSegment& arc) {
    if (arc.param_end == 0.0) return 0.0;
    if (arc.kind == ArcKind::outer) return integrate([&](double s) { return norm2(arc.velocity(s)); }, 0.0, arc.param_end);
    return integrate([&](double t) { return 2.0 * norm2(arc.lc_wdot(t)); }, 0.0, arc.param_end);
}

}  // namespace

double jacobi_length(const ArcSegment& arc, const PhysParams& p) {
    if (arc.param_end == 0.0) return 0.0;
    if (arc.kind == ArcKind::outer) {
        return integrate(
            [&](double s) {
                const double V = potential_outer_r(norm(arc.position(s)), p);
                return std::sqrt(std::max(0.0, V)) * norm(arc.velocity(s));
            },
            0.0, arc.param_end);
    }
    const double Eh = p.energy_E + p.offset_h;
    // sqrt(V_I)|dz/dτ| = 2|ẇ| sqrt((𝓔+h)|w|² + μ), regular through the collision
    return integrate(
        [&](double t) { return 2.0 * norm(arc.lc_wdot(t)) * std::sqrt(Eh * norm2(arc.lc_w(t)) + p.mass_mu); }, 0.0,
        arc.param_end);
}

double maupertuis_action(const ArcSegment& arc, const PhysParams& p) {
    const double L = jacobi_length(arc, p);
    return 0.5 * L / kSqrt2 * kinetic_integral(arc);
}

namespace {

// inner arc from γ(a) with canonical action I; returns the lifted shift
double inner_lift_from(double a, double I, const PerturbationProfile& profile, const PhysParams& p, Vec2* v_launch) {
    const BoundarySample b = boundary(a, profile);
    const double VI = potential_inner_r(b.radius, p);
    const double vt = kSqrt2 * I / b.speed;
    const Vec2 v = b.tangent_unit * vt - b.normal_out_unit * std::sqrt(std::max(0.0, 2.0 * VI - vt * vt));
    if (v_launch) *v_launch = v;
    const ArcSegment arc = inner_arc_ivp(b.point, v, profile, p);
    if (arc.kind == ArcKind::ejection_collision) return 0.0;
    return arc.swept - kTwoPi * (arc.k > 0.0 ? 1.0 : -1.0);
}

// canonical inner launch action at a reaching ξ1 (lift)
double inner_launch_action(double a, double xi1, double I_guess, const PerturbationProfile& profile,
                           const PhysParams& p) {
    const BoundarySample b = boundary(a, profile);
    const double bound = b.speed * std::sqrt(potential_inner_r(b.radius, p)) * (1.0 - 1e-9);
    auto F = [&](double I) { return a + inner_lift_from(a, I, profile, p, nullptr) - xi1; };
    const auto br = detail::expand_bracket(F, I_guess, 1e-4 * (std::abs(I_guess) + 1.0), -bound, bound);
    if (!br) throw NoIntermediatePoint("inner fixed-end arc not found");
    return detail::refine_root(F, br->first, br->second);
}

double outer_arrival_action(double xi0, double b, const PerturbationProfile& profile, const PhysParams& p) {
    const ArcSegment arc = outer_arc_fixed_ends(xi0, b, profile, p);
    const BoundarySample bb = boundary(xi0 + arc.swept, profile);
    return canonical_action(arc.end_velocity(), bb);
}

}  // namespace

MapStep solve_link(double xi0, double xi1, const PerturbationProfile& profile, const PhysParams& p,
                   std::optional<double> action_hint) {
    const double target = xi1 - xi0;
    const double hint = action_hint.value_or(0.0);
    double I_seed = 0.0;
    try {
        I_seed = theta_bar_inverse(target, p, hint);
    } catch (const RangeEmpty&) {
        if (profile.is_circle() || !action_hint) throw NoIntermediatePoint("no circular link for this shift");
        I_seed = hint;
    }
    if (profile.is_circle()) return return_map_step(make_state(xi0, I_seed, profile, p), profile, p);

    const double bound = action_bound(xi0, profile, p) * (1.0 - 1e-9);
    double lo = -bound, hi = bound;
    for (const auto& br : monotone_branches(p)) {
        if (I_seed >= br[0] && I_seed <= br[1]) {
            const double pad = 0.05 * p.action_bound_Ic;
            lo = std::max(lo, br[0] - pad);
            hi = std::min(hi, br[1] + pad);
        }
    }
    auto F = [&](double I) { return return_map(make_state(xi0, I, profile, p), profile, p, MapMethod::numeric).xi - xi1; };
    const auto br = detail::expand_bracket(F, I_seed, 1e-3 * p.action_bound_Ic, lo, hi);
    if (!br) throw NoIntermediatePoint("composite shooting found no bracket for the launch action");
    const double I0 = detail::refine_root(F, br->first, br->second);
    return return_map_step(make_state(xi0, I0, profile, p), profile, p);
}

GeneratingEval generating_function(double xi0, double xi1, const PerturbationProfile& profile, const PhysParams& p,
                                   const GeneratingOptions& opt) {
    GeneratingEval g;
    g.step = solve_link(xi0, xi1, profile, p, opt.action_hint);
    const MapStep& st = g.step;
    g.S_value = jacobi_length(st.outer, p) + jacobi_length(st.inner, p);
    g.xi_mid = st.mid.xi;
    g.action_I0 = canonical_action(st.outer.v0, boundary(xi0, profile));
    g.action_I1 = st.next.action_I;

    const BoundarySample bm = boundary(st.mid.xi, profile);
    g.stationarity = canonical_action(st.outer.end_velocity(), bm) - canonical_action(st.inner.v0, bm);

    {
        const double h = 1e-6 * p.action_bound_Ic;
        const auto up = return_map(make_state(xi0, g.action_I0 + h, profile, p), profile, p, MapMethod::numeric);
        const auto dn = return_map(make_state(xi0, g.action_I0 - h, profile, p), profile, p, MapMethod::numeric);
        g.nondeg_twist = (up.xi - dn.xi) / (2.0 * h);
    }

    if (opt.finite_differences) {
        const double h = opt.fd_step;
        GeneratingOptions sub;
        sub.action_hint = g.action_I0;
        auto S = [&](double a, double b) { return generating_function(a, b, profile, p, sub).S_value; };
        const double d0 = (-S(xi0 + 2 * h, xi1) + 8 * S(xi0 + h, xi1) - 8 * S(xi0 - h, xi1) + S(xi0 - 2 * h, xi1)) / (12 * h);
        const double d1 = (-S(xi0, xi1 + 2 * h) + 8 * S(xi0, xi1 + h) - 8 * S(xi0, xi1 - h) + S(xi0, xi1 - 2 * h)) / (12 * h);
        g.action_I0_fd = -d0;
        g.action_I1_fd = d1;
    }

    if (opt.diagnostics) {
        const double h = 1e-4;
        const double xm = st.mid.xi;
        const double Iin = st.mid.action_I;
        const double dE = (outer_arrival_action(xi0, xm + h, profile, p) - outer_arrival_action(xi0, xm - h, profile, p)) / (2 * h);
        const double dI = (inner_launch_action(xm + h, xi1, Iin, profile, p) - inner_launch_action(xm - h, xi1, Iin, profile, p)) / (2 * h);
        g.nondeg_S = dE - dI;
        if (std::abs(g.nondeg_S) < 1e-8) throw DegenerateStationarity("second derivative of S in the intermediate point vanishes");
    }
    return g;
}

DiscreteActionEval discrete_action(const std::vector<double>& cycle, int m, int n, const PerturbationProfile& profile,
                                   const PhysParams& p, const std::vector<double>& action_hints) {
    if (n < 1 || static_cast<int>(cycle.size()) != n) throw DomainError("cycle length must equal n");
    DiscreteActionEval out;
    out.links.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double a = cycle[static_cast<std::size_t>(k)];
        const double b = k + 1 < n ? cycle[static_cast<std::size_t>(k + 1)] : cycle[0] + kTwoPi * m;
        GeneratingOptions opt;
        if (!action_hints.empty()) opt.action_hint = action_hints[static_cast<std::size_t>(k)];
        out.links.push_back(generating_function(a, b, profile, p, opt));
        out.W += out.links.back().S_value;
    }
    out.gradient.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto& prev = out.links[static_cast<std::size_t>((k + n - 1) % n)];
        const auto& cur = out.links[static_cast<std::size_t>(k)];
        out.gradient[static_cast<std::size_t>(k)] = prev.action_I1 - cur.action_I0;
    }
    return out;
}

}  // namespace rkb
