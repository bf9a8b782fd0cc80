#include "rkb/inner.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "rkb/errors.hpp"

namespace rkb {

double inner_shift(double beta0, const PhysParams& p) {
    if (beta0 == 0.0) return 0.0;
    const double Eh = p.energy_E + p.offset_h, mu = p.mass_mu;
    const double s2 = std::sin(beta0) * std::sin(beta0);
    const double num = 2.0 * (Eh + mu) * s2 - mu;
    const double sc = std::abs(std::sin(beta0) * std::cos(beta0));
    const double th = 2.0 * std::atan2(2.0 * (Eh + mu) * sc, num) - kTwoPi;
    return beta0 > 0.0 ? th : -th;
}

Vec2 inner_launch_velocity(const BoundarySample& b, double beta, const PhysParams& p) {
    const double v = std::sqrt(2.0 * potential_inner_r(b.radius, p));
    return (b.tangent_unit * std::sin(beta) - b.normal_out_unit * std::cos(beta)) * v;
}

ArcSegment inner_arc_ivp(Vec2 p0, Vec2 v0, const PerturbationProfile& profile, const PhysParams& p) {
    ArcSegment probe = make_inner_arc(p0, v0, 0.0, p);
    const double Om = probe.freq;
    const bool circle = profile.is_circle();
    const double R0 = profile.radius(0.0);
    const double Rmax = circle ? R0 : profile.max_radius();

    // |w|² = c0 + c1 cosh 2Ωτ + c2 sinh 2Ωτ
    const Vec2 q = probe.wdot0 / Om;
    const double c1 = 0.5 * (norm2(probe.w0) + norm2(q));
    const double c2 = dot(probe.w0, q);
    double tau_peri = c1 > std::abs(c2) ? std::atanh(-c2 / c1) / (2.0 * Om) : 0.0;
    tau_peri = std::max(0.0, tau_peri);
    double tau_max = std::max(tau_peri, 1.0 / (Om + norm(probe.wdot0)));
    for (int i = 0; i < 200; ++i) {
        const Vec2 w = probe.lc_w(tau_max);
        if (tau_max > tau_peri && norm2(w) > 1.01 * Rmax) break;
        tau_max *= 2.0;
    }
    auto crossing = [&](double tau) {
        const Vec2 w = probe.lc_w(tau);
        const Vec2 z = cmul(w, w);
        if (circle) return R0 - norm(z);
        return profile.radius(arg(z)) - norm(z);
    };
    const auto t1 = detail::first_crossing(crossing, tau_max, 2048);
    if (!t1) {
        if (-dot(v0, p0) <= 1e-10 * norm(v0) * norm(p0))
            throw TangentialCrossing("inner launch is tangential to the boundary");
        throw EventDetectionFailed("inner arc did not leave the domain");
    }
    return make_inner_arc(p0, v0, *t1, p);
}

int winding_number(const ArcSegment& arc) {
    const Vec2 a = arc.p0, b = arc.end_position();
    const double d = std::atan2(cross(a, b), dot(a, b));
    return static_cast<int>(std::lround((arc.swept - d) / kTwoPi));
}

double chord_eccentricity(const PhysParams& p, double x0, InnerBranch branch) {
    const double a = p.mass_mu / (2.0 * (p.energy_E + p.offset_h));
    const double r = std::sqrt(4.0 * a * a + 4.0 * a + x0 * x0);
    return branch == InnerBranch::winding_one ? (-x0 + r) / (2.0 * a) : (x0 + r) / (2.0 * a);
}

double transversality_bound(const PhysParams& p, double x0) {
    const double a = p.mass_mu / (2.0 * (p.energy_E + p.offset_h));
    const double e = chord_eccentricity(p, x0, InnerBranch::winding_one);
    const double r = std::sqrt(4.0 * a * a + 4.0 * a + x0 * x0);
    return e * std::sqrt((2.0 * a + x0 * (x0 + r)) / (2.0 + 4.0 * a));
}

namespace {

// arc on the unit circle between polar angles, one of the two hyperbola branches
ArcSegment circular_chord_arc(double xi0, double d, const PhysParams& p, InnerBranch branch) {
    const PerturbationProfile circ = PerturbationProfile::circle();
    const BoundarySample b0 = boundary(xi0, circ);
    const double V = potential_inner_r(1.0, p);
    if (d == 0.0) return inner_arc_ivp(b0.point, b0.point * -std::sqrt(2.0 * V), circ, p);
    const double a = p.mass_mu / (2.0 * (p.energy_E + p.offset_h));
    const double e = chord_eccentricity(p, std::cos(0.5 * d), branch);
    const double semilatus = a * (e * e - 1.0);
    const double sd = d > 0.0 ? 1.0 : -1.0;
    // winding one goes the long way round, against the short chord direction
    const double k = (branch == InnerBranch::winding_one ? -sd : sd) * std::sqrt(p.mass_mu * semilatus);
    const double vr = -std::sqrt(std::max(0.0, 2.0 * V - k * k));
    const Vec2 v0 = b0.point * vr + perp(b0.point) * k;
    return inner_arc_ivp(b0.point, v0, circ, p);
}

double lifted_shift(const ArcSegment& arc) {
    if (arc.kind == ArcKind::ejection_collision) return 0.0;
    return arc.swept - kTwoPi * (arc.k > 0.0 ? 1.0 : -1.0);
}

}  // namespace

ArcSegment inner_arc_fixed_ends(double xi0, double xi1, const PerturbationProfile& profile,
                                const PhysParams& p, InnerBranch branch) {
    const double d = detail::wrap_pi(xi1 - xi0);
    if (std::abs(d) >= kPi - 1e-12) throw AntipodalEndpoints("inner endpoints are antipodal");
    const BoundarySample b0 = boundary(xi0, profile);
    if (d == 0.0 && branch == InnerBranch::winding_one) {
        const double V = potential_inner_r(b0.radius, p);
        return inner_arc_ivp(b0.point, b0.point * (-std::sqrt(2.0 * V) / b0.radius), profile, p);
    }
    const ArcSegment seed = circular_chord_arc(xi0, d, p, branch);
    if (profile.is_circle()) return seed;

    const int w_seed = winding_number(seed);
    const double target = lifted_shift(seed);
    const Vec2 vs = seed.v0;
    const double beta0 = std::atan2(dot(vs, b0.tangent_unit), -dot(vs, b0.normal_out_unit));
    auto launch = [&](double beta) {
        return inner_arc_ivp(b0.point, inner_launch_velocity(b0, beta, p), profile, p);
    };
    auto miss = [&](double beta) { return lifted_shift(launch(beta)) - target; };
    const double lim = 0.5 * kPi - 1e-9;
    const auto br = detail::expand_bracket(miss, beta0, 0.01, -lim, lim);
    if (!br) throw ShootingDiverged("inner shooting found no bracket", miss(beta0));
    const double beta = detail::refine_root(miss, br->first, br->second);
    ArcSegment arc = launch(beta);
    const double res = std::abs(lifted_shift(arc) - target);
    if (res > 1e-9) throw ShootingDiverged("inner shooting did not converge", res);
    if (winding_number(arc) != w_seed) throw WindingChanged("perturbation changed the winding number");
    return arc;
}

double InnerConic::implicit(Vec2 q) const {
    const double c = std::cos(pericenter_angle), s = std::sin(pericenter_angle);
    const double X = c * q.x + s * q.y, Y = -s * q.x + c * q.y;
    const double e = eccentricity_e, pp = semilatus_p;
    return (e * e - 1.0) * X * X - Y * Y - 2.0 * pp * e * X + pp * pp;
}

InnerConic inner_conic_of(Vec2 p0, Vec2 v0, const PhysParams& p) {
    InnerConic c;
    const double mu = p.mass_mu, Eh = p.energy_E + p.offset_h;
    c.ang_momentum_k = cross(p0, v0);
    const double k = c.ang_momentum_k;
    c.semilatus_p = k * k / mu;
    c.eccentricity_e = std::sqrt(1.0 + 2.0 * k * k * Eh / (mu * mu));
    c.pericenter_r = c.semilatus_p / (1.0 + c.eccentricity_e);
    c.ejection_collision = std::abs(k) <= 1e-14 * norm(p0) * norm(v0);
    const double rho = norm(p0);
    if (c.ejection_collision) {
        c.pericenter_angle = arg(p0);
        return c;
    }
    const double ca = std::clamp((c.semilatus_p - rho) / (c.eccentricity_e * rho), -1.0, 1.0);
    // ahead of the point when moving toward the pericentre
    const double sgn = (k > 0.0 ? 1.0 : -1.0) * (dot(p0, v0) <= 0.0 ? 1.0 : -1.0);
    c.pericenter_angle = arg(p0) + sgn * std::acos(ca);
    return c;
}

InnerConic inner_conic_of(const ArcSegment& arc, const PhysParams& p) {
    InnerConic c = inner_conic_of(arc.p0, arc.v0, p);
    c.winding = winding_number(arc);
    return c;
}

LCState to_levi_civita(Vec2 z, Vec2 zdot, const PhysParams& p) {
    LCState s;
    s.w = lc_sqrt(z);
    s.w_dot = cmul(zdot, conj(s.w));
    s.Omega_sq = p.Omega_sq();
    s.E_lc = p.mass_mu;
    return s;
}

PhaseState kepler_propagate(Vec2 z0, Vec2 v0, double s, const PhysParams& p) {
    const double mu = p.mass_mu, Eh = p.energy_E + p.offset_h;
    const double k = cross(z0, v0);
    if (k == 0.0) throw DomainError("Kepler hyperbola propagation needs k != 0");
    const double a = mu / (2.0 * Eh);
    const double e = std::sqrt(1.0 + 2.0 * k * k * Eh / (mu * mu));
    const double n = std::sqrt(mu / (a * a * a));
    const double r0 = norm(z0);
    double H0 = std::acosh(std::max(1.0, (r0 / a + 1.0) / e));
    if (dot(z0, v0) < 0.0) H0 = -H0;
    const double sg = k > 0.0 ? 1.0 : -1.0;
    const double f0 = 2.0 * std::atan(std::sqrt((e + 1.0) / (e - 1.0)) * std::tanh(0.5 * H0));
    const double phi_p = arg(z0) - sg * f0;
    const double M = e * std::sinh(H0) - H0 + n * s;
    double H = 0.0;
    if (M != 0.0) {
        auto kep = [&](double x) { return e * std::sinh(x) - x - M; };
        // e sinh H − H = M pins |H| between asinh(|M|/e) and asinh(|M|/(e−1))
        const double h1 = std::asinh(std::abs(M) / e), h2 = std::asinh(std::abs(M) / (e - 1.0));
        H = M > 0.0 ? detail::refine_root(kep, h1, h2) : detail::refine_root(kep, -h2, -h1);
    }
    const double Hd = n / (e * std::cosh(H) - 1.0);
    const double q = a * std::sqrt(e * e - 1.0);
    const Vec2 xp{a * (e - std::cosh(H)), sg * q * std::sinh(H)};
    const Vec2 vp{-a * std::sinh(H) * Hd, sg * q * std::cosh(H) * Hd};
    const double c = std::cos(phi_p), sn = std::sin(phi_p);
    auto rot = [&](Vec2 v) { return Vec2{c * v.x - sn * v.y, sn * v.x + c * v.y}; };
    return {rot(xp), rot(vp)};
}

std::vector<InnerSample> levi_civita_propagate(Vec2 z0, Vec2 v0, const PhysParams& p,
                                               double pericenter_threshold, int n) {
    ArcSegment arc = make_inner_arc(z0, v0, 0.0, p);
    const double Om = arc.freq;
    const Vec2 q = arc.wdot0 / Om;
    const double c1 = 0.5 * (norm2(arc.w0) + norm2(q));
    const double c2 = dot(arc.w0, q);
    if (!(c2 < 0.0)) throw DomainError("inner data must point into the domain");
    const double tau_end = std::atanh(-c2 / c1) / Om;
    arc = make_inner_arc(z0, v0, tau_end, p);
    const InnerConic con = inner_conic_of(z0, v0, p);

    std::vector<InnerSample> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    const bool regularize = con.ejection_collision || con.pericenter_r < pericenter_threshold;
    Vec2 w_prev = arc.w0;
    for (int i = 0; i <= n; ++i) {
        InnerSample smp;
        if (regularize) {
            smp.regularized = true;
            smp.tau = tau_end * i / n;
            smp.s = arc.kinetic_time(smp.tau);
            smp.z = arc.position(smp.tau);
            smp.zdot = arc.velocity(smp.tau);
            smp.lc = {arc.lc_w(smp.tau), arc.lc_wdot(smp.tau), p.Omega_sq(), p.mass_mu, smp.tau};
        } else {
            smp.tau = std::nan("");
            smp.s = arc.duration * i / n;
            const PhaseState st = kepler_propagate(z0, v0, smp.s, p);
            smp.z = st.pos;
            smp.zdot = st.vel;
            smp.lc = to_levi_civita(st.pos, st.vel, p);
            // keep the double-cover lift continuous
            if (dot(smp.lc.w, w_prev) < 0.0) {
                smp.lc.w = -smp.lc.w;
                smp.lc.w_dot = -smp.lc.w_dot;
            }
            smp.lc.tau = smp.tau;
        }
        w_prev = smp.lc.w;
        out.push_back(smp);
    }
    return out;
}

}  // namespace rkb
