#include "rkb/outer.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "rkb/errors.hpp"

namespace rkb {

PhaseState outer_propagate(Vec2 p0, Vec2 v0, double s, const PhysParams& p) {
    const double V = potential_outer_r(norm(p0), p);
    const double kin = 0.5 * norm2(v0);
    if (std::abs(kin - V) > 1e-9 * std::max(1.0, std::abs(V)))
        throw EnergyMismatch("outer data off the zero-energy level: |v|²/2=" + std::to_string(kin) +
                             " V_E=" + std::to_string(V));
    const double w = p.omega();
    return {p0 * std::cos(w * s) + v0 * (std::sin(w * s) / w), v0 * std::cos(w * s) - p0 * (w * std::sin(w * s))};
}

// With c = om/(2𝓔−om) the arccot expression reduces to atan2(sin 2α, c + cos 2α),
// which already carries the second determination for α < 0.
double outer_shift(double alpha, const PhysParams& p) {
    const double c = p.stiffness_om / (2.0 * p.energy_E - p.stiffness_om);
    return std::atan2(std::sin(2.0 * alpha), c + std::cos(2.0 * alpha));
}

double outer_shift_prime(double alpha, const PhysParams& p) {
    const double c = p.stiffness_om / (2.0 * p.energy_E - p.stiffness_om);
    const double C = std::cos(2.0 * alpha);
    return 2.0 * (1.0 + c * C) / (1.0 + 2.0 * c * C + c * c);
}

double outer_shift_inverse(double theta, const PhysParams& p) {
    if (!(std::abs(theta) < kPi)) throw DomainError("outer shift must lie in (-pi, pi)");
    const double c = p.stiffness_om / (2.0 * p.energy_E - p.stiffness_om);
    // sin(2α − θ) = c sin θ
    return 0.5 * (theta + std::asin(c * std::sin(theta)));
}

Vec2 outer_launch_velocity(const BoundarySample& b, double alpha, const PhysParams& p) {
    const double v = std::sqrt(2.0 * potential_outer_r(b.radius, p));
    return (b.normal_out_unit * std::cos(alpha) + b.tangent_unit * std::sin(alpha)) * v;
}

ArcSegment outer_arc_ivp(Vec2 p0, Vec2 v0, const PerturbationProfile& profile, const PhysParams& p) {
    const double w = p.omega();
    const bool circle = profile.is_circle();
    const double R0 = profile.radius(0.0);
    auto crossing = [&](double s) {
        const Vec2 z = p0 * std::cos(w * s) + v0 * (std::sin(w * s) / w);
        if (circle) return norm(z) - R0;
        return norm(z) - profile.radius(arg(z));
    };
    const auto s1 = detail::first_crossing(crossing, kTwoPi / w, 2048);
    if (!s1) {
        if (dot(v0, p0) <= 1e-10 * norm(v0) * norm(p0))
            throw TangentialCrossing("outer launch is tangential to the boundary");
        throw EventDetectionFailed("outer arc did not return to the boundary");
    }
    return make_outer_arc(p0, v0, *s1, p);
}

ArcSegment outer_arc_fixed_ends(double xi0, double xi1, const PerturbationProfile& profile,
                                const PhysParams& p) {
    const double d = detail::wrap_pi(xi1 - xi0);
    if (std::abs(d) >= kPi - 1e-12) throw AntipodalEndpoints("outer endpoints are antipodal");
    const BoundarySample b0 = boundary(xi0, profile);
    const double alpha0 = outer_shift_inverse(d, p);
    auto launch = [&](double alpha) {
        return outer_arc_ivp(b0.point, outer_launch_velocity(b0, alpha, p), profile, p);
    };
    if (profile.is_circle()) return launch(alpha0);

    auto miss = [&](double alpha) { return launch(alpha).swept - d; };
    const double lim = 0.5 * kPi - 1e-9;
    const auto br = detail::expand_bracket(miss, alpha0, 0.02, -lim, lim);
    if (!br) throw ShootingDiverged("outer shooting found no bracket", miss(alpha0));
    const double alpha = detail::refine_root(miss, br->first, br->second);
    ArcSegment arc = launch(alpha);
    const double res = std::abs(arc.swept - d);
    if (res > 1e-9) throw ShootingDiverged("outer shooting did not converge", res);
    return arc;
}

double OuterConic::implicit(Vec2 q) const {
    const double c = std::cos(tilt_angle), s = std::sin(tilt_angle);
    const double X = c * q.x + s * q.y, Y = -s * q.x + c * q.y;
    return X * X / semi_major_sq + Y * Y / semi_minor_sq - 1.0;
}

OuterConic outer_conic_of(Vec2 p0, Vec2 v0, const PhysParams& p) {
    const double om = p.stiffness_om, E = p.energy_E;
    const double rho2 = norm2(p0);
    const double pv = dot(p0, v0);
    const double Phi = std::sqrt((E - om * rho2) * (E - om * rho2) + om * pv * pv);
    OuterConic c;
    c.semi_major_sq = (E + Phi) / om;
    c.semi_minor_sq = (E - Phi) / om;
    const double xi = arg(p0);
    const double vy = cross(p0, v0);  // sign of the tangential velocity in the frame rotated by ξ
    c.start = p0;
    // time back to radius |p0|: r²(s) = C0 + A cos 2ωs + B sin 2ωs
    const double w = p.omega();
    const double A = 0.5 * (rho2 - norm2(v0) / om), B = pv / w;
    double T = std::atan2(B, A) / w;
    if (T <= 0.0) T += kPi / w;
    c.duration_T = T;
    c.end = p0 * std::cos(w * T) + v0 * (std::sin(w * T) / w);
    if (c.semi_minor_sq <= 1e-14 * c.semi_major_sq) {
        c.degenerate = true;
        c.tilt_angle = xi;
        return c;
    }
    const double a2 = c.semi_major_sq, b2 = c.semi_minor_sq;
    const double sin2 = std::max(0.0, b2 / (a2 - b2) * (a2 / rho2 - 1.0));
    const double cosb = std::sqrt(a2 / (a2 - b2)) * std::sqrt(std::max(0.0, 1.0 - b2 / rho2));
    const double sinb = (vy >= 0.0 ? 1.0 : -1.0) * std::sqrt(sin2);
    c.tilt_angle = xi + std::atan2(sinb, cosb);
    return c;
}

OuterConic outer_conic_of(const ArcSegment& arc, const PhysParams& p) {
    OuterConic c = outer_conic_of(arc.p0, arc.v0, p);
    c.duration_T = arc.duration;
    c.end = arc.end_position();
    return c;
}

}  // namespace rkb
