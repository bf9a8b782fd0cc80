#include "rkb/arc.hpp"

#include <algorithm>
#include <cmath>

namespace rkb {

const char* to_string(ArcKind k) {
    switch (k) {
        case ArcKind::outer: return "outer";
        case ArcKind::inner: return "inner";
        case ArcKind::ejection_collision: return "ejection_collision";
    }
    return "?";
}

Vec2 lc_sqrt(Vec2 z) {
    const double r = norm(z);
    if (r == 0.0) return {0.0, 0.0};
    return polar(std::sqrt(r), 0.5 * arg(z));
}

double oriented_angle(Vec2 a, Vec2 b, double k) {
    double d = std::atan2(cross(a, b), dot(a, b));
    // only a wrap near ±π is a real sign error; tiny mismatches are roundoff
    if (std::abs(d) > 0.5 * kPi) {
        if (k > 0.0 && d < 0.0) d += kTwoPi;
        if (k < 0.0 && d > 0.0) d -= kTwoPi;
    }
    return d;
}

Vec2 ArcSegment::lc_w(double tau) const {
    const double x = freq * tau;
    return w0 * std::cosh(x) + wdot0 * (std::sinh(x) / freq);
}

Vec2 ArcSegment::lc_wdot(double tau) const {
    const double x = freq * tau;
    return w0 * (freq * std::sinh(x)) + wdot0 * std::cosh(x);
}

Vec2 ArcSegment::position(double u) const {
    if (kind == ArcKind::outer) return p0 * std::cos(freq * u) + v0 * (std::sin(freq * u) / freq);
    const Vec2 w = lc_w(u);
    return cmul(w, w);
}

Vec2 ArcSegment::velocity(double u) const {
    if (kind == ArcKind::outer) return v0 * std::cos(freq * u) - p0 * (freq * std::sin(freq * u));
    const Vec2 w = lc_w(u), wd = lc_wdot(u);
    const double r = norm2(w);
    // dz/ds = ẇ / conj(w) = ẇ w / |w|²
    return cmul(wd, w) / r;
}

double ArcSegment::kinetic_time(double u) const {
    if (kind == ArcKind::outer) return u;
    // s = 2∫|w|² dτ with |w|² = c0 + c1 cosh 2Ωτ + c2 sinh 2Ωτ
    const Vec2 q = wdot0 / freq;
    const double c0 = 0.5 * (norm2(w0) - norm2(q));
    const double c1 = 0.5 * (norm2(w0) + norm2(q));
    const double c2 = dot(w0, q);
    const double x = 2.0 * freq * u;
    return 2.0 * (c0 * u + (c1 * std::sinh(x) + c2 * (std::cosh(x) - 1.0)) / (2.0 * freq));
}

double ArcSegment::extremal_param() const {
    if (kind == ArcKind::outer) {
        // r²(s) = C0 + A cos 2ωs + B sin 2ωs
        const double A = 0.5 * (norm2(p0) - norm2(v0) / (freq * freq));
        const double B = dot(p0, v0) / freq;
        double s = std::atan2(B, A) / (2.0 * freq);
        const double period = kPi / freq;
        if (s < 0.0) s += period;
        if (s > param_end) {
            const Vec2 a = position(0.0), b = position(param_end);
            return norm2(a) >= norm2(b) ? 0.0 : param_end;
        }
        return s;
    }
    const Vec2 q = wdot0 / freq;
    const double c1 = 0.5 * (norm2(w0) + norm2(q));
    const double c2 = dot(w0, q);
    double tau = 0.0;
    if (c1 > std::abs(c2)) tau = std::atanh(-c2 / c1) / (2.0 * freq);
    if (tau < 0.0 || tau > param_end) {
        const Vec2 a = position(0.0), b = position(param_end);
        return norm2(a) <= norm2(b) ? 0.0 : param_end;
    }
    return tau;
}

double ArcSegment::extremal_radius() const {
    if (kind == ArcKind::outer) {
        const double C0 = 0.5 * (norm2(p0) + norm2(v0) / (freq * freq));
        const double A = 0.5 * (norm2(p0) - norm2(v0) / (freq * freq));
        const double B = dot(p0, v0) / freq;
        const double u = extremal_param();
        if (u > 0.0 && u < param_end) return std::sqrt(C0 + std::hypot(A, B));
        return norm(position(u));
    }
    const double u = extremal_param();
    if (u > 0.0 && u < param_end) {
        if (kind == ArcKind::ejection_collision) return 0.0;
        const Vec2 q = wdot0 / freq;
        const double c0 = 0.5 * (norm2(w0) - norm2(q));
        const double c1 = 0.5 * (norm2(w0) + norm2(q));
        const double c2 = dot(w0, q);
        return std::max(0.0, c0 + std::sqrt(std::max(0.0, c1 * c1 - c2 * c2)));
    }
    return norm(position(u));
}

std::vector<Vec2> ArcSegment::sample(int n) const {
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) out.push_back(position(param_end * i / n));
    return out;
}

ArcSegment make_outer_arc(Vec2 p0, Vec2 v0, double s_end, const PhysParams& p) {
    ArcSegment a;
    a.kind = ArcKind::outer;
    a.p0 = p0;
    a.v0 = v0;
    a.freq = p.omega();
    a.param_end = s_end;
    a.duration = s_end;
    a.k = cross(p0, v0);
    a.swept = oriented_angle(p0, a.end_position(), a.k);
    return a;
}

ArcSegment make_inner_arc(Vec2 p0, Vec2 v0, double tau_end, const PhysParams& p) {
    ArcSegment a;
    a.p0 = p0;
    a.v0 = v0;
    a.freq = std::sqrt(p.Omega_sq());
    a.mu = p.mass_mu;
    a.w0 = lc_sqrt(p0);
    a.wdot0 = cmul(v0, conj(a.w0));
    a.param_end = tau_end;
    a.k = cross(p0, v0);
    const bool collision = std::abs(a.k) <= 1e-14 * norm(p0) * norm(v0);
    a.kind = collision ? ArcKind::ejection_collision : ArcKind::inner;
    a.duration = a.kinetic_time(tau_end);
    if (tau_end == 0.0) return a;
    const Vec2 w1 = a.lc_w(tau_end);
    if (collision) {
        // through the centre and back out on the launch ray
        a.swept = 2.0 * std::atan2(cross(a.w0, w1), dot(a.w0, w1));
    } else {
        a.swept = 2.0 * oriented_angle(a.w0, w1, a.k);
    }
    return a;
}

}  // namespace rkb
