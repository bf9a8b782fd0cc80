#include "rkb/caustics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "rkb/errors.hpp"
#include "rkb/inner.hpp"
#include "rkb/outer.hpp"

namespace rkb {

CausticRadii circular_caustic_radii(double I0, const PhysParams& p) {
    if (I0 == 0.0 || std::abs(I0) >= p.action_bound_Ic)
        throw OutOfActionRange("caustic radii need 0 < |I0| < I_c");
    const double E = p.energy_E, om = p.stiffness_om, mu = p.mass_mu;
    const double I2 = I0 * I0;
    CausticRadii r;
    r.outer_R_E = std::sqrt((E + std::sqrt(E * E - 2.0 * I2 * om)) / om);
    const double semi = 2.0 * I2 / mu;
    const double e = std::sqrt(1.0 + 4.0 * I2 * (E + p.offset_h) / (mu * mu));
    r.inner_R_I = semi / (1.0 + e);
    return r;
}

double CausticCurve::radius_at(double theta) const {
    if (samples.empty()) throw DegenerateEnvelope("empty caustic");
    std::vector<std::pair<double, double>> polar;
    polar.reserve(samples.size());
    for (const auto& s : samples) polar.emplace_back(std::atan2(s.y, s.x), std::hypot(s.x, s.y));
    std::sort(polar.begin(), polar.end());
    const double t = std::remainder(theta, kTwoPi);
    auto it = std::lower_bound(polar.begin(), polar.end(), std::make_pair(t, -1.0));
    const auto& hi = it == polar.end() ? polar.front() : *it;
    const auto& lo = it == polar.begin() ? polar.back() : *(it - 1);
    double span = hi.first - lo.first;
    double off = t - lo.first;
    if (span <= 0.0) span += kTwoPi;
    if (off < 0.0) off += kTwoPi;
    return lo.second + (hi.second - lo.second) * off / span;
}

namespace {

struct Launch {
    Vec2 p0, v0;
};

Launch launch_at(double zeta, double I, CausticKind kind, const PerturbationProfile& profile, const PhysParams& p) {
    const BoundarySample b = boundary(zeta, profile);
    const double V = kind == CausticKind::outer ? potential_outer_r(b.radius, p) : potential_inner_r(b.radius, p);
    const double vt = std::sqrt(2.0) * I / b.speed;
    const double vn2 = 2.0 * V - vt * vt;
    if (vn2 <= 0.0) throw OutOfActionRange("action outside the launch range at ζ = " + std::to_string(zeta));
    const double vn = std::sqrt(vn2) * (kind == CausticKind::outer ? 1.0 : -1.0);
    return {b.point, b.tangent_unit * vt + b.normal_out_unit * vn};
}

class Family {
public:
    Family(const std::function<double(double)>& act, CausticKind kind, const PerturbationProfile& profile,
           const PhysParams& p)
        : act_(act), kind_(kind), profile_(profile), p_(p) {}

    double G(Vec2 q, double zeta) const {
        const Launch l = launch_at(zeta, act_(zeta), kind_, profile_, p_);
        if (kind_ == CausticKind::outer) return outer_conic_of(l.p0, l.v0, p_).implicit(q);
        const InnerConic c = inner_conic_of(l.p0, l.v0, p_);
        // scaled by p² so both families are O(1) near the caustic
        return c.implicit(q) / (c.semilatus_p * c.semilatus_p);
    }

    double Gz(Vec2 q, double zeta) const {
        const double h = 1e-5;
        return (G(q, zeta - 2 * h) - 8 * G(q, zeta - h) + 8 * G(q, zeta + h) - G(q, zeta + 2 * h)) / (12 * h);
    }

    Vec2 seed(double zeta) const {
        const Launch l = launch_at(zeta, act_(zeta), kind_, profile_, p_);
        if (kind_ == CausticKind::outer) {
            const OuterConic c = outer_conic_of(l.p0, l.v0, p_);
            const ArcSegment arc = make_outer_arc(l.p0, l.v0, c.duration_T, p_);
            return arc.position(arc.extremal_param());
        }
        const InnerConic c = inner_conic_of(l.p0, l.v0, p_);
        return polar(c.pericenter_r, c.pericenter_angle);
    }

private:
    const std::function<double(double)>& act_;
    CausticKind kind_;
    const PerturbationProfile& profile_;
    const PhysParams& p_;
};

struct Solved {
    Vec2 q;
    int iters = 0;
    double residual = 0.0;
    double transversality = 0.0;
};

Solved newton(const Family& fam, double zeta, Vec2 q) {
    const double hq = 1e-4;  // G is quadratic in q: central differences are exact
    Solved out;
    for (int it = 1; it <= 50; ++it) {
        const double F1 = fam.G(q, zeta), F2 = fam.Gz(q, zeta);
        if (std::max(std::abs(F1), std::abs(F2)) < 1e-12) break;
        const Vec2 ex{hq, 0.0}, ey{0.0, hq};
        const Vec2 g1{(fam.G(q + ex, zeta) - fam.G(q - ex, zeta)) / (2 * hq),
                      (fam.G(q + ey, zeta) - fam.G(q - ey, zeta)) / (2 * hq)};
        const Vec2 g2{(fam.Gz(q + ex, zeta) - fam.Gz(q - ex, zeta)) / (2 * hq),
                      (fam.Gz(q + ey, zeta) - fam.Gz(q - ey, zeta)) / (2 * hq)};
        const double det = g1.x * g2.y - g1.y * g2.x;
        out.transversality = std::abs(cross(g1 / norm(g1), g2 / norm(g2)));
        if (out.transversality <= 1e-10) throw DegenerateEnvelope("envelope gradients parallel at ζ = " + std::to_string(zeta));
        const Vec2 dq{(F1 * g2.y - F2 * g1.y) / det, (g1.x * F2 - g2.x * F1) / det};
        q = q - dq;
        out.iters = it;
        if (norm(dq) < 1e-10 * (1.0 + norm(q))) break;
        if (it == 50 || !std::isfinite(q.x)) throw NewtonDiverged("caustic Newton failed", zeta);
    }
    out.q = q;
    out.residual = std::max(std::abs(fam.G(q, zeta)), std::abs(fam.Gz(q, zeta)));
    return out;
}

}  // namespace

CausticCurve perturbed_caustic(const std::function<double(double)>& action_of_zeta, CausticKind kind,
                               const PerturbationProfile& profile, const PhysParams& p, const CausticOptions& opt) {
    const int N = std::max(8, opt.grid);
    const Family fam(action_of_zeta, kind, profile, p);

    double mean_I = 0.0;
    for (int j = 0; j < N; ++j) mean_I += action_of_zeta(kTwoPi * j / N);
    mean_I /= N;
    const CausticRadii circ = circular_caustic_radii(mean_I, p);
    const double R0 = kind == CausticKind::outer ? circ.outer_R_E : circ.inner_R_I;

    std::vector<Solved> sol(static_cast<std::size_t>(N) + 1);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(N) + 1);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.workers))
    for (int j = 0; j <= N; ++j) {
        const double zeta = kTwoPi * j / N;
        try {
            sol[static_cast<std::size_t>(j)] = newton(fam, zeta, fam.seed(zeta));
        } catch (...) {
            errors[static_cast<std::size_t>(j)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    CausticCurve c;
    c.kind = kind;
    if (profile.is_circle()) c.circular_radius = R0;
    // stitch: slow Newton convergence gets an extra midpoint seeded from the previous sample
    for (int j = 0; j < N; ++j) {
        const Solved& s = sol[static_cast<std::size_t>(j)];
        const double zeta = kTwoPi * j / N;
        c.samples.push_back({zeta, s.q.x, s.q.y, s.iters});
        c.max_envelope_residual = std::max(c.max_envelope_residual, s.residual);
        if (s.iters > 5) {
            const double zm = kTwoPi * (j + 0.5) / N;
            const Solved m = newton(fam, zm, s.q);
            c.samples.push_back({zm, m.q.x, m.q.y, m.iters});
            c.max_envelope_residual = std::max(c.max_envelope_residual, m.residual);
        }
    }
    c.closure_gap = norm(sol.back().q - sol.front().q);
    if (c.closure_gap > 1e-6) throw DegenerateEnvelope("caustic does not close");
    for (const auto& s : c.samples) {
        const double r = std::hypot(s.x, s.y);
        if (std::abs(r - R0) > 0.1 * R0)
            throw NewtonDiverged("caustic sample left the expected branch", s.zeta);
    }
    return c;
}

double tangency_check(const OrbitTrace& trace, const CausticCurve& caustic) {
    double worst = 0.0;
    for (const auto& arc : trace.arcs) {
        const bool outer = arc.kind == ArcKind::outer;
        if (outer != (caustic.kind == CausticKind::outer)) continue;
        const double r = arc.extremal_radius();
        const Vec2 q = arc.position(arc.extremal_param());
        const double R = caustic.circular_radius ? *caustic.circular_radius : caustic.radius_at(arg(q));
        worst = std::max(worst, std::abs(r - R));
    }
    return worst;
}

}  // namespace rkb
