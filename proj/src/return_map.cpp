#include "rkb/return_map.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "rkb/errors.hpp"
#include "rkb/inner.hpp"
#include "rkb/outer.hpp"
#include "rkb/refraction.hpp"

namespace rkb {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

double action_bound(double xi, const PerturbationProfile& profile, const PhysParams& p) {
    const BoundarySample b = boundary(xi, profile);
    return b.speed * std::sqrt(potential_outer_r(b.radius, p));
}

BoundaryState make_state(double xi, double action_I, const PerturbationProfile& profile, const PhysParams& p) {
    const BoundarySample b = boundary(xi, profile);
    const double bound = b.speed * std::sqrt(potential_outer_r(b.radius, p));
    if (!(std::abs(action_I) < bound))
        throw OutOfActionRange("action " + std::to_string(action_I) + " outside (-" + std::to_string(bound) + ", " +
                               std::to_string(bound) + ")");
    return {xi, action_I, std::asin(action_I / bound), Direction::outgoing};
}

BoundaryState make_state_from_angle(double xi, double alpha, const PerturbationProfile& profile,
                                    const PhysParams& p) {
    if (!(std::abs(alpha) < 0.5 * kPi)) throw DomainError("launch angle must lie in (-pi/2, pi/2)");
    const BoundarySample b = boundary(xi, profile);
    return {xi, b.speed * std::sqrt(potential_outer_r(b.radius, p)) * std::sin(alpha), alpha, Direction::outgoing};
}

Vec2 launch_velocity(const BoundaryState& s, const PerturbationProfile& profile, const PhysParams& p) {
    const BoundarySample b = boundary(s.xi, profile);
    const double VE = potential_outer_r(b.radius, p);
    const double vt = kSqrt2 * s.action_I / b.speed;
    const double vn2 = 2.0 * VE - vt * vt;
    if (!(vn2 > 0.0)) throw OutOfActionRange("action at or beyond the tangential bound");
    return b.tangent_unit * vt + b.normal_out_unit * std::sqrt(vn2);
}

double canonical_action(Vec2 v, const BoundarySample& b) { return dot(v, b.tangent()) / kSqrt2; }

namespace {

double f_raw(double I, const PhysParams& p) {
    const double E = p.energy_E, om = p.stiffness_om;
    return std::atan2(I * std::sqrt(std::max(0.0, 4.0 * E - 2.0 * om - 4.0 * I * I)), E - 2.0 * I * I);
}

double g_raw(double I, const PhysParams& p) {
    if (I == 0.0) return 0.0;
    const double Eh = p.energy_E + p.offset_h, mu = p.mass_mu;
    const double x = I * I;
    const double th = 2.0 * std::atan2(2.0 * std::abs(I) * std::sqrt(std::max(0.0, Eh + mu - x)), 2.0 * x - mu) - kTwoPi;
    return I > 0.0 ? th : -th;
}

// f' = A/B and g' = −C/D in x = I²
double f_prime_raw(double x, const PhysParams& p) {
    const double E = p.energy_E, om = p.stiffness_om;
    const double A = kSqrt2 * (2.0 * E * E - (E + 2.0 * x) * om);
    const double B = std::sqrt(2.0 * E - om - 2.0 * x) * (E * E - 2.0 * om * x);
    return A / B;
}

double g_prime_raw(double x, const PhysParams& p) {
    const double Eh = p.energy_E + p.offset_h, mu = p.mass_mu;
    const double C = 8.0 * Eh * x + 4.0 * Eh * mu + 4.0 * mu * mu;
    const double D = std::sqrt(Eh + mu - x) * (4.0 * Eh * x + mu * mu);
    return -C / D;
}

using Poly = std::vector<double>;

Poly pmul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

double peval(const std::array<double, 6>& c, double x) {
    double r = 0.0;
    for (int i = 5; i >= 0; --i) r = r * x + c[static_cast<std::size_t>(i)];
    return r;
}

}  // namespace

double theta_bar(double I, const PhysParams& p) { return f_raw(I, p) + g_raw(I, p); }

ShiftProfile circular_shift(double I, const PhysParams& p) {
    if (!(std::abs(I) < p.action_bound_Ic))
        throw OutOfActionRange("|I| must be below I_c = " + std::to_string(p.action_bound_Ic));
    ShiftProfile s;
    s.f_val = f_raw(I, p);
    s.g_val = g_raw(I, p);
    s.total = s.f_val + s.g_val;
    const double x = I * I;
    s.f_prime = f_prime_raw(x, p);
    s.g_prime = g_prime_raw(x, p);
    s.total_prime = s.f_prime + s.g_prime;
    return s;
}

double theta_bar_boundary(const PhysParams& p) {
    const double E = p.energy_E, om = p.stiffness_om, Eh = p.energy_E + p.offset_h, mu = p.mass_mu;
    return kTwoPi - 2.0 * std::acos((2.0 * E - om - mu) / std::sqrt(2.0 * Eh * (2.0 * E - om) + mu * mu));
}

double twist_at_zero(const PhysParams& p) {
    return 2.0 * std::sqrt(p.energy_E - p.stiffness_om / 2.0) / p.energy_E -
           4.0 * std::sqrt(p.energy_E + p.offset_h + p.mass_mu) / p.mass_mu;
}

std::array<double, 6> twist_polynomial(const PhysParams& p) {
    const double E = p.energy_E, om = p.stiffness_om, Eh = p.energy_E + p.offset_h, mu = p.mass_mu;
    const Poly a{2.0 * E * E - E * om, -2.0 * om};
    const Poly A2 = pmul(Poly{2.0}, pmul(a, a));
    const Poly d{mu * mu, 4.0 * Eh};
    const Poly D2 = pmul(Poly{Eh + mu, -1.0}, pmul(d, d));
    const Poly b{E * E, -2.0 * om};
    const Poly B2 = pmul(Poly{2.0 * E - om, -2.0}, pmul(b, b));
    const Poly c{4.0 * Eh * mu + 4.0 * mu * mu, 8.0 * Eh};
    const Poly C2 = pmul(c, c);
    const Poly l = pmul(A2, D2), r = pmul(B2, C2);
    std::array<double, 6> out{};
    for (std::size_t i = 0; i < 6; ++i) out[i] = (i < l.size() ? l[i] : 0.0) - (i < r.size() ? r[i] : 0.0);
    return out;
}

std::vector<CriticalPoint> twist_critical_points(const PhysParams& p) {
    const auto c = twist_polynomial(p);
    const double X = p.action_bound_Ic * p.action_bound_Ic;
    constexpr int N = 4096;
    std::vector<double> xs(N + 1), ps(N + 1);
    double scale = 0.0;
    for (int i = 0; i <= N; ++i) {
        xs[i] = X * i / N;
        ps[i] = peval(c, xs[i]);
        scale = std::max(scale, std::abs(ps[i]));
    }
    std::vector<double> roots;
    std::vector<bool> tang;
    auto bisect = [&](double a, double b, double fa) {
        for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, a); ++it) {
            const double m = 0.5 * (a + b);
            const double fm = peval(c, m);
            if (fm == 0.0) return m;
            if ((fm < 0.0) == (fa < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };
    for (int i = 0; i < N; ++i) {
        if (ps[i] == 0.0) {
            roots.push_back(xs[i]);
            tang.push_back(false);
            continue;
        }
        if ((ps[i] < 0.0) != (ps[i + 1] < 0.0) && ps[i + 1] != 0.0) {
            roots.push_back(bisect(xs[i], xs[i + 1], ps[i]));
            tang.push_back(false);
        }
    }
    // touching roots: a local minimum of |p| that reaches (numerically) zero
    for (int i = 1; i < N; ++i) {
        const double a = std::abs(ps[i - 1]), m = std::abs(ps[i]), b = std::abs(ps[i + 1]);
        if (!(m < a && m < b) || (ps[i - 1] < 0.0) != (ps[i + 1] < 0.0)) continue;
        if ((ps[i - 1] < 0.0) != (ps[i] < 0.0)) continue;
        double lo = xs[i - 1], hi = xs[i + 1];
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
            if (std::abs(peval(c, x1)) < std::abs(peval(c, x2))) hi = x2;
            else lo = x1;
        }
        const double xm = 0.5 * (lo + hi);
        if (std::abs(peval(c, xm)) <= 1e-12 * scale) {
            roots.push_back(xm);
            tang.push_back(true);
        }
    }
    std::vector<CriticalPoint> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const double x = roots[i];
        if (x >= X) continue;
        // squaring A/B = C/D admits spurious roots, e.g. next to I_c where B -> 0
        const double fp = f_prime_raw(x, p), gp = g_prime_raw(x, p);
        if (std::abs(fp + gp) > 1e-6 * (std::abs(fp) + std::abs(gp))) continue;
        if (x == 0.0) {
            // theta_bar' is even in I
            out.push_back({0.0, true});
            continue;
        }
        out.push_back({-std::sqrt(x), tang[i]});
        out.push_back({std::sqrt(x), tang[i]});
    }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) { return a.action < b.action; });
    return out;
}

std::vector<double> twist_critical_set(const PhysParams& p) {
    std::vector<double> out;
    for (const auto& c : twist_critical_points(p)) out.push_back(c.action);
    return out;
}

std::vector<std::array<double, 2>> monotone_branches(const PhysParams& p) {
    const double Ic = p.action_bound_Ic;
    std::vector<double> cuts{-Ic};
    for (const auto& c : twist_critical_points(p))
        if (!c.tangential) cuts.push_back(c.action);
    cuts.push_back(Ic);
    std::vector<std::array<double, 2>> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) out.push_back({cuts[i], cuts[i + 1]});
    return out;
}

std::vector<double> theta_bar_roots(double target, const PhysParams& p) {
    std::vector<double> out;
    auto F = [&](double I) { return theta_bar(I, p) - target; };
    for (const auto& br : monotone_branches(p)) {
        const double a = br[0], b = br[1];
        if (target == 0.0 && a < 0.0 && b > 0.0) {
            out.push_back(0.0);
            continue;
        }
        const double fa = F(a), fb = F(b);
        if (fa == 0.0 && std::abs(a) < p.action_bound_Ic) out.push_back(a);
        if ((fa < 0.0) != (fb < 0.0) && fa != 0.0 && fb != 0.0) {
            const double r = detail::refine_root(F, a, b, fa, fb);
            if (std::abs(r) < p.action_bound_Ic) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) < 1e-13; }),
              out.end());
    return out;
}

double theta_bar_inverse(double target, const PhysParams& p, double hint) {
    const auto roots = theta_bar_roots(target, p);
    if (roots.empty()) throw RangeEmpty("shift " + std::to_string(target) + " is not attained on (-I_c, I_c)");
    for (const auto& br : monotone_branches(p))
        if (hint >= br[0] && hint <= br[1])
            for (double r : roots)
                if (r >= br[0] && r <= br[1]) return r;
    return *std::min_element(roots.begin(), roots.end(),
                             [&](double a, double b) { return std::abs(a - hint) < std::abs(b - hint); });
}

MapStep return_map_step(const BoundaryState& s, const PerturbationProfile& profile, const PhysParams& p) {
    MapStep st;
    const BoundarySample b0 = boundary(s.xi, profile);
    const Vec2 v0 = launch_velocity(s, profile, p);
    st.outer = outer_arc_ivp(b0.point, v0, profile, p);

    const double xi_mid = s.xi + st.outer.swept;
    const BoundarySample b1 = boundary(xi_mid, profile);
    const Vec2 v1 = st.outer.end_velocity();
    if (std::abs(dot(v1, b1.normal_out_unit)) <= kTangencyTol * norm(v1))
        throw TangentialCrossing("outer arc meets the boundary tangentially");
    const Vec2 vI = refract_velocity_in(v1, b1, p);
    st.snell_in = snell_residual(v1, vI, b1, p);
    st.mid = {xi_mid, canonical_action(vI, b1),
              std::atan2(dot(vI, b1.tangent_unit), -dot(vI, b1.normal_out_unit)), Direction::incoming};

    st.inner = inner_arc_ivp(b1.point, vI, profile, p);
    double shift = 0.0;
    if (st.inner.kind != ArcKind::ejection_collision) shift = st.inner.swept - kTwoPi * (st.inner.k > 0.0 ? 1.0 : -1.0);
    const double xi_out = xi_mid + shift;
    const BoundarySample b2 = boundary(xi_out, profile);
    const Vec2 v2 = st.inner.end_velocity();
    if (std::abs(dot(v2, b2.normal_out_unit)) <= kTangencyTol * norm(v2))
        throw TangentialCrossing("inner arc meets the boundary tangentially");
    const auto vout = refract_velocity_out(v2, b2, p);
    if (!vout) {
        const double beta = std::atan2(dot(v2, b2.tangent_unit), dot(v2, b2.normal_out_unit));
        throw TotalReflectionTermination(beta, critical_angle(b2, p));
    }
    st.snell_out = snell_residual(*vout, v2, b2, p);
    st.next = {xi_out, canonical_action(*vout, b2),
               std::atan2(dot(*vout, b2.tangent_unit), dot(*vout, b2.normal_out_unit)), Direction::outgoing};
    return st;
}

BoundaryState return_map(const BoundaryState& s, const PerturbationProfile& profile, const PhysParams& p,
                         MapMethod method) {
    const bool closed = method == MapMethod::closed_form || (method == MapMethod::automatic && profile.is_circle());
    if (closed) {
        if (!profile.is_circle()) throw DomainError("closed-form return map needs the circular domain");
        const double R = profile.radius(0.0);
        if (R != 1.0) throw DomainError("closed-form return map assumes the unit circle");
        BoundaryState n = s;
        n.xi = s.xi + circular_shift(s.action_I, p).total;
        return n;
    }
    return return_map_step(s, profile, p).next;
}

FixedPointThresholds fixed_point_thresholds(const PhysParams& p) {
    const double E = p.energy_E, om = p.stiffness_om, mu = p.mass_mu;
    FixedPointThresholds t;
    t.mu_bar = (4.0 * E * E + std::sqrt(8.0 * E * E * E * (4.0 * E - om))) / (2.0 * E - om);
    t.h_bar = (2.0 * E - om) * mu * mu / (8.0 * E * E) - (E + mu);
    return t;
}

bool nonhomothetic_hypotheses(const PhysParams& p) {
    const auto t = fixed_point_thresholds(p);
    const double mu = p.mass_mu, h = p.offset_h, w = 2.0 * p.energy_E - p.stiffness_om;
    return (mu > t.mu_bar && h > t.h_bar) || (w < mu && mu <= t.mu_bar && h > 0.0);
}

double find_nonhomothetic_fixed_point(const PhysParams& p) {
    const double Ic = p.action_bound_Ic;
    auto th = [&](double I) { return theta_bar(I, p); };
    double lo = 1e-6 * Ic, hi = Ic;
    double flo = th(lo), fhi = th(hi);
    if (!((flo < 0.0) != (fhi < 0.0))) {
        // hypotheses fail; look for any interior sign change
        bool found = false;
        double prev = lo, fprev = flo;
        for (int i = 1; i <= 4096 && !found; ++i) {
            const double I = lo + (hi - lo) * i / 4096.0;
            const double f = th(I);
            if ((f < 0.0) != (fprev < 0.0)) {
                lo = prev;
                flo = fprev;
                hi = I;
                fhi = f;
                found = true;
            }
            prev = I;
            fprev = f;
        }
        if (!found) throw NoFixedPoint("no non-homothetic fixed point: theta_bar keeps its sign on (0, I_c)");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * Ic; ++it) {
        const double m = 0.5 * (lo + hi);
        const double fm = th(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

}  // namespace rkb
