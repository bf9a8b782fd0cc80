#include "rkb/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rkb/errors.hpp"

namespace rkb {

double PhysParams::omega() const { return std::sqrt(stiffness_om); }

PhysParams validate_params(const PhysParams& raw) {
    auto fail = [](const std::string& what) { throw DomainError("invalid parameters: " + what); };
    const double E = raw.energy_E, h = raw.offset_h, mu = raw.mass_mu, om = raw.stiffness_om;
    if (!std::isfinite(E) || !std::isfinite(h) || !std::isfinite(mu) || !std::isfinite(om))
        fail("non-finite value");
    if (!(mu > 0.0)) fail("mass_mu > 0 violated");
    if (!(om > 0.0)) fail("stiffness_om > 0 violated");
    if (!(E + h > 0.0)) fail("energy_E + offset_h > 0 violated");
    if (!(E > om)) fail("energy_E > stiffness_om violated");
    PhysParams p = raw;
    p.action_bound_Ic = std::sqrt(E - om / 2.0);
    p.outer_speed_unit = std::sqrt(2.0 * E - om);
    p.inner_speed_unit = std::sqrt(2.0 * (E + h + mu));
    if (!(p.action_bound_Ic > 0.0)) fail("action bound I_c must be positive");
    return p;
}

PhysParams make_params(double E, double h, double mu, double om) {
    PhysParams raw;
    raw.energy_E = E;
    raw.offset_h = h;
    raw.mass_mu = mu;
    raw.stiffness_om = om;
    return validate_params(raw);
}

double potential_outer_r(double r, const PhysParams& p) {
    return p.energy_E - 0.5 * p.stiffness_om * r * r;
}

double potential_inner_r(double r, const PhysParams& p) {
    if (r == 0.0) throw SingularityError("inner potential evaluated at the Kepler centre");
    return p.energy_E + p.offset_h + p.mass_mu / r;
}

double potential(Vec2 z, Region region, const PhysParams& p) {
    return region == Region::outer ? potential_outer_r(norm(z), p) : potential_inner_r(norm(z), p);
}

PerturbationProfile PerturbationProfile::circle() { return {}; }

PerturbationProfile PerturbationProfile::cos_mode(int k, double eps) {
    PerturbationProfile pr;
    pr.fourier_cos.assign(static_cast<std::size_t>(k) + 1, 0.0);
    pr.fourier_cos[static_cast<std::size_t>(k)] = 1.0;
    pr.epsilon = eps;
    return pr;
}

PerturbationProfile PerturbationProfile::ellipse_like(double eps) {
    PerturbationProfile pr;
    pr.fourier_cos = {-1.0, 0.0, 1.0};
    pr.epsilon = eps;
    return pr;
}

namespace {

// sum over harmonics of c_k·k^d·(trig derivative of order d)
double series(const PerturbationProfile& pr, double xi, int d) {
    double s = 0.0;
    const std::size_t nc = pr.fourier_cos.size(), ns = pr.fourier_sin.size();
    const std::size_t n = std::max(nc, ns);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = k < nc ? pr.fourier_cos[k] : 0.0;
        const double b = (k < ns && k > 0) ? pr.fourier_sin[k] : 0.0;
        if (a == 0.0 && b == 0.0) continue;
        const double kk = static_cast<double>(k);
        const double c = std::cos(kk * xi), sn = std::sin(kk * xi);
        switch (d) {
            case 0: s += a * c + b * sn; break;
            case 1: s += kk * (-a * sn + b * c); break;
            default: s += -kk * kk * (a * c + b * sn); break;
        }
    }
    return s;
}

}  // namespace

double PerturbationProfile::f(double xi) const { return series(*this, xi, 0); }
double PerturbationProfile::f_prime(double xi) const { return series(*this, xi, 1); }
double PerturbationProfile::f_second(double xi) const { return series(*this, xi, 2); }

bool PerturbationProfile::is_circle() const {
    if (epsilon == 0.0) return true;
    for (double a : fourier_cos) if (a != 0.0) return false;
    for (std::size_t k = 1; k < fourier_sin.size(); ++k) if (fourier_sin[k] != 0.0) return false;
    return true;
}

double PerturbationProfile::max_radius() const {
    if (is_circle()) return radius(0.0);
    double m = 0.0;
    for (int i = 0; i < 4096; ++i) m = std::max(m, radius(kTwoPi * i / 4096.0));
    // coarse grid; pad by the Lipschitz slack
    double lip = 0.0;
    for (std::size_t k = 0; k < std::max(fourier_cos.size(), fourier_sin.size()); ++k) {
        const double a = k < fourier_cos.size() ? fourier_cos[k] : 0.0;
        const double b = (k > 0 && k < fourier_sin.size()) ? fourier_sin[k] : 0.0;
        lip += static_cast<double>(k) * (std::abs(a) + std::abs(b));
    }
    return m + std::abs(epsilon) * lip * kTwoPi / 4096.0;
}

double PerturbationProfile::min_radius() const {
    if (is_circle()) return radius(0.0);
    double m = 1e300;
    for (int i = 0; i < 4096; ++i) m = std::min(m, radius(kTwoPi * i / 4096.0));
    return m;
}

void PerturbationProfile::validate() const {
    if (!std::isfinite(epsilon)) throw DomainError("profile epsilon is not finite");
    for (double a : fourier_cos) if (!std::isfinite(a)) throw DomainError("non-finite fourier_cos entry");
    for (double b : fourier_sin) if (!std::isfinite(b)) throw DomainError("non-finite fourier_sin entry");
    double bound = 0.0;
    for (double a : fourier_cos) bound += std::abs(a);
    for (std::size_t k = 1; k < fourier_sin.size(); ++k) bound += std::abs(fourier_sin[k]);
    if (std::abs(epsilon) * bound < 1.0) return;
    if (!(min_radius() > 0.0)) throw DomainError("perturbed radius is not positive everywhere");
}

BoundarySample boundary(double xi, const PerturbationProfile& profile) {
    BoundarySample b;
    b.xi = xi;
    const double c = std::cos(xi), s = std::sin(xi);
    b.radius = profile.radius(xi);
    b.radius_prime = profile.radius_prime(xi);
    b.point = {b.radius * c, b.radius * s};
    const Vec2 d{b.radius_prime * c - b.radius * s, b.radius_prime * s + b.radius * c};
    b.speed = norm(d);
    b.tangent_unit = d / b.speed;
    // tangent turned clockwise points outward for a counter-clockwise curve
    b.normal_out_unit = {b.tangent_unit.y, -b.tangent_unit.x};
    return b;
}

}  // namespace rkb
