#pragma once

#include <vector>

#include "rkb/vec2.hpp"

namespace rkb {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Energy 𝓔, offset h, Kepler mass μ and harmonic stiffness om.
// Outside: z'' = -om z, V_E = 𝓔 - om|z|²/2.  Inside: V_I = 𝓔 + h + μ/|z|.
struct PhysParams {
    double energy_E = 0.0;
    double offset_h = 0.0;
    double mass_mu = 0.0;
    double stiffness_om = 0.0;

    // filled by validate_params
    double action_bound_Ic = 0.0;
    double outer_speed_unit = 0.0;
    double inner_speed_unit = 0.0;

    double omega() const;       // sqrt(om)
    double Omega_sq() const { return 2.0 * (energy_E + offset_h); }
};

PhysParams validate_params(const PhysParams& raw);
PhysParams make_params(double E, double h, double mu, double om);

enum class Region { inner, outer };

double potential(Vec2 z, Region region, const PhysParams& p);
double potential_outer_r(double r, const PhysParams& p);
double potential_inner_r(double r, const PhysParams& p);

// r(ξ) = 1 + ε f(ξ), f a truncated Fourier series.
// fourier_cos[k] multiplies cos(kξ); fourier_sin[k] multiplies sin(kξ), entry 0 unused.
struct PerturbationProfile {
    std::vector<double> fourier_cos;
    std::vector<double> fourier_sin;
    double epsilon = 0.0;
    int smoothness_k = -1;  // -1: analytic (finite series)

    static PerturbationProfile circle();
    static PerturbationProfile cos_mode(int k, double eps);
    // second-order radial expansion of an ellipse with horizontal semi-axis 1 and
    // eccentricity e: r ≈ 1 - (e²/4)(1 - cos 2ξ), i.e. f = -1 + cos 2ξ, ε = e²/4
    static PerturbationProfile ellipse_like(double eps);

    double f(double xi) const;
    double f_prime(double xi) const;
    double f_second(double xi) const;
    double radius(double xi) const { return 1.0 + epsilon * f(xi); }
    double radius_prime(double xi) const { return epsilon * f_prime(xi); }
    double radius_second(double xi) const { return epsilon * f_second(xi); }
    double max_radius() const;
    double min_radius() const;
    bool is_circle() const;
    void validate() const;
};

struct BoundarySample {
    double xi = 0.0;
    Vec2 point;
    Vec2 tangent_unit;
    Vec2 normal_out_unit;
    double radius = 1.0;
    double radius_prime = 0.0;
    double speed = 1.0;  // |dγ/dξ|

    Vec2 tangent() const { return tangent_unit * speed; }
};

BoundarySample boundary(double xi, const PerturbationProfile& profile);

}  // namespace rkb
