#pragma once

#include <array>
#include <vector>

#include "rkb/arc.hpp"
#include "rkb/model.hpp"

namespace rkb {

enum class Direction { outgoing, incoming };

// Crossing record.  action_I is the canonical action (1/√2) z'·γ'(ξ); with |γ'| = s it
// equals s·sqrt(V_E)·sin α.  xi is kept on the lift (not reduced mod 2π).
struct BoundaryState {
    double xi = 0.0;
    double action_I = 0.0;
    double alpha = 0.0;
    Direction direction = Direction::outgoing;
};

double action_bound(double xi, const PerturbationProfile& profile, const PhysParams& p);
BoundaryState make_state(double xi, double action_I, const PerturbationProfile& profile, const PhysParams& p);
BoundaryState make_state_from_angle(double xi, double alpha, const PerturbationProfile& profile,
                                    const PhysParams& p);
Vec2 launch_velocity(const BoundaryState& s, const PerturbationProfile& profile, const PhysParams& p);
double canonical_action(Vec2 v, const BoundarySample& b);

struct ShiftProfile {
    double f_val = 0.0, g_val = 0.0, total = 0.0;
    double f_prime = 0.0, g_prime = 0.0, total_prime = 0.0;
};

ShiftProfile circular_shift(double I, const PhysParams& p);
// f + g without the range check; valid on the closed interval [−I_c, I_c]
double theta_bar(double I, const PhysParams& p);
double theta_bar_boundary(const PhysParams& p);
double twist_at_zero(const PhysParams& p);

// p(x) = A²D² − B²C² in x = I², coefficients of x⁰..x⁵
std::array<double, 6> twist_polynomial(const PhysParams& p);

struct CriticalPoint {
    double action = 0.0;
    bool tangential = false;  // even-order contact, no sign change
};

std::vector<CriticalPoint> twist_critical_points(const PhysParams& p);
std::vector<double> twist_critical_set(const PhysParams& p);

// intervals of (−I_c, I_c) on which θ̄ is strictly monotone
std::vector<std::array<double, 2>> monotone_branches(const PhysParams& p);
// all actions with θ̄(I) = target, one per monotone branch at most
std::vector<double> theta_bar_roots(double target, const PhysParams& p);
// the root on the branch containing the hint (or the root closest to it)
double theta_bar_inverse(double target, const PhysParams& p, double hint);

enum class MapMethod { automatic, closed_form, numeric };

struct MapStep {
    BoundaryState next;
    BoundaryState mid;  // incoming inner crossing: action_I canonical, alpha = inner angle β
    ArcSegment outer;
    ArcSegment inner;
    double snell_in = 0.0;
    double snell_out = 0.0;
};

// geometric composition outer arc → refraction → inner arc → refraction
MapStep return_map_step(const BoundaryState& s, const PerturbationProfile& profile, const PhysParams& p);
BoundaryState return_map(const BoundaryState& s, const PerturbationProfile& profile, const PhysParams& p,
                         MapMethod method = MapMethod::automatic);

struct FixedPointThresholds {
    double mu_bar = 0.0;
    double h_bar = 0.0;
};

FixedPointThresholds fixed_point_thresholds(const PhysParams& p);
bool nonhomothetic_hypotheses(const PhysParams& p);
// positive action of a non-homothetic fixed point; −I is one as well
double find_nonhomothetic_fixed_point(const PhysParams& p);

}  // namespace rkb
