#pragma once

#include "rkb/arc.hpp"
#include "rkb/model.hpp"

namespace rkb {

// z(s) = p0 cos ωs + (v0/ω) sin ωs; rejects data off the zero-energy level
PhaseState outer_propagate(Vec2 p0, Vec2 v0, double s, const PhysParams& p);

// circular exit shift θ_E(α) and its derivative; α from the outward normal
double outer_shift(double alpha, const PhysParams& p);
double outer_shift_prime(double alpha, const PhysParams& p);
double outer_shift_inverse(double theta, const PhysParams& p);

// outgoing velocity at a boundary point for launch angle α
Vec2 outer_launch_velocity(const BoundarySample& b, double alpha, const PhysParams& p);

// outer arc from the boundary until it meets the boundary again
ArcSegment outer_arc_ivp(Vec2 p0, Vec2 v0, const PerturbationProfile& profile, const PhysParams& p);

ArcSegment outer_arc_fixed_ends(double xi0, double xi1, const PerturbationProfile& profile,
                                const PhysParams& p);

struct OuterConic {
    double semi_major_sq = 0.0;
    double semi_minor_sq = 0.0;
    double tilt_angle = 0.0;  // polar angle of the major axis on the apocentre side
    double duration_T = 0.0;
    Vec2 start;
    Vec2 end;
    bool degenerate = false;  // radial (brake) arc, b² = 0

    // implicit equation X²/a² + Y²/b² − 1 in the frame of the axes
    double implicit(Vec2 q) const;
};

OuterConic outer_conic_of(Vec2 p0, Vec2 v0, const PhysParams& p);
OuterConic outer_conic_of(const ArcSegment& arc, const PhysParams& p);

}  // namespace rkb
