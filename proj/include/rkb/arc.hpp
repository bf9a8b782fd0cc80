#pragma once

#include <vector>

#include "rkb/model.hpp"
#include "rkb/vec2.hpp"

namespace rkb {

enum class ArcKind { outer, inner, ejection_collision };

const char* to_string(ArcKind k);

struct PhaseState {
    Vec2 pos;
    Vec2 vel;
};

// One conic arc in closed form.  Outer arcs are parametrised by kinetic time s,
// inner arcs by Levi-Civita time τ (z = w², ds = 2|z| dτ).
struct ArcSegment {
    ArcKind kind = ArcKind::outer;
    Vec2 p0;
    Vec2 v0;
    double freq = 0.0;       // ω outside, Ω = sqrt(2(𝓔+h)) inside
    double mu = 0.0;
    Vec2 w0;
    Vec2 wdot0;
    double param_end = 0.0;  // s_end or τ_end
    double duration = 0.0;   // kinetic time
    double swept = 0.0;      // signed polar angle actually swept
    double k = 0.0;          // angular momentum z × z'

    bool is_inner() const { return kind != ArcKind::outer; }
    Vec2 position(double u) const;
    Vec2 velocity(double u) const;  // dz/ds
    Vec2 lc_w(double tau) const;
    Vec2 lc_wdot(double tau) const;
    double kinetic_time(double u) const;
    Vec2 end_position() const { return position(param_end); }
    Vec2 end_velocity() const { return velocity(param_end); }
    // max |z| outside, min |z| inside, over the arc
    double extremal_radius() const;
    double extremal_param() const;
    std::vector<Vec2> sample(int n) const;
};

ArcSegment make_outer_arc(Vec2 p0, Vec2 v0, double s_end, const PhysParams& p);
ArcSegment make_inner_arc(Vec2 p0, Vec2 v0, double tau_end, const PhysParams& p);

// principal square root in the Levi-Civita plane
Vec2 lc_sqrt(Vec2 z);

// signed angle from a to b, forced to agree with the sign of the angular momentum
double oriented_angle(Vec2 a, Vec2 b, double k);

}  // namespace rkb
