#pragma once

#include <optional>

#include "rkb/model.hpp"

namespace rkb {

enum class RefractionOutcome { refracted, total_reflection };

struct RefractionResult {
    RefractionOutcome outcome = RefractionOutcome::refracted;
    double out_angle = 0.0;  // meaningful only when refracted
};

inline constexpr double kTangencyTol = 1e-10;

// α_crit = arcsin(sqrt(V_E/V_I)) at the boundary point
double critical_angle(const BoundarySample& b, const PhysParams& p);

// inner → outer; β_I measured from the outward normal of the exiting inner velocity
RefractionResult refract_out(double beta_I, const BoundarySample& b, const PhysParams& p);
// outer → inner; always solvable because V_E < V_I on the boundary
double refract_in(double alpha_E, const BoundarySample& b, const PhysParams& p);

// Velocity-level junctions: the tangential component is conserved, the normal one
// rescaled to the new potential.  Arriving outer velocity points inward.
Vec2 refract_velocity_in(Vec2 v_outer, const BoundarySample& b, const PhysParams& p);
// nullopt on total reflection (tangency tolerance included)
std::optional<Vec2> refract_velocity_out(Vec2 v_inner, const BoundarySample& b, const PhysParams& p);

// sqrt(V_E) sin α_E − sqrt(V_I) sin α_I for an outer/inner velocity pair at b
double snell_residual(Vec2 v_outer, Vec2 v_inner, const BoundarySample& b, const PhysParams& p);

}  // namespace rkb
