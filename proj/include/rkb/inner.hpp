#pragma once

#include <vector>

#include "rkb/arc.hpp"
#include "rkb/model.hpp"

namespace rkb {

// circular inner shift θ_I(β0); β0 measured from the inward normal
double inner_shift(double beta0, const PhysParams& p);

// incoming inner velocity for angle β from the inward normal
Vec2 inner_launch_velocity(const BoundarySample& b, double beta, const PhysParams& p);

// inner arc from the boundary until it leaves D again; regularised chart throughout
ArcSegment inner_arc_ivp(Vec2 p0, Vec2 v0, const PerturbationProfile& profile, const PhysParams& p);

enum class InnerBranch { winding_one, winding_zero };

// winding-one branch by default; winding_zero only for testing
ArcSegment inner_arc_fixed_ends(double xi0, double xi1, const PerturbationProfile& profile,
                                const PhysParams& p, InnerBranch branch = InnerBranch::winding_one);

// index of the arc closed by the shortest boundary arc
int winding_number(const ArcSegment& arc);

// eccentricity of the branch through two unit-circle points with chord parameter x0 = cos(Δθ/2)
double chord_eccentricity(const PhysParams& p, double x0, InnerBranch branch);

// lower bound c(x0) of the endpoint transversality cosines
double transversality_bound(const PhysParams& p, double chord_x0);

struct InnerConic {
    double ang_momentum_k = 0.0;
    double semilatus_p = 0.0;
    double eccentricity_e = 1.0;
    double pericenter_r = 0.0;
    double pericenter_angle = 0.0;
    int winding = 0;
    bool ejection_collision = false;

    // (e²−1)X² − Y² − 2peX + p² with X along the pericentre direction
    double implicit(Vec2 q) const;
};

InnerConic inner_conic_of(Vec2 p0, Vec2 v0, const PhysParams& p);
InnerConic inner_conic_of(const ArcSegment& arc, const PhysParams& p);

struct LCState {
    Vec2 w;
    Vec2 w_dot;
    double Omega_sq = 0.0;
    double E_lc = 0.0;
    double tau = 0.0;

    double energy_residual() const { return 0.5 * norm2(w_dot) - 0.5 * Omega_sq * norm2(w) - E_lc; }
};

LCState to_levi_civita(Vec2 z, Vec2 zdot, const PhysParams& p);

struct InnerSample {
    double tau = 0.0;  // NaN when sampled without the chart
    double s = 0.0;
    Vec2 z;
    Vec2 zdot;
    LCState lc;
    bool regularized = false;
};

// Samples the inner arc from (z0, v0) until |z| = |z0| again.  Arcs whose pericentre
// falls below the threshold are sampled uniformly in τ in the Levi-Civita chart,
// others uniformly in kinetic time on the Kepler hyperbola.
std::vector<InnerSample> levi_civita_propagate(Vec2 z0, Vec2 v0, const PhysParams& p,
                                               double pericenter_threshold = 1e-3, int n = 256);

// unregularised Kepler hyperbola: state at kinetic time s from (z0, v0), k ≠ 0
PhaseState kepler_propagate(Vec2 z0, Vec2 v0, double s, const PhysParams& p);

}  // namespace rkb
