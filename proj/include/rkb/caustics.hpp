#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rkb/orbit.hpp"

namespace rkb {

struct CausticRadii {
    double outer_R_E = 0.0;  // apocentre locus
    double inner_R_I = 0.0;  // pericentre locus
};

CausticRadii circular_caustic_radii(double I0, const PhysParams& p);

enum class CausticKind { inner, outer };

struct CausticSample {
    double zeta = 0.0;
    double x = 0.0, y = 0.0;
    int newton_iterations = 0;
};

struct CausticCurve {
    CausticKind kind = CausticKind::outer;
    std::vector<CausticSample> samples;  // ζ increasing over [0, 2π)
    std::optional<double> circular_radius;
    double max_envelope_residual = 0.0;
    double closure_gap = 0.0;

    // polar radius at angle θ, linear in θ between samples
    double radius_at(double theta) const;
};

struct CausticOptions {
    int grid = 512;
    int workers = 1;
};

// envelope of the conics launched at each ζ with action I(ζ): outer conics use the
// outgoing invariant curve, inner conics the incoming one (action at the inner launch)
CausticCurve perturbed_caustic(const std::function<double(double)>& action_of_zeta, CausticKind kind,
                               const PerturbationProfile& profile, const PhysParams& p,
                               const CausticOptions& opt = {});

// max over the recorded arcs of the distance between the arc extremum and the caustic
double tangency_check(const OrbitTrace& trace, const CausticCurve& caustic);

}  // namespace rkb
