#pragma once

#include <optional>
#include <vector>

#include "rkb/arc.hpp"
#include "rkb/model.hpp"
#include "rkb/return_map.hpp"

namespace rkb {

// ∫ sqrt(V)|dz| along the arc (inner arcs integrated in the Levi-Civita chart)
double jacobi_length(const ArcSegment& arc, const PhysParams& p);
// M = ½∫|ż|²V dt over geodesic time t ∈ [0,1], dt/ds = √2 V / L
double maupertuis_action(const ArcSegment& arc, const PhysParams& p);

struct GeneratingOptions {
    std::optional<double> action_hint;  // selects the branch of the circular inverse
    bool finite_differences = false;    // actions from S(ξ0±h, ξ1), S(ξ0, ξ1±h)
    bool diagnostics = false;           // nondeg_S from fixed-end arcs around ξ̃
    double fd_step = 1e-3;
};

struct GeneratingEval {
    double S_value = 0.0;
    double xi_mid = 0.0;
    double action_I0 = 0.0;
    double action_I1 = 0.0;
    double action_I0_fd = 0.0;
    double action_I1_fd = 0.0;
    double nondeg_S = 0.0;
    double nondeg_twist = 0.0;
    double stationarity = 0.0;  // ∂_b S_E + ∂_a S_I at ξ̃
    MapStep step;
};

// S(ξ0, ξ1) = d_E(γ(ξ0), γ(ξ̃)) + d_I(γ(ξ̃), γ(ξ1)); ξ1 is read on the lift
GeneratingEval generating_function(double xi0, double xi1, const PerturbationProfile& profile, const PhysParams& p,
                                   const GeneratingOptions& opt = {});

// launch action at ξ0 whose return lands on ξ1 (lift), with the corresponding step
MapStep solve_link(double xi0, double xi1, const PerturbationProfile& profile, const PhysParams& p,
                   std::optional<double> action_hint = std::nullopt);

struct DiscreteActionEval {
    double W = 0.0;
    std::vector<double> gradient;
    std::vector<GeneratingEval> links;
};

// W = Σ S(ξ_k, ξ_{k+1}) with ξ_n = ξ_0 + 2πm; ∂W/∂ξ_k = I1(link k−1) − I0(link k)
DiscreteActionEval discrete_action(const std::vector<double>& cycle, int m, int n, const PerturbationProfile& profile,
                                   const PhysParams& p, const std::vector<double>& action_hints = {});

}  // namespace rkb
