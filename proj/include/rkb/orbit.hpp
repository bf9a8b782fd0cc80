#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rkb/return_map.hpp"

namespace rkb {

enum class OrbitStatus { running, total_reflection, failed };
const char* to_string(OrbitStatus s);

struct RotationEstimate {
    double value = 0.0;
    double error = 0.0;
};

struct OrbitTrace {
    std::vector<BoundaryState> states;
    std::vector<BoundaryState> mids;  // only with record_arcs
    std::vector<ArcSegment> arcs;     // outer, inner, outer, inner, ...
    OrbitStatus status = OrbitStatus::running;
    std::string message;
    RotationEstimate rotation;
};

OrbitTrace iterate(const BoundaryState& initial, int n, const PerturbationProfile& profile, const PhysParams& p,
                   bool record_arcs = false);

// tail-averaged (ξ_{k+K} − ξ_k)/K, K = len/2
RotationEstimate rotation_number(const OrbitTrace& trace);

enum class OrbitKind { circular, minimizer, minimax };
const char* to_string(OrbitKind k);

struct PeriodicOrbit {
    int m = 0, n = 1;
    OrbitKind kind = OrbitKind::circular;
    std::vector<BoundaryState> states;  // n states, ξ on the lift
    double residual = 0.0;              // |ξ_n − ξ_0 − 2πm| + |I_n − I_0|
    double gradient_norm = 0.0;         // ∞-norm of the discrete-action gradient
    double action_W = 0.0;
};

struct PeriodicSearch {
    double xi0 = 0.0;      // circular case: base point of the returned cycles
    int family_grid = 48;  // perturbed case: samples of the reduced family over one turn
    bool evaluate_action = true;
};

std::vector<PeriodicOrbit> find_periodic(int m, int n, const PerturbationProfile& profile, const PhysParams& p,
                                         const PeriodicSearch& opt = {});

enum class Stability { elliptic, hyperbolic, parabolic };
const char* to_string(Stability s);

struct MultiplierReport {
    std::array<std::array<double, 2>, 2> monodromy{};
    double trace = 0.0;
    double det = 0.0;
    Stability kind = Stability::parabolic;
};

MultiplierReport linear_stability(const PeriodicOrbit& orbit, const PerturbationProfile& profile, const PhysParams& p,
                                  double fd_step = 1e-6);

struct CurveFit {
    std::vector<double> coeffs;  // a0, a1, b1, a2, b2, ...
    double max_residual = 0.0;
    double rms_residual = 0.0;
    double operator()(double xi) const;
};

struct CurveProbe {
    double target_rho = 0.0;
    double seed_action = 0.0;
    double measured_rho = 0.0;
    double rho_error = 0.0;
    CurveFit outgoing;  // I as a function of ξ at outgoing crossings
    CurveFit incoming;  // inner launch action at ξ̃
    OrbitTrace trace;
};

struct ProbeOptions {
    int iterations = 5000;
    int harmonics = 32;
    int refine_iterations = 1000;
    double xi0 = 0.0;
    double action_hint = 0.0;
};

CurveProbe invariant_curve_probe(double target_rho, const PerturbationProfile& profile, const PhysParams& p,
                                 const ProbeOptions& opt = {});

// ρ/2π at distance > 1e-3 from every p/q with q ≤ 20
bool is_diophantine_surrogate(double rho);

CurveFit fit_periodic(const std::vector<double>& xi, const std::vector<double>& val, int harmonics);

}  // namespace rkb
