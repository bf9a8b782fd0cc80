#pragma once

#include <vector>

#include "rkb/orbit.hpp"

namespace rkb {

// Parallel sweeps over independent seeds.  Each has a serial twin in rkb::serial
// producing bit-identical output.

std::vector<OrbitTrace> section_sweep(const std::vector<BoundaryState>& seeds, int n,
                                      const PerturbationProfile& profile, const PhysParams& p, int workers);

struct JacobianGrid {
    std::vector<double> xi;
    std::vector<double> action;
    std::vector<double> det;  // row-major: det[i * action.size() + j] at (xi[i], action[j])
};

JacobianGrid jacobian_determinant_grid(const std::vector<double>& xi, const std::vector<double>& action,
                                       const PerturbationProfile& profile, const PhysParams& p, double h,
                                       int workers);

struct OracleRow {
    double alpha0 = 0.0;
    double xi_numeric = 0.0;
    double xi_closed = 0.0;
    double action_drift = 0.0;  // |I1 − I0| along the numeric path
};

// numeric ODE composition against the closed-form circular map (unit circle only)
std::vector<OracleRow> oracle_grid(double xi0, const std::vector<double>& alpha0, const PhysParams& p, int workers);

namespace serial {
std::vector<OrbitTrace> section_sweep(const std::vector<BoundaryState>& seeds, int n,
                                      const PerturbationProfile& profile, const PhysParams& p);
JacobianGrid jacobian_determinant_grid(const std::vector<double>& xi, const std::vector<double>& action,
                                       const PerturbationProfile& profile, const PhysParams& p, double h);
std::vector<OracleRow> oracle_grid(double xi0, const std::vector<double>& alpha0, const PhysParams& p);
}  // namespace serial

}  // namespace rkb
