#include "rkb/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace rkb {

namespace {

double jacobian_det(double xi, double I, const PerturbationProfile& profile, const PhysParams& p, double h) {
    auto map = [&](double a, double b) { return return_map(make_state(a, b, profile, p), profile, p); };
    const BoundaryState xp = map(xi + h, I), xm = map(xi - h, I);
    const BoundaryState ip = map(xi, I + h), im = map(xi, I - h);
    const double a = (xp.xi - xm.xi) / (2 * h), b = (ip.xi - im.xi) / (2 * h);
    const double c = (xp.action_I - xm.action_I) / (2 * h), d = (ip.action_I - im.action_I) / (2 * h);
    return a * d - b * c;
}

OracleRow oracle_row(double xi0, double alpha, const PhysParams& p) {
    const PerturbationProfile circle = PerturbationProfile::circle();
    const BoundaryState s = make_state_from_angle(xi0, alpha, circle, p);
    const BoundaryState n = return_map(s, circle, p, MapMethod::numeric);
    const BoundaryState c = return_map(s, circle, p, MapMethod::closed_form);
    return {alpha, n.xi, c.xi, std::abs(n.action_I - s.action_I)};
}

int clamp_workers(int w) { return std::max(1, w); }

}  // namespace

std::vector<OrbitTrace> section_sweep(const std::vector<BoundaryState>& seeds, int n,
                                      const PerturbationProfile& profile, const PhysParams& p, int workers) {
    std::vector<OrbitTrace> out(seeds.size());
    const long N = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(dynamic) num_threads(clamp_workers(workers))
    for (long i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = iterate(seeds[static_cast<std::size_t>(i)], n, profile, p);
    return out;
}

JacobianGrid jacobian_determinant_grid(const std::vector<double>& xi, const std::vector<double>& action,
                                       const PerturbationProfile& profile, const PhysParams& p, double h,
                                       int workers) {
    JacobianGrid g{xi, action, std::vector<double>(xi.size() * action.size())};
    const long N = static_cast<long>(g.det.size());
    const std::size_t na = action.size();
#pragma omp parallel for schedule(dynamic) num_threads(clamp_workers(workers))
    for (long k = 0; k < N; ++k) {
        const std::size_t i = static_cast<std::size_t>(k) / na, j = static_cast<std::size_t>(k) % na;
        g.det[static_cast<std::size_t>(k)] = jacobian_det(xi[i], action[j], profile, p, h);
    }
    return g;
}

std::vector<OracleRow> oracle_grid(double xi0, const std::vector<double>& alpha0, const PhysParams& p, int workers) {
    std::vector<OracleRow> out(alpha0.size());
    const long N = static_cast<long>(alpha0.size());
#pragma omp parallel for schedule(dynamic) num_threads(clamp_workers(workers))
    for (long i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = oracle_row(xi0, alpha0[static_cast<std::size_t>(i)], p);
    return out;
}

namespace serial {

std::vector<OrbitTrace> section_sweep(const std::vector<BoundaryState>& seeds, int n,
                                      const PerturbationProfile& profile, const PhysParams& p) {
    std::vector<OrbitTrace> out;
    for (const auto& s : seeds) out.push_back(iterate(s, n, profile, p));
    return out;
}

JacobianGrid jacobian_determinant_grid(const std::vector<double>& xi, const std::vector<double>& action,
                                       const PerturbationProfile& profile, const PhysParams& p, double h) {
    JacobianGrid g{xi, action, {}};
    for (double x : xi)
        for (double a : action) g.det.push_back(jacobian_det(x, a, profile, p, h));
    return g;
}

std::vector<OracleRow> oracle_grid(double xi0, const std::vector<double>& alpha0, const PhysParams& p) {
    std::vector<OracleRow> out;
    for (double a : alpha0) out.push_back(oracle_row(xi0, a, p));
    return out;
}

}  // namespace serial

}  // namespace rkb
