#include "rkb/refraction.hpp"

#include <cmath>

#include "rkb/errors.hpp"

namespace rkb {

namespace {

struct Pot {
    double VE, VI;
};

Pot pots(const BoundarySample& b, const PhysParams& p) {
    return {potential_outer_r(b.radius, p), potential_inner_r(b.radius, p)};
}

}  // namespace

double critical_angle(const BoundarySample& b, const PhysParams& p) {
    const Pot v = pots(b, p);
    return std::asin(std::sqrt(v.VE / v.VI));
}

RefractionResult refract_out(double beta_I, const BoundarySample& b, const PhysParams& p) {
    const Pot v = pots(b, p);
    const double ac = std::asin(std::sqrt(v.VE / v.VI));
    if (std::abs(beta_I) >= ac - kTangencyTol) return {RefractionOutcome::total_reflection, 0.0};
    const double s = std::sqrt(v.VI / v.VE) * std::sin(beta_I);
    return {RefractionOutcome::refracted, std::asin(s)};
}

double refract_in(double alpha_E, const BoundarySample& b, const PhysParams& p) {
    const Pot v = pots(b, p);
    return std::asin(std::sqrt(v.VE / v.VI) * std::sin(alpha_E));
}

Vec2 refract_velocity_in(Vec2 v_outer, const BoundarySample& b, const PhysParams& p) {
    const Pot v = pots(b, p);
    const double vt = dot(v_outer, b.tangent_unit);
    const double vn2 = 2.0 * v.VI - vt * vt;
    return b.tangent_unit * vt - b.normal_out_unit * std::sqrt(vn2);
}

std::optional<Vec2> refract_velocity_out(Vec2 v_inner, const BoundarySample& b, const PhysParams& p) {
    const double beta = std::atan2(dot(v_inner, b.tangent_unit), dot(v_inner, b.normal_out_unit));
    const RefractionResult r = refract_out(beta, b, p);
    if (r.outcome == RefractionOutcome::total_reflection) return std::nullopt;
    const Pot v = pots(b, p);
    const double vt = dot(v_inner, b.tangent_unit);
    return b.tangent_unit * vt + b.normal_out_unit * std::sqrt(2.0 * v.VE - vt * vt);
}

double snell_residual(Vec2 v_outer, Vec2 v_inner, const BoundarySample& b, const PhysParams& p) {
    const Pot v = pots(b, p);
    // angles from the normal line, signed toward the tangent
    auto side_angle = [&](Vec2 u) {
        const double n = dot(u, b.normal_out_unit), t = dot(u, b.tangent_unit);
        return std::atan2(t, std::abs(n));
    };
    return std::sqrt(v.VE) * std::sin(side_angle(v_outer)) - std::sqrt(v.VI) * std::sin(side_angle(v_inner));
}

}  // namespace rkb
