#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rkb/errors.hpp"
#include "rkb/return_map.hpp"

using namespace rkb;
using doctest::Approx;

namespace {
const PhysParams P1 = make_params(2.5, 2.0, 2.0, 1.0);
const PhysParams P4 = make_params(7.0, 2.0, 15.0, 3.0);
const PhysParams PB = make_params(2.5, 2.0, 1.0, 1.0);
const PerturbationProfile C = PerturbationProfile::circle();
}  // namespace

TEST_CASE("states respect the action bound") {
    CHECK(action_bound(0.3, C, P1) == Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(make_state(0.0, 1.5, C, P1), OutOfActionRange);
    const auto s = make_state_from_angle(0.2, kPi / 4, C, P1);
    CHECK(s.action_I == Approx(1.0).epsilon(1e-14));
    CHECK(make_state(0.2, 1.0, C, P1).alpha == Approx(kPi / 4).epsilon(1e-14));
    const auto b = boundary(0.2, C);
    CHECK(canonical_action(launch_velocity(s, C, P1), b) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("canonical action on a perturbed boundary uses the unnormalised tangent") {
    const auto pr = PerturbationProfile::cos_mode(2, 0.1);
    const auto b = boundary(0.6, pr);
    const auto s = make_state_from_angle(0.6, 0.5, pr, P1);
    CHECK(s.action_I == Approx(b.speed * std::sqrt(potential_outer_r(b.radius, P1)) * std::sin(0.5)).epsilon(1e-14));
}

TEST_CASE("circular shift anchors") {
    const auto s = circular_shift(1.0, P1);
    CHECK(s.f_val == Approx(1.3258176636680325).epsilon(1e-14));
    CHECK(std::abs(s.g_val + kPi) < 1e-12);
    CHECK(s.total == Approx(-1.8157749899217608).epsilon(1e-14));
    CHECK_THROWS_AS(circular_shift(std::sqrt(2.0), P1), OutOfActionRange);
    CHECK(circular_shift(std::sqrt(2.0) * (1 - 1e-13), P1).g_val == Approx(-3.7850937623830776).epsilon(1e-5));
    CHECK(theta_bar_boundary(P1) == Approx(3.7850937623830776).epsilon(1e-14));
    CHECK(theta_bar(P4.action_bound_Ic, P4) == Approx(0.39146817053585584).epsilon(1e-13));
    for (double I : {-1.2, -0.3, 0.4, 1.3}) {
        const auto c = circular_shift(I, P1);
        const double h = 1e-6;
        CHECK(c.total_prime == Approx((theta_bar(I + h, P1) - theta_bar(I - h, P1)) / (2 * h)).epsilon(1e-7));
        CHECK(c.f_prime == Approx((circular_shift(I + h, P1).f_val - circular_shift(I - h, P1).f_val) / (2 * h)).epsilon(1e-7));
        CHECK(theta_bar(-I, P1) == Approx(-theta_bar(I, P1)));
    }
}

TEST_CASE("twist at zero") {
    CHECK(twist_at_zero(P1) == Approx(-3.9676486636943088).epsilon(1e-14));
    CHECK(twist_at_zero(make_params(10, 3, 44, 1)) == Approx(-0.069907184727715964).epsilon(1e-12));
    CHECK(twist_at_zero(make_params(10, 3, 55, 1)) == Approx(0.016716945661601565).epsilon(1e-12));
    CHECK(twist_at_zero(PB) == Approx(-8.2494606697483831).epsilon(1e-14));
    const double h = 1e-6;
    CHECK(twist_at_zero(P1) == Approx((theta_bar(h, P1) - theta_bar(-h, P1)) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("twist critical set agrees with sign changes of the derivative") {
    for (const PhysParams& p : {P1, P4, PB, make_params(10, 3, 44, 1), make_params(10, 3, 55, 1)}) {
        const auto crit = twist_critical_points(p);
        CHECK(crit.size() <= 10);
        for (const auto& c : crit) {
            if (c.tangential) continue;
            const double a = circular_shift(c.action - 1e-6, p).total_prime;
            const double b = circular_shift(c.action + 1e-6, p).total_prime;
            CHECK((a < 0.0) != (b < 0.0));
        }
    }
    // twist is negative at 0 and blows up to +inf at I_c, so one root per side
    const auto c2 = twist_critical_set(make_params(2.5, 2.0, 2.0, 2.0));
    REQUIRE(c2.size() == 2);
    CHECK(c2[1] == Approx(0.9249875019576).epsilon(1e-10));
    const auto c1 = twist_critical_set(P1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0] == Approx(-c1[1]));
}

TEST_CASE("monotone branches and inverse") {
    const auto br = monotone_branches(P1);
    REQUIRE(br.size() == 3);
    const auto r4 = theta_bar_roots(-kPi / 2, P1);
    REQUIRE(r4.size() == 2);
    CHECK(r4[0] == Approx(0.56390999290243655).epsilon(1e-13));
    CHECK(r4[1] == Approx(1.2696764001811619).epsilon(1e-13));
    const auto r3 = theta_bar_roots(-kTwoPi / 3, PB);
    REQUIRE(r3.size() == 2);
    CHECK(r3[0] == Approx(0.47420746351301789).epsilon(1e-13));
    CHECK(r3[1] == Approx(1.2063510372412878).epsilon(1e-13));
    CHECK_THROWS_AS(theta_bar_inverse(-kTwoPi / 3, P1, 1.0), RangeEmpty);
    CHECK(theta_bar_inverse(-1.8157749899217608, P1, 1.1) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("circular return map step") {
    const auto s = make_state(0.0, 1.0, C, P1);
    const auto n = return_map(s, C, P1, MapMethod::numeric);
    CHECK(n.xi == Approx(-1.8157749899217608).epsilon(1e-12));
    CHECK(n.action_I == Approx(1.0).epsilon(1e-13));
    const auto st = return_map_step(s, C, P1);
    CHECK(st.mid.xi == Approx(1.3258176636680325).epsilon(1e-12));
    CHECK(std::abs(st.snell_in) < 1e-13);
    CHECK(std::abs(st.snell_out) < 1e-13);
    CHECK_THROWS_AS(return_map(s, PerturbationProfile::cos_mode(2, 0.01), P1, MapMethod::closed_form), DomainError);
    const auto zero = return_map(make_state(0.4, 0.0, C, P1), C, P1, MapMethod::numeric);
    CHECK(zero.xi == Approx(0.4).epsilon(1e-14));
}

TEST_CASE("perturbed map is area preserving at sample points") {
    const auto pr = PerturbationProfile::cos_mode(2, 0.02);
    const double h = 1e-6;
    for (auto [xi, I] : {std::pair{0.3, 0.5}, std::pair{2.0, -1.0}, std::pair{4.4, 1.1}}) {
        auto m = [&](double a, double b) { return return_map(make_state(a, b, pr, P1), pr, P1); };
        const auto xp = m(xi + h, I), xm = m(xi - h, I), ip = m(xi, I + h), im = m(xi, I - h);
        const double det = (xp.xi - xm.xi) * (ip.action_I - im.action_I) - (ip.xi - im.xi) * (xp.action_I - xm.action_I);
        CHECK(det / (4 * h * h) == Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("non-homothetic fixed point thresholds") {
    const auto t = fixed_point_thresholds(P4);
    CHECK(t.mu_bar == Approx(41.628728824925082).epsilon(1e-13));
    CHECK(nonhomothetic_hypotheses(P4));
    CHECK_FALSE(nonhomothetic_hypotheses(P1));
    const double I = find_nonhomothetic_fixed_point(P4);
    CHECK(I == Approx(2.3174125692633393).epsilon(1e-12));
    CHECK(std::abs(theta_bar(I, P4)) < 1e-12);
}
