#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rkb/errors.hpp"
#include "rkb/model.hpp"

using namespace rkb;
using doctest::Approx;

TEST_CASE("figure parameter sets are valid and give the action bound") {
    const auto p1 = make_params(2.5, 2.0, 2.0, 1.0);
    CHECK(p1.action_bound_Ic == Approx(1.414213562373095).epsilon(1e-14));
    const auto p2 = make_params(10.0, 3.0, 44.0, 1.0);
    CHECK(p2.action_bound_Ic == Approx(3.0822070014844882).epsilon(1e-14));
    CHECK(p1.omega() == Approx(1.0));
    CHECK(p1.Omega_sq() == Approx(9.0));
}

TEST_CASE("invalid parameters name the violated inequality") {
    CHECK_THROWS_AS(make_params(2.5, 2.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_params(2.5, 2.0, 2.0, -1.0), DomainError);
    CHECK_THROWS_AS(make_params(2.5, -3.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_params(0.8, 2.0, 2.0, 1.0), DomainError);
    try {
        make_params(2.5, 2.0, -1.0, 1.0);
        FAIL("no throw");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("mass_mu") != std::string::npos);
    }
}

TEST_CASE("potentials on the unit circle") {
    const auto p = make_params(2.5, 2.0, 2.0, 1.0);
    CHECK(potential(Vec2{1.0, 0.0}, Region::outer, p) == Approx(2.0));
    CHECK(potential(Vec2{0.0, 1.0}, Region::inner, p) == Approx(6.5));
    CHECK(potential_outer_r(std::sqrt(5.0), p) == Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(potential_inner_r(0.0, p), SingularityError);
}

TEST_CASE("circle profile") {
    const auto c = PerturbationProfile::circle();
    CHECK(c.is_circle());
    for (double xi : {0.0, 1.0, 4.0}) {
        const auto b = boundary(xi, c);
        CHECK(b.radius == 1.0);
        CHECK(b.speed == Approx(1.0));
        CHECK(b.point.x == Approx(std::cos(xi)));
        CHECK(dot(b.normal_out_unit, b.point) == Approx(1.0));
    }
}

TEST_CASE("perturbed profile derivatives and frame") {
    PerturbationProfile pr;
    pr.fourier_cos = {0.1, 0.0, 1.0, 0.3};
    pr.fourier_sin = {0.0, 0.5, 0.0, -0.2};
    pr.epsilon = 0.05;
    pr.validate();
    CHECK_FALSE(pr.is_circle());
    const double h = 1e-5;
    for (double xi : {0.3, 2.0, 5.5}) {
        CHECK(pr.f_prime(xi) == Approx((pr.f(xi + h) - pr.f(xi - h)) / (2 * h)).epsilon(1e-8));
        CHECK(pr.f_second(xi) == Approx((pr.f_prime(xi + h) - pr.f_prime(xi - h)) / (2 * h)).epsilon(1e-8));
        const auto b = boundary(xi, pr);
        const auto bp = boundary(xi + h, pr), bm = boundary(xi - h, pr);
        const Vec2 d = (bp.point - bm.point) / (2 * h);
        CHECK(b.speed == Approx(norm(d)).epsilon(1e-8));
        CHECK(dot(b.tangent_unit, b.normal_out_unit) == Approx(0.0).epsilon(1e-14));
        CHECK(cross(b.tangent_unit, b.normal_out_unit) == Approx(-1.0));
        CHECK(dot(b.normal_out_unit, b.point) > 0.0);
    }
    CHECK(pr.max_radius() >= pr.min_radius());
}

TEST_CASE("ellipse-like preset") {
    const auto e = PerturbationProfile::ellipse_like(0.01);
    CHECK(e.radius(0.0) == Approx(1.0));
    CHECK(e.radius(kPi / 2) == Approx(0.98));
}

TEST_CASE("profile validation rejects non-positive radius") {
    auto pr = PerturbationProfile::cos_mode(2, 1.5);
    CHECK_THROWS_AS(pr.validate(), DomainError);
    pr.epsilon = std::nan("");
    CHECK_THROWS_AS(pr.validate(), DomainError);
}
