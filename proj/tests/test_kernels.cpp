#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rkb/kernels.hpp"

using namespace rkb;

namespace {
const PhysParams P1 = make_params(2.5, 2.0, 2.0, 1.0);
}

TEST_CASE("parallel section sweep matches the serial reference bit for bit") {
    const auto pr = PerturbationProfile::cos_mode(2, 0.02);
    std::vector<BoundaryState> seeds;
    for (int i = 0; i < 7; ++i) seeds.push_back(make_state(0.3 * i, -1.1 + 0.35 * i, pr, P1));
    const auto ref = serial::section_sweep(seeds, 15, pr, P1);
    for (int w : {1, 2, 4}) {
        const auto par = section_sweep(seeds, 15, pr, P1, w);
        REQUIRE(par.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            REQUIRE(par[i].states.size() == ref[i].states.size());
            CHECK(par[i].status == ref[i].status);
            for (std::size_t k = 0; k < ref[i].states.size(); ++k) {
                CHECK(par[i].states[k].xi == ref[i].states[k].xi);
                CHECK(par[i].states[k].action_I == ref[i].states[k].action_I);
            }
        }
    }
}

TEST_CASE("parallel Jacobian grid matches the serial reference") {
    const auto pr = PerturbationProfile::cos_mode(2, 0.02);
    const std::vector<double> xi{0.0, 1.5, 3.0}, I{-0.9, 0.2, 1.0};
    const auto ref = serial::jacobian_determinant_grid(xi, I, pr, P1, 1e-6);
    const auto par = jacobian_determinant_grid(xi, I, pr, P1, 1e-6, 3);
    REQUIRE(par.det.size() == 9);
    for (std::size_t k = 0; k < ref.det.size(); ++k) {
        CHECK(par.det[k] == ref.det[k]);
        CHECK(par.det[k] == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("oracle grid: numeric composition against the closed form") {
    const std::vector<double> alphas{-1.4, -0.7, 0.0, 0.5, 1.3};
    const auto ref = serial::oracle_grid(0.25, alphas, P1);
    const auto par = oracle_grid(0.25, alphas, P1, 2);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        CHECK(par[i].xi_numeric == ref[i].xi_numeric);
        CHECK(std::abs(ref[i].xi_numeric - ref[i].xi_closed) < 1e-10);
        CHECK(ref[i].action_drift < 1e-12);
    }
}
