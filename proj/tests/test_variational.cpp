#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rkb/inner.hpp"
#include "rkb/outer.hpp"
#include "rkb/variational.hpp"

using namespace rkb;
using doctest::Approx;

namespace {
const PhysParams P1 = make_params(2.5, 2.0, 2.0, 1.0);
const PerturbationProfile C = PerturbationProfile::circle();
}  // namespace

TEST_CASE("Jacobi length of the radial arcs") {
    const auto b = boundary(0.0, C);
    const ArcSegment coll = inner_arc_ivp(b.point, inner_launch_velocity(b, 0.0, P1), C, P1);
    CHECK(jacobi_length(coll, P1) == Approx(7.3518866412087089).epsilon(1e-11));
    const ArcSegment brake = outer_arc_ivp(b.point, outer_launch_velocity(b, 0.0, P1), C, P1);
    CHECK(jacobi_length(brake, P1) == Approx(2.500148268297868).epsilon(1e-11));
}

TEST_CASE("L squared equals twice the Maupertuis action") {
    const auto pr = PerturbationProfile::cos_mode(3, 0.03);
    for (double I : {-1.1, 0.0, 0.3, 1.2}) {
        const MapStep st = return_map_step(make_state(0.5, I, pr, P1), pr, P1);
        for (const ArcSegment* a : {&st.outer, &st.inner}) {
            const double L = jacobi_length(*a, P1);
            CHECK(L * L == Approx(2.0 * maupertuis_action(*a, P1)).epsilon(1e-8));
        }
    }
}

TEST_CASE("generating function recovers the launch action") {
    GeneratingOptions o;
    o.action_hint = 1.05;
    const auto g = generating_function(0.0, -1.8157749899217608, C, P1, o);
    CHECK(g.action_I0 == Approx(1.0).epsilon(1e-10));
    CHECK(g.action_I1 == Approx(1.0).epsilon(1e-10));
    CHECK(g.xi_mid == Approx(1.3258176636680325).epsilon(1e-10));
    CHECK(std::abs(g.stationarity) < 1e-10);
}

TEST_CASE("action identities by finite differences of S") {
    const auto pr = PerturbationProfile::cos_mode(2, 0.01);
    for (const PerturbationProfile& prof : {C, pr}) {
        for (double I : {-0.6, 0.4, 1.25}) {
            GeneratingOptions o;
            o.action_hint = I;
            o.finite_differences = true;
            const double xi0 = 0.7;
            const double xi1 = xi0 + theta_bar(I, P1);
            const auto g = generating_function(xi0, xi1, prof, P1, o);
            CHECK(std::abs(g.action_I0 - g.action_I0_fd) < 1e-6);
            CHECK(std::abs(g.action_I1 - g.action_I1_fd) < 1e-6);
        }
    }
}

TEST_CASE("nondegeneracy of S at the intermediate point") {
    for (double I : {-1.0, 0.5, 1.2}) {
        GeneratingOptions o;
        o.action_hint = I;
        o.diagnostics = true;
        const auto g = generating_function(0.0, theta_bar(I, P1), C, P1, o);
        const auto s = circular_shift(I, P1);
        CHECK(g.nondeg_S == Approx((s.f_prime + s.g_prime) / (s.f_prime * s.g_prime)).epsilon(1e-6));
        CHECK(g.nondeg_twist == Approx(s.total_prime).epsilon(1e-6));
    }
}

TEST_CASE("discrete action of a circular periodic cycle") {
    const double I = 0.56390999290243655;  // θ̄(I) = −π/2
    const double step = theta_bar(I, P1);
    std::vector<double> cyc{0.0, step, 2 * step, 3 * step};
    const std::vector<double> hints(4, I);
    const auto da = discrete_action(cyc, -1, 4, C, P1, hints);
    for (double gk : da.gradient) CHECK(std::abs(gk) < 1e-9);

    std::vector<double> rot{step, 2 * step, 3 * step, 4 * step};
    CHECK(discrete_action(rot, -1, 4, C, P1, hints).W == Approx(da.W).epsilon(1e-11));
    std::vector<double> shifted;
    for (double x : cyc) shifted.push_back(x + 0.37);
    CHECK(discrete_action(shifted, -1, 4, C, P1, hints).W == Approx(da.W).epsilon(1e-11));

    // moving one point off the orbit gives a nonzero gradient there
    std::vector<double> off = cyc;
    off[1] += 0.01;
    const auto dd = discrete_action(off, -1, 4, C, P1, hints);
    CHECK(std::abs(dd.gradient[1]) > 1e-4);
}
