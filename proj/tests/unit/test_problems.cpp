#include "kse/problems.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace kse;
using problems::example1_exact;

TEST_CASE("traveling wave values") {
    CHECK(example1_exact(-25.0, 0.0) == 5.0);
    const double far = 5.0 - 30.0 / std::pow(19.0, 1.5);
    CHECK(example1_exact(1e4, 0.0) == doctest::Approx(far).epsilon(1e-14));
    CHECK(far == doctest::Approx(4.63776).epsilon(1e-6));
    CHECK(example1_exact(-1e4, 0.0) == doctest::Approx(5.0 + 30.0 / std::pow(19.0, 1.5)));
    for (double x : {-40.0, -3.0, 12.5}) {
        for (double t : {0.5, 3.0}) {
            const double dt = 0.7;
            CHECK(std::abs(example1_exact(x, t) - example1_exact(x - 5.0 * dt, t - dt)) <= 1e-14);
        }
    }
}

TEST_CASE("traveling wave solves the PDE") {
    // u_t + u u_x - u_xx + u_xxxx = 0 with derivatives from sixth-order differences.
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> xs(-50.0, 50.0), ts(0.0, 12.0);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
        const double x = xs(rng);
        const double t = ts(rng);
        auto in_x = [t](double y) { return example1_exact(y, t); };
        auto in_t = [x](double s2) { return example1_exact(x, s2); };
        const double u = example1_exact(x, t);
        const double res = oracle::derivative1(in_t, t, 1e-2) + u * oracle::derivative1(in_x, x, 1e-2) -
                           oracle::derivative2(in_x, x, 1e-2) + oracle::derivative4(in_x, x, 5e-2);
        worst = std::max(worst, std::abs(res));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("problem definitions") {
    const auto p1 = problems::make_problem(1);
    CHECK(p1.a == -50.0);
    CHECK(p1.b == 50.0);
    CHECK(p1.params.alpha == -1.0);
    CHECK(p1.params.beta == 1.0);
    CHECK(p1.scheme == fd::BoundaryScheme::kDirichlet);
    CHECK(p1.has_exact());
    const auto bv = p1.boundary_values();
    REQUIRE(bv);
    CHECK(bv->left(1.5) == example1_exact(-50.0, 1.5));
    CHECK(bv->right(1.5) == example1_exact(50.0, 1.5));
    CHECK(p1.initial_condition(3.0) == example1_exact(3.0, 0.0));

    const auto p2 = problems::make_problem(2);
    CHECK(p2.scheme == fd::BoundaryScheme::kPeriodic);
    CHECK(p2.initial_condition(0.0) == 1.0);
    CHECK(std::abs(p2.initial_condition(0.0) - p2.initial_condition(32.0 * std::numbers::pi)) <= 1e-14);
    CHECK_FALSE(p2.has_exact());
    CHECK_FALSE(p2.boundary_values());
    CHECK_THROWS_AS(p2.exact_state(p2.grid_with_points(16), 0.0), problems::ProblemError);

    const auto p3 = problems::make_problem(3);
    CHECK(p3.a == -30.0);
    CHECK(p3.initial_condition(0.0) == 1.0);
    const auto u3 = p3.initial_state(p3.grid_with_points(101));
    CHECK(u3.front() == 0.0);
    CHECK(u3.back() == 0.0);
    CHECK(u3[50] == 1.0);

    const auto p4 = problems::make_problem(4);
    CHECK(p4.params.beta == 1.1);
    const auto g4 = p4.grid_with_spacing(0.05);
    CHECK(g4.size() == 41);
    CHECK(p4.initial_condition(-1.0) == 0.0);
    CHECK(p4.initial_condition(1.0) == 0.0);
    CHECK(p4.initial_condition(0.5) == doctest::Approx(-1.0).epsilon(1e-15));
    const auto u4 = p4.initial_state(g4);
    CHECK(u4.front() == 0.0);
    CHECK(u4.back() == 0.0);
}

TEST_CASE("beta override and error paths") {
    const auto betas = problems::example4_profile_betas();
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(betas[0] == 0.4 / pi2);
    CHECK(betas[2] == 0.8 / pi2);
    const auto p = problems::make_problem(4, {betas[1]});
    CHECK(p.params.beta == 0.6 / pi2);
    CHECK_THROWS_AS(problems::make_problem(0), problems::ProblemError);
    CHECK_THROWS_AS(problems::make_problem(5), problems::ProblemError);
    CHECK_THROWS_AS(problems::make_problem(2, {0.5}), problems::ProblemError);
    CHECK_THROWS_AS(problems::make_problem(4, {-1.0}), problems::ProblemError);
}

TEST_CASE("literature GRE constants are stored for the comparison table") {
    CHECK(problems::kGreTimes[3] == 12.0);
    CHECK(std::string(problems::kLiteratureGre[0].scheme) == "SBSC");
    CHECK(problems::kLiteratureGre[0].gre[0] == 1.625e-07);
    CHECK(problems::kLiteratureGre[2].gre[3] == 1.179e-05);
}
