#include "kse/compact_fd.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace kse;
using fd::BoundaryScheme;
using fd::Grid;

namespace {

constexpr double kPi = std::numbers::pi;

linalg::RealVector sample(const Grid& g, double (*f)(double)) {
    linalg::RealVector v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.x(i));
    return v;
}

double max_error(const fd::DerivativeOperator& d, const Grid& g, double (*f)(double),
                 double (*df)(double)) {
    return oracle::max_abs_diff(linalg::mat_vec(d.matrix, sample(g, f)), sample(g, df));
}

}  // namespace

TEST_CASE("grid spacing follows the boundary scheme") {
    const Grid p(0.0, 2.0 * kPi, 8, BoundaryScheme::kPeriodic);
    CHECK(p.h() == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    CHECK(p.x(7) == doctest::Approx(7.0 * kPi / 4.0));

    const Grid d(-1.0, 1.0, 41, BoundaryScheme::kDirichlet);
    CHECK(d.h() == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(d.x(40) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(Grid::with_spacing(-50.0, 50.0, 4.0, BoundaryScheme::kDirichlet).size() == 26);
    CHECK(Grid::with_spacing(-50.0, 50.0, 0.5, BoundaryScheme::kDirichlet).size() == 201);
    CHECK(Grid::with_spacing(0.0, 1.0, 0.25, BoundaryScheme::kPeriodic).size() == 4);
    CHECK(d.nodes().size() == 41);
    CHECK(fd::to_string(BoundaryScheme::kPeriodic) == "periodic");
}

TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(Grid(1.0, 1.0, 10, BoundaryScheme::kDirichlet), std::invalid_argument);
    CHECK_THROWS_AS(Grid(0.0, 1.0, 1, BoundaryScheme::kDirichlet), std::invalid_argument);
    CHECK_THROWS_AS(Grid::with_spacing(0.0, 1.0, 0.3, BoundaryScheme::kDirichlet),
                    std::invalid_argument);
    CHECK_THROWS_AS(Grid::with_spacing(0.0, 1.0, -0.1, BoundaryScheme::kDirichlet),
                    std::invalid_argument);
    const Grid small(0.0, 1.0, 5, BoundaryScheme::kDirichlet);
    CHECK_THROWS_AS(fd::build_first_derivative(small), std::invalid_argument);
    const Grid six(0.0, 1.0, 6, BoundaryScheme::kDirichlet);
    CHECK_NOTHROW(fd::build_first_derivative(six));
    CHECK_THROWS_AS(fd::build_second_derivative(six), std::invalid_argument);
}

TEST_CASE("Dirichlet operators are exact on low-degree polynomials") {
    const Grid g(0.0, 2.0, 21, BoundaryScheme::kDirichlet);
    const auto d1 = fd::build_first_derivative(g);
    const auto d2 = fd::build_second_derivative(g);
    CHECK(d1.order == 1);
    CHECK(d2.order == 2);
    for (int p = 0; p <= 5; ++p) {
        linalg::RealVector u(g.size()), du(g.size()), ddu(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.x(i);
            u[i] = std::pow(x, p);
            du[i] = p > 0 ? p * std::pow(x, p - 1) : 0.0;
            ddu[i] = p > 1 ? p * (p - 1) * std::pow(x, p - 2) : 0.0;
        }
        const double scale = std::max(1.0, oracle::max_abs(ddu));
        if (p <= 4) CHECK(oracle::max_abs_diff(linalg::mat_vec(d1.matrix, u), du) < 1e-11 * scale);
        CHECK(oracle::max_abs_diff(linalg::mat_vec(d2.matrix, u), ddu) < 1e-8 * scale);
    }
}

TEST_CASE("periodic operators have the compact-scheme symbol") {
    // D1 e^{i theta j} = i (3/h) 2 sin(theta) / (4 + 2 cos theta) e^{i theta j}
    // D2 e^{i theta j} = (12/h^2) (2 cos theta - 2) / (10 + 2 cos theta) e^{i theta j}
    const std::size_t n = 32;
    const Grid g(0.0, 5.0, n, BoundaryScheme::kPeriodic);
    const double h = g.h();
    const auto d1 = fd::build_first_derivative(g);
    const auto d2 = fd::build_second_derivative(g);
    const auto d4 = fd::build_fourth_derivative(g);
    for (std::size_t m = 0; m <= n / 2; ++m) {
        const double theta = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
        const double s1 = 3.0 / h * 2.0 * std::sin(theta) / (4.0 + 2.0 * std::cos(theta));
        const double s2 = 12.0 / (h * h) * (2.0 * std::cos(theta) - 2.0) / (10.0 + 2.0 * std::cos(theta));
        linalg::RealVector c(n), s(n);
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = std::cos(theta * static_cast<double>(j));
            s[j] = std::sin(theta * static_cast<double>(j));
        }
        linalg::RealVector want1(n), want2(n), want4(n);
        for (std::size_t j = 0; j < n; ++j) {
            want1[j] = -s1 * s[j];
            want2[j] = s2 * c[j];
            want4[j] = s2 * s2 * c[j];
        }
        CHECK(oracle::max_abs_diff(linalg::mat_vec(d1.matrix, c), want1) < 1e-12 * (1.0 + std::abs(s1)));
        CHECK(oracle::max_abs_diff(linalg::mat_vec(d2.matrix, c), want2) < 1e-12 * (1.0 + std::abs(s2)));
        CHECK(oracle::max_abs_diff(linalg::mat_vec(d4.matrix, c), want4) < 1e-11 * (1.0 + s2 * s2));
    }
}

TEST_CASE("fourth-order convergence on a smooth function") {
    auto f = [](double x) { return std::sin(x); };
    auto df = [](double x) { return std::cos(x); };
    auto ddf = [](double x) { return -std::sin(x); };
    for (auto scheme : {BoundaryScheme::kDirichlet, BoundaryScheme::kPeriodic}) {
        double prev1 = 0.0, prev2 = 0.0;
        for (std::size_t n : {20u, 40u, 80u}) {
            const double b = scheme == BoundaryScheme::kPeriodic ? 2.0 * kPi : 2.0;
            const Grid g(0.0, b, scheme == BoundaryScheme::kPeriodic ? n : n + 1, scheme);
            const double e1 = max_error(fd::build_first_derivative(g), g, f, df);
            const double e2 = max_error(fd::build_second_derivative(g), g, f, ddf);
            if (prev1 > 0.0) {
                CHECK(std::log2(prev1 / e1) == doctest::Approx(4.0).epsilon(0.12));
                CHECK(std::log2(prev2 / e2) == doctest::Approx(4.0).epsilon(0.12));
            }
            prev1 = e1;
            prev2 = e2;
        }
    }
}

TEST_CASE("closure rows carry the published coefficients") {
    const Grid g(0.0, 1.0, 11, BoundaryScheme::kDirichlet);
    const double h = g.h();
    const auto p1 = fd::first_derivative_pair(g);
    CHECK(p1.lhs(0, 0) == 4.0);
    CHECK(p1.lhs(0, 1) == 12.0);
    CHECK(p1.rhs(0, 0) == doctest::Approx(3.0 / h * -34.0 / 9.0));
    CHECK(p1.rhs(0, 3) == doctest::Approx(3.0 / h * -2.0 / 9.0));
    CHECK(p1.rhs(10, 10) == doctest::Approx(3.0 / h * 34.0 / 9.0));
    const auto p2 = fd::second_derivative_pair(g);
    CHECK(p2.lhs(0, 1) == 100.0);
    CHECK(p2.rhs(0, 0) == doctest::Approx(12.0 / (h * h) * 725.0 / 72.0));
    CHECK(p2.rhs(10, 6) == doctest::Approx(12.0 / (h * h) * 5.0 / 72.0));
    CHECK(p2.lhs(5, 4) == 1.0);
    CHECK(p2.lhs(5, 5) == 10.0);
}

TEST_CASE("matrix CSV uses full precision") {
    linalg::RealMatrix m(1, 2);
    m(0, 0) = 1.0;
    m(0, 1) = -0.1;
    std::ostringstream out;
    fd::write_matrix_csv(out, m);
    CHECK(out.str() == "1.00000000000000000e+00,-1.00000000000000006e-01\n");
}
