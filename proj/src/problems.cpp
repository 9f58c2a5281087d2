#include "kse/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kse::problems {

namespace {

// sin(pi x) with the argument reduced first, so integer x gives exactly 0.
double sin_pi(double x) {
    const double r = std::remainder(x, 2.0);  // r in [-1, 1]
    if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
    return std::sin(std::numbers::pi * r);
}

}  // namespace

double example1_exact(double x, double t, const TravelingWave& w) {
    const double th = std::tanh(w.nu * (x - w.mu * t - w.x0));
    return w.mu + (15.0 * th * th * th - 45.0 * th) / std::pow(19.0, 1.5);
}

std::array<double, 3> example4_profile_betas() {
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    return {0.4 / pi2, 0.6 / pi2, 0.8 / pi2};
}

std::optional<BoundaryValues> ProblemSpec::boundary_values() const {
    if (scheme == fd::BoundaryScheme::kPeriodic) return std::nullopt;
    if (!exact_solution) return BoundaryValues::homogeneous();
    auto exact = exact_solution;
    const double left = a;
    const double right = b;
    return BoundaryValues{[exact, left](double t) { return exact(left, t); },
                          [exact, right](double t) { return exact(right, t); }};
}

fd::Grid ProblemSpec::grid_with_points(std::size_t n) const { return fd::Grid(a, b, n, scheme); }

fd::Grid ProblemSpec::grid_with_spacing(double h) const {
    return fd::Grid::with_spacing(a, b, h, scheme);
}

RealVector ProblemSpec::initial_state(const fd::Grid& grid) const {
    RealVector u(grid.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = initial_condition(grid.x(i));
    if (scheme == fd::BoundaryScheme::kDirichlet && !exact_solution) {
        u.front() = 0.0;
        u.back() = 0.0;
    }
    return u;
}

RealVector ProblemSpec::exact_state(const fd::Grid& grid, double t) const {
    if (!exact_solution) {
        throw ProblemError("Example " + std::to_string(id) + " has no exact solution");
    }
    RealVector u(grid.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = exact_solution(grid.x(i), t);
    return u;
}

SemiDiscreteKse ProblemSpec::system(const fd::Grid& grid, FourthDerivativeForm form) const {
    return SemiDiscreteKse(params, grid, boundary_values(), form);
}

ProblemSpec make_problem(int id, const ProblemOverrides& overrides) {
    if (overrides.beta && id != 4) {
        throw ProblemError("beta override applies only to Example 4, not Example " +
                           std::to_string(id));
    }
    ProblemSpec p;
    p.id = id;
    switch (id) {
        case 1: {
            const TravelingWave w;
            p.a = -50.0;
            p.b = 50.0;
            p.params = {-1.0, 1.0};
            p.scheme = fd::BoundaryScheme::kDirichlet;
            p.wave = w;
            p.exact_solution = [w](double x, double t) { return example1_exact(x, t, w); };
            p.initial_condition = [w](double x) { return example1_exact(x, 0.0, w); };
            break;
        }
        case 2:
            p.a = 0.0;
            p.b = 32.0 * std::numbers::pi;
            p.params = {1.0, 1.0};
            p.scheme = fd::BoundaryScheme::kPeriodic;
            p.initial_condition = [](double x) {
                return std::cos(x / 16.0) * (1.0 + std::sin(x / 16.0));
            };
            break;
        case 3:
            p.a = -30.0;
            p.b = 30.0;
            p.params = {1.0, 1.0};
            p.scheme = fd::BoundaryScheme::kDirichlet;
            p.initial_condition = [](double x) { return std::exp(-x * x); };
            break;
        case 4: {
            const double beta = overrides.beta.value_or(kExample4BetaTable);
            if (!std::isfinite(beta) || beta <= 0.0) {
                throw ProblemError("Example 4 beta must be positive and finite");
            }
            p.a = -1.0;
            p.b = 1.0;
            p.params = {1.0, beta};
            p.scheme = fd::BoundaryScheme::kDirichlet;
            p.initial_condition = [](double x) { return -sin_pi(x); };
            break;
        }
        default:
            throw ProblemError("unknown problem id " + std::to_string(id) + " (expected 1..4)");
    }
    return p;
}

}  // namespace kse::problems
