#pragma once

#include "kse/compact_fd.hpp"
#include "kse/kse_system.hpp"

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>

namespace kse::problems {

/// Example 1 traveling wave:
/// u = mu + (15 tanh^3(xi) - 45 tanh(xi)) / 19^{3/2},  xi = nu (x - mu t - x0).
struct TravelingWave {
    double mu = 5.0;
    double nu = 0.11470786693528087;  // 1 / (2 sqrt 19)
    double x0 = -25.0;
};

double example1_exact(double x, double t, const TravelingWave& wave = {});

/// Example 4 values of beta: the convergence run and the three profile runs.
inline constexpr double kExample4BetaTable = 1.1;
std::array<double, 3> example4_profile_betas();

struct ProblemOverrides {
    std::optional<double> beta;  // Example 4 only
};

class ProblemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ProblemSpec {
    int id = 0;
    double a = 0.0;
    double b = 0.0;
    KseParameters params;
    fd::BoundaryScheme scheme = fd::BoundaryScheme::kDirichlet;
    std::function<double(double)> initial_condition;
    std::function<double(double, double)> exact_solution;  // Example 1 only
    std::optional<TravelingWave> wave;

    bool has_exact() const { return static_cast<bool>(exact_solution); }

    /// Endpoint data for Dirichlet problems; nullopt when periodic.
    std::optional<BoundaryValues> boundary_values() const;

    fd::Grid grid_with_points(std::size_t n) const;
    fd::Grid grid_with_spacing(double h) const;

    /// Initial condition sampled on `grid`, with exact zeros at homogeneous
    /// Dirichlet endpoints.
    RealVector initial_state(const fd::Grid& grid) const;

    /// Exact solution on `grid` at t. Throws if there is none.
    RealVector exact_state(const fd::Grid& grid, double t) const;

    SemiDiscreteKse system(const fd::Grid& grid,
                           FourthDerivativeForm form = FourthDerivativeForm::kFactoredProduct) const;
};

/// Throws ProblemError on an unknown id or an override the problem does not accept.
ProblemSpec make_problem(int id, const ProblemOverrides& overrides = {});

/// Literature GRE values for Example 1 (N = 200, k = 0.01) from the
/// comparison schemes. Reference constants only; never recomputed here.
struct LiteratureGre {
    const char* scheme;
    std::array<double, 4> gre;
};
inline constexpr std::array<double, 4> kGreTimes{6.0, 8.0, 10.0, 12.0};
inline constexpr std::array<LiteratureGre, 3> kLiteratureGre{{
    {"SBSC", {1.625e-07, 1.940e-07, 2.229e-07, 5.314e-07}},
    {"QBSC", {6.509e-06, 7.132e-06, 7.310e-06, 8.776e-06}},
    {"LBM", {7.881e-06, 9.532e-06, 1.089e-05, 1.179e-05}},
}};

}  // namespace kse::problems
