#include "kse/kse_system.hpp"

#include <cmath>
#include <stdexcept>

namespace kse {

namespace {

void require_length(std::span<const double> u, std::size_t n, const char* what) {
    if (u.size() != n) {
        throw linalg::DimensionError(std::string(what) + ": expected length " + std::to_string(n) +
                                     ", got " + std::to_string(u.size()));
    }
}

KseParameters validated(KseParameters params) {
    if (!std::isfinite(params.alpha) || !std::isfinite(params.beta) || params.alpha == 0.0 ||
        params.beta == 0.0) {
        throw std::invalid_argument("KSE coefficients alpha and beta must be finite and nonzero");
    }
    return params;
}

}  // namespace

BoundaryValues BoundaryValues::homogeneous() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

LinearSplitSystem::LinearSplitSystem(RealMatrix l, RealMatrix r) : l_(std::move(l)), r_(std::move(r)) {
    if (!l_.square() || l_.rows() != r_.rows() || r_.rows() != r_.cols()) {
        throw linalg::DimensionError("LinearSplitSystem: L and R must be square and the same size");
    }
}

void LinearSplitSystem::forcing(std::span<const double> u, double, std::span<double> out) const {
    linalg::mat_vec(r_, u, out);
}

RealMatrix assemble_linear_operator(const KseParameters& params, const fd::Grid& grid,
                                    FourthDerivativeForm form) {
    const auto pair = fd::second_derivative_pair(grid);
    const auto lhs = linalg::lu_factor(pair.lhs);
    const double alpha = params.alpha;
    const double beta = params.beta;

    if (form == FourthDerivativeForm::kOperatorSquare) {
        const RealMatrix d2 = lhs.solve(pair.rhs);
        const RealMatrix d4 = linalg::mat_product(d2, d2);
        RealMatrix l(d2.rows(), d2.cols());
        for (std::size_t i = 0; i < l.rows(); ++i)
            for (std::size_t j = 0; j < l.cols(); ++j) l(i, j) = alpha * d2(i, j) + beta * d4(i, j);
        return l;
    }

    // L2^{-1} L2^{-1} (alpha L2 M2 + beta M2 M2)
    RealMatrix combo = linalg::mat_product(pair.lhs, pair.rhs);
    combo *= alpha;
    RealMatrix m2sq = linalg::mat_product(pair.rhs, pair.rhs);
    m2sq *= beta;
    combo += m2sq;
    return lhs.solve(lhs.solve(combo));
}

SemiDiscreteKse::SemiDiscreteKse(KseParameters params, fd::Grid grid,
                                 std::optional<BoundaryValues> boundary, FourthDerivativeForm form)
    : params_(validated(params)),
      grid_(grid),
      boundary_(std::move(boundary)),
      form_(form),
      d1_(fd::build_first_derivative(grid)),
      full_l_(assemble_linear_operator(params, grid, form)) {
    if (dirichlet() != boundary_.has_value()) {
        throw std::invalid_argument(dirichlet()
                                        ? "Dirichlet system requires boundary values"
                                        : "periodic system does not take boundary values");
    }
    if (boundary_ && (!boundary_->left || !boundary_->right)) {
        throw std::invalid_argument("boundary values must define both endpoints");
    }

    const std::size_t n = grid_.size();
    if (!dirichlet()) {
        evolved_l_ = full_l_;
        return;
    }
    const std::size_t m = n - 2;
    evolved_l_ = RealMatrix(m, m);
    left_coupling_.resize(m);
    right_coupling_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) evolved_l_(i, j) = full_l_(i + 1, j + 1);
        left_coupling_[i] = full_l_(i + 1, 0);
        right_coupling_[i] = full_l_(i + 1, n - 1);
    }
}

void SemiDiscreteKse::nonlinear_rhs(std::span<const double> u, double, std::span<double> out) const {
    require_length(u, grid_.size(), "nonlinear_rhs");
    require_length(out, grid_.size(), "nonlinear_rhs output");
    RealVector sq(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) sq[i] = u[i] * u[i];
    linalg::mat_vec(d1_.matrix, sq, out);
    for (double& v : out) v *= -0.5;
}

RealVector SemiDiscreteKse::nonlinear_rhs(std::span<const double> u, double t) const {
    RealVector out(grid_.size());
    nonlinear_rhs(u, t, out);
    return out;
}

void SemiDiscreteKse::apply_boundary_in_place(std::span<double> u, double t) const {
    if (!boundary_) throw std::logic_error("apply_boundary called on a periodic system");
    require_length(u, grid_.size(), "apply_boundary");
    u.front() = boundary_->left(t);
    u.back() = boundary_->right(t);
}

RealVector SemiDiscreteKse::apply_boundary(std::span<const double> u, double t) const {
    RealVector out(u.begin(), u.end());
    apply_boundary_in_place(out, t);
    return out;
}

RealVector SemiDiscreteKse::restrict_to_unknowns(std::span<const double> full) const {
    require_length(full, grid_.size(), "restrict_to_unknowns");
    if (!dirichlet()) return RealVector(full.begin(), full.end());
    return RealVector(full.begin() + 1, full.end() - 1);
}

void SemiDiscreteKse::lift(std::span<const double> inner, double t, std::span<double> full) const {
    require_length(inner, unknowns(), "lift");
    require_length(full, grid_.size(), "lift output");
    if (!dirichlet()) {
        std::copy(inner.begin(), inner.end(), full.begin());
        return;
    }
    std::copy(inner.begin(), inner.end(), full.begin() + 1);
    full.front() = boundary_->left(t);
    full.back() = boundary_->right(t);
}

RealVector SemiDiscreteKse::lift(std::span<const double> inner, double t) const {
    RealVector full(grid_.size());
    lift(inner, t, full);
    return full;
}

void SemiDiscreteKse::forcing(std::span<const double> u, double t, std::span<double> out) const {
    require_length(out, unknowns(), "forcing output");
    if (!dirichlet()) {
        nonlinear_rhs(u, t, out);
        return;
    }
    RealVector full(grid_.size());
    lift(u, t, full);
    RealVector f(grid_.size());
    nonlinear_rhs(full, t, f);
    const double gl = full.front();
    const double gr = full.back();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = f[i + 1] - left_coupling_[i] * gl - right_coupling_[i] * gr;
    }
}

SemiDiscreteKse assemble(KseParameters params, const fd::Grid& grid,
                         std::optional<BoundaryValues> boundary, FourthDerivativeForm form) {
    return SemiDiscreteKse(params, grid, std::move(boundary), form);
}

}  // namespace kse
