#pragma once

#include "kse/compact_fd.hpp"
#include "kse/linalg.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace kse {

using linalg::RealMatrix;
using linalg::RealVector;

/// Coefficients of u_t + u u_x + alpha u_xx + beta u_xxxx = 0.
struct KseParameters {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Time-dependent endpoint values for Dirichlet problems.
struct BoundaryValues {
    std::function<double(double)> left;
    std::function<double(double)> right;

    static BoundaryValues homogeneous();
};

/// How the u_xxxx contribution to L is assembled.
enum class FourthDerivativeForm {
    /// L2^{-2} M2^2, the factored product. Default.
    kFactoredProduct,
    /// (L2^{-1} M2)^2, the square of the assembled second-derivative operator.
    /// Identical to kFactoredProduct on periodic grids; on Dirichlet grids it
    /// carries growing spurious modes near the boundary.
    kOperatorSquare,
};

/// Semilinear system dU/dt + L U = F(U, t) in the variables a time stepper
/// evolves. The stepper never sees boundary nodes.
class SemilinearSystem {
public:
    virtual ~SemilinearSystem() = default;

    virtual const RealMatrix& linear_operator() const = 0;
    virtual void forcing(std::span<const double> u, double t, std::span<double> out) const = 0;

    std::size_t size() const { return linear_operator().rows(); }
};

/// dU/dt = -L U + R U with the R U term treated explicitly.
class LinearSplitSystem final : public SemilinearSystem {
public:
    LinearSplitSystem(RealMatrix l, RealMatrix r);

    const RealMatrix& linear_operator() const override { return l_; }
    void forcing(std::span<const double> u, double t, std::span<double> out) const override;

private:
    RealMatrix l_;
    RealMatrix r_;
};

/// Compact-difference semi-discretization of the KSE.
///
/// The full operator L = L2^{-2}(alpha L2 M2 + beta M2^2) acts on all grid
/// nodes. On Dirichlet grids the two endpoint nodes are prescribed, so the
/// evolved system is the interior block L_II, and the coupling -L_IB g(t) to
/// the prescribed values joins the explicit forcing.
class SemiDiscreteKse final : public SemilinearSystem {
public:
    SemiDiscreteKse(KseParameters params, fd::Grid grid,
                    std::optional<BoundaryValues> boundary = std::nullopt,
                    FourthDerivativeForm form = FourthDerivativeForm::kFactoredProduct);

    const KseParameters& params() const noexcept { return params_; }
    const fd::Grid& grid() const noexcept { return grid_; }
    fd::BoundaryScheme scheme() const noexcept { return grid_.scheme(); }
    bool dirichlet() const noexcept { return grid_.scheme() == fd::BoundaryScheme::kDirichlet; }
    FourthDerivativeForm fourth_derivative_form() const noexcept { return form_; }

    /// L on all N nodes.
    const RealMatrix& full_operator() const noexcept { return full_l_; }
    const fd::DerivativeOperator& first_derivative() const noexcept { return d1_; }

    /// -1/2 D1 (U o U) on all N nodes.
    RealVector nonlinear_rhs(std::span<const double> u, double t) const;
    void nonlinear_rhs(std::span<const double> u, double t, std::span<double> out) const;

    /// Sets U[0] and U[N-1] to the boundary values at t. Dirichlet only.
    RealVector apply_boundary(std::span<const double> u, double t) const;
    void apply_boundary_in_place(std::span<double> u, double t) const;

    /// Number of evolved unknowns: N periodic, N - 2 Dirichlet.
    std::size_t unknowns() const noexcept { return evolved_l_.rows(); }
    /// Full-grid vector -> evolved unknowns.
    RealVector restrict_to_unknowns(std::span<const double> full) const;
    /// Evolved unknowns -> full-grid vector with boundary values at t.
    void lift(std::span<const double> inner, double t, std::span<double> full) const;
    RealVector lift(std::span<const double> inner, double t) const;

    // SemilinearSystem, in evolved unknowns.
    const RealMatrix& linear_operator() const override { return evolved_l_; }
    void forcing(std::span<const double> u, double t, std::span<double> out) const override;

private:
    KseParameters params_;
    fd::Grid grid_;
    std::optional<BoundaryValues> boundary_;
    FourthDerivativeForm form_;
    fd::DerivativeOperator d1_;
    RealMatrix full_l_;
    RealMatrix evolved_l_;
    // Columns of L for the two endpoint nodes, interior rows only.
    RealVector left_coupling_;
    RealVector right_coupling_;
};

/// Builds the system, validating parameters and boundary data.
SemiDiscreteKse assemble(KseParameters params, const fd::Grid& grid,
                         std::optional<BoundaryValues> boundary = std::nullopt,
                         FourthDerivativeForm form = FourthDerivativeForm::kFactoredProduct);

/// L2^{-2}(alpha L2 M2 + beta M2^2) or alpha D2 + beta D2^2, per `form`.
RealMatrix assemble_linear_operator(const KseParameters& params, const fd::Grid& grid,
                                    FourthDerivativeForm form);

}  // namespace kse
