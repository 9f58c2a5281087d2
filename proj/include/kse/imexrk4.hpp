#pragma once

#include "kse/kse_system.hpp"
#include "kse/linalg.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

namespace kse::imex {

using linalg::Complex;
using linalg::ComplexLu;
using linalg::RealVector;

/// Poles and partial-fraction weights of the (2,2)-Pade rationals.
///
/// Full step, q(z) = z^2 + 6z + 12:
///   R22(z) = 1 + 2Re(w1/(z - c1)),   12/q = 2Re(w11/(z - c1)),
///   (6 + z)/q = 2Re(w21/(z - c1)),   2(4 + z)/q = 2Re(w31/(z - c1)).
/// Half step, q~(z) = z^2 + 12z + 48:
///   R~22(z) = 1 + 2Re(w1~/(z - c1~)), 24/q~ = 2Re(Omega1~/(z - c1~)),
///   2(12 + z)/q~ = 2Re(Omega2~/(z - c1~)).
struct ImexCoefficients {
    Complex c1;
    Complex w1;
    Complex w11;
    Complex w21;
    Complex w31;
    Complex c1_tilde;
    Complex w1_tilde;
    Complex omega1_tilde;
    Complex omega2_tilde;
};

/// The published constants, to all printed digits.
ImexCoefficients coefficients();

/// Poles as the upper-half-plane roots of q and q~; weights as residues.
ImexCoefficients derive_coefficients();

/// (12 - 6z + z^2) / (12 + 6z + z^2), the (2,2)-Pade approximant of e^{-z}.
Complex pade22(Complex z);

/// phi_0(z) = e^{-z}, phi_mu(z) = (-z)^{-mu} (e^{-z} - sum_{j<mu} (-z)^j / j!).
/// Uses the Taylor series when |z| < 0.25.
Complex phi_scalar(int mu, Complex z);

/// One step of the scheme on the scalar problem u' = -(z/k) u + (x/k) u with
/// the x-term explicit, returned as u_{n+1}/u_n. The conjugate-pole pair is
/// summed explicitly, so complex z and x are allowed; for real z and x this
/// is the 2Re(...) form of the vector algorithm.
Complex scalar_amplification(Complex z, Complex x, const ImexCoefficients& coeffs = coefficients());

/// A stage or step produced NaN/Inf.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(std::size_t step_index, double max_abs);

    std::size_t step_index() const noexcept { return step_index_; }
    double max_abs() const noexcept { return max_abs_; }

private:
    std::size_t step_index_;
    double max_abs_;
};

/// Two complex LU factorizations, (kL - c1 I) and (kL - c1~ I), plus stage
/// scratch. Built once per (system, k) and reused for every step.
///
/// Not thread-safe; give each concurrent integration its own workspace.
class StepperWorkspace {
public:
    StepperWorkspace(const SemilinearSystem& system, double k,
                     ImexCoefficients coeffs = coefficients());

    const SemilinearSystem& system() const noexcept { return *system_; }
    double k() const noexcept { return k_; }
    const ImexCoefficients& coeffs() const noexcept { return coeffs_; }
    const ComplexLu& factor_full() const noexcept { return full_; }
    const ComplexLu& factor_half() const noexcept { return half_; }

    /// Refactors for a new step size; a no-op when k is unchanged.
    void rebuild(double k);

    /// Advances u (evolved unknowns) from t_n to t_n + k in place.
    void advance(std::span<double> u, double t_n, std::size_t step_index = 0);

    /// Stage vectors a_n, b_n, c_n of the most recent step.
    std::span<const double> stage_a() const noexcept { return a_; }
    std::span<const double> stage_b() const noexcept { return b_; }
    std::span<const double> stage_c() const noexcept { return c_; }

private:
    void stage_solve(const ComplexLu& factor, std::span<const double> base, std::span<double> out,
                     std::size_t step_index);

    const SemilinearSystem* system_;
    double k_;
    ImexCoefficients coeffs_;
    ComplexLu full_;
    ComplexLu half_;
    RealVector a_, b_, c_;
    RealVector f_n_, f_a_, f_b_, f_c_;
    linalg::ComplexVector rhs_;
};

StepperWorkspace prepare(const SemilinearSystem& system, double k);

/// One step on evolved unknowns.
RealVector step(StepperWorkspace& ws, std::span<const double> u_n, double t_n);

/// One step on full-grid KSE vectors. `ws` must have been prepared for `sys`.
RealVector step(StepperWorkspace& ws, const SemiDiscreteKse& sys, std::span<const double> u_full,
                double t_n);

/// Evaluates the rational form of the step directly, with dense inverses of
/// 12I + 6kL + k^2L^2 and 48I + 12kL + k^2L^2. Test oracle for step().
RealVector step_dense_reference(const SemilinearSystem& system, std::span<const double> u_n,
                                double t_n, double k);
RealVector step_dense_reference(const SemiDiscreteKse& sys, std::span<const double> u_full,
                                double t_n, double k);

/// Called with (t_j, U_j) at t_0 and after every step, on full-grid vectors.
using Observer = std::function<void(double, std::span<const double>)>;

struct IntegrationResult {
    RealVector final_state;
    std::size_t steps = 0;
    double setup_seconds = 0.0;  // operator factorization
    double loop_seconds = 0.0;   // time loop only
};

/// Number of steps M with T = M k; throws if T/k is not an integer.
std::size_t step_count(double k, double final_time);

IntegrationResult integrate(const SemiDiscreteKse& sys, std::span<const double> u0_full, double k,
                            double final_time, const Observer& observer = {});

/// Same, on a generic system; the observer sees evolved unknowns.
IntegrationResult integrate(const SemilinearSystem& sys, std::span<const double> u0, double k,
                            double final_time, const Observer& observer = {});

}  // namespace kse::imex
