#include "kse/imexrk4.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace kse::imex {

namespace {

using linalg::RealMatrix;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) return std::abs(x);
        m = std::max(m, std::abs(x));
    }
    return m;
}

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Residue of p(z)/((z - pole)(z - conj(pole))) at `pole`.
Complex residue(Complex numerator_at_pole, Complex pole) {
    return numerator_at_pole / (pole - std::conj(pole));
}

// Upper-half-plane root of z^2 + bz + c with real b, c and b^2 < 4c.
Complex upper_root(double b, double c) {
    return {-b / 2.0, std::sqrt(c - b * b / 4.0)};
}

// Sum over a conjugate pole pair: num/(z - p) + num'/(z - conj p), where num'
// uses conjugated weights against the same values.
struct PolePair {
    Complex pole;
    Complex z;
    Complex num{};
    Complex num_conj{};

    PolePair& add(Complex weight, Complex value) {
        num += weight * value;
        num_conj += std::conj(weight) * value;
        return *this;
    }
    Complex value() const { return num / (z - pole) + num_conj / (z - std::conj(pole)); }
};

RealMatrix identity_combination(const RealMatrix& z, const RealMatrix& z2, double c0, double c1) {
    RealMatrix out = z2;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += c1 * z(i, j);
        out(i, i) += c0;
    }
    return out;
}

RealVector axpy_sum(std::initializer_list<std::pair<const RealMatrix*, const RealVector*>> terms) {
    RealVector out;
    for (const auto& [m, v] : terms) {
        RealVector mv = linalg::mat_vec(*m, *v);
        if (out.empty()) {
            out = std::move(mv);
        } else {
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += mv[i];
        }
    }
    return out;
}

RealVector combine(std::initializer_list<std::pair<double, const RealVector*>> terms) {
    RealVector out(terms.begin()->second->size(), 0.0);
    for (const auto& [s, v] : terms)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * (*v)[i];
    return out;
}

}  // namespace

ImexCoefficients coefficients() {
    ImexCoefficients c;
    c.c1 = {-3.0, 1.7320508075688772935};
    c.w1 = {-6.0, -10.39230484541326376};
    c.w11 = {0.0, -3.4641016151377545871};
    c.w21 = {0.5, -0.8660254037844386467};
    c.w31 = {1.0, -0.57735026918962576452};
    c.c1_tilde = {-6.0, 3.4641016151377545871};
    c.w1_tilde = {-12.0, -20.784609690826527522};
    c.omega1_tilde = {0.0, -3.4641016151377545870};
    c.omega2_tilde = {1.0, -1.7320508075688772935};
    return c;
}

ImexCoefficients derive_coefficients() {
    ImexCoefficients c;
    c.c1 = upper_root(6.0, 12.0);
    c.w1 = residue(-12.0 * c.c1, c.c1);
    c.w11 = residue(12.0, c.c1);
    c.w21 = residue(6.0 + c.c1, c.c1);
    c.w31 = residue(2.0 * (4.0 + c.c1), c.c1);
    c.c1_tilde = upper_root(12.0, 48.0);
    c.w1_tilde = residue(-24.0 * c.c1_tilde, c.c1_tilde);
    c.omega1_tilde = residue(24.0, c.c1_tilde);
    c.omega2_tilde = residue(2.0 * (12.0 + c.c1_tilde), c.c1_tilde);
    return c;
}

Complex pade22(Complex z) { return (12.0 - 6.0 * z + z * z) / (12.0 + 6.0 * z + z * z); }

Complex phi_scalar(int mu, Complex z) {
    if (mu < 0 || mu > 3) throw std::invalid_argument("phi_scalar: mu must be 0..3");
    if (mu == 0) return std::exp(-z);
    const Complex mz = -z;
    if (std::abs(z) < 0.25) {
        // sum_j (-z)^j / (j + mu)!
        double fact = 1.0;
        for (int j = 2; j <= mu; ++j) fact *= j;
        Complex term = 1.0 / fact;
        Complex sum = term;
        for (int j = 1; j < 30; ++j) {
            term *= mz / static_cast<double>(j + mu);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    Complex partial = 0.0;
    Complex power = 1.0;
    double fact = 1.0;
    for (int j = 0; j < mu; ++j) {
        if (j > 0) fact *= j;
        partial += power / fact;
        power *= mz;
    }
    return (std::exp(mz) - partial) / std::pow(mz, mu);
}

Complex scalar_amplification(Complex z, Complex x, const ImexCoefficients& c) {
    const Complex u = 1.0;
    const Complex fn = x * u;
    const Complex a =
        u + PolePair{c.c1_tilde, z}.add(c.w1_tilde, u).add(c.omega1_tilde, fn).value();
    const Complex fa = x * a;
    const Complex b = u + PolePair{c.c1_tilde, z}
                              .add(c.w1_tilde, u)
                              .add(c.omega1_tilde - c.omega2_tilde, fn)
                              .add(c.omega2_tilde, fa)
                              .value();
    const Complex fb = x * b;
    const Complex cc = u + PolePair{c.c1, z}
                               .add(c.w1, u)
                               .add(c.w11 - 2.0 * c.w21, fn)
                               .add(2.0 * c.w21, fb)
                               .value();
    const Complex fc = x * cc;
    return u + PolePair{c.c1, z}
                   .add(c.w1, u)
                   .add(c.w11 - 3.0 * c.w21 + c.w31, fn)
                   .add(2.0 * c.w21 - c.w31, fa + fb)
                   .add(-(c.w21 - c.w31), fc)
                   .value();
}

InstabilityError::InstabilityError(std::size_t step_index, double max_abs)
    : std::runtime_error("non-finite state at step " + std::to_string(step_index) +
                         " (max |U| = " + std::to_string(max_abs) + ")"),
      step_index_(step_index),
      max_abs_(max_abs) {}

StepperWorkspace::StepperWorkspace(const SemilinearSystem& system, double k, ImexCoefficients coeffs)
    : system_(&system),
      k_(k),
      coeffs_(coeffs),
      full_(linalg::lu_factor(linalg::complex_shifted(system.linear_operator(), k, -coeffs.c1))),
      half_(linalg::lu_factor(
          linalg::complex_shifted(system.linear_operator(), k, -coeffs.c1_tilde))) {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("time step must be positive");
    const std::size_t n = system.size();
    for (auto* v : {&a_, &b_, &c_, &f_n_, &f_a_, &f_b_, &f_c_}) v->assign(n, 0.0);
    rhs_.assign(n, Complex{});
}

void StepperWorkspace::rebuild(double k) {
    if (k == k_) return;
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("time step must be positive");
    const auto& l = system_->linear_operator();
    full_ = linalg::lu_factor(linalg::complex_shifted(l, k, -coeffs_.c1));
    half_ = linalg::lu_factor(linalg::complex_shifted(l, k, -coeffs_.c1_tilde));
    k_ = k;
}

void StepperWorkspace::stage_solve(const ComplexLu& factor, std::span<const double> base,
                                   std::span<double> out, std::size_t step_index) {
    factor.solve_in_place(rhs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[i] + 2.0 * rhs_[i].real();
    if (!all_finite(out)) throw InstabilityError(step_index, max_abs(out));
}

void StepperWorkspace::advance(std::span<double> u, double t_n, std::size_t step_index) {
    const std::size_t n = system_->size();
    if (u.size() != n) throw linalg::DimensionError("advance: state length does not match system");
    if (!all_finite(u)) throw InstabilityError(step_index, max_abs(u));

    const auto& c = coeffs_;
    const double k = k_;
    const double t_half = t_n + 0.5 * k;
    const double t_full = t_n + k;

    system_->forcing(u, t_n, f_n_);

    // Step 1: (kL - c1~ I) R_a = w1~ U_n + k Omega1~ F_n
    const Complex s1_f = k * c.omega1_tilde;
    for (std::size_t i = 0; i < n; ++i) rhs_[i] = c.w1_tilde * u[i] + s1_f * f_n_[i];
    stage_solve(half_, u, a_, step_index);
    system_->forcing(a_, t_half, f_a_);

    // Step 2: (kL - c1~ I) R_b = w1~ U_n + k(Omega1~ - Omega2~) F_n + k Omega2~ F_a
    const Complex s2_f = k * (c.omega1_tilde - c.omega2_tilde);
    const Complex s2_a = k * c.omega2_tilde;
    for (std::size_t i = 0; i < n; ++i)
        rhs_[i] = c.w1_tilde * u[i] + s2_f * f_n_[i] + s2_a * f_a_[i];
    stage_solve(half_, u, b_, step_index);
    system_->forcing(b_, t_half, f_b_);

    // Step 3: (kL - c1 I) R_c = w1 U_n + k(w11 - 2w21) F_n + 2k w21 F_b
    const Complex s3_f = k * (c.w11 - 2.0 * c.w21);
    const Complex s3_b = 2.0 * k * c.w21;
    for (std::size_t i = 0; i < n; ++i) rhs_[i] = c.w1 * u[i] + s3_f * f_n_[i] + s3_b * f_b_[i];
    stage_solve(full_, u, c_, step_index);
    system_->forcing(c_, t_full, f_c_);

    // Step 4: (kL - c1 I) R_u = w1 U_n + k(w11 - 3w21 + w31) F_n
    //                          + k(2w21 - w31)(F_a + F_b) - k(w21 - w31) F_c
    const Complex s4_f = k * (c.w11 - 3.0 * c.w21 + c.w31);
    const Complex s4_ab = k * (2.0 * c.w21 - c.w31);
    const Complex s4_c = -k * (c.w21 - c.w31);
    for (std::size_t i = 0; i < n; ++i) {
        rhs_[i] = c.w1 * u[i] + s4_f * f_n_[i] + s4_ab * (f_a_[i] + f_b_[i]) + s4_c * f_c_[i];
    }
    full_.solve_in_place(rhs_);
    for (std::size_t i = 0; i < n; ++i) u[i] += 2.0 * rhs_[i].real();
    if (!all_finite(u)) throw InstabilityError(step_index, max_abs(u));
}

StepperWorkspace prepare(const SemilinearSystem& system, double k) { return StepperWorkspace(system, k); }

RealVector step(StepperWorkspace& ws, std::span<const double> u_n, double t_n) {
    RealVector u(u_n.begin(), u_n.end());
    ws.advance(u, t_n);
    return u;
}

RealVector step(StepperWorkspace& ws, const SemiDiscreteKse& sys, std::span<const double> u_full,
                double t_n) {
    if (&ws.system() != static_cast<const SemilinearSystem*>(&sys)) {
        throw std::invalid_argument("step: workspace was prepared for a different system");
    }
    RealVector u = sys.restrict_to_unknowns(u_full);
    ws.advance(u, t_n);
    return sys.lift(u, t_n + ws.k());
}

RealVector step_dense_reference(const SemilinearSystem& system, std::span<const double> u_n,
                                double t_n, double k) {
    const RealMatrix& l = system.linear_operator();
    const std::size_t n = l.rows();
    if (u_n.size() != n) throw linalg::DimensionError("step_dense_reference: state length mismatch");

    RealMatrix z = l;
    z *= k;
    const RealMatrix z2 = linalg::mat_product(z, z);

    const RealMatrix q_inv = linalg::inverse(identity_combination(z, z2, 12.0, 6.0));
    const RealMatrix qt_inv = linalg::inverse(identity_combination(z, z2, 48.0, 12.0));

    const RealMatrix r22 = linalg::mat_product(q_inv, identity_combination(z, z2, 12.0, -6.0));
    RealMatrix p1 = q_inv;
    p1 *= 12.0 * k;
    RealMatrix six_plus_z = z;
    RealMatrix four_plus_z = z;
    RealMatrix twelve_plus_z = z;
    for (std::size_t i = 0; i < n; ++i) {
        six_plus_z(i, i) += 6.0;
        four_plus_z(i, i) += 4.0;
        twelve_plus_z(i, i) += 12.0;
    }
    RealMatrix p2 = linalg::mat_product(q_inv, six_plus_z);
    p2 *= k;
    RealMatrix p3 = linalg::mat_product(q_inv, four_plus_z);
    p3 *= 2.0 * k;

    const RealMatrix r22t = linalg::mat_product(qt_inv, identity_combination(z, z2, 48.0, -12.0));
    RealMatrix p1t = qt_inv;
    p1t *= 24.0 * k;
    RealMatrix p2t = linalg::mat_product(qt_inv, twelve_plus_z);
    p2t *= 2.0 * k;

    const RealVector u(u_n.begin(), u_n.end());
    auto forcing = [&](const RealVector& v, double t) {
        RealVector f(n);
        system.forcing(v, t, f);
        return f;
    };

    const RealVector fn = forcing(u, t_n);
    const RealVector a = axpy_sum({{&r22t, &u}, {&p1t, &fn}});
    const RealVector fa = forcing(a, t_n + 0.5 * k);
    const RealVector fa_fn = combine({{1.0, &fa}, {-1.0, &fn}});
    const RealVector b = axpy_sum({{&r22t, &u}, {&p1t, &fn}, {&p2t, &fa_fn}});
    const RealVector fb = forcing(b, t_n + 0.5 * k);
    const RealVector fb_fn2 = combine({{2.0, &fb}, {-2.0, &fn}});
    const RealVector c = axpy_sum({{&r22, &u}, {&p1, &fn}, {&p2, &fb_fn2}});
    const RealVector fc = forcing(c, t_n + k);

    const RealVector g2 = combine({{-3.0, &fn}, {2.0, &fa}, {2.0, &fb}, {-1.0, &fc}});
    const RealVector g3 = combine({{1.0, &fn}, {-1.0, &fa}, {-1.0, &fb}, {1.0, &fc}});
    return axpy_sum({{&r22, &u}, {&p1, &fn}, {&p2, &g2}, {&p3, &g3}});
}

RealVector step_dense_reference(const SemiDiscreteKse& sys, std::span<const double> u_full,
                                double t_n, double k) {
    const RealVector u = sys.restrict_to_unknowns(u_full);
    const RealVector next = step_dense_reference(static_cast<const SemilinearSystem&>(sys), u, t_n, k);
    return sys.lift(next, t_n + k);
}

std::size_t step_count(double k, double final_time) {
    if (!(k > 0.0)) throw std::invalid_argument("time step must be positive");
    if (!(final_time >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
    const double ratio = final_time / k;
    const double m = std::round(ratio);
    if (std::abs(ratio - m) > 1e-8 * std::max(1.0, m)) {
        throw std::invalid_argument("final time " + std::to_string(final_time) +
                                    " is not an integer multiple of k = " + std::to_string(k));
    }
    return static_cast<std::size_t>(m);
}

namespace {

template <class Lift>
IntegrationResult run_loop(const SemilinearSystem& sys, RealVector u, double k, double final_time,
                           const Observer& observer, Lift&& lift) {
    const std::size_t steps = step_count(k, final_time);
    IntegrationResult result;
    result.steps = steps;

    const auto setup_start = Clock::now();
    StepperWorkspace ws(sys, k);
    result.setup_seconds = seconds_since(setup_start);

    if (observer) observer(0.0, lift(u, 0.0));
    const auto loop_start = Clock::now();
    for (std::size_t j = 0; j < steps; ++j) {
        const double t_n = static_cast<double>(j) * k;
        if (ws.k() != k) throw std::logic_error("integrate: workspace step size changed");
        ws.advance(u, t_n, j + 1);
        if (observer) observer(static_cast<double>(j + 1) * k, lift(u, static_cast<double>(j + 1) * k));
    }
    result.loop_seconds = seconds_since(loop_start);
    result.final_state = lift(u, static_cast<double>(steps) * k);
    return result;
}

}  // namespace

IntegrationResult integrate(const SemiDiscreteKse& sys, std::span<const double> u0_full, double k,
                            double final_time, const Observer& observer) {
    return run_loop(sys, sys.restrict_to_unknowns(u0_full), k, final_time, observer,
                    [&sys](const RealVector& u, double t) { return sys.lift(u, t); });
}

IntegrationResult integrate(const SemilinearSystem& sys, std::span<const double> u0, double k,
                            double final_time, const Observer& observer) {
    if (u0.size() != sys.size()) throw linalg::DimensionError("integrate: state length mismatch");
    return run_loop(sys, RealVector(u0.begin(), u0.end()), k, final_time, observer,
                    [](const RealVector& u, double) { return u; });
}

}  // namespace kse::imex
