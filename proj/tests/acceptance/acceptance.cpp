// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed here.
// Exit status is the number of failed criteria (capped at 100).

#include "kse/analysis.hpp"
#include "kse/imexrk4.hpp"
#include "kse/kernels.hpp"
#include "kse/problems.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace kse;
using analysis::Complex;
using linalg::RealVector;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& why) {
        if (!ok) {
            pass = false;
            detail << " [violated: " << why << "]";
        }
    }
};

int g_failures = 0;

void criterion(const char* id, const char* title, double time_limit, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > time_limit) {
        v.pass = false;
        v.detail << " [runtime " << seconds << " s exceeds " << time_limit << " s]";
    }
    if (!v.pass) ++g_failures;
    std::printf("%s  %-3s %s:%s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.str().c_str(), seconds);
    std::fflush(stdout);
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

bool within_factor(double got, double want, double factor) {
    return got > 0.0 && got <= want * factor && got >= want / factor;
}

RealVector run(const problems::ProblemSpec& p, const fd::Grid& g, double k, double t) {
    const auto sys = p.system(g);
    return imex::integrate(sys, p.initial_state(g), k, t).final_state;
}

// E_k for each k in `ks`, each against the run at 2k.
std::vector<double> self_differences(const problems::ProblemSpec& p, const fd::Grid& g,
                                     const std::vector<double>& ks, double t) {
    const auto sys = p.system(g);
    const auto u0 = p.initial_state(g);
    RealVector coarse = imex::integrate(sys, u0, 2.0 * ks.front(), t).final_state;
    std::vector<double> out;
    for (double k : ks) {
        RealVector fine = imex::integrate(sys, u0, k, t).final_state;
        out.push_back(analysis::self_difference_error(fine, coarse));
        coarse = std::move(fine);
    }
    return out;
}

void check_orders(Verdict& v, const std::vector<double>& errors, double lo, double hi) {
    v.detail << " orders";
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double order = analysis::observed_order(errors[i - 1], errors[i]);
        v.detail << " " << fixed4(order);
        v.require(order >= lo && order <= hi, "order " + fixed4(order) + " outside [" + fixed4(lo) + ", " + fixed4(hi) + "]");
    }
}

double max_abs(const RealVector& u) {
    double m = 0.0;
    for (double x : u) m = std::isfinite(x) ? std::max(m, std::abs(x)) : INFINITY;
    return m;
}

}  // namespace

int main() {
    std::printf("acceptance: %d OpenMP thread(s)\n", kernels::max_threads());

    criterion("C1", "Example 1 space-time convergence, T = 2", 60.0, [](Verdict& v) {
        const auto p = problems::make_problem(1);
        const double hs[] = {4.0, 2.0, 1.0, 0.5};
        const double ks[] = {0.025, 0.0125, 0.00625, 0.003125};
        const double reference[] = {6.157e-03, 3.775e-04, 2.396e-05, 1.461e-06};
        std::vector<double> errors;
        v.detail << " errors";
        for (int i = 0; i < 4; ++i) {
            const auto g = p.grid_with_spacing(hs[i]);
            const double e = analysis::max_norm_error(p.exact_state(g, 2.0), run(p, g, ks[i], 2.0));
            errors.push_back(e);
            v.detail << " " << sci(e);
            v.require(within_factor(e, reference[i], 3.0), "error " + sci(e) + " not within 3x of " + sci(reference[i]));
        }
        check_orders(v, errors, 3.6, 4.4);
    });

    criterion("C2", "Example 2 temporal convergence, N = 256, T = 10", 120.0, [](Verdict& v) {
        const auto p = problems::make_problem(2);
        const auto g = p.grid_with_points(256);
        const auto e = self_differences(p, g, {0.25, 0.125, 0.0625, 0.03125}, 10.0);
        const double reference[] = {6.291e-05, 3.922e-06, 2.442e-07};
        v.detail << " E_k(1/4..1/32)";
        for (double x : e) v.detail << " " << sci(x);
        for (int i = 0; i < 3; ++i) {
            v.require(within_factor(e[static_cast<std::size_t>(i) + 1], reference[i], 3.0),
                      "E_k " + sci(e[static_cast<std::size_t>(i) + 1]) + " not within 3x of " + sci(reference[i]));
        }
        check_orders(v, e, 3.6, 4.4);
    });

    criterion("C3", "Example 3 temporal convergence, N = 101, T = 1", 60.0, [](Verdict& v) {
        const auto p = problems::make_problem(3);
        const auto g = p.grid_with_points(101);
        const auto e = self_differences(p, g, {0.005, 0.0025, 0.00125, 0.000625}, 1.0);
        v.detail << " E_k(0.01/2..0.01/16)";
        for (double x : e) v.detail << " " << sci(x);
        check_orders(v, e, 3.5, 4.4);
    });

    criterion("C4", "Example 4 temporal convergence, beta = 1.1, h = 0.05, T = 1", 60.0, [](Verdict& v) {
        const auto p = problems::make_problem(4);
        const auto g = p.grid_with_spacing(0.05);
        const auto e = self_differences(p, g, {0.0025, 0.00125, 0.000625, 0.0003125}, 1.0);
        v.detail << " E_k(0.005/2..0.005/16)";
        for (double x : e) v.detail << " " << sci(x);
        check_orders(v, e, 3.5, 4.5);
    });

    criterion("C5", "Example 1 GRE, N = 200, k = 0.01", 120.0, [](Verdict& v) {
        const auto p = problems::make_problem(1);
        const auto g = p.grid_with_points(200);
        const auto sys = p.system(g);
        const double reference[] = {7.624e-08, 8.092e-08, 8.589e-08, 3.188e-07};
        const auto& sbsc = problems::kLiteratureGre[0];
        std::vector<double> gres;
        imex::integrate(sys, p.initial_state(g), 0.01, 12.0, [&](double t, std::span<const double> u) {
            for (double want : problems::kGreTimes) {
                if (std::abs(t - want) < 1e-9) gres.push_back(analysis::gre(p.exact_state(g, want), u));
            }
        });
        v.require(gres.size() == 4, "missing GRE samples");
        v.detail << " GRE(6,8,10,12)";
        for (std::size_t i = 0; i < gres.size(); ++i) {
            v.detail << " " << sci(gres[i]);
            v.require(within_factor(gres[i], reference[i], 10.0), "GRE not within 10x of " + sci(reference[i]));
            v.require(gres[i] < sbsc.gre[i], "GRE not below SBSC " + sci(sbsc.gre[i]));
        }
    });

    criterion("C6", "coefficients and partial-fraction identities", 1.0, [](Verdict& v) {
        const auto d = imex::derive_coefficients();
        const auto c = imex::coefficients();
        const Complex derived[] = {d.c1, d.w1, d.w11, d.w21, d.w31, d.c1_tilde, d.w1_tilde, d.omega1_tilde, d.omega2_tilde};
        const Complex printed[] = {c.c1, c.w1, c.w11, c.w21, c.w31, c.c1_tilde, c.w1_tilde, c.omega1_tilde, c.omega2_tilde};
        double coeff_err = 0.0;
        for (int i = 0; i < 9; ++i) {
            coeff_err = std::max({coeff_err, std::abs(derived[i].real() - printed[i].real()),
                                  std::abs(derived[i].imag() - printed[i].imag())});
        }
        auto pf = [](Complex w, Complex pole, Complex z) { return w / (z - pole) + std::conj(w) / (z - std::conj(pole)); };
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> re(0.0, 100.0), im(-100.0, 100.0);
        double id_err = 0.0;
        for (int s = 0; s < 200; ++s) {
            const Complex z{re(rng), im(rng)};
            const Complex q = z * z + 6.0 * z + 12.0, qt = z * z + 12.0 * z + 48.0;
            const Complex diffs[] = {
                1.0 + pf(c.w1, c.c1, z) - (12.0 - 6.0 * z + z * z) / q,
                pf(c.w11, c.c1, z) - 12.0 / q,
                pf(c.w21, c.c1, z) - (6.0 + z) / q,
                pf(c.w31, c.c1, z) - 2.0 * (4.0 + z) / q,
                1.0 + pf(c.w1_tilde, c.c1_tilde, z) - (48.0 - 12.0 * z + z * z) / qt,
                pf(c.omega1_tilde, c.c1_tilde, z) - 24.0 / qt,
                pf(c.omega2_tilde, c.c1_tilde, z) - 2.0 * (12.0 + z) / qt,
                pf(c.omega1_tilde - c.omega2_tilde, c.c1_tilde, z) + 2.0 * z / qt,
            };
            for (Complex e : diffs) id_err = std::max(id_err, std::abs(e));
        }
        v.detail << " max coefficient diff " << sci(coeff_err) << ", max identity residual " << sci(id_err);
        v.require(coeff_err <= 1e-12, "coefficient mismatch");
        v.require(id_err <= 1e-12, "identity residual");
    });

    criterion("C7", "step versus dense rational reference", 5.0, [](Verdict& v) {
        struct Case { int id; std::size_t n; double k; };
        for (const Case& cs : {Case{2, 64, 0.25}, Case{3, 51, 0.01}}) {
            const auto p = problems::make_problem(cs.id);
            const auto g = p.grid_with_points(cs.n);
            const auto sys = p.system(g);
            const auto u0 = p.initial_state(g);
            auto ws = imex::prepare(sys, cs.k);
            const auto fast = imex::step(ws, sys, u0, 0.0);
            const auto dense = imex::step_dense_reference(sys, u0, 0.0, cs.k);
            const double rel = analysis::max_norm_error(dense, fast) / max_abs(dense);
            v.detail << " Example " << cs.id << " rel diff " << sci(rel);
            v.require(rel <= 1e-9, "relative difference above 1e-9");
        }
    });

    criterion("C8", "linear one-step error O(k^5)", 1.0, [](Verdict& v) {
        const std::vector<double> ks{0.1, 0.05, 0.025, 0.0125};
        const auto s = analysis::linear_truncation_check(2.0, 1.0, ks);
        v.detail << " ratios";
        for (std::size_t i = 1; i < s.size(); ++i) {
            const double ratio = s[i - 1].error / s[i].error;
            v.detail << " " << fixed4(ratio);
            v.require(ratio >= 24.0 && ratio <= 40.0, "ratio outside [24, 40]");
        }
    });

    criterion("C9", "periodic mean conservation over 100 steps", 5.0, [](Verdict& v) {
        const auto p = problems::make_problem(2);
        const auto g = p.grid_with_points(256);
        const auto sys = p.system(g);
        auto mean = [](std::span<const double> u) {
            double s = 0.0;
            for (double x : u) s += x;
            return s / static_cast<double>(u.size());
        };
        const auto u0 = p.initial_state(g);
        const double m0 = mean(u0);
        double drift = 0.0;
        imex::integrate(sys, u0, 0.25, 25.0, [&](double, std::span<const double> u) {
            drift = std::max(drift, std::abs(mean(u) - m0));
        });
        v.detail << " max drift " << sci(drift);
        v.require(drift <= 1e-9, "drift above 1e-9");
    });

    criterion("C10", "stability checks", 30.0, [](Verdict& v) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> re(0.0, 1000.0), im(-1000.0, 1000.0);
        double worst_pade = 0.0;
        for (int s = 0; s < 500; ++s) worst_pade = std::max(worst_pade, std::abs(imex::pade22({re(rng), im(rng)})));
        v.detail << " max|R22| " << fixed4(worst_pade);
        v.require(worst_pade <= 1.0, "|R22| above 1 in the right half-plane");

        std::uniform_real_distribution<double> xs(-3.0, 1.0);
        double rk4_err = 0.0;
        for (int s = 0; s < 20; ++s) {
            const Complex x{xs(rng), xs(rng)};
            const Complex poly = 1.0 + x + x * x / 2.0 + x * x * x / 6.0 + x * x * x * x / 24.0;
            rk4_err = std::max(rk4_err, std::abs(analysis::amplification_factor(x, 0.0) - poly));
        }
        v.detail << ", RK4 diff " << sci(rk4_err);
        v.require(rk4_err <= 1e-12, "r(x, 0) differs from the RK4 polynomial");

        const analysis::Window window{};
        double prev = 0.0;
        v.detail << ", areas(y=-2,-6,-10)";
        for (double y : {-2.0, -6.0, -10.0}) {
            const auto f = analysis::stability_scan(y, window, 256, 256);
            v.detail << " " << fixed4(f.stable_area);
            v.require(f.stable_area >= prev, "area decreased");
            prev = f.stable_area;
        }
        const auto up = analysis::stability_scan({0.0, 5.0}, window, 256, 256);
        const auto down = analysis::stability_scan({0.0, -5.0}, window, 256, 256);
        double sym = 0.0;
        for (std::size_t j = 0; j < 256; ++j)
            for (std::size_t i = 0; i < 256; ++i) sym = std::max(sym, std::abs(up.magnitude(i, j) - down.magnitude(i, 255 - j)));
        v.detail << ", +-5i asymmetry " << sci(sym);
        v.require(sym <= 1e-10, "y = +-5i fields not conjugate-symmetric");
    });

    criterion("F1", "Example 1 field at t = 10, h = 0.5, k = 0.01", 60.0, [](Verdict& v) {
        const auto p = problems::make_problem(1);
        const auto g = p.grid_with_spacing(0.5);
        const auto u = run(p, g, 0.01, 10.0);
        const double e = analysis::max_norm_error(p.exact_state(g, 10.0), u);
        v.detail << " max error " << sci(e);
        v.require(std::isfinite(e) && e <= 1e-3, "error above 1e-3");
    });

    struct Guard { const char* id; const char* title; int problem; double beta; double h; std::size_t n; double k; double t; };
    const double pi2 = M_PI * M_PI;
    const Guard guards[] = {
        {"F2", "Example 2 chaotic field, N = 256, k = 1/4, T = 150", 2, 0.0, 0.0, 256, 0.25, 150.0},
        {"F3", "Example 2 chaotic field, N = 512, k = 1/8, T = 300", 2, 0.0, 0.0, 512, 0.125, 300.0},
        {"F4", "Example 3 pulse field, N = 101, k = 0.1, T = 30", 3, 0.0, 0.0, 101, 0.1, 30.0},
        {"F5", "Example 4 field, beta = 0.4/pi^2, T = 2", 4, 0.4 / pi2, 0.05, 0, 0.001, 2.0},
        {"F6", "Example 4 field, beta = 0.6/pi^2, T = 1", 4, 0.6 / pi2, 0.05, 0, 0.001, 1.0},
        {"F7", "Example 4 field, beta = 0.8/pi^2, T = 1", 4, 0.8 / pi2, 0.05, 0, 0.001, 1.0},
    };
    constexpr double kBound = 50.0;
    for (const Guard& gd : guards) {
        criterion(gd.id, gd.title, 120.0, [&gd](Verdict& v) {
            problems::ProblemOverrides o;
            if (gd.beta > 0.0) o.beta = gd.beta;
            const auto p = problems::make_problem(gd.problem, o);
            const auto g = gd.n ? p.grid_with_points(gd.n) : p.grid_with_spacing(gd.h);
            const auto sys = p.system(g);
            double peak = 0.0;
            imex::integrate(sys, p.initial_state(g), gd.k, gd.t,
                            [&](double, std::span<const double> u) {
                                for (double x : u) peak = std::isfinite(x) ? std::max(peak, std::abs(x)) : INFINITY;
                            });
            v.detail << " max|U| over run " << fixed4(peak);
            v.require(std::isfinite(peak) && peak <= kBound, "field unbounded or non-finite");
        });
    }

    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return std::min(g_failures, 100);
}
