#pragma once

#include "kse/linalg.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace kse::analysis {

using linalg::Complex;
using linalg::RealVector;

/// Error figures for one run of a convergence study.
struct ErrorReport {
    double max_norm = 0.0;
    double gre = 0.0;
    std::optional<double> e_k;
    std::optional<double> observed_order;
    double cpu_seconds = 0.0;
};

/// max_i |exact_i - numeric_i|.
double max_norm_error(std::span<const double> exact, std::span<const double> numeric);

/// Global relative error sum|exact - numeric| / sum|exact|. Throws when the
/// denominator is zero.
double gre(std::span<const double> exact, std::span<const double> numeric);

/// log2(e_coarse / e_fine). Both errors must be positive.
double observed_order(double e_coarse, double e_fine);

/// E_k = ||U_k - U_2k||_inf between final states on the same grid.
double self_difference_error(std::span<const double> u_k, std::span<const double> u_2k);

struct TruncationSample {
    double k;
    double error;
};

/// One step of the scheme on u' = -L u + R u from u = 1, R u explicit,
/// against e^{(R - L) k}, for each k.
std::vector<TruncationSample> linear_truncation_check(double l, double r,
                                                      std::span<const double> k_list);

/// y is too close to a pole of the step rationals.
class PoleProximityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// r(x, y) = u_{n+1} / u_n for u_t = -c u + gamma u, x = gamma k, y = -c k.
Complex amplification_factor(Complex x, Complex y);

struct Window {
    double re_min = -8.0;
    double re_max = 2.0;
    double im_min = -5.0;
    double im_max = 5.0;

    double area() const { return (re_max - re_min) * (im_max - im_min); }
    bool operator==(const Window&) const = default;
};

struct Point {
    double re;
    double im;
};

using Polyline = std::vector<Point>;

enum class Execution { kSerial, kParallel };

/// |r(x, y)| sampled on a uniform nx-by-ny grid over `window` (row j holds
/// im_x fixed), with the |r| = 1 level set.
struct StabilityField {
    Complex y;
    Window window;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> magnitudes;  // row-major, ny rows of nx
    std::vector<Polyline> boundary;
    double stable_area = 0.0;        // sample fraction with |r| <= 1 times window area
    bool empty = false;              // no |r| <= 1 sample inside the window

    double re_at(std::size_t i) const;
    double im_at(std::size_t j) const;
    double magnitude(std::size_t i, std::size_t j) const { return magnitudes[j * nx + i]; }
};

inline constexpr std::size_t kMinScanResolution = 16;
inline constexpr std::size_t kDefaultScanResolution = 512;

/// Marching squares on |r| - 1 with crossings refined by bisection along
/// cell edges. Throws std::invalid_argument if either resolution is below 16.
StabilityField stability_scan(Complex y, const Window& window = {},
                              std::size_t nx = kDefaultScanResolution,
                              std::size_t ny = kDefaultScanResolution,
                              Execution exec = Execution::kParallel);

/// CSV with header re_x,im_x,abs_r.
void write_field_csv(std::ostream& out, const StabilityField& field);
/// CSV with header curve,re_x,im_x; one curve index per polyline.
void write_boundary_csv(std::ostream& out, const StabilityField& field);

}  // namespace kse::analysis
