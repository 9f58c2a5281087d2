#pragma once

#include "kse/linalg.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace kse::fd {

using linalg::RealMatrix;

enum class BoundaryScheme { kPeriodic, kDirichlet };

std::string to_string(BoundaryScheme scheme);

/// Uniform grid on [a, b].
///
/// Periodic grids carry N unknowns at x_i = a + i*h, h = (b - a)/N; the node
/// at b is identified with a. Dirichlet grids carry N nodes including both
/// endpoints, h = (b - a)/(N - 1).
class Grid {
public:
    Grid(double a, double b, std::size_t n_points, BoundaryScheme scheme);

    /// Grid whose spacing is h. Throws if (b - a)/h is not an integer.
    static Grid with_spacing(double a, double b, double h, BoundaryScheme scheme);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return n_; }
    BoundaryScheme scheme() const noexcept { return scheme_; }

    double x(std::size_t i) const noexcept { return a_ + static_cast<double>(i) * h_; }
    std::vector<double> nodes() const;

private:
    double a_;
    double b_;
    std::size_t n_;
    double h_;
    BoundaryScheme scheme_;
};

/// The banded pair of a compact scheme, L u^(m) = M u.
struct CompactPair {
    RealMatrix lhs;
    RealMatrix rhs;
};

/// u'_{i-1} + 4u'_i + u'_{i+1} = 3/h (u_{i+1} - u_{i-1}) with the one-sided
/// 4u'_1 + 12u'_2 closures on Dirichlet grids.
CompactPair first_derivative_pair(const Grid& grid);

/// u''_{i-1} + 10u''_i + u''_{i+1} = 12/h^2 (u_{i-1} - 2u_i + u_{i+1}) with the
/// 10u''_1 + 100u''_2 closures on Dirichlet grids.
CompactPair second_derivative_pair(const Grid& grid);

struct DerivativeOperator {
    int order;
    RealMatrix matrix;
    Grid grid;
};

/// D1 = L1^{-1} M1. Requires at least 6 points.
DerivativeOperator build_first_derivative(const Grid& grid);
/// D2 = L2^{-1} M2. Requires at least 7 points.
DerivativeOperator build_second_derivative(const Grid& grid);
/// D4 = D2 * D2.
DerivativeOperator build_fourth_derivative(const Grid& grid);

inline constexpr std::size_t kMinPointsFirst = 6;
inline constexpr std::size_t kMinPointsSecond = 7;

/// Writes the matrix as row-major CSV in full-precision scientific notation.
void write_matrix_csv(std::ostream& out, const RealMatrix& m);

}  // namespace kse::fd
