#include "kse/compact_fd.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace kse::fd {

namespace {

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
    const auto m = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

void require_points(const Grid& grid, std::size_t minimum, const char* what) {
    if (grid.size() < minimum) {
        throw std::invalid_argument(std::string(what) + ": grid needs at least " +
                                    std::to_string(minimum) + " points, got " +
                                    std::to_string(grid.size()));
    }
}

// Fills the three-point compact stencil rows i in [first, last).
void fill_interior(CompactPair& pair, std::size_t n, std::size_t first, std::size_t last,
                   double diag_lhs, double off_lhs, double rhs_left, double rhs_diag,
                   double rhs_right, bool periodic) {
    for (std::size_t i = first; i < last; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        const std::size_t im = periodic ? wrap(si - 1, n) : i - 1;
        const std::size_t ip = periodic ? wrap(si + 1, n) : i + 1;
        pair.lhs(i, i) = diag_lhs;
        pair.lhs(i, im) += off_lhs;
        pair.lhs(i, ip) += off_lhs;
        pair.rhs(i, im) += rhs_left;
        pair.rhs(i, i) += rhs_diag;
        pair.rhs(i, ip) += rhs_right;
    }
}

DerivativeOperator solve_pair(const CompactPair& pair, int order, const Grid& grid) {
    auto lu = linalg::lu_factor(pair.lhs);
    return {order, lu.solve(pair.rhs), grid};
}

}  // namespace

std::string to_string(BoundaryScheme scheme) {
    return scheme == BoundaryScheme::kPeriodic ? "periodic" : "dirichlet";
}

Grid::Grid(double a, double b, std::size_t n_points, BoundaryScheme scheme)
    : a_(a), b_(b), n_(n_points), scheme_(scheme) {
    if (!(b > a)) throw std::invalid_argument("Grid: right endpoint must exceed left endpoint");
    const std::size_t intervals = scheme == BoundaryScheme::kPeriodic ? n_points : n_points - 1;
    if (n_points < 2 || intervals == 0) throw std::invalid_argument("Grid: too few points");
    h_ = (b - a) / static_cast<double>(intervals);
    if (!(h_ > 0.0)) throw std::invalid_argument("Grid: non-positive spacing");
}

Grid Grid::with_spacing(double a, double b, double h, BoundaryScheme scheme) {
    if (!(h > 0.0)) throw std::invalid_argument("Grid: non-positive spacing");
    const double intervals = (b - a) / h;
    const double rounded = std::round(intervals);
    if (rounded < 1.0 || std::abs(intervals - rounded) > 1e-9 * std::max(1.0, rounded)) {
        throw std::invalid_argument("Grid: spacing does not divide the domain");
    }
    const auto m = static_cast<std::size_t>(rounded);
    return Grid(a, b, scheme == BoundaryScheme::kPeriodic ? m : m + 1, scheme);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
}

CompactPair first_derivative_pair(const Grid& grid) {
    require_points(grid, kMinPointsFirst, "first derivative");
    const std::size_t n = grid.size();
    const double s = 3.0 / grid.h();
    CompactPair pair{RealMatrix(n, n), RealMatrix(n, n)};
    if (grid.scheme() == BoundaryScheme::kPeriodic) {
        fill_interior(pair, n, 0, n, 4.0, 1.0, -s, 0.0, s, true);
        return pair;
    }
    fill_interior(pair, n, 1, n - 1, 4.0, 1.0, -s, 0.0, s, false);
    // 4u'_1 + 12u'_2 = 3/h (-34/9 u_1 + 2u_2 + 2u_3 - 2/9 u_4), mirrored at x_N.
    const double closure[4] = {-34.0 / 9.0, 2.0, 2.0, -2.0 / 9.0};
    pair.lhs(0, 0) = 4.0;
    pair.lhs(0, 1) = 12.0;
    pair.lhs(n - 1, n - 1) = 4.0;
    pair.lhs(n - 1, n - 2) = 12.0;
    for (std::size_t j = 0; j < 4; ++j) {
        pair.rhs(0, j) = s * closure[j];
        pair.rhs(n - 1, n - 1 - j) = -s * closure[j];
    }
    return pair;
}

CompactPair second_derivative_pair(const Grid& grid) {
    require_points(grid, kMinPointsSecond, "second derivative");
    const std::size_t n = grid.size();
    const double s = 12.0 / (grid.h() * grid.h());
    CompactPair pair{RealMatrix(n, n), RealMatrix(n, n)};
    if (grid.scheme() == BoundaryScheme::kPeriodic) {
        fill_interior(pair, n, 0, n, 10.0, 1.0, s, -2.0 * s, s, true);
        return pair;
    }
    fill_interior(pair, n, 1, n - 1, 10.0, 1.0, s, -2.0 * s, s, false);
    // 10u''_1 + 100u''_2 = 12/h^2 (725/72 u_1 - 190/9 u_2 + 145/12 u_3 - 10/9 u_4 + 5/72 u_5).
    const double closure[5] = {725.0 / 72.0, -190.0 / 9.0, 145.0 / 12.0, -10.0 / 9.0, 5.0 / 72.0};
    pair.lhs(0, 0) = 10.0;
    pair.lhs(0, 1) = 100.0;
    pair.lhs(n - 1, n - 1) = 10.0;
    pair.lhs(n - 1, n - 2) = 100.0;
    for (std::size_t j = 0; j < 5; ++j) {
        pair.rhs(0, j) = s * closure[j];
        pair.rhs(n - 1, n - 1 - j) = s * closure[j];
    }
    return pair;
}

DerivativeOperator build_first_derivative(const Grid& grid) {
    return solve_pair(first_derivative_pair(grid), 1, grid);
}

DerivativeOperator build_second_derivative(const Grid& grid) {
    return solve_pair(second_derivative_pair(grid), 2, grid);
}

DerivativeOperator build_fourth_derivative(const Grid& grid) {
    auto d2 = build_second_derivative(grid);
    return {4, linalg::mat_product(d2.matrix, d2.matrix), grid};
}

void write_matrix_csv(std::ostream& out, const RealMatrix& m) {
    char buf[32];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17e", m(i, j));
            if (j) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace kse::fd
