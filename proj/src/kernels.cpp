#include "kse/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kse::kernels {

namespace {

// Below these sizes a parallel region costs more than it saves.
constexpr std::size_t kParallelRows = 64;

template <class T>
void gemm_row(ConstMatrixRef<T> a, ConstMatrixRef<T> b, MatrixRef<T> c, std::size_t i) {
    T* out = &c(i, 0);
    std::fill(out, out + c.cols, T{});
    for (std::size_t p = 0; p < a.cols; ++p) {
        const T aip = a(i, p);
        if (aip == T{}) continue;
        const T* brow = &b(p, 0);
        for (std::size_t j = 0; j < c.cols; ++j) out[j] += aip * brow[j];
    }
}

template <class T>
T dot_row(ConstMatrixRef<T> a, std::span<const T> x, std::size_t i) {
    T acc{};
    const T* arow = &a(i, 0);
    for (std::size_t j = 0; j < a.cols; ++j) acc += arow[j] * x[j];
    return acc;
}

template <class T>
std::vector<double> row_scales(MatrixRef<T> a) {
    std::vector<double> scale(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) scale[i] = std::max(scale[i], std::abs(a(i, j)));
    return scale;
}

// Selects and swaps the pivot for column k. Returns false when the column is
// numerically zero relative to the pivot row's original scale.
template <class T>
bool pivot_column(MatrixRef<T> a, std::span<std::size_t> pivots, std::vector<double>& scale,
                  std::size_t k) {
    const std::size_t n = a.rows;
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
        const double v = std::abs(a(i, k));
        if (v > best) {
            best = v;
            p = i;
        }
    }
    const double tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale[p];
    if (!(best > tol)) return false;
    pivots[k] = p;
    if (p != k) {
        std::swap_ranges(&a(k, 0), &a(k, 0) + a.cols, &a(p, 0));
        std::swap(scale[k], scale[p]);
    }
    return true;
}

template <class T>
void eliminate_row(MatrixRef<T> a, std::size_t k, std::size_t i) {
    const T l = a(i, k) / a(k, k);
    a(i, k) = l;
    if (l == T{}) return;
    const T* krow = &a(k, 0);
    T* irow = &a(i, 0);
    for (std::size_t j = k + 1; j < a.cols; ++j) irow[j] -= l * krow[j];
}

template <class T>
LuStatus lu_serial(MatrixRef<T> a, std::span<std::size_t> pivots) {
    auto scale = row_scales(a);
    for (std::size_t k = 0; k < a.rows; ++k) {
        if (!pivot_column(a, pivots, scale, k)) return {true, k};
        for (std::size_t i = k + 1; i < a.rows; ++i) eliminate_row(a, k, i);
    }
    return {};
}

template <class T>
LuStatus lu_parallel(MatrixRef<T> a, std::span<std::size_t> pivots) {
    auto scale = row_scales(a);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows);
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        if (!pivot_column(a, pivots, scale, static_cast<std::size_t>(k))) {
            return {true, static_cast<std::size_t>(k)};
        }
#pragma omp parallel for schedule(static) if (n - k > static_cast<std::ptrdiff_t>(kParallelRows))
        for (std::ptrdiff_t i = k + 1; i < n; ++i) {
            eliminate_row(a, static_cast<std::size_t>(k), static_cast<std::size_t>(i));
        }
    }
    return {};
}

template <class T>
void substitute(ConstMatrixRef<T> lu, std::span<const std::size_t> pivots, std::span<T> b) {
    const std::size_t n = lu.rows;
    for (std::size_t k = 0; k < n; ++k) {
        if (pivots[k] != k) std::swap(b[k], b[pivots[k]]);
    }
    for (std::size_t i = 1; i < n; ++i) {
        T acc = b[i];
        const T* row = &lu(i, 0);
        for (std::size_t j = 0; j < i; ++j) acc -= row[j] * b[j];
        b[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        T acc = b[ii];
        const T* row = &lu(ii, 0);
        for (std::size_t j = ii + 1; j < n; ++j) acc -= row[j] * b[j];
        b[ii] = acc / row[ii];
    }
}

}  // namespace

namespace serial {

void gemm(ConstMatrixRef<double> a, ConstMatrixRef<double> b, MatrixRef<double> c) {
    for (std::size_t i = 0; i < c.rows; ++i) gemm_row(a, b, c, i);
}
void gemm(ConstMatrixRef<std::complex<double>> a, ConstMatrixRef<std::complex<double>> b,
          MatrixRef<std::complex<double>> c) {
    for (std::size_t i = 0; i < c.rows; ++i) gemm_row(a, b, c, i);
}

void gemv(ConstMatrixRef<double> a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < a.rows; ++i) y[i] = dot_row(a, x, i);
}
void gemv(ConstMatrixRef<std::complex<double>> a, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y) {
    for (std::size_t i = 0; i < a.rows; ++i) y[i] = dot_row(a, x, i);
}

LuStatus lu_factor(MatrixRef<double> a, std::span<std::size_t> pivots) { return lu_serial(a, pivots); }
LuStatus lu_factor(MatrixRef<std::complex<double>> a, std::span<std::size_t> pivots) {
    return lu_serial(a, pivots);
}

}  // namespace serial

namespace parallel {

void gemm(ConstMatrixRef<double> a, ConstMatrixRef<double> b, MatrixRef<double> c) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(c.rows);
#pragma omp parallel for schedule(static) if (c.rows > kParallelRows / 4)
    for (std::ptrdiff_t i = 0; i < m; ++i) gemm_row(a, b, c, static_cast<std::size_t>(i));
}
void gemm(ConstMatrixRef<std::complex<double>> a, ConstMatrixRef<std::complex<double>> b,
          MatrixRef<std::complex<double>> c) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(c.rows);
#pragma omp parallel for schedule(static) if (c.rows > kParallelRows / 4)
    for (std::ptrdiff_t i = 0; i < m; ++i) gemm_row(a, b, c, static_cast<std::size_t>(i));
}

void gemv(ConstMatrixRef<double> a, std::span<const double> x, std::span<double> y) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static) if (a.rows * a.cols > 256 * 256)
    for (std::ptrdiff_t i = 0; i < m; ++i) y[i] = dot_row(a, x, static_cast<std::size_t>(i));
}
void gemv(ConstMatrixRef<std::complex<double>> a, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static) if (a.rows * a.cols > 128 * 128)
    for (std::ptrdiff_t i = 0; i < m; ++i) y[i] = dot_row(a, x, static_cast<std::size_t>(i));
}

LuStatus lu_factor(MatrixRef<double> a, std::span<std::size_t> pivots) { return lu_parallel(a, pivots); }
LuStatus lu_factor(MatrixRef<std::complex<double>> a, std::span<std::size_t> pivots) {
    return lu_parallel(a, pivots);
}

}  // namespace parallel

void lu_substitute(ConstMatrixRef<double> lu, std::span<const std::size_t> pivots,
                   std::span<double> b) {
    substitute(lu, pivots, b);
}
void lu_substitute(ConstMatrixRef<std::complex<double>> lu, std::span<const std::size_t> pivots,
                   std::span<std::complex<double>> b) {
    substitute(lu, pivots, b);
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace kse::kernels
