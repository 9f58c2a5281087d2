#pragma once

// Low-level dense kernels. Each kernel has a serial reference in
// kse::kernels::serial and an OpenMP version in kse::kernels::parallel.
// Both variants perform the same floating-point operations in the same
// order per output entry, so their results are bit-identical; the serial
// versions exist for testing and for the benchmark baseline.

#include <complex>
#include <cstddef>
#include <span>

namespace kse::kernels {

/// Row-major view used by the kernels: element (i, j) lives at data[i * ld + j].
template <class T>
struct MatrixRef {
    T* data;
    std::size_t rows;
    std::size_t cols;
    std::size_t ld;

    T& operator()(std::size_t i, std::size_t j) const noexcept { return data[i * ld + j]; }
};

template <class T>
struct ConstMatrixRef {
    const T* data;
    std::size_t rows;
    std::size_t cols;
    std::size_t ld;

    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data[i * ld + j]; }
};

/// Outcome of an in-place LU factorization.
struct LuStatus {
    bool singular = false;
    std::size_t failed_pivot = 0;
};

namespace serial {

void gemm(ConstMatrixRef<double> a, ConstMatrixRef<double> b, MatrixRef<double> c);
void gemm(ConstMatrixRef<std::complex<double>> a, ConstMatrixRef<std::complex<double>> b,
          MatrixRef<std::complex<double>> c);

void gemv(ConstMatrixRef<double> a, std::span<const double> x, std::span<double> y);
void gemv(ConstMatrixRef<std::complex<double>> a, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y);

/// Doolittle LU with partial pivoting, in place. `row_scale[i]` is the
/// magnitude of the largest entry of original row i; a pivot below
/// n * eps * row_scale is reported as singular.
LuStatus lu_factor(MatrixRef<double> a, std::span<std::size_t> pivots);
LuStatus lu_factor(MatrixRef<std::complex<double>> a, std::span<std::size_t> pivots);

}  // namespace serial

namespace parallel {

void gemm(ConstMatrixRef<double> a, ConstMatrixRef<double> b, MatrixRef<double> c);
void gemm(ConstMatrixRef<std::complex<double>> a, ConstMatrixRef<std::complex<double>> b,
          MatrixRef<std::complex<double>> c);

void gemv(ConstMatrixRef<double> a, std::span<const double> x, std::span<double> y);
void gemv(ConstMatrixRef<std::complex<double>> a, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y);

LuStatus lu_factor(MatrixRef<double> a, std::span<std::size_t> pivots);
LuStatus lu_factor(MatrixRef<std::complex<double>> a, std::span<std::size_t> pivots);

}  // namespace parallel

/// Forward/back substitution against packed factors. Inherently sequential
/// for a single right-hand side.
void lu_substitute(ConstMatrixRef<double> lu, std::span<const std::size_t> pivots,
                   std::span<double> b);
void lu_substitute(ConstMatrixRef<std::complex<double>> lu, std::span<const std::size_t> pivots,
                   std::span<std::complex<double>> b);

/// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace kse::kernels
