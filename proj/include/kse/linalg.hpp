#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kse::linalg {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<Complex>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by lu_factor when a pivot vanishes to working precision.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(std::size_t pivot_index);

    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

/// Dense row-major matrix over double or std::complex<double>.
template <class T>
class DenseMatrix {
public:
    using value_type = T;

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(T scale);

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<Complex>;

template <class T>
DenseMatrix<T> operator+(DenseMatrix<T> a, const DenseMatrix<T>& b) { return a += b; }
template <class T>
DenseMatrix<T> operator-(DenseMatrix<T> a, const DenseMatrix<T>& b) { return a -= b; }
template <class T>
DenseMatrix<T> operator*(T s, DenseMatrix<T> a) { return a *= s; }

/// Promote a real matrix to complex, optionally scaled and shifted: scale*A + shift*I.
ComplexMatrix complex_shifted(const RealMatrix& a, double scale, Complex shift);

RealMatrix mat_product(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix mat_product(const ComplexMatrix& a, const ComplexMatrix& b);

RealVector mat_vec(const RealMatrix& a, std::span<const double> x);
ComplexVector mat_vec(const ComplexMatrix& a, std::span<const Complex> x);
/// y := A x without allocating.
void mat_vec(const RealMatrix& a, std::span<const double> x, std::span<double> y);

RealMatrix transpose(const RealMatrix& a);

/// Largest absolute row sum.
double norm_inf(const RealMatrix& a);
double norm_inf(std::span<const double> v);
double max_abs_entry(const RealMatrix& a);
double max_abs_difference(const RealMatrix& a, const RealMatrix& b);

/// PA = LU with partial pivoting. Factors are packed: unit lower part below
/// the diagonal, U on and above it.
template <class T>
class LuFactorization {
public:
    LuFactorization(DenseMatrix<T> packed, std::vector<std::size_t> pivots)
        : lu_(std::move(packed)), pivots_(std::move(pivots)) {}

    std::size_t size() const noexcept { return lu_.rows(); }
    const DenseMatrix<T>& packed() const noexcept { return lu_; }
    std::span<const std::size_t> pivots() const noexcept { return pivots_; }

    /// Overwrites b with A^{-1} b.
    void solve_in_place(std::span<T> b) const;

    std::vector<T> solve(std::span<const T> b) const;
    DenseMatrix<T> solve(const DenseMatrix<T>& b) const;

    /// A^{-1} assembled column by column.
    DenseMatrix<T> inverse() const { return solve(DenseMatrix<T>::identity(size())); }

private:
    DenseMatrix<T> lu_;
    std::vector<std::size_t> pivots_;
};

using RealLu = LuFactorization<double>;
using ComplexLu = LuFactorization<Complex>;

RealLu lu_factor(RealMatrix a);
ComplexLu lu_factor(ComplexMatrix a);

template <class T>
std::vector<T> lu_solve(const LuFactorization<T>& f, std::span<const T> b) { return f.solve(b); }
template <class T>
DenseMatrix<T> lu_solve(const LuFactorization<T>& f, const DenseMatrix<T>& b) { return f.solve(b); }

/// Real factorization against a complex right-hand side: real and imaginary
/// parts are solved separately.
ComplexVector lu_solve(const RealLu& f, std::span<const Complex> b);

/// Convenience: A^{-1} via lu_factor.
RealMatrix inverse(const RealMatrix& a);

}  // namespace kse::linalg
