#include "kse/linalg.hpp"

#include "kse/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace kse::linalg {

namespace {

template <class T>
kernels::ConstMatrixRef<T> cref(const DenseMatrix<T>& m) {
    return {m.data().data(), m.rows(), m.cols(), m.cols()};
}

template <class T>
kernels::MatrixRef<T> ref(DenseMatrix<T>& m) {
    return {m.data().data(), m.rows(), m.cols(), m.cols()};
}

template <class T>
void require_same_shape(const DenseMatrix<T>& a, const DenseMatrix<T>& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                             "x" + std::to_string(b.cols()) + ")");
    }
}

template <class T>
DenseMatrix<T> product(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("mat_product: inner dimensions " + std::to_string(a.cols()) + " and " +
                             std::to_string(b.rows()) + " differ");
    }
    DenseMatrix<T> c(a.rows(), b.cols());
    kernels::parallel::gemm(cref(a), cref(b), ref(c));
    return c;
}

template <class T>
std::vector<T> product(const DenseMatrix<T>& a, std::span<const T> x) {
    if (a.cols() != x.size()) throw DimensionError("mat_vec: vector length does not match columns");
    std::vector<T> y(a.rows());
    kernels::parallel::gemv(cref(a), x, std::span<T>(y));
    return y;
}

template <class T>
LuFactorization<T> factor(DenseMatrix<T> a) {
    if (!a.square()) throw DimensionError("lu_factor: matrix must be square");
    for (const T& v : a.data()) {
        if (!std::isfinite(std::abs(v))) throw std::domain_error("lu_factor: non-finite entry");
    }
    std::vector<std::size_t> pivots(a.rows());
    for (std::size_t i = 0; i < pivots.size(); ++i) pivots[i] = i;
    const auto status = kernels::parallel::lu_factor(ref(a), std::span<std::size_t>(pivots));
    if (status.singular) throw SingularMatrixError(status.failed_pivot);
    return LuFactorization<T>(std::move(a), std::move(pivots));
}

}  // namespace

SingularMatrixError::SingularMatrixError(std::size_t pivot_index)
    : std::runtime_error("matrix is singular to working precision at pivot " +
                         std::to_string(pivot_index)),
      pivot_index_(pivot_index) {}

template <class T>
DenseMatrix<T>& DenseMatrix<T>::operator+=(const DenseMatrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

template <class T>
DenseMatrix<T>& DenseMatrix<T>::operator-=(const DenseMatrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

template <class T>
DenseMatrix<T>& DenseMatrix<T>::operator*=(T scale) {
    for (T& v : data_) v *= scale;
    return *this;
}

template class DenseMatrix<double>;
template class DenseMatrix<Complex>;

ComplexMatrix complex_shifted(const RealMatrix& a, double scale, Complex shift) {
    if (!a.square()) throw DimensionError("complex_shifted: matrix must be square");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = scale * a(i, j);
        out(i, i) += shift;
    }
    return out;
}

RealMatrix mat_product(const RealMatrix& a, const RealMatrix& b) { return product(a, b); }
ComplexMatrix mat_product(const ComplexMatrix& a, const ComplexMatrix& b) { return product(a, b); }

RealVector mat_vec(const RealMatrix& a, std::span<const double> x) { return product(a, x); }
ComplexVector mat_vec(const ComplexMatrix& a, std::span<const Complex> x) { return product(a, x); }

void mat_vec(const RealMatrix& a, std::span<const double> x, std::span<double> y) {
    if (a.cols() != x.size() || a.rows() != y.size()) {
        throw DimensionError("mat_vec: vector length does not match matrix");
    }
    kernels::parallel::gemv(cref(a), x, y);
}

RealMatrix transpose(const RealMatrix& a) {
    RealMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double norm_inf(const RealMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (double v : a.row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(std::span<const double> v) {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
}

double max_abs_entry(const RealMatrix& a) { return norm_inf(a.data()); }

double max_abs_difference(const RealMatrix& a, const RealMatrix& b) {
    require_same_shape(a, b, "max_abs_difference");
    double best = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    return best;
}

template <class T>
void LuFactorization<T>::solve_in_place(std::span<T> b) const {
    if (b.size() != size()) throw DimensionError("lu_solve: right-hand side length mismatch");
    kernels::lu_substitute(cref(lu_), std::span<const std::size_t>(pivots_), b);
}

template <class T>
std::vector<T> LuFactorization<T>::solve(std::span<const T> b) const {
    std::vector<T> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
}

template <class T>
DenseMatrix<T> LuFactorization<T>::solve(const DenseMatrix<T>& b) const {
    if (b.rows() != size()) throw DimensionError("lu_solve: right-hand side rows mismatch");
    const std::size_t n = size();
    const std::size_t m = b.cols();
    DenseMatrix<T> x(n, m);
    const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (n * m > 64 * 64)
    for (std::ptrdiff_t jj = 0; jj < cols; ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        std::vector<T> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
        kernels::lu_substitute(cref(lu_), std::span<const std::size_t>(pivots_), std::span<T>(col));
        for (std::size_t i = 0; i < n; ++i) x(i, j) = col[i];
    }
    return x;
}

template class LuFactorization<double>;
template class LuFactorization<Complex>;

RealLu lu_factor(RealMatrix a) { return factor(std::move(a)); }
ComplexLu lu_factor(ComplexMatrix a) { return factor(std::move(a)); }

ComplexVector lu_solve(const RealLu& f, std::span<const Complex> b) {
    if (b.size() != f.size()) throw DimensionError("lu_solve: right-hand side length mismatch");
    RealVector re(b.size()), im(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        re[i] = b[i].real();
        im[i] = b[i].imag();
    }
    f.solve_in_place(re);
    f.solve_in_place(im);
    ComplexVector x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) x[i] = {re[i], im[i]};
    return x;
}

RealMatrix inverse(const RealMatrix& a) { return lu_factor(a).inverse(); }

}  // namespace kse::linalg
