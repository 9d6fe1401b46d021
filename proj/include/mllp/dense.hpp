#pragma once

// Minimal dense linear algebra: row-major matrix, mat-vec products and an
// LU-based inverse with partial pivoting. Everything the solver needs and
// nothing more; templated so exact scalars work unchanged.

#include "mllp/numeric.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mllp {

template <typename T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
using Vector = std::vector<T>;

template <typename T>
inline T dot(const Vector<T>& a, const Vector<T>& b) {
    T s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// y = M x
template <typename T>
inline Vector<T> matvec(const Matrix<T>& m, const Vector<T>& x) {
    Vector<T> y(m.rows(), T{});
    for (std::size_t i = 0; i < m.rows(); ++i) {
        T s{};
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

/// y^t = x^t M
template <typename T>
inline Vector<T> vecmat(const Vector<T>& x, const Matrix<T>& m) {
    Vector<T> y(m.cols(), T{});
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
    return y;
}

/// Invert a square matrix by Gauss-Jordan with partial pivoting.
/// Returns false (leaving `inv` unspecified) when no pivot exceeds
/// `pivot_tol` in some column, i.e. the matrix is singular to tolerance.
template <typename T>
inline bool invert(const Matrix<T>& m, Matrix<T>& inv, const T& pivot_tol = T{}) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("invert: matrix not square");
    Matrix<T> a = m;
    inv = Matrix<T>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        T best = abs_of(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            T mag = abs_of(a(r, col));
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (!(best > pivot_tol)) return false;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(col, j), a(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        }
        T d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            T f = a(r, col);
            if (f == T{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return true;
}

/// Solve M x = rhs through the inverse-free route (fresh elimination);
/// used by the enumeration oracle where each basis is visited once.
/// Returns false when the system is singular to `pivot_tol`.
template <typename T>
inline bool solve_square(Matrix<T> a, Vector<T> rhs, Vector<T>& x, const T& pivot_tol = T{}) {
    const std::size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n) throw std::invalid_argument("solve_square: shape");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        T best = abs_of(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            T mag = abs_of(a(r, col));
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (!(best > pivot_tol)) return false;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(rhs[col], rhs[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            T f = a(r, col) / a(col, col);
            if (f == T{}) continue;
            rhs[r] -= f * rhs[col];
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    x.assign(n, T{});
    for (std::size_t ri = n; ri-- > 0;) {
        T s = rhs[ri];
        for (std::size_t j = ri + 1; j < n; ++j) s -= a(ri, j) * x[j];
        x[ri] = s / a(ri, ri);
    }
    return true;
}

}  // namespace mllp
