#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

namespace ztower {

/// Dense row-major matrix over an arbitrary (commutative) ring.
template <class T> class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T &operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T &operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// Copy with row `row` and column `col` removed.
    Matrix minor(std::size_t row, std::size_t col) const {
        Matrix m;
        m.rows_ = rows_ - 1;
        m.cols_ = cols_ - 1;
        m.data_.reserve(m.rows_ * m.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row)
                continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (j != col)
                    m.data_.push_back((*this)(i, j));
        }
        return m;
    }

    /// Principal submatrix on the given index set (in the given order).
    Matrix principal(const std::vector<std::size_t> &idx) const {
        Matrix m;
        m.rows_ = m.cols_ = idx.size();
        m.data_.reserve(idx.size() * idx.size());
        for (auto i : idx)
            for (auto j : idx)
                m.data_.push_back((*this)(i, j));
        return m;
    }

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Laplace expansion along the first row. Exponential; for tiny matrices and
/// as a reference for the other routines.
template <class T>
T determinant_cofactor(const Matrix<T> &a, const T &zero, const T &one) {
    assert(a.rows() == a.cols());
    const std::size_t n = a.rows();
    if (n == 0)
        return one;
    if (n == 1)
        return a(0, 0);
    if (n == 2)
        return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    T det = zero;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j) == zero)
            continue;
        T term = a(0, j) * determinant_cofactor(a.minor(0, j), zero, one);
        if (j % 2 == 0)
            det = det + term;
        else
            det = det - term;
    }
    return det;
}

/// Division-free determinant (Samuelson-Berkowitz). Valid over any
/// commutative ring, including rings with zero divisors. O(n^4).
template <class T>
T determinant_berkowitz(const Matrix<T> &a, const T &zero, const T &one) {
    assert(a.rows() == a.cols());
    const std::size_t n = a.rows();
    if (n == 0)
        return one;
    // Characteristic polynomial coefficients of the leading r x r block,
    // highest degree first: det(xI - A_r) = sum poly[k] x^(r-k).
    std::vector<T> poly{one, zero - a(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // q_0 = 1, q_1 = -a_rr, q_{k+2} = -R A^k C for k < r.
        std::vector<T> q;
        q.reserve(r + 2);
        q.push_back(one);
        q.push_back(zero - a(r, r));
        std::vector<T> col(r, zero);
        for (std::size_t i = 0; i < r; ++i)
            col[i] = a(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            T dot = zero;
            for (std::size_t i = 0; i < r; ++i)
                if (!(a(r, i) == zero))
                    dot = dot + a(r, i) * col[i];
            q.push_back(zero - dot);
            if (k + 1 < r) {
                std::vector<T> next(r, zero);
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j)
                        if (!(a(i, j) == zero))
                            next[i] = next[i] + a(i, j) * col[j];
                col = std::move(next);
            }
        }
        // Multiply the (r+2) x (r+1) lower-triangular Toeplitz matrix by poly.
        std::vector<T> next(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < poly.size(); ++j)
                next[i] = next[i] + q[i - j] * poly[j];
        poly = std::move(next);
    }
    return (n % 2 == 0) ? poly[n] : zero - poly[n];
}

/// Fraction-free (Bareiss) elimination with row pivoting. `divexact(x, y)`
/// must return x / y whenever y divides x exactly.
template <class T, class DivExact>
T determinant_bareiss(Matrix<T> a, const T &zero, const T &one,
                      DivExact &&divexact) {
    assert(a.rows() == a.cols());
    const std::size_t n = a.rows();
    if (n == 0)
        return one;
    bool negate = false;
    T prev = one;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == zero) {
            std::size_t pivot = k + 1;
            while (pivot < n && a(pivot, k) == zero)
                ++pivot;
            if (pivot == n)
                return zero;
            a.swap_rows(k, pivot);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = divexact(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
            a(i, k) = zero;
        }
        prev = a(k, k);
    }
    T det = a(n - 1, n - 1);
    return negate ? zero - det : det;
}

} // namespace ztower
