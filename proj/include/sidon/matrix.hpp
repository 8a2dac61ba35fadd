#pragma once

// Dense exact matrices over Z and Q: determinant, Hermite and Smith normal
// forms, rational inverse.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "sidon/integer.hpp"

namespace sidon {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            require(row.size() == cols_, ErrorCode::DimensionMismatch, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            require(rows[i].size() == m.cols_, ErrorCode::DimensionMismatch, "ragged matrix rows");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
        }
        return m;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    // row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const T& factor) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
    }

    void add_col(std::size_t dst, std::size_t src, const T& factor) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, ErrorCode::DimensionMismatch, "matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << '[';
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
            os << "]\n";
        }
        return os;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntegerMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<Rational>;

inline RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

/// Fraction-free (Bareiss) determinant.
inline BigInt determinant(const IntegerMatrix& m) {
    require(m.square(), ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix a = m;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Hermite normal form of the row lattice, lower-triangular convention:
/// positive diagonal, and for i > j, 0 <= H(i,j) < H(j,j).
/// Input must have full column rank; the result is cols x cols.
inline IntegerMatrix hermite_normal_form(const IntegerMatrix& generators) {
    const std::size_t m = generators.rows();
    const std::size_t n = generators.cols();
    IntegerMatrix a = generators;
    std::vector<bool> active(m, true);
    std::vector<std::size_t> pivot(n);

    for (std::size_t c = n; c-- > 0;) {
        std::size_t p = m;
        while (true) {
            p = m;
            for (std::size_t r = 0; r < m; ++r) {
                if (!active[r] || a(r, c) == 0) continue;
                if (p == m || abs(a(r, c)) < abs(a(p, c))) p = r;
            }
            if (p == m) fail(ErrorCode::RankDeficient, "generators do not span a full-rank lattice");
            bool clean = true;
            for (std::size_t r = 0; r < m; ++r) {
                if (r == p || !active[r] || a(r, c) == 0) continue;
                BigInt q = a(r, c) / a(p, c);
                a.add_row(r, p, -q);
                if (a(r, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(p, c) < 0) a.negate_row(p);
        pivot[c] = p;
        active[p] = false;
    }

    IntegerMatrix h(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < n; ++j) h(c, j) = a(pivot[c], j);

    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t c = i; c-- > 0;) {
            BigInt q = h(i, c) / h(c, c);
            if (floor_mod(h(i, c), h(c, c)) != h(i, c) - q * h(c, c)) q -= 1;
            if (q != 0) h.add_row(i, c, -q);
        }
    return h;
}

struct SmithDecomposition {
    IntegerMatrix diagonal;  // D
    IntegerMatrix left;      // U, unimodular
    IntegerMatrix right;     // V, unimodular

    std::vector<BigInt> invariants() const {
        std::vector<BigInt> d;
        for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
            d.push_back(diagonal(i, i));
        return d;
    }
};

/// Smith normal form D = U * M * V with d_i | d_{i+1} and d_i >= 0.
/// Pivot choice: smallest nonzero magnitude in the trailing block, first in
/// row-major order, so the output is a deterministic function of M.
inline SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    IntegerMatrix d = m;
    IntegerMatrix u = IntegerMatrix::identity(rows);
    IntegerMatrix v = IntegerMatrix::identity(cols);

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        bool exhausted = false;
        while (true) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (d(i, j) == 0) continue;
                    if (pi == rows || abs(d(i, j)) < abs(d(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == rows) {
                exhausted = true;
                break;
            }
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                BigInt q = d(i, t) / d(t, t);
                d.add_row(i, t, -q);
                u.add_row(i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                BigInt q = d(t, j) / d(t, t);
                d.add_col(j, t, -q);
                v.add_col(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide the whole trailing block
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            d.add_row(t, bad, 1);
            u.add_row(t, bad, 1);
        }
        if (exhausted) break;
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    return {std::move(d), std::move(u), std::move(v)};
}

/// Exact inverse over Q (Gauss-Jordan).
inline RationalMatrix rational_inverse(const RationalMatrix& m) {
    require(m.square(), ErrorCode::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) fail(ErrorCode::Singular, "matrix is singular");
        a.swap_rows(c, p);
        inv.swap_rows(c, p);
        Rational scale = 1 / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= scale;
            inv(c, j) *= scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rational f = -a(i, c);
            a.add_row(i, c, f);
            inv.add_row(i, c, f);
        }
    }
    return inv;
}

inline Rational rational_determinant(const RationalMatrix& m) {
    require(m.square(), ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            a.swap_rows(c, p);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            a.add_row(i, c, -a(i, c) / a(c, c));
        }
    }
    return det;
}

} // namespace sidon
