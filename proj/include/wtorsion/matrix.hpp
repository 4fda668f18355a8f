// Dense matrices over a ring from the tower. A matrix with r rows and c
// columns is a morphism from rank c to rank r; products compose right to left.

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wtorsion/errors.hpp"
#include "wtorsion/ring.hpp"

namespace wtorsion {

class Matrix {
public:
    Matrix() = default;
    Matrix(Ring ring, std::size_t rows, std::size_t cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(ring_)) {}

    static Matrix zero(const Ring& r, std::size_t rows, std::size_t cols) { return Matrix(r, rows, cols); }
    static Matrix identity(const Ring& r, std::size_t n) {
        Matrix m(r, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(r);
        return m;
    }
    static Matrix scalar(const Ring& r, std::size_t n, const Scalar& s) {
        Matrix m(r, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
        return m;
    }
    static Matrix from_ints(const Ring& r, const std::vector<std::vector<long long>>& rows) {
        std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
        Matrix m(r, nr, nc);
        for (std::size_t i = 0; i < nr; ++i) {
            if (rows[i].size() != nc) throw InvalidInput("ragged matrix");
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = Scalar(r, rows[i][j]);
        }
        return m;
    }
    static Matrix from_scalars(const Ring& r, std::size_t nr, std::size_t nc, std::vector<Scalar> v) {
        if (v.size() != nr * nc) throw InvalidInput("matrix entry count mismatch");
        Matrix m(r, nr, nc);
        m.a_ = std::move(v);
        return m;
    }

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_identity() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && ring_ == o.ring_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        same_shape(x, y, "+");
        Matrix m(x.ring_, x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = x.a_[i] + y.a_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        same_shape(x, y, "-");
        Matrix m(x.ring_, x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = x.a_[i] - y.a_[i];
        return m;
    }
    Matrix operator-() const {
        Matrix m(ring_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
        return m;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_)
            throw DimensionMismatch("matrix product " + x.shape() + " * " + y.shape());
        if (x.ring_ != y.ring_) throw IncompatibleRings("matrix product over different rings");
        Matrix m(x.ring_, x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Scalar& a = x(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    const Scalar& b = y(k, j);
                    if (!b.is_zero()) m(i, j) += a * b;
                }
            }
        return m;
    }
    friend Matrix operator*(const Scalar& s, const Matrix& x) {
        Matrix m(x.ring_, x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = s * x.a_[i];
        return m;
    }
    Matrix scaled(long long s) const { return Scalar(ring_, s) * *this; }
    Matrix signed_by(int parity) const { return (parity & 1) ? -*this : *this; }

    Matrix transpose() const {
        Matrix m(ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    /// Entrywise involution followed by transpose: the dual morphism f*.
    Matrix star() const {
        Matrix m(ring_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).involution();
        return m;
    }
    Matrix map(const std::function<Scalar(const Scalar&)>& f, const Ring& target) const {
        Matrix m(target, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f(a_[i]);
        return m;
    }
    Matrix convert(const Ring& target) const {
        return map([&](const Scalar& s) { return wtorsion::convert(s, target); }, target);
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix m(ring_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("set_block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
            s += "]";
        }
        return s + "]";
    }

private:
    static void same_shape(const Matrix& x, const Matrix& y, const char* op) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw DimensionMismatch(std::string("matrix ") + op + " " + x.shape() + " vs " + y.shape());
        if (x.ring_ != y.ring_) throw IncompatibleRings("matrix arithmetic over different rings");
    }

    Ring ring_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

/// Block diagonal sum, first argument in the top-left block.
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix m(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

/// Kronecker product, row-major: basis element (i, j) has index i * dim2 + j.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(i, j);
            if (x.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    return m;
}

/// Assembles a matrix from a grid of blocks. Row heights and column widths
/// are given explicitly so that empty blocks are unambiguous.
inline Matrix assemble(const Ring& r, const std::vector<std::size_t>& heights, const std::vector<std::size_t>& widths,
                       const std::vector<std::vector<Matrix>>& blocks) {
    std::size_t nr = 0, nc = 0;
    for (auto h : heights) nr += h;
    for (auto w : widths) nc += w;
    Matrix m(r, nr, nc);
    std::size_t r0 = 0;
    for (std::size_t i = 0; i < heights.size(); ++i) {
        std::size_t c0 = 0;
        for (std::size_t j = 0; j < widths.size(); ++j) {
            const Matrix& b = blocks[i][j];
            if (b.rows() || b.cols()) {
                if (b.rows() != heights[i] || b.cols() != widths[j])
                    throw DimensionMismatch("assemble: block (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") is " + b.shape());
                m.set_block(r0, c0, b);
            }
            c0 += widths[j];
        }
        r0 += heights[i];
    }
    return m;
}

namespace detail {

/// Index of the "simplest" nonzero entry in column k among rows >= k.
inline std::size_t choose_pivot(const Matrix& a, std::size_t k) {
    std::size_t best = a.rows();
    std::size_t best_cost = 0;
    for (std::size_t i = k; i < a.rows(); ++i) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        std::size_t cost = x.terms().size() * 4;
        if (x.is_unit()) cost = 0;
        if (best == a.rows() || cost < best_cost) {
            best = i;
            best_cost = cost;
        }
        if (cost == 0) break;
    }
    return best;
}

inline void swap_rows(Matrix& a, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

inline Scalar must_divide(const Scalar& a, const Scalar& b) {
    auto q = divide_exact(a, b);
    if (!q) throw ConstructionFailed("inexact division " + a.to_string() + " / " + b.to_string());
    return *q;
}

}  // namespace detail

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Scalar determinant(const Matrix& m) {
    if (!m.square()) throw DimensionMismatch("determinant of non-square " + m.shape());
    const Ring& r = m.ring();
    std::size_t n = m.rows();
    if (n == 0) return Scalar::one(r);
    Matrix a = m;
    Scalar prev = Scalar::one(r);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = detail::choose_pivot(a, k);
        if (p == n) return Scalar::zero(r);
        if (p != k) {
            detail::swap_rows(a, p, k);
            negate = !negate;
        }
        const Scalar piv = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Scalar aik = a(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                Scalar v = piv * a(i, j) - aik * a(k, j);
                a(i, j) = prev.is_one() ? v : detail::must_divide(v, prev);
            }
            a(i, k) = Scalar::zero(r);
        }
        prev = piv;
    }
    return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

/// Inverse of a matrix with unit determinant, by fraction-free Gauss-Jordan
/// elimination on [m | 1]. Throws NotAUnit when m is not invertible.
inline Matrix inverse(const Matrix& m) {
    if (!m.square()) throw DimensionMismatch("inverse of non-square " + m.shape());
    const Ring& r = m.ring();
    std::size_t n = m.rows();
    if (n == 0) return m;
    Matrix a(r, n, 2 * n);
    a.set_block(0, 0, m);
    a.set_block(0, n, Matrix::identity(r, n));
    Scalar prev = Scalar::one(r);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = detail::choose_pivot(a, k);
        if (p == n) throw NotAUnit("matrix is singular");
        if (p != k) detail::swap_rows(a, p, k);
        const Scalar piv = a(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const Scalar aik = a(i, k);
            for (std::size_t j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                Scalar v = piv * a(i, j) - aik * a(k, j);
                a(i, j) = prev.is_one() ? v : detail::must_divide(v, prev);
            }
            a(i, k) = Scalar::zero(r);
        }
        prev = piv;
    }
    // The left block is now prev * 1 up to row order, prev = +-det.
    if (!prev.is_unit()) throw NotAUnit("determinant " + prev.to_string() + " is not a unit");
    Scalar inv = prev.inverse();
    Matrix out(r, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = inv * a(i, n + j);
    if (!(m * out).is_identity()) throw ConstructionFailed("inverse verification failed");
    return out;
}

/// Row-reduced echelon form over a field; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& a) {
    if (!a.ring().is_field()) throw UnsupportedRing("rref requires a field, got " + a.ring().to_string());
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
        std::size_t p = row;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        detail::swap_rows(a, p, row);
        Scalar inv = a(row, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j) a(row, j) = inv * a(row, j);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, c).is_zero()) continue;
            Scalar f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

inline std::size_t rank_over_field(const Matrix& m) {
    Matrix a = m;
    return rref(a).size();
}

/// Columns spanning the kernel of m over a field.
inline Matrix kernel_basis(const Matrix& m) {
    Matrix a = m;
    auto piv = rref(a);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_piv[c]) free.push_back(c);
    Matrix k(m.ring(), m.cols(), free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        k(free[f], f) = Scalar::one(m.ring());
        for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], f) = -a(i, free[f]);
    }
    return k;
}

}  // namespace wtorsion
