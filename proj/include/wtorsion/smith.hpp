// Smith normal form over the Euclidean members of the tower: Z, Q, F_p and
// one-variable Laurent rings over a field.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wtorsion/errors.hpp"
#include "wtorsion/matrix.hpp"
#include "wtorsion/ring.hpp"

namespace wtorsion {

inline bool supports_smith(const Ring& r) {
    if (!r.is_laurent()) return true;
    return r.nvars() == 1 && r.base().is_field();
}

inline void require_smith(const Ring& r) {
    if (!supports_smith(r))
        throw UnsupportedRing("Smith normal form is unavailable over " + r.to_string());
}

namespace detail {

inline BigInt euclid_norm(const Scalar& a) {
    const Ring& r = a.ring();
    if (r.is_laurent()) return BigInt(a.max_exp(0) - a.min_exp(0));
    if (r.base_kind() == BaseKind::integers) {
        BigInt v = a.terms().front().coeff.num;
        return v < 0 ? BigInt(-v) : v;
    }
    return BigInt(0);
}

/// Polynomial division of a by b in one variable over a field, exponents
/// assumed nonnegative. Returns (q, r) with deg r < deg b.
inline std::pair<Scalar, Scalar> poly_divmod(const Scalar& a, const Scalar& b) {
    const Ring& r = a.ring();
    Scalar q = Scalar::zero(r), rem = a;
    const Term& lb = b.terms().back();
    int db = lb.exp[0];
    while (!rem.is_zero() && rem.terms().back().exp[0] >= db) {
        const Term& lr = rem.terms().back();
        Coeff c = *detail::div(r.spec(), lr.coeff, lb.coeff);
        Scalar m = Scalar::monomial(r, {lr.exp[0] - db}, c);
        q += m;
        rem -= m * b;
    }
    return {q, rem};
}

/// Euclidean division a = q b + r with norm(r) < norm(b) or r = 0.
inline std::pair<Scalar, Scalar> euclid_divmod(const Scalar& a, const Scalar& b) {
    const Ring& r = a.ring();
    if (a.is_zero()) return {Scalar::zero(r), Scalar::zero(r)};
    if (r.is_laurent()) {
        int ja = a.min_exp(0), jb = b.min_exp(0);
        Scalar ta = Scalar::monomial(r, {-ja}, Coeff(1)), tb = Scalar::monomial(r, {-jb}, Coeff(1));
        auto [q, rem] = poly_divmod(ta * a, tb * b);
        Scalar back = Scalar::monomial(r, {ja}, Coeff(1));
        return {Scalar::monomial(r, {ja - jb}, Coeff(1)) * q, back * rem};
    }
    if (r.base_kind() == BaseKind::integers) {
        const BigInt& x = a.terms().front().coeff.num;
        const BigInt& y = b.terms().front().coeff.num;
        BigInt q = x / y;  // truncation: |r| < |y|
        return {Scalar(r, Coeff(q)), Scalar(r, Coeff(BigInt(x - q * y)))};
    }
    return {*divide_exact(a, b), Scalar::zero(r)};
}

/// Associate of a with a canonical normalisation: positive over Z, 1 over
/// a field, monic with zero lowest exponent over a Laurent ring.
inline Scalar normalising_unit(const Scalar& a) {
    const Ring& r = a.ring();
    if (a.is_zero()) return Scalar::one(r);
    if (r.is_laurent()) {
        const Term& lt = a.terms().back();
        Coeff inv = *detail::div(r.spec(), Coeff(1), lt.coeff);
        return Scalar::monomial(r, {-a.min_exp(0)}, inv);
    }
    if (r.base_kind() == BaseKind::integers) return Scalar(r, a.terms().front().coeff.num < 0 ? -1 : 1);
    return a.inverse();
}

}  // namespace detail

/// m = left * diag * right, with left_inv * m * right_inv = diag.
struct SmithDecomposition {
    Matrix left, diag, right;
    Matrix left_inv, right_inv;
    std::size_t rank = 0;

    std::vector<Scalar> divisors() const {
        std::vector<Scalar> d;
        for (std::size_t i = 0; i < rank; ++i) d.push_back(diag(i, i));
        return d;
    }
};

namespace detail {

struct SmithWork {
    Matrix a, P, Pinv, Q, Qinv;

    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        swap_rows(a, i, j);
        swap_rows(P, i, j);
        for (std::size_t k = 0; k < Pinv.rows(); ++k) std::swap(Pinv(k, i), Pinv(k, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
        for (std::size_t k = 0; k < Q.rows(); ++k) std::swap(Q(k, i), Q(k, j));
        swap_rows(Qinv, i, j);
    }
    // row i += c row j
    void row_add(std::size_t i, std::size_t j, const Scalar& c) {
        if (c.is_zero()) return;
        for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) += c * a(j, k);
        for (std::size_t k = 0; k < P.cols(); ++k) P(i, k) += c * P(j, k);
        for (std::size_t k = 0; k < Pinv.rows(); ++k) Pinv(k, j) -= c * Pinv(k, i);
    }
    // col j += c col i
    void col_add(std::size_t j, std::size_t i, const Scalar& c) {
        if (c.is_zero()) return;
        for (std::size_t k = 0; k < a.rows(); ++k) a(k, j) += c * a(k, i);
        for (std::size_t k = 0; k < Q.rows(); ++k) Q(k, j) += c * Q(k, i);
        for (std::size_t k = 0; k < Qinv.cols(); ++k) Qinv(i, k) -= c * Qinv(j, k);
    }
    void row_scale(std::size_t i, const Scalar& u) {
        Scalar ui = u.inverse();
        for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = u * a(i, k);
        for (std::size_t k = 0; k < P.cols(); ++k) P(i, k) = u * P(i, k);
        for (std::size_t k = 0; k < Pinv.rows(); ++k) Pinv(k, i) = Pinv(k, i) * ui;
    }
};

}  // namespace detail

/// Smith normal form with transformation matrices; each diagonal entry
/// divides the next and is normalised (see normalising_unit).
inline SmithDecomposition smith_split(const Matrix& m) {
    const Ring& r = m.ring();
    require_smith(r);
    const std::size_t nr = m.rows(), nc = m.cols();
    detail::SmithWork w{m, Matrix::identity(r, nr), Matrix::identity(r, nr), Matrix::identity(r, nc),
                        Matrix::identity(r, nc)};
    std::size_t k = 0;
    for (; k < std::min(nr, nc); ++k) {
        while (true) {
            // smallest-norm nonzero entry of the trailing block
            std::size_t bi = nr, bj = nc;
            BigInt bn;
            for (std::size_t i = k; i < nr; ++i)
                for (std::size_t j = k; j < nc; ++j) {
                    if (w.a(i, j).is_zero()) continue;
                    BigInt nv = detail::euclid_norm(w.a(i, j));
                    if (bi == nr || nv < bn) {
                        bi = i;
                        bj = j;
                        bn = nv;
                    }
                }
            if (bi == nr) goto done;
            w.row_swap(k, bi);
            w.col_swap(k, bj);
            bool clean = true;
            for (std::size_t i = k + 1; i < nr; ++i) {
                if (w.a(i, k).is_zero()) continue;
                auto [q, rem] = detail::euclid_divmod(w.a(i, k), w.a(k, k));
                w.row_add(i, k, -q);
                if (!rem.is_zero()) clean = false;
            }
            for (std::size_t j = k + 1; j < nc; ++j) {
                if (w.a(k, j).is_zero()) continue;
                auto [q, rem] = detail::euclid_divmod(w.a(k, j), w.a(k, k));
                w.col_add(j, k, -q);
                if (!rem.is_zero()) clean = false;
            }
            if (!clean) continue;
            // divisibility of the remaining block by the pivot
            bool divides = true;
            for (std::size_t i = k + 1; i < nr && divides; ++i)
                for (std::size_t j = k + 1; j < nc; ++j)
                    if (!w.a(i, j).is_zero() && !divide_exact(w.a(i, j), w.a(k, k))) {
                        w.row_add(k, i, Scalar::one(r));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        w.row_scale(k, detail::normalising_unit(w.a(k, k)));
    }
done:
    SmithDecomposition s{w.Pinv, w.a, w.Qinv, w.P, w.Q, k};
    return s;
}

/// Solves a x = b for x, or returns nullopt when no solution exists.
inline std::optional<Matrix> solve(const SmithDecomposition& s, const Matrix& b) {
    const Ring& r = b.ring();
    Matrix bp = s.left_inv * b;
    Matrix y(r, s.diag.cols(), b.cols());
    for (std::size_t i = 0; i < bp.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (i < s.rank) {
                auto q = divide_exact(bp(i, j), s.diag(i, i));
                if (!q) return std::nullopt;
                y(i, j) = *q;
            } else if (!bp(i, j).is_zero()) {
                return std::nullopt;
            }
        }
    return s.right_inv * y;
}

inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) { return solve(smith_split(a), b); }

}  // namespace wtorsion
