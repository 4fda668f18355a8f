// Signature, Euler semicharacteristic and de Rham invariant of symmetric
// complexes over the integers, the sign term they predict, and the Tate
// class of the absolute torsion.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wtorsion/symmetric.hpp"

namespace wtorsion {

inline long long mod_floor(long long a, long long m) { return ((a % m) + m) % m; }

namespace detail {

inline void require_integral(const Ring& r, const char* what) {
    if (r != Ring::integers() && r != Ring::rationals())
        throw UnsupportedRing(std::string(what) + " needs a complex over Z or Q, got " + r.to_string());
}

inline int rational_sign(const Scalar& x) {
    if (x.is_zero()) return 0;
    return x.terms().front().coeff.num > 0 ? 1 : -1;
}

}  // namespace detail

/// Signature of a symmetric matrix over Q by Lagrange reduction. A zero
/// diagonal with a nonzero entry b = m(i, j) splits off a hyperbolic plane.
inline long long rational_signature(Matrix m) {
    const Ring& q = m.ring();
    long long sig = 0;
    while (m.rows() > 0) {
        std::size_t n = m.rows();
        std::size_t piv = n;
        for (std::size_t i = 0; i < n && piv == n; ++i)
            if (!m(i, i).is_zero()) piv = i;
        std::vector<std::size_t> drop;
        Matrix next(q, 0, 0);
        if (piv < n) {
            Scalar a = m(piv, piv);
            sig += detail::rational_sign(a);
            Scalar ai = a.inverse();
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) m(k, l) = m(k, l) - m(k, piv) * m(piv, l) * ai;
            drop = {piv};
        } else {
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!m(i, j).is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;
            Scalar bi = m(pi, pj).inverse();
            Matrix old = m;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    m(k, l) = old(k, l) - (old(k, pj) * old(pi, l) + old(k, pi) * old(pj, l)) * bi;
            drop = {pi, pj};
        }
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < n; ++k)
            if (std::find(drop.begin(), drop.end(), k) == drop.end()) keep.push_back(k);
        next = Matrix(q, keep.size(), keep.size());
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b) next(a, b) = m(keep[a], keep[b]);
        m = next;
    }
    return sig;
}

/// Signature of the form x, y -> x^T phi_0 y on middle-dimensional rational
/// cocycles; coboundaries and torsion lie in its radical.
inline long long signature(const SymmetricComplex& x) {
    detail::require_integral(x.ring(), "signature");
    if (mod_floor(x.n(), 4) != 0) throw DimensionMismatch("signature needs n = 0 mod 4, got n = " + std::to_string(x.n()));
    const Ring q = Ring::rationals();
    int mid = static_cast<int>(x.n() / 2);
    const BasedComplex& c = x.complex();
    if (c.dim(mid) == 0) return 0;
    Matrix z = kernel_basis(c.d(mid + 1).convert(q).transpose());
    Matrix f = x.phi(0, mid).convert(q);
    Matrix m = z.transpose() * f * z;
    Matrix sym = Scalar(q, Coeff(1, 2)) * (m + m.transpose());
    return rational_signature(sym);
}

/// Homology rank over a field: dim - rank d_r - rank d_{r+1}.
inline long long homology_rank(const BasedComplex& c, int r, const Ring& field) {
    long long out = static_cast<long long>(c.dim(r));
    out -= static_cast<long long>(rank_over_field(c.d(r).convert(field)));
    out -= static_cast<long long>(rank_over_field(c.d(r + 1).convert(field)));
    return out;
}

/// sum_{i=0}^{k-1} (-1)^i rank H_i(C; F) for n = 2k - 1.
inline long long semicharacteristic(const BasedComplex& c, const Ring& field, long long n) {
    detail::require_integral(c.ring(), "semicharacteristic");
    if (field != Ring::rationals() && field != Ring::prime_field(2))
        throw UnsupportedRing("semicharacteristic is taken over Q or F_2, got " + field.to_string());
    if (mod_floor(n, 2) != 1) throw DimensionMismatch("semicharacteristic needs odd n, got n = " + std::to_string(n));
    long long k = (n + 1) / 2, out = 0;
    for (long long i = 0; i < k; ++i) out += (i % 2 ? -1 : 1) * homology_rank(c, static_cast<int>(i), field);
    return out;
}

/// chi_1/2(C; F_2) - chi_1/2(C; Q) mod 2, for n = 1 mod 4.
inline int de_rham(const SymmetricComplex& x) {
    if (mod_floor(x.n(), 4) != 1) throw DimensionMismatch("de Rham invariant needs n = 1 mod 4, got n = " + std::to_string(x.n()));
    const BasedComplex& c = x.complex();
    return parity(semicharacteristic(c, Ring::prime_field(2), x.n()) - semicharacteristic(c, Ring::rationals(), x.n()));
}

/// Sign term predicted by the signature and Euler characteristic:
/// n = 4k: ((sigma - (1 + 2k) chi) / 2) tau(-1); n = 4k + 1: chi_1/2(C; Q) tau(-1); otherwise 0.
inline K1Element predicted_sign_term(const SymmetricComplex& x) {
    detail::require_integral(x.ring(), "predicted sign term");
    const Ring z = Ring::integers();
    long long n = x.n();
    switch (mod_floor(n, 4)) {
        case 0: {
            long long k = n / 4;
            long long v = signature(x) - (1 + 2 * k) * euler(x.complex());
            if (v % 2) throw NonIntegralHalf("sigma - (1 + 2k) chi = " + std::to_string(v) + " is odd");
            return K1Element::sign(z, parity(v / 2));
        }
        case 1:
            return K1Element::sign(z, parity(semicharacteristic(x.complex(), Ring::rationals(), n)));
        default:
            return K1Element::trivial(z);
    }
}

/// tau - (-1)^n tau* - (n(n+1)/2) eps(chi, chi); trivial for Poincare complexes.
inline K1Element duality_defect(const K1Element& tau, const BasedComplex& c, long long n) {
    K1Element star = k1_star(tau);
    K1Element expect = (parity(n) ? -star : star) + K1Element::sign(tau.ring(), parity(n * (n + 1) / 2) & eps_bit(euler(c), euler(c)));
    return tau - expect;
}

/// Class of tau_poincare in the Tate cohomology of degree n.
inline TateClass tate_torsion(const SymmetricComplex& x) {
    K1Element t = tau_poincare(x);
    K1Element defect = duality_defect(t, x.complex(), x.n());
    if (!defect.is_trivial())
        throw NotInKernel("tau(" + t.to_string() + ") fails the duality identity by tau(" + defect.to_string() + ")");
    return tate_reduce(t, x.n());
}

/// Base change along the augmentation of a Laurent ring (every variable to 1).
inline SymmetricComplex augment(const SymmetricComplex& x) {
    const Ring& r = x.ring();
    if (!r.is_laurent()) return x;
    Ring b = r.base();
    auto ev = [&](const Matrix& m) { return m.map([](const Scalar& s) { return evaluate_at_one(s); }, b); };
    const BasedComplex& c = x.complex();
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        dims.push_back(c.dim(i));
        if (i > c.lo()) diffs.push_back(ev(c.d(i)));
    }
    BasedComplex ca(b, c.lo(), dims, diffs);
    return SymmetricComplex({ca, x.eta()}, x.n(), x.phi().map(ca, ev));
}

}  // namespace wtorsion
