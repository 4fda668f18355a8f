// K1 of the supported rings through the determinant, and its reduction
// into Tate cohomology of the involution.

#pragma once

#include <string>
#include <utility>

#include "wtorsion/errors.hpp"
#include "wtorsion/matrix.hpp"
#include "wtorsion/ring.hpp"

namespace wtorsion {

/// A torsion value: a unit of the ring. The group law is written additively
/// and realised by multiplication of units.
class K1Element {
public:
    K1Element() : unit_(Scalar::one(Ring::integers())) {}
    explicit K1Element(Scalar unit) : unit_(std::move(unit)) {
        if (!unit_.is_unit()) throw NotAUnit(unit_.to_string() + " is not a unit of " + unit_.ring().to_string());
    }
    static K1Element trivial(const Ring& r) { return K1Element(Scalar::one(r)); }
    /// tau(-1) if the bit is set, else 0.
    static K1Element sign(const Ring& r, int bit) { return K1Element(Scalar(r, (bit & 1) ? -1 : 1)); }

    const Ring& ring() const { return unit_.ring(); }
    const Scalar& unit() const { return unit_; }
    bool is_trivial() const { return unit_.is_one(); }

    friend K1Element operator+(const K1Element& a, const K1Element& b) { return K1Element(a.unit_ * b.unit_); }
    friend K1Element operator-(const K1Element& a, const K1Element& b) { return K1Element(a.unit_ * b.unit_.inverse()); }
    K1Element operator-() const { return K1Element(unit_.inverse()); }
    K1Element& operator+=(const K1Element& o) { return *this = *this + o; }
    K1Element& operator-=(const K1Element& o) { return *this = *this - o; }
    /// k-fold sum, k may be negative.
    K1Element times(long long k) const {
        Scalar base = k < 0 ? unit_.inverse() : unit_;
        Scalar acc = Scalar::one(ring());
        for (long long i = 0; i < (k < 0 ? -k : k); ++i) acc *= base;
        return K1Element(acc);
    }

    bool operator==(const K1Element& o) const { return unit_ == o.unit_; }
    bool operator!=(const K1Element& o) const { return !(*this == o); }

    std::string to_string() const { return unit_.to_string(); }

private:
    Scalar unit_;
};

inline std::ostream& operator<<(std::ostream& os, const K1Element& x) { return os << "tau(" << x.to_string() << ")"; }

/// Determinant of an invertible square matrix as a K1 element.
inline K1Element det(const Matrix& m) {
    Scalar d = determinant(m);
    if (!d.is_unit())
        throw NotAUnit("determinant " + d.to_string() + " is not a unit of " + m.ring().to_string());
    return K1Element(d);
}

/// Involution on K1: tau(f)* = tau(f*).
inline K1Element k1_star(const K1Element& x) { return K1Element(x.unit().involution()); }

/// Sign term class as a bit: epsilon(a, b) = (a b) tau(-1).
inline int eps_bit(long long a, long long b) { return static_cast<int>(((a % 2) * (b % 2)) & 1); }

/// Image of x in Tate cohomology of Z/2 acting by (-1)^n times the involution.
struct TateClass {
    Ring ring;
    int parity = 0;  // n mod 2
    Scalar representative;

    bool is_trivial() const { return representative.is_one(); }
    bool operator==(const TateClass& o) const {
        return ring == o.ring && parity == o.parity && representative == o.representative;
    }
    bool operator!=(const TateClass& o) const { return !(*this == o); }
    std::string to_string() const {
        return "class(" + representative.to_string() + ") in H^" + (parity ? "odd" : "even");
    }
};

namespace detail {

/// Squarefree part of |v| for v != 0, by trial division.
inline BigInt squarefree_part(BigInt v) {
    if (v < 0) v = -v;
    BigInt out = 1;
    for (BigInt q = 2; q * q <= v; ++q) {
        int e = 0;
        while (v % q == 0) {
            v /= q;
            ++e;
        }
        if (e & 1) out *= q;
    }
    return out * v;
}

inline Coeff coeff_mod_squares(const Ring& r, const Coeff& c) {
    switch (r.base_kind()) {
        case BaseKind::integers:
            return c;  // units +-1, squares trivial
        case BaseKind::rationals: {
            BigInt s = squarefree_part(c.num * c.den);
            return Coeff(c.num < 0 ? BigInt(-s) : s);
        }
        case BaseKind::prime_field: {
            std::uint64_t p = r.characteristic();
            if (p == 2) return Coeff(1);
            BigInt P = p;
            auto is_residue = [&](const BigInt& x) { return boost::multiprecision::powm(x, (P - 1) / 2, P) == 1; };
            if (is_residue(c.num)) return Coeff(1);
            for (BigInt q = 2; q < P; ++q)
                if (!is_residue(q)) return Coeff(q);
            return Coeff(1);
        }
    }
    return c;
}

}  // namespace detail

/// Canonical class of x in ker(1 - (-1)^n *) / im(1 + (-1)^n *).
/// Units are c m with c a base unit and m a monomial. For even n the kernel
/// forces m = 1 and the image is {c^2}; for odd n the kernel forces c^2 = 1
/// and the image is {m^2}.
inline TateClass tate_reduce(const K1Element& x, long long n) {
    const Ring& r = x.ring();
    int parity = static_cast<int>(((n % 2) + 2) % 2);
    const Term& t = x.unit().terms().front();
    if (parity == 0) {
        for (int e : t.exp)
            if (e != 0)
                throw NotInKernel("tau(" + x.to_string() + ") is not fixed by the involution; no class in H^even");
        Coeff c = detail::coeff_mod_squares(r, t.coeff);
        return TateClass{r, 0, Scalar(r, c)};
    }
    Scalar c(r, t.coeff);
    if (!(c * c).is_one())
        throw NotInKernel("tau(" + x.to_string() + ") has x x* != 1; no class in H^odd");
    Exponents e = t.exp;
    for (auto& v : e) v = ((v % 2) + 2) % 2;
    return TateClass{r, 1, Scalar::monomial(r, std::move(e), t.coeff)};
}

/// Augmentation: every variable goes to 1. Lands in K1 of the base ring.
inline K1Element augment_sign(const K1Element& x) { return K1Element(evaluate_at_one(x.unit())); }

}  // namespace wtorsion
