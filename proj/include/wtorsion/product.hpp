// Products of symmetric complexes through even complexes: padding by a
// contractible complex and the rank-one middle complex, and the transport
// of torsion back to the original product.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "wtorsion/symmetric.hpp"

namespace wtorsion {

/// Every chain module has even rank.
inline bool is_even(const BasedComplex& c) {
    for (int r = c.lo(); r <= c.hi(); ++r)
        if (c.dim(r) % 2) return false;
    return true;
}

/// Rank-one complex in degree k with phi_0 = 1, of dimension 2k.
inline SymmetricComplex point_complex(const Ring& ring, int k) {
    BasedComplex c(ring, k, {1}, {});
    Structure phi(c, 2LL * k);
    phi.set(0, k, Matrix::identity(ring, 1));
    SymmetricComplex out({c, 0}, 2LL * k, phi);
    out.certificate = Certificate{std::nullopt, from_isomorphism(out.phi0())};
    return out;
}

namespace detail {

/// Contraction of a complex whose differentials match basis elements in
/// pairs with coefficients +-1: gamma = d^T, as a homotopy 0 ~ 1.
inline ChainHomotopy matching_contraction(const BasedComplex& c) {
    std::map<int, Matrix> g;
    for (int r = c.lo(); r < c.hi(); ++r) g[r] = c.d(r + 1).transpose();
    Contraction(c, g).verify();
    return ChainHomotopy(c, c, g);
}

/// Sum of elementary complexes R -1-> R from degree r + 1 to degree r, one
/// for each entry of `bottoms`.
inline BasedComplex elementary_sum(const Ring& ring, const std::vector<int>& bottoms) {
    BasedComplex out(ring);
    for (int r : bottoms) out = direct_sum(out, BasedComplex(ring, r, {1, 1}, {Matrix::identity(ring, 1)}));
    return out;
}

}  // namespace detail

/// x + E with E a contractible complex (zero structure) plus, when the
/// middle rank stays odd, the rank-one middle complex.
struct PaddedComplex {
    SymmetricComplex padded;
    SymmetricComplex extra;
};

/// Pads x to an even complex. Degrees below the middle are paired upwards,
/// degrees above downwards.
inline PaddedComplex even_out(const SymmetricComplex& x) {
    const Ring& ring = x.ring();
    const BasedComplex& c = x.complex();
    long long n = x.n();
    int lo = c.empty() ? 0 : std::min(c.lo(), 0), hi = c.empty() ? static_cast<int>(n) : std::max(c.hi(), static_cast<int>(n));
    std::map<int, int> odd;
    for (int r = lo; r <= hi; ++r) odd[r] = static_cast<int>(c.dim(r) % 2);
    std::vector<int> bottoms;
    int mid = parity(n) ? hi : static_cast<int>(n / 2);
    for (int r = lo; r < mid; ++r)
        if (odd[r]) {
            bottoms.push_back(r);
            odd[r + 1] ^= 1;
        }
    for (int r = hi; r > mid; --r)
        if (odd[r]) {
            bottoms.push_back(r - 1);
            odd[r - 1] ^= 1;
        }
    BasedComplex k = detail::elementary_sum(ring, bottoms);
    SymmetricComplex extra({k, 0}, n, Structure(k, n));
    if (!k.empty()) {
        BasedComplex dk = dual(k, n);
        HomotopyEquivalenceData e{ChainMap::zero(dk, k), ChainMap::zero(k, dk), detail::matching_contraction(dk),
                                  detail::matching_contraction(k)};
        extra.certificate = Certificate{std::nullopt, e};
    }
    if (odd[mid]) {
        if (parity(n)) throw ConstructionFailed("odd-dimensional complex with odd Euler characteristic");
        SymmetricComplex p;
        try {
            p = point_complex(ring, static_cast<int>(mid));
        } catch (const InvalidComplex&) {
            throw ConstructionFailed("the rank-one complex in degree " + std::to_string(mid) + " is not symmetric over " +
                                     ring.to_string() + "; even middle rank is needed");
        }
        extra = k.empty() ? p : direct_sum(extra, p);
    }
    if (extra.complex().empty()) return {x, extra};
    return {direct_sum(x, extra), extra};
}

/// Torsion of the image in the product ring of a factor's torsion.
inline K1Element embed_factor(const K1Element& t, const TensorRing& tr, bool left) {
    return K1Element(t.unit().embed(tr.ring, left ? tr.left_vars : tr.right_vars));
}

/// chi(y) tau(x) + chi(x) tau(y) in the product ring.
inline K1Element product_formula(const SymmetricComplex& x, const SymmetricComplex& y) {
    TensorRing tr = tensor_ring(x.ring(), y.ring());
    return embed_factor(tau_poincare(x).times(euler(y.complex())), tr, true) +
           embed_factor(tau_poincare(y).times(euler(x.complex())), tr, false);
}

/// Rearrangement (x + e) (x) (y + f) -> x(x)y + x(x)f + e(x)y + e(x)f, a
/// basis permutation and an isometry of the product structures.
inline ChainMap product_rearrangement(const BasedComplex& x, const BasedComplex& e, const BasedComplex& y,
                                      const BasedComplex& f, const BasedComplex& source, const BasedComplex& target) {
    const Ring& ring = source.ring();
    BasedComplex xe = direct_sum(x, e), yf = direct_sum(y, f);
    const BasedComplex* parts[4][2] = {{&x, &y}, {&x, &f}, {&e, &y}, {&e, &f}};
    std::map<int, Matrix> m;
    for (int p = source.lo(); p <= source.hi(); ++p) {
        Matrix a(ring, target.dim(p), source.dim(p));
        std::size_t base[4];
        std::size_t acc = 0;
        for (int q = 0; q < 4; ++q) {
            base[q] = acc;
            acc += tensor_dim(*parts[q][0], *parts[q][1], p);
        }
        for (const auto& [i, off] : tensor_offsets(xe, yf, p)) {
            int j = p - i;
            for (std::size_t u = 0; u < xe.dim(i); ++u)
                for (std::size_t v = 0; v < yf.dim(j); ++v) {
                    bool ue = u >= x.dim(i), ve = v >= y.dim(j);
                    int q = (ue ? 2 : 0) + (ve ? 1 : 0);
                    const BasedComplex& l = *parts[q][0];
                    const BasedComplex& rr = *parts[q][1];
                    std::size_t uu = ue ? u - x.dim(i) : u, vv = ve ? v - y.dim(j) : v;
                    std::size_t row = base[q];
                    for (const auto& [i2, off2] : tensor_offsets(l, rr, p))
                        if (i2 == i) row += off2;
                    a(row + uu * rr.dim(j) + vv, off + u * yf.dim(j) + v) = Scalar::one(ring);
                }
        }
        m[p] = a;
    }
    return ChainMap(source, target, m);
}

/// The product torsion computed directly, by the product formula, and
/// through the evening-out route.
struct ProductTorsion {
    K1Element direct;         // tau of x (x) y from its own certificate
    K1Element formula;        // chi(y) tau(x) + chi(x) tau(y)
    K1Element evened_direct;  // tau of x' (x) y' for the padded, even factors
    K1Element evened_formula;
    K1Element via_evening;  // tau of x (x) y transported back from x' (x) y'
};

/// tau(x (x) y) = tau(x' (x) y') + tau(rho) + (-)^N tau(rho)* - tau(x (x) f)
/// - tau(e (x) y) - tau(e (x) f) for x' = x + e, y' = y + f and the
/// rearrangement isometry rho; the even product enters through the formula.
inline ProductTorsion product_torsion(const SymmetricComplex& x, const SymmetricComplex& y) {
    SymmetricComplex xy = tensor_symmetric(x, y);
    PaddedComplex px = even_out(x), py = even_out(y);
    SymmetricComplex big = tensor_symmetric(px.padded, py.padded);
    ProductTorsion out{tau_poincare(xy), product_formula(x, y), tau_poincare(big),
                       product_formula(px.padded, py.padded), K1Element::trivial(xy.ring())};
    bool ex = !px.extra.complex().empty(), ey = !py.extra.complex().empty();
    SymmetricComplex sum = xy;
    K1Element others = K1Element::trivial(xy.ring());
    auto add = [&](const SymmetricComplex& a, const SymmetricComplex& b) {
        SymmetricComplex z = tensor_symmetric(a, b);
        sum = direct_sum(sum, z);
        others += tau_poincare(z);
    };
    if (ey) add(x, py.extra);
    if (ex) add(px.extra, y);
    if (ex && ey) add(px.extra, py.extra);
    TensorRing tr = tensor_ring(x.ring(), y.ring());
    BasedComplex cx = detail::embed_complex(x.complex(), tr, true), cy = detail::embed_complex(y.complex(), tr, false);
    BasedComplex ce = ex ? detail::embed_complex(px.extra.complex(), tr, true) : BasedComplex(tr.ring);
    BasedComplex cf = ey ? detail::embed_complex(py.extra.complex(), tr, false) : BasedComplex(tr.ring);
    ChainMap rho = product_rearrangement(cx, ce, cy, cf, big.complex(), sum.complex());
    SymmetricMorphism iso{big, sum, rho, Structure(sum.complex(), big.n() + 1), from_isomorphism(rho)};
    iso.verify();
    K1Element t = tau_equiv(rho, big.eta(), sum.eta(), Certificate{std::nullopt, *iso.equivalence});
    K1Element ts = k1_star(t);
    out.via_evening = out.evened_formula + t + (parity(big.n()) ? -ts : ts) - others;
    return out;
}

}  // namespace wtorsion
