// Seeded generators of symmetric complexes and self-equivalences built from
// a pool of base examples by stabilization, basis change and homotopy of
// the structure maps.

#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "wtorsion/random.hpp"
#include "wtorsion/symmetric.hpp"

namespace wtorsion {

/// Boundary of a sigma-type family: the right-hand side of the morphism
/// relation, an (n)-dimensional structure on the same complex.
inline Structure sigma_boundary(const Structure& sg, long long n) {
    const BasedComplex& c = sg.complex();
    Structure out(c, n);
    int top = static_cast<int>(sg.levels());
    for (int s = 0; s <= top; ++s)
        for (int r = c.lo(); r <= c.hi(); ++r) {
            int q = static_cast<int>(n) - r + s;
            Matrix m = c.d(r + 1) * sg(s, r + 1) + (sg(s, r) * c.d(q + 1).star()).signed_by(parity(r));
            if (s > 0) m = m + (sg(s - 1, r) + sg.flipped(s - 1, r).signed_by(parity(s))).signed_by(parity(n + s));
            out.set(s, r, m);
        }
    return out;
}

inline Structure add(const Structure& a, const Structure& b) {
    Structure out(a.complex(), a.dimension());
    int top = static_cast<int>(std::max(a.levels(), b.levels()));
    for (int s = 0; s < top; ++s)
        for (int r = a.complex().lo(); r <= a.complex().hi(); ++r) out.set(s, r, a(s, r) + b(s, r));
    return out;
}

inline Structure random_sigma(Random& rng, const BasedComplex& c, long long n) {
    Structure sg(c, n + 1);
    for (int s = 0; s <= n; ++s)
        for (int r = c.lo(); r <= c.hi(); ++r)
            if (rng.coin()) sg.set(s, r, rng.matrix(c.ring(), c.dim(r), c.dim(static_cast<int>(n) + 1 - r + s), 1));
    return sg;
}

/// Basis change by a degreewise automorphism a: (a C a^-1, a phi a*).
struct TwistedComplex {
    SymmetricComplex complex;
    SymmetricMorphism map;  // from the input to the twisted complex
};

inline TwistedComplex twist_symmetric(Random& rng, const SymmetricComplex& x) {
    const BasedComplex& c = x.complex();
    Twist t = random_twist(rng, c);
    BasedComplex c2 = apply_twist(c, t);
    auto at = [&](int r) { return t.a.count(r) ? t.a.at(r) : Matrix::identity(c.ring(), 0); };
    long long n = x.n();
    Structure p(c2, n);
    for (int s = 0; s < static_cast<int>(x.phi().levels()); ++s)
        for (int r = c2.lo(); r <= c2.hi(); ++r) p.set(s, r, at(r) * x.phi(s, r) * at(static_cast<int>(n) - r + s).star());
    SymmetricComplex y({c2, x.eta()}, n, p);
    ChainMap a(c, c2, t.a, false);
    HomotopyEquivalenceData e = from_isomorphism(a);
    // y.phi_0 = a phi_0 a*
    if (x.certificate) y.certificate = Certificate{std::nullopt, compose(e, compose(phi0_data(x), dual_data(e, n)))};
    return {y, SymmetricMorphism{x, y, a, Structure(c2, n + 1), e}};
}

/// x + K for a random contractible K with zero structure, then a basis
/// change and a homotopy phi -> phi + d sigma. Poincare when x is.
inline SymmetricComplex random_poincare(Random& rng, const SymmetricComplex& x) {
    long long n = x.n();
    int lo = x.complex().empty() ? 0 : std::min(x.complex().lo(), 0);
    auto k = random_contractible(rng, x.ring(), lo, static_cast<int>(n) + 2 - lo, 2);
    SymmetricComplex kk({k.complex, rng.uniform(0, 1)}, n, Structure(k.complex, n));
    SymmetricComplex sum = direct_sum(x, kk);
    TwistedComplex tw = twist_symmetric(rng, sum);
    const BasedComplex& c = tw.complex.complex();
    Structure rho = random_sigma(rng, c, n);
    SymmetricComplex out(tw.complex.signed_complex(), n, add(tw.complex.phi(), sigma_boundary(rho, n)));
    return out;
}

/// Isometry (f, sigma) of y to itself with f = +-1 on two complementary
/// pieces after a basis change, and a homotopy that makes sigma nonzero.
inline SymmetricMorphism random_self_equivalence(Random& rng, const SymmetricComplex& base) {
    long long n = base.n();
    auto k = random_contractible(rng, base.ring(), 0, static_cast<int>(n) + 1, 2);
    SymmetricComplex kk({k.complex, 0}, n, Structure(k.complex, n));
    SymmetricComplex x = direct_sum(base, kk);
    int kind = rng.uniform(0, 3);
    std::map<int, Matrix> fm;
    for (int r = x.complex().lo(); r <= x.complex().hi(); ++r) {
        std::size_t nb = base.complex().dim(r), nk = k.complex.dim(r);
        fm[r] = direct_sum(Matrix::identity(base.ring(), nb).signed_by(kind == 1 || kind == 3),
                           Matrix::identity(base.ring(), nk).signed_by(kind == 2 || kind == 3));
    }
    TwistedComplex tw = twist_symmetric(rng, x);
    const SymmetricComplex& y = tw.complex;
    const BasedComplex& c = y.complex();
    const ChainMap& a = tw.map.f;
    const HomotopyEquivalenceData& ae = *tw.map.equivalence;
    std::map<int, Matrix> f2;
    for (int r = c.lo(); r <= c.hi(); ++r) f2[r] = a(r) * fm[r] * ae.g(r);
    ChainMap f(c, c, f2);
    Structure rho = random_sigma(rng, c, n);
    Structure phi = add(y.phi(), sigma_boundary(rho, n));
    Structure sg(c, n + 1);
    for (int s = 0; s < static_cast<int>(rho.levels()); ++s)
        for (int r = c.lo(); r <= c.hi(); ++r)
            sg.set(s, r, rho(s, r) - f(r) * rho(s, r) * f(static_cast<int>(n) + 1 - r + s).star());
    SymmetricComplex z(y.signed_complex(), n, phi);
    SymmetricMorphism m{z, z, f, sg, from_isomorphism(f)};
    m.verify();
    return m;
}

}  // namespace wtorsion
