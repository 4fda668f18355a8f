// Chain contractions and absolute torsion of contractible complexes,
// isomorphism families, short exact sequences and chain equivalences.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wtorsion/chains.hpp"
#include "wtorsion/errors.hpp"
#include "wtorsion/k1.hpp"
#include "wtorsion/smith.hpp"

namespace wtorsion {

/// Chain contraction: gamma(r): C_r -> C_{r+1} with d gamma + gamma d = 1.
class Contraction : public Family {
public:
    Contraction() = default;
    Contraction(BasedComplex c, const std::map<int, Matrix>& gamma, bool check = true) : Family(c, c, 1) {
        for (const auto& [r, m] : gamma) set(r, m);
        if (check) verify();
    }
    const BasedComplex& complex() const { return source_; }

    /// First degree where d gamma + gamma d != 1, if any.
    std::optional<int> failure() const {
        for (int r = source_.lo(); r <= source_.hi(); ++r) {
            Matrix s = source_.d(r + 1) * (*this)(r) + (*this)(r - 1) * source_.d(r);
            if (!s.is_identity()) return r;
        }
        return std::nullopt;
    }
    void verify() const {
        if (auto r = failure())
            throw ConstructionFailed("d gamma + gamma d != 1 at degree " + std::to_string(*r));
    }
};

/// Certificate that f: C -> D is a chain equivalence:
/// 1 - g f = d h + h d on C and 1 - f g = d k + k d on D.
struct HomotopyEquivalenceData {
    ChainMap f, g;
    ChainHomotopy h, k;

    std::optional<std::string> failure() const {
        const BasedComplex& c = f.source();
        const BasedComplex& d = f.target();
        if (!g.source().same_as(d) || !g.target().same_as(c)) return "g is not a map D -> C";
        for (int r = c.lo(); r <= c.hi(); ++r)
            if (Matrix::identity(c.ring(), c.dim(r)) - g(r) * f(r) != h.boundary(r))
                return "1 - g f != d h + h d at degree " + std::to_string(r);
        for (int r = d.lo(); r <= d.hi(); ++r)
            if (Matrix::identity(d.ring(), d.dim(r)) - f(r) * g(r) != k.boundary(r))
                return "1 - f g != d k + k d at degree " + std::to_string(r);
        return std::nullopt;
    }
    void verify() const {
        if (auto why = failure()) throw InvalidComplex("homotopy equivalence data: " + *why);
    }

    /// Data for g: D -> C.
    HomotopyEquivalenceData reversed() const { return {g, f, k, h}; }

    HomotopyEquivalenceData convert(const Ring& r) const {
        return {f.convert(r), g.convert(r), h.convert(r), k.convert(r)};
    }
};

/// Data for the composite (second after first).
inline HomotopyEquivalenceData compose(const HomotopyEquivalenceData& second, const HomotopyEquivalenceData& first) {
    const ChainMap& f1 = first.f;
    const ChainMap& g1 = first.g;
    const ChainMap& f2 = second.f;
    const ChainMap& g2 = second.g;
    ChainMap f = compose(f2, f1), g = compose(g1, g2);
    std::map<int, Matrix> h, k;
    const BasedComplex& c = f1.source();
    const BasedComplex& e = f2.target();
    for (int r = c.lo(); r <= c.hi(); ++r) h[r] = first.h(r) + g1(r + 1) * second.h(r) * f1(r);
    for (int r = e.lo(); r <= e.hi(); ++r) k[r] = second.k(r) + f2(r + 1) * first.k(r) * g2(r);
    return {f, g, ChainHomotopy(c, c, h), ChainHomotopy(e, e, k)};
}

/// Data for u f, for a unit scalar u.
inline HomotopyEquivalenceData scale_data(const HomotopyEquivalenceData& e, const Scalar& u) {
    Scalar ui = u.inverse();
    std::map<int, Matrix> f, g;
    for (int r = e.f.source().lo(); r <= e.f.source().hi(); ++r) f[r] = u * e.f(r);
    for (int r = e.g.source().lo(); r <= e.g.source().hi(); ++r) g[r] = ui * e.g(r);
    return {ChainMap(e.f.source(), e.f.target(), f, false), ChainMap(e.g.source(), e.g.target(), g, false), e.h, e.k};
}

/// Data for the shifted map S^k f: S^k C -> S^k D.
inline HomotopyEquivalenceData shift_data(const HomotopyEquivalenceData& e, int k) {
    BasedComplex c = shift(e.f.source(), k), d = shift(e.f.target(), k);
    auto moved = [k](const Family& x, int lo, int hi) {
        std::map<int, Matrix> m;
        for (int r = lo - 1; r <= hi; ++r) m[r + k] = x(r);
        return m;
    };
    const BasedComplex& c0 = e.f.source();
    const BasedComplex& d0 = e.f.target();
    return {ChainMap(c, d, moved(e.f, c0.lo(), c0.hi()), false), ChainMap(d, c, moved(e.g, d0.lo(), d0.hi()), false),
            ChainHomotopy(c, c, moved(e.h, c0.lo(), c0.hi())), ChainHomotopy(d, d, moved(e.k, d0.lo(), d0.hi()))};
}

/// Data for the dual map f*: D^{n-*} -> C^{n-*}. The homotopies dualize
/// with sign (-)^{q+1} in degree q.
inline HomotopyEquivalenceData dual_data(const HomotopyEquivalenceData& e, long long n) {
    ChainMap fs = dual_map(e.f, n), gs = dual_map(e.g, n);
    auto dualize = [n](const ChainHomotopy& x, const BasedComplex& dc) {
        std::map<int, Matrix> m;
        for (int q = dc.lo() - 1; q <= dc.hi(); ++q)
            m[q] = x(static_cast<int>(n) - q - 1).star().signed_by(parity(q + 1));
        return ChainHomotopy(dc, dc, m);
    };
    return {fs, gs, dualize(e.k, fs.source()), dualize(e.h, fs.target())};
}

/// Equivalence data for a chain isomorphism.
inline HomotopyEquivalenceData from_isomorphism(const ChainMap& f) {
    std::map<int, Matrix> inv;
    for (int r = f.source().lo(); r <= f.source().hi(); ++r) {
        Matrix m = f(r);
        if (!m.square()) throw NotAUnit("component at degree " + std::to_string(r) + " is not square");
        inv[r] = inverse(m);
    }
    ChainMap g(f.target(), f.source(), inv);
    return {f, g, ChainHomotopy::zero(f.source(), f.source()), ChainHomotopy::zero(f.target(), f.target())};
}

inline bool is_degreewise_invertible(const ChainMap& f) {
    auto [lo, hi] = BasedComplex::span({&f.source(), &f.target()});
    for (int r = lo; r <= hi; ++r) {
        Matrix m = f(r);
        if (!m.square()) return false;
        if (m.rows() && !determinant(m).is_unit()) return false;
    }
    return true;
}

/// Contraction of a contractible complex, over rings with Smith normal form.
inline Contraction find_contraction(const BasedComplex& c) {
    require_smith(c.ring());
    const Ring& ring = c.ring();
    std::map<int, Matrix> gamma;
    Matrix prev = Matrix(ring, c.dim(c.lo()), c.dim(c.lo() - 1));
    for (int r = c.lo(); r <= c.hi(); ++r) {
        Matrix rhs = Matrix::identity(ring, c.dim(r)) - prev * c.d(r);
        Matrix dn = c.d(r + 1);
        auto s = smith_split(dn);
        auto x = solve(s, rhs);
        if (!x) {
            auto sr = smith_split(c.d(r));
            long long free_rank = static_cast<long long>(c.dim(r)) - static_cast<long long>(sr.rank) -
                                  static_cast<long long>(s.rank);
            std::string divs;
            for (const auto& e : s.divisors())
                if (!e.is_unit()) divs += (divs.empty() ? "" : ", ") + e.to_string();
            throw NotContractible("homology in degree " + std::to_string(r) + " is nonzero (free rank " +
                                  std::to_string(free_rank) + ", elementary divisors [" + divs + "])");
        }
        gamma[r] = *x;
        prev = *x;
    }
    return Contraction(c, gamma);
}

/// Contraction of the cone of a chain isomorphism: [[0,0],[(-)^r f^{-1}, 0]].
inline Contraction cone_contraction_of_isomorphism(const ChainMap& f) {
    BasedComplex cn = cone(f);
    const BasedComplex& c = f.source();
    const BasedComplex& d = f.target();
    std::map<int, Matrix> gamma;
    for (int r = cn.lo(); r <= cn.hi(); ++r) {
        Matrix g = assemble(cn.ring(), {d.dim(r + 1), c.dim(r)}, {d.dim(r), c.dim(r - 1)},
                            {{Matrix(), Matrix()}, {inverse(f(r)).signed_by(parity(r)), Matrix()}});
        gamma[r] = g;
    }
    return Contraction(cn, gamma);
}

/// Contraction of the cone of f built from equivalence data. With
/// X = f h - k f and k' = k + X g, gamma_r = [[k', (-)^r X h], [(-)^r g, h]].
inline Contraction cone_contraction_from_data(const HomotopyEquivalenceData& e) {
    if (auto why = e.failure()) throw ConstructionFailed("equivalence data rejected: " + *why);
    const ChainMap& f = e.f;
    const BasedComplex& c = f.source();
    const BasedComplex& d = f.target();
    BasedComplex cn = cone(f);
    const Ring& ring = cn.ring();
    auto X = [&](int r) { return f(r + 1) * e.h(r) - e.k(r) * f(r); };
    std::map<int, Matrix> gamma;
    for (int r = cn.lo(); r <= cn.hi(); ++r) {
        Matrix kp = e.k(r) + X(r) * e.g(r);
        Matrix b = (X(r) * e.h(r - 1)).signed_by(parity(r));
        Matrix g = e.g(r).signed_by(parity(r));
        gamma[r] = assemble(ring, {d.dim(r + 1), c.dim(r)}, {d.dim(r), c.dim(r - 1)}, {{kp, b}, {g, e.h(r - 1)}});
    }
    Contraction out(cn, gamma, false);
    if (auto bad = out.failure())
        throw ConstructionFailed("cone contraction from equivalence data fails at degree " + std::to_string(*bad));
    return out;
}

/// Equivalence data for f read off a contraction of its cone.
inline HomotopyEquivalenceData equivalence_from_cone_contraction(const ChainMap& f, const Contraction& gamma) {
    const BasedComplex& c = f.source();
    const BasedComplex& d = f.target();
    std::map<int, Matrix> g, h, k;
    for (int r = d.lo(); r <= d.hi(); ++r) {
        Matrix gr = gamma(r);
        g[r] = gr.block(d.dim(r + 1), 0, c.dim(r), d.dim(r)).signed_by(parity(r));
        k[r] = gr.block(0, 0, d.dim(r + 1), d.dim(r));
    }
    for (int r = c.lo(); r <= c.hi(); ++r) {
        Matrix gr = gamma(r + 1);
        h[r] = gr.block(d.dim(r + 2), d.dim(r + 1), c.dim(r + 1), c.dim(r));
    }
    HomotopyEquivalenceData e{f, ChainMap(d, c, g), ChainHomotopy(c, c, h), ChainHomotopy(d, d, k)};
    e.verify();
    return e;
}

/// Contraction of an extension B = [[d_A, e], [0, d_Q]] (A a subcomplex
/// spanned by the first basis vectors, Q the quotient) from contractions of
/// A and Q: [[gA, -gA e gQ], [0, gQ]].
inline Contraction extension_contraction(const BasedComplex& b, const Contraction& ga, const Contraction& gq) {
    const BasedComplex& a = ga.complex();
    const BasedComplex& q = gq.complex();
    std::map<int, Matrix> gamma;
    for (int r = b.lo(); r <= b.hi(); ++r) {
        if (b.dim(r) != a.dim(r) + q.dim(r)) throw DimensionMismatch("extension ranks do not add up");
        Matrix e = b.d(r + 1).block(0, a.dim(r + 1), a.dim(r), q.dim(r + 1));
        Matrix corner = -(ga(r) * e * gq(r));
        gamma[r] = assemble(b.ring(), {a.dim(r + 1), q.dim(r + 1)}, {a.dim(r), q.dim(r)},
                            {{ga(r), corner}, {Matrix(), gq(r)}});
    }
    Contraction out(b, gamma, false);
    if (auto bad = out.failure())
        throw ConstructionFailed("extension contraction fails at degree " + std::to_string(*bad));
    return out;
}

/// The isomorphism d + gamma: C_odd -> C_even, odd degrees ascending to even
/// degrees ascending.
inline Matrix d_plus_gamma(const Contraction& g) {
    const BasedComplex& c = g.complex();
    std::vector<int> odd, even;
    for (int r = c.lo(); r <= c.hi(); ++r) (parity(r) ? odd : even).push_back(r);
    std::vector<std::size_t> heights, widths;
    for (int r : even) heights.push_back(c.dim(r));
    for (int r : odd) widths.push_back(c.dim(r));
    std::vector<std::vector<Matrix>> blocks(even.size(), std::vector<Matrix>(odd.size()));
    for (std::size_t i = 0; i < even.size(); ++i)
        for (std::size_t j = 0; j < odd.size(); ++j) {
            if (odd[j] == even[i] + 1) blocks[i][j] = c.d(odd[j]);
            if (odd[j] == even[i] - 1) blocks[i][j] = g(odd[j]);
        }
    Matrix m = assemble(c.ring(), heights, widths, blocks);
    if (!m.square()) throw NotContractible("Euler characteristic " + std::to_string(euler(c)) + " != 0");
    return m;
}

/// tau(C) = tau(d + gamma), without the sign of the complex.
inline K1Element tau_unsigned(const Contraction& g) { return det(d_plus_gamma(g)); }

/// tau^NEW(C) = tau(d + gamma) + eta_C.
inline K1Element tau_contractible(const SignedComplex& c, const std::optional<Contraction>& gamma = std::nullopt) {
    Contraction g = gamma ? *gamma : find_contraction(c.complex);
    if (!g.complex().same_as(c.complex)) throw DimensionMismatch("contraction is for a different complex");
    return tau_unsigned(g) + K1Element::sign(c.ring(), c.eta);
}

/// sum (-)^r tau(f_r) - eta_C + eta_D for degreewise isomorphisms.
inline K1Element tau_iso_family(const Family& f, int eta_source, int eta_target) {
    const Ring& ring = f.ring();
    auto [lo, hi] = BasedComplex::span({&f.source(), &f.target()});
    K1Element t = K1Element::trivial(ring);
    for (int r = lo; r <= hi; ++r) {
        Matrix m = f(r);
        if (!m.square())
            throw NotAUnit("component at degree " + std::to_string(r) + " is " + m.shape() + ", not invertible");
        if (m.rows() == 0) continue;
        K1Element x = det(m);
        t += parity(r) ? -x : x;
    }
    return t + K1Element::sign(ring, eta_source ^ eta_target);
}

/// Torsion of the short exact sequence 0 -> C -i-> C'' -j-> C' -> 0 using
/// splittings k: C'_r -> C''_r.
inline K1Element tau_ses(const ChainMap& i, const ChainMap& j, const Family& k, int eta_c, int eta_cpp, int eta_cp) {
    const BasedComplex& c = i.source();
    const BasedComplex& cpp = i.target();
    const BasedComplex& cp = j.target();
    BasedComplex sum = direct_sum(c, cp);
    Family ik(sum, cpp, 0);
    auto [lo, hi] = BasedComplex::span({&c, &cpp, &cp});
    for (int r = lo; r <= hi; ++r) {
        if (!(j(r) * k(r)).is_identity() && cp.dim(r))
            throw InvalidComplex("splitting fails j k = 1 at degree " + std::to_string(r));
        if (!(j(r) * i(r)).is_zero()) throw InvalidComplex("j i != 0 at degree " + std::to_string(r));
        Matrix m = assemble(c.ring(), {cpp.dim(r)}, {c.dim(r), cp.dim(r)}, {{i(r), k(r)}});
        ik.set(r, m);
    }
    return tau_iso_family(ik, direct_sum_eta(c, eta_c, cp, eta_cp), eta_cpp);
}

/// Ways to certify that a map is a chain equivalence.
struct Certificate {
    std::optional<Contraction> gamma;               // contraction of the cone
    std::optional<HomotopyEquivalenceData> data;   // homotopy inverse
};

/// Contraction of cone(f) from a certificate, the inverse of a chain
/// isomorphism, or Smith normal form, in that order.
inline Contraction cone_contraction(const ChainMap& f, const Certificate& cert = {}) {
    if (cert.gamma) {
        if (!cert.gamma->complex().same_as(cone(f)))
            throw DimensionMismatch("certificate contraction is not for the cone of this map");
        cert.gamma->verify();
        return *cert.gamma;
    }
    if (cert.data) {
        cert.data->verify();
        return cone_contraction_from_data(*cert.data);
    }
    if (is_degreewise_invertible(f)) return cone_contraction_of_isomorphism(f);
    if (!supports_smith(f.ring()))
        throw UnsupportedRing("a certificate is required to prove equivalence over " + f.ring().to_string());
    return find_contraction(cone(f));
}

/// tau^NEW(f) = tau^NEW(C(f)) with the signed cone.
inline K1Element tau_equiv(const ChainMap& f, int eta_source, int eta_target, const Certificate& cert = {}) {
    SignedComplex cn = cone(f, eta_source, eta_target);
    return tau_contractible(cn, cone_contraction(f, cert));
}

/// tau(C(f)) - beta(D, SC) - eps(D_odd, chi(C)) + eta_D - eta_C.
inline K1Element tau_equiv_unravelled(const ChainMap& f, int eta_source, int eta_target, const Certificate& cert = {}) {
    const BasedComplex& c = f.source();
    const BasedComplex& d = f.target();
    K1Element t = tau_unsigned(cone_contraction(f, cert));
    int bits = beta_bit(d, shift(c, 1)) ^ eps_bit(odd_rank(d), euler(c)) ^ eta_source ^ eta_target;
    return t + K1Element::sign(c.ring(), bits);
}

}  // namespace wtorsion
