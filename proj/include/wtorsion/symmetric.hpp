// Symmetric (Poincare) complexes: structure maps, relation checking,
// absolute torsion, boundary, mapping torus, products and the classical
// invariants that identify the sign term.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wtorsion/chains.hpp"
#include "wtorsion/smith.hpp"
#include "wtorsion/torsion.hpp"

namespace wtorsion {

/// Structure maps indexed [s][r]; the component at (s, r) maps the dual
/// module of degree (m - r + s) to degree r, where m is the formal
/// dimension of the relation they satisfy (n for phi, n + 1 for sigma).
class Structure {
public:
    Structure() = default;
    Structure(BasedComplex c, long long m) : c_(std::move(c)), m_(m) {}

    const BasedComplex& complex() const { return c_; }
    long long dimension() const { return m_; }
    std::size_t levels() const { return maps_.size(); }

    int source_degree(int s, int r) const { return static_cast<int>(m_) - r + s; }

    Matrix operator()(int s, int r) const {
        if (s >= 0 && static_cast<std::size_t>(s) < maps_.size()) {
            auto it = maps_[static_cast<std::size_t>(s)].find(r);
            if (it != maps_[static_cast<std::size_t>(s)].end()) return it->second;
        }
        return Matrix(c_.ring(), c_.dim(r), c_.dim(source_degree(s, r)));
    }
    void set(int s, int r, Matrix m) {
        if (s < 0) throw InvalidInput("negative structure level");
        std::size_t rows = c_.dim(r), cols = c_.dim(source_degree(s, r));
        if (m.rows() != rows || m.cols() != cols)
            throw DimensionMismatch("structure map at s=" + std::to_string(s) + ", r=" + std::to_string(r) +
                                    " should be " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                                    m.shape());
        if (rows == 0 || cols == 0) return;
        if (m.ring() != c_.ring()) throw IncompatibleRings("structure map over the wrong ring");
        if (maps_.size() <= static_cast<std::size_t>(s)) maps_.resize(static_cast<std::size_t>(s) + 1);
        if (m.is_zero())
            maps_[static_cast<std::size_t>(s)].erase(r);
        else
            maps_[static_cast<std::size_t>(s)][r] = std::move(m);
        while (!maps_.empty() && maps_.back().empty()) maps_.pop_back();
    }

    /// T applied at level s, component into degree r.
    Matrix flipped(int s, int r) const {
        int q = static_cast<int>(m_) + s - r;
        return t_flip((*this)(s, q), r, q);
    }

    Structure negated() const {
        Structure out(c_, m_);
        for (std::size_t s = 0; s < maps_.size(); ++s)
            for (const auto& [r, m] : maps_[s]) out.set(static_cast<int>(s), r, -m);
        return out;
    }
    Structure convert(const BasedComplex& target) const {
        Structure out(target, m_);
        for (std::size_t s = 0; s < maps_.size(); ++s)
            for (const auto& [r, m] : maps_[s]) out.set(static_cast<int>(s), r, m.convert(target.ring()));
        return out;
    }
    Structure map(const BasedComplex& target, const std::function<Matrix(const Matrix&)>& f) const {
        Structure out(target, m_);
        for (std::size_t s = 0; s < maps_.size(); ++s)
            for (const auto& [r, m] : maps_[s]) out.set(static_cast<int>(s), r, f(m));
        return out;
    }

private:
    BasedComplex c_;
    long long m_ = 0;
    std::vector<std::map<int, Matrix>> maps_;
};

/// A failed instance of a structure relation.
struct Violation {
    int r = 0, s = 0;
    std::string what;
};

using Report = std::vector<Violation>;

inline std::string to_string(const Report& rep) {
    std::string out;
    for (const auto& v : rep) out += "relation fails at (r=" + std::to_string(v.r) + ", s=" + std::to_string(v.s) + "): " + v.what + "\n";
    return out;
}

namespace detail {

/// d phi_s + (-)^r phi_s d* + sign (phi_{s-1} + (-)^s T phi_{s-1}) at (r, s),
/// with sign = (-)^{m+s+1} for phi (m = n) and (-)^{m+s} for sigma (m = n+1).
inline Matrix structure_boundary(const Structure& x, int s, int r, int base_sign) {
    const BasedComplex& c = x.complex();
    int src = x.source_degree(s, r);  // phi_s(r) has source degree src; the relation starts one lower
    Matrix out = c.d(r + 1) * x(s, r + 1);
    out = out + (x(s, r) * c.d(src).star()).signed_by(parity(r));
    if (s > 0) {
        Matrix prev = x(s - 1, r) + x.flipped(s - 1, r).signed_by(parity(s));
        out = out + prev.signed_by(parity(x.dimension() + s + base_sign));
    }
    return out;
}

inline int max_level(const Structure& x) { return static_cast<int>(x.levels()); }

}  // namespace detail

/// n-dimensional symmetric complex (C, phi) with C signed.
class SymmetricComplex {
public:
    SymmetricComplex() = default;
    SymmetricComplex(SignedComplex c, long long n, Structure phi, bool check = true)
        : c_(std::move(c)), n_(n), phi_(std::move(phi)) {
        if (!phi_.complex().same_as(c_.complex) || phi_.dimension() != n_)
            throw DimensionMismatch("structure maps do not belong to this complex");
        if (check) {
            Report rep = violations();
            if (!rep.empty()) throw InvalidComplex("not a symmetric complex:\n" + to_string(rep));
        }
    }

    const SignedComplex& signed_complex() const { return c_; }
    const BasedComplex& complex() const { return c_.complex; }
    const Ring& ring() const { return c_.complex.ring(); }
    int eta() const { return c_.eta; }
    long long n() const { return n_; }
    const Structure& phi() const { return phi_; }
    Matrix phi(int s, int r) const { return phi_(s, r); }

    /// phi_0 as a chain map C^{n-*} -> C.
    ChainMap phi0() const {
        std::map<int, Matrix> m;
        for (int r = complex().lo(); r <= complex().hi(); ++r) m[r] = phi_(0, r);
        return ChainMap(dual(complex(), n_), complex(), m);
    }

    /// Every (r, s) where the symmetric relation fails.
    Report violations() const {
        Report rep;
        const BasedComplex& c = complex();
        if (c.empty()) return rep;
        for (int s = 0; s <= detail::max_level(phi_); ++s)
            for (int r = c.lo() - 1; r <= c.hi() + 1; ++r) {
                Matrix b = detail::structure_boundary(phi_, s, r, 1);
                if (!b.is_zero()) rep.push_back({r, s, "residual " + b.to_string()});
            }
        return rep;
    }

    SymmetricComplex with_eta(int eta) const {
        SymmetricComplex out({complex(), eta}, n_, phi_, false);
        out.certificate = certificate;
        return out;
    }
    /// (C, -phi); a certificate is carried over as data for -phi_0.
    SymmetricComplex negated() const {
        SymmetricComplex out(c_, n_, phi_.negated(), false);
        if (certificate) {
            HomotopyEquivalenceData e = certificate->data ? *certificate->data
                                                          : equivalence_from_cone_contraction(phi0(), *certificate->gamma);
            out.certificate = Certificate{std::nullopt, scale_data(e, Scalar(ring(), -1))};
        }
        return out;
    }

    /// Optional certificate that phi_0 is a chain equivalence.
    std::optional<Certificate> certificate;

private:
    SignedComplex c_;
    long long n_ = 0;
    Structure phi_;
};

inline Report verify_symmetric(const SymmetricComplex& x) { return x.violations(); }

/// Morphism (f, sigma) of n-dimensional symmetric complexes.
struct SymmetricMorphism {
    SymmetricComplex source, target;
    ChainMap f;
    Structure sigma;  // sigma_s maps the dual of degree n+1+s-r to degree r of the target
    std::optional<HomotopyEquivalenceData> equivalence;  // certificate for f, if known

    Report violations() const {
        Report rep;
        const BasedComplex& c = target.complex();
        long long n = target.n();
        int top = std::max(detail::max_level(sigma), std::max(detail::max_level(source.phi()), detail::max_level(target.phi())));
        auto [lo, hi] = BasedComplex::span({&source.complex(), &c});
        for (int s = 0; s <= top; ++s)
            for (int r = lo - 1; r <= hi + 1; ++r) {
                int q = static_cast<int>(n) - r + s;
                Matrix lhs = target.phi(s, r) - f(r) * source.phi(s, r) * f(q).star();
                Matrix rhs = c.d(r + 1) * sigma(s, r + 1) + (sigma(s, r) * c.d(q + 1).star()).signed_by(parity(r));
                if (s > 0) {
                    Matrix prev = sigma(s - 1, r) + sigma.flipped(s - 1, r).signed_by(parity(s));
                    rhs = rhs + prev.signed_by(parity(n + s));
                }
                if (lhs != rhs) rep.push_back({r, s, "phi' - f phi f* differs from the sigma boundary"});
            }
        return rep;
    }
    void verify() const {
        Report rep = violations();
        if (!rep.empty()) throw InvalidComplex("not a symmetric morphism:\n" + to_string(rep));
    }
};

/// tau^NEW(C, phi) = tau^NEW(phi_0) with the dual's eta on the source.
inline K1Element tau_poincare(const SymmetricComplex& x) {
    ChainMap p = x.phi0();
    int eta_dual = dual_eta(x.complex(), x.eta(), x.n());
    return tau_equiv(p, eta_dual, x.eta(), x.certificate ? *x.certificate : Certificate{});
}

/// Blockwise direct sum with the direct-sum eta.
inline SymmetricComplex direct_sum(const SymmetricComplex& x, const SymmetricComplex& y) {
    if (x.n() != y.n()) throw DimensionMismatch("direct sum of symmetric complexes of different dimension");
    SignedComplex s = direct_sum(x.signed_complex(), y.signed_complex());
    Structure phi(s.complex, x.n());
    int top = std::max(detail::max_level(x.phi()), detail::max_level(y.phi()));
    for (int lvl = 0; lvl < top; ++lvl)
        for (int r = s.complex.lo(); r <= s.complex.hi(); ++r) phi.set(lvl, r, direct_sum(x.phi(lvl, r), y.phi(lvl, r)));
    SymmetricComplex out(s, x.n(), phi);
    if (x.certificate || y.certificate) {
        // degreewise direct sum of equivalence data for phi_0
        auto data = [](const SymmetricComplex& z) {
            if (z.certificate && z.certificate->data) return *z.certificate->data;
            return equivalence_from_cone_contraction(z.phi0(), cone_contraction(z.phi0(), z.certificate ? *z.certificate : Certificate{}));
        };
        HomotopyEquivalenceData a = data(x), b = data(y);
        ChainMap p = out.phi0();
        const BasedComplex& tgt = p.target();
        const BasedComplex& src = p.source();
        std::map<int, Matrix> g, h, k;
        for (int r = tgt.lo() - 1; r <= tgt.hi() + 1; ++r) {
            g[r] = direct_sum(a.g(r), b.g(r));
            k[r] = direct_sum(a.k(r), b.k(r));
        }
        for (int r = src.lo() - 1; r <= src.hi() + 1; ++r) h[r] = direct_sum(a.h(r), b.h(r));
        HomotopyEquivalenceData e{p, ChainMap(tgt, src, g), ChainHomotopy(src, src, h), ChainHomotopy(tgt, tgt, k)};
        out.certificate = Certificate{std::nullopt, e};
    }
    return out;
}

/// H_0 of the cone of phi_0 vanishes. Poincare complexes are connected.
inline bool is_connected(const SymmetricComplex& x) {
    ChainMap p = x.phi0();
    if (x.certificate || is_degreewise_invertible(p)) return true;
    BasedComplex cn = cone(p);
    if (cn.dim(0) == 0) return true;
    if (!supports_smith(x.ring()))
        throw UnsupportedRing("connectedness over " + x.ring().to_string() + " must be certified");
    SmithDecomposition sd = smith_split(cn.d(1));
    if (sd.rank < cn.dim(0)) return false;
    for (const auto& e : sd.divisors())
        if (!e.is_unit()) return false;
    return true;
}

/// Boundary (dC, dphi) of a connected symmetric complex, of dimension n-1,
/// with dC_r = C_{r+1} + C^{n-r}.
inline SymmetricComplex boundary(const SymmetricComplex& x) {
    if (!is_connected(x)) throw NotConnected("H_0 of the phi_0 cone is nonzero");
    const BasedComplex& c = x.complex();
    const Ring& ring = x.ring();
    int n = static_cast<int>(x.n());
    if (c.empty()) return SymmetricComplex({BasedComplex(ring), 0}, n - 1, Structure(BasedComplex(ring), n - 1));
    int lo = std::min(c.lo() - 1, n - c.hi()), hi = std::max(c.hi() - 1, n - c.lo());
    auto top = [&](int r) { return c.dim(r + 1); };
    auto bot = [&](int r) { return c.dim(n - r); };
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int r = lo; r <= hi; ++r) {
        dims.push_back(top(r) + bot(r));
        if (r == lo) continue;
        int sg = parity(r);
        diffs.push_back(assemble(ring, {top(r - 1), bot(r - 1)}, {top(r), bot(r)},
                                 {{c.d(r + 1), x.phi(0, r).signed_by(sg)}, {Matrix(), c.d(n - r + 1).star().signed_by(sg)}}));
    }
    BasedComplex bc(ring, lo, dims, diffs);
    Structure phi(bc, n - 1);
    const Structure& xp = x.phi();
    for (int s = 0; s <= detail::max_level(xp); ++s)
        for (int r = lo; r <= hi; ++r) {
            // source: C^{n-r+s} + C_{r-s+1}; target: C_{r+1} + C^{n-r}; the T phi_{s+1}
            // block carries (-)^{n-r-1+s}
            Matrix t = xp.flipped(s + 1, r + 1).signed_by(parity(n - r - 1 + s));
            Matrix m;
            if (s == 0)
                m = assemble(ring, {top(r), bot(r)}, {c.dim(n - r), c.dim(r + 1)},
                             {{t, Matrix::identity(ring, c.dim(r + 1)).signed_by(parity(static_cast<long long>(r) * n))},
                              {Matrix::identity(ring, c.dim(n - r)), Matrix()}});
            else
                m = assemble(ring, {top(r), bot(r)}, {c.dim(n - r + s), c.dim(r - s + 1)}, {{t, Matrix()}, {Matrix(), Matrix()}});
            phi.set(s, r, m);
        }
    return SymmetricComplex({bc, 0}, n - 1, phi);
}

/// Equivalence data for phi_0, from the certificate or by Smith normal form.
inline HomotopyEquivalenceData phi0_data(const SymmetricComplex& x) {
    if (x.certificate && x.certificate->data) return *x.certificate->data;
    ChainMap p = x.phi0();
    return equivalence_from_cone_contraction(p, cone_contraction(p, x.certificate ? *x.certificate : Certificate{}));
}

/// Equivalence data for the underlying map of a morphism.
inline HomotopyEquivalenceData morphism_data(const SymmetricMorphism& m) {
    if (m.equivalence) return *m.equivalence;
    return equivalence_from_cone_contraction(m.f, cone_contraction(m.f));
}

/// R[z, z^-1] for R in the tower; a Laurent R gains one more variable.
inline Ring extend_ring(const Ring& r, const std::string& z) {
    std::vector<std::string> vars = r.is_laurent() ? r.vars() : std::vector<std::string>{};
    if (z.empty() || std::find(vars.begin(), vars.end(), z) != vars.end())
        throw IncompatibleRings("variable '" + z + "' is not fresh for " + r.to_string());
    vars.push_back(z);
    return Ring::laurent(r.base(), vars);
}

namespace detail {

/// Matrix sending blocks of the given sizes, in order, to the order listed.
inline Matrix block_permutation(const Ring& ring, const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& order) {
    std::size_t total = 0;
    std::vector<std::size_t> start;
    for (auto x : sizes) {
        start.push_back(total);
        total += x;
    }
    Matrix p(ring, total, total);
    std::size_t row = 0;
    for (auto b : order)
        for (std::size_t i = 0; i < sizes[b]; ++i) p(row++, start[b] + i) = Scalar::one(ring);
    return p;
}

/// Contraction of the cone of theta_0 for a mapping torus. The cone is an
/// extension of cone(z phi_0) by the cone of the induced map on quotients,
/// which is (-)^{n+1} S(phi_0 f*) after a sign change of the source.
inline Contraction torus_cone_contraction(const ChainMap& theta0, const BasedComplex& c, long long n, const Scalar& z,
                                          const HomotopyEquivalenceData& phi_data, const HomotopyEquivalenceData& f_data) {
    const Ring& ring = c.ring();
    Contraction ga = cone_contraction_from_data(scale_data(phi_data, z));

    // quotient of T^{n+1-*}: modules C^{n+1-q}, differential (-)^q d*_{n+2-q}
    BasedComplex dc = dual(c, n), sdc = shift(dc, 1);
    std::vector<std::size_t> qdims;
    std::vector<Matrix> qdiffs;
    for (int q = sdc.lo(); q <= sdc.hi(); ++q) {
        qdims.push_back(sdc.dim(q));
        if (q > sdc.lo()) qdiffs.push_back(sdc.d(q).signed_by(1));
    }
    BasedComplex qs(ring, sdc.lo(), qdims, qdiffs);
    std::map<int, Matrix> sgn;
    for (int q = qs.lo(); q <= qs.hi(); ++q) sgn[q] = Matrix::identity(ring, qs.dim(q)).signed_by(parity(q));
    HomotopyEquivalenceData eps = from_isomorphism(ChainMap(qs, sdc, sgn));
    HomotopyEquivalenceData pf = shift_data(compose(phi_data, dual_data(f_data, n)), 1);
    HomotopyEquivalenceData bar = scale_data(compose(pf, eps), Scalar(ring, parity(n + 1) ? -1 : 1));
    Contraction gq = cone_contraction_from_data(bar);

    // reorder C_r + C_{r-1} + C^{n+2-r} + C^{n+1-r} to sub blocks first
    BasedComplex b = cone(theta0);
    int ni = static_cast<int>(n);
    std::map<int, Matrix> p, pinv;
    for (int r = b.lo() - 1; r <= b.hi() + 1; ++r) {
        Matrix m = block_permutation(ring, {c.dim(r), c.dim(r - 1), c.dim(ni + 2 - r), c.dim(ni + 1 - r)}, {0, 3, 1, 2});
        pinv[r] = m.transpose();
        p[r] = std::move(m);
    }
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int r = b.lo(); r <= b.hi(); ++r) {
        dims.push_back(b.dim(r));
        if (r > b.lo()) diffs.push_back(p[r - 1] * b.d(r) * pinv[r]);
    }
    BasedComplex bp(ring, b.lo(), dims, diffs);
    const BasedComplex& a = ga.complex();
    const BasedComplex& q = gq.complex();
    for (int r = b.lo(); r <= b.hi() + 1; ++r) {
        Matrix dr = bp.d(r);
        if (dr.block(0, 0, a.dim(r - 1), a.dim(r)) != a.d(r) ||
            dr.block(a.dim(r - 1), a.dim(r), q.dim(r - 1), q.dim(r)) != q.d(r) ||
            !dr.block(a.dim(r - 1), 0, q.dim(r - 1), a.dim(r)).is_zero())
            throw ConstructionFailed("mapping torus cone does not split at degree " + std::to_string(r));
    }
    Contraction gp = extension_contraction(bp, ga, gq);
    std::map<int, Matrix> gamma;
    for (int r = b.lo(); r <= b.hi(); ++r) gamma[r] = pinv[r + 1] * gp(r) * p[r];
    Contraction out(b, gamma, false);
    if (auto bad = out.failure())
        throw ConstructionFailed("mapping torus contraction fails at degree " + std::to_string(*bad));
    return out;
}

}  // namespace detail

/// Algebraic mapping torus T(f) = C(f - z) over R[z, z^-1], of dimension
/// n + 1, with theta_s(r): C^{n+1-r+s} + C^{n-r+s} -> C_r + C_{r-1} given by
/// [[(-)^n sigma_s, (-)^s z phi_s], [(-)^{n-r+1} phi_s f*, (-)^{n+r+s+1} T phi_{s-1}]].
inline SymmetricComplex mapping_torus(const SymmetricMorphism& m, const std::string& z = "z") {
    const SymmetricComplex& x = m.source;
    if (!m.target.complex().same_as(x.complex()) || m.target.n() != x.n() || !m.f.target().same_as(x.complex()))
        throw DimensionMismatch("mapping torus needs a self-map of one symmetric complex");
    Ring ext = extend_ring(x.ring(), z);
    long long n = x.n();
    int ni = static_cast<int>(n);
    BasedComplex c = x.complex().convert(ext);
    Scalar zz = variable(ext, z);
    ChainMap f = m.f.convert(ext);
    std::map<int, Matrix> fz;
    for (int r = c.lo(); r <= c.hi(); ++r) fz[r] = f(r) - zz * Matrix::identity(ext, c.dim(r));
    SignedComplex t = cone(ChainMap(c, c, fz, false), x.eta(), x.eta());
    Structure phi = x.phi().convert(c), sig = m.sigma.convert(c);
    Structure theta(t.complex, n + 1);
    int top = std::max(detail::max_level(phi), detail::max_level(sig));
    for (int s = 0; s <= top; ++s)
        for (int r = t.complex.lo(); r <= t.complex.hi(); ++r) {
            int a = ni + 1 - r + s, b = ni - r + s;
            Matrix tr = (zz * phi(s, r)).signed_by(parity(s));
            Matrix bl = (phi(s, r - 1) * f(a).star()).signed_by(parity(n - r + 1));
            Matrix br = s > 0 ? phi.flipped(s - 1, r - 1).signed_by(parity(n + r + s + 1)) : Matrix();
            theta.set(s, r, assemble(ext, {c.dim(r), c.dim(r - 1)}, {c.dim(a), c.dim(b)},
                                     {{sig(s, r).signed_by(parity(n)), tr}, {bl, br}}));
        }
    SymmetricComplex out(t, n + 1, theta, false);
    Report rep = out.violations();
    if (!rep.empty()) throw ConstructionFailed("mapping torus structure fails:\n" + to_string(rep));
    Contraction g = detail::torus_cone_contraction(out.phi0(), c, n, zz, phi0_data(x).convert(ext),
                                                   morphism_data(m).convert(ext));
    out.certificate = Certificate{std::nullopt, equivalence_from_cone_contraction(out.phi0(), g)};
    return out;
}

namespace detail {

inline ChainMap embed_map(const ChainMap& f, const BasedComplex& src, const BasedComplex& dst, const Ring& ring,
                          const std::vector<std::size_t>& vars) {
    std::map<int, Matrix> m;
    for (int r = src.lo(); r <= src.hi(); ++r) m[r] = embed_matrix(f(r), ring, vars);
    return ChainMap(src, dst, m, false);
}

inline ChainHomotopy embed_homotopy(const ChainHomotopy& h, const BasedComplex& c, const Ring& ring,
                                    const std::vector<std::size_t>& vars) {
    std::map<int, Matrix> m;
    for (int r = c.lo() - 1; r <= c.hi(); ++r) m[r] = embed_matrix(h(r), ring, vars);
    return ChainHomotopy(c, c, m);
}

inline HomotopyEquivalenceData embed_data(const HomotopyEquivalenceData& e, const TensorRing& tr, bool left) {
    const auto& vars = left ? tr.left_vars : tr.right_vars;
    BasedComplex c = embed_complex(e.f.source(), tr, left), d = embed_complex(e.f.target(), tr, left);
    return {embed_map(e.f, c, d, tr.ring, vars), embed_map(e.g, d, c, tr.ring, vars), embed_homotopy(e.h, c, tr.ring, vars),
            embed_homotopy(e.k, d, tr.ring, vars)};
}

/// Data for f (x) 1_D; homotopies carry the sign (-)^{deg y} on x (x) y.
inline HomotopyEquivalenceData tensor_left(const HomotopyEquivalenceData& e, const BasedComplex& d) {
    ChainMap id = ChainMap::identity(d);
    BasedComplex c = tensor_same(e.f.source(), d), c2 = tensor_same(e.f.target(), d);
    auto none = [](int, int) { return 0; };
    auto koszul = [](int, int t) { return parity(t); };
    return {ChainMap(c, c2, tensor_components(e.f, id, none), false), ChainMap(c2, c, tensor_components(e.g, id, none), false),
            ChainHomotopy(c, c, tensor_components(e.h, id, koszul)), ChainHomotopy(c2, c2, tensor_components(e.k, id, koszul))};
}

/// Data for 1_C (x) f.
inline HomotopyEquivalenceData tensor_right(const BasedComplex& c, const HomotopyEquivalenceData& e) {
    ChainMap id = ChainMap::identity(c);
    BasedComplex d = tensor_same(c, e.f.source()), d2 = tensor_same(c, e.f.target());
    auto none = [](int, int) { return 0; };
    return {ChainMap(d, d2, tensor_components(id, e.f, none), false), ChainMap(d2, d, tensor_components(id, e.g, none), false),
            ChainHomotopy(d, d, tensor_components(id, e.h, none)), ChainHomotopy(d2, d2, tensor_components(id, e.k, none))};
}

}  // namespace detail

/// Product (C (x) D, phi (x) theta) of dimension n + m, with
/// (phi (x) theta)_s = sum_r (-)^{(n+r)s} phi_r (x) T^r theta_{s-r}; the
/// block from C^a (x) D^b to C_i (x) D_j carries the extra sign
/// (-)^{(n+1)r + i(j+m+r+s)} of this tensor and dual convention. The product is
/// given eta = 0.
inline SymmetricComplex tensor_symmetric(const SymmetricComplex& x, const SymmetricComplex& y) {
    TensorRing tr = tensor_ring(x.ring(), y.ring());
    const Ring& ring = tr.ring;
    BasedComplex c = detail::embed_complex(x.complex(), tr, true), d = detail::embed_complex(y.complex(), tr, false);
    BasedComplex t = detail::tensor_same(c, d);
    long long n = x.n(), m = y.n(), big = n + m;
    Structure px = x.phi().map(c, [&](const Matrix& a) { return embed_matrix(a, ring, tr.left_vars); });
    Structure py = y.phi().map(d, [&](const Matrix& a) { return embed_matrix(a, ring, tr.right_vars); });
    Structure out(t, big);
    int top = detail::max_level(px) + detail::max_level(py);
    for (int s = 0; s <= top; ++s)
        for (int p = t.lo(); p <= t.hi(); ++p) {
            int k = static_cast<int>(big) - p + s;
            Matrix mat(ring, t.dim(p), t.dim(k));
            auto to = tensor_offsets(c, d, p), so = tensor_offsets(c, d, k);
            for (int r = 0; r <= s; ++r)
                for (const auto& [i, row] : to) {
                    int j = p - i, a = static_cast<int>(n) - i + r;
                    Matrix f = px(r, i), g = parity(r) ? py.flipped(s - r, j) : py(s - r, j);
                    if (f.rows() == 0 || f.cols() == 0 || g.rows() == 0 || g.cols() == 0) continue;
                    std::size_t col = 0;
                    for (const auto& [a2, off] : so)
                        if (a2 == a) col = off;
                    Matrix blk = kron(f, g).signed_by(parity((n + r) * s + (n + 1) * r + static_cast<long long>(i) * (j + m + r + s)));
                    mat.set_block(row, col, mat.block(row, col, blk.rows(), blk.cols()) + blk);
                }
            out.set(s, p, mat);
        }
    SymmetricComplex prod({t, 0}, big, out, false);
    Report rep = prod.violations();
    if (!rep.empty()) throw ConstructionFailed("product structure fails:\n" + to_string(rep));

    // (phi (x) theta)_0 = (phi_0 (x) theta_0) Q with Q: dual(C (x) D) -> dual(C) (x) dual(D)
    // the signed block identification C^a (x) D^b -> dual(C)_{n-a} (x) dual(D)_{m-b}
    HomotopyEquivalenceData ex, ey;
    try {
        ex = detail::embed_data(phi0_data(x), tr, true);
        ey = detail::embed_data(phi0_data(y), tr, false);
    } catch (const UnsupportedRing&) {
        return prod;
    }
    const HomotopyEquivalenceData& ety = ey;
    HomotopyEquivalenceData a = compose(detail::tensor_right(c, ety), detail::tensor_left(ex, ety.f.source()));
    ChainMap p0 = prod.phi0();
    const BasedComplex& dt = p0.source();
    const BasedComplex& dcd = a.f.source();
    std::map<int, Matrix> q;
    for (int k = dt.lo(); k <= dt.hi(); ++k) {
        Matrix mq(ring, dcd.dim(k), dt.dim(k));
        auto so = tensor_offsets(c, d, static_cast<int>(big) - k);
        auto to = tensor_offsets(ex.f.source(), ety.f.source(), k);
        for (const auto& [av, col] : so) {
            int i = static_cast<int>(n) - av, j = k - i;
            std::size_t sz = c.dim(av) * d.dim(static_cast<int>(big) - k - av);
            if (sz == 0) continue;
            for (const auto& [i2, row] : to)
                if (i2 == i)
                    mq.set_block(row, col, Matrix::identity(ring, sz).signed_by(parity(static_cast<long long>(i) * (j + m))));
        }
        q[k] = mq;
    }
    HomotopyEquivalenceData e = compose(a, from_isomorphism(ChainMap(dt, dcd, q)));
    if (auto why = e.failure()) throw ConstructionFailed("product certificate: " + *why);
    for (int r = t.lo(); r <= t.hi(); ++r)
        if (e.f(r) != prod.phi(0, r)) throw ConstructionFailed("product certificate does not match phi_0");
    prod.certificate = Certificate{std::nullopt, HomotopyEquivalenceData{p0, e.g, e.h, e.k}};
    return prod;
}

}  // namespace wtorsion
