// Seeded property suite: the torsion identities for chain equivalences,
// contractible complexes, duality and symmetric Poincare complexes, checked
// on random instances over Z and F_7.

#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wtorsion/atlas.hpp"
#include "wtorsion/random_symmetric.hpp"

namespace wtorsion {

namespace selftest {

using Outcome = std::optional<std::string>;  // failure description, empty on success

struct Property {
    std::string name;
    std::function<Outcome(Random&, const Ring&)> run;
};

struct PropertyResult {
    std::string name;
    std::string ring;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
};

struct Report {
    std::uint64_t seed = 0;
    std::vector<PropertyResult> results;
    bool ok() const {
        for (const auto& r : results)
            if (r.failures) return false;
        return !results.empty();
    }
};

inline Outcome expect(const K1Element& got, const K1Element& want, const std::string& what) {
    if (got == want) return std::nullopt;
    return what + ": got " + got.to_string() + ", expected " + want.to_string();
}

inline Outcome expect_bit(int got, int want, const std::string& what) {
    if ((got & 1) == (want & 1)) return std::nullopt;
    return what + ": got " + std::to_string(got & 1) + ", expected " + std::to_string(want & 1);
}

/// (-)^k x.
inline K1Element signed_power(const K1Element& x, long long k) { return parity(k) ? -x : x; }

inline K1Element sign_term(const Ring& r, long long n, long long chi) {
    return K1Element::sign(r, parity(n * (n + 1) / 2) & eps_bit(chi, chi));
}

/// Complex with nonzero differentials: zero-differential ranks hidden in a
/// twisted contractible summand.
inline BasedComplex sample_complex(Random& rng, const Ring& ring, int lo, int len, int rank = 2) {
    return random_equivalence(rng, random_complex(rng, ring, lo, len, rank)).f.target();
}

inline ChainMap sum_map(const ChainMap& f, const ChainMap& g) {
    BasedComplex s = direct_sum(f.source(), g.source()), t = direct_sum(f.target(), g.target());
    std::map<int, Matrix> m;
    auto [lo, hi] = BasedComplex::span({&s, &t});
    for (int r = lo; r <= hi; ++r) m[r] = direct_sum(f(r), g(r));
    return ChainMap(s, t, m);
}

inline HomotopyEquivalenceData sum_data(const HomotopyEquivalenceData& a, const HomotopyEquivalenceData& b) {
    ChainMap f = sum_map(a.f, b.f), g = sum_map(a.g, b.g);
    auto homotopy = [](const ChainHomotopy& x, const ChainHomotopy& y, const BasedComplex& c) {
        std::map<int, Matrix> m;
        for (int r = c.lo() - 1; r <= c.hi(); ++r) m[r] = direct_sum(x(r), y(r));
        return ChainHomotopy(c, c, m);
    };
    return {f, g, homotopy(a.h, b.h, f.source()), homotopy(a.k, b.k, f.target())};
}

/// Degreewise block inclusion, projection and splitting for B = A + C
/// (as modules), twisted by t: i = t (1 0)^T, j = (0 1) t^-1, k = t (0 1)^T.
struct SplitRow {
    ChainMap i, j;
    Family k;
};

inline SplitRow split_row(const BasedComplex& a, const BasedComplex& c, const BasedComplex& b, const Twist& t) {
    const Ring& ring = b.ring();
    std::map<int, Matrix> im, jm;
    Family k(c, b, 0);
    for (int r = b.lo(); r <= b.hi(); ++r) {
        std::size_t na = a.dim(r), nc = c.dim(r);
        Matrix incl = assemble(ring, {na, nc}, {na}, {{Matrix::identity(ring, na)}, {Matrix()}});
        Matrix proj = assemble(ring, {nc}, {na, nc}, {{Matrix(), Matrix::identity(ring, nc)}});
        Matrix split = assemble(ring, {na, nc}, {nc}, {{Matrix()}, {Matrix::identity(ring, nc)}});
        im[r] = t.a.at(r) * incl;
        jm[r] = proj * t.ainv.at(r);
        k.set(r, t.a.at(r) * split);
    }
    return {ChainMap(a, b, im), ChainMap(b, c, jm), k};
}

/// Extension 0 -> A -> twist(C(u)) -> S C0 -> 0 for a chain map u: C0 -> A.
struct Extension {
    BasedComplex a, c, b;
    Twist t;
    SplitRow row;
};

inline Extension extension(Random& rng, const ChainMap& u) {
    BasedComplex cu = cone(u);
    BasedComplex c = shift(u.source(), 1);
    Twist t = random_twist(rng, cu);
    BasedComplex b = apply_twist(cu, t);
    // cone(u)_r = A_r + C0_{r-1}: its blocks are A then SC0
    Extension e{u.target(), c, b, t, split_row(u.target(), c, b, t)};
    return e;
}

/// Alternative contraction Gamma + dX - Xd for a random degree-2 map X.
inline Contraction perturb(Random& rng, const Contraction& g) {
    const BasedComplex& c = g.complex();
    std::map<int, Matrix> x, m;
    for (int r = c.lo() - 1; r <= c.hi(); ++r) x[r] = rng.matrix(c.ring(), c.dim(r + 2), c.dim(r), 1);
    auto at = [&](int r) { return x.count(r) ? x.at(r) : Matrix(c.ring(), c.dim(r + 2), c.dim(r)); };
    // (dX)_r = d_{r+2} X_r, (Xd)_r = X_{r-1} d_r
    for (int r = c.lo(); r <= c.hi(); ++r) m[r] = g(r) + c.d(r + 2) * at(r) - at(r - 1) * c.d(r);
    return Contraction(c, m);
}

/// Permutation from the interleaved order (C_r D_r for each r of one
/// parity) to the blockwise order, over the given ring.
inline K1Element interleave_torsion(const BasedComplex& c, const BasedComplex& d, int par) {
    const Ring& ring = c.ring();
    auto [lo, hi] = BasedComplex::span({&c, &d});
    std::size_t total = 0, ctotal = 0;
    for (int r = lo; r <= hi; ++r)
        if (parity(r) == par) {
            total += c.dim(r) + d.dim(r);
            ctotal += c.dim(r);
        }
    Matrix p(ring, total, total);
    std::size_t src = 0, cpos = 0, dpos = ctotal;
    for (int r = lo; r <= hi; ++r) {
        if (parity(r) != par) continue;
        for (std::size_t u = 0; u < c.dim(r); ++u) p(cpos++, src++) = Scalar::one(ring);
        for (std::size_t u = 0; u < d.dim(r); ++u) p(dpos++, src++) = Scalar::one(ring);
    }
    if (total == 0) return K1Element::trivial(ring);
    return det(p);
}

inline ChainMap flip_map(const ChainMap& f, long long n, const BasedComplex& c, const BasedComplex& d) {
    // Tf: D^{n-*} -> C, (Tf)_r = (-)^{r(n-r)} (f_{n-r})^*
    BasedComplex dd = dual(d, n);
    std::map<int, Matrix> m;
    auto [lo, hi] = BasedComplex::span({&dd, &c});
    for (int r = lo; r <= hi; ++r) m[r] = t_flip(f(static_cast<int>(n) - r), r, n - r);
    return ChainMap(dd, c, m);
}

/// Base Poincare complexes of dimension n over the ring.
inline std::vector<SymmetricComplex> base_pool(const Ring& ring, int n) {
    std::vector<SymmetricComplex> pool;
    switch (n) {
        case 0: pool = {atlas::point(0)}; break;
        case 1: pool = {atlas::sphere(1), atlas::generator_g(0), atlas::generator_h(0)}; break;
        case 2: pool = {atlas::sphere(2)}; break;
        case 3: pool = {atlas::sphere(3)}; break;
        default: pool = {atlas::cp2(), atlas::sphere(4), atlas::point(4)}; break;
    }
    std::vector<SymmetricComplex> out;
    for (const auto& x : pool) {
        if (x.ring() == ring) {
            out.push_back(x);
            continue;
        }
        BasedComplex c = x.complex().convert(ring);
        out.emplace_back(SignedComplex{c, x.eta()}, x.n(), x.phi().convert(c));
    }
    return out;
}

inline SymmetricComplex sample_poincare(Random& rng, const Ring& ring, int n) {
    std::vector<SymmetricComplex> pool = base_pool(ring, n);
    const SymmetricComplex& base = pool[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(pool.size()) - 1))];
    SymmetricComplex x = random_poincare(rng, base);
    return x.with_eta(rng.uniform(0, 1));
}

inline int eta(Random& rng) { return rng.uniform(0, 1); }

// ---- chain equivalences and contractible complexes ----

inline Outcome beta_identities(Random& rng, const Ring& ring) {
    BasedComplex c = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    BasedComplex c2 = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    BasedComplex d = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    BasedComplex d2 = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    K1Element perm = interleave_torsion(c, d, 0) - interleave_torsion(c, d, 1);
    if (auto e = expect(beta(c, d), perm, "beta as interleaving torsion")) return e;
    if (auto e = expect_bit(beta_bit(direct_sum(c, c2), d), beta_bit(c, d) ^ beta_bit(c2, d), "beta additive on the left"))
        return e;
    if (auto e = expect_bit(beta_bit(c, direct_sum(d, d2)), beta_bit(c, d) ^ beta_bit(c, d2), "beta additive on the right"))
        return e;
    int lhs = beta_bit(c, d) ^ beta_bit(d, c);
    auto [lo, hi] = BasedComplex::span({&c, &d});
    for (int r = lo; r <= hi; ++r) lhs ^= eps_bit(static_cast<long long>(c.dim(r)), static_cast<long long>(d.dim(r)));
    int rhs = eps_bit(even_rank(c), even_rank(d)) ^ eps_bit(odd_rank(c), odd_rank(d));
    if (auto e = expect_bit(lhs, rhs, "beta(C,D) - beta(D,C) + sum eps(C_r,D_r)")) return e;
    if (auto e = expect_bit(beta_bit(shift(c, 1), shift(d, 1)), beta_bit(c, d), "beta of suspensions")) return e;
    return expect_bit(beta_bit(shift(c, 1), c), eps_bit(odd_rank(c), even_rank(c)), "beta(SC, C)");
}

inline Outcome iso_rearrangement(Random& rng, const Ring& ring) {
    SignedComplex c{sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4)), eta(rng)};
    SignedComplex d{sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4)), eta(rng)};
    SignedComplex cd = direct_sum(c, d), dc = direct_sum(d, c);
    Family swap(cd.complex, dc.complex, 0);
    auto [lo, hi] = BasedComplex::span({&cd.complex});
    for (int r = lo; r <= hi; ++r) {
        std::size_t a = c.complex.dim(r), b = d.complex.dim(r);
        swap.set(r, assemble(ring, {b, a}, {a, b}, {{Matrix(), Matrix::identity(ring, b)}, {Matrix::identity(ring, a), Matrix()}}));
    }
    K1Element want = epsilon(ring, euler(c.complex), euler(d.complex));
    if (auto e = expect(tau_iso_family(swap, cd.eta, dc.eta), want, "C + D -> D + C")) return e;
    SignedComplex s = suspend(cd);
    SignedComplex ss = direct_sum(suspend(c), suspend(d));
    Family id(s.complex, ss.complex, 0);
    for (int r = s.complex.lo(); r <= s.complex.hi(); ++r) id.set(r, Matrix::identity(ring, s.complex.dim(r)));
    if (auto e = expect(tau_iso_family(id, s.eta, ss.eta), epsilon(ring, euler(d.complex), euler(c.complex)),
                        "S(C + D) -> SC + SD"))
        return e;
    // logarithmic and additive on random chain isomorphisms
    Twist t1 = random_twist(rng, c.complex);
    BasedComplex c1 = apply_twist(c.complex, t1);
    ChainMap f = twist_map(c.complex, c1, t1);
    Twist t2b = random_twist(rng, c1);
    BasedComplex c2 = apply_twist(c1, t2b);
    ChainMap g = twist_map(c1, c2, t2b);
    int e1 = eta(rng), e2 = eta(rng);
    if (auto e = expect(tau_iso_family(compose(g, f), c.eta, e2),
                        tau_iso_family(f, c.eta, e1) + tau_iso_family(g, e1, e2), "isomorphism torsion of a composite"))
        return e;
    Twist td = random_twist(rng, d.complex);
    ChainMap fd = twist_map(d.complex, apply_twist(d.complex, td), td);
    int ed = eta(rng);
    ChainMap fs = sum_map(f, fd);
    return expect(tau_iso_family(fs, cd.eta, direct_sum_eta(c1, e1, fd.target(), ed)),
                  tau_iso_family(f, c.eta, e1) + tau_iso_family(fd, d.eta, ed), "isomorphism torsion of a sum");
}

inline Outcome gamma_independence(Random& rng, const Ring& ring) {
    ContractibleSample k = random_contractible(rng, ring, rng.uniform(-2, 1), rng.uniform(2, 5), 4);
    SignedComplex c{k.complex, eta(rng)};
    K1Element a = tau_contractible(c, k.gamma);
    if (auto e = expect(tau_contractible(c, perturb(rng, k.gamma)), a, "perturbed contraction")) return e;
    return expect(tau_contractible(c), a, "Smith normal form contraction");
}

inline Outcome contractible_sum_and_extension(Random& rng, const Ring& ring) {
    int lo = rng.uniform(-1, 1);
    ContractibleSample a = random_contractible(rng, ring, lo, rng.uniform(2, 4), 4);
    ContractibleSample c0 = random_contractible(rng, ring, lo, rng.uniform(2, 4), 4);
    SignedComplex sa{a.complex, eta(rng)}, sc{c0.complex, eta(rng)};
    if (auto e = expect(tau_contractible(direct_sum(sa, sc)), tau_contractible(sa) + tau_contractible(sc),
                        "contractible sum"))
        return e;
    ChainMap u = random_nullhomotopic(rng, c0.complex, a.complex);
    Extension ext = extension(rng, u);
    SignedComplex ssc{ext.c, eta(rng)};
    int eb = eta(rng);
    K1Element ses = tau_ses(ext.row.i, ext.row.j, ext.row.k, sa.eta, eb, ssc.eta);
    return expect(tau_contractible({ext.b, eb}), tau_contractible(sa) + tau_contractible(ssc) + ses,
                  "contractible extension");
}

inline Outcome unravelled(Random& rng, const Ring& ring) {
    BasedComplex c = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    HomotopyEquivalenceData e = random_equivalence(rng, c);
    int ec = eta(rng), ed = eta(rng);
    Certificate cert{std::nullopt, e};
    return expect(tau_equiv_unravelled(e.f, ec, ed, cert), tau_equiv(e.f, ec, ed, cert), "unravelled formula");
}

inline Outcome composition(Random& rng, const Ring& ring) {
    BasedComplex c = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    HomotopyEquivalenceData f = random_equivalence(rng, c);
    HomotopyEquivalenceData g = random_equivalence(rng, f.f.target());
    int ec = eta(rng), ed = eta(rng), ee = eta(rng);
    K1Element tf = tau_equiv(f.f, ec, ed, {std::nullopt, f});
    K1Element tg = tau_equiv(g.f, ed, ee, {std::nullopt, g});
    if (auto e = expect(tf, tau_equiv(f.f, ec, ed), "certificate versus Smith contraction")) return e;
    ChainMap gf = compose(g.f, f.f);
    if (auto e = expect(tau_equiv(gf, ec, ee, {std::nullopt, compose(g, f)}), tf + tg, "composite")) return e;
    return expect(tau_equiv(compose(f.g, g.g), ee, ec), -(tf + tg), "composite of homotopy inverses");
}

inline Outcome contractible_map(Random& rng, const Ring& ring) {
    int lo = rng.uniform(-1, 1);
    ContractibleSample c = random_contractible(rng, ring, lo, rng.uniform(2, 4), 4);
    ContractibleSample d = random_contractible(rng, ring, lo + rng.uniform(-1, 1), rng.uniform(2, 4), 4);
    ChainMap f = random_nullhomotopic(rng, c.complex, d.complex);
    int ec = eta(rng), ed = eta(rng);
    return expect(tau_equiv(f, ec, ed), tau_contractible({d.complex, ed}, d.gamma) - tau_contractible({c.complex, ec}, c.gamma),
                  "map of contractible complexes");
}

inline Outcome homotopy_invariance(Random& rng, const Ring& ring) {
    BasedComplex c = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    HomotopyEquivalenceData f = random_equivalence(rng, c);
    ChainMap g = f.f + random_nullhomotopic(rng, f.f.source(), f.f.target());
    int ec = eta(rng), ed = eta(rng);
    return expect(tau_equiv(g, ec, ed), tau_equiv(f.f, ec, ed, {std::nullopt, f}), "homotopic maps");
}

inline Outcome sum_of_maps(Random& rng, const Ring& ring) {
    BasedComplex c = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    BasedComplex c2 = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    HomotopyEquivalenceData f = random_equivalence(rng, c), g = random_equivalence(rng, c2);
    int ec = eta(rng), ed = eta(rng), ec2 = eta(rng), ed2 = eta(rng);
    HomotopyEquivalenceData s = sum_data(f, g);
    K1Element want = tau_equiv(f.f, ec, ed, {std::nullopt, f}) + tau_equiv(g.f, ec2, ed2, {std::nullopt, g});
    int es = direct_sum_eta(c, ec, c2, ec2), et = direct_sum_eta(f.f.target(), ed, g.f.target(), ed2);
    if (auto e = expect(tau_equiv(s.f, es, et, {std::nullopt, s}), want, "sum with certificate")) return e;
    return expect(tau_equiv(s.f, es, et), want, "sum");
}

/// Map of extensions: a on A, c on C0, and b = t' (a + Sc) t^-1 on the
/// twisted cones, with u' = a u g_c so that the square commutes exactly.
inline Outcome ses_diagram(Random& rng, const Ring& ring) {
    int lo = rng.uniform(-1, 1);
    BasedComplex a = sample_complex(rng, ring, lo, rng.uniform(1, 3));
    BasedComplex c0 = sample_complex(rng, ring, lo + rng.uniform(-1, 0), rng.uniform(1, 3));
    ChainMap u = random_nullhomotopic(rng, c0, a);
    HomotopyEquivalenceData fa = random_equivalence(rng, a), fc = random_equivalence(rng, c0);
    ChainMap u2 = compose(fa.f, compose(u, fc.g));
    // g_c f_c = 1 exactly for these equivalences
    ChainMap lhs = compose(u2, fc.f), rhs = compose(fa.f, u);
    for (int r = c0.lo(); r <= c0.hi(); ++r)
        if (lhs(r) != rhs(r)) return std::string("test setup: square does not commute");
    Extension top = extension(rng, u), bot = extension(rng, u2);
    ChainMap sc = ChainMap(top.c, bot.c, [&] {
        std::map<int, Matrix> m;
        for (int r = top.c.lo(); r <= top.c.hi(); ++r) m[r] = fc.f(r - 1);
        return m;
    }());
    std::map<int, Matrix> bm;
    auto [blo, bhi] = BasedComplex::span({&top.b, &bot.b});
    for (int r = blo; r <= bhi; ++r) {
        Matrix mid = direct_sum(fa.f(r), fc.f(r - 1));
        Matrix left = bot.t.a.count(r) ? bot.t.a.at(r) : Matrix::identity(ring, 0);
        Matrix right = top.t.ainv.count(r) ? top.t.ainv.at(r) : Matrix::identity(ring, 0);
        bm[r] = left * mid * right;
    }
    ChainMap b(top.b, bot.b, bm);
    int ea = eta(rng), ec = eta(rng), eb = eta(rng), ea2 = eta(rng), ec2 = eta(rng), eb2 = eta(rng);
    K1Element ta = tau_equiv(fa.f, ea, ea2, {std::nullopt, fa});
    K1Element tc = tau_equiv(sc, ec, ec2);
    K1Element s1 = tau_ses(top.row.i, top.row.j, top.row.k, ea, eb, ec);
    K1Element s2 = tau_ses(bot.row.i, bot.row.j, bot.row.k, ea2, eb2, ec2);
    return expect(tau_equiv(b, eb, eb2), ta + tc - s1 + s2, "map of short exact sequences");
}

inline Outcome ses_contractible_quotient(Random& rng, const Ring& ring) {
    int lo = rng.uniform(-1, 1);
    BasedComplex a = sample_complex(rng, ring, lo, rng.uniform(1, 3));
    ContractibleSample c0 = random_contractible(rng, ring, lo + rng.uniform(-1, 0), rng.uniform(2, 4), 4);
    ChainMap u = random_nullhomotopic(rng, c0.complex, a);
    Extension ext = extension(rng, u);
    int ea = eta(rng), eb = eta(rng), ec = eta(rng);
    K1Element ses = tau_ses(ext.row.i, ext.row.j, ext.row.k, ea, eb, ec);
    return expect(tau_equiv(ext.row.i, ea, eb), ses + tau_contractible({ext.c, ec}), "extension by a contractible quotient");
}

// ---- duality ----

inline Outcome dual_contractible(Random& rng, const Ring& ring) {
    ContractibleSample k = random_contractible(rng, ring, rng.uniform(-1, 1), rng.uniform(2, 5), 4);
    long long n = rng.uniform(-1, 6);
    SignedComplex c{k.complex, eta(rng)};
    K1Element t = k1_star(tau_contractible(c, k.gamma));
    return expect(tau_contractible(dual(c, n)), signed_power(t, n + 1), "dual of a contractible complex");
}

inline Outcome dual_map_torsion(Random& rng, const Ring& ring) {
    BasedComplex c = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    HomotopyEquivalenceData f = random_equivalence(rng, c);
    long long n = rng.uniform(0, 6);
    int ec = eta(rng), ed = eta(rng);
    ChainMap fd = dual_map(f.f, n);
    K1Element want = signed_power(k1_star(tau_equiv(f.f, ec, ed, {std::nullopt, f})), n);
    return expect(tau_equiv(fd, dual_eta(f.f.target(), ed, n), dual_eta(c, ec, n), {std::nullopt, dual_data(f, n)}), want,
                  "dual map");
}

inline Outcome flip_torsion(Random& rng, const Ring& ring) {
    long long n = rng.uniform(0, 6);
    BasedComplex c = sample_complex(rng, ring, rng.uniform(-1, 1), rng.uniform(1, 4));
    HomotopyEquivalenceData f = random_equivalence(rng, dual(c, n));
    const BasedComplex& d = f.f.target();
    int ec = eta(rng), ed = eta(rng);
    ChainMap tf = flip_map(f.f, n, c, d);
    K1Element tfor = tau_equiv(f.f, dual_eta(c, ec, n), ed, {std::nullopt, f});
    K1Element want = signed_power(k1_star(tfor), n) + sign_term(ring, n, euler(c));
    return expect(tau_equiv(tf, dual_eta(d, ed, n), ec), want, "T f");
}

// ---- symmetric Poincare complexes ----

inline Outcome poincare_additivity(Random& rng, const Ring& ring) {
    int n = rng.uniform(0, 4);
    SymmetricComplex x = sample_poincare(rng, ring, n), y = sample_poincare(rng, ring, n);
    return expect(tau_poincare(direct_sum(x, y)), tau_poincare(x) + tau_poincare(y), "sum of Poincare complexes");
}

inline Outcome poincare_duality(Random& rng, const Ring& ring) {
    int n = rng.uniform(0, 4);
    SymmetricComplex x = sample_poincare(rng, ring, n);
    K1Element t = tau_poincare(x);
    return expect(t, signed_power(k1_star(t), n) + sign_term(ring, n, euler(x.complex())), "duality");
}

/// f = a i for the inclusion i: x -> x + K and a basis change a, with a
/// structure homotopy sigma; also a random self-equivalence.
inline Outcome poincare_homotopy(Random& rng, const Ring& ring) {
    int n = rng.uniform(0, 4);
    SymmetricComplex x = sample_poincare(rng, ring, n);
    ContractibleSample k = random_contractible(rng, ring, 0, n + 1, 2);
    SymmetricComplex kk({k.complex, eta(rng)}, n, Structure(k.complex, n));
    SymmetricComplex s = direct_sum(x, kk);
    TwistedComplex tw = twist_symmetric(rng, s);
    const BasedComplex& c = tw.complex.complex();
    Structure rho = random_sigma(rng, c, n);
    SymmetricComplex z(tw.complex.signed_complex(), n, add(tw.complex.phi(), sigma_boundary(rho, n)));
    std::map<int, Matrix> im;
    for (int r = c.lo(); r <= c.hi(); ++r) {
        std::size_t a = x.complex().dim(r), b = k.complex.dim(r);
        im[r] = tw.map.f(r) * assemble(ring, {a, b}, {a}, {{Matrix::identity(ring, a)}, {Matrix()}});
    }
    ChainMap f(x.complex(), c, im);
    SymmetricMorphism m{x, z, f, rho, std::nullopt};
    if (!m.violations().empty()) return std::string("test setup: not a symmetric morphism");
    K1Element tf = tau_equiv(f, x.eta(), z.eta());
    K1Element want = tau_poincare(x) + tf + signed_power(k1_star(tf), n);
    if (auto e = expect(tau_poincare(z), want, "homotopy equivalence")) return e;
    SymmetricMorphism self = random_self_equivalence(rng, x);
    K1Element ts = tau_equiv(self.f, self.source.eta(), self.target.eta(), {std::nullopt, *self.equivalence});
    return expect(ts + signed_power(k1_star(ts), n), K1Element::trivial(ring), "self-equivalence");
}

inline Outcome poincare_orientation(Random& rng, const Ring& ring) {
    int n = rng.uniform(0, 4);
    SymmetricComplex x = sample_poincare(rng, ring, n);
    long long chi = euler(x.complex());
    return expect(tau_poincare(x.negated()), tau_poincare(x) + epsilon(ring, chi, chi), "orientation change");
}

inline Outcome poincare_eta(Random& rng, const Ring& ring) {
    int n = rng.uniform(0, 4);
    SymmetricComplex x = sample_poincare(rng, ring, n);
    return expect(tau_poincare(x.with_eta(x.eta() ^ 1)), tau_poincare(x), "eta toggle");
}

inline Outcome boundary_torsion(Random& rng, const Ring& ring) {
    int n = rng.uniform(0, 4);
    SymmetricComplex x = sample_poincare(rng, ring, n);
    if (rng.coin()) x = x.negated();
    SymmetricComplex b = boundary(x);
    return expect(tau_poincare(b), sign_term(ring, n, euler(x.complex())), "boundary");
}

}  // namespace selftest

inline const std::vector<selftest::Property>& selftest_properties() {
    using namespace selftest;
    static const std::vector<Property> props{
        {"beta-identities", beta_identities},
        {"iso-rearrangement", iso_rearrangement},
        {"gamma-independence", gamma_independence},
        {"contractible-sum-extension", contractible_sum_and_extension},
        {"unravelled-formula", unravelled},
        {"composition", composition},
        {"contractible-map", contractible_map},
        {"homotopy-invariance", homotopy_invariance},
        {"additivity", sum_of_maps},
        {"ses-diagram", ses_diagram},
        {"ses-contractible-quotient", ses_contractible_quotient},
        {"dual-contractible", dual_contractible},
        {"dual-map", dual_map_torsion},
        {"flip-map", flip_torsion},
        {"poincare-additivity", poincare_additivity},
        {"poincare-duality", poincare_duality},
        {"poincare-homotopy", poincare_homotopy},
        {"poincare-orientation", poincare_orientation},
        {"poincare-eta", poincare_eta},
        {"boundary-torsion", boundary_torsion},
    };
    return props;
}

/// Runs every property `cases` times over Z and F_7. Each (property, ring)
/// pair draws from its own generator seeded from `seed`.
inline selftest::Report run_selftest(std::uint64_t seed, int cases) {
    selftest::Report rep;
    rep.seed = seed;
    const std::vector<Ring> rings{Ring::integers(), Ring::prime_field(7)};
    const auto& props = selftest_properties();
    for (std::size_t p = 0; p < props.size(); ++p)
        for (std::size_t q = 0; q < rings.size(); ++q) {
            selftest::PropertyResult res{props[p].name, rings[q].to_string(), 0, 0, ""};
            Random rng(seed * 1000003ULL + p * 2 + q);
            for (int i = 0; i < cases; ++i) {
                selftest::Outcome out;
                try {
                    out = props[p].run(rng, rings[q]);
                } catch (const std::exception& e) {
                    out = std::string("exception: ") + e.what();
                }
                ++res.cases;
                if (out) {
                    if (!res.failures) res.first_failure = "case " + std::to_string(i) + ": " + *out;
                    ++res.failures;
                }
            }
            rep.results.push_back(res);
        }
    return rep;
}

}  // namespace wtorsion
