// Seeded generators of random complexes, contractions and chain
// equivalences with known certificates.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "wtorsion/chains.hpp"
#include "wtorsion/torsion.hpp"

namespace wtorsion {

class Random {
public:
    explicit Random(std::uint64_t seed) : g_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
    bool coin() { return uniform(0, 1) == 1; }

    /// Small ring element: integer in [-bound, bound], times a monomial of
    /// exponent at most 1 in each variable of a Laurent ring.
    Scalar small(const Ring& r, int bound = 2) {
        Scalar c(r, uniform(-bound, bound));
        if (!r.is_laurent() || c.is_zero()) return c;
        Exponents e(r.nvars());
        for (auto& x : e) x = uniform(-1, 1);
        return c * Scalar::monomial(r, e, Coeff(1));
    }
    /// Random unit: +-1 times a monomial (or any nonzero field element).
    Scalar unit(const Ring& r) {
        Scalar c(r, coin() ? 1 : -1);
        if (r.is_field()) {
            while (true) {
                c = Scalar(r, uniform(-5, 5));
                if (!c.is_zero()) break;
            }
        }
        if (!r.is_laurent()) return c;
        Exponents e(r.nvars());
        for (auto& x : e) x = uniform(-1, 1);
        return c * Scalar::monomial(r, e, Coeff(1));
    }

    /// Random invertible matrix with its inverse, as a product of
    /// elementary operations.
    std::pair<Matrix, Matrix> unimodular(const Ring& r, std::size_t n, int steps = 4) {
        Matrix a = Matrix::identity(r, n), ai = Matrix::identity(r, n);
        if (n == 0) return {a, ai};
        for (int s = 0; s < steps; ++s) {
            std::size_t i = static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1));
            std::size_t j = static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1));
            int kind = uniform(0, 2);
            if (kind == 0 && i != j) {
                // row i += c row j
                Scalar c = small(r);
                Matrix e = Matrix::identity(r, n), ei = Matrix::identity(r, n);
                e(i, j) = c;
                ei(i, j) = -c;
                a = e * a;
                ai = ai * ei;
            } else if (kind == 1) {
                Scalar u = unit(r);
                Matrix e = Matrix::identity(r, n), ei = Matrix::identity(r, n);
                e(i, i) = u;
                ei(i, i) = u.inverse();
                a = e * a;
                ai = ai * ei;
            } else if (i != j) {
                Matrix e = Matrix::identity(r, n);
                e(i, i) = Scalar::zero(r);
                e(j, j) = Scalar::zero(r);
                e(i, j) = Scalar::one(r);
                e(j, i) = Scalar::one(r);
                a = e * a;
                ai = ai * e;
            }
        }
        return {a, ai};
    }

    Matrix matrix(const Ring& r, std::size_t rows, std::size_t cols, int bound = 2) {
        Matrix m(r, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = small(r, bound);
        return m;
    }

private:
    std::mt19937_64 g_;
};

/// Degreewise automorphism of a complex, with inverse.
struct Twist {
    std::map<int, Matrix> a, ainv;
};

inline Twist random_twist(Random& rng, const BasedComplex& c, int steps = 4) {
    Twist t;
    for (int r = c.lo(); r <= c.hi(); ++r) {
        auto [a, ai] = rng.unimodular(c.ring(), c.dim(r), steps);
        t.a[r] = a;
        t.ainv[r] = ai;
    }
    return t;
}

/// Complex with differentials a d a^{-1}; a becomes a chain isomorphism.
inline BasedComplex apply_twist(const BasedComplex& c, const Twist& t) {
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    auto at = [&](const std::map<int, Matrix>& m, int r) {
        auto it = m.find(r);
        return it != m.end() ? it->second : Matrix::identity(c.ring(), c.dim(r));
    };
    for (int r = c.lo(); r <= c.hi(); ++r) {
        dims.push_back(c.dim(r));
        if (r > c.lo()) diffs.push_back(at(t.a, r - 1) * c.d(r) * at(t.ainv, r));
    }
    return BasedComplex(c.ring(), c.lo(), dims, diffs);
}

inline ChainMap twist_map(const BasedComplex& c, const BasedComplex& twisted, const Twist& t) {
    return ChainMap(c, twisted, t.a);
}

/// Contractible complex with a known contraction.
struct ContractibleSample {
    BasedComplex complex;
    Contraction gamma;
};

/// Sum of elementary pieces R^k -1-> R^k in degrees (r, r-1), then twisted.
inline ContractibleSample random_contractible(Random& rng, const Ring& ring, int lo, int len, int max_rank) {
    std::vector<std::size_t> dims(static_cast<std::size_t>(len), 0);
    std::vector<std::pair<int, std::size_t>> pieces;  // (top degree offset, rank)
    for (int i = 1; i < len; ++i) {
        std::size_t k = static_cast<std::size_t>(rng.uniform(0, std::max(1, max_rank / 2)));
        pieces.push_back({i, k});
        dims[static_cast<std::size_t>(i)] += k;
        dims[static_cast<std::size_t>(i - 1)] += k;
    }
    // block layout: in degree i the piece (i+1) part comes first, then the piece (i) part
    std::vector<Matrix> diffs;
    std::map<int, Matrix> gamma;
    for (int i = 1; i < len; ++i) {
        std::size_t k = pieces[static_cast<std::size_t>(i - 1)].second;
        Matrix d(ring, dims[static_cast<std::size_t>(i - 1)], dims[static_cast<std::size_t>(i)]);
        // piece i occupies the first k slots of degree i-1 and the last k slots of degree i
        std::size_t col0 = dims[static_cast<std::size_t>(i)] - k;
        for (std::size_t j = 0; j < k; ++j) d(j, col0 + j) = Scalar::one(ring);
        diffs.push_back(d);
        Matrix g(ring, dims[static_cast<std::size_t>(i)], dims[static_cast<std::size_t>(i - 1)]);
        for (std::size_t j = 0; j < k; ++j) g(col0 + j, j) = Scalar::one(ring);
        gamma[lo + i - 1] = g;
    }
    BasedComplex base(ring, lo, dims, diffs);
    Contraction g0(base, gamma);
    Twist t = random_twist(rng, base);
    BasedComplex tw = apply_twist(base, t);
    std::map<int, Matrix> gt;
    for (int r = tw.lo(); r <= tw.hi(); ++r) {
        auto a1 = t.a.count(r + 1) ? t.a.at(r + 1) : Matrix::identity(ring, 0);
        gt[r] = a1 * g0(r) * t.ainv.at(r);
    }
    return {tw, Contraction(tw, gt)};
}

/// Random complex with zero differentials, which is then thickened by a
/// contractible summand and twisted to hide the splitting.
inline BasedComplex random_complex(Random& rng, const Ring& ring, int lo, int len, int max_rank) {
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int i = 0; i < len; ++i) {
        dims.push_back(static_cast<std::size_t>(rng.uniform(0, max_rank)));
        if (i > 0) diffs.push_back(Matrix(ring, dims[static_cast<std::size_t>(i - 1)], dims.back()));
    }
    return BasedComplex(ring, lo, dims, diffs);
}

/// Chain equivalence C -> D with D = twist(C + K), K contractible,
/// together with its certificate.
inline HomotopyEquivalenceData random_equivalence(Random& rng, const BasedComplex& c, int max_rank = 2) {
    const Ring& ring = c.ring();
    int lo = c.empty() ? 0 : c.lo();
    int len = c.empty() ? 2 : c.hi() - c.lo() + 1;
    ContractibleSample k = random_contractible(rng, ring, lo, len, max_rank);
    BasedComplex sum = direct_sum(c, k.complex);
    Twist t = random_twist(rng, sum);
    BasedComplex d = apply_twist(sum, t);
    std::map<int, Matrix> f, g, kk;
    for (int r = d.lo(); r <= d.hi(); ++r) {
        std::size_t n = c.dim(r), m = k.complex.dim(r);
        Matrix incl = assemble(ring, {n, m}, {n}, {{Matrix::identity(ring, n)}, {Matrix()}});
        Matrix proj = assemble(ring, {n}, {n, m}, {{Matrix::identity(ring, n), Matrix()}});
        f[r] = t.a.at(r) * incl;
        g[r] = proj * t.ainv.at(r);
        std::size_t n1 = c.dim(r + 1), m1 = k.complex.dim(r + 1);
        Matrix kg = assemble(ring, {n1, m1}, {n, m}, {{Matrix(), Matrix()}, {Matrix(), k.gamma(r)}});
        Matrix a1 = t.a.count(r + 1) ? t.a.at(r + 1) : Matrix::identity(ring, 0);
        kk[r] = a1 * kg * t.ainv.at(r);
    }
    HomotopyEquivalenceData e{ChainMap(c, d, f), ChainMap(d, c, g), ChainHomotopy::zero(c, c), ChainHomotopy(d, d, kk)};
    e.verify();
    return e;
}

/// Random null-homotopic chain map d X + X d between two complexes.
inline ChainMap random_nullhomotopic(Random& rng, const BasedComplex& c, const BasedComplex& d) {
    std::map<int, Matrix> x;
    auto [lo, hi] = BasedComplex::span({&c, &d});
    for (int r = lo - 1; r <= hi; ++r) x[r] = rng.matrix(c.ring(), d.dim(r + 1), c.dim(r), 1);
    ChainHomotopy h(c, d, x);
    std::map<int, Matrix> f;
    for (int r = lo; r <= hi; ++r) f[r] = h.boundary(r);
    return ChainMap(c, d, f);
}

}  // namespace wtorsion
