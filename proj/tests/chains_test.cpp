#include <gtest/gtest.h>

#include "wtorsion/chains.hpp"
#include "wtorsion/random.hpp"

using namespace wtorsion;

namespace {

const Ring Z = Ring::integers();

BasedComplex zero_diff(const Ring& r, std::vector<std::size_t> dims, int lo = 0) {
    std::vector<Matrix> d;
    for (std::size_t i = 1; i < dims.size(); ++i) d.push_back(Matrix(r, dims[i - 1], dims[i]));
    return BasedComplex(r, lo, dims, d);
}

BasedComplex cp2() { return zero_diff(Z, {1, 0, 1, 0, 1}); }

BasedComplex circle() {
    Ring r = Ring::laurent(Z, {"t"});
    return BasedComplex::make(r, {1, 1}, {Matrix::from_scalars(r, 1, 1, {parse_scalar(r, "1 - t")})});
}

// Literal double sum over i > j of eps(C_2i, D_2j) - eps(C_2i+1, D_2j+1).
int beta_oracle(const BasedComplex& c, const BasedComplex& d) {
    long long s = 0;
    for (int i = -4; i <= 8; ++i)
        for (int j = -4; j < i; ++j)
            s += static_cast<long long>(c.dim(2 * i) * d.dim(2 * j)) - static_cast<long long>(c.dim(2 * i + 1) * d.dim(2 * j + 1));
    return parity(s);
}

}  // namespace

TEST(Chains, Euler) {
    EXPECT_EQ(euler(cp2()), 3);
    EXPECT_EQ(euler(circle()), 0);
    EXPECT_EQ(euler(BasedComplex(Z)), 0);
}

TEST(Chains, Epsilon) {
    EXPECT_EQ(epsilon(Z, 1, 1), K1Element::sign(Z, 1));
    EXPECT_TRUE(epsilon(Z, 2, 3).is_trivial());
    EXPECT_EQ(epsilon(Z, -3, 3), K1Element::sign(Z, 1));
}

TEST(Chains, BetaExamples) {
    BasedComplex c = zero_diff(Z, {0, 0, 1}), d = zero_diff(Z, {1});
    EXPECT_EQ(beta_bit(c, d), beta_oracle(c, d));
    EXPECT_EQ(beta_bit(c, d), 1);
    BasedComplex e = zero_diff(Z, {0, 1});
    EXPECT_EQ(beta_bit(e, e), beta_oracle(e, e));
    EXPECT_EQ(beta_bit(e, e), 0);
    EXPECT_EQ(beta_bit(cp2(), BasedComplex(Z)), 0);
}

TEST(Chains, Suspend) {
    SignedComplex s = suspend({cp2(), 0});
    EXPECT_EQ(s.complex.dim(0), 0u);
    EXPECT_EQ(s.complex.dim(1), 1u);
    EXPECT_EQ(s.complex.dim(5), 1u);
    EXPECT_EQ(s.eta, 0);
    EXPECT_EQ(suspend({cp2(), 1}).eta, 1);
    SignedComplex ss = suspend(suspend({cp2(), 1}));
    EXPECT_EQ(ss.complex.dim(6), 1u);
    EXPECT_EQ(ss.eta, 1);
}

TEST(Chains, DirectSumEta) {
    SignedComplex s = direct_sum(SignedComplex{cp2(), 0}, SignedComplex{cp2(), 0});
    // beta(CP2, CP2) counts pairs (2,0), (4,0), (4,2)
    EXPECT_EQ(beta_oracle(cp2(), cp2()), 1);
    EXPECT_EQ(s.eta, 1);
    EXPECT_EQ(direct_sum(SignedComplex{cp2(), 1}, SignedComplex{BasedComplex(Z), 0}).eta, 1);
}

TEST(Chains, DirectSumAssociativeOnRandomTriples) {
    Random rng(3);
    for (int i = 0; i < 100; ++i) {
        SignedComplex a{random_complex(rng, Z, rng.uniform(-1, 1), rng.uniform(1, 4), 3), rng.uniform(0, 1)};
        SignedComplex b{random_complex(rng, Z, rng.uniform(-1, 1), rng.uniform(1, 4), 3), rng.uniform(0, 1)};
        SignedComplex c{random_complex(rng, Z, rng.uniform(-1, 1), rng.uniform(1, 4), 3), rng.uniform(0, 1)};
        EXPECT_EQ(direct_sum(direct_sum(a, b), c).eta, direct_sum(a, direct_sum(b, c)).eta);
    }
}

TEST(Chains, Alpha) {
    EXPECT_EQ(alpha_bit(cp2(), 4), 1);
    EXPECT_EQ(alpha_bit(zero_diff(Z, {1}), 0), 0);
    EXPECT_EQ(alpha_bit(zero_diff(Z, {1, 1}), 1), 1);
}

TEST(Chains, DualEta) {
    EXPECT_EQ(dual(SignedComplex{cp2(), 0}, 4).eta, 0);
    EXPECT_EQ(dual(SignedComplex{zero_diff(Z, {1, 1}), 0}, 1).eta, 1);
    SignedComplex e = dual(SignedComplex{BasedComplex(Z), 1}, 3);
    EXPECT_TRUE(e.complex.empty());
    EXPECT_EQ(e.eta, 1);
}

TEST(Chains, DualMap) {
    BasedComplex c = circle();
    ChainMap id = ChainMap::identity(c);
    ChainMap did = dual_map(id, 1);
    for (int r = 0; r <= 1; ++r) EXPECT_TRUE(did(r).is_identity());
    ChainMap neg = -id;
    ChainMap dneg = dual_map(neg, 1);
    for (int r = 0; r <= 1; ++r) EXPECT_EQ(dneg(r), -Matrix::identity(c.ring(), 1));
}

TEST(Chains, DoubleDualWithSigns) {
    Random rng(5);
    for (int i = 0; i < 30; ++i) {
        Ring r = i % 2 ? Z : Ring::laurent(Z, {"t"});
        auto k = random_contractible(rng, r, 0, 4, 3);
        int n = rng.uniform(3, 6);
        BasedComplex dd = dual(dual(k.complex, n), n);
        for (int deg = 1; deg <= 3; ++deg) {
            Matrix expect = k.complex.d(deg);
            Matrix got = dd.d(deg).signed_by(parity(static_cast<long long>(n + 1) * (deg - 1) + (n + 1) * deg));
            EXPECT_EQ(got, expect);
        }
        EXPECT_EQ(euler(dual(k.complex, n)), (n % 2 ? -1 : 1) * euler(k.complex));
    }
}

TEST(Chains, TFlip) {
    Ring r = Ring::laurent(Z, {"u"});
    Matrix phi = Matrix::from_scalars(r, 1, 1, {parse_scalar(r, "u")});
    EXPECT_EQ(t_flip(phi, 1, 1), Matrix::from_scalars(r, 1, 1, {parse_scalar(r, "-u^-1")}));
    EXPECT_TRUE(t_flip(Matrix::identity(Z, 1), 0, 1).is_identity());
    Matrix m = Matrix::from_scalars(r, 2, 1, {parse_scalar(r, "u + 2"), parse_scalar(r, "-u^3")});
    EXPECT_EQ(t_flip(t_flip(m, 3, 5), 5, 3), m);
}

TEST(Chains, Cone) {
    SignedComplex d{cp2(), 1};
    ChainMap z = ChainMap::zero(BasedComplex(Z), cp2());
    SignedComplex c = cone(z, 0, d.eta);
    EXPECT_TRUE(c.complex.same_as(cp2()));
    EXPECT_EQ(c.eta, 1);
    BasedComplex pt = zero_diff(Z, {1});
    BasedComplex ci = cone(ChainMap::identity(pt));
    EXPECT_EQ(ci.dim(0), 1u);
    EXPECT_EQ(ci.dim(1), 1u);
    Ring rt = Ring::laurent(Z, {"t"});
    BasedComplex s1 = circle();
    ChainMap phi0(dual(s1, 1), s1,
                  {{0, Matrix::from_scalars(rt, 1, 1, {parse_scalar(rt, "t")})}, {1, Matrix::identity(rt, 1)}});
    BasedComplex cc = cone(phi0);
    EXPECT_EQ(cc.dim(0), 1u);
    EXPECT_EQ(cc.dim(1), 2u);
    EXPECT_EQ(cc.dim(2), 1u);
}

TEST(Chains, Tensor) {
    BasedComplex pt = zero_diff(Z, {1});
    EXPECT_TRUE(tensor_complex(pt, circle()).same_as(circle()));
    BasedComplex cc = tensor_complex(circle(), circle());
    EXPECT_EQ(cc.ring().vars().size(), 2u);
    EXPECT_EQ(cc.dim(0), 1u);
    EXPECT_EQ(cc.dim(1), 2u);
    EXPECT_EQ(cc.dim(2), 1u);
    Random rng(9);
    for (int i = 0; i < 20; ++i) {
        auto a = random_contractible(rng, Z, 0, 3, 2);
        auto e = random_equivalence(rng, cp2());
        BasedComplex t = tensor_complex(a.complex, e.f.target());  // d^2 checked on construction
        EXPECT_EQ(euler(t), euler(a.complex) * euler(e.f.target()));
    }
    EXPECT_THROW(tensor_complex(zero_diff(Ring::rationals(), {1}), zero_diff(Ring::prime_field(3), {1})),
                 IncompatibleRings);
}

TEST(Chains, BetaIdentitiesOnRandomComplexes) {
    Random rng(21);
    for (int i = 0; i < 200; ++i) {
        auto rc = [&] { return random_complex(rng, Z, rng.uniform(0, 2), rng.uniform(1, 5), 3); };
        BasedComplex c = rc(), c2 = rc(), d = rc(), d2 = rc();
        EXPECT_EQ(beta_bit(c, d), beta_oracle(c, d));
        EXPECT_EQ(beta_bit(direct_sum(c, c2), d), beta_bit(c, d) ^ beta_bit(c2, d));
        EXPECT_EQ(beta_bit(c, direct_sum(d, d2)), beta_bit(c, d) ^ beta_bit(c, d2));
        long long alt = 0;
        for (int r = -2; r <= 10; ++r) alt += static_cast<long long>(c.dim(r) * d.dim(r));
        EXPECT_EQ(beta_bit(c, d) ^ beta_bit(d, c) ^ parity(alt),
                  eps_bit(even_rank(c), even_rank(d)) ^ eps_bit(odd_rank(c), odd_rank(d)));
        EXPECT_EQ(beta_bit(shift(c, 1), shift(d, 1)), beta_bit(c, d));
        EXPECT_EQ(beta_bit(shift(c, 1), c), eps_bit(odd_rank(c), even_rank(c)));
    }
}
