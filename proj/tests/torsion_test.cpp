#include <gtest/gtest.h>

#include "wtorsion/random.hpp"
#include "wtorsion/torsion.hpp"

using namespace wtorsion;

namespace {

const Ring Z = Ring::integers();

BasedComplex zero_diff(const Ring& r, std::vector<std::size_t> dims, int lo = 0) {
    std::vector<Matrix> d;
    for (std::size_t i = 1; i < dims.size(); ++i) d.push_back(Matrix(r, dims[i - 1], dims[i]));
    return BasedComplex(r, lo, dims, d);
}

BasedComplex one_step(const Ring& r, long long v) {
    return BasedComplex::make(r, {1, 1}, {Matrix::from_ints(r, {{v}})});
}

BasedComplex cp2(const Ring& r = Z) { return zero_diff(r, {1, 0, 1, 0, 1}); }

}  // namespace

TEST(Contraction, FindOnConeOfIdentity) {
    BasedComplex pt = zero_diff(Z, {1});
    Contraction g = find_contraction(cone(ChainMap::identity(pt)));
    EXPECT_TRUE(g(0).is_identity());
}

TEST(Contraction, NotContractibleReportsDivisor) {
    try {
        find_contraction(one_step(Z, 2));
        FAIL() << "expected NotContractible";
    } catch (const NotContractible& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("degree 0"), std::string::npos) << msg;
        EXPECT_NE(msg.find("[2]"), std::string::npos) << msg;
    }
    EXPECT_NO_THROW(find_contraction(one_step(Ring::prime_field(7), 2)));
}

TEST(Contraction, RandomAcyclicOverF7) {
    Random rng(7);
    Ring f7 = Ring::prime_field(7);
    for (int i = 0; i < 50; ++i) {
        auto k = random_contractible(rng, f7, 0, rng.uniform(2, 5), 4);
        Contraction g = find_contraction(k.complex);
        EXPECT_FALSE(g.failure());
    }
}

TEST(Contraction, ConeFromIdentityData) {
    BasedComplex c = cp2();
    ChainMap id = ChainMap::identity(c);
    HomotopyEquivalenceData e{id, id, ChainHomotopy::zero(c, c), ChainHomotopy::zero(c, c)};
    EXPECT_FALSE(cone_contraction_from_data(e).failure());
}

TEST(Contraction, ConeFromCircleInverseData) {
    Ring rt = Ring::laurent(Z, {"t"});
    BasedComplex s1 = BasedComplex::make(rt, {1, 1}, {Matrix::from_scalars(rt, 1, 1, {parse_scalar(rt, "1 - t")})});
    BasedComplex ds1 = dual(s1, 1);
    ChainMap phi0(ds1, s1, {{0, Matrix::from_scalars(rt, 1, 1, {parse_scalar(rt, "t")})}, {1, Matrix::identity(rt, 1)}});
    ChainMap inv(s1, ds1, {{0, Matrix::from_scalars(rt, 1, 1, {parse_scalar(rt, "t^-1")})}, {1, Matrix::identity(rt, 1)}});
    HomotopyEquivalenceData e{phi0, inv, ChainHomotopy::zero(ds1, ds1), ChainHomotopy::zero(s1, s1)};
    Contraction g = cone_contraction_from_data(e);
    EXPECT_FALSE(g.failure());
    EXPECT_EQ(tau_contractible(cone(phi0, 1, 0), g).unit(), parse_scalar(rt, "-t"));
}

TEST(Contraction, CorruptedDataRejected) {
    Random rng(1);
    for (int i = 0; i < 20; ++i) {
        auto e = random_equivalence(rng, cp2(), 2);
        bool corrupted = false;
        std::map<int, Matrix> k;
        for (int r = e.f.target().lo(); r <= e.f.target().hi(); ++r) {
            Matrix m = e.k(r);
            if (!corrupted && m.rows() && m.cols() && !m(0, 0).is_zero()) {
                m(0, 0) = -m(0, 0);
                corrupted = true;
            }
            k[r] = m;
        }
        if (!corrupted) continue;
        HomotopyEquivalenceData bad = e;
        bad.k = ChainHomotopy(e.f.target(), e.f.target(), k);
        EXPECT_TRUE(bad.failure());
        EXPECT_THROW(cone_contraction_from_data(bad), ConstructionFailed);
    }
}

TEST(Contraction, ConeFromRandomData) {
    Random rng(2);
    for (Ring r : {Z, Ring::prime_field(7), Ring::laurent(Z, {"z"})}) {
        for (int i = 0; i < 30; ++i) {
            BasedComplex c = random_complex(rng, r, 0, rng.uniform(1, 4), 2);
            auto e = random_equivalence(rng, c, 2);
            Contraction g = cone_contraction_from_data(e);
            EXPECT_FALSE(g.failure());
            Contraction g2 = cone_contraction_from_data(e.reversed());
            EXPECT_FALSE(g2.failure());
            auto back = equivalence_from_cone_contraction(e.f, g);
            EXPECT_FALSE(back.failure());
        }
    }
}

TEST(Torsion, ContractibleExamples) {
    BasedComplex c = one_step(Z, -1);
    EXPECT_EQ(tau_contractible({c, 0}), K1Element::sign(Z, 1));
    EXPECT_TRUE(tau_contractible({c, 1}).is_trivial());
    ChainMap id = ChainMap::identity(cp2());
    EXPECT_TRUE(tau_contractible(cone(id, 0, 0)).is_trivial());
    EXPECT_TRUE(tau_equiv(id, 0, 0).is_trivial());
}

TEST(Torsion, IsoFamilyExamples) {
    BasedComplex pt = zero_diff(Z, {1});
    ChainMap neg(pt, pt, {{0, Matrix::from_ints(Z, {{-1}})}});
    EXPECT_EQ(tau_iso_family(neg, 0, 0), K1Element::sign(Z, 1));
    ChainMap conj(cp2(), cp2(),
                  {{0, Matrix::identity(Z, 1)}, {2, Matrix::from_ints(Z, {{-1}})}, {4, Matrix::identity(Z, 1)}});
    EXPECT_EQ(tau_iso_family(conj, 0, 0), K1Element::sign(Z, 1));
    EXPECT_EQ(tau_equiv(conj, 0, 0), tau_iso_family(conj, 0, 0));
    Ring rz = Ring::laurent(Z, {"z"});
    Scalar mz = parse_scalar(rz, "-z");
    ChainMap m(cp2(rz), cp2(rz), {{0, Matrix::scalar(rz, 1, mz)}, {2, Matrix::scalar(rz, 1, mz)}, {4, Matrix::scalar(rz, 1, mz)}});
    EXPECT_EQ(tau_iso_family(m, 0, 0).unit(), parse_scalar(rz, "-z^3"));
}

TEST(Torsion, ShortExactSequences) {
    Random rng(4);
    for (int i = 0; i < 50; ++i) {
        BasedComplex c = random_complex(rng, Z, 0, rng.uniform(1, 4), 2);
        BasedComplex cp = random_complex(rng, Z, 0, rng.uniform(1, 4), 2);
        BasedComplex sum = direct_sum(c, cp), swapped = direct_sum(cp, c);
        std::map<int, Matrix> inc, proj, split, inc2, proj2, split2;
        for (int r = 0; r <= sum.hi(); ++r) {
            std::size_t a = c.dim(r), b = cp.dim(r);
            inc[r] = assemble(Z, {a, b}, {a}, {{Matrix::identity(Z, a)}, {Matrix()}});
            proj[r] = assemble(Z, {b}, {a, b}, {{Matrix(), Matrix::identity(Z, b)}});
            split[r] = assemble(Z, {a, b}, {b}, {{Matrix()}, {Matrix::identity(Z, b)}});
            inc2[r] = assemble(Z, {b, a}, {a}, {{Matrix()}, {Matrix::identity(Z, a)}});
            proj2[r] = assemble(Z, {b}, {b, a}, {{Matrix::identity(Z, b), Matrix()}});
            split2[r] = assemble(Z, {b, a}, {b}, {{Matrix::identity(Z, b)}, {Matrix()}});
        }
        int ec = rng.uniform(0, 1), ecp = rng.uniform(0, 1);
        Family k(cp, sum, 0), k2(cp, swapped, 0);
        for (auto& [r, m] : split) k.set(r, m);
        for (auto& [r, m] : split2) k2.set(r, m);
        int esum = direct_sum_eta(c, ec, cp, ecp);
        EXPECT_TRUE(tau_ses(ChainMap(c, sum, inc), ChainMap(sum, cp, proj), k, ec, esum, ecp).is_trivial());
        int eswap = direct_sum_eta(cp, ecp, c, ec);
        EXPECT_EQ(tau_ses(ChainMap(c, swapped, inc2), ChainMap(swapped, cp, proj2), k2, ec, eswap, ecp),
                  epsilon(Z, euler(c), euler(cp)));
    }
}

TEST(Torsion, CircleDualityMap) {
    Ring rt = Ring::laurent(Z, {"t"});
    BasedComplex s1 = BasedComplex::make(rt, {1, 1}, {Matrix::from_scalars(rt, 1, 1, {parse_scalar(rt, "1 - t")})});
    SignedComplex ds1 = dual(SignedComplex{s1, 0}, 1);
    ChainMap phi0(ds1.complex, s1,
                  {{0, Matrix::from_scalars(rt, 1, 1, {parse_scalar(rt, "t")})}, {1, Matrix::identity(rt, 1)}});
    EXPECT_EQ(tau_equiv(phi0, ds1.eta, 0).unit(), parse_scalar(rt, "-t"));
}

TEST(Torsion, CompositionOverZ) {
    Random rng(8);
    for (int i = 0; i < 30; ++i) {
        BasedComplex c = random_complex(rng, Z, 0, rng.uniform(1, 4), 2);
        auto e1 = random_equivalence(rng, c, 2);
        auto e2 = random_equivalence(rng, e1.f.target(), 2);
        int a = rng.uniform(0, 1), b = rng.uniform(0, 1), cc = rng.uniform(0, 1);
        K1Element t1 = tau_equiv(e1.f, a, b), t2 = tau_equiv(e2.f, b, cc);
        K1Element t12 = tau_equiv(compose(e2.f, e1.f), a, cc);
        EXPECT_EQ(t12, t1 + t2);
        EXPECT_EQ(tau_equiv(e1.f, a, b, Certificate{std::nullopt, e1}), t1);
        EXPECT_EQ(tau_equiv_unravelled(e1.f, a, b), t1);
    }
}
