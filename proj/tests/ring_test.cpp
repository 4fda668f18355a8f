#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>

#include "wtorsion/k1.hpp"
#include "wtorsion/smith.hpp"

using namespace wtorsion;

namespace {

Ring zt() { return Ring::laurent(Ring::integers(), {"t"}); }
Ring zz() { return Ring::laurent(Ring::integers(), {"z"}); }

Scalar S(const Ring& r, const std::string& s) { return parse_scalar(r, s); }

// gcd of all k x k minors of a small integer matrix, by brute force
long long determinantal_divisor(const std::vector<std::vector<long long>>& m, std::size_t k) {
    std::size_t n = m.size(), c = m[0].size();
    long long g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<long long(std::vector<std::size_t>, std::vector<std::size_t>)> minor =
        [&](std::vector<std::size_t> rs, std::vector<std::size_t> cs) -> long long {
        if (rs.size() == 1) return m[rs[0]][cs[0]];
        long long s = 0;
        for (std::size_t j = 0; j < cs.size(); ++j) {
            auto rs2 = std::vector<std::size_t>(rs.begin() + 1, rs.end());
            auto cs2 = cs;
            cs2.erase(cs2.begin() + static_cast<long>(j));
            long long v = m[rs[0]][cs[j]] * minor(rs2, cs2);
            s += (j % 2) ? -v : v;
        }
        return s;
    };
    for (unsigned rm = 0; rm < (1u << n); ++rm) {
        if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
        for (unsigned cm = 0; cm < (1u << c); ++cm) {
            if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
            std::vector<std::size_t> rs, cs;
            for (std::size_t i = 0; i < n; ++i)
                if (rm >> i & 1) rs.push_back(i);
            for (std::size_t j = 0; j < c; ++j)
                if (cm >> j & 1) cs.push_back(j);
            g = std::gcd(g, std::llabs(minor(rs, cs)));
        }
    }
    return g;
}

}  // namespace

TEST(Scalar, ParsePrintRoundTrip) {
    Ring r = Ring::laurent(Ring::integers(), {"t", "s"});
    for (std::string s : {"0", "1", "-12", "t", "-t", "2*t^-3*s + 1", "t^2 - 3*s^-1"}) {
        Scalar x = S(r, s);
        EXPECT_EQ(S(r, x.to_string()), x) << s;
    }
    EXPECT_EQ(S(r, "2*t^-3*s^1 + 1").to_string(), "1 + 2*t^-3*s");  // descending lex order
    EXPECT_EQ(S(Ring::rationals(), "6/8").to_string(), "3/4");
    EXPECT_EQ(S(Ring::prime_field(7), "-1").to_string(), "6");
    EXPECT_THROW(S(r, "x + 1"), ParseError);
    EXPECT_THROW(S(Ring::integers(), "1/2"), ParseError);
}

TEST(Scalar, CanonicalFormIsRepresentationEquality) {
    Ring r = zt();
    EXPECT_EQ(S(r, "t + 1 - t"), S(r, "1"));
    EXPECT_EQ(S(r, "t*t^-1"), Scalar::one(r));
    EXPECT_EQ(S(Ring::rationals(), "2/4"), S(Ring::rationals(), "1/2"));
    EXPECT_EQ(S(Ring::prime_field(5), "7"), S(Ring::prime_field(5), "2"));
}

TEST(Scalar, UnitsAndInvolution) {
    Ring r = zt();
    EXPECT_TRUE(S(r, "-t^3").is_unit());
    EXPECT_FALSE(S(r, "2*t").is_unit());
    EXPECT_FALSE(S(r, "1 - t").is_unit());
    EXPECT_TRUE(S(Ring::laurent(Ring::rationals(), {"t"}), "2*t").is_unit());
    EXPECT_EQ(S(r, "2*t^2 - t^-1").involution(), S(r, "2*t^-2 - t"));
    EXPECT_EQ(S(r, "-t^3").inverse(), S(r, "-t^-3"));
}

TEST(Scalar, ExactDivision) {
    Ring r = Ring::laurent(Ring::integers(), {"t", "s"});
    Scalar a = S(r, "t - s"), b = S(r, "t^2 + t*s^-1 + 3");
    auto q = divide_exact(a * b, b);
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, a);
    EXPECT_FALSE(divide_exact(S(r, "t + 1"), S(r, "t - 1")));
    EXPECT_FALSE(divide_exact(S(r, "3"), S(r, "2")));
    EXPECT_FALSE(divide_exact(S(Ring::integers(), "3"), S(Ring::integers(), "2")));
}

TEST(Determinant, Examples) {
    Ring z = Ring::integers();
    EXPECT_TRUE(det(Matrix::identity(z, 3)).is_trivial());
    EXPECT_EQ(det(Matrix::from_ints(z, {{0, 1}, {1, 0}})).unit(), Scalar(z, -1));
    Ring r = zt();
    Matrix m = Matrix::identity(r, 2);
    m(0, 0) = S(r, "t");
    EXPECT_EQ(det(m).unit(), S(r, "t"));
    EXPECT_THROW(det(Matrix::from_ints(z, {{2}})), NotAUnit);
}

TEST(Determinant, MultiplicativeOverLaurent) {
    Ring r = Ring::laurent(Ring::integers(), {"t", "s"});
    Matrix a = Matrix::from_scalars(r, 2, 2, {S(r, "1 + t"), S(r, "s"), S(r, "t*s^-1"), S(r, "2 - t^2")});
    Matrix b = Matrix::from_scalars(r, 2, 2, {S(r, "s - 1"), S(r, "t"), S(r, "3"), S(r, "t^-1")});
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
    EXPECT_EQ(determinant(direct_sum(a, b)), determinant(a) * determinant(b));
}

TEST(Inverse, UnimodularOverLaurent) {
    Ring r = zt();
    Matrix m = Matrix::from_scalars(r, 2, 2, {S(r, "1 - t"), S(r, "t"), S(r, "1"), S(r, "1")});
    // det = 1 - t - t = 1 - 2t: not a unit
    EXPECT_THROW(inverse(m), NotAUnit);
    Matrix u = Matrix::from_scalars(r, 2, 2, {S(r, "1 + t"), S(r, "t"), S(r, "1"), S(r, "1")});
    Matrix ui = inverse(u);
    EXPECT_TRUE((u * ui).is_identity());
    EXPECT_TRUE((ui * u).is_identity());
}

TEST(K1, StarExamples) {
    Ring r = zt();
    EXPECT_EQ(k1_star(K1Element(S(r, "t"))).unit(), S(r, "t^-1"));
    EXPECT_EQ(k1_star(K1Element::sign(Ring::integers(), 1)), K1Element::sign(Ring::integers(), 1));
    EXPECT_EQ(k1_star(K1Element(S(r, "-t^2"))).unit(), S(r, "-t^-2"));
    K1Element x(S(r, "-t^5"));
    EXPECT_EQ(k1_star(k1_star(x)), x);
}

TEST(Smith, DiagonalExample) {
    Ring z = Ring::integers();
    std::vector<std::vector<long long>> raw = {{2, 0}, {0, 3}};
    Matrix m = Matrix::from_ints(z, raw);
    auto s = smith_split(m);
    EXPECT_EQ(s.left * s.diag * s.right, m);
    // oracle: determinantal divisors d_k = gcd of k-minors, e_k = d_k / d_{k-1}
    long long d1 = determinantal_divisor(raw, 1), d2 = determinantal_divisor(raw, 2);
    EXPECT_EQ(s.diag(0, 0), Scalar(z, d1));
    EXPECT_EQ(s.diag(1, 1), Scalar(z, d2 / d1));
}

TEST(Smith, RandomIntegerMatricesAgreeWithMinors) {
    Ring z = Ring::integers();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t nr = 1 + rng() % 3, nc = 1 + rng() % 3;
        std::vector<std::vector<long long>> raw(nr, std::vector<long long>(nc));
        for (auto& row : raw)
            for (auto& x : row) x = static_cast<long long>(rng() % 13) - 6;
        Matrix m = Matrix::from_ints(z, raw);
        auto s = smith_split(m);
        ASSERT_EQ(s.left * s.diag * s.right, m);
        ASSERT_TRUE((s.left * s.left_inv).is_identity());
        ASSERT_TRUE((s.right * s.right_inv).is_identity());
        long long prev = 1;
        for (std::size_t k = 1; k <= std::min(nr, nc); ++k) {
            long long dk = determinantal_divisor(raw, k);
            Scalar expect = dk == 0 ? Scalar::zero(z) : Scalar(z, dk / prev);
            EXPECT_EQ(s.diag(k - 1, k - 1), expect);
            if (dk) prev = dk;
            if (k > 1 && !s.diag(k - 1, k - 1).is_zero())
                EXPECT_TRUE(divide_exact(s.diag(k - 1, k - 1), s.diag(k - 2, k - 2)));
        }
    }
}

TEST(Smith, ZeroAndLaurentOverField) {
    Ring z = Ring::integers();
    auto s0 = smith_split(Matrix::zero(z, 2, 3));
    EXPECT_TRUE(s0.diag.is_zero());
    Ring qt = Ring::laurent(Ring::rationals(), {"t"});
    Matrix m = Matrix::from_scalars(qt, 1, 1, {S(qt, "t - 1")});
    auto s = smith_split(m);
    EXPECT_EQ(s.diag(0, 0), S(qt, "t - 1"));
    Matrix m2 = Matrix::from_scalars(qt, 2, 2, {S(qt, "t - 1"), S(qt, "t^2"), S(qt, "0"), S(qt, "t + 1")});
    auto s2 = smith_split(m2);
    EXPECT_EQ(s2.left * s2.diag * s2.right, m2);
    EXPECT_EQ(s2.diag(0, 0), Scalar::one(qt));
    EXPECT_EQ(s2.diag(1, 1), S(qt, "t^2 - 1"));
}

TEST(Smith, UnsupportedRings) {
    EXPECT_THROW(smith_split(Matrix::identity(zt(), 1)), UnsupportedRing);
    EXPECT_THROW(smith_split(Matrix::identity(Ring::laurent(Ring::rationals(), {"t", "s"}), 1)), UnsupportedRing);
}

TEST(Tate, OddLaurentRepresentatives) {
    Ring r = zz();
    TateClass a = tate_reduce(K1Element(S(r, "z^3")), 5);
    TateClass b = tate_reduce(K1Element(S(r, "-z^3")), 5);
    // oracle: the coset z^3 {z^{2k}} contains exactly one of 1, z
    int hits = 0;
    for (int k = -4; k <= 4; ++k) {
        Scalar m = S(r, "z^" + std::to_string(3 + 2 * k));
        if (m == a.representative) ++hits;
        EXPECT_EQ(tate_reduce(K1Element(m), 5), a);
        EXPECT_EQ(tate_reduce(K1Element(-m), 5), b);
    }
    EXPECT_EQ(hits, 1);
    EXPECT_EQ(a.representative, S(r, "z"));
    EXPECT_EQ(b.representative, S(r, "-z"));
    EXPECT_NE(a, b);
    EXPECT_FALSE(a.is_trivial());
}

TEST(Tate, EvenAndBaseRings) {
    Ring z = Ring::integers();
    EXPECT_FALSE(tate_reduce(K1Element::sign(z, 1), 4).is_trivial());
    EXPECT_TRUE(tate_reduce(K1Element::sign(z, 0), 4).is_trivial());
    EXPECT_THROW(tate_reduce(K1Element(S(zz(), "z")), 4), NotInKernel);
    Ring q = Ring::rationals();
    EXPECT_EQ(tate_reduce(K1Element(S(q, "12/5")), 0).representative, S(q, "15"));
    EXPECT_EQ(tate_reduce(K1Element(S(q, "-4/9")), 0).representative, S(q, "-1"));
    EXPECT_THROW(tate_reduce(K1Element(S(q, "2")), 1), NotInKernel);
    Ring f7 = Ring::prime_field(7);
    EXPECT_EQ(tate_reduce(K1Element(S(f7, "2")), 0).representative, S(f7, "1"));  // 2 = 3^2
    EXPECT_EQ(tate_reduce(K1Element(S(f7, "5")), 0).representative, S(f7, "3"));
    EXPECT_EQ(tate_reduce(K1Element(S(f7, "6")), 1).representative, S(f7, "6"));
}

TEST(Tate, Multiplicative) {
    Ring r = zz();
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            for (int sa : {1, -1})
                for (int sb : {1, -1}) {
                    K1Element x(Scalar(r, sa) * S(r, "z^" + std::to_string(a)));
                    K1Element y(Scalar(r, sb) * S(r, "z^" + std::to_string(b)));
                    auto tx = tate_reduce(x, 1), ty = tate_reduce(y, 1);
                    EXPECT_EQ(tate_reduce(x + y, 1), tate_reduce(K1Element(tx.representative * ty.representative), 1));
                }
}

TEST(Augment, Examples) {
    Ring r = zz();
    EXPECT_EQ(augment_sign(K1Element(S(r, "-z^3"))), K1Element::sign(Ring::integers(), 1));
    EXPECT_TRUE(augment_sign(K1Element(S(r, "z^3"))).is_trivial());
    EXPECT_EQ(augment_sign(K1Element(S(zt(), "-t"))), K1Element::sign(Ring::integers(), 1));
    K1Element x(S(r, "-z^-2"));
    EXPECT_EQ(augment_sign(k1_star(x)), augment_sign(x));
}
