#include <gtest/gtest.h>

#include "wtorsion/atlas.hpp"
#include "wtorsion/invariants.hpp"
#include "wtorsion/io.hpp"
#include "wtorsion/product.hpp"

using namespace wtorsion;

namespace {

std::string tau_of(const std::string& name) { return tau_poincare(atlas_lookup(name).complex).to_string(); }

}  // namespace

TEST(Atlas, EveryEntryIsSymmetric) {
    for (const auto& name : atlas_names()) {
        AtlasEntry e = atlas_lookup(name);
        EXPECT_TRUE(verify_symmetric(e.complex).empty()) << name;
        if (e.morphism) EXPECT_TRUE(e.morphism->violations().empty()) << name;
    }
}

TEST(Atlas, TorsionValues) {
    EXPECT_EQ(tau_of("circle"), "-t");
    EXPECT_EQ(tau_of("cp2"), "1");
    EXPECT_EQ(tau_of("generator-G"), "-1");
    EXPECT_EQ(tau_of("generator-H"), "1");
    // sigma - 3 chi is -6 for S^4 and -2 for point(4), so half of it is odd.
    EXPECT_EQ(tau_of("sphere(4)"), "-1");
    EXPECT_EQ(tau_of("point(4)"), "-1");
}

TEST(Atlas, CircleTateClassIsOdd) {
    TateClass c = tate_torsion(atlas::circle());
    EXPECT_EQ(c.to_string(), "class(-t) in H^odd");
}

TEST(Atlas, LookupErrors) {
    EXPECT_THROW(atlas_lookup("nope"), UnknownEntry);
    EXPECT_THROW(atlas_lookup("sphere(x)"), ParseError);
    EXPECT_THROW(atlas_lookup("sphere(3"), ParseError);
    EXPECT_THROW(atlas_lookup("point(2)"), InvalidInput);
    EXPECT_THROW(atlas_get("cp2", {1}), InvalidInput);
}

TEST(Morphism, ConjugationTorsionIsMinusOne) {
    SymmetricMorphism m = atlas::cp2_conjugation();
    EXPECT_EQ(tau_equiv(m.f, m.source.eta(), m.target.eta(), {std::nullopt, m.equivalence}).to_string(), "-1");
}

TEST(MappingTorus, ConjugationAndIdentityOnCp2) {
    SymmetricComplex conj = mapping_torus(atlas::cp2_conjugation());
    SymmetricComplex id = mapping_torus(atlas::identity_morphism(atlas::cp2()));
    EXPECT_EQ(tau_poincare(conj).to_string(), "z^3");
    EXPECT_EQ(tau_poincare(id).to_string(), "-z^3");
    EXPECT_NE(tate_torsion(conj), tate_torsion(id));
    EXPECT_NE(augment_sign(tau_poincare(conj)), augment_sign(tau_poincare(id)));
}

TEST(MappingTorus, IdentityOfGeneratorG) {
    SymmetricComplex t = mapping_torus(atlas::identity_morphism(atlas::generator_g(0)));
    EXPECT_TRUE(verify_symmetric(t).empty());
    EXPECT_TRUE(augment_sign(tau_poincare(t)).is_trivial());
}

TEST(MappingTorus, RejectsExistingVariable) {
    SymmetricMorphism m = atlas::identity_morphism(atlas::circle());
    EXPECT_THROW(mapping_torus(m, "t"), IncompatibleRings);
    EXPECT_NO_THROW(mapping_torus(m, "z"));
}

TEST(Boundary, Cp2HasTrivialTorsion) {
    SymmetricComplex b = boundary(atlas::cp2());
    EXPECT_EQ(b.n(), 3);
    EXPECT_EQ(b.complex().lo(), -1);
    EXPECT_EQ(b.complex().hi(), 4);
    for (int r = -1; r <= 4; ++r) EXPECT_EQ(b.complex().dim(r), 1u) << r;
    EXPECT_TRUE(verify_symmetric(b).empty());
    EXPECT_TRUE(tau_poincare(b).is_trivial());
}

TEST(Boundary, GeneratorGHasTrivialTorsion) {
    SymmetricComplex b = boundary(atlas::generator_g(0));
    EXPECT_TRUE(verify_symmetric(b).empty());
    EXPECT_TRUE(tau_poincare(b).is_trivial());
}

TEST(Boundary, RejectsDisconnectedInput) {
    // phi_0 = 2 leaves Z/2 in H_0 of its cone.
    SymmetricComplex two = io::symmetric_from_json(nlohmann::json::parse(
        R"({"ring":{"kind":"integers"},"lo":0,"dims":[1],"differentials":[],"eta":0,"n":0,"phi":[[[["2"]]]]})"));
    EXPECT_FALSE(is_connected(two));
    EXPECT_THROW(boundary(two), NotConnected);
    EXPECT_TRUE(is_connected(direct_sum(atlas::point(0), atlas::point(0))));
}

TEST(Product, PointIsUnit) {
    SymmetricComplex c = atlas::cp2();
    SymmetricComplex pc = tensor_symmetric(atlas::point(0), c);
    EXPECT_EQ(pc.n(), c.n());
    EXPECT_EQ(pc.complex().describe(), c.complex().describe());
    EXPECT_EQ(tau_poincare(pc), tau_poincare(c));
}

TEST(Product, GeneratorGTimesCp2) {
    ProductTorsion p = product_torsion(atlas::generator_g(0), atlas::cp2());
    EXPECT_EQ(p.direct.to_string(), "-1");
    EXPECT_EQ(p.direct, p.formula);
    EXPECT_EQ(p.direct, p.via_evening);
}

TEST(Product, Cp2TimesCp2) {
    SymmetricComplex x = tensor_symmetric(atlas::cp2(), atlas::cp2());
    EXPECT_EQ(x.n(), 8);
    EXPECT_EQ(euler(x.complex()), 9);
    EXPECT_EQ(signature(x), 1);
    EXPECT_TRUE(tau_poincare(x).is_trivial());
}

TEST(Product, CircleTimesCp2) { EXPECT_EQ(tau_of("s1-x-cp2"), "-t^3"); }

TEST(Invariants, Signatures) {
    EXPECT_EQ(signature(atlas::cp2()), 1);
    EXPECT_EQ(signature(atlas::cp2().negated()), -1);
    EXPECT_EQ(signature(atlas::sphere(4)), 0);
    EXPECT_EQ(signature(atlas::point(0)), 1);
}

TEST(Invariants, SignTermMatchesTorsion) {
    for (const char* name : {"cp2", "sphere(4)", "point(4)", "generator-G", "generator-H", "generator-G(1)", "generator-H(1)"}) {
        SymmetricComplex x = atlas_lookup(name).complex;
        EXPECT_EQ(predicted_sign_term(x), tau_poincare(x)) << name;
    }
}

TEST(Invariants, SemicharacteristicsOfGenerators) {
    SymmetricComplex g = atlas::generator_g(0), h = atlas::generator_h(0);
    EXPECT_EQ(semicharacteristic(g.complex(), Ring::rationals(), 1), 1);
    EXPECT_EQ(semicharacteristic(h.complex(), Ring::rationals(), 1), 0);
    EXPECT_EQ(de_rham(g), 0);
    EXPECT_EQ(de_rham(h), 1);
    EXPECT_THROW(semicharacteristic(g.complex(), Ring::prime_field(3), 1), UnsupportedRing);
    EXPECT_THROW(de_rham(atlas::cp2()), DimensionMismatch);
}

TEST(Invariants, AugmentedCircle) {
    SymmetricComplex a = augment(atlas::circle());
    EXPECT_EQ(a.ring(), Ring::integers());
    EXPECT_EQ(tau_poincare(a), predicted_sign_term(a));
}
