#include <gtest/gtest.h>

#include "wtorsion/io.hpp"
#include "wtorsion/selftest.hpp"

using namespace wtorsion;
using json = nlohmann::json;

TEST(Io, SymmetricRoundtrip) {
    for (const auto& name : {"circle", "cp2", "generator-H(1)", "s1-x-cp2"}) {
        SymmetricComplex x = atlas_lookup(name).complex;
        SymmetricComplex y = io::symmetric_from_json(json::parse(io::symmetric_to_json(x).dump()));
        EXPECT_EQ(y.ring(), x.ring()) << name;
        EXPECT_EQ(y.n(), x.n()) << name;
        EXPECT_EQ(y.eta(), x.eta()) << name;
        EXPECT_EQ(y.complex().describe(), x.complex().describe()) << name;
        EXPECT_EQ(tau_poincare(y), tau_poincare(x)) << name;
    }
}

TEST(Io, MorphismRoundtrip) {
    SymmetricMorphism m = atlas::cp2_conjugation();
    SymmetricMorphism back = io::morphism_from_json(io::morphism_to_json(m));
    EXPECT_EQ(tau_poincare(mapping_torus(back)), tau_poincare(mapping_torus(m)));
}

TEST(Io, MapRoundtrip) {
    SymmetricComplex c = atlas::cp2();
    io::SignedMap m = io::map_from_json(io::map_to_json(c.phi0(), 0, 1));
    EXPECT_EQ(m.eta_source, 0);
    EXPECT_EQ(m.eta_target, 1);
    EXPECT_TRUE(m.f.source().same_as(c.phi0().source()));
}

TEST(Io, RejectsMalformedInput) {
    json j = io::symmetric_to_json(atlas::cp2());
    EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), InvalidInput);
    EXPECT_THROW(io::load_symmetric("atlas:nope"), UnknownEntry);
    EXPECT_THROW(io::load_morphism("atlas:cp2"), InvalidInput);
    json bad = j;
    bad.erase("n");
    EXPECT_ANY_THROW(io::symmetric_from_json(bad));
}

TEST(Selftest, SmallRunPasses) {
    selftest::Report rep = run_selftest(11, 5);
    EXPECT_EQ(rep.results.size(), 2 * selftest_properties().size());
    for (const auto& r : rep.results) EXPECT_EQ(r.failures, 0) << r.name << " over " << r.ring << ": " << r.first_failure;
    EXPECT_TRUE(rep.ok());
}

TEST(Selftest, Reproducible) {
    selftest::Report a = run_selftest(3, 2), b = run_selftest(3, 2);
    ASSERT_EQ(a.results.size(), b.results.size());
    for (std::size_t i = 0; i < a.results.size(); ++i) EXPECT_EQ(a.results[i].failures, b.results[i].failures);
}
