#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

namespace {

struct Outcome {
    int code;
    std::string out;
};

// Captures stdout and stderr.
Outcome run(const std::string& args) {
    std::string cmd = std::string(WTORSION_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), p)) out += buf.data();
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const Outcome& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

std::string temp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("wtorsion_cli_" + name)).string();
}

}  // namespace

TEST(Cli, AtlasCircle) {
    Outcome r = run("atlas circle");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(has(r, "tau=-t")) << r.out;
}

TEST(Cli, AtlasList) {
    Outcome r = run("atlas list");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r, "generator-G"));
    EXPECT_TRUE(has(r, "s1-x-cp2"));
}

TEST(Cli, TauPoincareTate) {
    Outcome r = run("tau-poincare atlas:circle --tate --augment");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(has(r, "tate=class(-t) in H^odd")) << r.out;
    EXPECT_TRUE(has(r, "augment=-1")) << r.out;
}

TEST(Cli, TorusOfConjugationRoundtrips) {
    std::string m = temp("conj.json"), t = temp("torus.json");
    ASSERT_EQ(run("atlas cp2-conj -o " + m).code, 0);
    Outcome r = run("torus " + m + " -o " + t);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(has(r, "tau=z^3")) << r.out;
    Outcome c = run("check " + t);
    EXPECT_EQ(c.code, 0) << c.out;
    EXPECT_TRUE(has(c, "poincare=yes")) << c.out;
    EXPECT_TRUE(has(c, "tau=z^3")) << c.out;
    std::filesystem::remove(m);
    std::filesystem::remove(t);
}

TEST(Cli, Invariants) {
    Outcome r = run("invariants atlas:cp2");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(has(r, "sigma=1"));
    EXPECT_TRUE(has(r, "agree=yes"));
    Outcome h = run("invariants atlas:generator-H");
    EXPECT_TRUE(has(h, "de_rham=1")) << h.out;
}

TEST(Cli, TensorAndBoundary) {
    std::string o = temp("out.json");
    Outcome t = run("tensor atlas:generator-G atlas:cp2 -o " + o);
    EXPECT_EQ(t.code, 0) << t.out;
    EXPECT_TRUE(has(t, "tau=-1"));
    EXPECT_TRUE(has(t, "formula=-1"));
    Outcome b = run("boundary atlas:cp2 -o " + o);
    EXPECT_EQ(b.code, 0) << b.out;
    EXPECT_TRUE(has(b, "tau=1"));
    std::filesystem::remove(o);
}

TEST(Cli, Selftest) {
    Outcome r = run("selftest --seed 7 --cases 20");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(has(r, "selftest passed"));
    EXPECT_FALSE(has(r, "FAIL"));
}

TEST(Cli, ErrorExitCodes) {
    EXPECT_EQ(run("atlas nope").code, 2);
    EXPECT_EQ(run("atlas 'point(2)'").code, 2);
    EXPECT_EQ(run("tau-poincare /nonexistent/file.json").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("selftest --cases 0").code, 2);
    std::string bad = temp("bad.json");
    {
        FILE* f = fopen(bad.c_str(), "w");
        fputs("{not json", f);
        fclose(f);
    }
    EXPECT_EQ(run("check " + bad).code, 2);
    std::filesystem::remove(bad);
}

TEST(Cli, MathematicalRejection) {
    std::string b = temp("not_connected.json");
    // phi_0 = 2 is not connected, so it has no boundary.
    FILE* f = fopen(b.c_str(), "w");
    fputs(R"({"ring":{"kind":"integers"},"lo":0,"dims":[1],"differentials":[],"eta":0,"n":0,"phi":[[[["2"]]]]})", f);
    fclose(f);
    Outcome r = run("boundary " + b + " -o " + temp("unused.json"));
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_TRUE(has(r, "rejected:")) << r.out;
    std::filesystem::remove(b);
}
