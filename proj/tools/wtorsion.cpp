// Command-line front end. Exit codes: 0 success, 1 mathematical rejection,
// 2 usage, input or IO error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "wtorsion/io.hpp"
#include "wtorsion/invariants.hpp"
#include "wtorsion/selftest.hpp"

namespace {

using namespace wtorsion;
using json = nlohmann::json;

void print_complex(const SymmetricComplex& x) {
    std::cout << "ring=" << x.ring().to_string() << "\n";
    std::cout << "n=" << x.n() << "\n";
    std::cout << "ranks=" << x.complex().describe() << "\n";
    std::cout << "chi=" << euler(x.complex()) << "\n";
}

void write_symmetric(const std::string& out, const SymmetricComplex& x) {
    if (!out.empty()) io::write_json_file(out, io::symmetric_to_json(x));
}

/// "map" marks a morphism, "components" a chain map, anything else a
/// symmetric complex.
int run_check(const std::string& path) {
    if (io::is_atlas_ref(path)) {
        SymmetricComplex x = io::load_symmetric(path);
        print_complex(x);
        std::cout << "valid=symmetric complex\n";
        std::cout << "tau=" << tau_poincare(x).to_string() << "\n";
        return 0;
    }
    json j = io::read_json_file(path);
    if (j.contains("components")) {
        io::SignedMap m = io::map_from_json(j);
        std::cout << "valid=chain map\n";
        std::cout << "source=" << m.f.source().describe() << "\n";
        std::cout << "target=" << m.f.target().describe() << "\n";
        bool equivalence = true;
        try {
            cone_contraction(m.f);
        } catch (const NotContractible&) {
            equivalence = false;
        }
        std::cout << "equivalence=" << (equivalence ? "yes" : "no") << "\n";
        return 0;
    }
    if (j.contains("map")) {
        SymmetricMorphism m = io::morphism_from_json(j);
        print_complex(m.source);
        std::cout << "valid=symmetric morphism\n";
        return 0;
    }
    SymmetricComplex x = io::symmetric_from_json(j);
    print_complex(x);
    std::cout << "valid=symmetric complex\n";
    try {
        K1Element t = tau_poincare(x);
        std::cout << "poincare=yes\n";
        std::cout << "tau=" << t.to_string() << "\n";
    } catch (const NotContractible& e) {
        std::cout << "poincare=no (" << e.what() << ")\n";
    }
    return 0;
}

int run_tau_equiv(const std::string& path, const std::string& cert_path) {
    io::SignedMap m = io::map_from_json(io::read_json_file(path));
    Certificate cert;
    if (!cert_path.empty()) cert = io::certificate_from_json(io::read_json_file(cert_path), m.f);
    std::cout << "tau=" << tau_equiv(m.f, m.eta_source, m.eta_target, cert).to_string() << "\n";
    return 0;
}

int run_tau_poincare(const std::string& path, bool tate, bool augment_flag) {
    SymmetricComplex x = io::load_symmetric(path);
    K1Element t = tau_poincare(x);
    std::cout << "tau=" << t.to_string() << "\n";
    if (tate) std::cout << "tate=" << tate_torsion(x).to_string() << "\n";
    if (augment_flag) std::cout << "augment=" << augment_sign(t).to_string() << "\n";
    return 0;
}

int run_invariants(const std::string& path) {
    SymmetricComplex x = io::load_symmetric(path);
    K1Element t = tau_poincare(x);
    if (x.ring().is_laurent()) {
        std::cout << "augmented=yes\n";
        x = augment(x);
        t = augment_sign(t);
    }
    print_complex(x);
    long long n = x.n();
    std::cout << "tau=" << t.to_string() << "\n";
    if (mod_floor(n, 4) == 0) std::cout << "sigma=" << signature(x) << "\n";
    if (mod_floor(n, 2) == 1) {
        std::cout << "semichar_Q=" << semicharacteristic(x.complex(), Ring::rationals(), n) << "\n";
        std::cout << "semichar_F2=" << semicharacteristic(x.complex(), Ring::prime_field(2), n) << "\n";
    }
    if (mod_floor(n, 4) == 1) std::cout << "de_rham=" << de_rham(x) << "\n";
    K1Element predicted = predicted_sign_term(x);
    std::cout << "predicted_sign_term=" << predicted.to_string() << "\n";
    std::cout << "computed_sign_term=" << t.to_string() << "\n";
    std::cout << "agree=" << (predicted == t ? "yes" : "no") << "\n";
    return 0;
}

int run_boundary(const std::string& path, const std::string& out) {
    SymmetricComplex b = boundary(io::load_symmetric(path));
    print_complex(b);
    std::cout << "tau=" << tau_poincare(b).to_string() << "\n";
    write_symmetric(out, b);
    return 0;
}

int run_torus(const std::string& path, const std::string& out, const std::string& var) {
    SymmetricComplex t = mapping_torus(io::load_morphism(path), var);
    print_complex(t);
    K1Element tau = tau_poincare(t);
    std::cout << "tau=" << tau.to_string() << "\n";
    std::cout << "tate=" << tate_torsion(t).to_string() << "\n";
    std::cout << "augment=" << augment_sign(tau).to_string() << "\n";
    write_symmetric(out, t);
    return 0;
}

int run_tensor(const std::string& a, const std::string& b, const std::string& out) {
    SymmetricComplex x = io::load_symmetric(a), y = io::load_symmetric(b);
    SymmetricComplex xy = tensor_symmetric(x, y);
    print_complex(xy);
    std::cout << "tau=" << tau_poincare(xy).to_string() << "\n";
    std::cout << "formula=" << product_formula(x, y).to_string() << "\n";
    write_symmetric(out, xy);
    return 0;
}

int run_atlas(const std::string& name, const std::string& out) {
    if (name == "list") {
        for (const auto& n : atlas_names()) std::cout << n << "\n";
        return 0;
    }
    AtlasEntry e = atlas_lookup(name);
    std::cout << "name=" << e.name << "\n";
    print_complex(e.complex);
    if (e.morphism) {
        const SymmetricMorphism& m = *e.morphism;
        std::cout << "tau_map=" << tau_equiv(m.f, m.source.eta(), m.target.eta(), {std::nullopt, m.equivalence}).to_string()
                  << "\n";
    } else {
        std::cout << "tau=" << tau_poincare(e.complex).to_string() << "\n";
    }
    if (!out.empty())
        io::write_json_file(out, e.morphism ? io::morphism_to_json(*e.morphism) : io::symmetric_to_json(e.complex));
    return 0;
}

int run_selftest_command(std::uint64_t seed, int cases) {
    selftest::Report rep = run_selftest(seed, cases);
    std::cout << "seed=" << rep.seed << " cases=" << cases << "\n";
    int failed = 0;
    for (const auto& r : rep.results) {
        std::cout << (r.failures ? "FAIL " : "PASS ") << r.name << " over " << r.ring << ": " << r.cases - r.failures << "/"
                  << r.cases;
        if (r.failures) std::cout << " (" << r.first_failure << ")";
        std::cout << "\n";
        if (r.failures) ++failed;
    }
    std::cout << (failed ? "selftest failed: " + std::to_string(failed) + " properties" : std::string("selftest passed"))
              << "\n";
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Absolute torsion of chain equivalences and symmetric Poincare complexes"};
    app.require_subcommand(1);
    std::string file, file2, out, cert, var = "z";
    bool tate = false, augment_flag = false;
    std::uint64_t seed = 7;
    int cases = 200;

    auto* check = app.add_subcommand("check", "Validate a file and report diagnostics");
    check->add_option("FILE", file, "complex, morphism or chain map")->required();
    auto* te = app.add_subcommand("tau-equiv", "Torsion of a chain equivalence");
    te->add_option("MAPFILE", file)->required();
    te->add_option("--cert", cert, "certificate file");
    auto* tp = app.add_subcommand("tau-poincare", "Torsion of a symmetric Poincare complex");
    tp->add_option("FILE", file)->required();
    tp->add_flag("--tate", tate, "also print the Tate class");
    tp->add_flag("--augment", augment_flag, "also print the augmented torsion");
    auto* inv = app.add_subcommand("invariants", "Euler characteristic, signature, semicharacteristics, sign term");
    inv->add_option("FILE", file)->required();
    auto* bd = app.add_subcommand("boundary", "Boundary of a connected symmetric complex");
    bd->add_option("FILE", file)->required();
    bd->add_option("-o", out, "output file")->required();
    auto* tor = app.add_subcommand("torus", "Algebraic mapping torus of a self-equivalence");
    tor->add_option("MORPHISMFILE", file)->required();
    tor->add_option("-o", out, "output file")->required();
    tor->add_option("--var", var, "name of the new Laurent variable");
    auto* tens = app.add_subcommand("tensor", "Tensor product of symmetric complexes");
    tens->add_option("A", file)->required();
    tens->add_option("B", file2)->required();
    tens->add_option("-o", out, "output file")->required();
    auto* at = app.add_subcommand("atlas", "Built-in example, or 'list'");
    at->add_option("NAME", file)->required();
    at->add_option("-o", out, "output file");
    auto* st = app.add_subcommand("selftest", "Run the property suite");
    st->add_option("--seed", seed);
    st->add_option("--cases", cases)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) return run_check(file);
        if (*te) return run_tau_equiv(file, cert);
        if (*tp) return run_tau_poincare(file, tate, augment_flag);
        if (*inv) return run_invariants(file);
        if (*bd) return run_boundary(file, out);
        if (*tor) return run_torus(file, out, var);
        if (*tens) return run_tensor(file, file2, out);
        if (*at) return run_atlas(file, out);
        if (*st) return run_selftest_command(seed, cases);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownEntry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
