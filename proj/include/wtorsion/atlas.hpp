// Built-in example complexes: circle, CP^2 and its conjugation, spheres,
// the rank-one even complex, the generators G and H, and S^1 x CP^2.

#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "wtorsion/product.hpp"

namespace wtorsion {

struct AtlasEntry {
    std::string name;
    std::vector<long long> parameters;
    SymmetricComplex complex;
    std::optional<SymmetricMorphism> morphism;
};

namespace atlas {

inline Matrix one_by_one(const Ring& r, const Scalar& x) { return Matrix::from_scalars(r, 1, 1, {x}); }

/// Ranks (1, 1) in degrees (1, 0) over Z[t, t^-1], d = 1 - t,
/// phi_0 = (1, t), phi_1 = -1.
inline SymmetricComplex circle(const std::string& var = "t") {
    Ring r = Ring::laurent(Ring::integers(), {var});
    Scalar t = variable(r, var);
    BasedComplex c = BasedComplex::make(r, {1, 1}, {one_by_one(r, Scalar::one(r) - t)});
    Structure phi(c, 1);
    phi.set(0, 1, Matrix::identity(r, 1));
    phi.set(0, 0, one_by_one(r, t));
    phi.set(1, 1, Matrix::identity(r, 1).signed_by(1));
    SymmetricComplex out({c, 0}, 1, phi);
    // inverse of phi_0 is (1, t^-1) with zero homotopies
    out.certificate = Certificate{std::nullopt, from_isomorphism(out.phi0())};
    return out;
}

/// Cellular complex of CP^2: ranks (1, 0, 1, 0, 1), phi_0 identity blocks.
inline SymmetricComplex cp2() {
    Ring z = Ring::integers();
    BasedComplex c(z, 0, {1, 0, 1, 0, 1}, {Matrix(z, 1, 0), Matrix(z, 0, 1), Matrix(z, 1, 0), Matrix(z, 0, 1)});
    Structure phi(c, 4);
    for (int r : {0, 2, 4}) phi.set(0, r, Matrix::identity(z, 1));
    return SymmetricComplex({c, 0}, 4, phi);
}

/// Complex conjugation (1, -1, 1) on CP^2 with sigma = 0.
inline SymmetricMorphism cp2_conjugation() {
    SymmetricComplex x = cp2();
    Ring z = Ring::integers();
    const BasedComplex& c = x.complex();
    ChainMap f(c, c, {{0, Matrix::identity(z, 1)}, {2, Matrix::identity(z, 1).signed_by(1)}, {4, Matrix::identity(z, 1)}});
    SymmetricMorphism m{x, x, f, Structure(c, 5), from_isomorphism(f)};
    m.verify();
    return m;
}

/// S^n: rank one in degrees 0 and n, zero differential, phi_0 identity blocks.
inline SymmetricComplex sphere(long long n) {
    if (n < 1) throw InvalidInput("sphere needs dimension >= 1");
    Ring z = Ring::integers();
    std::vector<std::size_t> dims(static_cast<std::size_t>(n) + 1, 0);
    dims.front() = dims.back() = 1;
    std::vector<Matrix> diffs;
    for (std::size_t r = 1; r < dims.size(); ++r) diffs.push_back(Matrix(z, dims[r - 1], dims[r]));
    BasedComplex c(z, 0, dims, diffs);
    Structure phi(c, n);
    phi.set(0, 0, Matrix::identity(z, 1));
    phi.set(0, static_cast<int>(n), Matrix::identity(z, 1));
    SymmetricComplex out({c, 0}, n, phi);
    out.certificate = Certificate{std::nullopt, from_isomorphism(out.phi0())};
    return out;
}

/// Ranks (1, 1) in degrees 2k, 2k + 1, d = 0, phi_0 = (1, 1); dimension 4k + 1.
inline SymmetricComplex generator_g(long long k) {
    if (k < 0) throw InvalidInput("generator-G needs k >= 0");
    Ring z = Ring::integers();
    int lo = static_cast<int>(2 * k);
    BasedComplex c(z, lo, {1, 1}, {Matrix(z, 1, 1)});
    Structure phi(c, 4 * k + 1);
    phi.set(0, lo, Matrix::identity(z, 1));
    phi.set(0, lo + 1, Matrix::identity(z, 1));
    SymmetricComplex out({c, 0}, 4 * k + 1, phi);
    out.certificate = Certificate{std::nullopt, from_isomorphism(out.phi0())};
    return out;
}

/// Ranks (1, 1) in degrees 2k, 2k + 1, d = 2, psi_0 = -1 on the top
/// degree and 1 on the bottom, psi_1 = 1; dimension 4k + 1.
inline SymmetricComplex generator_h(long long k) {
    if (k < 0) throw InvalidInput("generator-H needs k >= 0");
    Ring z = Ring::integers();
    int lo = static_cast<int>(2 * k);
    BasedComplex c(z, lo, {1, 1}, {Matrix::from_ints(z, {{2}})});
    Structure phi(c, 4 * k + 1);
    phi.set(0, lo + 1, Matrix::identity(z, 1).signed_by(1));
    phi.set(0, lo, Matrix::identity(z, 1));
    phi.set(1, lo + 1, Matrix::identity(z, 1));
    SymmetricComplex out({c, 0}, 4 * k + 1, phi);
    out.certificate = Certificate{std::nullopt, from_isomorphism(out.phi0())};
    return out;
}

/// Rank one in degree k, phi_0 = 1; dimension 2k. Symmetric over Z only
/// for 2k = 0 mod 4.
inline SymmetricComplex point(long long dimension) {
    if (dimension < 0 || dimension % 4) throw InvalidInput("point needs a dimension 4k >= 0");
    return point_complex(Ring::integers(), static_cast<int>(dimension / 2));
}

/// S^1 x CP^2 as the product circle (x) CP^2 over Z[t, t^-1].
inline SymmetricComplex s1_x_cp2() { return tensor_symmetric(circle(), cp2()); }

/// Identity self-map with sigma = 0.
inline SymmetricMorphism identity_morphism(const SymmetricComplex& x) {
    ChainMap id = ChainMap::identity(x.complex());
    return {x, x, id, Structure(x.complex(), x.n() + 1), from_isomorphism(id)};
}

}  // namespace atlas

inline const std::vector<std::string>& atlas_names() {
    static const std::vector<std::string> names{"circle", "cp2", "cp2-conj", "sphere", "point",
                                                "generator-G", "generator-H", "s1-x-cp2"};
    return names;
}

/// Looks up an entry; parameters default to sphere 2, point 0, G and H k = 0.
inline AtlasEntry atlas_get(const std::string& name, const std::vector<long long>& parameters = {}) {
    auto param = [&](long long fallback) {
        if (parameters.size() > 1) throw InvalidInput(name + " takes one parameter");
        return parameters.empty() ? fallback : parameters.front();
    };
    auto none = [&] {
        if (!parameters.empty()) throw InvalidInput(name + " takes no parameters");
    };
    if (name == "circle") return none(), AtlasEntry{name, {}, atlas::circle(), std::nullopt};
    if (name == "cp2") return none(), AtlasEntry{name, {}, atlas::cp2(), std::nullopt};
    if (name == "cp2-conj") {
        none();
        SymmetricMorphism m = atlas::cp2_conjugation();
        return {name, {}, m.source, m};
    }
    if (name == "sphere") {
        long long n = param(2);
        return {name, {n}, atlas::sphere(n), std::nullopt};
    }
    if (name == "point") {
        long long n = param(0);
        return {name, {n}, atlas::point(n), std::nullopt};
    }
    if (name == "generator-G") {
        long long k = param(0);
        return {name, {k}, atlas::generator_g(k), std::nullopt};
    }
    if (name == "generator-H") {
        long long k = param(0);
        return {name, {k}, atlas::generator_h(k), std::nullopt};
    }
    if (name == "s1-x-cp2") return none(), AtlasEntry{name, {}, atlas::s1_x_cp2(), std::nullopt};
    throw UnknownEntry("unknown atlas entry '" + name + "'");
}

/// "name" or "name(p)", e.g. "generator-H(1)", "sphere(3)".
inline AtlasEntry atlas_lookup(const std::string& spec_text) {
    std::string name = spec_text;
    std::vector<long long> params;
    auto open = spec_text.find('(');
    if (open != std::string::npos) {
        if (spec_text.back() != ')') throw ParseError("atlas entry '" + spec_text + "': missing ')'");
        name = spec_text.substr(0, open);
        std::string inner = spec_text.substr(open + 1, spec_text.size() - open - 2);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(inner, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (inner.empty() || used != inner.size()) throw ParseError("atlas entry '" + spec_text + "': bad parameter");
        params.push_back(v);
    }
    return atlas_get(name, params);
}

}  // namespace wtorsion
