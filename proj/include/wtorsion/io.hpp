// JSON formats for rings, complexes, maps, certificates, symmetric complexes
// and symmetric morphisms. Degree-indexed arrays start at the lowest degree
// of the source complex ("lo", default 0); matrices are lists of rows of
// scalar strings, and null stands for a zero matrix.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wtorsion/atlas.hpp"

namespace wtorsion::io {

using json = nlohmann::json;

inline json ring_to_json(const Ring& r) {
    if (r.is_laurent()) return {{"kind", "laurent"}, {"base", ring_to_json(r.base())}, {"vars", r.vars()}};
    switch (r.base_kind()) {
        case BaseKind::integers: return {{"kind", "integers"}};
        case BaseKind::rationals: return {{"kind", "rationals"}};
        case BaseKind::prime_field: return {{"kind", "prime_field"}, {"p", r.characteristic()}};
    }
    return {};
}

inline Ring ring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("ring: expected an object with \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "integers") return Ring::integers();
    if (kind == "rationals") return Ring::rationals();
    if (kind == "prime_field") return Ring::prime_field(j.at("p").get<std::uint64_t>());
    if (kind == "laurent") return Ring::laurent(ring_from_json(j.at("base")), j.at("vars").get<std::vector<std::string>>());
    throw ParseError("ring: unknown kind '" + kind + "'");
}

inline json matrix_to_json(const Matrix& m) {
    if (m.is_zero()) return nullptr;
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        rows.push_back(row);
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, const Ring& r, std::size_t rows, std::size_t cols, const std::string& where) {
    Matrix m(r, rows, cols);
    if (j.is_null() || (j.is_number_integer() && j.get<long long>() == 0)) return m;
    if (!j.is_array()) throw ParseError(where + ": expected a matrix");
    if (rows == 0 || cols == 0) {
        for (const auto& row : j)
            if (!row.is_array() || !row.empty()) throw ParseError(where + ": expected an empty matrix");
        return m;
    }
    if (j.size() != rows) throw ParseError(where + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(where + ": row " + std::to_string(i) + " should have " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            const json& e = row[k];
            std::string text = e.is_string() ? e.get<std::string>() : e.is_number_integer() ? std::to_string(e.get<long long>()) : "";
            if (text.empty()) throw ParseError(where + ": entries must be scalar strings or integers");
            m(i, k) = parse_scalar(r, text);
        }
    }
    return m;
}

inline json complex_to_json(const SignedComplex& s) {
    const BasedComplex& c = s.complex;
    json j{{"ring", ring_to_json(c.ring())}, {"eta", s.eta}};
    std::vector<std::size_t> dims;
    json diffs = json::array();
    if (!c.empty()) {
        j["lo"] = c.lo();
        for (int r = c.lo(); r <= c.hi(); ++r) {
            dims.push_back(c.dim(r));
            if (r > c.lo()) diffs.push_back(matrix_to_json(c.d(r)));
        }
    }
    j["dims"] = dims;
    j["differentials"] = diffs;
    return j;
}

inline SignedComplex complex_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("complex: expected an object");
    Ring r = ring_from_json(j.at("ring"));
    auto dims = j.at("dims").get<std::vector<std::size_t>>();
    int lo = j.value("lo", 0);
    int eta = j.value("eta", 0);
    if (eta != 0 && eta != 1) throw ParseError("complex: eta must be 0 or 1");
    const json& dj = j.contains("differentials") ? j.at("differentials") : json::array();
    if (dims.empty()) return {BasedComplex(r), eta};
    if (dj.size() != dims.size() - 1)
        throw ParseError("complex: expected " + std::to_string(dims.size() - 1) + " differentials, got " + std::to_string(dj.size()));
    std::vector<Matrix> diffs;
    for (std::size_t i = 1; i < dims.size(); ++i)
        diffs.push_back(matrix_from_json(dj[i - 1], r, dims[i - 1], dims[i], "differential " + std::to_string(lo + static_cast<int>(i))));
    return {BasedComplex(r, lo, dims, diffs), eta};
}

/// Components from the lowest source degree upwards.
inline json family_to_json(const Family& f) {
    json a = json::array();
    const BasedComplex& c = f.source();
    for (int r = c.lo(); r <= c.hi(); ++r) a.push_back(matrix_to_json(f(r)));
    return a;
}

inline std::map<int, Matrix> family_from_json(const json& j, const BasedComplex& source, const BasedComplex& target, int degree,
                                              const std::string& what) {
    std::map<int, Matrix> m;
    if (j.is_null()) return m;
    if (!j.is_array()) throw ParseError(what + ": expected a list of matrices");
    std::size_t count = source.empty() ? 0 : static_cast<std::size_t>(source.hi() - source.lo() + 1);
    if (j.size() > count) throw ParseError(what + ": more components than degrees");
    for (std::size_t i = 0; i < j.size(); ++i) {
        int r = source.lo() + static_cast<int>(i);
        m[r] = matrix_from_json(j[i], source.ring(), target.dim(r + degree), source.dim(r), what + " at degree " + std::to_string(r));
    }
    return m;
}

inline json map_to_json(const ChainMap& f, int eta_source = 0, int eta_target = 0) {
    return {{"source", complex_to_json({f.source(), eta_source})},
            {"target", complex_to_json({f.target(), eta_target})},
            {"components", family_to_json(f)}};
}

struct SignedMap {
    ChainMap f;
    int eta_source = 0, eta_target = 0;
};

inline SignedMap map_from_json(const json& j) {
    SignedComplex s = complex_from_json(j.at("source")), t = complex_from_json(j.at("target"));
    if (s.complex.ring() != t.complex.ring()) throw IncompatibleRings("map: source and target rings differ");
    auto comps = family_from_json(j.at("components"), s.complex, t.complex, 0, "map");
    return {ChainMap(s.complex, t.complex, comps), s.eta, t.eta};
}

inline json data_to_json(const HomotopyEquivalenceData& e) {
    return {{"g", family_to_json(e.g)}, {"h", family_to_json(e.h)}, {"k", family_to_json(e.k)}};
}

inline json certificate_to_json(const Certificate& c) {
    if (c.data) return data_to_json(*c.data);
    if (c.gamma) return {{"gamma", family_to_json(*c.gamma)}};
    return nullptr;
}

/// {"gamma": contraction of the cone} or {"g", "h", "k"} for f.
inline Certificate certificate_from_json(const json& j, const ChainMap& f) {
    if (!j.is_object()) throw ParseError("certificate: expected an object");
    if (j.contains("gamma")) {
        BasedComplex cn = cone(f);
        return Certificate{Contraction(cn, family_from_json(j.at("gamma"), cn, cn, 1, "gamma")), std::nullopt};
    }
    const BasedComplex& c = f.source();
    const BasedComplex& d = f.target();
    const json& gj = j.at("g");
    ChainMap g(d, c, family_from_json(gj.is_object() ? gj.at("components") : gj, d, c, 0, "g"));
    ChainHomotopy h(c, c, family_from_json(j.value("h", json()), c, c, 1, "h"));
    ChainHomotopy k(d, d, family_from_json(j.value("k", json()), d, d, 1, "k"));
    HomotopyEquivalenceData e{f, g, h, k};
    e.verify();
    return Certificate{std::nullopt, e};
}

inline json structure_to_json(const Structure& s) {
    json a = json::array();
    const BasedComplex& c = s.complex();
    for (std::size_t lvl = 0; lvl < s.levels(); ++lvl) {
        json row = json::array();
        for (int r = c.lo(); r <= c.hi(); ++r) row.push_back(matrix_to_json(s(static_cast<int>(lvl), r)));
        a.push_back(row);
    }
    return a;
}

inline Structure structure_from_json(const json& j, const BasedComplex& c, long long m, const std::string& what) {
    Structure s(c, m);
    if (j.is_null()) return s;
    if (!j.is_array()) throw ParseError(what + ": expected a list of levels");
    for (std::size_t lvl = 0; lvl < j.size(); ++lvl) {
        const json& row = j[lvl];
        if (!row.is_array()) throw ParseError(what + ": level " + std::to_string(lvl) + " should be a list of matrices");
        if (row.size() > (c.empty() ? 0u : static_cast<std::size_t>(c.hi() - c.lo() + 1)))
            throw ParseError(what + ": level " + std::to_string(lvl) + " has more matrices than degrees");
        for (std::size_t i = 0; i < row.size(); ++i) {
            int r = c.lo() + static_cast<int>(i);
            int sl = static_cast<int>(lvl);
            s.set(sl, r, matrix_from_json(row[i], c.ring(), c.dim(r), c.dim(s.source_degree(sl, r)),
                                          what + "[" + std::to_string(lvl) + "] at degree " + std::to_string(r)));
        }
    }
    return s;
}

inline json symmetric_to_json(const SymmetricComplex& x) {
    json j = complex_to_json(x.signed_complex());
    j["n"] = x.n();
    j["phi"] = structure_to_json(x.phi());
    if (x.certificate) j["certificate"] = certificate_to_json(*x.certificate);
    return j;
}

/// Rejects invalid structures with the diagnostic report.
inline SymmetricComplex symmetric_from_json(const json& j) {
    SignedComplex c = complex_from_json(j);
    long long n = j.at("n").get<long long>();
    Structure phi = structure_from_json(j.value("phi", json()), c.complex, n, "phi");
    SymmetricComplex x(c, n, phi);
    if (j.contains("certificate") && !j.at("certificate").is_null()) x.certificate = certificate_from_json(j.at("certificate"), x.phi0());
    return x;
}

inline json morphism_to_json(const SymmetricMorphism& m) {
    json j = symmetric_to_json(m.source);
    json t = symmetric_to_json(m.target);
    if (t != j) j["target"] = t;
    j["map"] = family_to_json(m.f);
    j["sigma"] = structure_to_json(m.sigma);
    if (m.equivalence) j["equivalence"] = data_to_json(*m.equivalence);
    return j;
}

/// Source fields at top level, optional "target" (default: the source),
/// "map", "sigma" and optional "equivalence" data for the map.
inline SymmetricMorphism morphism_from_json(const json& j) {
    SymmetricComplex src = symmetric_from_json(j);
    SymmetricComplex tgt = j.contains("target") ? symmetric_from_json(j.at("target")) : src;
    if (src.ring() != tgt.ring()) throw IncompatibleRings("morphism: source and target rings differ");
    ChainMap f(src.complex(), tgt.complex(), family_from_json(j.at("map"), src.complex(), tgt.complex(), 0, "map"));
    Structure sigma = structure_from_json(j.value("sigma", json()), tgt.complex(), tgt.n() + 1, "sigma");
    SymmetricMorphism m{src, tgt, f, sigma, std::nullopt};
    if (j.contains("equivalence")) m.equivalence = certificate_from_json(j.at("equivalence"), f).data;
    m.verify();
    return m;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

/// A file path or "atlas:NAME".
inline bool is_atlas_ref(const std::string& arg) { return arg.rfind("atlas:", 0) == 0; }

inline SymmetricComplex load_symmetric(const std::string& arg) {
    if (is_atlas_ref(arg)) return atlas_lookup(arg.substr(6)).complex;
    return symmetric_from_json(read_json_file(arg));
}

inline SymmetricMorphism load_morphism(const std::string& arg) {
    if (is_atlas_ref(arg)) {
        AtlasEntry e = atlas_lookup(arg.substr(6));
        if (!e.morphism) throw InvalidInput("atlas entry '" + e.name + "' is not a morphism");
        return *e.morphism;
    }
    return morphism_from_json(read_json_file(arg));
}

}  // namespace wtorsion::io
