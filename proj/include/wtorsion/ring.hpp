// Exact commutative rings with involution: Z, Q, F_p and Laurent
// polynomial rings (one layer, any number of variables) over them.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wtorsion/errors.hpp"

namespace wtorsion {

using BigInt = boost::multiprecision::cpp_int;

enum class BaseKind { integers, rationals, prime_field };

/// Description of a ring from the supported tower. A Laurent ring is a
/// base ring together with a nonempty list of variable names.
struct RingSpec {
    BaseKind base = BaseKind::integers;
    std::uint64_t p = 0;             // prime, only for prime_field
    std::vector<std::string> vars;  // empty unless Laurent

    bool laurent() const { return !vars.empty(); }
    bool operator==(const RingSpec&) const = default;
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace detail

/// Shared, immutable handle to a RingSpec. Cheap to copy.
class Ring {
public:
    Ring() : spec_(integers().spec_) {}

    static Ring integers() {
        static const Ring z(RingSpec{BaseKind::integers, 0, {}});
        return z;
    }
    static Ring rationals() {
        static const Ring q(RingSpec{BaseKind::rationals, 0, {}});
        return q;
    }
    static Ring prime_field(std::uint64_t p) {
        if (!detail::is_prime(p))
            throw InvalidInput("prime_field: " + std::to_string(p) + " is not prime");
        return Ring(RingSpec{BaseKind::prime_field, p, {}});
    }
    static Ring laurent(const Ring& base, std::vector<std::string> vars) {
        if (base.is_laurent()) throw InvalidInput("laurent: base ring is already a Laurent ring");
        if (vars.empty()) throw InvalidInput("laurent: at least one variable is required");
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i].empty()) throw InvalidInput("laurent: empty variable name");
            for (char ch : vars[i])
                if (!(std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' ||
                      (std::isdigit(static_cast<unsigned char>(ch)) && &ch != &vars[i][0])))
                    throw InvalidInput("laurent: invalid variable name '" + vars[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (vars[i] == vars[j]) throw InvalidInput("laurent: duplicate variable '" + vars[i] + "'");
        }
        RingSpec s = base.spec();
        s.vars = std::move(vars);
        return Ring(std::move(s));
    }

    const RingSpec& spec() const { return *spec_; }
    BaseKind base_kind() const { return spec_->base; }
    std::uint64_t characteristic() const { return spec_->base == BaseKind::prime_field ? spec_->p : 0; }
    bool is_laurent() const { return spec_->laurent(); }
    std::size_t nvars() const { return spec_->vars.size(); }
    const std::vector<std::string>& vars() const { return spec_->vars; }

    /// The coefficient ring of a Laurent ring; the ring itself otherwise.
    Ring base() const {
        if (!is_laurent()) return *this;
        RingSpec s = *spec_;
        s.vars.clear();
        return Ring(std::move(s));
    }
    bool is_field() const { return !is_laurent() && spec_->base != BaseKind::integers; }

    bool operator==(const Ring& o) const { return spec_ == o.spec_ || *spec_ == *o.spec_; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string b;
        switch (spec_->base) {
            case BaseKind::integers: b = "Z"; break;
            case BaseKind::rationals: b = "Q"; break;
            case BaseKind::prime_field: b = "F" + std::to_string(spec_->p); break;
        }
        if (!is_laurent()) return b;
        std::string v;
        for (std::size_t i = 0; i < spec_->vars.size(); ++i) v += (i ? "," : "") + spec_->vars[i];
        return b + "[" + v + "^(+-1)]";
    }

private:
    explicit Ring(RingSpec s) : spec_(std::make_shared<const RingSpec>(std::move(s))) {}
    std::shared_ptr<const RingSpec> spec_;
};

/// Element of the coefficient ring (Z, Q or F_p) as a reduced fraction.
/// Over Z and F_p the denominator is always 1.
struct Coeff {
    BigInt num{0};
    BigInt den{1};

    Coeff() = default;
    Coeff(BigInt n) : num(std::move(n)) {}
    Coeff(long long n) : num(n) {}
    Coeff(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    void normalize() {
        if (den == 0) throw InvalidInput("zero denominator");
        if (den < 0) { num = -num; den = -den; }
        if (den != 1) {
            BigInt g = boost::multiprecision::gcd(num, den);
            if (g != 1 && g != 0) { num /= g; den /= g; }
            if (num == 0) den = 1;
        }
    }
    bool is_zero() const { return num == 0; }
    bool operator==(const Coeff&) const = default;
    bool operator<(const Coeff& o) const { return num * o.den < o.num * den; }
};

namespace detail {

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Coeff reduce(const RingSpec& r, Coeff c) {
    if (r.base == BaseKind::prime_field) {
        if (c.den != 1) {
            // interpret a/b as a * b^{-1} mod p
            BigInt p = r.p;
            BigInt b = mod_floor(c.den, p);
            if (b == 0) throw InvalidInput("denominator divisible by the characteristic");
            BigInt inv = boost::multiprecision::powm(b, p - 2, p);
            return Coeff(mod_floor(c.num * inv, p));
        }
        return Coeff(mod_floor(c.num, BigInt(r.p)));
    }
    if (r.base == BaseKind::integers && c.den != 1) throw InvalidInput("non-integral value in Z");
    return c;
}

inline Coeff add(const RingSpec& r, const Coeff& a, const Coeff& b) {
    if (a.den == 1 && b.den == 1) {
        Coeff s(a.num + b.num);
        if (r.base == BaseKind::prime_field && (s.num >= r.p || s.num < 0)) s.num = mod_floor(s.num, BigInt(r.p));
        return s;
    }
    return Coeff(a.num * b.den + b.num * a.den, a.den * b.den);
}

inline Coeff neg(const RingSpec& r, const Coeff& a) {
    if (r.base == BaseKind::prime_field) return Coeff(a.num == 0 ? BigInt(0) : BigInt(r.p) - a.num);
    return Coeff(BigInt(-a.num), a.den);
}

inline Coeff mul(const RingSpec& r, const Coeff& a, const Coeff& b) {
    if (a.den == 1 && b.den == 1) {
        Coeff m(a.num * b.num);
        if (r.base == BaseKind::prime_field) m.num = mod_floor(m.num, BigInt(r.p));
        return m;
    }
    return Coeff(a.num * b.num, a.den * b.den);
}

inline bool coeff_is_unit(const RingSpec& r, const Coeff& a) {
    if (a.is_zero()) return false;
    if (r.base == BaseKind::integers) return a.num == 1 || a.num == -1;
    return true;
}

/// a / b in the coefficient ring, if it exists.
inline std::optional<Coeff> div(const RingSpec& r, const Coeff& a, const Coeff& b) {
    if (b.is_zero()) return std::nullopt;
    switch (r.base) {
        case BaseKind::integers:
            if (a.num % b.num != 0) return std::nullopt;
            return Coeff(BigInt(a.num / b.num));
        case BaseKind::rationals:
            return Coeff(a.num * b.den, a.den * b.num);
        case BaseKind::prime_field: {
            BigInt p = r.p;
            BigInt inv = boost::multiprecision::powm(b.num, p - 2, p);
            return Coeff(mod_floor(a.num * inv, p));
        }
    }
    return std::nullopt;
}

inline std::string coeff_to_string(const Coeff& c) {
    if (c.den == 1) return c.num.str();
    return c.num.str() + "/" + c.den.str();
}

}  // namespace detail

using Exponents = std::vector<int>;

struct Term {
    Exponents exp;
    Coeff coeff;
    bool operator==(const Term&) const = default;
};

/// An element of a ring from the tower, in canonical form: nonzero terms
/// sorted by exponent vector. Non-Laurent elements have at most one term
/// with an empty exponent vector.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(Ring ring) : ring_(std::move(ring)) {}
    Scalar(Ring ring, long long v) : ring_(std::move(ring)) { set_constant(Coeff(v)); }
    Scalar(Ring ring, Coeff c) : ring_(std::move(ring)) { set_constant(std::move(c)); }

    static Scalar zero(const Ring& r) { return Scalar(r); }
    static Scalar one(const Ring& r) { return Scalar(r, 1); }
    static Scalar monomial(const Ring& r, Exponents e, Coeff c) {
        if (e.size() != r.nvars()) throw InvalidInput("monomial: exponent vector has wrong length");
        Scalar s(r);
        Coeff cc = detail::reduce(r.spec(), std::move(c));
        if (!cc.is_zero()) s.terms_.push_back(Term{std::move(e), std::move(cc)});
        return s;
    }
    /// Builds a canonical element from arbitrary (possibly repeated) terms.
    static Scalar from_terms(const Ring& r, std::vector<Term> terms) {
        for (auto& t : terms) {
            if (t.exp.size() != r.nvars()) throw InvalidInput("term has wrong number of exponents");
            t.coeff = detail::reduce(r.spec(), std::move(t.coeff));
        }
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
        Scalar s(r);
        for (auto& t : terms) {
            if (!s.terms_.empty() && s.terms_.back().exp == t.exp)
                s.terms_.back().coeff = detail::add(r.spec(), s.terms_.back().coeff, t.coeff);
            else
                s.terms_.push_back(std::move(t));
            if (s.terms_.back().coeff.is_zero()) s.terms_.pop_back();
        }
        return s;
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].coeff.num == 1 && terms_[0].coeff.den == 1 &&
               std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](int e) { return e == 0; });
    }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](int e) { return e == 0; }));
    }
    /// Constant coefficient (coefficient of the zero exponent vector).
    Coeff constant_coeff() const {
        for (const auto& t : terms_)
            if (std::all_of(t.exp.begin(), t.exp.end(), [](int e) { return e == 0; })) return t.coeff;
        return Coeff(0);
    }

    /// Units: nonzero over a field; +-1 over Z; unit coefficient times one
    /// monomial over a Laurent ring.
    bool is_unit() const {
        return terms_.size() == 1 && detail::coeff_is_unit(ring_.spec(), terms_[0].coeff);
    }

    Scalar operator-() const {
        Scalar s(ring_);
        s.terms_.reserve(terms_.size());
        for (const auto& t : terms_) s.terms_.push_back(Term{t.exp, detail::neg(ring_.spec(), t.coeff)});
        return s;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const RingSpec& r = a.ring_.spec();
        Scalar s(a.ring_);
        s.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exp < b.terms_[j].exp)) {
                s.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].exp < a.terms_[i].exp) {
                s.terms_.push_back(b.terms_[j++]);
            } else {
                Coeff c = detail::add(r, a.terms_[i].coeff, b.terms_[j].coeff);
                if (!c.is_zero()) s.terms_.push_back(Term{a.terms_[i].exp, std::move(c)});
                ++i;
                ++j;
            }
        }
        return s;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        if (a.is_zero() || b.is_zero()) return Scalar(a.ring_);
        const RingSpec& r = a.ring_.spec();
        if (a.terms_.size() == 1 && b.terms_.size() == 1) {
            Scalar s(a.ring_);
            Coeff c = detail::mul(r, a.terms_[0].coeff, b.terms_[0].coeff);
            if (c.is_zero()) return s;
            Exponents e = a.terms_[0].exp;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.terms_[0].exp[k];
            s.terms_.push_back(Term{std::move(e), std::move(c)});
            return s;
        }
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) {
                Exponents e = x.exp;
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += y.exp[k];
                out.push_back(Term{std::move(e), detail::mul(r, x.coeff, y.coeff)});
            }
        return from_terms(a.ring_, std::move(out));
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Ring involution: variables are inverted, coefficients fixed.
    Scalar involution() const {
        if (!ring_.is_laurent()) return *this;
        std::vector<Term> t = terms_;
        for (auto& x : t)
            for (auto& e : x.exp) e = -e;
        std::reverse(t.begin(), t.end());
        Scalar s(ring_);
        s.terms_ = std::move(t);
        return s;
    }

    /// Inverse of a unit.
    Scalar inverse() const {
        if (!is_unit()) throw NotAUnit("element " + to_string() + " is not a unit of " + ring_.to_string());
        Exponents e = terms_[0].exp;
        for (auto& x : e) x = -x;
        Coeff c = *detail::div(ring_.spec(), Coeff(1), terms_[0].coeff);
        return monomial(ring_, std::move(e), std::move(c));
    }

    /// Exact quotient a / b, or nullopt when b does not divide a.
    friend std::optional<Scalar> divide_exact(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        if (b.is_zero()) return std::nullopt;
        if (a.is_zero()) return Scalar(a.ring_);
        const RingSpec& r = a.ring_.spec();
        if (b.terms_.size() == 1) {
            auto c = detail::div(r, Coeff(1), b.terms_[0].coeff);
            Scalar inv;
            if (c) {
                Exponents e = b.terms_[0].exp;
                for (auto& x : e) x = -x;
                inv = monomial(a.ring_, std::move(e), *c);
                return a * inv;
            }
            // coefficient over Z is not a unit: divide termwise
            std::vector<Term> out;
            for (const auto& t : a.terms_) {
                auto q = detail::div(r, t.coeff, b.terms_[0].coeff);
                if (!q) return std::nullopt;
                Exponents e = t.exp;
                for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.terms_[0].exp[k];
                out.push_back(Term{std::move(e), *q});
            }
            return from_terms(a.ring_, std::move(out));
        }
        // Multivariate exact division with lex-leading terms. In an integral
        // domain the quotient's exponents lie in the box bounded by the
        // per-variable degree spans, which guarantees termination.
        const std::size_t n = a.ring_.nvars();
        Exponents lo(n), hi(n);
        for (std::size_t k = 0; k < n; ++k) {
            lo[k] = a.min_exp(k) - b.min_exp(k);
            hi[k] = a.max_exp(k) - b.max_exp(k);
            if (lo[k] > hi[k]) return std::nullopt;
        }
        Scalar rem = a;
        std::vector<Term> quot;
        const Term& lb = b.terms_.back();
        while (!rem.is_zero()) {
            const Term& lr = rem.terms_.back();
            Exponents e(n);
            for (std::size_t k = 0; k < n; ++k) {
                e[k] = lr.exp[k] - lb.exp[k];
                if (e[k] < lo[k] || e[k] > hi[k]) return std::nullopt;
            }
            auto c = detail::div(r, lr.coeff, lb.coeff);
            if (!c) return std::nullopt;
            Scalar m = monomial(a.ring_, e, *c);
            quot.push_back(Term{std::move(e), *c});
            rem = rem - m * b;
        }
        return from_terms(a.ring_, std::move(quot));
    }

    int min_exp(std::size_t var) const {
        int m = 0;
        bool first = true;
        for (const auto& t : terms_)
            if (first || t.exp[var] < m) { m = t.exp[var]; first = false; }
        return m;
    }
    int max_exp(std::size_t var) const {
        int m = 0;
        bool first = true;
        for (const auto& t : terms_)
            if (first || t.exp[var] > m) { m = t.exp[var]; first = false; }
        return m;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Term& t = *it;
            Coeff c = t.coeff;
            bool negative = c.num < 0;
            if (ring_.base_kind() == BaseKind::prime_field) negative = false;
            if (negative) c.num = -c.num;
            std::string mono;
            for (std::size_t k = 0; k < t.exp.size(); ++k) {
                if (t.exp[k] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += ring_.vars()[k];
                if (t.exp[k] != 1) mono += "^" + std::to_string(t.exp[k]);
            }
            std::string body;
            bool unit_coeff = c.num == 1 && c.den == 1;
            if (mono.empty())
                body = detail::coeff_to_string(c);
            else if (unit_coeff)
                body = mono;
            else
                body = detail::coeff_to_string(c) + "*" + mono;
            if (out.empty())
                out = (negative ? "-" : "") + body;
            else
                out += (negative ? " - " : " + ") + body;
        }
        return out;
    }

    /// Re-expresses this element in a ring with more variables or a
    /// compatible coefficient ring. var_map[k] is the index in `target`
    /// of this ring's k-th variable.
    Scalar embed(const Ring& target, const std::vector<std::size_t>& var_map) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            Exponents e(target.nvars(), 0);
            for (std::size_t k = 0; k < t.exp.size(); ++k) e[var_map[k]] = t.exp[k];
            out.push_back(Term{std::move(e), t.coeff});
        }
        return from_terms(target, std::move(out));
    }

private:
    void set_constant(Coeff c) {
        c = detail::reduce(ring_.spec(), std::move(c));
        terms_.clear();
        if (!c.is_zero()) terms_.push_back(Term{Exponents(ring_.nvars(), 0), std::move(c)});
    }
    static void check_same(const Scalar& a, const Scalar& b) {
        if (a.ring_ != b.ring_)
            throw IncompatibleRings("arithmetic between " + a.ring_.to_string() + " and " + b.ring_.to_string());
    }

    Ring ring_;
    std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

/// The variable `name` of a Laurent ring as a ring element.
inline Scalar variable(const Ring& r, const std::string& name, int power = 1) {
    const auto& v = r.vars();
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) throw InvalidInput("ring " + r.to_string() + " has no variable '" + name + "'");
    Exponents e(v.size(), 0);
    e[static_cast<std::size_t>(it - v.begin())] = power;
    return Scalar::monomial(r, std::move(e), Coeff(1));
}

/// Maps `x` into `target`. Variables are matched by name and must all
/// exist in `target`; coefficients go Z -> any, Q -> Q or F_p, F_p -> F_p.
inline Scalar convert(const Scalar& x, const Ring& target) {
    const Ring& src = x.ring();
    if (src == target) return x;
    BaseKind a = src.base_kind(), b = target.base_kind();
    bool ok = a == BaseKind::integers || (a == BaseKind::rationals && b != BaseKind::integers) ||
              (a == BaseKind::prime_field && b == BaseKind::prime_field &&
               src.characteristic() == target.characteristic());
    if (!ok) throw IncompatibleRings("cannot map " + src.to_string() + " into " + target.to_string());
    std::vector<std::size_t> vm;
    for (const auto& v : src.vars()) {
        auto it = std::find(target.vars().begin(), target.vars().end(), v);
        if (it == target.vars().end())
            throw IncompatibleRings("variable '" + v + "' missing from " + target.to_string());
        vm.push_back(static_cast<std::size_t>(it - target.vars().begin()));
    }
    return x.embed(target, vm);
}

/// Substitutes 1 for every variable, landing in the coefficient ring.
inline Scalar evaluate_at_one(const Scalar& x) {
    Ring b = x.ring().base();
    std::vector<Term> t;
    for (const auto& term : x.terms()) t.push_back(Term{Exponents{}, term.coeff});
    return Scalar::from_terms(b, std::move(t));
}

/// Parses the scalar text syntax: "-12", "3/4", "2*t^-3*s^1 + 1", "-t".
inline Scalar parse_scalar(const Ring& r, const std::string& text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> Scalar {
        throw ParseError("cannot parse scalar '" + text + "' in " + r.to_string() + ": " + why);
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&](BigInt& out) -> bool {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) return false;
        out = BigInt(text.substr(start, pos - start));
        return true;
    };
    std::vector<Term> terms;
    skip();
    if (pos == text.size()) fail("empty");
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Coeff coeff(sign);
        Exponents exp(r.nvars(), 0);
        bool have_factor = false;
        while (true) {
            skip();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                BigInt num, den(1);
                read_int(num);
                skip();
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    skip();
                    if (!read_int(den)) fail("bad denominator");
                    if (den == 0) fail("zero denominator");
                }
                coeff = Coeff(coeff.num * num, coeff.den * den);
            } else if (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                std::size_t start = pos;
                while (pos < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                    ++pos;
                std::string name = text.substr(start, pos - start);
                const auto& v = r.vars();
                auto it = std::find(v.begin(), v.end(), name);
                if (it == v.end()) fail("unknown variable '" + name + "'");
                int power = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    int s = 1;
                    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
                        s = text[pos] == '-' ? -1 : 1;
                        ++pos;
                    }
                    BigInt e;
                    if (!read_int(e)) fail("bad exponent");
                    power = s * static_cast<int>(e);
                }
                exp[static_cast<std::size_t>(it - v.begin())] += power;
            } else {
                fail("expected a number or variable");
            }
            have_factor = true;
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!have_factor) fail("empty term");
        if (r.base_kind() == BaseKind::integers && coeff.den != 1) fail("fraction in Z");
        terms.push_back(Term{std::move(exp), std::move(coeff)});
    }
    return Scalar::from_terms(r, std::move(terms));
}

}  // namespace wtorsion
