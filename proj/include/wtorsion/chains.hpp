// Based chain complexes, signed complexes and the sign algebra
// (epsilon, beta, alpha, eta bookkeeping) for sum, suspension, dual,
// mapping cone and tensor product.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wtorsion/errors.hpp"
#include "wtorsion/k1.hpp"
#include "wtorsion/matrix.hpp"

namespace wtorsion {

/// Finite free chain complex with bases. Degrees run over [lo, hi]; ranks
/// outside are zero. d(r) maps degree r to degree r-1.
class BasedComplex {
public:
    BasedComplex() = default;
    explicit BasedComplex(Ring r) : ring_(std::move(r)) {}

    /// diffs[i] is d at degree lo + 1 + i, for degrees lo+1 .. lo+dims.size()-1.
    BasedComplex(Ring r, int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs)
        : ring_(std::move(r)), lo_(lo), dims_(std::move(dims)) {
        if (!dims_.empty() && diffs.size() + 1 != dims_.size())
            throw InvalidInput("complex needs " + std::to_string(dims_.size() ? dims_.size() - 1 : 0) +
                               " differentials, got " + std::to_string(diffs.size()));
        d_.clear();
        for (std::size_t i = 0; i < diffs.size(); ++i) {
            int deg = lo_ + 1 + static_cast<int>(i);
            const Matrix& m = diffs[i];
            if (m.rows() != dim(deg - 1) || m.cols() != dim(deg))
                throw DimensionMismatch("d_" + std::to_string(deg) + " should be " + std::to_string(dim(deg - 1)) +
                                        "x" + std::to_string(dim(deg)) + ", got " + m.shape());
            if ((m.rows() || m.cols()) && m.ring() != ring_)
                throw IncompatibleRings("differential d_" + std::to_string(deg) + " over the wrong ring");
            d_.push_back(m.rows() || m.cols() ? m : Matrix(ring_, m.rows(), m.cols()));
        }
        for (int deg = lo_ + 2; deg <= hi(); ++deg)
            if (!(d(deg - 1) * d(deg)).is_zero())
                throw InvalidComplex("d_" + std::to_string(deg - 1) + " d_" + std::to_string(deg) + " != 0");
    }

    /// Complex in degrees 0 .. dims.size()-1.
    static BasedComplex make(const Ring& r, std::vector<std::size_t> dims, std::vector<Matrix> diffs) {
        return BasedComplex(r, 0, std::move(dims), std::move(diffs));
    }

    const Ring& ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool empty() const { return dims_.empty(); }
    std::size_t dim(int r) const {
        if (r < lo_ || r > hi()) return 0;
        return dims_[static_cast<std::size_t>(r - lo_)];
    }
    Matrix d(int r) const {
        if (r <= lo_ || r > hi()) return Matrix(ring_, dim(r - 1), dim(r));
        return d_[static_cast<std::size_t>(r - lo_ - 1)];
    }
    std::size_t total_rank() const {
        std::size_t s = 0;
        for (auto x : dims_) s += x;
        return s;
    }
    /// Degree range [lo, hi] of every complex in the list.
    static std::pair<int, int> span(std::initializer_list<const BasedComplex*> cs) {
        int lo = 0, hi = -1;
        bool first = true;
        for (auto c : cs) {
            if (c->empty()) continue;
            if (first) {
                lo = c->lo();
                hi = c->hi();
                first = false;
            } else {
                lo = std::min(lo, c->lo());
                hi = std::max(hi, c->hi());
            }
        }
        return {lo, hi};
    }

    /// Same ranks and differentials, ignoring how zero degrees are padded.
    bool same_as(const BasedComplex& o) const {
        if (ring_ != o.ring_) return false;
        auto [a, b] = span({this, &o});
        for (int r = a; r <= b; ++r)
            if (dim(r) != o.dim(r)) return false;
        for (int r = a; r <= b + 1; ++r)
            if (d(r) != o.d(r)) return false;
        return true;
    }

    /// Rebuild over [lo, hi] (which must contain the support).
    BasedComplex reindexed(int lo, int hi) const {
        std::vector<std::size_t> dims;
        std::vector<Matrix> diffs;
        for (int r = lo; r <= hi; ++r) {
            dims.push_back(dim(r));
            if (r > lo) diffs.push_back(d(r));
        }
        return BasedComplex(ring_, lo, dims, diffs);
    }

    BasedComplex convert(const Ring& target) const {
        std::vector<Matrix> diffs;
        for (int r = lo_ + 1; r <= hi(); ++r) diffs.push_back(d(r).convert(target));
        return BasedComplex(target, lo_, dims_, diffs);
    }

    std::string describe() const {
        std::string s = "ranks(";
        for (int r = lo_; r <= hi(); ++r) s += (r > lo_ ? "," : "") + std::to_string(dim(r));
        return s + ") from degree " + std::to_string(lo_);
    }

private:
    Ring ring_;
    int lo_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> d_;
};

/// Based complex with a sign eta in the image of epsilon, stored as a bit
/// (0 or tau(-1)).
struct SignedComplex {
    BasedComplex complex;
    int eta = 0;

    const Ring& ring() const { return complex.ring(); }
};

inline int parity(long long x) { return static_cast<int>(((x % 2) + 2) % 2); }

inline long long euler(const BasedComplex& c) {
    long long e = 0;
    for (int r = c.lo(); r <= c.hi(); ++r) e += (parity(r) ? -1 : 1) * static_cast<long long>(c.dim(r));
    return e;
}
inline long long even_rank(const BasedComplex& c) {
    long long e = 0;
    for (int r = c.lo(); r <= c.hi(); ++r)
        if (!parity(r)) e += static_cast<long long>(c.dim(r));
    return e;
}
inline long long odd_rank(const BasedComplex& c) {
    long long e = 0;
    for (int r = c.lo(); r <= c.hi(); ++r)
        if (parity(r)) e += static_cast<long long>(c.dim(r));
    return e;
}

/// epsilon(a, b) = (a b) tau(-1).
inline K1Element epsilon(const Ring& r, long long a, long long b) { return K1Element::sign(r, eps_bit(a, b)); }

/// Intertwining: sum over i > j of eps(C_2i, D_2j) - eps(C_2i+1, D_2j+1).
inline int beta_bit(const BasedComplex& c, const BasedComplex& d) {
    long long s = 0;
    for (int p = c.lo(); p <= c.hi(); ++p)
        for (int q = d.lo(); q <= d.hi() && q < p; ++q)
            if (parity(p) == parity(q)) s += static_cast<long long>(c.dim(p) * d.dim(q));
    return parity(s);
}
inline K1Element beta(const BasedComplex& c, const BasedComplex& d) { return K1Element::sign(c.ring(), beta_bit(c, d)); }

/// alpha_n(C): sum of eps(C^r, C^r) over r = n+2, n+3 (mod 4).
inline int alpha_bit(const BasedComplex& c, long long n) {
    long long s = 0;
    for (int r = c.lo(); r <= c.hi(); ++r) {
        long long m = (((r - n) % 4) + 4) % 4;
        if (m == 2 || m == 3) s += static_cast<long long>(c.dim(r));
    }
    return parity(s);
}
inline K1Element alpha(const BasedComplex& c, long long n) { return K1Element::sign(c.ring(), alpha_bit(c, n)); }

/// Shift up by k degrees; differentials unchanged.
inline BasedComplex shift(const BasedComplex& c, int k) {
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int r = c.lo(); r <= c.hi(); ++r) {
        dims.push_back(c.dim(r));
        if (r > c.lo()) diffs.push_back(c.d(r));
    }
    return BasedComplex(c.ring(), c.lo() + k, dims, diffs);
}

/// Suspension: SC_r = C_{r-1}, eta_SC = -eta_C.
inline SignedComplex suspend(const SignedComplex& c) { return {shift(c.complex, 1), c.eta}; }

inline BasedComplex direct_sum(const BasedComplex& c, const BasedComplex& d) {
    if (c.ring() != d.ring()) throw IncompatibleRings("direct sum over different rings");
    auto [lo, hi] = BasedComplex::span({&c, &d});
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int r = lo; r <= hi; ++r) {
        dims.push_back(c.dim(r) + d.dim(r));
        if (r > lo) diffs.push_back(direct_sum(c.d(r), d.d(r)));
    }
    return BasedComplex(c.ring(), lo, dims, diffs);
}

/// eta_{C+D} = eta_C + eta_D - beta(C,D) + eps(C_odd, chi(D)).
inline int direct_sum_eta(const BasedComplex& c, int eta_c, const BasedComplex& d, int eta_d) {
    return (eta_c ^ eta_d ^ beta_bit(c, d) ^ eps_bit(odd_rank(c), euler(d))) & 1;
}

inline SignedComplex direct_sum(const SignedComplex& c, const SignedComplex& d) {
    return {direct_sum(c.complex, d.complex), direct_sum_eta(c.complex, c.eta, d.complex, d.eta)};
}

/// Dual complex C^{n-*}: degree r is the dual of C_{n-r}, with
/// differential (-1)^r (d_{n-r+1})^*.
inline BasedComplex dual(const BasedComplex& c, long long n) {
    if (c.empty()) return BasedComplex(c.ring());
    int lo = static_cast<int>(n) - c.hi(), hi = static_cast<int>(n) - c.lo();
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int r = lo; r <= hi; ++r) {
        dims.push_back(c.dim(static_cast<int>(n) - r));
        if (r > lo) diffs.push_back(c.d(static_cast<int>(n) - r + 1).star().signed_by(parity(r)));
    }
    return BasedComplex(c.ring(), lo, dims, diffs);
}

/// eta of the dual: (-)^{n+1} eta* + (-)^{n+1} beta(C,C)* + alpha_n(C).
inline int dual_eta(const BasedComplex& c, int eta, long long n) {
    return (eta ^ beta_bit(c, c) ^ alpha_bit(c, n)) & 1;
}

inline SignedComplex dual(const SignedComplex& c, long long n) {
    return {dual(c.complex, n), dual_eta(c.complex, c.eta, n)};
}

/// T: for phi from the dual of degree p to degree q, (-1)^{pq} phi^*.
inline Matrix t_flip(const Matrix& phi, long long p, long long q) { return phi.star().signed_by(parity(p * q)); }

/// Degreewise family of matrices between two complexes, f(r): source_r -> target_{r+k}.
class Family {
public:
    Family() = default;
    Family(BasedComplex source, BasedComplex target, int degree)
        : source_(std::move(source)), target_(std::move(target)), k_(degree) {}

    const BasedComplex& source() const { return source_; }
    const BasedComplex& target() const { return target_; }
    int degree() const { return k_; }
    const Ring& ring() const { return source_.ring(); }

    Matrix operator()(int r) const {
        auto it = m_.find(r);
        if (it != m_.end()) return it->second;
        return Matrix(ring(), target_.dim(r + k_), source_.dim(r));
    }
    void set(int r, Matrix m) {
        if (m.rows() != target_.dim(r + k_) || m.cols() != source_.dim(r))
            throw DimensionMismatch("component at degree " + std::to_string(r) + " should be " +
                                    std::to_string(target_.dim(r + k_)) + "x" + std::to_string(source_.dim(r)) +
                                    ", got " + m.shape());
        if (m.rows() == 0 || m.cols() == 0) return;
        if (m.ring() != ring()) throw IncompatibleRings("component over the wrong ring");
        m_[r] = std::move(m);
    }
    /// Degrees where the source is nonzero.
    std::pair<int, int> range() const { return {source_.lo(), source_.hi()}; }

protected:
    BasedComplex source_, target_;
    int k_ = 0;
    std::map<int, Matrix> m_;
};

/// Chain map f: C -> D with f d = d f verified at construction.
class ChainMap : public Family {
public:
    ChainMap() = default;
    ChainMap(BasedComplex source, BasedComplex target, const std::map<int, Matrix>& comps, bool check = true)
        : Family(std::move(source), std::move(target), 0) {
        if (source_.ring() != target_.ring()) throw IncompatibleRings("chain map between complexes over different rings");
        for (const auto& [r, m] : comps) set(r, m);
        if (check) verify();
    }
    static ChainMap identity(const BasedComplex& c) {
        std::map<int, Matrix> m;
        for (int r = c.lo(); r <= c.hi(); ++r) m[r] = Matrix::identity(c.ring(), c.dim(r));
        return ChainMap(c, c, m, false);
    }
    static ChainMap zero(const BasedComplex& c, const BasedComplex& d) { return ChainMap(c, d, {}, false); }

    void verify() const {
        auto [lo, hi] = BasedComplex::span({&source_, &target_});
        for (int r = lo; r <= hi + 1; ++r)
            if ((*this)(r - 1) * source_.d(r) != target_.d(r) * (*this)(r))
                throw InvalidComplex("chain map relation f d = d f fails at degree " + std::to_string(r));
    }

    ChainMap operator-() const {
        std::map<int, Matrix> m;
        for (const auto& [r, x] : m_) m[r] = -x;
        return ChainMap(source_, target_, m, false);
    }
    friend ChainMap operator+(const ChainMap& a, const ChainMap& b) {
        std::map<int, Matrix> m;
        for (int r = a.source_.lo(); r <= a.source_.hi(); ++r) m[r] = a(r) + b(r);
        return ChainMap(a.source_, a.target_, m, false);
    }
    /// g after f.
    friend ChainMap compose(const ChainMap& g, const ChainMap& f) {
        if (!g.source_.same_as(f.target_)) throw DimensionMismatch("compose: target of f is not source of g");
        std::map<int, Matrix> m;
        for (int r = f.source_.lo(); r <= f.source_.hi(); ++r) m[r] = g(r) * f(r);
        return ChainMap(f.source_, g.target_, m, false);
    }
    ChainMap convert(const Ring& target) const {
        std::map<int, Matrix> m;
        for (const auto& [r, x] : m_) m[r] = x.convert(target);
        return ChainMap(source_.convert(target), target_.convert(target), m, false);
    }
};

/// Chain homotopy h between f and g: g - f = d h + h d.
class ChainHomotopy : public Family {
public:
    ChainHomotopy() = default;
    ChainHomotopy(BasedComplex source, BasedComplex target, const std::map<int, Matrix>& comps)
        : Family(std::move(source), std::move(target), 1) {
        for (const auto& [r, m] : comps) set(r, m);
    }
    static ChainHomotopy zero(const BasedComplex& c, const BasedComplex& d) { return ChainHomotopy(c, d, {}); }

    /// d h + h d at degree r.
    Matrix boundary(int r) const { return target_.d(r + 1) * (*this)(r) + (*this)(r - 1) * source_.d(r); }

    bool relates(const ChainMap& f, const ChainMap& g) const {
        auto [lo, hi] = BasedComplex::span({&source_, &target_});
        for (int r = lo; r <= hi; ++r)
            if (g(r) - f(r) != boundary(r)) return false;
        return true;
    }
    ChainHomotopy convert(const Ring& target) const {
        std::map<int, Matrix> m;
        for (const auto& [r, x] : m_) m[r] = x.convert(target);
        return ChainHomotopy(source_.convert(target), target_.convert(target), m);
    }
};

/// Dual chain map f^{n-*}: D^{n-*} -> C^{n-*}, degree r component (f_{n-r})^*.
inline ChainMap dual_map(const ChainMap& f, long long n) {
    BasedComplex dc = dual(f.source(), n), dd = dual(f.target(), n);
    std::map<int, Matrix> m;
    auto [lo, hi] = BasedComplex::span({&dc, &dd});
    for (int r = lo; r <= hi; ++r) m[r] = f(static_cast<int>(n) - r).star();
    return ChainMap(dd, dc, m);
}

/// Mapping cone: C(f)_r = D_r + C_{r-1}, d = [[d_D, (-)^{r+1} f], [0, d_C]].
inline BasedComplex cone(const ChainMap& f) {
    const BasedComplex& c = f.source();
    const BasedComplex& d = f.target();
    BasedComplex sc = shift(c, 1);
    auto [lo, hi] = BasedComplex::span({&d, &sc});
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    const Ring& ring = c.ring();
    for (int r = lo; r <= hi; ++r) {
        dims.push_back(d.dim(r) + c.dim(r - 1));
        if (r == lo) continue;
        diffs.push_back(assemble(ring, {d.dim(r - 1), c.dim(r - 2)}, {d.dim(r), c.dim(r - 1)},
                                 {{d.d(r), f(r - 1).signed_by(parity(r + 1))}, {Matrix(), c.d(r - 1)}}));
    }
    return BasedComplex(ring, lo, dims, diffs);
}

/// Signed mapping cone: eta = eta_{D + SC}.
inline SignedComplex cone(const ChainMap& f, int eta_source, int eta_target) {
    BasedComplex sc = shift(f.source(), 1);
    return {cone(f), direct_sum_eta(f.target(), eta_target, sc, eta_source)};
}

/// Combined coefficient ring of a tensor product, with the variable maps of
/// each factor. Clashing variable names on the right are renamed.
struct TensorRing {
    Ring ring;
    std::vector<std::size_t> left_vars, right_vars;
};

inline TensorRing tensor_ring(const Ring& a, const Ring& b) {
    Ring base;
    if (a == Ring::integers())
        base = b.base();
    else if (b == Ring::integers())
        base = a.base();
    else if (a.base() == b.base())
        base = a.base();
    else
        throw IncompatibleRings("cannot tensor " + a.to_string() + " with " + b.to_string());
    std::vector<std::string> vars = a.vars();
    TensorRing out;
    for (std::size_t i = 0; i < vars.size(); ++i) out.left_vars.push_back(i);
    static const char* candidates[] = {"s", "u", "v", "w", "x", "y", "t", "z"};
    for (const auto& v : b.vars()) {
        std::string name = v;
        auto taken = [&](const std::string& x) {
            return std::find(vars.begin(), vars.end(), x) != vars.end() ||
                   (x != v && std::find(b.vars().begin(), b.vars().end(), x) != b.vars().end());
        };
        if (taken(name)) {
            name.clear();
            for (const char* c : candidates)
                if (!taken(c)) {
                    name = c;
                    break;
                }
            for (int k = 1; name.empty(); ++k)
                if (!taken(v + std::to_string(k))) name = v + std::to_string(k);
        }
        out.right_vars.push_back(vars.size());
        vars.push_back(name);
    }
    out.ring = vars.empty() ? base : Ring::laurent(base, vars);
    return out;
}

inline Matrix embed_matrix(const Matrix& m, const Ring& target, const std::vector<std::size_t>& var_map) {
    return m.map([&](const Scalar& x) { return x.embed(target, var_map); }, target);
}

/// Offsets of the blocks C_s (x) D_{r-s} inside (C (x) D)_r, ascending s.
inline std::vector<std::pair<int, std::size_t>> tensor_offsets(const BasedComplex& c, const BasedComplex& d, int r) {
    std::vector<std::pair<int, std::size_t>> out;
    std::size_t off = 0;
    for (int s = c.lo(); s <= c.hi(); ++s) {
        out.push_back({s, off});
        off += c.dim(s) * d.dim(r - s);
    }
    return out;
}

inline std::size_t tensor_dim(const BasedComplex& c, const BasedComplex& d, int r) {
    std::size_t n = 0;
    for (int s = c.lo(); s <= c.hi(); ++s) n += c.dim(s) * d.dim(r - s);
    return n;
}

namespace detail {

inline BasedComplex embed_complex(const BasedComplex& c, const TensorRing& tr, bool left) {
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int r = c.lo(); r <= c.hi(); ++r) {
        dims.push_back(c.dim(r));
        if (r > c.lo()) diffs.push_back(embed_matrix(c.d(r), tr.ring, left ? tr.left_vars : tr.right_vars));
    }
    return BasedComplex(tr.ring, c.lo(), dims, diffs);
}

}  // namespace detail

namespace detail {

/// Tensor product of two complexes over the same ring.
inline BasedComplex tensor_same(const BasedComplex& c, const BasedComplex& d) {
    const Ring& ring = c.ring();
    if (c.empty() || d.empty()) return BasedComplex(ring);
    int lo = c.lo() + d.lo(), hi = c.hi() + d.hi();
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int r = lo; r <= hi; ++r) {
        dims.push_back(tensor_dim(c, d, r));
        if (r == lo) continue;
        Matrix m(ring, tensor_dim(c, d, r - 1), tensor_dim(c, d, r));
        auto src = tensor_offsets(c, d, r), dst = tensor_offsets(c, d, r - 1);
        for (std::size_t i = 0; i < src.size(); ++i) {
            int s = src[i].first;
            std::size_t col = src[i].second;
            if (c.dim(s) * d.dim(r - s) == 0) continue;
            // x (x) d_D y stays in the C_s block
            Matrix a = kron(Matrix::identity(ring, c.dim(s)), d.d(r - s));
            if (a.rows()) m.set_block(dst[i].second, col, a);
            // (-)^{r-s} d_C x (x) y lands in the C_{s-1} block
            if (i > 0) {
                Matrix b = kron(c.d(s), Matrix::identity(ring, d.dim(r - s))).signed_by(parity(r - s));
                if (b.rows()) m.set_block(dst[i - 1].second, col, b);
            }
        }
        diffs.push_back(m);
    }
    return BasedComplex(ring, lo, dims, diffs);
}

/// Components of x (x) y between tensor products over one ring, for
/// families x of degree k and y of degree l: the block C_s (x) D_t ->
/// C'_{s+k} (x) D'_{t+l} is (-)^{sign(s, t)} kron(x_s, y_t).
inline std::map<int, Matrix> tensor_components(const Family& x, const Family& y, const std::function<int(int, int)>& sign) {
    const BasedComplex& c = x.source();
    const BasedComplex& d = y.source();
    const BasedComplex& c2 = x.target();
    const BasedComplex& d2 = y.target();
    int k = x.degree(), l = y.degree();
    std::map<int, Matrix> out;
    if (c.empty() || d.empty()) return out;
    for (int r = c.lo() + d.lo(); r <= c.hi() + d.hi(); ++r) {
        Matrix m(c.ring(), tensor_dim(c2, d2, r + k + l), tensor_dim(c, d, r));
        auto to = tensor_offsets(c2, d2, r + k + l);
        for (const auto& [s, col] : tensor_offsets(c, d, r)) {
            Matrix b = kron(x(s), y(r - s));
            if (b.rows() == 0 || b.cols() == 0) continue;
            for (const auto& [s2, row] : to)
                if (s2 == s + k) m.set_block(row, col, b.signed_by(sign(s, r - s)));
        }
        out[r] = m;
    }
    return out;
}

}  // namespace detail

/// Tensor product over the combined ring. Degree r is the sum over ascending
/// s of C_s (x) D_{r-s} (row-major), and d(x (x) y) = x (x) d y + (-)^{deg y} d x (x) y.
inline BasedComplex tensor_complex(const BasedComplex& c0, const BasedComplex& d0) {
    TensorRing tr = tensor_ring(c0.ring(), d0.ring());
    return detail::tensor_same(detail::embed_complex(c0, tr, true), detail::embed_complex(d0, tr, false));
}

/// f (x) g between tensor products.
inline ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
    TensorRing tr = tensor_ring(f.ring(), g.ring());
    auto embed = [&](const ChainMap& m, bool left) {
        BasedComplex src = detail::embed_complex(m.source(), tr, left), dst = detail::embed_complex(m.target(), tr, left);
        std::map<int, Matrix> comps;
        for (int r = src.lo(); r <= src.hi(); ++r) comps[r] = embed_matrix(m(r), tr.ring, left ? tr.left_vars : tr.right_vars);
        return ChainMap(src, dst, comps, false);
    };
    ChainMap fe = embed(f, true), ge = embed(g, false);
    BasedComplex src = detail::tensor_same(fe.source(), ge.source()), dst = detail::tensor_same(fe.target(), ge.target());
    return ChainMap(src, dst, detail::tensor_components(fe, ge, [](int, int) { return 0; }));
}

}  // namespace wtorsion
