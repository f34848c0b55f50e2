#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semiab {

using Element = std::uint32_t;

// Raised for invalid tables, mismatched varieties and malformed input.
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Kind { group, comm_ring, nonassoc_ring, rng_star, zmod, gpd };

struct Variety {
    Kind kind = Kind::group;
    unsigned modulus = 0;  // zmod only

    bool operator==(const Variety&) const = default;

    bool is_ring() const {
        return kind == Kind::comm_ring || kind == Kind::nonassoc_ring || kind == Kind::rng_star;
    }
    // Underlying group is abelian by the variety's axioms.
    bool additive() const { return is_ring() || kind == Kind::zmod; }

    std::string id() const {
        switch (kind) {
            case Kind::group: return "group";
            case Kind::comm_ring: return "comm-ring";
            case Kind::nonassoc_ring: return "nonassoc-ring";
            case Kind::rng_star: return "rng-star";
            case Kind::zmod: return "zmod:" + std::to_string(modulus);
            case Kind::gpd: return "gpd-in-group";
        }
        return "?";
    }

    static Variety parse(std::string_view s) {
        if (s == "group") return {Kind::group, 0};
        if (s == "comm-ring") return {Kind::comm_ring, 0};
        if (s == "nonassoc-ring") return {Kind::nonassoc_ring, 0};
        if (s == "rng-star") return {Kind::rng_star, 0};
        if (s == "gpd-in-group") return {Kind::gpd, 0};
        if (s.substr(0, 5) == "zmod:") {
            std::string digits(s.substr(5));
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw AlgebraError("bad zmod modulus in variety '" + std::string(s) + "'");
            unsigned m = static_cast<unsigned>(std::stoul(digits));
            if (m == 0) throw AlgebraError("zmod modulus must be positive");
            return {Kind::zmod, m};
        }
        throw AlgebraError("unknown variety '" + std::string(s) + "'");
    }
};

inline Variety group_variety() { return {Kind::group, 0}; }
inline Variety zmod_variety(unsigned m) { return {Kind::zmod, m}; }

// A finite pointed algebra. The group operation is written additively even
// when it is not commutative; element 0 is the neutral element.
//
// Groupoids in groups are stored as the group of arrows G1 together with the
// idempotent endomorphisms delta = i.d and gamma = i.c (unary[0], unary[1]).
// The object group is the common image of delta and gamma, and composition
// of composable arrows is forced to be x o y = y - gamma(y) + x.
struct Algebra {
    Variety variety;
    std::string name;
    std::size_t n = 1;
    std::vector<Element> add_;   // n*n
    std::vector<Element> neg_;   // n
    std::vector<Element> mul_;   // n*n, rings only
    std::vector<std::vector<Element>> unary_;

    std::size_t order() const { return n; }
    Element add(Element a, Element b) const { return add_[a * n + b]; }
    Element neg(Element a) const { return neg_[a]; }
    Element sub(Element a, Element b) const { return add(a, neg(b)); }
    Element mul(Element a, Element b) const { return mul_[a * n + b]; }
    bool has_mul() const { return !mul_.empty(); }
    Element conj(Element a, Element x) const { return add(add(a, x), neg(a)); }
    // Integer multiple k*x, k >= 0.
    Element times(unsigned k, Element x) const {
        Element r = 0;
        for (unsigned i = 0; i < k; ++i) r = add(r, x);
        return r;
    }
    std::size_t add_order(Element x) const {
        std::size_t k = 1;
        for (Element y = x; y != 0; y = add(y, x)) ++k;
        return k;
    }
};

using AlgPtr = std::shared_ptr<const Algebra>;

struct Morphism {
    AlgPtr dom;
    AlgPtr cod;
    std::vector<Element> map;

    Element operator()(Element x) const { return map[x]; }
    bool operator==(const Morphism& o) const {
        return dom.get() == o.dom.get() && cod.get() == o.cod.get() && map == o.map;
    }
};

// Sorted element set of a parent algebra. `normal` certifies that the set is
// the kernel of some quotient.
struct Subobject {
    AlgPtr parent;
    std::vector<Element> elems;
    bool normal = false;

    std::size_t size() const { return elems.size(); }
    bool contains(Element x) const { return std::binary_search(elems.begin(), elems.end(), x); }
    bool is_zero() const { return elems.size() == 1; }
    bool is_all() const { return parent && elems.size() == parent->n; }
    bool operator==(const Subobject& o) const { return elems == o.elems; }
    bool subset_of(const Subobject& o) const {
        return std::includes(o.elems.begin(), o.elems.end(), elems.begin(), elems.end());
    }
    std::vector<char> mask() const {
        std::vector<char> m(parent->n, 0);
        for (Element e : elems) m[e] = 1;
        return m;
    }
};

// ---------------------------------------------------------------------------
// identity checks

namespace detail {

inline std::string tuple_str(std::initializer_list<Element> xs) {
    std::string s = "(";
    bool first = true;
    for (Element x : xs) {
        if (!first) s += ",";
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

inline std::optional<std::string> check_group(const Algebra& A) {
    const std::size_t n = A.n;
    for (Element a = 0; a < n; ++a) {
        if (A.add(0, a) != a || A.add(a, 0) != a) return "0 is not neutral at " + tuple_str({a});
        if (A.add(a, A.neg(a)) != 0 || A.add(A.neg(a), a) != 0)
            return "inverse fails at " + tuple_str({a});
    }
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            Element ab = A.add(a, b);
            for (Element c = 0; c < n; ++c)
                if (A.add(ab, c) != A.add(a, A.add(b, c)))
                    return "associativity fails at " + tuple_str({a, b, c});
        }
    return std::nullopt;
}

inline std::optional<std::string> check_abelian(const Algebra& A) {
    for (Element a = 0; a < A.n; ++a)
        for (Element b = 0; b < a; ++b)
            if (A.add(a, b) != A.add(b, a)) return "addition not commutative at " + tuple_str({a, b});
    return std::nullopt;
}

inline std::optional<std::string> check_distributive(const Algebra& A) {
    const std::size_t n = A.n;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c) {
                if (A.mul(a, A.add(b, c)) != A.add(A.mul(a, b), A.mul(a, c)))
                    return "left distributivity fails at " + tuple_str({a, b, c});
                if (A.mul(A.add(a, b), c) != A.add(A.mul(a, c), A.mul(b, c)))
                    return "right distributivity fails at " + tuple_str({a, b, c});
            }
    return std::nullopt;
}

inline std::optional<std::string> check_mul_assoc(const Algebra& A) {
    const std::size_t n = A.n;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            Element ab = A.mul(a, b);
            for (Element c = 0; c < n; ++c)
                if (A.mul(ab, c) != A.mul(a, A.mul(b, c)))
                    return "multiplication not associative at " + tuple_str({a, b, c});
        }
    return std::nullopt;
}

inline bool is_endomorphism(const Algebra& A, const std::vector<Element>& u) {
    for (Element a = 0; a < A.n; ++a)
        for (Element b = 0; b < A.n; ++b)
            if (u[A.add(a, b)] != A.add(u[a], u[b])) return false;
    return u[0] == 0;
}

inline std::optional<std::string> check_gpd(const Algebra& A) {
    if (A.unary_.size() != 2) return std::string("groupoid needs delta and gamma");
    const auto& d = A.unary_[0];
    const auto& g = A.unary_[1];
    if (!is_endomorphism(A, d)) return std::string("delta is not a homomorphism");
    if (!is_endomorphism(A, g)) return std::string("gamma is not a homomorphism");
    for (Element x = 0; x < A.n; ++x) {
        if (d[d[x]] != d[x] || g[d[x]] != d[x] || d[g[x]] != g[x] || g[g[x]] != g[x])
            return "source/target maps incompatible with identities at " + tuple_str({x});
    }
    // Arrows out of the identity and arrows into the identity commute; this is
    // exactly what makes composition a homomorphism.
    for (Element x = 0; x < A.n; ++x) {
        Element xs = A.sub(x, d[x]);
        for (Element y = 0; y < A.n; ++y) {
            Element yt = A.sub(y, g[y]);
            if (A.add(xs, yt) != A.add(yt, xs))
                return "interchange law fails at " + tuple_str({x, y});
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Returns a description of the first violated identity, if any.
inline std::optional<std::string> find_identity_failure(const Algebra& A) {
    const std::size_t n = A.n;
    if (n == 0) return std::string("empty carrier");
    if (A.add_.size() != n * n || A.neg_.size() != n) return std::string("table sizes do not match order");
    for (Element v : A.add_)
        if (v >= n) return std::string("addition table entry out of range");
    for (Element v : A.neg_)
        if (v >= n) return std::string("negation table entry out of range");
    if (A.variety.is_ring()) {
        if (A.mul_.size() != n * n) return std::string("ring needs a multiplication table");
        for (Element v : A.mul_)
            if (v >= n) return std::string("multiplication table entry out of range");
    } else if (!A.mul_.empty()) {
        return std::string("multiplication table given for a non-ring variety");
    }
    for (const auto& u : A.unary_) {
        if (u.size() != n) return std::string("unary table size does not match order");
        for (Element v : u)
            if (v >= n) return std::string("unary table entry out of range");
    }
    if (auto e = detail::check_group(A)) return e;
    switch (A.variety.kind) {
        case Kind::group: break;
        case Kind::zmod: {
            if (auto e = detail::check_abelian(A)) return e;
            for (Element x = 0; x < n; ++x)
                if (A.times(A.variety.modulus, x) != 0)
                    return "m*x = 0 fails at " + detail::tuple_str({x});
            break;
        }
        case Kind::comm_ring:
        case Kind::nonassoc_ring:
        case Kind::rng_star: {
            if (auto e = detail::check_abelian(A)) return e;
            if (auto e = detail::check_distributive(A)) return e;
            if (A.variety.kind == Kind::nonassoc_ring) break;
            if (auto e = detail::check_mul_assoc(A)) return e;
            if (A.variety.kind == Kind::comm_ring) {
                for (Element a = 0; a < n; ++a)
                    for (Element b = 0; b < a; ++b)
                        if (A.mul(a, b) != A.mul(b, a))
                            return "multiplication not commutative at " + detail::tuple_str({a, b});
            } else {
                for (Element a = 0; a < n; ++a)
                    for (Element b = 0; b < n; ++b) {
                        Element ab = A.mul(a, b);
                        if (A.mul(ab, ab) != ab) return "xyxy = xy fails at " + detail::tuple_str({a, b});
                    }
            }
            break;
        }
        case Kind::gpd:
            if (auto e = detail::check_gpd(A)) return e;
            break;
    }
    if (A.variety.kind != Kind::gpd && !A.unary_.empty())
        return std::string("unary operations given for a variety without them");
    return std::nullopt;
}

inline AlgPtr validated(Algebra A) {
    if (auto e = find_identity_failure(A)) throw AlgebraError(A.name + ": " + *e);
    return std::make_shared<const Algebra>(std::move(A));
}

// Derived constructions (subalgebras, quotients, limits) inherit the identities
// from their inputs and skip the cubic re-check.
inline AlgPtr trusted(Algebra A) { return std::make_shared<const Algebra>(std::move(A)); }

// ---------------------------------------------------------------------------
// morphisms

inline std::optional<std::string> find_morphism_failure(const Morphism& f) {
    const Algebra& A = *f.dom;
    const Algebra& B = *f.cod;
    if (!(A.variety == B.variety)) return std::string("domain and codomain varieties differ");
    if (f.map.size() != A.n) return std::string("map length does not match domain order");
    for (Element y : f.map)
        if (y >= B.n) return std::string("map entry out of range");
    if (f.map[0] != 0) return std::string("map(0) != 0");
    for (Element a = 0; a < A.n; ++a)
        for (Element b = 0; b < A.n; ++b) {
            if (f.map[A.add(a, b)] != B.add(f.map[a], f.map[b]))
                return "addition not preserved at " + detail::tuple_str({a, b});
            if (A.has_mul() && f.map[A.mul(a, b)] != B.mul(f.map[a], f.map[b]))
                return "multiplication not preserved at " + detail::tuple_str({a, b});
        }
    for (std::size_t u = 0; u < A.unary_.size(); ++u)
        for (Element a = 0; a < A.n; ++a)
            if (f.map[A.unary_[u][a]] != B.unary_[u][f.map[a]])
                return "structure map not preserved at " + detail::tuple_str({a});
    return std::nullopt;
}

inline Morphism make_morphism(AlgPtr dom, AlgPtr cod, std::vector<Element> map) {
    Morphism f{std::move(dom), std::move(cod), std::move(map)};
    if (auto e = find_morphism_failure(f)) throw AlgebraError("invalid morphism: " + *e);
    return f;
}

inline Morphism identity(const AlgPtr& A) {
    std::vector<Element> m(A->n);
    std::iota(m.begin(), m.end(), Element{0});
    return {A, A, std::move(m)};
}

inline Morphism zero_morphism(const AlgPtr& A, const AlgPtr& B) {
    return {A, B, std::vector<Element>(A->n, 0)};
}

// g after f
inline Morphism compose(const Morphism& g, const Morphism& f) {
    if (f.cod.get() != g.dom.get() && f.cod->n != g.dom->n)
        throw AlgebraError("compose: codomain/domain mismatch");
    std::vector<Element> m(f.map.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map[f.map[i]];
    return {f.dom, g.cod, std::move(m)};
}

inline bool is_surjective(const Morphism& f) {
    std::vector<char> hit(f.cod->n, 0);
    for (Element y : f.map) hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

inline bool is_injective(const Morphism& f) {
    std::vector<char> hit(f.cod->n, 0);
    for (Element y : f.map) {
        if (hit[y]) return false;
        hit[y] = 1;
    }
    return true;
}

inline bool is_isomorphism(const Morphism& f) { return f.dom->n == f.cod->n && is_injective(f); }

inline AlgPtr zero_algebra(Variety v) {
    Algebra Z;
    Z.variety = v;
    Z.name = "0";
    Z.n = 1;
    Z.add_ = {0};
    Z.neg_ = {0};
    if (v.is_ring()) Z.mul_ = {0};
    if (v.kind == Kind::gpd) Z.unary_ = {{0}, {0}};
    return trusted(std::move(Z));
}

}  // namespace semiab
