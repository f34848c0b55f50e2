#pragma once

#include <map>
#include <set>

#include "algebra.hpp"

namespace semiab {

// Smallest subset containing `seeds` closed under every operation; with
// `normal` also closed under conjugation, two-sided multiplication by the
// whole algebra, and hence an ideal / normal subgroup.
inline Subobject close_subset(const AlgPtr& A, const std::vector<Element>& seeds, bool normal) {
    const Algebra& a = *A;
    std::vector<char> in(a.n, 0);
    std::vector<Element> members;
    std::vector<Element> work;
    auto push = [&](Element x) {
        if (!in[x]) {
            in[x] = 1;
            members.push_back(x);
            work.push_back(x);
        }
    };
    push(0);
    for (Element s : seeds) push(s);
    while (!work.empty()) {
        Element x = work.back();
        work.pop_back();
        push(a.neg(x));
        for (const auto& u : a.unary_) push(u[x]);
        // members may grow while iterating; index loop is deliberate
        for (std::size_t i = 0; i < members.size(); ++i) {
            Element y = members[i];
            push(a.add(x, y));
            push(a.add(y, x));
            if (a.has_mul()) {
                push(a.mul(x, y));
                push(a.mul(y, x));
            }
        }
        if (normal) {
            for (Element g = 0; g < a.n; ++g) {
                push(a.conj(g, x));
                if (a.has_mul()) {
                    push(a.mul(g, x));
                    push(a.mul(x, g));
                }
            }
        }
    }
    std::sort(members.begin(), members.end());
    return {A, std::move(members), normal};
}

inline Subobject normal_closure(const AlgPtr& A, const std::vector<Element>& S) {
    return close_subset(A, S, true);
}

inline Subobject generated_subalgebra(const AlgPtr& A, const std::vector<Element>& S) {
    Subobject s = close_subset(A, S, false);
    return s;
}

inline Subobject zero_subobject(const AlgPtr& A) { return {A, {0}, true}; }

inline Subobject whole(const AlgPtr& A) {
    std::vector<Element> all(A->n);
    std::iota(all.begin(), all.end(), Element{0});
    return {A, std::move(all), true};
}

// Does the (closed) subset satisfy the normality conditions?
inline bool is_normal_subset(const Algebra& a, const std::vector<char>& in) {
    for (Element x = 0; x < a.n; ++x) {
        if (!in[x]) continue;
        for (Element g = 0; g < a.n; ++g) {
            if (!in[a.conj(g, x)]) return false;
            if (a.has_mul() && (!in[a.mul(g, x)] || !in[a.mul(x, g)])) return false;
        }
        for (const auto& u : a.unary_)
            if (!in[u[x]]) return false;
    }
    return true;
}

inline bool is_closed_subset(const Algebra& a, const std::vector<char>& in) {
    if (!in[0]) return false;
    for (Element x = 0; x < a.n; ++x) {
        if (!in[x]) continue;
        if (!in[a.neg(x)]) return false;
        for (const auto& u : a.unary_)
            if (!in[u[x]]) return false;
        for (Element y = 0; y < a.n; ++y) {
            if (!in[y]) continue;
            if (!in[a.add(x, y)]) return false;
            if (a.has_mul() && !in[a.mul(x, y)]) return false;
        }
    }
    return true;
}

// Builds a Subobject from an arbitrary closed set, certifying normality.
inline Subobject make_subobject(const AlgPtr& A, std::vector<Element> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    std::vector<char> in(A->n, 0);
    for (Element e : elems) in[e] = 1;
    if (!is_closed_subset(*A, in)) throw AlgebraError("subset is not closed under the operations");
    return {A, std::move(elems), is_normal_subset(*A, in)};
}

inline Subobject kernel(const Morphism& f) {
    std::vector<Element> k;
    for (Element x = 0; x < f.dom->n; ++x)
        if (f.map[x] == 0) k.push_back(x);
    return {f.dom, std::move(k), true};
}

inline Subobject image(const Morphism& f) {
    std::vector<Element> im(f.map.begin(), f.map.end());
    return make_subobject(f.cod, std::move(im));
}

// Image of a subobject of dom(f) as a subset of cod(f).
inline Subobject push_forward(const Morphism& f, const Subobject& S) {
    std::vector<Element> im;
    for (Element x : S.elems) im.push_back(f.map[x]);
    return make_subobject(f.cod, std::move(im));
}

inline Subobject preimage(const Morphism& f, const Subobject& S) {
    auto in = S.mask();
    std::vector<Element> pre;
    for (Element x = 0; x < f.dom->n; ++x)
        if (in[f.map[x]]) pre.push_back(x);
    return make_subobject(f.dom, std::move(pre));
}

inline Subobject meet_subobjects(const Subobject& M, const Subobject& N) {
    if (M.parent.get() != N.parent.get() && M.parent->n != N.parent->n)
        throw AlgebraError("meet: subobjects of different algebras");
    std::vector<Element> out;
    std::set_intersection(M.elems.begin(), M.elems.end(), N.elems.begin(), N.elems.end(),
                          std::back_inserter(out));
    return {M.parent, std::move(out), M.normal && N.normal};
}

inline Subobject join_normal(const Subobject& M, const Subobject& N) {
    std::vector<Element> s = M.elems;
    s.insert(s.end(), N.elems.begin(), N.elems.end());
    return normal_closure(M.parent, s);
}

// ---------------------------------------------------------------------------
// algebras built from subsets, cosets and pairs

struct Embedded {
    AlgPtr alg;
    Morphism incl;
};

inline Embedded as_algebra(const Subobject& S, std::string name = {}) {
    const Algebra& a = *S.parent;
    std::vector<Element> index(a.n, static_cast<Element>(-1));
    for (std::size_t i = 0; i < S.elems.size(); ++i) index[S.elems[i]] = static_cast<Element>(i);
    Algebra B;
    B.variety = a.variety;
    B.name = name.empty() ? "sub(" + a.name + ")" : std::move(name);
    B.n = S.elems.size();
    B.add_.resize(B.n * B.n);
    B.neg_.resize(B.n);
    if (a.has_mul()) B.mul_.resize(B.n * B.n);
    for (std::size_t i = 0; i < B.n; ++i) {
        Element x = S.elems[i];
        B.neg_[i] = index[a.neg(x)];
        for (std::size_t j = 0; j < B.n; ++j) {
            Element y = S.elems[j];
            B.add_[i * B.n + j] = index[a.add(x, y)];
            if (a.has_mul()) B.mul_[i * B.n + j] = index[a.mul(x, y)];
        }
    }
    for (const auto& u : a.unary_) {
        std::vector<Element> v(B.n);
        for (std::size_t i = 0; i < B.n; ++i) v[i] = index[u[S.elems[i]]];
        B.unary_.push_back(std::move(v));
    }
    for (Element e : B.add_)
        if (e == static_cast<Element>(-1)) throw AlgebraError("as_algebra: subset not closed");
    AlgPtr P = trusted(std::move(B));
    return {P, Morphism{P, S.parent, S.elems}};
}

struct Quotient {
    AlgPtr alg;
    Morphism proj;
    std::vector<Element> reps;  // representative of each class
};

inline Quotient quotient(const AlgPtr& A, const Subobject& N, std::string name = {}) {
    if (!N.normal) throw AlgebraError("quotient by a non-normal subobject");
    const Algebra& a = *A;
    const Element unset = static_cast<Element>(-1);
    std::vector<Element> cls(a.n, unset);
    std::vector<Element> reps;
    for (Element x = 0; x < a.n; ++x) {
        if (cls[x] != unset) continue;
        Element c = static_cast<Element>(reps.size());
        reps.push_back(x);
        for (Element k : N.elems) cls[a.add(x, k)] = c;
    }
    Algebra Q;
    Q.variety = a.variety;
    Q.name = name.empty() ? a.name + "/" + std::to_string(N.size()) : std::move(name);
    Q.n = reps.size();
    Q.add_.resize(Q.n * Q.n);
    Q.neg_.resize(Q.n);
    if (a.has_mul()) Q.mul_.resize(Q.n * Q.n);
    for (std::size_t i = 0; i < Q.n; ++i) {
        Q.neg_[i] = cls[a.neg(reps[i])];
        for (std::size_t j = 0; j < Q.n; ++j) {
            Q.add_[i * Q.n + j] = cls[a.add(reps[i], reps[j])];
            if (a.has_mul()) Q.mul_[i * Q.n + j] = cls[a.mul(reps[i], reps[j])];
        }
    }
    for (const auto& u : a.unary_) {
        std::vector<Element> v(Q.n);
        for (std::size_t i = 0; i < Q.n; ++i) v[i] = cls[u[reps[i]]];
        Q.unary_.push_back(std::move(v));
    }
    AlgPtr P = trusted(std::move(Q));
    return {P, Morphism{A, P, std::move(cls)}, std::move(reps)};
}

// The morphism dom(q) / ker(q) -> cod(g) induced by g when ker(q) lies in ker(g).
inline Morphism induced_from_quotient(const Quotient& q, const Morphism& g) {
    std::vector<Element> m(q.alg->n);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map[q.reps[i]];
    for (Element x = 0; x < q.proj.dom->n; ++x)
        if (m[q.proj.map[x]] != g.map[x]) throw AlgebraError("morphism does not factor through the quotient");
    return {q.alg, g.cod, std::move(m)};
}

struct PairAlgebra {
    AlgPtr alg;
    Morphism p1;
    Morphism p2;
    std::vector<Element> lookup;  // pair code a*|B| + b -> index, or -1
    std::size_t right_order = 0;

    std::optional<Element> index_of(Element a, Element b) const {
        Element i = lookup[a * right_order + b];
        if (i == static_cast<Element>(-1)) return std::nullopt;
        return i;
    }
};

// Subalgebra of A x B on the given pairs; the pairs must be closed and
// contain (0,0).
inline PairAlgebra pair_algebra(const AlgPtr& A, const AlgPtr& B,
                                const std::vector<std::pair<Element, Element>>& pairs, std::string name) {
    const Algebra& a = *A;
    const Algebra& b = *B;
    if (!(a.variety == b.variety)) throw AlgebraError("pair algebra: varieties differ");
    const Element unset = static_cast<Element>(-1);
    std::vector<Element> lookup(a.n * b.n, unset);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        lookup[pairs[i].first * b.n + pairs[i].second] = static_cast<Element>(i);
    auto idx = [&](Element x, Element y) {
        Element i = lookup[x * b.n + y];
        if (i == unset) throw AlgebraError("pair algebra: pairs not closed");
        return i;
    };
    Algebra P;
    P.variety = a.variety;
    P.name = std::move(name);
    P.n = pairs.size();
    P.add_.resize(P.n * P.n);
    P.neg_.resize(P.n);
    if (a.has_mul()) P.mul_.resize(P.n * P.n);
    for (std::size_t i = 0; i < P.n; ++i) {
        auto [x1, y1] = pairs[i];
        P.neg_[i] = idx(a.neg(x1), b.neg(y1));
        for (std::size_t j = 0; j < P.n; ++j) {
            auto [x2, y2] = pairs[j];
            P.add_[i * P.n + j] = idx(a.add(x1, x2), b.add(y1, y2));
            if (a.has_mul()) P.mul_[i * P.n + j] = idx(a.mul(x1, x2), b.mul(y1, y2));
        }
    }
    for (std::size_t u = 0; u < a.unary_.size(); ++u) {
        std::vector<Element> v(P.n);
        for (std::size_t i = 0; i < P.n; ++i) v[i] = idx(a.unary_[u][pairs[i].first], b.unary_[u][pairs[i].second]);
        P.unary_.push_back(std::move(v));
    }
    std::vector<Element> m1(P.n), m2(P.n);
    for (std::size_t i = 0; i < P.n; ++i) {
        m1[i] = pairs[i].first;
        m2[i] = pairs[i].second;
    }
    AlgPtr Pp = trusted(std::move(P));
    return {Pp, Morphism{Pp, A, std::move(m1)}, Morphism{Pp, B, std::move(m2)}, std::move(lookup), b.n};
}

inline PairAlgebra product(const AlgPtr& A, const AlgPtr& B, std::string name = {}) {
    std::vector<std::pair<Element, Element>> pairs;
    for (Element x = 0; x < A->n; ++x)
        for (Element y = 0; y < B->n; ++y) pairs.emplace_back(x, y);
    if (name.empty()) name = A->name + "x" + B->name;
    return pair_algebra(A, B, pairs, std::move(name));
}

// P = {(a,b) : f(a) = g(b)} with its two projections.
inline PairAlgebra pullback(const Morphism& f, const Morphism& g, std::string name = {}) {
    if (f.cod->n != g.cod->n) throw AlgebraError("pullback: codomains differ");
    std::vector<std::vector<Element>> fibre(g.cod->n);
    for (Element y = 0; y < g.dom->n; ++y) fibre[g.map[y]].push_back(y);
    std::vector<std::pair<Element, Element>> pairs;
    for (Element x = 0; x < f.dom->n; ++x)
        for (Element y : fibre[f.map[x]]) pairs.emplace_back(x, y);
    if (name.empty()) name = f.dom->name + "x_" + f.cod->name + g.dom->name;
    return pair_algebra(f.dom, g.dom, pairs, std::move(name));
}

inline PairAlgebra kernel_pair(const Morphism& f) { return pullback(f, f, "R[" + f.dom->name + "]"); }

// ---------------------------------------------------------------------------
// commutators and powers

inline Subobject commutator_subgroup(const AlgPtr& A, const Subobject& H, const Subobject& K) {
    const Algebra& a = *A;
    std::vector<Element> gens;
    for (Element h : H.elems)
        for (Element k : K.elems) gens.push_back(a.sub(a.add(h, k), a.add(k, h)));
    return normal_closure(A, gens);
}

// Huq commutator of two normal subobjects, realised per variety.
inline Subobject huq_commutator(const AlgPtr& A, const Subobject& H, const Subobject& K) {
    if (!H.normal || !K.normal) throw AlgebraError("huq_commutator: arguments must be normal");
    const Algebra& a = *A;
    switch (a.variety.kind) {
        case Kind::group: return commutator_subgroup(A, H, K);
        case Kind::zmod: return zero_subobject(A);
        case Kind::gpd: throw AlgebraError("huq_commutator: unsupported for groupoids, compute levelwise");
        default: {
            std::vector<Element> gens;
            for (Element h : H.elems)
                for (Element k : K.elems) {
                    gens.push_back(a.mul(h, k));
                    gens.push_back(a.mul(k, h));
                }
            return normal_closure(A, gens);
        }
    }
}

// Subgroup generated by k-th powers (groups) or the multiples k*A (modules
// and rings).
inline Subobject power_subobject(const AlgPtr& A, unsigned k) {
    const Algebra& a = *A;
    if (a.variety.kind == Kind::gpd || a.variety.kind == Kind::nonassoc_ring || a.variety.kind == Kind::rng_star)
        throw AlgebraError("power_subobject: unsupported variety " + a.variety.id());
    std::vector<Element> gens;
    for (Element x = 0; x < a.n; ++x) gens.push_back(a.times(k, x));
    Subobject s = close_subset(A, gens, a.variety.kind == Kind::comm_ring);
    if (!s.normal) {
        std::vector<char> in = s.mask();
        s.normal = is_normal_subset(a, in);
    }
    return s;
}

// ---------------------------------------------------------------------------
// lattices of subobjects

namespace detail {
inline std::vector<Subobject> enumerate_closed(const AlgPtr& A, bool normal, std::size_t cap) {
    std::set<std::vector<Element>> seen;
    std::vector<Subobject> out;
    Subobject z = close_subset(A, {}, normal);
    seen.insert(z.elems);
    out.push_back(z);
    for (std::size_t i = 0; i < out.size() && out.size() < cap; ++i) {
        const Subobject cur = out[i];
        auto in = cur.mask();
        for (Element x = 0; x < A->n; ++x) {
            if (in[x]) continue;
            std::vector<Element> seeds = cur.elems;
            seeds.push_back(x);
            Subobject s = close_subset(A, seeds, normal);
            if (seen.insert(s.elems).second) {
                out.push_back(std::move(s));
                if (out.size() >= cap) break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Subobject& l, const Subobject& r) {
        return l.size() != r.size() ? l.size() < r.size() : l.elems < r.elems;
    });
    if (!normal)
        for (auto& s : out) s.normal = is_normal_subset(*A, s.mask());
    return out;
}
}  // namespace detail

// All normal subobjects, ordered by size then lexicographically.
inline std::vector<Subobject> normal_subobjects(const AlgPtr& A) {
    return detail::enumerate_closed(A, true, static_cast<std::size_t>(-1));
}

inline std::vector<Subobject> subalgebras(const AlgPtr& A, std::size_t cap = static_cast<std::size_t>(-1)) {
    return detail::enumerate_closed(A, false, cap);
}

// ---------------------------------------------------------------------------
// exact sequences

struct ExactSequence {
    Morphism k;
    Morphism f;
    std::optional<Morphism> splitting;
};

enum class SequenceKind { not_exact, exact, split_exact };

inline std::string to_string(SequenceKind k) {
    switch (k) {
        case SequenceKind::not_exact: return "not-exact";
        case SequenceKind::exact: return "exact";
        case SequenceKind::split_exact: return "split-exact";
    }
    return "?";
}

// k = ker f and f = coker k: k injective onto ker f, f surjective.
inline bool is_short_exact(const Morphism& k, const Morphism& f) {
    if (k.cod->n != f.dom->n) return false;
    if (!is_injective(k) || !is_surjective(f)) return false;
    Subobject K = kernel(f);
    std::vector<Element> im(k.map.begin(), k.map.end());
    std::sort(im.begin(), im.end());
    return im == K.elems;
}

}  // namespace semiab
