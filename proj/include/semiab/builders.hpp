#pragma once

#include <functional>

#include "constructions.hpp"

namespace semiab {

namespace detail {

// Fills add/neg/mul tables from element-level operations.
inline Algebra tabulate(Variety v, std::string name, std::size_t n,
                        const std::function<Element(Element, Element)>& add,
                        const std::function<Element(Element, Element)>& mul = nullptr) {
    Algebra A;
    A.variety = v;
    A.name = std::move(name);
    A.n = n;
    A.add_.resize(n * n);
    A.neg_.resize(n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) A.add_[a * n + b] = add(a, b);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (A.add_[a * n + b] == 0) {
                A.neg_[a] = b;
                break;
            }
    if (mul) {
        A.mul_.resize(n * n);
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b) A.mul_[a * n + b] = mul(a, b);
    }
    return A;
}

}  // namespace detail

inline AlgPtr cyclic(unsigned n, Variety v = group_variety()) {
    if (n == 0) throw AlgebraError("cyclic: order must be positive");
    return validated(detail::tabulate(v, "C" + std::to_string(n), n,
                                      [n](Element a, Element b) { return (a + b) % n; }));
}

// Dihedral group of order 2n: element r^i s^j has index i + n*j.
inline AlgPtr dihedral(unsigned n) {
    if (n < 1) throw AlgebraError("dihedral: n must be positive");
    std::string name = n == 3 ? "S3" : "D" + std::to_string(n);
    return validated(detail::tabulate(group_variety(), name, 2 * n, [n](Element x, Element y) {
        unsigned i = x % n, a = x / n, k = y % n, b = y / n;
        unsigned rot = a == 0 ? (i + k) % n : (i + n - k) % n;
        return static_cast<Element>(rot + n * ((a + b) % 2));
    }));
}

inline AlgPtr symmetric3() { return dihedral(3); }

// Q8 as a^i b^j (index i + 4j) with a^4 = 1, b^2 = a^2, b a b^-1 = a^-1.
inline AlgPtr quaternion8() {
    return validated(detail::tabulate(group_variety(), "Q8", 8, [](Element x, Element y) {
        unsigned i = x % 4, j = x / 4, k = y % 4, l = y / 4;
        unsigned e = j == 0 ? (i + k) % 4 : (i + 4 - k) % 4;
        if (j == 1 && l == 1) return static_cast<Element>((e + 2) % 4);
        return static_cast<Element>(e + 4 * ((j + l) % 2));
    }));
}

// C_n x| C_m where the generator of C_m acts by multiplication by r.
inline AlgPtr semidirect_cyclic(unsigned n, unsigned m, unsigned r) {
    unsigned rm = 1;
    for (unsigned i = 0; i < m; ++i) rm = rm * r % n;
    if (rm != 1 % n) throw AlgebraError("semidirect: r^m != 1 mod n");
    std::vector<unsigned> pw(m);
    pw[0] = 1 % n;
    for (unsigned i = 1; i < m; ++i) pw[i] = pw[i - 1] * r % n;
    std::string name = "C" + std::to_string(n) + ":C" + std::to_string(m);
    return validated(detail::tabulate(group_variety(), name, n * m, [=](Element x, Element y) {
        unsigned a1 = x % n, b1 = x / n, a2 = y % n, b2 = y / n;
        return static_cast<Element>((a1 + pw[b1] * a2) % n + n * ((b1 + b2) % m));
    }));
}

// General semidirect product A x| B from an action table act[b][a].
inline AlgPtr semidirect(const AlgPtr& A, const AlgPtr& B, const std::vector<std::vector<Element>>& act,
                         std::string name = {}) {
    const std::size_t na = A->n, nb = B->n;
    if (act.size() != nb) throw AlgebraError("semidirect: action table has wrong size");
    if (name.empty()) name = A->name + ":" + B->name;
    return validated(detail::tabulate(A->variety, name, na * nb, [&](Element x, Element y) {
        Element a1 = x % na, b1 = x / na, a2 = y % na, b2 = y / na;
        return static_cast<Element>(A->add(a1, act[b1][a2]) + na * B->add(b1, b2));
    }));
}

inline AlgPtr direct_product(const AlgPtr& A, const AlgPtr& B, std::string name = {}) {
    PairAlgebra p = product(A, B, std::move(name));
    Algebra copy = *p.alg;
    return validated(std::move(copy));
}

inline AlgPtr alternating4() {
    // A4 = (C2 x C2) x| C3 with C3 cycling the three involutions.
    AlgPtr v = direct_product(cyclic(2), cyclic(2), "V4");
    AlgPtr c3 = cyclic(3);
    // V4 index (a,b) -> 2a+b; cycle (0,1) -> (1,0) -> (1,1) -> (0,1).
    std::vector<Element> rot = {0, 2, 3, 1};
    std::vector<std::vector<Element>> act(3, std::vector<Element>(4));
    for (Element x = 0; x < 4; ++x) {
        act[0][x] = x;
        act[1][x] = rot[x];
        act[2][x] = rot[rot[x]];
    }
    return semidirect(v, c3, act, "A4");
}

inline AlgPtr zring(unsigned n) {
    if (n == 0) throw AlgebraError("zring: order must be positive");
    return validated(detail::tabulate(
        {Kind::comm_ring, 0}, "Z/" + std::to_string(n), n, [n](Element a, Element b) { return (a + b) % n; },
        [n](Element a, Element b) { return static_cast<Element>(a * b % n); }));
}

// Ring structure on Z/n with product a*b = c*a*b, e.g. c = 0 for a zero ring.
inline AlgPtr scaled_ring(Variety v, unsigned n, unsigned c, std::string name) {
    return validated(detail::tabulate(
        v, std::move(name), n, [n](Element a, Element b) { return (a + b) % n; },
        [n, c](Element a, Element b) { return static_cast<Element>(c * a * b % n); }));
}

inline AlgPtr ring_from_tables(Variety v, std::string name, std::size_t n, std::vector<Element> add,
                               std::vector<Element> mul) {
    if (add.size() != n * n || mul.size() != n * n) throw AlgebraError("ring tables have wrong size");
    Algebra A = detail::tabulate(v, std::move(name), n, [&](Element a, Element b) { return add[a * n + b]; },
                                 [&](Element a, Element b) { return mul[a * n + b]; });
    return validated(std::move(A));
}

// F2 x F2 with (a,b)(c,d) = (ac, bc + bd); (a,b) has index 2a + b.
// Its square-idempotent quotient kills the second coordinate although both
// the kernel and the quotient satisfy x^2 = x.
inline AlgPtr split_square_ring() {
    return validated(detail::tabulate(
        {Kind::nonassoc_ring, 0}, "F2[split-square]", 4, [](Element x, Element y) { return x ^ y; },
        [](Element x, Element y) {
            unsigned a = x >> 1, b = x & 1, c = y >> 1, d = y & 1;
            return static_cast<Element>(((a & c) << 1) | ((b & c) ^ (b & d)));
        }));
}

// Componentwise structure on F2^2 given a product rule on pairs.
inline AlgPtr f2_pair_ring(Variety v, std::string name,
                           const std::function<std::pair<unsigned, unsigned>(unsigned, unsigned, unsigned, unsigned)>& rule) {
    return validated(detail::tabulate(
        v, std::move(name), 4, [](Element x, Element y) { return x ^ y; },
        [&](Element x, Element y) {
            auto [p, q] = rule(x >> 1, x & 1, y >> 1, y & 1);
            return static_cast<Element>(((p & 1) << 1) | (q & 1));
        }));
}

// (Z/m)^r; the first coordinate is the most significant digit.
inline AlgPtr zmod_free(unsigned m, unsigned r) {
    std::size_t n = 1;
    for (unsigned i = 0; i < r; ++i) n *= m;
    std::string name = r == 0 ? "0" : "Z" + std::to_string(m) + (r > 1 ? "^" + std::to_string(r) : "");
    return validated(detail::tabulate(zmod_variety(m), name, n, [m, r](Element x, Element y) {
        Element out = 0, scale = 1;
        for (unsigned i = 0; i < r; ++i) {
            out += ((x / scale % m + y / scale % m) % m) * scale;
            scale *= m;
        }
        return out;
    }));
}

inline AlgPtr zmod_cyclic(unsigned m, unsigned k) {
    if (k == 0 || m % k != 0) throw AlgebraError("zmod_cyclic: order must divide the modulus");
    return validated(detail::tabulate(zmod_variety(m), "C" + std::to_string(k), k,
                                      [k](Element a, Element b) { return (a + b) % k; }));
}

// ---------------------------------------------------------------------------
// groupoids in groups

inline AlgPtr gpd_discrete(const AlgPtr& G) {
    if (G->variety.kind != Kind::group) throw AlgebraError("gpd_discrete: needs a group");
    Algebra A = *G;
    A.variety = {Kind::gpd, 0};
    A.name = "disc(" + G->name + ")";
    std::vector<Element> id(A.n);
    std::iota(id.begin(), id.end(), Element{0});
    A.unary_ = {id, id};
    return validated(std::move(A));
}

// Pair groupoid on G: arrows (a,b) : a -> b, index a*|G| + b.
inline AlgPtr gpd_indiscrete(const AlgPtr& G) {
    if (G->variety.kind != Kind::group) throw AlgebraError("gpd_indiscrete: needs a group");
    Algebra A = *product(G, G).alg;
    A.variety = {Kind::gpd, 0};
    A.name = "indisc(" + G->name + ")";
    const std::size_t n = G->n;
    std::vector<Element> d(A.n), c(A.n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            d[a * n + b] = a * n + a;
            c[a * n + b] = b * n + b;
        }
    A.unary_ = {d, c};
    return validated(std::move(A));
}

// One object, arrows H; H must be abelian.
inline AlgPtr gpd_one_object(const AlgPtr& H) {
    if (H->variety.kind != Kind::group) throw AlgebraError("gpd_one_object: needs a group");
    Algebra A = *H;
    A.variety = {Kind::gpd, 0};
    A.name = "one(" + H->name + ")";
    A.unary_ = {std::vector<Element>(A.n, 0), std::vector<Element>(A.n, 0)};
    return validated(std::move(A));
}

// Groupoid from levelwise data: arrow group G1, object group G0, source d,
// target c (G1 -> G0) and identities i (G0 -> G1).
inline AlgPtr gpd_from_levels(const AlgPtr& G1, const AlgPtr& G0, const std::vector<Element>& d,
                              const std::vector<Element>& c, const std::vector<Element>& i, std::string name) {
    if (G1->variety.kind != Kind::group || G0->variety.kind != Kind::group)
        throw AlgebraError("groupoid levels must be groups");
    if (d.size() != G1->n || c.size() != G1->n || i.size() != G0->n)
        throw AlgebraError("groupoid structure maps have wrong length");
    for (Element x : d)
        if (x >= G0->n) throw AlgebraError("groupoid source map out of range");
    for (Element x : c)
        if (x >= G0->n) throw AlgebraError("groupoid target map out of range");
    for (Element x : i)
        if (x >= G1->n) throw AlgebraError("groupoid identity map out of range");
    if (auto e = find_morphism_failure({G1, G0, d})) throw AlgebraError("groupoid source map: " + *e);
    if (auto e = find_morphism_failure({G1, G0, c})) throw AlgebraError("groupoid target map: " + *e);
    if (auto e = find_morphism_failure({G0, G1, i})) throw AlgebraError("groupoid identity map: " + *e);
    for (Element o = 0; o < G0->n; ++o)
        if (d[i[o]] != o || c[i[o]] != o) throw AlgebraError("groupoid axiom d.i = c.i = 1 fails");
    Algebra A = *G1;
    A.variety = {Kind::gpd, 0};
    A.name = std::move(name);
    std::vector<Element> delta(A.n), gamma(A.n);
    for (Element x = 0; x < A.n; ++x) {
        delta[x] = i[d[x]];
        gamma[x] = i[c[x]];
    }
    A.unary_ = {delta, gamma};
    return validated(std::move(A));
}

struct GroupoidLevels {
    AlgPtr g1;
    AlgPtr g0;
    std::vector<Element> d, c, i;
};

inline GroupoidLevels groupoid_levels(const AlgPtr& A) {
    if (A->variety.kind != Kind::gpd) throw AlgebraError("not a groupoid");
    Algebra g1 = *A;
    g1.variety = group_variety();
    g1.unary_.clear();
    AlgPtr G1 = trusted(std::move(g1));
    Subobject objs = make_subobject(G1, A->unary_[0]);
    Embedded e = as_algebra(objs, "obj(" + A->name + ")");
    std::vector<Element> index(A->n, 0);
    for (std::size_t k = 0; k < objs.elems.size(); ++k) index[objs.elems[k]] = static_cast<Element>(k);
    GroupoidLevels L{G1, e.alg, std::vector<Element>(A->n), std::vector<Element>(A->n), objs.elems};
    for (Element x = 0; x < A->n; ++x) {
        L.d[x] = index[A->unary_[0][x]];
        L.c[x] = index[A->unary_[1][x]];
    }
    return L;
}

// Composite y o x of composable arrows (target of x = source of y).
inline Element gpd_compose(const Algebra& A, Element y, Element x) {
    if (A.unary_[1][x] != A.unary_[0][y]) throw AlgebraError("arrows are not composable");
    return A.add(A.sub(x, A.unary_[1][x]), y);
}

}  // namespace semiab
