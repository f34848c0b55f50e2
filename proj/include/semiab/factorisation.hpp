#pragma once

#include "reflectors.hpp"

namespace semiab {

// T(K[f]) computed in K[f] and viewed inside dom(f).
inline Subobject kernel_radical(const Reflector& R, const Morphism& f) {
    Embedded K = as_algebra(kernel(f));
    return push_forward(K.incl, R.radical(K.alg));
}

inline bool condition_N_check(const Reflector& R, const Morphism& f) { return kernel_radical(R, f).normal; }

struct EMFactorisation {
    Morphism input;
    Morphism e;
    Morphism m;
    AlgPtr middle;
    bool e_certified = false;  // surjective with torsion kernel
    bool m_certified = false;  // torsion-free kernel
};

enum class EMClass { e_bar, m_bar, both, neither };

inline std::string to_string(EMClass c) {
    switch (c) {
        case EMClass::e_bar: return "E";
        case EMClass::m_bar: return "M";
        case EMClass::both: return "both";
        case EMClass::neither: return "neither";
    }
    return "?";
}

inline bool in_e_bar(const Reflector& R, const Morphism& f) {
    if (!is_surjective(f)) return false;
    return kernel_radical(R, f).size() == kernel(f).size();
}

inline bool in_m_bar(const Reflector& R, const Morphism& f) { return kernel_radical(R, f).is_zero(); }

inline EMClass classify_em(const Reflector& R, const Morphism& f) {
    bool e = in_e_bar(R, f), m = in_m_bar(R, f);
    if (e && m) return EMClass::both;
    if (e) return EMClass::e_bar;
    if (m) return EMClass::m_bar;
    return EMClass::neither;
}

inline EMFactorisation em_factorize(const Reflector& R, const Morphism& f) {
    Subobject TK = kernel_radical(R, f);
    if (!TK.normal) throw AlgebraError("condition (N) fails: T(K[f]) is not normal in " + f.dom->name);
    Quotient q = quotient(f.dom, TK, f.dom->name + "/T(K)");
    Morphism m = induced_from_quotient(q, f);
    EMFactorisation out{f, q.proj, m, q.alg};
    out.e_certified = in_e_bar(R, out.e);
    out.m_certified = in_m_bar(R, out.m);
    return out;
}

// The reflection of an extension into the torsion-free arrows: the m-part.
inline Morphism derived_reflect(const Reflector& R, const Morphism& f) { return em_factorize(R, f).m; }

enum class Diagonal { unique, none, multiple };

inline std::string to_string(Diagonal d) {
    switch (d) {
        case Diagonal::unique: return "unique";
        case Diagonal::none: return "none";
        case Diagonal::multiple: return "multiple";
    }
    return "?";
}

struct OrthogonalityResult {
    Diagonal verdict;
    std::optional<Morphism> diagonal;
};

// Square b.e = m.a; looks for d with d.e = a and m.d = b.
inline OrthogonalityResult check_orthogonal(const Morphism& e, const Morphism& m, const Morphism& a,
                                           const Morphism& b) {
    if (compose(b, e).map != compose(m, a).map) throw AlgebraError("check_orthogonal: square does not commute");
    OrthogonalityResult r{Diagonal::none, std::nullopt};
    std::size_t found = 0;
    for_each_hom(e.cod, m.dom, HomMode::all, [&](const Morphism& d) {
        if (compose(d, e).map != a.map || compose(m, d).map != b.map) return true;
        if (++found == 1) r.diagonal = d;
        return found < 2;
    });
    r.verdict = found == 0 ? Diagonal::none : found == 1 ? Diagonal::unique : Diagonal::multiple;
    return r;
}

// (eta_A, f) : A -> F(A) x_{F(B)} B is bijective.
inline bool is_trivial_extension(const Reflector& R, const Morphism& f) {
    TorsionDecomposition dA = reflect(R, f.dom);
    TorsionDecomposition dB = reflect(R, f.cod);
    Morphism Ff = apply(dA, dB, f);
    PairAlgebra P = pullback(Ff, dB.unit);
    if (P.alg->n != f.dom->n) return false;
    std::vector<char> hit(P.alg->n, 0);
    for (Element x = 0; x < f.dom->n; ++x) {
        auto i = P.index_of(dA.unit.map[x], f.map[x]);
        if (!i || hit[*i]) return false;
        hit[*i] = 1;
    }
    return true;
}

// Pull f back along itself and test the first projection.
inline bool is_normal_extension(const Reflector& R, const Morphism& f) {
    if (!is_surjective(f)) throw AlgebraError("is_normal_extension: not surjective");
    PairAlgebra kp = kernel_pair(f);
    return is_trivial_extension(R, kp.p1);
}

// ---------------------------------------------------------------------------
// n-cubes

// Commutative n-cube of algebras. Vertex masks are subsets of {0..n-1};
// vertex 0 is the top, edge (mask, i) goes from mask to mask | (1 << i).
struct NCube {
    unsigned n = 1;
    std::vector<AlgPtr> v;
    std::vector<std::vector<std::optional<Morphism>>> e;

    static NCube empty(unsigned n) {
        NCube c;
        c.n = n;
        c.v.resize(std::size_t{1} << n);
        c.e.assign(std::size_t{1} << n, std::vector<std::optional<Morphism>>(n));
        return c;
    }

    static NCube arrow(const Morphism& f) {
        NCube c = empty(1);
        c.v = {f.dom, f.cod};
        c.e[0][0] = f;
        return c;
    }

    // a1: A -> A1, a2: A -> A2, b1: A1 -> B, b2: A2 -> B.
    static NCube square(const Morphism& a1, const Morphism& a2, const Morphism& b1, const Morphism& b2) {
        NCube c = empty(2);
        c.v = {a1.dom, a1.cod, a2.cod, b1.cod};
        c.e[0][0] = a1;
        c.e[0][1] = a2;
        c.e[1][1] = b1;
        c.e[2][0] = b2;
        return c;
    }

    const AlgPtr& top() const { return v[0]; }
    const Morphism& edge(std::size_t mask, unsigned i) const {
        if (!e[mask][i]) throw AlgebraError("cube edge missing");
        return *e[mask][i];
    }
    std::vector<Morphism> initial_ribs() const {
        std::vector<Morphism> r;
        for (unsigned i = 0; i < n; ++i) r.push_back(edge(0, i));
        return r;
    }

    // Every 2-face commutes, elementwise.
    std::optional<std::string> commutation_failure() const {
        const std::size_t N = std::size_t{1} << n;
        for (std::size_t m = 0; m < N; ++m)
            for (unsigned i = 0; i < n; ++i) {
                if (m >> i & 1) continue;
                if (!e[m][i]) return "missing edge from vertex " + std::to_string(m);
                for (unsigned j = i + 1; j < n; ++j) {
                    if (m >> j & 1) continue;
                    auto ij = compose(edge(m | (1u << i), j), edge(m, i));
                    auto ji = compose(edge(m | (1u << j), i), edge(m, j));
                    if (ij.map != ji.map)
                        return "face at vertex " + std::to_string(m) + " in directions " + std::to_string(i) + "," +
                               std::to_string(j) + " does not commute";
                }
            }
        return std::nullopt;
    }
};

namespace detail {

inline std::size_t insert_bit(std::size_t sub, unsigned bit, bool val) {
    std::size_t low = sub & ((std::size_t{1} << bit) - 1);
    std::size_t high = sub >> bit;
    return low | (std::size_t(val) << bit) | (high << (bit + 1));
}

}  // namespace detail

// The (n-1)-cube obtained by fixing direction `bit`.
inline NCube face(const NCube& c, unsigned bit, bool val) {
    NCube f = NCube::empty(c.n - 1);
    for (std::size_t m = 0; m < f.v.size(); ++m) {
        std::size_t full = detail::insert_bit(m, bit, val);
        f.v[m] = c.v[full];
        for (unsigned i = 0; i + 1 < c.n; ++i) {
            if (m >> i & 1) continue;
            unsigned fi = i < bit ? i : i + 1;
            f.e[m][i] = c.e[full][fi];
        }
    }
    return f;
}

// For n >= 2: view c as a square of (n-2)-cubes A0 -> A1, B0 -> B1 along the
// last direction pair and return the (n-1)-cube A0 -> A1 x_{B1} B0.
inline NCube comparison_cube(const NCube& c) {
    if (c.n < 2) throw AlgebraError("comparison_cube: needs n >= 2");
    const unsigned p = c.n - 2, q = c.n - 1;
    const std::size_t low = std::size_t{1} << p;
    NCube out = NCube::empty(c.n - 1);
    std::vector<PairAlgebra> P;
    for (std::size_t m = 0; m < low; ++m) {
        const Morphism& alpha1 = c.edge(m | (1u << p), q);  // A1 -> B1
        const Morphism& b = c.edge(m | (1u << q), p);       // B0 -> B1
        P.push_back(pullback(alpha1, b));
    }
    for (std::size_t m = 0; m < low; ++m) {
        out.v[m] = c.v[m];
        out.v[m | low] = P[m].alg;
        for (unsigned i = 0; i < p; ++i) {
            if (m >> i & 1) continue;
            out.e[m][i] = c.e[m][i];
            const Morphism& ea = c.edge(m | (1u << p), i);
            const Morphism& eb = c.edge(m | (1u << q), i);
            const PairAlgebra& from = P[m];
            const PairAlgebra& to = P[m | (1u << i)];
            std::vector<Element> map(from.alg->n);
            for (Element x = 0; x < from.alg->n; ++x)
                map[x] = *to.index_of(ea.map[from.p1.map[x]], eb.map[from.p2.map[x]]);
            out.e[m | low][i] = Morphism{from.alg, to.alg, std::move(map)};
        }
        const Morphism& a = c.edge(m, p);
        const Morphism& alpha0 = c.edge(m, q);
        std::vector<Element> cmp(c.v[m]->n);
        for (Element x = 0; x < c.v[m]->n; ++x) cmp[x] = *P[m].index_of(a.map[x], alpha0.map[x]);
        out.e[m][p] = Morphism{c.v[m], P[m].alg, std::move(cmp)};
    }
    return out;
}

// n = 1: surjective. n >= 2: the four sides of the square of (n-2)-cubes and
// the comparison to their pullback are (n-1)-fold extensions.
inline bool is_nfold_extension(const NCube& c) {
    if (c.n > 3) throw AlgebraError("is_nfold_extension: dimension capped at 3");
    if (auto e = c.commutation_failure()) throw AlgebraError("ill-formed cube: " + *e);
    if (c.n == 1) return is_surjective(c.edge(0, 0));
    const unsigned p = c.n - 2, q = c.n - 1;
    for (auto [bit, val] : {std::pair{q, false}, {q, true}, {p, false}, {p, true}})
        if (!is_nfold_extension(face(c, bit, val))) return false;
    return is_nfold_extension(comparison_cube(c));
}

inline Subobject rib_kernel_meet(const NCube& c) {
    Subobject K = whole(c.top());
    for (const Morphism& a : c.initial_ribs()) K = meet_subobjects(K, kernel(a));
    return K;
}

// T of the intersection of the initial-rib kernels, as a subset of the top.
inline Subobject rib_kernel_radical(const Reflector& R, const NCube& c) {
    Embedded K = as_algebra(rib_kernel_meet(c));
    return push_forward(K.incl, R.radical(K.alg));
}

inline bool is_nfold_normal(const Reflector& R, const NCube& c) {
    if (!is_nfold_extension(c)) throw AlgebraError("is_nfold_normal: not an n-fold extension");
    return rib_kernel_radical(R, c).is_zero();
}

// Square read as the arrow morphism (a2, b1) : a1 -> b2. Its kernel pair in
// the arrow category is rho : R[a2] -> R[b1]; the square is normal when the
// first projection rho -> a1 is trivial for the derived reflection, i.e.
// R[a2] -> F1(rho)_top x_{F1(a1)_top} A is bijective.
inline bool is_double_normal_recursive(const Reflector& R, const NCube& c) {
    if (c.n != 2) throw AlgebraError("recursive normality check needs a square");
    if (!is_nfold_extension(c)) throw AlgebraError("not a double extension");
    const Morphism& a1 = c.edge(0, 0);
    const Morphism& a2 = c.edge(0, 1);
    const Morphism& b1 = c.edge(1, 1);
    PairAlgebra Ra2 = kernel_pair(a2);
    PairAlgebra Rb1 = kernel_pair(b1);
    std::vector<Element> rho_map(Ra2.alg->n);
    for (Element x = 0; x < Ra2.alg->n; ++x)
        rho_map[x] = *Rb1.index_of(a1.map[Ra2.p1.map[x]], a1.map[Ra2.p2.map[x]]);
    Morphism rho{Ra2.alg, Rb1.alg, std::move(rho_map)};
    EMFactorisation Frho = em_factorize(R, rho);
    EMFactorisation Fa1 = em_factorize(R, a1);
    // top component of F1(pi1) : F1(rho)_top -> F1(a1)_top
    Quotient qrho = quotient(Ra2.alg, kernel(Frho.e));
    Morphism top = induced_from_quotient(qrho, compose(Fa1.e, Ra2.p1));
    std::vector<Element> e_map(Ra2.alg->n);
    for (Element x = 0; x < Ra2.alg->n; ++x) e_map[x] = qrho.proj.map[x];
    PairAlgebra P = pullback(top, Fa1.e);
    if (P.alg->n != Ra2.alg->n) return false;
    std::vector<char> hit(P.alg->n, 0);
    for (Element x = 0; x < Ra2.alg->n; ++x) {
        auto i = P.index_of(e_map[x], Ra2.p1.map[x]);
        if (!i || hit[*i]) return false;
        hit[*i] = 1;
    }
    return true;
}

// ---------------------------------------------------------------------------
// cube documents

inline json to_json(const NCube& c) {
    json j;
    j["format"] = kFormatVersion;
    j["kind"] = "cube";
    j["n"] = c.n;
    j["vertices"] = json::array();
    for (const AlgPtr& A : c.v) j["vertices"].push_back(to_json(*A));
    j["edges"] = json::array();
    for (std::size_t m = 0; m < c.v.size(); ++m)
        for (unsigned i = 0; i < c.n; ++i)
            if (c.e[m][i]) j["edges"].push_back({{"from", m}, {"direction", i}, {"map", c.e[m][i]->map}});
    return j;
}

inline NCube cube_from_json(const json& j, const Resolver& resolve = nullptr) {
    std::size_t n = detail::as_index(detail::field(j, "n", ""), "/n");
    if (n < 1 || n > 3) throw FormatError("/n", "dimension must be 1, 2 or 3");
    NCube c = NCube::empty(static_cast<unsigned>(n));
    const json& vs = detail::field(j, "vertices", "");
    if (!vs.is_array() || vs.size() != c.v.size())
        throw FormatError("/vertices", "expected " + std::to_string(c.v.size()) + " vertices");
    for (std::size_t m = 0; m < c.v.size(); ++m)
        c.v[m] = endpoint_from_json(vs[m], resolve, "/vertices/" + std::to_string(m));
    const json& es = detail::field(j, "edges", "");
    if (!es.is_array()) throw FormatError("/edges", "expected an array");
    for (std::size_t t = 0; t < es.size(); ++t) {
        std::string p = "/edges/" + std::to_string(t);
        std::size_t from = detail::as_index(detail::field(es[t], "from", p), p + "/from");
        std::size_t dir = detail::as_index(detail::field(es[t], "direction", p), p + "/direction");
        if (from >= c.v.size() || dir >= n || (from >> dir & 1)) throw FormatError(p, "no such edge in the cube");
        const AlgPtr& dom = c.v[from];
        const AlgPtr& cod = c.v[from | (std::size_t{1} << dir)];
        Morphism f{dom, cod, detail::as_vector(detail::field(es[t], "map", p), dom->n, cod->n, p + "/map")};
        if (auto e = find_morphism_failure(f)) throw FormatError(p + "/map", *e);
        c.e[from][dir] = std::move(f);
    }
    if (auto e = c.commutation_failure()) throw FormatError("/edges", *e);
    return c;
}

struct NFoldFactorisation {
    Morphism e_top;  // top vertex onto its quotient; identity elsewhere
    NCube m;
};

// Quotient of the top vertex by T(intersection of rib kernels).
inline NFoldFactorisation nfold_factorize(const Reflector& R, const NCube& c) {
    if (!is_nfold_extension(c)) throw AlgebraError("nfold_factorize: not an n-fold extension");
    Subobject N = rib_kernel_radical(R, c);
    if (!N.normal) throw AlgebraError("condition (N) fails for the cube");
    Quotient q = quotient(c.top(), N, c.top()->name + "/T");
    NCube m = c;
    m.v[0] = q.alg;
    for (unsigned i = 0; i < c.n; ++i) m.e[0][i] = induced_from_quotient(q, c.edge(0, i));
    return {q.proj, m};
}

}  // namespace semiab
