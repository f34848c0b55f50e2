#pragma once

#include <future>
#include <random>

#include "factorisation.hpp"

namespace semiab {

// The unit square of f (A -> F(A), f, F(f), B -> F(B)) is a double extension,
// i.e. A -> F(A) x_{F(B)} B is surjective.
inline bool unit_square_is_double_extension(const Reflector& B, const Morphism& f) {
    TorsionDecomposition dA = reflect(B, f.dom);
    TorsionDecomposition dB = reflect(B, f.cod);
    NCube sq = NCube::square(dA.unit, f, apply(dA, dB, f), dB.unit);
    return is_nfold_extension(sq);
}

struct BirkhoffContext {
    Reflector B;
    std::optional<Reflector> C;  // C contained in B, reached by a protoadditive reflector

    // Checks the Birkhoff property on the given surjections; returns the
    // number checked, or throws on the first failure.
    std::size_t certify(const std::vector<Morphism>& surjections) const {
        if (!B.is_birkhoff()) throw AlgebraError(B.id() + " is not a subvariety reflector");
        for (const Morphism& f : surjections)
            if (!unit_square_is_double_extension(B, f))
                throw AlgebraError("unit square of " + f.dom->name + " -> " + f.cod->name + " is not a double extension");
        return surjections.size();
    }
};

// [f]_{1,B}: kernel pair R of f, the radical [R]_B, the part of it killed by
// the first projection, pushed into dom(f) along the second.
inline Subobject birkhoff_radical(const Reflector& B, const Morphism& f) {
    if (!is_surjective(f)) throw AlgebraError("birkhoff_radical: not surjective");
    PairAlgebra R = kernel_pair(f);
    Subobject RB = B.radical(R.alg);
    std::vector<Element> out;
    for (Element r : RB.elems)
        if (R.p1.map[r] == 0) out.push_back(R.p2.map[r]);
    return make_subobject(f.dom, std::move(out));
}

// [c]_{2,B} for a double extension: the kernel pair rho : R[a2] -> R[b1] in
// the arrow category, its radical [rho]_{1,B}, then {y : (0, y) in it}.
inline Subobject birkhoff_radical_square(const Reflector& B, const NCube& c) {
    if (c.n != 2) throw AlgebraError("birkhoff_radical_square: needs a square");
    const Morphism& a1 = c.edge(0, 0);
    const Morphism& a2 = c.edge(0, 1);
    const Morphism& b1 = c.edge(1, 1);
    PairAlgebra Ra2 = kernel_pair(a2);
    PairAlgebra Rb1 = kernel_pair(b1);
    std::vector<Element> rho_map(Ra2.alg->n);
    for (Element x = 0; x < Ra2.alg->n; ++x)
        rho_map[x] = *Rb1.index_of(a1.map[Ra2.p1.map[x]], a1.map[Ra2.p2.map[x]]);
    Morphism rho{Ra2.alg, Rb1.alg, std::move(rho_map)};
    Subobject inner = birkhoff_radical(B, rho);
    std::vector<Element> out;
    for (Element r : inner.elems)
        if (Ra2.p1.map[r] == 0) out.push_back(Ra2.p2.map[r]);
    return make_subobject(c.top(), std::move(out));
}

// Kernel-pair sizes grow quadratically per dimension; above this the literal
// construction is skipped.
inline constexpr std::size_t kLiteralSquareLimit = 1024;

inline std::size_t square_literal_cost(const NCube& c) {
    std::size_t k2 = kernel(c.edge(0, 1)).size();
    std::size_t kb = kernel(c.edge(1, 1)).size();
    std::size_t ra2 = c.top()->n * k2;
    std::size_t rb1 = c.v[1]->n * kb;
    return ra2 * ra2 / std::max<std::size_t>(rb1, 1);
}

// [c]_{n,B} by the literal construction (n = 1, 2).
inline Subobject higher_radical(const Reflector& B, const NCube& c) {
    if (c.n == 1) return birkhoff_radical(B, c.edge(0, 0));
    if (c.n == 2) return birkhoff_radical_square(B, c);
    throw AlgebraError("higher_radical: dimension capped at 2");
}

inline NCube centralize(const Reflector& B, const NCube& c) {
    if (!is_nfold_extension(c)) throw AlgebraError("centralize: not an n-fold extension");
    Subobject N = higher_radical(B, c);
    Quotient q = quotient(c.top(), N, c.top()->name + "/[" + B.id() + "]");
    NCube out = c;
    out.v[0] = q.alg;
    for (unsigned i = 0; i < c.n; ++i) out.e[0][i] = induced_from_quotient(q, c.edge(0, i));
    return out;
}

struct NormalityVerdict {
    bool normal = false;                   // [c]_{n,B} = 0
    std::optional<bool> kernel_criterion;  // intersection of rib kernels lies in B
};

// With `protoadditive` the kernel criterion is evaluated too; callers compare.
inline NormalityVerdict is_birkhoff_normal(const Reflector& B, const NCube& c, bool protoadditive = false) {
    if (!is_nfold_extension(c)) throw AlgebraError("is_birkhoff_normal: not an n-fold extension");
    NormalityVerdict v;
    v.normal = higher_radical(B, c).is_zero();
    if (protoadditive) v.kernel_criterion = rib_kernel_radical(B, c).is_zero();
    return v;
}

enum class CompositeMode { join, intersection };

// join: [c]_{n,B} v normal closure of [meet of rib kernels]_C, C the composite.
// intersection: [c]_{n,B} v [meet of rib kernels]_{B'}, B' the second subvariety.
// Normal closures are taken in the top vertex.
inline Subobject composite_radical(const Reflector& B, const Reflector& other, const NCube& c, CompositeMode mode) {
    Subobject base = higher_radical(B, c);
    Subobject extra = rib_kernel_radical(other, c);
    if (mode == CompositeMode::intersection && !extra.normal)
        throw AlgebraError("composite_radical: radical of the kernel meet is not normal in the top vertex");
    return join_normal(base, normal_closure(c.top(), extra.elems));
}

// ---------------------------------------------------------------------------
// presentations and homology in Z/m-modules

// Invariant factors of a finite abelian group given as an algebra.
inline std::vector<std::size_t> abelian_invariants(const Algebra& A) {
    // count elements killed by d for every d | n, then peel off cyclic factors
    std::vector<std::size_t> orders(A.n);
    for (Element x = 0; x < A.n; ++x) orders[x] = A.add_order(x);
    std::vector<std::size_t> factors;
    std::size_t n = A.n;
    for (std::size_t p = 2; n > 1; ++p) {
        if (n % p != 0) continue;
        std::size_t pk = 1;
        while (n % p == 0) {
            n /= p;
            pk *= p;
        }
        // r_j = log_p |{x : p^j x = 0, x in p-part}|
        std::vector<std::size_t> logs = {0};
        for (std::size_t q = p;; q *= p) {
            std::size_t c = 0;
            for (std::size_t o : orders)
                if (q % o == 0) ++c;
            std::size_t l = 0;
            for (std::size_t t = c; t > 1; t /= p) ++l;
            logs.push_back(l);
            if (c == pk) break;
        }
        // number of cyclic factors of order >= p^j is logs[j] - logs[j-1]
        std::vector<std::size_t> ge(logs.size());
        for (std::size_t j = 1; j < logs.size(); ++j) ge[j] = logs[j] - logs[j - 1];
        for (std::size_t j = 1; j < logs.size(); ++j) {
            std::size_t exactly = ge[j] - (j + 1 < logs.size() ? ge[j + 1] : 0);
            std::size_t q = 1;
            for (std::size_t t = 0; t < j; ++t) q *= p;
            for (std::size_t t = 0; t < exactly; ++t) factors.push_back(q);
        }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

inline std::string describe_abelian(const Algebra& A) {
    auto f = abelian_invariants(A);
    if (f.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "xC" : "C") + std::to_string(f[i]);
    return s;
}

inline bool is_free_module(const Algebra& A) {
    if (A.variety.kind != Kind::zmod) return false;
    for (std::size_t f : abelian_invariants(A))
        if (f != A.variety.modulus) return false;
    return true;
}

// (Z/m)^r -> A sending the i-th basis vector (first coordinate most
// significant) to images[i].
inline Morphism free_map(const AlgPtr& P, unsigned m, const std::vector<Element>& images, const AlgPtr& A) {
    const std::size_t r = images.size();
    std::vector<Element> map(P->n);
    for (Element x = 0; x < P->n; ++x) {
        Element acc = 0;
        Element rest = x;
        for (std::size_t i = r; i-- > 0;) {
            acc = A->add(acc, A->times(rest % m, images[i]));
            rest /= m;
        }
        map[x] = acc;
    }
    return make_morphism(P, A, std::move(map));
}

struct Presentation {
    unsigned n = 1;
    NCube cube;  // bottom vertex is the presented object
    std::string label;
};

// n = 1: free module on a generating set of A (plus `extra` additional
// basis vectors with seed-chosen images). n = 2: top Q + P with ribs
// (q,u) |-> u and (q,u) |-> u + i(q), Q free on generators of K[p].
inline Presentation build_presentation(const AlgPtr& A, unsigned n, unsigned extra = 0, std::uint64_t seed = 0) {
    if (A->variety.kind != Kind::zmod) throw AlgebraError("build_presentation: needs a Z/m-module");
    if (n < 1 || n > 2) throw AlgebraError("build_presentation: dimension must be 1 or 2");
    const unsigned m = A->variety.modulus;
    std::mt19937_64 rng(seed);
    Morphism p = identity(A);
    if (!(is_free_module(*A) && extra == 0)) {
        std::vector<Element> gens = generating_set(A);
        for (unsigned i = 0; i < extra; ++i)
            gens.push_back(static_cast<Element>(std::uniform_int_distribution<std::size_t>(0, A->n - 1)(rng)));
        AlgPtr P = zmod_free(m, static_cast<unsigned>(gens.size()));
        p = free_map(P, m, gens, A);
    }
    std::string label = p.dom->name + " -> " + A->name;
    if (n == 1) return {1, NCube::arrow(p), label};
    Embedded K = as_algebra(kernel(p));
    std::vector<Element> kgens;
    for (Element g : generating_set(K.alg)) kgens.push_back(K.incl.map[g]);
    AlgPtr Q = zmod_free(m, static_cast<unsigned>(kgens.size()));
    Morphism iota = free_map(Q, m, kgens, p.dom);
    PairAlgebra top = product(Q, p.dom);
    const AlgPtr& P = p.dom;
    std::vector<Element> r1(top.alg->n), r2(top.alg->n);
    for (Element x = 0; x < top.alg->n; ++x) {
        Element q = top.p1.map[x], u = top.p2.map[x];
        r1[x] = u;
        r2[x] = P->add(u, iota.map[q]);
    }
    Morphism a1{top.alg, P, std::move(r1)};
    Morphism a2{top.alg, P, std::move(r2)};
    return {2, NCube::square(a1, a2, p, p), top.alg->name + " => " + label};
}

struct HopfComputation {
    Presentation presentation;
    Subobject numerator;    // [P_top]_B meet the rib kernels
    Subobject denominator;  // [P]_{n,B}, shortcut form
    std::optional<bool> literal_agrees;  // literal kernel-pair route, when affordable
    AlgPtr homology;
};

inline HopfComputation hopf_from_presentation(const Reflector& B, Presentation pres) {
    const NCube& c = pres.cube;
    if (!is_nfold_extension(c)) throw AlgebraError("presentation is not an n-fold extension");
    for (std::size_t mask = 0; mask + 1 < c.v.size(); ++mask)
        if (!is_free_module(*c.v[mask])) throw AlgebraError("presentation vertex is not free");
    Subobject meet = rib_kernel_meet(c);
    Subobject num = meet_subobjects(B.radical(c.top()), meet);
    Subobject den = rib_kernel_radical(B, c);
    std::optional<bool> literal;
    if (c.n == 1 || square_literal_cost(c) <= kLiteralSquareLimit) literal = higher_radical(B, c) == den;
    Embedded N = as_algebra(num);
    Subobject D = preimage(N.incl, den);
    D.normal = true;  // modules: every subobject is normal
    AlgPtr H = quotient(N.alg, D, "H").alg;
    return {std::move(pres), num, den, literal, H};
}

struct HopfResult {
    HopfComputation first;
    HopfComputation second;
    bool independent = false;  // the two homology modules are isomorphic
    AlgPtr homology() const { return first.homology; }
};

// Homology of degree 2 or 3 from two presentations, the second with free
// rank augmented by one; both are evaluated concurrently.
inline HopfResult hopf_homology(const Reflector& B, const AlgPtr& A, unsigned degree, std::uint64_t seed = 0) {
    if (degree < 2 || degree > 3) throw AlgebraError("hopf_homology: degree must be 2 or 3");
    if (!B.accepts(A->variety) || A->variety.kind != Kind::zmod)
        throw AlgebraError("hopf_homology: needs a Z/m-module and a matching reflector");
    unsigned n = degree - 1;
    auto run = [&B, &A, n, seed](unsigned extra) {
        return hopf_from_presentation(B, build_presentation(A, n, extra, seed));
    };
    auto fut = std::async(std::launch::async, run, 1u);
    HopfComputation first = run(0);
    HopfComputation second = fut.get();
    bool iso = isomorphic(first.homology, second.homology);
    if (!iso) throw AlgebraError("homology depends on the presentation (" + describe_abelian(*first.homology) + " vs " +
                                 describe_abelian(*second.homology) + ")");
    return {std::move(first), std::move(second), iso};
}

}  // namespace semiab
