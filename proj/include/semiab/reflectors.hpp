#pragma once

#include <memory>

#include "homs.hpp"
#include "report.hpp"

namespace semiab {

enum class Family { ab, burnside, exponent, reduced, zerorng, boole, pi0, id, composite };

// A named reflection onto a subvariety or torsion-free subcategory, given by
// its radical T(A); the reflection is A / T(A).
class Reflector {
public:
    Family family = Family::id;
    unsigned k = 0;
    std::shared_ptr<const Reflector> outer;
    std::shared_ptr<const Reflector> inner;

    static Reflector ab() { return {Family::ab}; }
    static Reflector burnside(unsigned k) { return {Family::burnside, k}; }
    static Reflector exponent(unsigned k) { return {Family::exponent, k}; }
    static Reflector reduced() { return {Family::reduced}; }
    static Reflector zerorng() { return {Family::zerorng}; }
    static Reflector boole() { return {Family::boole}; }
    static Reflector pi0() { return {Family::pi0}; }
    static Reflector identity() { return {Family::id}; }
    static Reflector composite(const Reflector& outer, const Reflector& inner) {
        Reflector r{Family::composite};
        r.outer = std::make_shared<const Reflector>(outer);
        r.inner = std::make_shared<const Reflector>(inner);
        return r;
    }

    std::string id() const {
        switch (family) {
            case Family::ab: return "ab";
            case Family::burnside: return "burnside:" + std::to_string(k);
            case Family::exponent: return "exponent:" + std::to_string(k);
            case Family::reduced: return "reduced";
            case Family::zerorng: return "zerorng";
            case Family::boole: return "boole";
            case Family::pi0: return "pi0";
            case Family::id: return "id";
            case Family::composite: return "composite:" + strip(outer->id()) + "∘" + strip(inner->id());
        }
        return "?";
    }

    // Accepts ab, burnside:k, exponent:k, reduced, zerorng, boole, pi0, id and
    // composite:OUTER∘INNER (also written OUTER*INNER).
    static Reflector parse(std::string s) {
        const std::string ring = "∘";
        if (s.rfind("composite:", 0) == 0) s = s.substr(10);
        auto split_at = [&](std::size_t pos, std::size_t len) {
            return composite(parse(s.substr(0, pos)), parse(s.substr(pos + len)));
        };
        if (auto p = s.find(ring); p != std::string::npos) return split_at(p, ring.size());
        if (auto p = s.find('*'); p != std::string::npos) return split_at(p, 1);
        auto param = [&](const std::string& prefix) -> std::optional<unsigned> {
            if (s.rfind(prefix, 0) != 0) return std::nullopt;
            std::string d = s.substr(prefix.size());
            if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos || std::stoul(d) == 0)
                throw AlgebraError("bad parameter in reflector '" + s + "'");
            return static_cast<unsigned>(std::stoul(d));
        };
        if (s == "ab") return ab();
        if (auto k = param("burnside:")) return burnside(*k);
        if (auto k = param("exponent:")) return exponent(*k);
        if (s == "reduced") return reduced();
        if (s == "zerorng") return zerorng();
        if (s == "boole") return boole();
        if (s == "pi0") return pi0();
        if (s == "id") return identity();
        throw AlgebraError("unknown reflector '" + s + "'");
    }

    bool accepts(const Variety& v) const {
        switch (family) {
            case Family::ab:
            case Family::exponent: return v.kind == Kind::group;
            case Family::burnside: return v.kind == Kind::group || v.kind == Kind::zmod;
            case Family::reduced: return v.kind == Kind::comm_ring;
            case Family::zerorng: return v.kind == Kind::rng_star;
            case Family::boole: return v.kind == Kind::nonassoc_ring;
            case Family::pi0: return v.kind == Kind::gpd;
            case Family::id: return true;
            case Family::composite: return inner->accepts(v) && outer->accepts(v);
        }
        return false;
    }

    // Subvarieties: closed under subobjects, quotients and products.
    bool is_birkhoff() const {
        switch (family) {
            case Family::reduced:
            case Family::pi0: return false;
            case Family::composite: return outer->is_birkhoff() && inner->is_birkhoff();
            default: return true;
        }
    }

    Subobject radical(const AlgPtr& A) const;

    Reflector(Family f = Family::id, unsigned kk = 0) : family(f), k(kk) {}

private:
    static std::string strip(const std::string& s) { return s.rfind("composite:", 0) == 0 ? s.substr(10) : s; }
};

struct TorsionDecomposition {
    AlgPtr A;
    Subobject radical;   // T(A)
    Morphism t;          // T(A) -> A
    AlgPtr reflection;   // F(A)
    Morphism unit;       // A -> F(A)
    Quotient q;
};

inline TorsionDecomposition reflect(const Reflector& R, const AlgPtr& A) {
    Subobject T = R.radical(A);
    Embedded e = as_algebra(T, "T(" + A->name + ")");
    Quotient q = quotient(A, T, "F(" + A->name + ")");
    return {A, T, e.incl, q.alg, q.proj, q};
}

inline Subobject Reflector::radical(const AlgPtr& A) const {
    if (!accepts(A->variety)) throw AlgebraError("reflector " + id() + " does not apply to " + A->variety.id());
    const Algebra& a = *A;
    Subobject T;
    switch (family) {
        case Family::id: T = zero_subobject(A); break;
        case Family::ab: T = commutator_subgroup(A, whole(A), whole(A)); break;
        case Family::exponent: T = power_subobject(A, k); break;
        case Family::burnside:
            T = a.variety.kind == Kind::zmod ? power_subobject(A, k)
                                             : join_normal(commutator_subgroup(A, whole(A), whole(A)),
                                                           power_subobject(A, k));
            break;
        case Family::reduced: {
            std::vector<Element> nil;
            for (Element x = 0; x < a.n; ++x) {
                Element p = x;
                for (std::size_t j = 0; j <= a.n && p != 0; ++j) p = a.mul(p, x);
                if (p == 0) nil.push_back(x);
            }
            T = make_subobject(A, nil);
            break;
        }
        case Family::zerorng: {
            std::vector<Element> products;
            for (Element x = 0; x < a.n; ++x)
                for (Element y = 0; y < a.n; ++y) products.push_back(a.mul(x, y));
            T = make_subobject(A, generated_subalgebra(A, products).elems);
            break;
        }
        case Family::boole: {
            std::vector<Element> gens;
            for (Element x = 0; x < a.n; ++x) gens.push_back(a.sub(a.mul(x, x), x));
            T = normal_closure(A, gens);
            break;
        }
        case Family::pi0: {
            std::vector<Element> gens;
            for (Element x = 0; x < a.n; ++x) {
                gens.push_back(a.sub(x, a.unary_[0][x]));
                gens.push_back(a.sub(x, a.unary_[1][x]));
            }
            T = normal_closure(A, gens);
            break;
        }
        case Family::composite: {
            TorsionDecomposition d = reflect(*inner, A);
            T = preimage(d.unit, outer->radical(d.reflection));
            break;
        }
    }
    if (!T.normal) throw AlgebraError("radical of " + id() + " is not normal in " + A->name);
    return T;
}

inline Subobject radical(const Reflector& R, const AlgPtr& A) { return R.radical(A); }

inline bool in_subcategory(const Reflector& R, const AlgPtr& A) { return R.radical(A).is_zero(); }
inline bool is_torsion(const Reflector& R, const AlgPtr& A) { return R.radical(A).is_all(); }

// F(f) : F(dom f) -> F(cod f), [x] |-> eta(f(x)).
inline Morphism apply(const TorsionDecomposition& dd, const TorsionDecomposition& dc, const Morphism& f) {
    return induced_from_quotient(dd.q, compose(dc.unit, f));
}

inline Morphism apply(const Reflector& R, const Morphism& f) {
    return apply(reflect(R, f.dom), reflect(R, f.cod), f);
}

// ---------------------------------------------------------------------------
// corpus sequences

struct Surjection {
    AlgPtr A;
    Subobject N;
    Quotient q;
    const Morphism& f() const { return q.proj; }
};

inline std::vector<Surjection> surjections_from(const AlgPtr& A) {
    std::vector<Surjection> out;
    for (const Subobject& N : normal_subobjects(A)) {
        std::string nm = A->name + "/" + (N.is_zero() ? "0" : N.is_all() ? A->name : std::to_string(N.size()));
        out.push_back({A, N, quotient(A, N, nm)});
    }
    return out;
}

struct SplitSequence {
    AlgPtr A;
    Subobject N;
    Quotient q;
    Embedded k;
    Morphism s;

    const Morphism& f() const { return q.proj; }
    std::string label() const { return "0 -> " + k.alg->name + " -> " + A->name + " -> " + q.alg->name + " -> 0"; }
    json witness() const {
        return {{"type", "split-sequence"}, {"label", label()}, {"algebra", semiab::to_json(*A)},
                {"kernel", N.elems}, {"section", s.map}};
    }
};

// Every split short exact sequence with middle object in `algebras`, up to
// isomorphism of the quotient: one per normal subobject admitting a section.
inline std::vector<SplitSequence> split_sequences(const std::vector<AlgPtr>& algebras) {
    std::vector<SplitSequence> out;
    for (const AlgPtr& A : algebras)
        for (Surjection& s : surjections_from(A)) {
            auto sec = find_section(s.q.proj);
            if (!sec) continue;
            Embedded k = as_algebra(s.N, s.N.is_zero() ? "0" : "K" + std::to_string(s.N.size()));
            out.push_back({A, s.N, s.q, k, *sec});
        }
    return out;
}

// ---------------------------------------------------------------------------
// criteria

inline json algebra_witness(const AlgPtr& A) {
    return {{"type", "algebra"}, {"label", A->name}, {"algebra", to_json(*A)}};
}

// T(T(A)) = T(A) on every member.
inline Report is_idempotent_radical(const Reflector& R, const std::vector<AlgPtr>& corpus) {
    Report r;
    r.suite = "idempotent-radical";
    r.reflector = R.id();
    for (const AlgPtr& A : corpus) {
        if (!R.accepts(A->variety)) continue;
        r.count("algebras");
        Embedded T = as_algebra(R.radical(A));
        if (!R.radical(T.alg).is_all()) r.fail(algebra_witness(A));
    }
    return r;
}

// Does F send the split sequence to a split short exact sequence?
inline bool preserves_split_sequence(const Reflector& R, const SplitSequence& s) {
    TorsionDecomposition dK = reflect(R, s.k.alg);
    TorsionDecomposition dA = reflect(R, s.A);
    TorsionDecomposition dB = reflect(R, s.q.alg);
    Morphism Fk = apply(dK, dA, s.k.incl);
    Morphism Ff = apply(dA, dB, s.f());
    return is_short_exact(Fk, Ff);
}

inline Report is_protoadditive(const Reflector& R, const std::vector<SplitSequence>& sequences) {
    Report r;
    r.suite = "protoadditive";
    r.reflector = R.id();
    for (const SplitSequence& s : sequences) {
        if (!R.accepts(s.A->variety)) continue;
        for (Element y = 0; y < s.q.alg->n; ++y)
            if (s.f().map[s.s.map[y]] != y) throw AlgebraError("is_protoadditive: input is not split");
        r.count("split sequences");
        if (!preserves_split_sequence(R, s)) r.fail(s.witness());
    }
    return r;
}

// hom(T, F) = 0 between torsion and torsion-free members, idempotence, and
// closure of the torsion-free part under extensions.
inline Report torsion_theory_report(const Reflector& R, const std::vector<AlgPtr>& corpus) {
    Report r = is_idempotent_radical(R, corpus);
    r.suite = "torsion-theory";
    bool idempotent = r.pass;
    std::vector<AlgPtr> torsion, free;
    for (const AlgPtr& A : corpus) {
        if (!R.accepts(A->variety)) continue;
        Subobject T = R.radical(A);
        if (T.is_all()) torsion.push_back(A);
        if (T.is_zero()) free.push_back(A);
    }
    bool orthogonal = true;
    for (const AlgPtr& T : torsion)
        for (const AlgPtr& F : free) {
            if (!(T->variety == F->variety)) continue;
            r.count("torsion/torsion-free pairs");
            for (const Morphism& h : enumerate_homs(T, F))
                if (std::any_of(h.map.begin(), h.map.end(), [](Element e) { return e != 0; })) {
                    orthogonal = false;
                    r.fail({{"type", "hom"}, {"label", T->name + " -> " + F->name}, {"morphism", to_json(h)}});
                    break;
                }
        }
    bool closed = true;
    for (const AlgPtr& A : corpus) {
        if (!R.accepts(A->variety)) continue;
        bool A_free = R.radical(A).is_zero();
        for (const Surjection& s : surjections_from(A)) {
            r.count("short exact sequences");
            if (A_free) continue;
            Embedded K = as_algebra(s.N);
            if (R.radical(K.alg).is_zero() && R.radical(s.q.alg).is_zero()) {
                closed = false;
                r.fail({{"type", "surjection"}, {"label", A->name + " -> " + s.q.alg->name},
                        {"algebra", to_json(*A)}, {"kernel", s.N.elems}});
                break;
            }
        }
    }
    r.details["idempotent"] = idempotent;
    r.details["hom_orthogonal"] = orthogonal;
    r.details["closed_under_extensions"] = closed;
    r.details["torsion_members"] = torsion.size();
    r.details["torsion_free_members"] = free.size();
    return r;
}

}  // namespace semiab
