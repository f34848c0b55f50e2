#pragma once

#include <array>
#include <functional>
#include <numeric>
#include <random>

#include "corpus.hpp"

namespace semiab {

// ---------------------------------------------------------------------------
// instances and their serialized form

inline Surjection make_surjection(const AlgPtr& A, const Subobject& N) {
    std::string nm = A->name + "/" + (N.is_zero() ? "0" : N.is_all() ? A->name : std::to_string(N.size()));
    return {A, N, quotient(A, N, nm)};
}

inline json surjection_json(const Surjection& s) {
    return {{"type", "surjection"},
            {"label", s.A->name + " -> " + s.q.alg->name},
            {"algebra", to_json(*s.A)},
            {"kernel", s.N.elems}};
}

inline AlgPtr instance_algebra(const json& j) { return algebra_from_json(j.at("algebra"), "/algebra"); }

inline Subobject instance_subobject(const AlgPtr& A, const json& j) {
    return make_subobject(A, j.get<std::vector<Element>>());
}

inline Surjection surjection_from_json(const json& j) {
    AlgPtr A = instance_algebra(j);
    return make_surjection(A, instance_subobject(A, j.at("kernel")));
}

inline SplitSequence split_from_json(const json& j) {
    Surjection s = surjection_from_json(j);
    Embedded k = as_algebra(s.N, s.N.is_zero() ? "0" : "K" + std::to_string(s.N.size()));
    Morphism sec = make_morphism(s.q.alg, s.A, j.at("section").get<std::vector<Element>>());
    return {s.A, s.N, s.q, k, sec};
}

// Square A -> A/N1, A -> A/N2 over A/M, with N1, N2 contained in M.
struct Square {
    AlgPtr A;
    Subobject N1, N2, M;
    NCube cube;

    std::string label() const {
        return A->name + " / (" + std::to_string(N1.size()) + ", " + std::to_string(N2.size()) + " ; " +
               std::to_string(M.size()) + ")";
    }
    json to_json() const {
        return {{"type", "square"}, {"label", label()}, {"algebra", semiab::to_json(*A)},
                {"n1", N1.elems},   {"n2", N2.elems},   {"m", M.elems}};
    }
};

inline Square make_square(const AlgPtr& A, const Subobject& N1, const Subobject& N2, const Subobject& M) {
    if (!N1.subset_of(M) || !N2.subset_of(M)) throw AlgebraError("make_square: kernels must lie in M");
    Quotient q1 = quotient(A, N1, A->name + "/N1");
    Quotient q2 = quotient(A, N2, A->name + "/N2");
    Quotient qm = quotient(A, M, A->name + "/M");
    NCube c = NCube::square(q1.proj, q2.proj, induced_from_quotient(q1, qm.proj), induced_from_quotient(q2, qm.proj));
    return {A, N1, N2, M, std::move(c)};
}

inline Square square_from_json(const json& j) {
    AlgPtr A = instance_algebra(j);
    return make_square(A, instance_subobject(A, j.at("n1")), instance_subobject(A, j.at("n2")),
                       instance_subobject(A, j.at("m")));
}

inline json make_witness(const std::string& check, json instance, json observation) {
    json w = std::move(instance);
    w["check"] = check;
    w["observation"] = std::move(observation);
    return w;
}

using Observation = std::optional<json>;

namespace detail {

inline bool bijective_into(const PairAlgebra& P, const Morphism& a, const Morphism& b) {
    if (P.alg->n != a.dom->n) return false;
    std::vector<char> hit(P.alg->n, 0);
    for (Element x = 0; x < a.dom->n; ++x) {
        auto i = P.index_of(a.map[x], b.map[x]);
        if (!i || hit[*i]) return false;
        hit[*i] = 1;
    }
    return true;
}

template <class T>
std::vector<T> sample(std::vector<T> xs, std::size_t cap, std::mt19937_64& rng) {
    if (xs.size() <= cap) return xs;
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
    std::vector<T> out;
    for (std::size_t i : idx) out.push_back(xs[i]);
    return out;
}

inline std::vector<AlgPtr> accepted(const Reflector& R, const Corpus& c) {
    std::vector<AlgPtr> out;
    for (const AlgPtr& A : c.algebras)
        if (R.accepts(A->variety)) out.push_back(A);
    return out;
}

inline json elems_or_null(const std::optional<Subobject>& s) { return s ? json(s->elems) : json(nullptr); }

}  // namespace detail

// ---------------------------------------------------------------------------
// single-instance checks; each returns an observation when it finds a violation

inline Observation idempotence_violation(const Reflector& R, const AlgPtr& A) {
    Subobject T = R.radical(A);
    Subobject TT = R.radical(as_algebra(T).alg);
    if (TT.is_all()) return std::nullopt;
    return json{{"T", T.size()}, {"TT", TT.size()}};
}

// F(A) must be torsion-free: T(A / T(A)) = 0.
inline Observation reflection_violation(const Reflector& R, const AlgPtr& A) {
    TorsionDecomposition d = reflect(R, A);
    Subobject T2 = R.radical(d.reflection);
    if (T2.is_zero()) return std::nullopt;
    return json{{"F(A)", d.reflection->n}, {"T(F(A))", T2.size()}};
}

// Pull the unit of A back along a subalgebra X of F(A); F must invert P -> X.
inline Observation stable_unit_violation(const Reflector& R, const AlgPtr& A, const std::vector<Element>& X) {
    TorsionDecomposition d = reflect(R, A);
    Embedded e = as_algebra(make_subobject(d.reflection, X), "X");
    PairAlgebra P = pullback(d.unit, e.incl);
    Morphism Fp = apply(R, P.p2);
    if (is_isomorphism(Fp)) return std::nullopt;
    return json{{"P", P.alg->n}, {"F(P)", Fp.dom->n}, {"F(X)", Fp.cod->n}};
}

// Nonzero morphism from a torsion object to a torsion-free one.
inline Observation orthogonality_hom_violation(const Reflector& R, const Morphism& h) {
    if (!is_torsion(R, h.dom) || !in_subcategory(R, h.cod)) return std::nullopt;
    if (std::all_of(h.map.begin(), h.map.end(), [](Element e) { return e == 0; })) return std::nullopt;
    return json{{"nonzero", true}};
}

struct SplitImage {
    Morphism Fk;
    Morphism Ff;
    bool exact = false;
    bool mono = false;
    bool normal_mono = false;
};

inline SplitImage split_image(const Reflector& R, const SplitSequence& s) {
    TorsionDecomposition dK = reflect(R, s.k.alg);
    TorsionDecomposition dA = reflect(R, s.A);
    TorsionDecomposition dB = reflect(R, s.q.alg);
    SplitImage im{apply(dK, dA, s.k.incl), apply(dA, dB, s.f())};
    im.exact = is_short_exact(im.Fk, im.Ff);
    im.mono = is_injective(im.Fk);
    im.normal_mono = im.mono && image(im.Fk).normal;
    return im;
}

inline Observation split_exactness_violation(const Reflector& R, const SplitSequence& s) {
    SplitImage im = split_image(R, s);
    if (im.exact) return std::nullopt;
    return json{{"F(K)", im.Fk.dom->n}, {"F(A)", im.Fk.cod->n}, {"F(B)", im.Ff.cod->n}, {"F(k) injective", im.mono}};
}

// F(A x_B X) -> F(A) x_{F(B)} F(X) for the split epi f and a subalgebra X of B.
inline Observation split_pullback_violation(const Reflector& R, const SplitSequence& s, const std::vector<Element>& X) {
    Embedded x = as_algebra(make_subobject(s.q.alg, X), "X");
    PairAlgebra P = pullback(s.f(), x.incl);
    TorsionDecomposition dP = reflect(R, P.alg), dA = reflect(R, s.A), dB = reflect(R, s.q.alg),
                         dX = reflect(R, x.alg);
    Morphism Fpa = apply(dP, dA, P.p1), Fpx = apply(dP, dX, P.p2);
    PairAlgebra Q = pullback(apply(dA, dB, s.f()), apply(dX, dB, x.incl));
    if (detail::bijective_into(Q, Fpa, Fpx)) return std::nullopt;
    return json{{"F(P)", dP.reflection->n}, {"pullback of images", Q.alg->n}};
}

inline Observation protosplit_image_violation(const Reflector& R, const SplitSequence& s) {
    SplitImage im = split_image(R, s);
    if (im.normal_mono) return std::nullopt;
    return json{{"F(k) mono", im.mono}, {"F(k) normal mono", false}};
}

inline Observation hereditary_violation(const Reflector& R, const SplitSequence& s) {
    if (!is_torsion(R, s.A)) return std::nullopt;
    Subobject TK = R.radical(s.k.alg);
    if (TK.is_all()) return std::nullopt;
    return json{{"K", s.k.alg->n}, {"T(K)", TK.size()}};
}

inline Observation split_closure_violation(const Reflector& R, const SplitSequence& s) {
    if (!in_subcategory(R, s.k.alg) || !in_subcategory(R, s.q.alg)) return std::nullopt;
    Subobject T = R.radical(s.A);
    if (T.is_zero()) return std::nullopt;
    return json{{"T(A)", T.size()}};
}

inline Observation extension_closure_violation(const Reflector& R, const Surjection& s) {
    if (!in_subcategory(R, as_algebra(s.N).alg) || !in_subcategory(R, s.q.alg)) return std::nullopt;
    Subobject T = R.radical(s.A);
    if (T.is_zero()) return std::nullopt;
    return json{{"T(A)", T.size()}};
}

inline Observation normal_vs_kernel_violation(const Reflector& R, const Surjection& s) {
    bool normal = is_normal_extension(R, s.f());
    bool kernel_free = kernel_radical(R, s.f()).is_zero();
    if (normal == kernel_free) return std::nullopt;
    return json{{"normal", normal}, {"kernel torsion-free", kernel_free}};
}

// Square b.e = m.a with e in E-bar and m in M-bar must have a unique diagonal.
inline Observation diagonal_violation(const Reflector& R, const Surjection& e, const Surjection& m,
                                      const Morphism& a) {
    if (!in_e_bar(R, e.f()) || !in_m_bar(R, m.f())) return std::nullopt;
    Morphism ma = compose(m.f(), a);
    Morphism b = induced_from_quotient(e.q, ma);
    OrthogonalityResult r = check_orthogonal(e.f(), m.f(), a, b);
    if (r.verdict == Diagonal::unique) return std::nullopt;
    return json{{"diagonal", to_string(r.verdict)}};
}

inline Observation condition_N_violation(const Reflector& R, const AlgPtr& A, const Subobject& N) {
    Subobject TN = push_forward(as_algebra(N).incl, R.radical(as_algebra(N).alg));
    if (TN.normal) return std::nullopt;
    return json{{"N", N.size()}, {"T(N)", TN.size()}};
}

// Pullback of e in E-bar along a subalgebra X of its codomain stays in E-bar
// and is inverted by F.
inline Observation stable_e_violation(const Reflector& R, const Surjection& e, const std::vector<Element>& X) {
    if (!in_e_bar(R, e.f())) return std::nullopt;
    Embedded x = as_algebra(make_subobject(e.q.alg, X), "X");
    PairAlgebra P = pullback(e.f(), x.incl);
    bool stays = in_e_bar(R, P.p2);
    bool inverted = is_isomorphism(apply(R, P.p2));
    if (stays && inverted) return std::nullopt;
    return json{{"in E-bar", stays}, {"inverted", inverted}};
}

// Every factorisation f = m.e with e in E-bar and m in M-bar is determined by
// ker e; count the normal N in K[f] that qualify.
inline std::size_t count_em_factorisations(const Reflector& R, const Surjection& f) {
    std::size_t count = 0;
    for (const Subobject& N : normal_subobjects(f.A)) {
        if (!N.subset_of(f.N)) continue;
        if (!R.radical(as_algebra(N).alg).is_all()) continue;
        Quotient q = quotient(f.A, N);
        Subobject rest = push_forward(q.proj, f.N);
        if (R.radical(as_algebra(rest).alg).is_zero()) ++count;
    }
    return count;
}

inline Observation factorisation_violation(const Reflector& R, const Surjection& s) {
    EMFactorisation em = em_factorize(R, s.f());
    std::size_t alternatives = count_em_factorisations(R, s);
    if (em.e_certified && em.m_certified && alternatives == 1) return std::nullopt;
    return json{{"e certified", em.e_certified}, {"m certified", em.m_certified}, {"factorisations", alternatives}};
}

// f : A -> A/N and g : A/N -> A/M normal must give g.f normal.
inline Observation composition_violation(const Reflector& R, const AlgPtr& A, const Subobject& N, const Subobject& M) {
    Quotient qn = quotient(A, N), qm = quotient(A, M);
    Morphism g = induced_from_quotient(qn, qm.proj);
    if (!is_normal_extension(R, qn.proj) || !is_normal_extension(R, g)) return std::nullopt;
    if (is_normal_extension(R, qm.proj)) return std::nullopt;
    return json{{"f normal", true}, {"g normal", true}, {"composite normal", false}};
}

// Pushout of A/N1 <- A -> A/N2 is A/(N1 v N2).
inline Observation pushout_violation(const Square& sq) {
    bool ext = is_nfold_extension(sq.cube);
    bool pushout = join_normal(sq.N1, sq.N2) == sq.M;
    if (ext == pushout) return std::nullopt;
    return json{{"double extension", ext}, {"pushout", pushout}};
}

inline Observation double_normal_violation(const Reflector& R, const Square& sq) {
    if (!is_nfold_extension(sq.cube)) return std::nullopt;
    bool by_kernels = is_nfold_normal(R, sq.cube);
    bool recursive = is_double_normal_recursive(R, sq.cube);
    if (by_kernels == recursive) return std::nullopt;
    return json{{"kernel criterion", by_kernels}, {"recursive", recursive}};
}

// [f]_{1,B} computed independently of kernel pairs, where a formula is known:
// [K,A] for ab, [K,A] K^k for burnside:k on groups, kK on modules.
inline bool has_commutator_oracle(const Reflector& B) {
    return B.family == Family::id || B.family == Family::ab || B.family == Family::burnside;
}

inline std::optional<Subobject> commutator_oracle(const Reflector& B, const Surjection& s) {
    const AlgPtr& A = s.A;
    switch (B.family) {
        case Family::id: return zero_subobject(A);
        case Family::ab: return commutator_subgroup(A, s.N, whole(A));
        case Family::burnside: {
            Embedded K = as_algebra(s.N);
            Subobject powers = push_forward(K.incl, power_subobject(K.alg, B.k));
            if (A->variety.kind == Kind::zmod) return powers;
            std::vector<Element> gens = commutator_subgroup(A, s.N, whole(A)).elems;
            gens.insert(gens.end(), powers.elems.begin(), powers.elems.end());
            return normal_closure(A, gens);
        }
        default: return std::nullopt;
    }
}

// Literal kernel-pair radical against the oracle and against the pullback
// definition of normality; with a protoadditive B also the kernel
// characterisation of normal extensions.
inline Observation kernel_pair_violation(const Reflector& B, const Surjection& s, bool protoadditive) {
    Subobject literal = birkhoff_radical(B, s.f());
    std::optional<Subobject> oracle = commutator_oracle(B, s);
    bool normal = is_normal_extension(B, s.f());
    Subobject KB = kernel_radical(B, s.f());
    bool kernel_in_B = KB.is_zero();
    std::vector<std::string> bad;
    if (oracle && !(*oracle == literal)) bad.push_back("literal radical differs from commutator oracle");
    if (literal.is_zero() != normal) bad.push_back("radical vanishing differs from pullback normality");
    if (protoadditive && !KB.normal) bad.push_back("radical of the kernel is not normal");
    if (protoadditive && kernel_in_B != normal) bad.push_back("normality differs from kernel in B");
    if (bad.empty()) return std::nullopt;
    return json{{"violations", bad},
                {"literal", literal.elems},
                {"oracle", detail::elems_or_null(oracle)},
                {"normal", normal},
                {"kernel in B", kernel_in_B}};
}

// Composite C = J.I over B = I: three routes to C-normality.
inline Observation composite_normality_violation(const Reflector& C, const Surjection& s) {
    const Reflector& B = *C.inner;
    bool direct = is_normal_extension(C, s.f());
    bool split = kernel_radical(C, s.f()).is_zero() && is_normal_extension(B, s.f());
    bool radical = composite_radical(B, C, NCube::arrow(s.f()), CompositeMode::join).is_zero();
    if (direct == split && split == radical) return std::nullopt;
    return json{{"normal", direct}, {"kernel in C and B-normal", split}, {"join radical zero", radical}};
}

// Literal [c]_{n,C} against [c]_{n,B} v ncl([meet of rib kernels]_C).
inline Observation composite_join_violation(const Reflector& C, const NCube& c) {
    Subobject literal = higher_radical(C, c);
    Subobject join = composite_radical(*C.inner, C, c, CompositeMode::join);
    if (literal == join) return std::nullopt;
    return json{{"literal", literal.elems}, {"join", join.elems}};
}

// Meet of all normal N with A/N abelian of exponent dividing k.
inline Subobject abelian_exponent_residual(const AlgPtr& A, unsigned k) {
    Subobject acc = whole(A);
    for (const Subobject& N : normal_subobjects(A)) {
        if (!acc.subset_of(N) && !N.is_all()) {
            Quotient q = quotient(A, N);
            const Algebra& Q = *q.alg;
            bool ok = !detail::check_abelian(Q);
            for (Element x = 0; ok && x < Q.n; ++x) ok = Q.times(k, x) == 0;
            if (ok) acc = meet_subobjects(acc, N);
        }
    }
    return acc;
}

inline Observation intersection_object_violation(unsigned k, const AlgPtr& A) {
    Subobject direct = Reflector::burnside(k).radical(A);
    Subobject oracle = abelian_exponent_residual(A, k);
    Subobject join = join_normal(Reflector::ab().radical(A), Reflector::exponent(k).radical(A));
    if (direct == oracle && oracle == join) return std::nullopt;
    return json{{"burnside", direct.elems}, {"oracle", oracle.elems}, {"join", join.elems}};
}

inline Observation intersection_normal_violation(unsigned k, const Surjection& s) {
    bool both = is_normal_extension(Reflector::burnside(k), s.f());
    bool ab = is_normal_extension(Reflector::ab(), s.f());
    bool exp = is_normal_extension(Reflector::exponent(k), s.f());
    if (both == (ab && exp)) return std::nullopt;
    return json{{"intersection normal", both}, {"ab normal", ab}, {"exponent normal", exp}};
}

// ---------------------------------------------------------------------------
// replay

// Rebuilds the instance recorded in a witness and reruns its check.
inline Observation replay_witness(const std::string& reflector, const json& w) {
    const Reflector R = Reflector::parse(reflector);
    const std::string check = w.at("check").get<std::string>();
    auto along = [&] { return w.at("along").get<std::vector<Element>>(); };
    if (check == "idempotence") return idempotence_violation(R, instance_algebra(w));
    if (check == "reflection") return reflection_violation(R, instance_algebra(w));
    if (check == "stable-unit") return stable_unit_violation(R, instance_algebra(w), along());
    if (check == "torsion-hom") {
        AlgPtr T = algebra_from_json(w.at("torsion")), F = algebra_from_json(w.at("torsion_free"));
        return orthogonality_hom_violation(R, make_morphism(T, F, w.at("map").get<std::vector<Element>>()));
    }
    if (check == "split-exactness") return split_exactness_violation(R, split_from_json(w));
    if (check == "split-pullback") return split_pullback_violation(R, split_from_json(w), along());
    if (check == "protosplit-image") return protosplit_image_violation(R, split_from_json(w));
    if (check == "hereditary") return hereditary_violation(R, split_from_json(w));
    if (check == "split-closure") return split_closure_violation(R, split_from_json(w));
    if (check == "extension-closure") return extension_closure_violation(R, surjection_from_json(w));
    if (check == "normal-vs-kernel") return normal_vs_kernel_violation(R, surjection_from_json(w));
    if (check == "diagonal") {
        Surjection e = surjection_from_json(w.at("e")), m = surjection_from_json(w.at("m"));
        return diagonal_violation(R, e, m, make_morphism(e.A, m.A, w.at("a").get<std::vector<Element>>()));
    }
    if (check == "condition-N") {
        AlgPtr A = instance_algebra(w);
        return condition_N_violation(R, A, instance_subobject(A, w.at("kernel")));
    }
    if (check == "stable-e") return stable_e_violation(R, surjection_from_json(w), along());
    if (check == "factorisation") return factorisation_violation(R, surjection_from_json(w));
    if (check == "composition") {
        AlgPtr A = instance_algebra(w);
        return composition_violation(R, A, instance_subobject(A, w.at("n")), instance_subobject(A, w.at("m")));
    }
    if (check == "pushout") return pushout_violation(square_from_json(w));
    if (check == "double-normal") return double_normal_violation(R, square_from_json(w));
    if (check == "kernel-pair") return kernel_pair_violation(R, surjection_from_json(w), w.at("protoadditive"));
    if (check == "composite-normality") return composite_normality_violation(R, surjection_from_json(w));
    if (check == "composite-join") {
        if (w.at("type") == "square") return composite_join_violation(R, square_from_json(w).cube);
        return composite_join_violation(R, NCube::arrow(surjection_from_json(w).f()));
    }
    if (check == "intersection-object") return intersection_object_violation(R.k, instance_algebra(w));
    if (check == "intersection-normal") return intersection_normal_violation(R.k, surjection_from_json(w));
    throw AlgebraError("unknown witness check '" + check + "'");
}

// The witness reproduces exactly when replayed.
inline bool witness_reproduces(const std::string& reflector, const json& w) {
    Observation o = replay_witness(reflector, w);
    return o && *o == w.at("observation");
}

// ---------------------------------------------------------------------------
// suites

struct SuiteContext {
    Reflector R;
    Corpus corpus;
    std::uint64_t seed = 0;
    std::mt19937_64 rng;
};

namespace detail {

inline constexpr std::size_t kSubalgebraSamples = 32;
inline constexpr std::size_t kSquaresPerAlgebra = 400;

inline bool route(Report& r, const std::string& key, bool v) {
    r.details["routes"][key] = v;
    return v;
}

inline void note_agreement(Report& r) {
    bool first = true, v = false, agree = true;
    for (auto& [k, val] : r.details["routes"].items()) {
        if (first) v = val.get<bool>(), first = false;
        else if (val.get<bool>() != v) agree = false;
    }
    r.details["routes_agree"] = agree;
}

inline bool protoadditive_on(const Reflector& R, const std::vector<SplitSequence>& seqs) {
    for (const SplitSequence& s : seqs)
        if (R.accepts(s.A->variety) && !preserves_split_sequence(R, s)) return false;
    return true;
}

// Records whether the reflector gives a torsion theory on the corpus, the
// standing hypothesis of the torsion-theory suites.
inline void torsion_hypothesis(Report& r, const Reflector& R, const std::vector<AlgPtr>& algs) {
    bool tt = torsion_theory_report(R, algs).pass;
    r.details["torsion_theory"] = tt;
    if (!tt) r.notes.push_back("not a torsion theory on this corpus; failures need not contradict the theorem");
}

inline void require_birkhoff(const Reflector& R, const std::string& suite) {
    if (!R.is_birkhoff()) throw AlgebraError(suite + " needs a subvariety reflector, not " + R.id());
}

inline std::vector<Square> squares(const AlgPtr& A, std::mt19937_64& rng, std::size_t max_order) {
    std::vector<Square> out;
    if (A->n > max_order) return out;
    std::vector<Subobject> normals = normal_subobjects(A);
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t m = 0; m < normals.size(); ++m)
        for (std::size_t a = 0; a < normals.size(); ++a)
            for (std::size_t b = a; b < normals.size(); ++b)
                if (normals[a].subset_of(normals[m]) && normals[b].subset_of(normals[m])) triples.push_back({a, b, m});
    for (const auto& t : sample(triples, kSquaresPerAlgebra, rng))
        out.push_back(make_square(A, normals[t[0]], normals[t[1]], normals[t[2]]));
    return out;
}

}  // namespace detail

inline Report suite_torsion_free_equivalence(SuiteContext& cx) {
    Report r;
    const Reflector& R = cx.R;
    std::vector<AlgPtr> algs = detail::accepted(R, cx.corpus);
    std::vector<json> later;
    bool idempotent = true, reflective = true, units = true, sle = true;
    for (const AlgPtr& A : algs) {
        r.count("algebras");
        if (auto o = idempotence_violation(R, A)) {
            idempotent = false;
            r.fail(make_witness("idempotence", algebra_witness(A), *o));
        }
        if (auto o = reflection_violation(R, A)) {
            reflective = false;
            later.push_back(make_witness("reflection", algebra_witness(A), *o));
        }
        TorsionDecomposition d = reflect(R, A);
        for (const Subobject& X : detail::sample(subalgebras(d.reflection, 64), detail::kSubalgebraSamples, cx.rng)) {
            r.count("unit pullbacks");
            auto o = stable_unit_violation(R, A, X.elems);
            if (!o) continue;
            units = false;
            if (in_subcategory(R, as_algebra(X).alg)) sle = false;
            json inst = algebra_witness(A);
            inst["along"] = X.elems;
            later.push_back(make_witness("stable-unit", inst, *o));
        }
    }
    // torsion / torsion-free orthogonality
    bool orthogonal = true;
    std::vector<AlgPtr> torsion, free;
    for (const AlgPtr& A : algs) {
        if (is_torsion(R, A)) torsion.push_back(A);
        if (in_subcategory(R, A)) free.push_back(A);
    }
    for (const AlgPtr& T : torsion)
        for (const AlgPtr& F : free) {
            if (!(T->variety == F->variety) || T->n == 1 || F->n == 1) continue;
            r.count("torsion/torsion-free pairs");
            for_each_hom(T, F, HomMode::all, [&](const Morphism& h) {
                auto o = orthogonality_hom_violation(R, h);
                if (!o) return true;
                orthogonal = false;
                later.push_back(make_witness("torsion-hom",
                                             {{"type", "hom"}, {"label", T->name + " -> " + F->name},
                                              {"torsion", to_json(*T)}, {"torsion_free", to_json(*F)}, {"map", h.map}},
                                             *o));
                return false;
            });
        }
    for (json& w : later) r.fail(std::move(w));
    detail::route(r, "torsion-free subcategory", idempotent && reflective && orthogonal);
    detail::route(r, "idempotent radical", idempotent && reflective);
    detail::route(r, "stable units", units && reflective);
    detail::route(r, "semi-left-exact", sle && reflective);
    detail::note_agreement(r);
    r.notes.push_back("unit pullbacks are sampled along subalgebra inclusions into F(A)");
    return r;
}

inline Report suite_split_pullback_preservation(SuiteContext& cx) {
    Report r;
    auto seqs = split_sequences(detail::accepted(cx.R, cx.corpus));
    bool exact = true, pullbacks = true;
    std::vector<json> exactness;
    for (const SplitSequence& s : seqs) {
        r.count("split sequences");
        if (auto o = split_exactness_violation(cx.R, s)) {
            exact = false;
            exactness.push_back(make_witness("split-exactness", s.witness(), *o));
        }
        for (const Subobject& X : detail::sample(subalgebras(s.q.alg, 64), detail::kSubalgebraSamples, cx.rng)) {
            r.count("pullbacks");
            auto o = split_pullback_violation(cx.R, s, X.elems);
            if (!o) continue;
            pullbacks = false;
            json inst = s.witness();
            inst["along"] = X.elems;
            r.fail(make_witness("split-pullback", inst, *o));
            break;
        }
    }
    for (json& w : exactness) r.fail(std::move(w));
    detail::route(r, "preserves split short exact sequences", exact);
    detail::route(r, "preserves pullbacks along split epimorphisms", pullbacks);
    detail::note_agreement(r);
    return r;
}

inline Report suite_protosplit_normal_image(SuiteContext& cx) {
    Report r;
    auto seqs = split_sequences(detail::accepted(cx.R, cx.corpus));
    bool exact = true, normal = true, mono = true, per_instance = true;
    for (const SplitSequence& s : seqs) {
        r.count("split sequences");
        SplitImage im = split_image(cx.R, s);
        exact &= im.exact;
        normal &= im.normal_mono;
        mono &= im.mono;
        if (!(im.exact == im.normal_mono && im.normal_mono == im.mono)) per_instance = false;
        if (auto o = protosplit_image_violation(cx.R, s)) r.fail(make_witness("protosplit-image", s.witness(), *o));
    }
    detail::route(r, "protoadditive", exact);
    detail::route(r, "protosplit monos to normal monos", normal);
    detail::route(r, "protosplit monos to monos", mono);
    detail::note_agreement(r);
    r.details["per_sequence_agreement"] = per_instance;
    return r;
}

inline Report suite_protosplit_hereditary(SuiteContext& cx) {
    Report r;
    std::vector<AlgPtr> algs = detail::accepted(cx.R, cx.corpus);
    auto seqs = split_sequences(algs);
    bool hereditary = true, proto = true;
    std::vector<json> exactness;
    for (const SplitSequence& s : seqs) {
        r.count("split sequences");
        if (auto o = hereditary_violation(cx.R, s)) {
            hereditary = false;
            r.fail(make_witness("hereditary", s.witness(), *o));
        }
        if (auto o = split_exactness_violation(cx.R, s)) {
            proto = false;
            exactness.push_back(make_witness("split-exactness", s.witness(), *o));
        }
    }
    Report tt = torsion_theory_report(cx.R, algs);
    r.details["torsion_theory"] = tt.pass;
    detail::route(r, "torsion part hereditary along protosplit monos", hereditary);
    detail::route(r, "protoadditive", proto);
    detail::note_agreement(r);
    if (!tt.pass) r.notes.push_back("not a torsion theory on this corpus; the routes need not agree");
    else if (hereditary && !proto)
        for (json& w : exactness) r.fail(std::move(w));
    return r;
}

inline Report suite_split_extension_closure(SuiteContext& cx) {
    Report r;
    std::vector<AlgPtr> algs = detail::accepted(cx.R, cx.corpus);
    auto seqs = split_sequences(algs);
    bool split_closed = true, closed = true;
    std::vector<json> ext_witnesses;
    for (const SplitSequence& s : seqs) {
        r.count("split sequences");
        if (auto o = split_closure_violation(cx.R, s)) {
            split_closed = false;
            r.fail(make_witness("split-closure", s.witness(), *o));
        }
    }
    for (const AlgPtr& A : algs)
        for (const Surjection& s : surjections_from(A)) {
            r.count("short exact sequences");
            if (auto o = extension_closure_violation(cx.R, s)) {
                closed = false;
                ext_witnesses.push_back(make_witness("extension-closure", surjection_json(s), *o));
            }
        }
    bool proto = detail::protoadditive_on(cx.R, seqs);
    Report tt = torsion_theory_report(cx.R, algs);
    bool torsion_free = tt.details["idempotent"].get<bool>() && tt.details["hom_orthogonal"].get<bool>();
    r.details["protoadditive"] = proto;
    r.details["closed_under_split_extensions"] = split_closed;
    r.details["closed_under_extensions"] = closed;
    r.details["torsion_free"] = torsion_free;
    // with a protoadditive reflector: torsion-free iff closed under extensions
    if (proto && torsion_free != closed) {
        r.notes.push_back("protoadditive, but torsion-freeness and closure under extensions disagree");
        for (json& w : ext_witnesses) r.fail(std::move(w));
    }
    if (!proto && split_closed) r.notes.push_back("closed under split extensions without being protoadditive");
    return r;
}

inline Report suite_normal_iff_kernel_free(SuiteContext& cx) {
    Report r;
    for (const AlgPtr& A : detail::accepted(cx.R, cx.corpus))
        for (const Surjection& s : surjections_from(A)) {
            r.count("surjections");
            if (auto o = normal_vs_kernel_violation(cx.R, s))
                r.fail(make_witness("normal-vs-kernel", surjection_json(s), *o));
        }
    r.details["disagreements"] = r.witnesses.size();
    detail::torsion_hypothesis(r, cx.R, detail::accepted(cx.R, cx.corpus));
    return r;
}

inline Report suite_orthogonality(SuiteContext& cx) {
    Report r;
    std::vector<Surjection> es, ms;
    for (const AlgPtr& A : detail::accepted(cx.R, cx.corpus)) {
        if (A->n > 8) continue;
        for (Surjection& s : surjections_from(A)) {
            if (in_e_bar(cx.R, s.f())) es.push_back(s);
            if (in_m_bar(cx.R, s.f())) ms.push_back(s);
        }
    }
    for (const Surjection& e : es)
        for (const Surjection& m : ms) {
            if (!(e.A->variety == m.A->variety)) continue;
            for (const Morphism& a : enumerate_homs(e.A, m.A)) {
                Morphism ma = compose(m.f(), a);
                if (!std::all_of(e.N.elems.begin(), e.N.elems.end(), [&](Element x) { return ma.map[x] == 0; }))
                    continue;
                r.count("squares");
                if (auto o = diagonal_violation(cx.R, e, m, a))
                    r.fail(make_witness("diagonal",
                                        {{"type", "square"},
                                         {"label", e.A->name + " -> " + m.A->name},
                                         {"e", surjection_json(e)},
                                         {"m", surjection_json(m)},
                                         {"a", a.map}},
                                        *o));
            }
        }
    r.details["e_bar"] = es.size();
    r.details["m_bar"] = ms.size();
    detail::torsion_hypothesis(r, cx.R, detail::accepted(cx.R, cx.corpus));
    return r;
}

inline Report suite_stable_factorisation(SuiteContext& cx) {
    Report r;
    bool N_holds = true, exists = true, stable = true;
    for (const AlgPtr& A : detail::accepted(cx.R, cx.corpus)) {
        for (const Subobject& N : normal_subobjects(A)) {
            r.count("kernels");
            if (auto o = condition_N_violation(cx.R, A, N)) {
                N_holds = false;
                json inst = algebra_witness(A);
                inst["kernel"] = N.elems;
                r.fail(make_witness("condition-N", inst, *o));
            }
        }
        for (const Surjection& s : surjections_from(A)) {
            if (!condition_N_check(cx.R, s.f())) continue;
            r.count("factorisations");
            EMFactorisation em = em_factorize(cx.R, s.f());
            if (!em.e_certified || !em.m_certified) {
                exists = false;
                r.fail(make_witness("factorisation", surjection_json(s), *factorisation_violation(cx.R, s)));
            }
            if (!in_e_bar(cx.R, s.f())) continue;
            for (const Subobject& X : detail::sample(subalgebras(s.q.alg, 64), detail::kSubalgebraSamples, cx.rng)) {
                r.count("pullbacks of E-bar");
                auto o = stable_e_violation(cx.R, s, X.elems);
                if (!o) continue;
                stable = false;
                json inst = surjection_json(s);
                inst["along"] = X.elems;
                r.fail(make_witness("stable-e", inst, *o));
            }
        }
    }
    r.details["condition_N"] = N_holds;
    r.details["factorisations_exist"] = exists;
    r.details["e_bar_pullback_stable"] = stable;
    r.notes.push_back("checked from the torsion theory towards the factorisation system only");
    r.notes.push_back("orthogonality is covered by the orthogonality suite");
    detail::torsion_hypothesis(r, cx.R, detail::accepted(cx.R, cx.corpus));
    return r;
}

inline Report suite_unique_factorisation(SuiteContext& cx) {
    Report r;
    for (const AlgPtr& A : detail::accepted(cx.R, cx.corpus)) {
        std::vector<Subobject> normals = normal_subobjects(A);
        for (const Surjection& s : surjections_from(A)) {
            if (!condition_N_check(cx.R, s.f())) {
                r.count("skipped without condition (N)");
                continue;
            }
            r.count("surjections");
            if (auto o = factorisation_violation(cx.R, s))
                r.fail(make_witness("factorisation", surjection_json(s), *o));
        }
        for (const Subobject& N : normals)
            for (const Subobject& M : normals) {
                if (!N.subset_of(M)) continue;
                r.count("composable pairs");
                if (auto o = composition_violation(cx.R, A, N, M)) {
                    json inst = algebra_witness(A);
                    inst["n"] = N.elems;
                    inst["m"] = M.elems;
                    r.fail(make_witness("composition", inst, *o));
                }
            }
    }
    detail::torsion_hypothesis(r, cx.R, detail::accepted(cx.R, cx.corpus));
    return r;
}

inline Report suite_double_extension_pushout(SuiteContext& cx) {
    Report r;
    std::size_t extensions = 0;
    for (const AlgPtr& A : detail::accepted(cx.R, cx.corpus))
        for (const Square& sq : detail::squares(A, cx.rng, 16)) {
            r.count("squares");
            if (is_nfold_extension(sq.cube)) ++extensions;
            if (auto o = pushout_violation(sq)) r.fail(make_witness("pushout", sq.to_json(), *o));
        }
    r.details["double_extensions"] = extensions;
    return r;
}

inline Report suite_double_normal_intersection(SuiteContext& cx) {
    Report r;
    std::size_t normal = 0;
    for (const AlgPtr& A : detail::accepted(cx.R, cx.corpus))
        for (const Square& sq : detail::squares(A, cx.rng, 16)) {
            if (!is_nfold_extension(sq.cube)) continue;
            r.count("double extensions");
            if (is_nfold_normal(cx.R, sq.cube)) ++normal;
            if (auto o = double_normal_violation(cx.R, sq)) r.fail(make_witness("double-normal", sq.to_json(), *o));
        }
    r.details["double_normal"] = normal;
    r.details["disagreements"] = r.witnesses.size();
    detail::torsion_hypothesis(r, cx.R, detail::accepted(cx.R, cx.corpus));
    return r;
}

inline Report suite_kernel_pair_commutator(SuiteContext& cx) {
    Report r;
    detail::require_birkhoff(cx.R, "kernel-pair-commutator");
    std::vector<AlgPtr> algs = detail::accepted(cx.R, cx.corpus);
    bool proto = detail::protoadditive_on(cx.R, split_sequences(algs));
    std::size_t oracle_mismatch = 0, normal = 0;
    for (const AlgPtr& A : algs)
        for (const Surjection& s : surjections_from(A)) {
            r.count("surjections");
            if (is_normal_extension(cx.R, s.f())) ++normal;
            auto o = kernel_pair_violation(cx.R, s, proto);
            if (!o) continue;
            for (const auto& v : (*o)["violations"])
                if (v == "literal radical differs from commutator oracle") ++oracle_mismatch;
            json inst = surjection_json(s);
            inst["protoadditive"] = proto;
            r.fail(make_witness("kernel-pair", inst, *o));
        }
    r.details["protoadditive"] = proto;
    r.details["oracle"] = has_commutator_oracle(cx.R);
    r.details["oracle_disagreements"] = oracle_mismatch;
    r.details["normal_extensions"] = normal;
    if (!proto) r.notes.push_back("not protoadditive: only the oracle and the pullback definition are compared");
    return r;
}

inline Report suite_composite_normality(SuiteContext& cx) {
    Report r;
    if (cx.R.family != Family::composite) throw AlgebraError("composite-normality needs a composite reflector");
    detail::require_birkhoff(*cx.R.inner, "composite-normality");
    for (const AlgPtr& A : detail::accepted(cx.R, cx.corpus))
        for (const Surjection& s : surjections_from(A)) {
            r.count("surjections");
            if (auto o = composite_normality_violation(cx.R, s))
                r.fail(make_witness("composite-normality", surjection_json(s), *o));
        }
    return r;
}

inline Report suite_composite_join(SuiteContext& cx) {
    Report r;
    if (cx.R.family != Family::composite) throw AlgebraError("composite-join needs a composite reflector");
    detail::require_birkhoff(cx.R, "composite-join");
    for (const AlgPtr& A : detail::accepted(cx.R, cx.corpus)) {
        for (const Surjection& s : surjections_from(A)) {
            r.count("surjections");
            if (auto o = composite_join_violation(cx.R, NCube::arrow(s.f())))
                r.fail(make_witness("composite-join", surjection_json(s), *o));
        }
        for (const Square& sq : detail::squares(A, cx.rng, 8)) {
            if (!is_nfold_extension(sq.cube)) continue;
            if (square_literal_cost(sq.cube) > kLiteralSquareLimit) {
                r.count("double extensions skipped by cost");
                continue;
            }
            r.count("double extensions");
            if (auto o = composite_join_violation(cx.R, sq.cube))
                r.fail(make_witness("composite-join", sq.to_json(), *o));
        }
    }
    return r;
}

inline Report suite_intersection_join(SuiteContext& cx) {
    Report r;
    if (cx.R.family != Family::burnside) throw AlgebraError("intersection-join needs burnside:k");
    const unsigned k = cx.R.k;
    for (const AlgPtr& A : cx.corpus.algebras) {
        if (A->variety.kind != Kind::group) continue;
        r.count("groups");
        if (auto o = intersection_object_violation(k, A))
            r.fail(make_witness("intersection-object", algebra_witness(A), *o));
        for (const Surjection& s : surjections_from(A)) {
            r.count("surjections");
            if (auto o = intersection_normal_violation(k, s))
                r.fail(make_witness("intersection-normal", surjection_json(s), *o));
        }
    }
    if (r.sample("groups") == 0) throw AlgebraError("intersection-join needs a corpus of groups");
    r.details["intersection_of"] = {"ab", "exponent:" + std::to_string(k)};
    return r;
}

struct SuiteInfo {
    std::string id;
    std::string description;
    std::string reflector;
    std::string corpus;
    std::function<Report(SuiteContext&)> run;
};

inline const std::vector<SuiteInfo>& suite_registry() {
    static const std::vector<SuiteInfo> suites = {
        {"torsion-free-equivalence", "torsion-free iff idempotent radical iff stable units iff semi-left-exact",
         "reduced", "rings", suite_torsion_free_equivalence},
        {"split-pullback-preservation", "protoadditive iff pullbacks along split epis are preserved", "ab", "groups",
         suite_split_pullback_preservation},
        {"protosplit-normal-image", "protoadditive iff protosplit monos go to normal monos", "ab", "groups",
         suite_protosplit_normal_image},
        {"protosplit-hereditary", "torsion part hereditary along protosplit monos iff protoadditive", "reduced",
         "rings", suite_protosplit_hereditary},
        {"split-extension-closure", "protoadditive reflections are closed under split extensions", "boole",
         "nonassoc", suite_split_extension_closure},
        {"normal-iff-kernel-free", "normal extensions are the surjections with torsion-free kernel", "reduced",
         "rings", suite_normal_iff_kernel_free},
        {"orthogonality", "E-bar is orthogonal to M-bar", "reduced", "rings", suite_orthogonality},
        {"stable-factorisation", "condition (N) gives a stable factorisation system", "reduced", "rings",
         suite_stable_factorisation},
        {"unique-factorisation", "unique factorisation into stably-inverted and normal parts", "reduced", "rings",
         suite_unique_factorisation},
        {"double-extension-pushout", "squares of surjections are double extensions iff pushouts", "reduced",
         "rings", suite_double_extension_pushout},
        {"double-normal-intersection", "double normality by the meet of kernels equals the recursive definition",
         "reduced", "rings", suite_double_normal_intersection},
        {"kernel-pair-commutator", "kernel-pair radical equals the commutator and detects normality", "ab",
         "groups", suite_kernel_pair_commutator},
        {"composite-normality", "composite-normal iff kernel in C and normal for the Birkhoff part",
         "composite:burnside:2∘ab", "groups", suite_composite_normality},
        {"composite-join", "composite radical is the join of the Birkhoff radical and the kernel radical",
         "composite:burnside:2∘ab", "groups", suite_composite_join},
        {"intersection-join", "radical and normal extensions for an intersection of subvarieties", "burnside:2",
         "groups", suite_intersection_join},
    };
    return suites;
}

inline const SuiteInfo& find_suite(const std::string& id) {
    for (const SuiteInfo& s : suite_registry())
        if (s.id == id) return s;
    throw AlgebraError("unknown suite '" + id + "'");
}

// Empty reflector or corpus selects the suite default.
inline Report verify_suite(const std::string& id, const std::string& reflector = "", const std::string& corpus = "",
                           std::uint64_t seed = 0) {
    const SuiteInfo& info = find_suite(id);
    SuiteContext cx{Reflector::parse(reflector.empty() ? info.reflector : reflector),
                    load_corpus(corpus.empty() ? info.corpus : corpus), seed, std::mt19937_64(seed)};
    if (detail::accepted(cx.R, cx.corpus).empty())
        throw AlgebraError("reflector " + cx.R.id() + " applies to no member of corpus " + cx.corpus.id);
    Report r = info.run(cx);
    r.suite = info.id;
    r.reflector = cx.R.id();
    r.corpus = cx.corpus.id;
    r.details["seed"] = seed;
    return r;
}

// Every suite with its defaults, evaluated concurrently; results in registry order.
inline std::vector<Report> verify_all(std::uint64_t seed = 0) {
    std::vector<std::future<Report>> jobs;
    for (const SuiteInfo& s : suite_registry())
        jobs.push_back(std::async(std::launch::async, [&s, seed] { return verify_suite(s.id, "", "", seed); }));
    std::vector<Report> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace semiab
