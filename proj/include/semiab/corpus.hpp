#pragma once

#include <cstdlib>
#include <filesystem>

#include "birkhoff.hpp"

namespace semiab {

struct Corpus {
    std::string id;
    std::vector<AlgPtr> algebras;
};

namespace detail {

inline AlgPtr renamed(AlgPtr A, std::string name) {
    Algebra copy = *A;
    copy.name = std::move(name);
    return trusted(std::move(copy));
}

inline AlgPtr as_variety(const AlgPtr& A, Variety v, std::string name) {
    Algebra copy = *A;
    copy.variety = v;
    copy.name = std::move(name);
    return validated(std::move(copy));
}

inline AlgPtr prod(std::initializer_list<AlgPtr> parts) {
    auto it = parts.begin();
    AlgPtr acc = *it;
    for (++it; it != parts.end(); ++it) acc = direct_product(acc, *it);
    return acc;
}

inline AlgPtr zero_ring(const AlgPtr& G, Variety v, std::string name) {
    Algebra A = *G;
    A.variety = v;
    A.name = std::move(name);
    A.mul_.assign(A.n * A.n, 0);
    return validated(std::move(A));
}

inline std::vector<AlgPtr> groups() {
    std::vector<AlgPtr> out;
    for (unsigned n = 1; n <= 16; ++n) out.push_back(cyclic(n));
    out.push_back(symmetric3());
    for (unsigned n = 4; n <= 8; ++n) out.push_back(dihedral(n));
    out.push_back(quaternion8());
    AlgPtr c2 = cyclic(2), c3 = cyclic(3), c4 = cyclic(4);
    out.push_back(prod({c2, c2}));
    out.push_back(prod({c2, c4}));
    out.push_back(prod({c2, c2, c2}));
    out.push_back(prod({c3, c3}));
    out.push_back(prod({c2, cyclic(6)}));
    out.push_back(prod({c4, c4}));
    out.push_back(prod({c2, cyclic(8)}));
    out.push_back(prod({c2, c2, c4}));
    out.push_back(prod({c2, c2, c2, c2}));
    out.push_back(prod({c2, dihedral(4)}));
    out.push_back(prod({c2, quaternion8()}));
    out.push_back(semidirect_cyclic(3, 4, 2));
    out.push_back(semidirect_cyclic(4, 4, 3));
    out.push_back(alternating4());
    return out;
}

inline std::vector<AlgPtr> abelian_groups() {
    std::vector<AlgPtr> out;
    for (const AlgPtr& G : groups())
        if (!detail::check_abelian(*G)) out.push_back(G);
    std::stable_sort(out.begin(), out.end(), [](const AlgPtr& a, const AlgPtr& b) { return a->n < b->n; });
    return out;
}

inline std::vector<AlgPtr> rings() {
    const Variety cr{Kind::comm_ring, 0};
    std::vector<AlgPtr> out;
    for (unsigned n = 1; n <= 16; ++n) out.push_back(zring(n));
    out.push_back(direct_product(zring(2), zring(2), "Z/2xZ/2"));
    out.push_back(direct_product(zring(2), zring(4), "Z/2xZ/4"));
    out.push_back(direct_product(zring(2), zring(3), "Z/2xZ/3"));
    out.push_back(direct_product(zring(3), zring(3), "Z/3xZ/3"));
    out.push_back(zero_ring(cyclic(2), cr, "C2[0]"));
    out.push_back(zero_ring(cyclic(4), cr, "C4[0]"));
    out.push_back(zero_ring(direct_product(cyclic(2), cyclic(2)), cr, "C2xC2[0]"));
    out.push_back(scaled_ring(cr, 4, 2, "2Z/8"));
    out.push_back(direct_product(zring(2), zero_ring(cyclic(2), cr, "C2[0]"), "Z/2xC2[0]"));
    return out;
}

inline std::vector<AlgPtr> nonassoc_rings() {
    const Variety na{Kind::nonassoc_ring, 0};
    std::vector<AlgPtr> out;
    out.push_back(as_variety(zring(1), na, "Z/1"));
    out.push_back(as_variety(zring(2), na, "Z/2"));
    out.push_back(as_variety(zring(3), na, "Z/3"));
    out.push_back(as_variety(zring(4), na, "Z/4"));
    out.push_back(zero_ring(cyclic(2), na, "C2[0]"));
    out.push_back(as_variety(direct_product(zring(2), zring(2)), na, "Z/2xZ/2"));
    out.push_back(split_square_ring());
    out.push_back(as_variety(direct_product(zring(2), zring(3)), na, "Z/6"));
    return out;
}

inline std::vector<AlgPtr> rng_star() {
    const Variety rs{Kind::rng_star, 0};
    std::vector<AlgPtr> out;
    out.push_back(zero_ring(cyclic(1), rs, "0"));
    out.push_back(zero_ring(cyclic(2), rs, "C2[0]"));
    out.push_back(zero_ring(cyclic(3), rs, "C3[0]"));
    out.push_back(zero_ring(cyclic(4), rs, "C4[0]"));
    out.push_back(zero_ring(direct_product(cyclic(2), cyclic(2)), rs, "C2xC2[0]"));
    AlgPtr f2 = as_variety(zring(2), rs, "F2");
    out.push_back(f2);
    out.push_back(direct_product(f2, f2, "F2xF2"));
    out.push_back(direct_product(f2, zero_ring(cyclic(2), rs, "C2[0]"), "F2xC2[0]"));
    out.push_back(direct_product(f2, zero_ring(cyclic(3), rs, "C3[0]"), "F2xC3[0]"));
    out.push_back(direct_product(direct_product(f2, f2), f2, "F2xF2xF2"));
    out.push_back(direct_product(f2, zero_ring(cyclic(4), rs, "C4[0]"), "F2xC4[0]"));
    return out;
}

inline std::vector<AlgPtr> modules(unsigned m) {
    std::vector<AlgPtr> out;
    std::vector<unsigned> divisors;
    for (unsigned d = 1; d <= m; ++d)
        if (m % d == 0) divisors.push_back(d);
    for (unsigned d : divisors) out.push_back(zmod_cyclic(m, d));
    for (std::size_t i = 1; i < divisors.size(); ++i)
        for (std::size_t j = i; j < divisors.size(); ++j) {
            unsigned a = divisors[i], b = divisors[j];
            if (a * b > 16) continue;
            out.push_back(direct_product(zmod_cyclic(m, a), zmod_cyclic(m, b)));
        }
    std::stable_sort(out.begin(), out.end(), [](const AlgPtr& a, const AlgPtr& b) { return a->n < b->n; });
    return out;
}

inline std::vector<AlgPtr> groupoids() {
    return {gpd_discrete(cyclic(2)),     gpd_discrete(symmetric3()),   gpd_indiscrete(cyclic(2)),
            gpd_indiscrete(cyclic(3)),   gpd_indiscrete(symmetric3()), gpd_one_object(cyclic(2))};
}

}  // namespace detail

inline std::vector<std::string> corpus_ids() {
    return {"groups", "abelian", "rings", "nonassoc", "rngstar", "modules-z4", "modules-z8", "modules", "groupoids"};
}

inline Corpus builtin_corpus(const std::string& id) {
    if (id == "groups") return {id, detail::groups()};
    if (id == "abelian") return {id, detail::abelian_groups()};
    if (id == "rings") return {id, detail::rings()};
    if (id == "nonassoc") return {id, detail::nonassoc_rings()};
    if (id == "rngstar") return {id, detail::rng_star()};
    if (id == "modules-z4") return {id, detail::modules(4)};
    if (id == "modules-z8") return {id, detail::modules(8)};
    if (id == "modules") {
        auto a = detail::modules(4), b = detail::modules(8);
        a.insert(a.end(), b.begin(), b.end());
        return {id, a};
    }
    if (id == "groupoids") return {id, detail::groupoids()};
    throw AlgebraError("unknown corpus '" + id + "'");
}

// Corpus from a directory of algebra documents, read in file-name order.
inline Corpus corpus_from_directory(const std::string& id, const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    Corpus c{id, {}};
    for (const auto& f : files) c.algebras.push_back(algebra_from_json(read_document(f.string())));
    return c;
}

// SEMIAB_CORPUS_DIR/<id>/ takes precedence over the built-in corpus.
inline Corpus load_corpus(const std::string& id) {
    if (const char* dir = std::getenv("SEMIAB_CORPUS_DIR")) {
        std::filesystem::path p = std::filesystem::path(dir) / id;
        if (std::filesystem::is_directory(p)) return corpus_from_directory(id, p);
    }
    return builtin_corpus(id);
}

// "name" or "corpus:name"; searches built-in corpora in a fixed order.
inline AlgPtr resolve_name(const std::string& ref) {
    std::string corpus, name = ref;
    for (const std::string& id : corpus_ids())
        if (ref.rfind(id + ":", 0) == 0) {
            corpus = id;
            name = ref.substr(id.size() + 1);
        }
    std::vector<std::string> order = corpus.empty() ? corpus_ids() : std::vector<std::string>{corpus};
    for (const std::string& id : order)
        for (const AlgPtr& A : load_corpus(id).algebras)
            if (A->name == name) return A;
    return nullptr;
}

}  // namespace semiab
