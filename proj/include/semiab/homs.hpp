#pragma once

#include <functional>

#include "constructions.hpp"

namespace semiab {

// Greedy generating set: scan elements in index order, keep those not yet in
// the subalgebra generated so far.
inline std::vector<Element> generating_set(const AlgPtr& A) {
    std::vector<Element> gens;
    std::vector<char> in(A->n, 0);
    in[0] = 1;
    for (Element x = 1; x < A->n; ++x) {
        if (in[x]) continue;
        gens.push_back(x);
        in = generated_subalgebra(A, gens).mask();
    }
    return gens;
}

enum class HomMode { all, monos, isos };

namespace detail {

// Partial map extended by closing under the operations. Returns false on a
// conflict, meaning no homomorphism extends the current assignment.
struct PartialHom {
    const Algebra* a;
    const Algebra* b;
    std::vector<Element> map;  // -1 = unset
    std::vector<Element> mapped;
    std::vector<char> used;    // images taken (injectivity pruning)
    bool injective = false;

    static constexpr Element unset = static_cast<Element>(-1);

    bool assign(Element x, Element y, std::vector<Element>& work) {
        if (map[x] != unset) return map[x] == y;
        if (injective) {
            if (used[y]) return false;
            used[y] = 1;
        }
        map[x] = y;
        mapped.push_back(x);
        work.push_back(x);
        return true;
    }

    bool extend(Element x, Element y) {
        std::vector<Element> work;
        if (!assign(x, y, work)) return false;
        while (!work.empty()) {
            Element u = work.back();
            work.pop_back();
            Element fu = map[u];
            if (!assign(a->neg(u), b->neg(fu), work)) return false;
            for (std::size_t k = 0; k < a->unary_.size(); ++k)
                if (!assign(a->unary_[k][u], b->unary_[k][fu], work)) return false;
            for (std::size_t i = 0; i < mapped.size(); ++i) {
                Element v = mapped[i];
                Element fv = map[v];
                if (!assign(a->add(u, v), b->add(fu, fv), work)) return false;
                if (!assign(a->add(v, u), b->add(fv, fu), work)) return false;
                if (a->has_mul()) {
                    if (!assign(a->mul(u, v), b->mul(fu, fv), work)) return false;
                    if (!assign(a->mul(v, u), b->mul(fv, fu), work)) return false;
                }
            }
        }
        return true;
    }
};

}  // namespace detail

// Visits every homomorphism A -> B of the requested kind; the visitor returns
// false to stop early. Images of a generating set are chosen by backtracking
// and the rest of the map is forced.
inline void for_each_hom(const AlgPtr& A, const AlgPtr& B, HomMode mode,
                         const std::function<bool(const Morphism&)>& visit) {
    if (!(A->variety == B->variety)) throw AlgebraError("enumerate_homs: varieties differ");
    if (mode == HomMode::isos && A->n != B->n) return;
    if (mode != HomMode::all && A->n > B->n) return;
    const std::vector<Element> gens = generating_set(A);
    std::vector<std::size_t> ord_b(B->n);
    for (Element y = 0; y < B->n; ++y) ord_b[y] = B->add_order(y);

    detail::PartialHom start{A.get(), B.get(), std::vector<Element>(A->n, detail::PartialHom::unset), {},
                             std::vector<char>(B->n, 0), mode != HomMode::all};
    if (!start.extend(0, 0)) return;

    bool stop = false;
    std::function<void(std::size_t, const detail::PartialHom&)> rec = [&](std::size_t i,
                                                                           const detail::PartialHom& cur) {
        if (stop) return;
        if (i == gens.size()) {
            Morphism f{A, B, cur.map};
            if (!visit(f)) stop = true;
            return;
        }
        Element g = gens[i];
        std::size_t og = A->add_order(g);
        for (Element y = 0; y < B->n && !stop; ++y) {
            bool order_ok = mode == HomMode::all ? og % ord_b[y] == 0 : og == ord_b[y];
            if (!order_ok) continue;
            detail::PartialHom next = cur;
            if (next.extend(g, y)) rec(i + 1, next);
        }
    };
    rec(0, start);
}

inline std::vector<Morphism> enumerate_homs(const AlgPtr& A, const AlgPtr& B, HomMode mode = HomMode::all) {
    std::vector<Morphism> out;
    for_each_hom(A, B, mode, [&](const Morphism& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

// Sorted additive-order profile, a cheap isomorphism invariant.
inline std::vector<std::size_t> order_profile(const Algebra& A) {
    std::vector<std::size_t> p(A.n);
    for (Element x = 0; x < A.n; ++x) p[x] = A.add_order(x);
    std::sort(p.begin(), p.end());
    return p;
}

inline std::optional<Morphism> find_isomorphism(const AlgPtr& A, const AlgPtr& B) {
    if (!(A->variety == B->variety) || A->n != B->n) return std::nullopt;
    if (order_profile(*A) != order_profile(*B)) return std::nullopt;
    std::optional<Morphism> found;
    for_each_hom(A, B, HomMode::isos, [&](const Morphism& f) {
        found = f;
        return false;
    });
    return found;
}

inline bool isomorphic(const AlgPtr& A, const AlgPtr& B) { return find_isomorphism(A, B).has_value(); }

// First section s of f (f.s = id), if any.
inline std::optional<Morphism> find_section(const Morphism& f) {
    std::optional<Morphism> found;
    for_each_hom(f.cod, f.dom, HomMode::monos, [&](const Morphism& s) {
        for (Element y = 0; y < f.cod->n; ++y)
            if (f.map[s.map[y]] != y) return true;
        found = s;
        return false;
    });
    return found;
}

struct SequenceClass {
    SequenceKind kind;
    std::optional<Morphism> section;
};

inline SequenceClass classify_sequence(const Morphism& k, const Morphism& f) {
    if (!is_short_exact(k, f)) return {SequenceKind::not_exact, std::nullopt};
    auto s = find_section(f);
    if (s) return {SequenceKind::split_exact, s};
    return {SequenceKind::exact, std::nullopt};
}

}  // namespace semiab
