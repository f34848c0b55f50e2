#include <numeric>
#include <set>

#include "catch_amalgamated.hpp"
#include "semiab/semiab.hpp"

using namespace semiab;

namespace {

// Brute-force oracles, written against the raw tables only.

std::size_t count_subsets(const Algebra& A, bool normal_only) {
    std::size_t count = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << A.n); mask += 2) {
        auto in = [&](Element x) { return (mask >> x & 1) != 0; };
        bool ok = true;
        for (Element a = 0; a < A.n && ok; ++a) {
            if (!in(a)) continue;
            if (!in(A.neg(a))) ok = false;
            for (Element b = 0; b < A.n && ok; ++b) {
                if (!in(b)) continue;
                if (!in(A.add(a, b))) ok = false;
                if (A.has_mul() && !in(A.mul(a, b))) ok = false;
            }
            if (normal_only)
                for (Element g = 0; g < A.n && ok; ++g) {
                    if (!in(A.conj(g, a))) ok = false;
                    if (A.has_mul() && (!in(A.mul(g, a)) || !in(A.mul(a, g)))) ok = false;
                }
        }
        count += ok;
    }
    return count;
}

std::set<Element> brute_commutator(const Algebra& A) {
    std::set<Element> S{0};
    for (Element a = 0; a < A.n; ++a)
        for (Element b = 0; b < A.n; ++b) S.insert(A.sub(A.sub(A.add(a, b), a), b));
    for (bool grew = true; grew;) {
        grew = false;
        for (Element x : std::set<Element>(S))
            for (Element y : std::set<Element>(S)) grew |= S.insert(A.add(x, y)).second;
    }
    return S;
}

std::size_t brute_hom_count(const AlgPtr& A, const AlgPtr& B) {
    std::size_t count = 0;
    std::vector<Element> f(A->n, 0);
    while (true) {
        if (f[0] == 0) {
            bool ok = true;
            for (Element x = 0; x < A->n && ok; ++x)
                for (Element y = 0; y < A->n && ok; ++y)
                    if (f[A->add(x, y)] != B->add(f[x], f[y])) ok = false;
            count += ok;
        }
        std::size_t i = 0;
        while (i < f.size() && ++f[i] == B->n) f[i++] = 0;
        if (i == f.size()) break;
    }
    return count;
}

}  // namespace

TEST_CASE("family builders have the expected orders and shapes") {
    CHECK(cyclic(7)->n == 7);
    CHECK(dihedral(5)->n == 10);
    CHECK(quaternion8()->n == 8);
    CHECK(alternating4()->n == 12);
    CHECK_FALSE(detail::check_abelian(*cyclic(9)));
    CHECK(detail::check_abelian(*symmetric3()));
    CHECK(detail::check_abelian(*quaternion8()));

    auto involutions = [](const AlgPtr& G) {
        std::size_t c = 0;
        for (Element x = 1; x < G->n; ++x) c += G->add_order(x) == 2;
        return c;
    };
    CHECK(involutions(quaternion8()) == 1);
    CHECK(involutions(dihedral(4)) == 5);
    CHECK(involutions(alternating4()) == 3);
}

TEST_CASE("subgroup and normal subgroup counts match brute force") {
    // frozen: S3 6/3, D4 10/6, Q8 6/6, A4 10/3, C2^3 16/16
    struct Case {
        AlgPtr G;
        std::size_t subs, normals;
    };
    for (const Case& c : {Case{symmetric3(), 6, 3}, Case{dihedral(4), 10, 6}, Case{quaternion8(), 6, 6},
                          Case{alternating4(), 10, 3},
                          Case{direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)), 16, 16}}) {
        INFO(c.G->name);
        CHECK(subalgebras(c.G).size() == c.subs);
        CHECK(normal_subobjects(c.G).size() == c.normals);
        CHECK(count_subsets(*c.G, false) == c.subs);
        CHECK(count_subsets(*c.G, true) == c.normals);
    }
}

TEST_CASE("ideals of rings match brute force") {
    for (unsigned n = 1; n <= 12; ++n) {
        AlgPtr R = zring(n);
        std::size_t divisors = 0;
        for (unsigned d = 1; d <= n; ++d) divisors += n % d == 0;
        CHECK(normal_subobjects(R).size() == divisors);
        CHECK(count_subsets(*R, true) == divisors);
    }
    AlgPtr S = split_square_ring();
    CHECK(normal_subobjects(S).size() == count_subsets(*S, true));
}

TEST_CASE("quotients obey Lagrange and the projection has the subobject as kernel") {
    for (const AlgPtr& G : {symmetric3(), dihedral(4), quaternion8(), alternating4(), zring(12)}) {
        for (const Subobject& N : normal_subobjects(G)) {
            Quotient q = quotient(G, N);
            CHECK(q.alg->n * N.size() == G->n);
            CHECK(kernel(q.proj) == N);
            CHECK(is_surjective(q.proj));
        }
    }
}

TEST_CASE("non-normal and non-closed subsets are rejected") {
    AlgPtr S3 = symmetric3();
    for (const Subobject& H : subalgebras(S3))
        if (H.size() == 2) {
            CHECK_FALSE(H.normal);
            CHECK_THROWS_AS(quotient(S3, H), AlgebraError);
        }
    CHECK_THROWS_AS(make_subobject(cyclic(4), {0, 1}), AlgebraError);
    CHECK(make_subobject(cyclic(4), {0, 2}).normal);
}

TEST_CASE("commutator subgroups match brute-force closure") {
    for (const AlgPtr& G : {symmetric3(), dihedral(4), quaternion8(), alternating4(), dihedral(6)}) {
        Subobject all = whole(G);
        Subobject C = commutator_subgroup(G, all, all);
        auto oracle = brute_commutator(*G);
        CHECK(std::vector<Element>(oracle.begin(), oracle.end()) == C.elems);
    }
    CHECK(commutator_subgroup(quaternion8(), whole(quaternion8()), whole(quaternion8())).size() == 2);
    CHECK(commutator_subgroup(alternating4(), whole(alternating4()), whole(alternating4())).size() == 4);
}

TEST_CASE("hom counts between cyclic groups are gcds") {
    for (unsigned m = 1; m <= 8; ++m)
        for (unsigned n = 1; n <= 8; ++n) {
            auto homs = enumerate_homs(cyclic(m), cyclic(n));
            CHECK(homs.size() == std::gcd(m, n));
        }
    CHECK(enumerate_homs(symmetric3(), cyclic(2)).size() == brute_hom_count(symmetric3(), cyclic(2)));
    CHECK(enumerate_homs(quaternion8(), cyclic(4)).size() == brute_hom_count(quaternion8(), cyclic(4)));
    CHECK(enumerate_homs(symmetric3(), symmetric3(), HomMode::isos).size() == 6);
    CHECK(enumerate_homs(dihedral(4), dihedral(4), HomMode::isos).size() == 8);
}

TEST_CASE("isomorphism detection separates groups of order 8") {
    AlgPtr c2 = cyclic(2), c4 = cyclic(4);
    std::vector<AlgPtr> eight = {cyclic(8), direct_product(c2, c4), direct_product(direct_product(c2, c2), c2),
                                 dihedral(4), quaternion8()};
    for (std::size_t i = 0; i < eight.size(); ++i)
        for (std::size_t j = 0; j < eight.size(); ++j) CHECK(isomorphic(eight[i], eight[j]) == (i == j));
    CHECK(isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6)));
}

TEST_CASE("pullback order is the fibrewise product count") {
    AlgPtr D4 = dihedral(4);
    for (const Subobject& N : normal_subobjects(D4))
        for (const Subobject& M : normal_subobjects(D4)) {
            Quotient a = quotient(D4, N), b = quotient(D4, M);
            if (a.alg->n != b.alg->n || !isomorphic(a.alg, b.alg)) continue;
            Morphism iso = *find_isomorphism(b.alg, a.alg);
            Morphism g = compose(iso, b.proj);
            PairAlgebra P = pullback(a.proj, g);
            std::size_t expected = 0;
            for (Element c = 0; c < a.alg->n; ++c) {
                std::size_t x = 0, y = 0;
                for (Element t = 0; t < D4->n; ++t) {
                    x += a.proj(t) == c;
                    y += g(t) == c;
                }
                expected += x * y;
            }
            CHECK(P.alg->n == expected);
            for (Element p = 0; p < P.alg->n; ++p) CHECK(a.proj(P.p1(p)) == g(P.p2(p)));
        }
}

TEST_CASE("validation rejects tables that break the variety's identities") {
    SECTION("non-associative group operation") {
        Algebra A = *cyclic(3);
        std::swap(A.add_[1 * 3 + 1], A.add_[1 * 3 + 2]);
        CHECK_THROWS_AS(validated(A), AlgebraError);
    }
    SECTION("zero is not neutral") {
        Algebra A = *cyclic(2);
        A.add_ = {1, 0, 0, 1};
        CHECK_THROWS_AS(validated(A), AlgebraError);
    }
    SECTION("rng-star requires xyxy = xy") {
        CHECK_THROWS_AS(detail::as_variety(zring(4), {Kind::rng_star, 0}, "Z/4*"), AlgebraError);
        CHECK_NOTHROW(detail::as_variety(zring(2), {Kind::rng_star, 0}, "F2"));
    }
    SECTION("Z/m-modules are killed by m") {
        Algebra A = *cyclic(4);
        A.variety = zmod_variety(2);
        CHECK_THROWS_AS(validated(A), AlgebraError);
    }
    SECTION("commutative rings must commute") {
        CHECK_THROWS_AS(detail::as_variety(split_square_ring(), {Kind::comm_ring, 0}, "x"), AlgebraError);
    }
}

TEST_CASE("morphism validation") {
    CHECK_FALSE(find_morphism_failure({cyclic(4), cyclic(2), {0, 1, 0, 1}}));
    CHECK(find_morphism_failure({cyclic(4), cyclic(2), {0, 1, 1, 1}}));
    CHECK(find_morphism_failure({cyclic(4), cyclic(2), {1, 0, 1, 0}}));
    CHECK_THROWS_AS(make_morphism(cyclic(4), cyclic(2), {0, 1, 1, 1}), AlgebraError);
}

TEST_CASE("the split-square ring has (1,1)^2 = (1,0)") {
    AlgPtr S = split_square_ring();
    // index 2a + b encodes (a, b)
    CHECK(S->mul(3, 3) == 2);
    CHECK(S->mul(2, 2) == 2);
    CHECK(S->mul(1, 1) == 1);
    CHECK(S->mul(1, 2) == 1);
    CHECK(S->mul(2, 1) == 0);
}

TEST_CASE("groupoid builders satisfy the groupoid axioms") {
    for (const AlgPtr& G : {gpd_discrete(symmetric3()), gpd_indiscrete(cyclic(3)), gpd_one_object(cyclic(2))}) {
        GroupoidLevels L = groupoid_levels(G);
        for (Element o = 0; o < L.g0->n; ++o) {
            CHECK(L.d[L.i[o]] == o);
            CHECK(L.c[L.i[o]] == o);
        }
        for (Element x = 0; x < G->n; ++x) {
            Element idx = L.i[L.d[x]], idy = L.i[L.c[x]];
            CHECK(gpd_compose(*G, x, idx) == x);
            CHECK(gpd_compose(*G, idy, x) == x);
        }
    }
    CHECK(groupoid_levels(gpd_indiscrete(cyclic(3))).g0->n == 3);
    CHECK(groupoid_levels(gpd_one_object(cyclic(2))).g0->n == 1);
    CHECK_THROWS_AS(gpd_one_object(symmetric3()), AlgebraError);
}

TEST_CASE("short exact sequences are classified") {
    AlgPtr S3 = symmetric3();
    Subobject N = normal_subobjects(S3)[1];
    REQUIRE(N.size() == 3);
    Embedded K = as_algebra(N);
    Quotient q = quotient(S3, N);
    CHECK(classify_sequence(K.incl, q.proj).kind == SequenceKind::split_exact);

    AlgPtr C4 = cyclic(4);
    Subobject two = normal_subobjects(C4)[1];
    Embedded K2 = as_algebra(two);
    CHECK(classify_sequence(K2.incl, quotient(C4, two).proj).kind == SequenceKind::exact);
}
