#include <numeric>
#include <set>

#include "catch_amalgamated.hpp"
#include "semiab/semiab.hpp"

using namespace semiab;

namespace {

std::vector<Element> all_of(const AlgPtr& A) {
    std::vector<Element> v(A->n);
    std::iota(v.begin(), v.end(), Element{0});
    return v;
}

// Smallest normal N with A/N abelian of exponent dividing k, found by
// scanning every normal subobject and testing the quotient on raw tables.
std::vector<Element> abelian_exponent_oracle(const AlgPtr& A, unsigned k) {
    std::vector<Element> best = all_of(A);
    for (const Subobject& N : normal_subobjects(A)) {
        Quotient q = quotient(A, N);
        const Algebra& Q = *q.alg;
        bool ok = !detail::check_abelian(Q);
        for (Element x = 0; x < Q.n && ok; ++x) ok = Q.times(k, x) == 0;
        if (ok && N.size() < best.size()) best = N.elems;
    }
    return best;
}

std::vector<Element> nilpotents(const Algebra& R) {
    std::vector<Element> out;
    for (Element x = 0; x < R.n; ++x) {
        Element p = x;
        for (std::size_t i = 0; i < R.n && p != 0; ++i) p = R.mul(p, x);
        if (p == 0) out.push_back(x);
    }
    return out;
}

unsigned radical_of(unsigned n) {
    unsigned r = 1;
    for (unsigned p = 2; p <= n; ++p)
        if (n % p == 0) {
            r *= p;
            while (n % p == 0) n /= p;
        }
    return r;
}

}  // namespace

TEST_CASE("reflector ids parse and print canonically") {
    for (std::string id : {"ab", "burnside:2", "burnside:3", "exponent:4", "reduced", "zerorng", "boole", "pi0", "id",
                           "composite:burnside:2∘ab"})
        CHECK(Reflector::parse(id).id() == id);
    CHECK(Reflector::parse("burnside:2*ab").id() == "composite:burnside:2∘ab");
    CHECK_THROWS_AS(Reflector::parse("burnside:0"), AlgebraError);
    CHECK_THROWS_AS(Reflector::parse("burnside:"), AlgebraError);
    CHECK_THROWS_AS(Reflector::parse("nilpotent"), AlgebraError);
    CHECK_FALSE(Reflector::reduced().is_birkhoff());
    CHECK_FALSE(Reflector::pi0().is_birkhoff());
    CHECK(Reflector::parse("composite:burnside:2∘ab").is_birkhoff());
}

TEST_CASE("reflectors refuse foreign varieties") {
    CHECK_THROWS_AS(Reflector::reduced().radical(cyclic(4)), AlgebraError);
    CHECK_THROWS_AS(Reflector::ab().radical(zring(4)), AlgebraError);
    CHECK_NOTHROW(Reflector::burnside(2).radical(zmod_cyclic(4, 4)));
}

TEST_CASE("abelianisation radical is the derived subgroup") {
    for (const AlgPtr& G : detail::groups()) {
        Subobject T = Reflector::ab().radical(G);
        Subobject all = whole(G);
        CHECK(T == commutator_subgroup(G, all, all));
        CHECK(reflect(Reflector::ab(), G).reflection->n * T.size() == G->n);
    }
}

TEST_CASE("burnside radical is the abelian exponent-k residual") {
    for (unsigned k : {2u, 3u, 4u})
        for (const AlgPtr& G : detail::groups()) {
            if (G->n > 12) continue;
            INFO(G->name << " k=" << k);
            CHECK(Reflector::burnside(k).radical(G).elems == abelian_exponent_oracle(G, k));
        }
}

TEST_CASE("burnside radical on Z/m-modules is kA") {
    for (unsigned m : {4u, 8u})
        for (const AlgPtr& A : detail::modules(m)) {
            std::set<Element> kA;
            for (Element x = 0; x < A->n; ++x) kA.insert(A->times(2, x));
            Subobject T = Reflector::burnside(2).radical(A);
            CHECK(T.elems == std::vector<Element>(kA.begin(), kA.end()));
        }
}

TEST_CASE("reduced radical is the nilradical") {
    for (const AlgPtr& R : detail::rings()) {
        Subobject T = Reflector::reduced().radical(R);
        CHECK(T.elems == nilpotents(*R));
    }
    for (unsigned n = 1; n <= 16; ++n) CHECK(Reflector::reduced().radical(zring(n)).size() == n / radical_of(n));
}

TEST_CASE("zero-ring reflector kills the products") {
    AlgPtr F2 = detail::as_variety(zring(2), {Kind::rng_star, 0}, "F2");
    CHECK(Reflector::zerorng().radical(F2).is_all());
    for (const AlgPtr& A : detail::rng_star()) {
        Subobject T = Reflector::zerorng().radical(A);
        std::set<Element> products;
        for (Element x = 0; x < A->n; ++x)
            for (Element y = 0; y < A->n; ++y) products.insert(A->mul(x, y));
        CHECK(T == generated_subalgebra(A, std::vector<Element>(products.begin(), products.end())));
        CHECK(in_subcategory(Reflector::zerorng(), reflect(Reflector::zerorng(), A).reflection));
    }
}

TEST_CASE("boolean reflector") {
    const Variety na{Kind::nonassoc_ring, 0};
    CHECK(Reflector::boole().radical(detail::as_variety(zring(4), na, "Z/4")).elems == std::vector<Element>{0, 2});
    CHECK(Reflector::boole().radical(detail::as_variety(zring(3), na, "Z/3")).is_all());
    CHECK(in_subcategory(Reflector::boole(), detail::as_variety(direct_product(zring(2), zring(2)), na, "V")));
    // (1,1)^2 - (1,1) = (0,1) generates the radical
    Subobject T = Reflector::boole().radical(split_square_ring());
    CHECK(T.elems == std::vector<Element>{0, 1});
}

TEST_CASE("connected components reflector on groupoids") {
    CHECK(Reflector::pi0().radical(gpd_discrete(symmetric3())).is_zero());
    CHECK(Reflector::pi0().radical(gpd_indiscrete(cyclic(3))).is_all());
    CHECK(Reflector::pi0().radical(gpd_one_object(cyclic(2))).is_all());
    CHECK(reflect(Reflector::pi0(), gpd_indiscrete(symmetric3())).reflection->n == 1);
}

TEST_CASE("every radical is normal and its reflection lies in the subcategory") {
    std::vector<std::pair<Reflector, std::vector<AlgPtr>>> cases = {
        {Reflector::ab(), detail::groups()},          {Reflector::burnside(2), detail::groups()},
        {Reflector::reduced(), detail::rings()},      {Reflector::zerorng(), detail::rng_star()},
        {Reflector::boole(), detail::nonassoc_rings()}, {Reflector::pi0(), detail::groupoids()},
        {Reflector::burnside(2), detail::modules(4)}};
    for (const auto& [R, algs] : cases)
        for (const AlgPtr& A : algs) {
            TorsionDecomposition d = reflect(R, A);
            CHECK(d.radical.normal);
            CHECK(kernel(d.unit) == d.radical);
            CHECK(in_subcategory(R, d.reflection));
        }
}

TEST_CASE("the unit is universal: homs into the subcategory factor through it") {
    Reflector R = Reflector::ab();
    std::vector<AlgPtr> targets = {cyclic(2), cyclic(3), cyclic(4), direct_product(cyclic(2), cyclic(2))};
    for (const AlgPtr& A : {symmetric3(), dihedral(4), quaternion8(), alternating4()}) {
        TorsionDecomposition d = reflect(R, A);
        for (const AlgPtr& B : targets)
            CHECK(enumerate_homs(A, B).size() == enumerate_homs(d.reflection, B).size());
    }
}

TEST_CASE("reflection is functorial") {
    Reflector R = Reflector::reduced();
    AlgPtr Z8 = zring(8), Z4 = zring(4), Z2 = zring(2);
    Morphism f{Z8, Z4, {0, 1, 2, 3, 0, 1, 2, 3}};
    Morphism g{Z4, Z2, {0, 1, 0, 1}};
    CHECK(apply(R, compose(g, f)).map == compose(apply(R, g), apply(R, f)).map);
    CHECK(apply(R, identity(Z8)).map == std::vector<Element>{0, 1});
}

TEST_CASE("idempotence of radicals") {
    // [S3,S3] = C3 is abelian, so [C3,C3] = 0
    Report ab = is_idempotent_radical(Reflector::ab(), detail::groups());
    REQUIRE_FALSE(ab.pass);
    CHECK(ab.witnesses[0]["label"] == "S3");
    CHECK(is_idempotent_radical(Reflector::reduced(), detail::rings()).pass);
    CHECK(is_idempotent_radical(Reflector::zerorng(), detail::rng_star()).pass);
    Report r = is_idempotent_radical(Reflector::burnside(2), detail::abelian_groups());
    REQUIRE_FALSE(r.pass);
    CHECK(r.witnesses[0]["label"] == "C4");
}

TEST_CASE("torsion theory report for the nilradical") {
    Report r = torsion_theory_report(Reflector::reduced(), detail::rings());
    CHECK(r.pass);
    CHECK(r.details["idempotent"] == true);
    CHECK(r.details["hom_orthogonal"] == true);
    CHECK(r.details["closed_under_extensions"] == true);
}

TEST_CASE("protoadditivity verdicts") {
    CHECK(is_protoadditive(Reflector::reduced(), split_sequences(detail::rings())).pass);
    CHECK(is_protoadditive(Reflector::zerorng(), split_sequences(detail::rng_star())).pass);
    CHECK(is_protoadditive(Reflector::pi0(), split_sequences(detail::groupoids())).pass);
    Report ab = is_protoadditive(Reflector::ab(), split_sequences(detail::groups()));
    REQUIRE_FALSE(ab.pass);
    CHECK(ab.witnesses[0]["label"] == "0 -> K3 -> S3 -> S3/3 -> 0");
    CHECK_FALSE(is_protoadditive(Reflector::boole(), split_sequences(detail::nonassoc_rings())).pass);
}

TEST_CASE("split sequences carry genuine sections") {
    for (const SplitSequence& s : split_sequences(detail::groups())) {
        CHECK(compose(s.f(), s.s).map == identity(s.q.alg).map);
        CHECK(kernel(s.f()) == s.N);
    }
}
