#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "catch_amalgamated.hpp"
#include "semiab/semiab.hpp"

using namespace semiab;

namespace {

void check_witnesses(const Report& r) {
    INFO(r.suite << " " << r.reflector << " " << r.corpus);
    CHECK(r.pass == r.witnesses.empty());
    for (const json& w : r.witnesses) {
        INFO(w.dump());
        CHECK(witness_reproduces(r.reflector, w));
    }
}

}  // namespace

TEST_CASE("registry lists every suite once with a default configuration") {
    std::set<std::string> ids;
    for (const SuiteInfo& s : suite_registry()) {
        CHECK(ids.insert(s.id).second);
        CHECK_FALSE(s.description.empty());
        CHECK_NOTHROW(Reflector::parse(s.reflector));
        CHECK_NOTHROW(builtin_corpus(s.corpus));
    }
    CHECK(ids.size() == 15);
    CHECK_THROWS_AS(find_suite("no-such-suite"), AlgebraError);
    CHECK_THROWS_AS(verify_suite("no-such-suite"), AlgebraError);
}

TEST_CASE("default run: verdicts and replayable witnesses") {
    std::vector<Report> all = verify_all(0);
    REQUIRE(all.size() == suite_registry().size());
    std::map<std::string, bool> verdict;
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].suite == suite_registry()[i].id);
        verdict[all[i].suite] = all[i].pass;
        check_witnesses(all[i]);
    }
    CHECK(verdict["torsion-free-equivalence"]);
    CHECK_FALSE(verdict["split-pullback-preservation"]);
    CHECK_FALSE(verdict["protosplit-normal-image"]);
    CHECK(verdict["protosplit-hereditary"]);
    CHECK_FALSE(verdict["split-extension-closure"]);
    for (std::string id : {"normal-iff-kernel-free", "orthogonality", "stable-factorisation", "unique-factorisation",
                           "double-extension-pushout", "double-normal-intersection", "kernel-pair-commutator",
                           "composite-normality", "composite-join", "intersection-join"})
        CHECK(verdict[id]);
}

TEST_CASE("counterexample pins") {
    SECTION("burnside:2 radical is not idempotent on C4") {
        Report r = verify_suite("torsion-free-equivalence", "burnside:2", "abelian");
        REQUIRE_FALSE(r.pass);
        CHECK(r.witnesses[0]["label"] == "C4");
        CHECK(r.witnesses[0]["check"] == "idempotence");
    }
    SECTION("boolean rings are not closed under split extensions") {
        Report r = verify_suite("split-extension-closure", "boole", "nonassoc");
        REQUIRE_FALSE(r.pass);
        CHECK(r.witnesses[0]["algebra"]["name"] == "F2[split-square]");
    }
    SECTION("abelianisation does not preserve the S3 split sequence") {
        Report r = verify_suite("split-pullback-preservation", "ab", "groups");
        REQUIRE_FALSE(r.pass);
        CHECK(r.witnesses[0]["algebra"]["name"] == "S3");
    }
}

TEST_CASE("protoadditivity routes agree") {
    struct Case {
        std::string reflector, corpus;
        bool protoadditive;
    };
    for (const Case& c : {Case{"reduced", "rings", true}, Case{"pi0", "groupoids", true},
                          Case{"zerorng", "rngstar", true}, Case{"ab", "groups", false},
                          Case{"boole", "nonassoc", false}}) {
        INFO(c.reflector);
        Report pull = verify_suite("split-pullback-preservation", c.reflector, c.corpus);
        Report image = verify_suite("protosplit-normal-image", c.reflector, c.corpus);
        CHECK(pull.pass == c.protoadditive);
        CHECK(image.pass == c.protoadditive);
        CHECK(image.details["routes_agree"] == true);
        check_witnesses(pull);
        check_witnesses(image);
    }
}

TEST_CASE("determinism for a fixed seed") {
    for (std::string id : {"stable-factorisation", "double-extension-pushout", "composite-join"}) {
        json a = verify_suite(id, "", "", 5).to_json();
        json b = verify_suite(id, "", "", 5).to_json();
        CHECK(a == b);
    }
}

TEST_CASE("verdicts do not depend on the sampling seed") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        CHECK(verify_suite("stable-factorisation", "", "", seed).pass);
        CHECK(verify_suite("double-normal-intersection", "", "", seed).pass);
    }
}

TEST_CASE("suite preconditions") {
    CHECK_THROWS_AS(verify_suite("kernel-pair-commutator", "reduced", "rings"), AlgebraError);
    CHECK_THROWS_AS(verify_suite("composite-join", "ab", "groups"), AlgebraError);
    CHECK_THROWS_AS(verify_suite("intersection-join", "burnside:2", "modules"), AlgebraError);
    CHECK_THROWS_AS(verify_suite("orthogonality", "reduced", "groups"), AlgebraError);
    CHECK_THROWS_AS(verify_suite("orthogonality", "reduced", "no-such-corpus"), AlgebraError);
}

TEST_CASE("suites outside their torsion-theory hypothesis record it") {
    Report r = verify_suite("double-normal-intersection", "ab", "groups");
    CHECK(r.details["torsion_theory"] == false);
    CHECK_FALSE(r.notes.empty());
    check_witnesses(r);
}

TEST_CASE("kernel-pair radical agrees with the commutator oracle") {
    for (std::string R : {"ab", "burnside:2", "burnside:3"}) {
        Report r = verify_suite("kernel-pair-commutator", R, "groups");
        CHECK(r.details["oracle_disagreements"] == 0);
        check_witnesses(r);
    }
    Report m = verify_suite("kernel-pair-commutator", "burnside:2", "modules");
    CHECK(m.pass);
}

TEST_CASE("intersection identity for k = 2 and 3") {
    CHECK(verify_suite("intersection-join", "burnside:2", "groups").pass);
    CHECK(verify_suite("intersection-join", "burnside:3", "groups").pass);
}

TEST_CASE("reports summarise without extrapolating") {
    Report r = verify_suite("normal-iff-kernel-free");
    CHECK(r.summary().rfind("no counterexample in ", 0) == 0);
    json j = r.to_json();
    CHECK(j["schema"] == "semiab-report/1");
    CHECK(j["scope"] == "corpus-restricted");
    CHECK(j["verdict"] == "pass");
    CHECK(j["details"]["seed"] == 0);
    Report f = verify_suite("split-extension-closure");
    CHECK(f.summary().find("counterexample(s) in") != std::string::npos);
}

TEST_CASE("tampered witnesses do not reproduce") {
    Report r = verify_suite("split-extension-closure");
    REQUIRE_FALSE(r.witnesses.empty());
    json w = r.witnesses[0];
    w["observation"] = json{{"tampered", true}};
    CHECK_FALSE(witness_reproduces(r.reflector, w));
    json bad = r.witnesses[0];
    bad["check"] = "no-such-check";
    CHECK_THROWS_AS(replay_witness(r.reflector, bad), AlgebraError);
}

TEST_CASE("corpus directory override") {
    auto dir = std::filesystem::temp_directory_path() / "semiab-corpus-test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir / "rings");
    std::ofstream(dir / "rings" / "a.json") << to_json(*zring(6)).dump();
    std::ofstream(dir / "rings" / "b.json") << to_json(*zring(4)).dump();
    ::setenv("SEMIAB_CORPUS_DIR", dir.c_str(), 1);
    Corpus c = load_corpus("rings");
    ::unsetenv("SEMIAB_CORPUS_DIR");
    std::filesystem::remove_all(dir);
    REQUIRE(c.algebras.size() == 2);
    CHECK(c.algebras[0]->name == "Z/6");
    CHECK(c.algebras[1]->name == "Z/4");
}

TEST_CASE("named corpus members resolve") {
    CHECK(resolve_name("S3")->n == 6);
    CHECK(resolve_name("rings:Z/4")->variety.kind == Kind::comm_ring);
    CHECK(resolve_name("modules-z4:C2")->variety == zmod_variety(4));
    CHECK(resolve_name("nonsense") == nullptr);
}
