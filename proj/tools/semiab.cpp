// semiab: command-line front end for the semiab library.
//
// Exit codes: 0 success, 1 usage error, 2 property failure, 3 I/O or format error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "semiab/semiab.hpp"

namespace {

using namespace semiab;

enum Exit { kOk = 0, kUsage = 1, kProperty = 2, kInput = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string elems_str(const Subobject& S) {
    std::string s = "{";
    for (std::size_t i = 0; i < S.elems.size(); ++i) s += (i ? ", " : "") + std::to_string(S.elems[i]);
    return s + "}";
}

Reflector parse_reflector(const std::string& id) {
    try {
        return Reflector::parse(id);
    } catch (const AlgebraError& e) {
        throw UsageError(e.what());
    }
}

void require_accepts(const Reflector& R, const Variety& v) {
    if (!R.accepts(v)) throw UsageError("reflector " + R.id() + " does not apply to " + v.id());
}

// Algebra names in documents resolve against the built-in corpora.
AlgPtr resolve(const std::string& name) { return resolve_name(name); }

// A path to an algebra document, or the name of a corpus member.
AlgPtr load_algebra(const std::string& ref) {
    if (!std::filesystem::exists(ref)) {
        if (AlgPtr A = resolve_name(ref)) return A;
        throw IoError("cannot open " + ref);
    }
    json j = read_document(ref);
    try {
        return algebra_from_json(j);
    } catch (const FormatError& e) {
        throw FormatError(ref + "#" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

template <class F>
auto load_with_path(const std::string& path, F parse) {
    json j = read_document(path);
    try {
        return parse(j);
    } catch (const FormatError& e) {
        throw FormatError(path + "#" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    } catch (const AlgebraError& e) {
        throw FormatError(path, e.what());
    }
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string default_corpus(const Reflector& R) {
    for (const std::string& id : corpus_ids())
        for (const AlgPtr& A : builtin_corpus(id).algebras)
            if (R.accepts(A->variety) && A->n > 1) return id;
    throw UsageError("no built-in corpus fits reflector " + R.id());
}

// ---------------------------------------------------------------------------

int cmd_check_protoadditive(const std::string& reflector, std::string corpus, bool as_json) {
    Reflector R = parse_reflector(reflector);
    if (corpus.empty()) corpus = default_corpus(R);
    Corpus c = load_corpus(corpus);
    std::vector<AlgPtr> algs;
    for (const AlgPtr& A : c.algebras)
        if (R.accepts(A->variety)) algs.push_back(A);
    if (algs.empty()) throw UsageError("reflector " + R.id() + " applies to no member of corpus " + corpus);
    Report r = is_protoadditive(R, split_sequences(algs));
    r.corpus = corpus;
    Report pullbacks = verify_suite("split-pullback-preservation", R.id(), corpus);
    Report images = verify_suite("protosplit-normal-image", R.id(), corpus);
    r.details["routes"] = {{"preserves split short exact sequences", r.pass},
                           {"preserves pullbacks along split epimorphisms", pullbacks.pass},
                           {"protosplit monos to normal monos", images.pass}};
    bool agree = r.pass == pullbacks.pass && r.pass == images.pass;
    r.details["routes_agree"] = agree;
    if (as_json) {
        std::cout << r.to_json().dump(2) << "\n";
    } else {
        std::size_t n = r.sample("split sequences");
        if (r.pass)
            std::cout << "protoadditive on " << n << " split sequences\n";
        else
            std::cout << "not protoadditive: " << r.witnesses.size() << " of " << n
                      << " split sequences are not preserved; first: " << r.witnesses[0]["label"].get<std::string>()
                      << "\n";
        std::cout << "  preserves split short exact sequences: " << yes_no(r.pass) << "\n"
                  << "  preserves pullbacks along split epimorphisms: " << yes_no(pullbacks.pass) << "\n"
                  << "  sends protosplit monomorphisms to normal monomorphisms: " << yes_no(images.pass) << "\n"
                  << "  characterisations agree: " << yes_no(agree) << "\n";
    }
    return r.pass && agree ? kOk : kProperty;
}

int cmd_radical(const std::string& reflector, const std::string& object, const std::string& out, bool as_json) {
    Reflector R = parse_reflector(reflector);
    AlgPtr A = load_algebra(object);
    require_accepts(R, A->variety);
    TorsionDecomposition d = reflect(R, A);
    if (!out.empty()) write_json(out, to_json(*d.reflection));
    if (as_json) {
        json j{{"schema", "semiab-radical/1"},
               {"reflector", R.id()},
               {"algebra", A->name},
               {"radical", to_json(d.radical)},
               {"reflection", to_json(*d.reflection)},
               {"unit", d.unit.map}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "radical of " << A->name << " for " << R.id() << ": " << elems_str(d.radical) << " (order "
                  << d.radical.size() << ")\n"
                  << "reflection F(" << A->name << ") has order " << d.reflection->n << "\n"
                  << "torsion-free: " << yes_no(d.radical.is_zero()) << ", torsion: " << yes_no(d.radical.is_all())
                  << "\n";
    }
    return kOk;
}

int cmd_factorize(const std::string& reflector, const std::string& morphism, const std::string& out_dir, bool as_json) {
    Reflector R = parse_reflector(reflector);
    Morphism f = load_with_path(morphism, [](const json& j) { return morphism_from_json(j, resolve); });
    require_accepts(R, f.dom->variety);
    if (!condition_N_check(R, f)) {
        std::cout << "condition (N) fails: the radical of the kernel is not normal in " << f.dom->name << "\n";
        return kProperty;
    }
    EMFactorisation em = em_factorize(R, f);
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_json((dir / "e.json").string(), to_json(em.e));
    write_json((dir / "m.json").string(), to_json(em.m));
    if (as_json) {
        json j{{"schema", "semiab-factorize/1"},
               {"reflector", R.id()},
               {"class", to_string(classify_em(R, f))},
               {"middle_order", em.middle->n},
               {"e_certified", em.e_certified},
               {"m_certified", em.m_certified},
               {"e", (dir / "e.json").string()},
               {"m", (dir / "m.json").string()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << f.dom->name << " -> " << f.cod->name << " factors through an object of order "
                  << em.middle->n << "\n"
                  << "  e (torsion kernel): " << yes_no(em.e_certified) << ", written to " << (dir / "e.json").string()
                  << "\n"
                  << "  m (torsion-free kernel): " << yes_no(em.m_certified) << ", written to "
                  << (dir / "m.json").string() << "\n";
    }
    return em.e_certified && em.m_certified ? kOk : kProperty;
}

int cmd_extension_morphism(const Reflector& R, const Morphism& f, bool as_json) {
    require_accepts(R, f.dom->variety);
    if (!is_surjective(f)) {
        std::cout << "not an extension: " << f.dom->name << " -> " << f.cod->name << " is not surjective\n";
        return kProperty;
    }
    bool trivial = is_trivial_extension(R, f);
    bool normal = is_normal_extension(R, f);
    Subobject KT = kernel_radical(R, f);
    json j{{"schema", "semiab-extension/1"},
           {"reflector", R.id()},
           {"n", 1},
           {"trivial", trivial},
           {"normal", normal},
           {"kernel_radical", KT.elems}};
    std::optional<Subobject> literal;
    if (R.is_birkhoff()) {
        literal = birkhoff_radical(R, f);
        j["commutator"] = literal->elems;
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << f.dom->name << " -> " << f.cod->name << " for " << R.id() << "\n"
                  << "  trivial extension: " << yes_no(trivial) << "\n"
                  << "  normal extension: " << yes_no(normal) << "\n"
                  << "  radical of the kernel: " << elems_str(KT) << "\n";
        if (literal) std::cout << "  kernel-pair radical: " << elems_str(*literal) << "\n";
    }
    return normal ? kOk : kProperty;
}

int cmd_extension_cube(const Reflector& R, const NCube& c, bool as_json) {
    require_accepts(R, c.top()->variety);
    if (!is_nfold_extension(c)) {
        std::cout << "not a " << c.n << "-fold extension\n";
        return kProperty;
    }
    Subobject meet = rib_kernel_meet(c);
    Subobject KT = rib_kernel_radical(R, c);
    bool by_kernels = KT.is_zero();
    json j{{"schema", "semiab-extension/1"}, {"reflector", R.id()}, {"n", c.n}, {"kernel_meet", meet.elems},
           {"kernel_meet_radical", KT.elems}};
    std::optional<bool> recursive;
    std::optional<Subobject> literal;
    if (c.n == 2 && !R.is_birkhoff()) recursive = is_double_normal_recursive(R, c);
    if (R.is_birkhoff() && c.n <= 2) literal = higher_radical(R, c);
    bool normal = literal ? literal->is_zero() : by_kernels;
    j["normal"] = normal;
    j["kernel_criterion"] = by_kernels;
    if (recursive) j["recursive"] = *recursive;
    if (literal) j["commutator"] = literal->elems;
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << c.n << "-fold extension with top " << c.top()->name << " for " << R.id() << "\n"
                  << "  meet of rib kernels: " << elems_str(meet) << ", its radical: " << elems_str(KT) << "\n"
                  << "  normal by the kernel criterion: " << yes_no(by_kernels) << "\n";
        if (recursive) std::cout << "  normal by the recursive definition: " << yes_no(*recursive) << "\n";
        if (literal) std::cout << "  kernel-pair radical: " << elems_str(*literal) << "\n";
        std::cout << "  normal: " << yes_no(normal) << "\n";
    }
    return normal ? kOk : kProperty;
}

int cmd_homology(const std::string& variety, const std::string& coeff, const std::string& object, unsigned degree,
                 std::uint64_t seed, bool as_json) {
    Variety v;
    try {
        v = Variety::parse(variety);
    } catch (const AlgebraError& e) {
        throw UsageError(e.what());
    }
    if (v.kind != Kind::zmod) throw UsageError("homology needs --variety zmod:m");
    if (degree < 2 || degree > 3) throw UsageError("--degree must be 2 or 3");
    Reflector B = parse_reflector(coeff);
    require_accepts(B, v);
    AlgPtr A = load_algebra(object);
    if (!(A->variety == v)) throw UsageError(A->name + " is a " + A->variety.id() + " algebra, not " + v.id());
    HopfResult h = hopf_homology(B, A, degree, seed);
    std::string H = describe_abelian(*h.homology());
    if (as_json) {
        auto pres = [](const HopfComputation& c) {
            json j{{"presentation", c.presentation.label},
                   {"numerator", c.numerator.elems},
                   {"denominator", c.denominator.elems},
                   {"homology", describe_abelian(*c.homology)}};
            j["literal_agrees"] = c.literal_agrees ? json(*c.literal_agrees) : json(nullptr);
            return j;
        };
        json j{{"schema", "semiab-homology/1"}, {"variety", v.id()},        {"coefficients", B.id()},
               {"object", A->name},             {"degree", degree},         {"homology", H},
               {"order", h.homology()->n},      {"presentations", {pres(h.first), pres(h.second)}}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << H << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& suite, const std::string& reflector, const std::string& corpus, std::uint64_t seed,
               bool as_json) {
    std::vector<Report> reports;
    if (suite == "all") {
        if (!reflector.empty() || !corpus.empty()) throw UsageError("--suite all runs every suite with its defaults");
        reports = verify_all(seed);
    } else {
        try {
            find_suite(suite);
            Reflector::parse(reflector.empty() ? find_suite(suite).reflector : reflector);
        } catch (const AlgebraError& e) {
            throw UsageError(e.what());
        }
        try {
            reports.push_back(verify_suite(suite, reflector, corpus, seed));
        } catch (const AlgebraError& e) {
            throw UsageError(e.what());
        }
    }
    bool pass = true;
    for (const Report& r : reports) pass &= r.pass;
    if (as_json) {
        json j = json::array();
        for (const Report& r : reports) j.push_back(r.to_json());
        std::cout << (reports.size() == 1 ? j[0] : j).dump(2) << "\n";
    } else {
        for (const Report& r : reports) {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.suite << " [" << r.reflector << " on " << r.corpus
                      << "]: " << find_suite(r.suite).description << "; " << r.summary() << "\n";
            if (!r.pass) std::cout << "  first witness: " << r.witnesses[0].value("label", "?") << "\n";
        }
    }
    return pass ? kOk : kProperty;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiab: torsion theories, protoadditive reflectors and higher extensions on finite algebras"};
    app.require_subcommand(1);
    bool as_json = false;
    std::string reflector, corpus, object, morphism, cube, out, out_dir = ".", suite, variety, coeff;
    unsigned degree = 2;
    std::uint64_t seed = 0;

    auto* proto = app.add_subcommand("check-protoadditive", "check that a reflector preserves split short exact sequences");
    proto->add_option("--reflector", reflector, "reflector id")->required();
    proto->add_option("--corpus", corpus, "corpus id");
    proto->add_flag("--json", as_json, "machine-readable report");

    auto* rad = app.add_subcommand("radical", "radical T(A) and reflection F(A)");
    rad->add_option("--reflector", reflector, "reflector id")->required();
    rad->add_option("--object", object, "algebra file or corpus name")->required();
    rad->add_option("--out", out, "write F(A) to this file");
    rad->add_flag("--json", as_json, "machine-readable output");

    auto* fac = app.add_subcommand("factorize", "factor a morphism into torsion-kernel and torsion-free-kernel parts");
    fac->add_option("--reflector", reflector, "reflector id")->required();
    fac->add_option("--morphism", morphism, "morphism file")->required();
    fac->add_option("--out-dir", out_dir, "directory for e.json and m.json");
    fac->add_flag("--json", as_json, "machine-readable output");

    auto* ext = app.add_subcommand("extension-check", "triviality and normality of an extension or n-cube");
    ext->add_option("--reflector", reflector, "reflector id")->required();
    auto* m_opt = ext->add_option("--morphism", morphism, "morphism file");
    auto* c_opt = ext->add_option("--cube", cube, "cube file");
    m_opt->excludes(c_opt);
    ext->add_flag("--json", as_json, "machine-readable output");

    auto* hom = app.add_subcommand("homology", "Hopf-type homology of a module with coefficients in a subvariety");
    hom->add_option("--variety", variety, "zmod:m")->required();
    hom->add_option("--coeff", coeff, "coefficient reflector id")->required();
    hom->add_option("--object", object, "module file or corpus name")->required();
    hom->add_option("--degree", degree, "2 or 3");
    hom->add_option("--seed", seed, "seed for the second presentation");
    hom->add_flag("--json", as_json, "machine-readable output");

    auto* ver = app.add_subcommand("verify", "run a verification suite over a corpus");
    ver->add_option("--suite", suite, "suite id or 'all'")->required();
    ver->add_option("--reflector", reflector, "reflector id (default: the suite's)");
    ver->add_option("--corpus", corpus, "corpus id (default: the suite's)");
    ver->add_option("--seed", seed, "sampling seed");
    ver->add_flag("--json", as_json, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (proto->parsed()) return cmd_check_protoadditive(reflector, corpus, as_json);
        if (rad->parsed()) return cmd_radical(reflector, object, out, as_json);
        if (fac->parsed()) return cmd_factorize(reflector, morphism, out_dir, as_json);
        if (ext->parsed()) {
            Reflector R = parse_reflector(reflector);
            if (!morphism.empty())
                return cmd_extension_morphism(
                    R, load_with_path(morphism, [](const json& j) { return morphism_from_json(j, resolve); }),
                    as_json);
            if (!cube.empty())
                return cmd_extension_cube(R, load_with_path(cube, [](const json& j) { return cube_from_json(j, resolve); }),
                                          as_json);
            throw UsageError("extension-check needs --morphism or --cube");
        }
        if (hom->parsed()) return cmd_homology(variety, coeff, object, degree, seed, as_json);
        if (ver->parsed()) return cmd_verify(suite, reflector, corpus, seed, as_json);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kInput;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kInput;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kInput;
    } catch (const AlgebraError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kProperty;
    }
    return kUsage;
}
