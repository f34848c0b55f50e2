#pragma once

#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "builders.hpp"

namespace semiab {

using json = nlohmann::json;

inline constexpr const char* kFormatVersion = "semiab/1";

// Malformed documents; `where` is a JSON pointer or a byte offset.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw FormatError(path.empty() ? "/" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(path + "/" + key, "missing field");
    return *it;
}

inline std::size_t as_index(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw FormatError(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

inline std::vector<Element> as_vector(const json& j, std::size_t len, std::size_t bound, const std::string& path) {
    if (!j.is_array()) throw FormatError(path, "expected an array");
    if (j.size() != len)
        throw FormatError(path, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
    std::vector<Element> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        std::string p = path + "/" + std::to_string(i);
        std::size_t v = as_index(j[i], p);
        if (v >= bound) throw FormatError(p, "entry " + std::to_string(v) + " out of range");
        out[i] = static_cast<Element>(v);
    }
    return out;
}

inline std::vector<Element> as_table(const json& j, std::size_t n, const std::string& path) {
    if (!j.is_array() || j.size() != n) throw FormatError(path, "expected " + std::to_string(n) + " rows");
    std::vector<Element> out;
    out.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        auto row = as_vector(j[r], n, n, path + "/" + std::to_string(r));
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

inline json table_json(const std::vector<Element>& t, std::size_t n) {
    json rows = json::array();
    for (std::size_t r = 0; r < n; ++r) rows.push_back(std::vector<Element>(t.begin() + r * n, t.begin() + (r + 1) * n));
    return rows;
}

}  // namespace detail

inline json to_json(const Algebra& A) {
    json j;
    j["format"] = kFormatVersion;
    j["kind"] = "algebra";
    j["name"] = A.name;
    j["variety"] = A.variety.id();
    j["order"] = A.n;
    if (A.variety.kind == Kind::gpd) {
        AlgPtr self = std::make_shared<const Algebra>(A);
        GroupoidLevels L = groupoid_levels(self);
        j["tables"] = {{"g1", to_json(*L.g1)}, {"g0", to_json(*L.g0)}, {"d", L.d}, {"c", L.c}, {"i", L.i}};
        return j;
    }
    j["tables"]["add"] = detail::table_json(A.add_, A.n);
    j["tables"]["neg"] = A.neg_;
    if (A.has_mul()) j["tables"]["mul"] = detail::table_json(A.mul_, A.n);
    return j;
}

inline AlgPtr algebra_from_json(const json& j, const std::string& path = "") {
    if (!j.is_object()) throw FormatError(path.empty() ? "/" : path, "expected an algebra object");
    const json& vj = detail::field(j, "variety", path);
    if (!vj.is_string()) throw FormatError(path + "/variety", "expected a string");
    Variety v;
    try {
        v = Variety::parse(vj.get<std::string>());
    } catch (const AlgebraError& e) {
        throw FormatError(path + "/variety", e.what());
    }
    std::size_t n = detail::as_index(detail::field(j, "order", path), path + "/order");
    if (n == 0) throw FormatError(path + "/order", "order must be positive");
    std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "A";
    const json& t = detail::field(j, "tables", path);
    std::string tp = path + "/tables";
    try {
        if (v.kind == Kind::gpd) {
            AlgPtr g1 = algebra_from_json(detail::field(t, "g1", tp), tp + "/g1");
            AlgPtr g0 = algebra_from_json(detail::field(t, "g0", tp), tp + "/g0");
            if (g1->n != n) throw FormatError(tp + "/g1/order", "arrow group order must equal the groupoid order");
            auto d = detail::as_vector(detail::field(t, "d", tp), g1->n, g0->n, tp + "/d");
            auto c = detail::as_vector(detail::field(t, "c", tp), g1->n, g0->n, tp + "/c");
            auto i = detail::as_vector(detail::field(t, "i", tp), g0->n, g1->n, tp + "/i");
            return gpd_from_levels(g1, g0, d, c, i, name);
        }
        Algebra A;
        A.variety = v;
        A.name = name;
        A.n = n;
        A.add_ = detail::as_table(detail::field(t, "add", tp), n, tp + "/add");
        A.neg_ = detail::as_vector(detail::field(t, "neg", tp), n, n, tp + "/neg");
        if (v.is_ring()) A.mul_ = detail::as_table(detail::field(t, "mul", tp), n, tp + "/mul");
        else if (t.contains("mul")) throw FormatError(tp + "/mul", "multiplication given for " + v.id());
        return validated(std::move(A));
    } catch (const AlgebraError& e) {
        throw FormatError(tp, e.what());
    }
}

using Resolver = std::function<AlgPtr(const std::string&)>;

// Morphisms reference their endpoints either inline or by name; `names`
// controls which form is written.
inline json to_json(const Morphism& f, bool inline_endpoints = true) {
    json j;
    j["format"] = kFormatVersion;
    j["kind"] = "morphism";
    j["dom"] = inline_endpoints ? to_json(*f.dom) : json(f.dom->name);
    j["cod"] = inline_endpoints ? to_json(*f.cod) : json(f.cod->name);
    j["map"] = f.map;
    return j;
}

inline AlgPtr endpoint_from_json(const json& j, const Resolver& resolve, const std::string& path) {
    if (j.is_string()) {
        if (!resolve) throw FormatError(path, "named endpoint without a resolver");
        AlgPtr A = resolve(j.get<std::string>());
        if (!A) throw FormatError(path, "unknown algebra '" + j.get<std::string>() + "'");
        return A;
    }
    return algebra_from_json(j, path);
}

inline Morphism morphism_from_json(const json& j, const Resolver& resolve = nullptr, const std::string& path = "") {
    AlgPtr dom = endpoint_from_json(detail::field(j, "dom", path), resolve, path + "/dom");
    AlgPtr cod = endpoint_from_json(detail::field(j, "cod", path), resolve, path + "/cod");
    auto map = detail::as_vector(detail::field(j, "map", path), dom->n, cod->n, path + "/map");
    Morphism f{dom, cod, map};
    if (auto e = find_morphism_failure(f)) throw FormatError(path + "/map", *e);
    return f;
}

inline json to_json(const Subobject& S) {
    return {{"parent", S.parent->name}, {"elements", S.elems}, {"normal", S.normal}};
}

// Parses text, converting parser failures into FormatError with the byte
// offset of the problem.
inline json parse_document(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(source + "@byte " + std::to_string(e.byte), e.what());
    }
}

inline json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

}  // namespace semiab
