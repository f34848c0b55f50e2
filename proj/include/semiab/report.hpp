#pragma once

#include <map>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace semiab {

struct Report {
    std::string suite;
    std::string reflector;
    std::string corpus;
    bool pass = true;
    std::vector<json> witnesses;
    std::map<std::string, std::size_t> samples;
    std::vector<std::string> notes;
    json details = json::object();

    void fail(json witness) {
        pass = false;
        witnesses.push_back(std::move(witness));
    }
    void count(const std::string& key, std::size_t by = 1) { samples[key] += by; }
    std::size_t sample(const std::string& key) const {
        auto it = samples.find(key);
        return it == samples.end() ? 0 : it->second;
    }

    // "no counterexample in N instances" / "N counterexamples in M instances"
    std::string summary() const {
        std::size_t total = 0;
        for (const auto& [k, v] : samples) total += v;
        if (pass) return "no counterexample in " + std::to_string(total) + " instances";
        return std::to_string(witnesses.size()) + " counterexample(s) in " + std::to_string(total) + " instances";
    }

    json to_json() const {
        json j;
        j["schema"] = "semiab-report/1";
        j["suite"] = suite;
        j["reflector"] = reflector;
        j["corpus"] = corpus;
        j["verdict"] = pass ? "pass" : "fail";
        j["scope"] = "corpus-restricted";
        j["summary"] = summary();
        j["witnesses"] = witnesses;
        j["samples"] = samples;
        j["notes"] = notes;
        j["details"] = details;
        return j;
    }
};

}  // namespace semiab
