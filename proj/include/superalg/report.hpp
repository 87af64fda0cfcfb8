#pragma once

#include <string>

#include "json.hpp"

namespace superalg {

struct CheckReport {
    std::string identity;
    nlohmann::json config = nlohmann::json::object();
    bool pass = true;
    std::string counterexample;
    nlohmann::json details = nlohmann::json::object();

    // Keeps the first failure as the counterexample.
    void fail(const std::string& what) {
        if (pass) counterexample = what;
        pass = false;
    }
    void absorb(const CheckReport& other) {
        if (!other.pass) fail(other.identity + ": " + other.counterexample);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema"] = 1;
        j["identity"] = identity;
        j["config"] = config;
        j["status"] = pass ? "pass" : "fail";
        j["counterexample"] = pass ? nlohmann::json(nullptr) : nlohmann::json(counterexample);
        j["details"] = details;
        return j;
    }
};

}  // namespace superalg
