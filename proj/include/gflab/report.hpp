#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gflab {

struct unknown_suite : std::runtime_error {
    explicit unknown_suite(const std::string& name) : std::runtime_error("unknown suite: " + name) {}
};

struct CheckResult {
    std::string name;
    std::string status;  // pass | fail | skip
    std::string lhs;     // exact rationals or "mid+/-rad" strings
    std::string rhs;
    std::string tolerance;
    long elapsed_ms = 0;

    static CheckResult pass(std::string name) { return {std::move(name), "pass", "", "", "", 0}; }
    static CheckResult fail(std::string name) { return {std::move(name), "fail", "", "", "", 0}; }
};

struct SuiteOptions {
    long order = 300;
    long bits = 256;
    long prime = 5;
    long precision = 50;
    int samples = 5;
    uint64_t seed = 1;
};

struct Report {
    std::string suite;
    std::vector<CheckResult> checks;
    SuiteOptions options;
    std::string version = "gflab 1.0";

    bool all_pass() const;
    void add(CheckResult c);
    void sort_checks();  // deterministic order by check name
    // numeric payloads stay strings; elapsed_ms is the only volatile field
    std::string to_json(int indent = 2) const;
    std::string to_text() const;
    // canonical form with elapsed stripped, for determinism comparisons
    std::string canonical() const;
};

const std::vector<std::string>& suite_names();
Report run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace gflab
