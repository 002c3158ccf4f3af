#include "gflab/report.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace gflab {

using nlohmann::json;

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.status != "fail"; });
}

void Report::add(CheckResult c) { checks.push_back(std::move(c)); }

void Report::sort_checks() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
}

namespace {
json to_json_impl(const Report& r, bool with_elapsed) {
    json j;
    j["suite"] = r.suite;
    j["toolchain"]["version"] = r.version;
    j["toolchain"]["seed"] = std::to_string(r.options.seed);
    j["toolchain"]["precision"] = {{"order", std::to_string(r.options.order)},
                                   {"bits", std::to_string(r.options.bits)},
                                   {"prime", std::to_string(r.options.prime)},
                                   {"padic_precision", std::to_string(r.options.precision)},
                                   {"samples", std::to_string(r.options.samples)}};
    json checks = json::array();
    for (const auto& c : r.checks) {
        json cj;
        cj["name"] = c.name;
        cj["status"] = c.status;
        if (!c.lhs.empty()) cj["lhs"] = c.lhs;
        if (!c.rhs.empty()) cj["rhs"] = c.rhs;
        if (!c.tolerance.empty()) cj["tolerance"] = c.tolerance;
        if (with_elapsed) cj["elapsed_ms"] = c.elapsed_ms;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["all_pass"] = r.all_pass();
    return j;
}
}  // namespace

std::string Report::to_json(int indent) const { return to_json_impl(*this, true).dump(indent); }

std::string Report::canonical() const { return to_json_impl(*this, false).dump(); }

std::string Report::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const auto& c : checks) {
        os << "  [" << c.status << "] " << c.name;
        if (!c.lhs.empty()) os << "  lhs=" << c.lhs;
        if (!c.rhs.empty()) os << " rhs=" << c.rhs;
        if (!c.tolerance.empty()) os << " tol=" << c.tolerance;
        os << " (" << c.elapsed_ms << " ms)\n";
    }
    os << (all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return os.str();
}

}  // namespace gflab
