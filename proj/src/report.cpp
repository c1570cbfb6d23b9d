#include "qsm/report.hpp"

#include <chrono>
#include <ctime>

namespace qsm {

std::string status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "skipped";
}

Json ReportBundle::metadata() const {
    Json timings = Json::object();
    for (const auto& [name, s] : seconds) timings[name] = s;
    return {{"tool", "qsm"},       {"version", kToolVersion},     {"scope", scope},   {"config", config},
            {"started_at", started_at}, {"finished_at", finished_at}, {"seconds", timings}};
}

Json ReportBundle::payload() const {
    Json checks_json = Json::object();
    long pass = 0, fail = 0, skipped = 0;
    for (const auto& c : checks) {
        switch (c.status) {
            case CheckStatus::pass: ++pass; break;
            case CheckStatus::fail: ++fail; break;
            case CheckStatus::skipped: ++skipped; break;
        }
        Json entry = {{"section", c.section}, {"status", status_name(c.status)}};
        if (!c.expected.is_null()) entry["expected"] = c.expected;
        if (!c.actual.is_null()) entry["actual"] = c.actual;
        if (!c.detail.empty()) entry["detail"] = c.detail;
        checks_json[c.name] = std::move(entry);
    }
    return {{"status", fail == 0 ? "pass" : "fail"},
            {"counts", {{"pass", pass}, {"fail", fail}, {"skipped", skipped}}},
            {"checks", std::move(checks_json)}};
}

Json ReportBundle::to_json() const { return {{"metadata", metadata()}, {"payload", payload()}}; }

bool ReportBundle::passed() const { return first_failure() == nullptr; }

const CheckResult* ReportBundle::first_failure() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return &c;
    return nullptr;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace qsm
