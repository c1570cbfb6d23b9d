#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qsm/serialize.hpp"

namespace qsm {

inline constexpr const char* kToolVersion = "0.1.0";

enum class CheckStatus { pass, fail, skipped };

std::string status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    std::string section;
    CheckStatus status = CheckStatus::skipped;
    Json expected;  // null when not applicable
    Json actual;
    std::string detail;
};

// Metadata varies between runs; the payload is a pure function of the
// checks that ran and their results.
struct ReportBundle {
    std::string scope;
    Json config = Json::object();
    std::string started_at;
    std::string finished_at;
    std::map<std::string, double> seconds;  // per check wall time
    std::vector<CheckResult> checks;        // in suite order, names unique

    Json metadata() const;
    // {"status": ..., "counts": {...}, "checks": {name: {...}}}
    Json payload() const;
    Json to_json() const;

    bool passed() const;
    // First check with status fail, or nullptr.
    const CheckResult* first_failure() const;
};

// ISO-8601 UTC, second resolution.
std::string utc_timestamp();

}  // namespace qsm
