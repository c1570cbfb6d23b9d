#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsm/report.hpp"

namespace qsm {

struct CheckInfo {
    std::string name;
    std::string section;  // section2..section5, or "cross" for whole-system checks
    bool all_only = false;  // expensive; runs only under scope "all"
};

// Every check in suite order. Each name is unique.
const std::vector<CheckInfo>& check_catalog();

const std::vector<std::string>& reproduce_scopes();

struct ReproduceOptions {
    std::filesystem::path cache_dir;
    std::ostream* progress = nullptr;  // one line per check when set
};

// Runs the checks selected by scope against a disk-backed engine; checks
// outside the scope are reported as skipped. Throws std::invalid_argument on
// an unknown scope.
ReportBundle reproduce(const std::string& scope, const ReproduceOptions& options);

}  // namespace qsm
