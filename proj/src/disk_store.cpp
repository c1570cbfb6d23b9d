#include "qsm/disk_store.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include "qsm/serialize.hpp"

namespace qsm {

namespace fs = std::filesystem;

namespace {

struct Entry {
    VariantId variant;
    int n = 0;
    UniPoly pgf;
};

std::string content_hash(const Json& coefficients) { return "fnv1a64:" + hex64(fnv1a64(coefficients.dump())); }

// Either the verified entry or the reason it was rejected.
std::variant<Entry, std::string> read_entry(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::string("unreadable");
    std::ostringstream buf;
    buf << in.rdbuf();
    Json j = Json::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::string("malformed json");
    try {
        if (j.at("format_version").get<int>() != kCacheFormatVersion) return std::string("format version mismatch");
        const Json& coeffs = j.at("pgf");
        if (j.at("hash").get<std::string>() != content_hash(coeffs)) return std::string("hash mismatch");
        Entry e{variant_from_json(j.at("variant")), j.at("n").get<int>(), poly_from_json(coeffs)};
        if (e.pgf.eval(Rational(1)) != Rational(1)) return std::string("not a distribution");
        return e;
    } catch (const std::exception& ex) {
        return std::string("invalid entry: ") + ex.what();
    }
}

}  // namespace

DiskStore::DiskStore(fs::path root) : root_(std::move(root)) {}

fs::path DiskStore::entry_path(const VariantId& v, int n) const {
    return root_ / variant_key(v) / ("n" + std::to_string(n) + ".json");
}

std::optional<UniPoly> DiskStore::load(const VariantId& v, int n) {
    const fs::path path = entry_path(v, n);
    std::error_code ec;
    if (!fs::exists(path, ec)) return std::nullopt;
    auto result = read_entry(path);
    std::string reason;
    if (auto* e = std::get_if<Entry>(&result)) {
        if (e->variant == v && e->n == n) return std::move(e->pgf);
        reason = "key mismatch";
    } else {
        reason = std::get<std::string>(result);
    }
    std::lock_guard lock(mu_);
    events_.push_back({path, reason});
    return std::nullopt;
}

void DiskStore::save(const VariantId& v, int n, const UniPoly& p) {
    const fs::path path = entry_path(v, n);
    fs::create_directories(path.parent_path());
    const Json coeffs = to_json(p);
    const Json doc = {{"format_version", kCacheFormatVersion},
                      {"variant", to_json(v)},
                      {"n", n},
                      {"pgf", coeffs},
                      {"hash", content_hash(coeffs)}};
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
        out << doc.dump() << '\n';
        if (!out) throw std::runtime_error("cache: write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::vector<IntegrityEvent> DiskStore::events() const {
    std::lock_guard lock(mu_);
    return events_;
}

std::vector<IntegrityEvent> DiskStore::scan() const {
    std::vector<IntegrityEvent> out;
    std::error_code ec;
    if (!fs::is_directory(root_, ec)) return out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root_))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        auto result = read_entry(path);
        if (auto* e = std::get_if<Entry>(&result)) {
            if (entry_path(e->variant, e->n) != path) out.push_back({path, "key mismatch"});
        } else {
            out.push_back({path, std::get<std::string>(result)});
        }
    }
    return out;
}

fs::path resolve_cache_dir(const std::string& explicit_dir, const fs::path& fallback) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
    return fallback;
}

}  // namespace qsm
