#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "qsm/pgf_engine.hpp"

namespace qsm {

inline constexpr int kCacheFormatVersion = 1;
inline constexpr const char* kCacheDirEnv = "QSM_CACHE_DIR";

// An entry that failed verification and was ignored.
struct IntegrityEvent {
    std::filesystem::path path;
    std::string reason;
};

// One JSON file per (variant, n) at <root>/<variant_key>/n<N>.json, carrying
// the format version, the key, the coefficients and an FNV-1a hash of the
// compact coefficient array. Anything that fails to verify is reported and
// treated as a miss, so the engine recomputes and overwrites it.
class DiskStore final : public PgfStore {
public:
    explicit DiskStore(std::filesystem::path root);

    std::optional<UniPoly> load(const VariantId& v, int n) override;
    // Written to a temporary file and renamed into place.
    void save(const VariantId& v, int n, const UniPoly& p) override;

    std::filesystem::path entry_path(const VariantId& v, int n) const;
    const std::filesystem::path& root() const { return root_; }

    // Events recorded by load() since construction.
    std::vector<IntegrityEvent> events() const;
    // Verifies every entry under the root without loading it into an engine.
    std::vector<IntegrityEvent> scan() const;

private:
    std::filesystem::path root_;
    mutable std::mutex mu_;
    std::vector<IntegrityEvent> events_;
};

// Explicit path if nonempty, else $QSM_CACHE_DIR, else fallback.
std::filesystem::path resolve_cache_dir(const std::string& explicit_dir, const std::filesystem::path& fallback);

}  // namespace qsm
