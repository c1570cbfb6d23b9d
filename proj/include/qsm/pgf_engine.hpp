#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <utility>

#include "qsm/trunc_series.hpp"
#include "qsm/unipoly.hpp"
#include "qsm/variant.hpp"

namespace qsm {

// Persistent backing for computed PGFs (see DiskStore).
class PgfStore {
public:
    virtual ~PgfStore() = default;
    virtual std::optional<UniPoly> load(const VariantId& v, int n) = 0;
    virtual void save(const VariantId& v, int n, const UniPoly& p) = 0;
};

// Insert-once map from (variant, n) to its PGF. Entries are never replaced.
class PgfCache {
public:
    std::optional<UniPoly> find(const VariantId& v, int n) const;
    // Keeps the existing entry if the key is already present.
    void insert(const VariantId& v, int n, UniPoly p);
    std::size_t size() const;

private:
    mutable std::shared_mutex mu_;
    std::map<std::pair<VariantId, int>, UniPoly> entries_;
};

// Computes P_n(t) for every family with a difference equation, bottom-up in
// n with all intermediate ladders memoized. The same recurrences also run
// over truncated series in w = t - 1 for the large-n moment path.
//
// Distinct variants may be queried concurrently; requests for one variant
// serialize on that variant's ladder.
class PgfEngine {
public:
    explicit PgfEngine(PgfStore* store = nullptr);
    ~PgfEngine();
    PgfEngine(const PgfEngine&) = delete;
    PgfEngine& operator=(const PgfEngine&) = delete;

    UniPoly pgf(const VariantId& v, int n);
    // P_n(1 + w) truncated after w^order, computed without the full PGF.
    TruncSeries truncated(const VariantId& v, int n, int order);

    const PgfCache& cache() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Process-wide engine without persistence.
PgfEngine& default_engine();

UniPoly pgf(const VariantId& v, int n);

}  // namespace qsm
