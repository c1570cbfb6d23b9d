#include "qsm/pgf_engine.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsm/combinatorics.hpp"
#include "qsm/kernels.hpp"

namespace qsm {

namespace {

struct PolyAlgebra {
    using Value = UniPoly;
    Value zero() const { return {}; }
    Value one() const { return UniPoly(Rational(1)); }
    Value lift(const UniPoly& p) const { return p; }
    Value times_t_pow(const Value& v, std::size_t m) const { return v.shifted(m); }
};

struct SeriesAlgebra {
    using Value = TruncSeries;
    int order;
    Value zero() const { return TruncSeries(order); }
    Value one() const { return TruncSeries::one(order); }
    Value lift(const UniPoly& p) const { return TruncSeries::from_poly(p, order); }
    Value times_t_pow(const Value& v, std::size_t m) const { return v.times_t_pow(m); }
};

Rational inverse(const BigInt& d) { return Rational(BigInt(1), d); }

// P_0, P_1, ... for one variant over one coefficient algebra.
template <class Alg>
class Ladder {
public:
    using Value = typename Alg::Value;

    Ladder(VariantId v, Alg alg) : v_(v), alg_(std::move(alg)) {}

    int size() const { return static_cast<int>(p_.size()); }

    const Value& at(int n) {
        while (size() <= n) p_.push_back(next(size()));
        return p_[static_cast<std::size_t>(n)];
    }

private:
    Value next(int n);
    Value single_pivot_comparisons(int n);
    // P_{k-1} P_{n-k} for k = 1..n, index k-1.
    std::vector<Value> split_products(int n);
    // D_m = sum_{a+b=m} P_a P_b
    const Value& pair_sum(int m);
    // T_m = sum_{a+b=m} D_a D_b
    const Value& quad_sum(int m);
    // G_m[s]: sublists 1..m with total length s, each element of sublist j
    // weighted by t^{min(j,k)}.
    const Value& linear_chain(int m, int s);
    const Value& pivot_sort();
    // Ladder of the family that sorts the sublists, when it differs.
    Ladder& sublists();

    VariantId v_;
    Alg alg_;
    std::vector<Value> p_;
    std::vector<Value> pairs_;
    std::vector<Value> quads_;
    std::vector<std::vector<Value>> chain_;
    std::optional<Value> pivot_sort_;
    std::unique_ptr<Ladder> sublists_;
};

template <class Alg>
auto Ladder<Alg>::split_products(int n) -> std::vector<Value> {
    std::vector<Value> out(static_cast<std::size_t>(n), alg_.zero());
    for (int k = 1; 2 * k <= n + 1; ++k) {
        out[static_cast<std::size_t>(k - 1)] = at(k - 1) * at(n - k);
        out[static_cast<std::size_t>(n - k)] = out[static_cast<std::size_t>(k - 1)];
    }
    return out;
}

template <class Alg>
auto Ladder<Alg>::pair_sum(int m) -> const Value& {
    while (static_cast<int>(pairs_.size()) <= m) {
        const int s = static_cast<int>(pairs_.size());
        Value acc = alg_.zero();
        for (int a = 0; 2 * a <= s; ++a) {
            Value prod = at(a) * at(s - a);
            if (2 * a != s) prod *= Rational(2);
            acc += prod;
        }
        pairs_.push_back(std::move(acc));
    }
    return pairs_[static_cast<std::size_t>(m)];
}

template <class Alg>
auto Ladder<Alg>::quad_sum(int m) -> const Value& {
    while (static_cast<int>(quads_.size()) <= m) {
        const int s = static_cast<int>(quads_.size());
        Value acc = alg_.zero();
        for (int a = 0; 2 * a <= s; ++a) {
            Value prod = pair_sum(a) * pair_sum(s - a);
            if (2 * a != s) prod *= Rational(2);
            acc += prod;
        }
        quads_.push_back(std::move(acc));
    }
    return quads_[static_cast<std::size_t>(m)];
}

template <class Alg>
auto Ladder<Alg>::linear_chain(int m, int s) -> const Value& {
    const int k = v_.pivots;
    if (static_cast<int>(chain_.size()) < m) chain_.resize(static_cast<std::size_t>(m));
    const auto row = static_cast<std::size_t>(m - 1);
    while (static_cast<int>(chain_[row].size()) <= s) {
        const int len = static_cast<int>(chain_[row].size());
        const auto cost = static_cast<std::size_t>(std::min(m, k));
        Value acc = alg_.zero();
        if (m == 1) {
            acc = alg_.times_t_pow(at(len), cost * static_cast<std::size_t>(len));
        } else {
            for (int a = 0; a <= len; ++a) {
                // linear_chain may grow chain_, so copy before recursing
                Value head = linear_chain(m - 1, len - a);
                acc += head * alg_.times_t_pow(at(a), cost * static_cast<std::size_t>(a));
            }
        }
        chain_[row].push_back(std::move(acc));
    }
    return chain_[row][static_cast<std::size_t>(s)];
}

template <class Alg>
auto Ladder<Alg>::pivot_sort() -> const Value& {
    if (!pivot_sort_) {
        Ladder<PolyAlgebra> comp1(VariantId(Family::Comp1Pivot), PolyAlgebra{});
        pivot_sort_ = alg_.lift(comp1.at(v_.pivots));
    }
    return *pivot_sort_;
}

template <class Alg>
auto Ladder<Alg>::sublists() -> Ladder& {
    // the two-candidate rule applies to the top-level call only; sublists
    // are sorted by the plain in-place variant
    if (v_.family != Family::SwapV5) return *this;
    if (!sublists_) sublists_ = std::make_unique<Ladder>(VariantId(Family::SwapV4), alg_);
    return *sublists_;
}

template <class Alg>
auto Ladder<Alg>::single_pivot_comparisons(int n) -> Value {
    Value out = alg_.times_t_pow(pair_sum(n - 1), static_cast<std::size_t>(n - 1));
    out *= Rational(BigInt(1), BigInt(n));
    return out;
}

template <class Alg>
auto Ladder<Alg>::next(int n) -> Value {
    if (n <= 1) return alg_.one();
    const auto un = static_cast<std::size_t>(n);
    Value acc = alg_.zero();
    switch (v_.family) {
        case Family::Comp1Pivot:
            return single_pivot_comparisons(n);

        case Family::SwapV1:
        case Family::SwapV3: {
            const std::size_t extra = v_.family == Family::SwapV3 ? 1 : 0;
            const auto prods = split_products(n);
            for (std::size_t k = 1; k <= un; ++k) acc += alg_.times_t_pow(prods[k - 1], k - 1 + extra);
            acc *= Rational(BigInt(1), BigInt(n));
            return acc;
        }

        case Family::SwapV2: {
            const auto prods = split_products(n);
            for (int k = 1; k <= n; ++k) {
                UniPoly kernel;
                for (int i = 1; i <= n; ++i) kernel += per_prob(n, k, i);
                acc += prods[static_cast<std::size_t>(k - 1)] * alg_.lift(kernel);
            }
            acc *= Rational(BigInt(1), BigInt(n) * n);
            return acc;
        }

        case Family::SwapV4:
        case Family::SwapV5: {
            const auto prods = sublists().split_products(n);
            for (int k = 1; k <= n; ++k) {
                Value term = prods[static_cast<std::size_t>(k - 1)] * alg_.lift(ip_prob(n, k));
                term *= v_.family == Family::SwapV4 ? Rational(BigInt(1), BigInt(n)) : pivot_weight_v5(n, k);
                acc += term;
            }
            return acc;
        }

        case Family::CompDual: {
            // pivots of ranks i < j cost 2n - i - 2; a = i - 1
            for (int a = 0; a <= n - 2; ++a)
                acc += alg_.times_t_pow(at(a) * pair_sum(n - 2 - a), static_cast<std::size_t>(2 * n - a - 3));
            acc *= inverse(binomial(n, 2));
            return acc;
        }

        case Family::SwapDual: {
            // swaps for ranks i < j are (i-1) + (n-j), plus the coin for pivot order
            for (int b = 0; b <= n - 2; ++b)
                acc += at(b) * alg_.times_t_pow(pair_sum(n - 2 - b), static_cast<std::size_t>(n - 2 - b));
            const UniPoly coin(std::vector<Rational>{Rational(BigInt(1), BigInt(2)), Rational(BigInt(1), BigInt(2))});
            acc = acc * alg_.lift(coin);
            acc *= inverse(binomial(n, 2));
            return acc;
        }

        case Family::CompThreePivot: {
            if (n < 3) return single_pivot_comparisons(n);
            acc = alg_.times_t_pow(pivot_sort() * quad_sum(n - 3), static_cast<std::size_t>(2 * n - 6));
            acc *= inverse(binomial(n, 3));
            return acc;
        }

        case Family::CompKPivotLinear: {
            const int k = v_.pivots;
            if (n < k) return single_pivot_comparisons(n);
            acc = pivot_sort() * linear_chain(k + 1, n - k);
            acc *= inverse(binomial(n, k));
            return acc;
        }

        case Family::CompKPivotBinary:
            break;
    }
    throw std::invalid_argument("pgf: no difference equation for " + variant_key(v_));
}

template <class Alg>
struct Slot {
    std::mutex mu;
    Ladder<Alg> ladder;
    Slot(VariantId v, Alg alg) : ladder(v, std::move(alg)) {}
};

void check_request(const VariantId& v, int n) {
    if (n < 0) throw std::invalid_argument("pgf: n must be >= 0");
    if (!has_pgf(v.family))
        throw std::invalid_argument("pgf: no difference equation for " + variant_key(v));
}

}  // namespace

std::optional<UniPoly> PgfCache::find(const VariantId& v, int n) const {
    std::shared_lock lock(mu_);
    auto it = entries_.find({v, n});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void PgfCache::insert(const VariantId& v, int n, UniPoly p) {
    std::unique_lock lock(mu_);
    entries_.try_emplace({v, n}, std::move(p));
}

std::size_t PgfCache::size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
}

struct PgfEngine::Impl {
    PgfStore* store = nullptr;
    PgfCache cache;
    std::mutex slots_mu;
    std::map<VariantId, std::unique_ptr<Slot<PolyAlgebra>>> poly_slots;
    std::map<std::pair<VariantId, int>, std::unique_ptr<Slot<SeriesAlgebra>>> series_slots;

    Slot<PolyAlgebra>& poly_slot(const VariantId& v) {
        std::lock_guard lock(slots_mu);
        auto& s = poly_slots[v];
        if (!s) s = std::make_unique<Slot<PolyAlgebra>>(v, PolyAlgebra{});
        return *s;
    }

    Slot<SeriesAlgebra>& series_slot(const VariantId& v, int order) {
        std::lock_guard lock(slots_mu);
        auto& s = series_slots[{v, order}];
        if (!s) s = std::make_unique<Slot<SeriesAlgebra>>(v, SeriesAlgebra{order});
        return *s;
    }
};

PgfEngine::PgfEngine(PgfStore* store) : impl_(std::make_unique<Impl>()) { impl_->store = store; }

PgfEngine::~PgfEngine() = default;

UniPoly PgfEngine::pgf(const VariantId& v, int n) {
    check_request(v, n);
    if (auto hit = impl_->cache.find(v, n)) return *hit;
    if (impl_->store) {
        if (auto stored = impl_->store->load(v, n)) {
            impl_->cache.insert(v, n, *stored);
            return *stored;
        }
    }
    auto& slot = impl_->poly_slot(v);
    std::lock_guard lock(slot.mu);
    const int before = slot.ladder.size();
    UniPoly out = slot.ladder.at(n);
    for (int m = before; m <= n; ++m) {
        const UniPoly& p = slot.ladder.at(m);
        if (!impl_->cache.find(v, m)) {
            impl_->cache.insert(v, m, p);
            if (impl_->store) impl_->store->save(v, m, p);
        }
    }
    return out;
}

TruncSeries PgfEngine::truncated(const VariantId& v, int n, int order) {
    check_request(v, n);
    if (order < 1) throw std::invalid_argument("truncated: order must be >= 1");
    auto& slot = impl_->series_slot(v, order);
    std::lock_guard lock(slot.mu);
    return slot.ladder.at(n);
}

const PgfCache& PgfEngine::cache() const { return impl_->cache; }

PgfEngine& default_engine() {
    static PgfEngine engine;
    return engine;
}

UniPoly pgf(const VariantId& v, int n) { return default_engine().pgf(v, n); }

}  // namespace qsm
