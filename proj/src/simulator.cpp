#include "qsm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

#include "qsm/rational.hpp"

namespace qsm {

namespace {

using List = std::vector<int>;

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t choose64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) throw std::overflow_error("simulator: too many pivot subsets");
    }
    return static_cast<std::uint64_t>(r);
}

// index-th k-subset of {0..n-1} in lexicographic order
std::vector<int> unrank_subset(int n, int k, std::uint64_t index) {
    std::vector<int> out;
    int next = 0;
    for (int slot = 0; slot < k; ++slot)
        for (int i = next;; ++i) {
            const std::uint64_t with_i = choose64(static_cast<std::uint64_t>(n - i - 1), static_cast<std::uint64_t>(k - slot - 1));
            if (index < with_i) {
                out.push_back(i);
                next = i + 1;
                break;
            }
            index -= with_i;
        }
    return out;
}

int rank_in(const List& a, int x) {
    return 1 + static_cast<int>(std::count_if(a.begin(), a.end(), [&](int y) { return y < x; }));
}

// One partition step. The output of the call is `layout` read left to right,
// each entry either a final element or the sorted output of a child.
struct Step {
    struct Child {
        VariantId v;
        List list;
        bool placed = true;  // false: cost only, output discarded
    };
    struct Piece {
        bool is_child;
        int value;  // element, or index into children
    };
    long comparisons = 0, swaps = 0;
    std::vector<Child> children;
    std::vector<Piece> layout;

    void child(const VariantId& v, List l, bool placed = true) {
        if (placed) layout.push_back({true, static_cast<int>(children.size())});
        children.push_back({v, std::move(l), placed});
    }
    void element(int x) { layout.push_back({false, x}); }
};

Step single_pivot(const VariantId& v, const List& a, std::size_t pivot_pos) {
    Step s;
    const int p = a[pivot_pos];
    List lo, hi;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == pivot_pos) continue;
        (a[i] < p ? lo : hi).push_back(a[i]);
    }
    s.comparisons = static_cast<long>(a.size()) - 1;
    s.child(v, std::move(lo));
    s.element(p);
    s.child(v, std::move(hi));
    return s;
}

Step shift_first(const VariantId& v, const List& a) {
    Step s = single_pivot(v, a, 0);
    s.swaps = static_cast<long>(s.children[0].list.size());
    return s;
}

Step shift_random(const VariantId& v, const List& a, std::size_t i) {
    // left-side elements above the pivot go to the end, right-side elements
    // below it go just before the pivot; each such move is one swap
    const int p = a[i];
    List lo_left, lo_right, hi_right, hi_left;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == i) continue;
        if (j < i)
            (a[j] < p ? lo_left : hi_left).push_back(a[j]);
        else
            (a[j] < p ? lo_right : hi_right).push_back(a[j]);
    }
    Step s;
    s.comparisons = static_cast<long>(a.size()) - 1;
    s.swaps = static_cast<long>(hi_left.size() + lo_right.size());
    lo_left.insert(lo_left.end(), lo_right.begin(), lo_right.end());
    hi_right.insert(hi_right.end(), hi_left.begin(), hi_left.end());
    s.child(v, std::move(lo_left));
    s.element(p);
    s.child(v, std::move(hi_right));
    return s;
}

// Lomuto partition around the last element; with skip_trivial, swaps of a
// slot with itself are neither performed nor counted.
Step lomuto(const VariantId& v, List a, bool skip_trivial) {
    Step s;
    const std::size_t hi = a.size() - 1;
    const int p = a[hi];
    std::ptrdiff_t i = -1;
    for (std::size_t j = 0; j < hi; ++j) {
        ++s.comparisons;
        if (a[j] < p) {
            ++i;
            if (!skip_trivial || static_cast<std::size_t>(i) != j) {
                std::swap(a[static_cast<std::size_t>(i)], a[j]);
                ++s.swaps;
            }
        }
    }
    const auto mid = static_cast<std::size_t>(i + 1);
    if (!skip_trivial || mid != hi) {
        std::swap(a[mid], a[hi]);
        ++s.swaps;
    }
    s.child(v, List(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid)));
    s.element(p);
    s.child(v, List(a.begin() + static_cast<std::ptrdiff_t>(mid) + 1, a.end()));
    return s;
}

std::uint64_t two_candidate_arity(std::size_t n, const SimOptions& o) {
    return o.v5_mode == V5Mode::reinsert ? 2 * (n - 1) : 2;
}

Step two_candidate(const List& a, std::uint64_t choice, const SimOptions& o) {
    const VariantId sub(Family::SwapV4);
    const std::size_t n = a.size();
    const int coin = static_cast<int>(choice % 2);
    const auto pos = static_cast<std::size_t>(choice / 2);
    const int df = std::abs(2 * rank_in(a, a.front()) - static_cast<int>(n + 1));
    const int dl = std::abs(2 * rank_in(a, a.back()) - static_cast<int>(n + 1));
    const bool last_wins = dl < df || (dl == df && coin == 0);

    List b = a;
    if (o.v5_mode == V5Mode::reinsert) {
        // b without the pivot, rejected candidate moved to slot pos
        const int pivot = last_wins ? b.back() : b.front();
        List rest(b.begin() + (last_wins ? 0 : 1), b.end() - (last_wins ? 1 : 0));
        const int rejected = last_wins ? rest.front() : rest.back();
        rest.erase(last_wins ? rest.begin() : rest.end() - 1);
        rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(pos), rejected);
        b = rest;
        if (last_wins)
            b.push_back(pivot);
        else
            b.insert(b.begin(), pivot);
    }
    if (last_wins) return lomuto(sub, std::move(b), true);

    // Mirror image: scan from the right, larger elements to the left.
    List m(b.rbegin(), b.rend());
    for (int& x : m) x = -x;
    Step s = lomuto(sub, std::move(m), true);
    for (auto& c : s.children) {
        std::reverse(c.list.begin(), c.list.end());
        for (int& x : c.list) x = -x;
    }
    std::reverse(s.layout.begin(), s.layout.end());
    for (auto& piece : s.layout)
        if (!piece.is_child) piece.value = -piece.value;
    return s;
}

Step dual_comparisons(const VariantId& v, const List& a, std::uint64_t choice) {
    const auto pos = unrank_subset(static_cast<int>(a.size()), 2, choice);
    const int p = std::min(a[static_cast<std::size_t>(pos[0])], a[static_cast<std::size_t>(pos[1])]);
    const int q = std::max(a[static_cast<std::size_t>(pos[0])], a[static_cast<std::size_t>(pos[1])]);
    Step s;
    s.comparisons = 1;
    List g0, g1, g2;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (static_cast<int>(i) == pos[0] || static_cast<int>(i) == pos[1]) continue;
        const int x = a[i];
        if (x < p) {
            s.comparisons += 1;
            g0.push_back(x);
        } else {
            s.comparisons += 2;
            (x < q ? g1 : g2).push_back(x);
        }
    }
    s.child(v, std::move(g0));
    s.element(p);
    s.child(v, std::move(g1));
    s.element(q);
    s.child(v, std::move(g2));
    return s;
}

Step dual_swaps(const VariantId& v, const List& a) {
    Step s;
    int p = a.front(), q = a.back();
    s.comparisons = 1;
    if (p > q) {
        std::swap(p, q);
        ++s.swaps;
    }
    List g0, g1, g2;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        const int x = a[i];
        if (x < p) {
            ++s.comparisons;
            ++s.swaps;
            g0.push_back(x);
        } else {
            s.comparisons += 2;
            if (x > q) ++s.swaps;
            (x < q ? g1 : g2).push_back(x);
        }
    }
    s.child(v, std::move(g0));
    s.element(p);
    s.child(v, std::move(g1));
    s.element(q);
    s.child(v, std::move(g2));
    return s;
}

// Gap index of x among sorted pivots and the comparisons spent finding it.
std::pair<int, int> classify(const List& pivots, int x, bool binary) {
    const int k = static_cast<int>(pivots.size());
    if (!binary) {
        for (int j = 0; j < k; ++j)
            if (x < pivots[static_cast<std::size_t>(j)]) return {j, j + 1};
        return {k, k};
    }
    int lo = 0, hi = k + 1, probes = 0;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        ++probes;
        if (x < pivots[static_cast<std::size_t>(mid - 1)])
            hi = mid;
        else
            lo = mid;
    }
    return {lo, probes};
}

Step multi_pivot(const VariantId& v, const List& a, std::uint64_t choice, bool binary) {
    const int k = v.pivots;
    const auto pos = unrank_subset(static_cast<int>(a.size()), k, choice);
    Step s;
    List pivots;
    for (int i : pos) pivots.push_back(a[static_cast<std::size_t>(i)]);
    s.child(VariantId(Family::Comp1Pivot), pivots, false);
    std::sort(pivots.begin(), pivots.end());

    std::vector<List> groups(static_cast<std::size_t>(k) + 1);
    std::size_t next = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (next < pos.size() && static_cast<int>(i) == pos[next]) {
            ++next;
            continue;
        }
        const auto [gap, cost] = classify(pivots, a[i], binary);
        s.comparisons += cost;
        groups[static_cast<std::size_t>(gap)].push_back(a[i]);
    }
    for (int j = 0; j <= k; ++j) {
        s.child(v, std::move(groups[static_cast<std::size_t>(j)]));
        if (j < k) s.element(pivots[static_cast<std::size_t>(j)]);
    }
    return s;
}

// Number of equally likely internal choices for a list of length >= 2.
std::uint64_t arity(const VariantId& v, const List& a, const SimOptions& o) {
    const auto n = static_cast<std::uint64_t>(a.size());
    switch (v.family) {
        case Family::Comp1Pivot:
        case Family::SwapV2: return n;
        case Family::SwapV1:
        case Family::SwapV3:
        case Family::SwapV4:
        case Family::SwapDual: return 1;
        case Family::SwapV5: return two_candidate_arity(a.size(), o);
        case Family::CompDual: return choose64(n, 2);
        case Family::CompThreePivot:
        case Family::CompKPivotLinear:
        case Family::CompKPivotBinary:
            return n < static_cast<std::uint64_t>(v.pivots) ? n : choose64(n, static_cast<std::uint64_t>(v.pivots));
    }
    throw std::logic_error("simulator: unknown family");
}

Step step(const VariantId& v, const List& a, std::uint64_t choice, const SimOptions& o) {
    switch (v.family) {
        case Family::Comp1Pivot: return single_pivot(v, a, choice);
        case Family::SwapV1: return shift_first(v, a);
        case Family::SwapV2: return shift_random(v, a, choice);
        case Family::SwapV3: return lomuto(v, a, false);
        case Family::SwapV4: return lomuto(v, a, true);
        case Family::SwapV5: return two_candidate(a, choice, o);
        case Family::CompDual: return dual_comparisons(v, a, choice);
        case Family::SwapDual: return dual_swaps(v, a);
        case Family::CompThreePivot:
        case Family::CompKPivotLinear:
        case Family::CompKPivotBinary:
            // lists shorter than k are sorted as with a single pivot
            if (a.size() < static_cast<std::size_t>(v.pivots)) return single_pivot(v, a, choice);
            return multi_pivot(v, a, choice, v.family != Family::CompKPivotLinear);
    }
    throw std::logic_error("simulator: unknown family");
}

VariantId normalized(const VariantId& v) {
    // the three-pivot family is binary search with k = 3
    return v.family == Family::CompThreePivot ? VariantId(Family::CompKPivotBinary, 3) : v;
}

void run(const VariantId& v, const List& a, RandomStream& rng, const SimOptions& o, CountedRun& out, bool placed) {
    if (a.size() <= 1) {
        if (placed) out.sorted_output.insert(out.sorted_output.end(), a.begin(), a.end());
        return;
    }
    const Step s = step(v, a, rng.below(arity(v, a, o)), o);
    out.comparisons += s.comparisons;
    out.swaps += s.swaps;
    for (const auto& c : s.children)
        if (!c.placed) run(c.v, c.list, rng, o, out, false);
    for (const auto& piece : s.layout) {
        if (!piece.is_child) {
            if (placed) out.sorted_output.push_back(piece.value);
            continue;
        }
        const auto& c = s.children[static_cast<std::size_t>(piece.value)];
        run(c.v, c.list, rng, o, out, placed);
    }
}

List ranks_of(const List& a) {
    List sorted = a;
    std::sort(sorted.begin(), sorted.end());
    List r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), a[i]) - sorted.begin());
    return r;
}

class Enumerator {
public:
    Enumerator(CostKind kind, const SimOptions& o) : kind_(kind), options_(o) {}

    const UniPoly& dist(const VariantId& v, const List& pattern) {
        auto key = std::make_pair(v, pattern);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        UniPoly total;
        if (pattern.size() <= 1) {
            total = UniPoly(Rational(1));
        } else {
            const std::uint64_t m = arity(v, pattern, options_);
            for (std::uint64_t c = 0; c < m; ++c) {
                const Step s = step(v, pattern, c, options_);
                UniPoly branch = UniPoly::monomial(Rational(1), static_cast<std::size_t>(kind_ == CostKind::comparisons ? s.comparisons : s.swaps));
                for (const auto& ch : s.children) branch = branch * dist(ch.v, ranks_of(ch.list));
                total += branch;
            }
            total *= Rational(BigInt(1), BigInt(static_cast<unsigned long>(m)));
        }
        return memo_.emplace(std::move(key), std::move(total)).first->second;
    }

private:
    CostKind kind_;
    SimOptions options_;
    std::map<std::pair<VariantId, List>, UniPoly> memo_;
};

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed;
    const std::uint64_t a = splitmix64(x);
    x ^= stream * 0xD1B54A32D192ED03ULL;
    const std::uint64_t b = splitmix64(x);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomStream::below: zero bound");
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

std::vector<int> random_permutation(int n, RandomStream& rng) {
    std::vector<int> p(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
    return p;
}

CountedRun run_variant(const VariantId& v, std::span<const int> input, RandomStream& rng, const SimOptions& options) {
    List a(input.begin(), input.end());
    List sorted = a;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("run_variant: input has duplicate elements");
    // the mirrored partition negates values
    if (v.family == Family::SwapV5 && !a.empty() && sorted.front() == std::numeric_limits<int>::min())
        throw std::invalid_argument("run_variant: INT_MIN is not supported by this variant");
    CountedRun out;
    out.sorted_output.reserve(a.size());
    run(normalized(v), a, rng, options, out, true);
    return out;
}

UniPoly exhaustive_distribution(const VariantId& v, int n, const SimOptions& options) {
    if (n < 0 || n > kMaxExhaustiveN)
        throw std::invalid_argument("exhaustive_distribution: n must be in [0, " + std::to_string(kMaxExhaustiveN) + "]");
    Enumerator e(cost_kind(v.family), options);
    List p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    UniPoly total;
    long count = 0;
    do {
        total += e.dist(normalized(v), p);
        ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    total *= Rational(BigInt(1), BigInt(count));
    return total;
}

double TrialStats::standard_error() const { return trials > 0 ? std::sqrt(sample_variance / static_cast<double>(trials)) : 0; }

TrialStats monte_carlo(const VariantId& v, int n, long trials, std::uint64_t seed, int workers, const SimOptions& options) {
    if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    if (n < 0) throw std::invalid_argument("monte_carlo: n must be >= 0");
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<long>(workers, trials));

    const CostKind kind = cost_kind(v.family);
    std::vector<BigInt> sum(static_cast<std::size_t>(workers)), sum_sq(static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
        try {
            BigInt s = 0, s2 = 0;
            for (long t = w; t < trials; t += workers) {
                RandomStream rng(seed, static_cast<std::uint64_t>(t));
                const auto input = random_permutation(n, rng);
                const long c = run_variant(v, input, rng, options).cost(kind);
                s += c;
                s2 += BigInt(c) * c;
            }
            sum[static_cast<std::size_t>(w)] = s;
            sum_sq[static_cast<std::size_t>(w)] = s2;
        } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    BigInt s = 0, s2 = 0;
    for (int w = 0; w < workers; ++w) {
        s += sum[static_cast<std::size_t>(w)];
        s2 += sum_sq[static_cast<std::size_t>(w)];
    }
    const Rational cnt{BigInt(trials)};
    const Rational mean = Rational(s) / cnt;
    TrialStats out;
    out.trials = trials;
    out.seed = seed;
    out.mean = mean.to_double();
    // sum (x - mean)^2 / (T - 1), exact until the final rounding
    out.sample_variance = trials > 1 ? ((Rational(s2) - Rational(s) * mean) / Rational(trials - 1)).to_double() : 0.0;
    return out;
}

}  // namespace qsm
