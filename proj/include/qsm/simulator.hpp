#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qsm/unipoly.hpp"
#include "qsm/variant.hpp"

namespace qsm {

// How the two-candidate variant treats the rejected candidate.
enum class V5Mode {
    // moved to a uniform position among the non-pivots before partitioning;
    // keeps the remainder uniform, as the difference equation assumes
    reinsert,
    // left where it is
    keep_in_place,
};

struct SimOptions {
    V5Mode v5_mode = V5Mode::reinsert;
};

struct CountedRun {
    std::vector<int> sorted_output;
    long comparisons = 0;
    long swaps = 0;

    long cost(CostKind kind) const { return kind == CostKind::comparisons ? comparisons : swaps; }
};

// mt19937_64 keyed by splitmix64(seed, stream); streams are independent.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);
    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

// Fisher-Yates shuffle of 1..n.
std::vector<int> random_permutation(int n, RandomStream& rng);

// Sorts input, counting comparisons and swaps by the variant's rules.
// Throws on duplicate elements.
CountedRun run_variant(const VariantId& v, std::span<const int> input, RandomStream& rng, const SimOptions& options = {});

inline constexpr int kMaxExhaustiveN = 7;

// Distribution of the variant's cost over all n! inputs, with every internal
// random choice enumerated with its probability.
UniPoly exhaustive_distribution(const VariantId& v, int n, const SimOptions& options = {});

struct TrialStats {
    long trials = 0;
    double mean = 0;
    double sample_variance = 0;
    std::uint64_t seed = 0;

    double standard_error() const;
};

// Trial i runs on RandomStream(seed, i); workers <= 0 uses the hardware
// concurrency. Results do not depend on the worker count.
TrialStats monte_carlo(const VariantId& v, int n, long trials, std::uint64_t seed, int workers = 0,
                       const SimOptions& options = {});

}  // namespace qsm
