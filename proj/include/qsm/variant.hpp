#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace qsm {

enum class Family {
    Comp1Pivot,        // comparisons, single random pivot
    SwapV1,            // swaps, first element as pivot, shift-style moves
    SwapV2,            // swaps, random pivot index, shift-style moves
    SwapV3,            // swaps, Lomuto partition
    SwapV4,            // swaps, Lomuto without self-swaps
    SwapV5,            // swaps, pivot is the more central of first/last
    CompDual,          // comparisons, dual pivot
    SwapDual,          // swaps, dual pivot toy model
    CompThreePivot,    // comparisons, 3 pivots, binary-search classification
    CompKPivotLinear,  // comparisons, k pivots, linear-scan classification
    CompKPivotBinary,  // comparisons, k pivots, binary-search classification (simulation only)
};

enum class CostKind { comparisons, swaps };

struct VariantId {
    Family family = Family::Comp1Pivot;
    int pivots = 1;

    VariantId() = default;
    // Normalizes pivots to the family's fixed count where it has one;
    // throws if a k-pivot family gets pivots < 1.
    VariantId(Family f, int k = 0);

    friend auto operator<=>(const VariantId&, const VariantId&) = default;
};

bool has_variable_pivots(Family f);
int fixed_pivot_count(Family f);
CostKind cost_kind(Family f);
// False for families that only exist in the simulator.
bool has_pgf(Family f);

// Lowercase family name, e.g. "swapv4", "compkpivotlinear".
std::string family_name(Family f);
// Directory-safe key: family name plus "_k<pivots>" for k-pivot families.
std::string variant_key(const VariantId& v);
// Case-insensitive; accepts the family names above.
Family parse_family(std::string_view name);

}  // namespace qsm
