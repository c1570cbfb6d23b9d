#include "qsm/variant.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace qsm {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 11> kNames{{
    {Family::Comp1Pivot, "comp1pivot"},
    {Family::SwapV1, "swapv1"},
    {Family::SwapV2, "swapv2"},
    {Family::SwapV3, "swapv3"},
    {Family::SwapV4, "swapv4"},
    {Family::SwapV5, "swapv5"},
    {Family::CompDual, "compdual"},
    {Family::SwapDual, "swapdual"},
    {Family::CompThreePivot, "compthreepivot"},
    {Family::CompKPivotLinear, "compkpivotlinear"},
    {Family::CompKPivotBinary, "compkpivotbinary"},
}};

}  // namespace

VariantId::VariantId(Family f, int k) : family(f) {
    if (has_variable_pivots(f)) {
        if (k < 1) throw std::invalid_argument("VariantId: k-pivot family needs pivots >= 1");
        pivots = k;
    } else {
        pivots = fixed_pivot_count(f);
    }
}

bool has_variable_pivots(Family f) {
    return f == Family::CompKPivotLinear || f == Family::CompKPivotBinary;
}

int fixed_pivot_count(Family f) {
    switch (f) {
        case Family::CompDual:
        case Family::SwapDual: return 2;
        case Family::CompThreePivot: return 3;
        default: return 1;
    }
}

CostKind cost_kind(Family f) {
    switch (f) {
        case Family::Comp1Pivot:
        case Family::CompDual:
        case Family::CompThreePivot:
        case Family::CompKPivotLinear:
        case Family::CompKPivotBinary: return CostKind::comparisons;
        default: return CostKind::swaps;
    }
}

bool has_pgf(Family f) { return f != Family::CompKPivotBinary; }

std::string family_name(Family f) {
    for (const auto& [fam, name] : kNames)
        if (fam == f) return std::string(name);
    throw std::logic_error("family_name: unknown family");
}

std::string variant_key(const VariantId& v) {
    std::string key = family_name(v.family);
    if (has_variable_pivots(v.family)) key += "_k" + std::to_string(v.pivots);
    return key;
}

Family parse_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::erase(lower, '-');
    std::erase(lower, '_');
    for (const auto& [fam, n] : kNames)
        if (n == lower) return fam;
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

}  // namespace qsm
