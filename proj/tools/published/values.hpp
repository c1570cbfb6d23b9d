#pragma once

// Published numeric values, transcribed verbatim.

#include <array>
#include <vector>

#include "qsm/unipoly.hpp"

namespace qsm::published {

struct SparseTerm {
    const char* coeff;
    int power;
};

inline UniPoly sparse_poly(const std::vector<SparseTerm>& terms) {
    UniPoly p;
    for (const auto& t : terms) p += UniPoly::monomial(Rational::parse(t.coeff), static_cast<std::size_t>(t.power));
    return p;
}

// Dual-pivot comparison PGFs, n = 1..5.
inline const std::vector<std::vector<SparseTerm>> kDualPivotPgfs = {
    {{"1", 0}},
    {{"1", 1}},
    {{"2/3", 3}, {"1/3", 2}},
    {{"1/3", 6}, {"1/6", 5}, {"1/2", 4}},
    {{"2/15", 10}, {"1/15", 9}, {"1/5", 8}, {"4/15", 7}, {"1/3", 6}}};

// Swap-count PGF for n = 9, pivot rank 5, pivot index 5.
inline const std::vector<SparseTerm> kPerProb955 = {{"1/70", 8}, {"8/35", 6}, {"18/35", 4}, {"8/35", 2}, {"1/70", 0}};

// Expected swaps, in-place partition without self-swaps, n = 1..20.
inline const std::vector<const char*> kInPlaceMeans = {
    "0",           "1/2",         "7/6",          "2",           "179/60",       "41/10",         "747/140",
    "187/28",      "20459/2520",  "1013/105",     "312083/27720", "25631/1980",   "353201/24024",  "1488737/90090",
    "6634189/360360", "814939/40040", "273855917/12252240", "4983019/204204", "97930039/3695120",
    "20210819/705432"};

// Expected swaps, better of first and last as pivot, n = 1..20.
inline const std::vector<const char*> kMedianOfTwoMeans = {
    "0",          "1/2",          "4/3",           "20/9",          "155/48",         "1957/450",
    "2341/420",   "4055/588",     "55829/6720",    "794/81",        "630547/55440",   "170095/13068",
    "12735487/864864", "3864281/234234", "2521865/137592", "36424327/1801800", "4343228489/196035840",
    "107768347/4463316", "15673532207/598609440", "1136599735/40209624"};

// Expected comparisons, dual pivot, n = 1..20.
inline const std::vector<const char*> kDualPivotMeans = {
    "0",           "1",            "8/3",           "29/6",          "37/5",          "103/10",
    "472/35",      "2369/140",     "2593/126",      "30791/1260",    "32891/1155",    "452993/13860",
    "476753/12870", "499061/12012", "2080328/45045", "18358463/360360", "18999103/340340",
    "124184839/2042040", "127860511/1939938", "26274175/369512"};

// Expected comparisons, three pivots, n = 1..20.
inline const std::vector<const char*> kThreePivotMeans = {
    "0",              "1",               "8/3",              "14/3",              "106/15",
    "49/5",           "64/5",            "561/35",           "1226/63",           "5192/225",
    "465316/17325",   "533509/17325",    "714008/20475",     "61615768/1576575",  "342234824/7882875",
    "754600981/15765750", "1404956027/26801775", "15298397599/268017750", "31489234438/509233725",
    "1697926310039/25461686250"};

// Truncated series of the in-place swap count at n = 100 in w = t - 1.
inline constexpr const char* kInPlaceW1At100 =
    "7617634712836831344646726224164628686543/27341323619495089084130905464828354336";
inline constexpr const char* kInPlaceW2At100 =
    "1169146867836246319480317311960440606057785761234433183813484643/"
    "29517287662514914280390084303910684938635848245569645536000";
inline constexpr const char* kInPlaceW3At100 =
    "58024172013839694810625346567417182291098218339356411215067112605982034521/"
    "15125688216961909953814450921738787993181911018772132633289881600000";

// Scaled central moments 3..10 of the same count at n = 100.
inline constexpr std::array<double, 8> kInPlaceScaledAt100 = {0.7810052982, 3.942047050, 9.146681877,
                                                               37.12169647,  137.7143092, 613.5286860,
                                                               2872.409923,  14709.75560};

// Limits of the scaled third and fourth central moments of comparisons.
inline constexpr double kComparisonSkewLimit = 0.8548818671;
inline constexpr double kComparisonKurtosisLimit = 4.1781156383;

// Monte Carlo averages over 100 runs, binary-search k pivots, n = 10..50.
struct McRow {
    int pivots;
    std::array<double, 5> means;
};
inline constexpr std::array<McRow, 4> kMonteCarloT100 = {{{3, {22.95, 65.75, 118.71, 178.28, 239.45}},
                                                           {4, {23.78, 67.77, 120.91, 180.35, 251.19}},
                                                           {5, {23.54, 65.74, 119.59, 178.36, 241.03}},
                                                           {6, {23.14, 66.22, 120.07, 176.43, 236.46}}}};

}  // namespace qsm::published
