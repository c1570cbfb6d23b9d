#pragma once

// JSON and CSV renderings shared by the disk cache and the CLI.
// Exact values are always strings ("num/den", den omitted when 1).

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsm/closed_form.hpp"
#include "qsm/moments.hpp"
#include "qsm/recurrence.hpp"
#include "qsm/simulator.hpp"
#include "qsm/trunc_series.hpp"
#include "qsm/unipoly.hpp"
#include "qsm/variant.hpp"

namespace qsm {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// Coefficient array, index i is t^i.
Json to_json(const UniPoly& p);
UniPoly poly_from_json(const Json& j);

Json to_json(const TruncSeries& s);

Json to_json(const VariantId& v);
VariantId variant_from_json(const Json& j);

std::string kind_name(MomentKind k);
MomentKind parse_kind(std::string_view name);

Json to_json(const MomentSequence& s);
MomentSequence moment_sequence_from_json(const Json& j);

Json to_json(const BasisMonomial& m);
BasisMonomial monomial_from_json(const Json& j);
Json to_json(const ClosedForm& f);
ClosedForm closed_form_from_json(const Json& j);

Json to_json(const RecurrenceOperator& op);
RecurrenceOperator operator_from_json(const Json& j);

Json to_json(const TrialStats& s);

// One row per entry: an exact column and a 15-digit decimal column. The
// header comment marks the decimals as lossy; readers use the exact column.
inline constexpr int kCsvDigits = 15;
inline constexpr std::string_view kCsvLossyNote =
    "# decimal column is rounded to 15 significant digits and lossy; exact is authoritative";

std::string to_csv(const UniPoly& p);
UniPoly poly_from_csv(std::string_view text);

std::string to_csv(const MomentSequence& s);
// Restores values only; the metadata header lines are informational.
std::vector<Rational> values_from_csv(std::string_view text);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t x);

}  // namespace qsm
