#pragma once

#include <span>
#include <vector>

#include "qsm/pgf_engine.hpp"
#include "qsm/rational.hpp"
#include "qsm/trunc_series.hpp"
#include "qsm/variant.hpp"

namespace qsm {

enum class MomentKind { raw, central, mean };

struct MomentSequence {
    VariantId variant;
    int order = 1;
    MomentKind kind = MomentKind::mean;
    std::vector<Rational> values;  // values[i] is for n = i + 1

    const Rational& at(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
    int upto() const { return static_cast<int>(values.size()); }
};

enum class MomentPath { automatic, full_pgf, truncated };

struct MomentOptions {
    MomentPath path = MomentPath::automatic;
    // automatic mode uses full PGFs up to this n and truncated series above
    int n_switch = 60;
};

// Moments of one variant's cost distribution, backed by a PgfEngine.
class MomentEngine {
public:
    explicit MomentEngine(PgfEngine& engine = default_engine(), MomentOptions options = {});

    // E[X_n^r].
    Rational raw_moment(const VariantId& v, int n, int r);
    // E[(X_n - E X_n)^r].
    Rational central_moment(const VariantId& v, int n, int r);
    // Raw moments 0..r by the configured path.
    std::vector<Rational> raw_moments(const VariantId& v, int n, int r);

    MomentSequence moment_sequence(const VariantId& v, int r, MomentKind kind, int upto);

    TruncSeries truncated_factorial_series(const VariantId& v, int n, int order);

    // Central moments 3..max_order divided by m2^{r/2}; exact until the
    // final conversion to double.
    std::vector<double> scaled_moment_profile(const VariantId& v, int n, int max_order);

private:
    bool use_truncated(int n) const;

    PgfEngine& engine_;
    MomentOptions options_;
};

// E[X^r] = sum_j S(r, j) E[(X)_j], for r = 0..factorials.size()-1.
std::vector<Rational> factorial_to_raw(std::span<const Rational> factorials);

// Moments about the mean from raw moments 0..R (raw[0] must be 1).
std::vector<Rational> raw_to_central(std::span<const Rational> raw);

// m_r / m_2^{r/2} as a correctly rounded double.
double scaled_central_moment(const Rational& central_r, const Rational& variance, int r);

}  // namespace qsm
