#include "qsm/moments.hpp"

#include <mpfr.h>

#include <stdexcept>

#include "qsm/combinatorics.hpp"

namespace qsm {

MomentEngine::MomentEngine(PgfEngine& engine, MomentOptions options) : engine_(engine), options_(options) {}

bool MomentEngine::use_truncated(int n) const {
    switch (options_.path) {
        case MomentPath::full_pgf: return false;
        case MomentPath::truncated: return true;
        case MomentPath::automatic: break;
    }
    return n > options_.n_switch;
}

std::vector<Rational> MomentEngine::raw_moments(const VariantId& v, int n, int r) {
    if (r < 0) throw std::invalid_argument("raw_moments: negative order");
    if (use_truncated(n)) {
        const auto series = engine_.truncated(v, n, std::max(r, 1));
        auto raw = factorial_to_raw(series.factorial_moments());
        raw.resize(static_cast<std::size_t>(r) + 1);
        return raw;
    }
    const UniPoly p = engine_.pgf(v, n);
    std::vector<Rational> raw;
    raw.reserve(static_cast<std::size_t>(r) + 1);
    for (int j = 0; j <= r; ++j) raw.push_back(theta_derivative(p, static_cast<unsigned>(j)));
    return raw;
}

Rational MomentEngine::raw_moment(const VariantId& v, int n, int r) { return raw_moments(v, n, r).back(); }

Rational MomentEngine::central_moment(const VariantId& v, int n, int r) {
    if (r < 1) throw std::invalid_argument("central_moment: order must be >= 1");
    return raw_to_central(raw_moments(v, n, r)).back();
}

MomentSequence MomentEngine::moment_sequence(const VariantId& v, int r, MomentKind kind, int upto) {
    if (upto < 1) throw std::invalid_argument("moment_sequence: upto must be >= 1");
    if (r < 1) throw std::invalid_argument("moment_sequence: order must be >= 1");
    MomentSequence seq{v, kind == MomentKind::mean ? 1 : r, kind, {}};
    seq.values.reserve(static_cast<std::size_t>(upto));

    // One path for the whole sweep keeps the ladder reuse in a single cache.
    MomentOptions sweep = options_;
    if (sweep.path == MomentPath::automatic)
        sweep.path = upto > options_.n_switch ? MomentPath::truncated : MomentPath::full_pgf;
    MomentEngine inner(engine_, sweep);
    for (int n = 1; n <= upto; ++n) {
        switch (kind) {
            case MomentKind::mean: seq.values.push_back(inner.raw_moment(v, n, 1)); break;
            case MomentKind::raw: seq.values.push_back(inner.raw_moment(v, n, r)); break;
            case MomentKind::central: seq.values.push_back(inner.central_moment(v, n, r)); break;
        }
    }
    return seq;
}

TruncSeries MomentEngine::truncated_factorial_series(const VariantId& v, int n, int order) {
    if (order < 1) throw std::invalid_argument("truncated_factorial_series: order must be >= 1");
    return engine_.truncated(v, n, order);
}

std::vector<double> MomentEngine::scaled_moment_profile(const VariantId& v, int n, int max_order) {
    if (max_order < 3) throw std::invalid_argument("scaled_moment_profile: order must be >= 3");
    const auto central = raw_to_central(raw_moments(v, n, max_order));
    const Rational& var = central[2];
    if (var.sign() <= 0) throw std::domain_error("scaled_moment_profile: zero variance");
    std::vector<double> out;
    for (int r = 3; r <= max_order; ++r)
        out.push_back(scaled_central_moment(central[static_cast<std::size_t>(r)], var, r));
    return out;
}

std::vector<Rational> factorial_to_raw(std::span<const Rational> factorials) {
    std::vector<Rational> raw(factorials.size());
    for (std::size_t r = 0; r < factorials.size(); ++r)
        for (std::size_t j = 0; j <= r; ++j) {
            const BigInt s = stirling2(static_cast<int>(r), static_cast<int>(j));
            if (s != 0) raw[r] += Rational(s) * factorials[j];
        }
    return raw;
}

std::vector<Rational> raw_to_central(std::span<const Rational> raw) {
    if (raw.empty() || raw[0] != Rational(1)) throw std::invalid_argument("raw_to_central: raw[0] must be 1");
    std::vector<Rational> central(raw.size());
    central[0] = 1;
    if (raw.size() == 1) return central;
    const Rational mean = raw[1];
    for (std::size_t r = 1; r < raw.size(); ++r) {
        // sum_j C(r, j) E[X^j] (-mean)^{r-j}
        Rational acc;
        Rational neg_pow(1);
        for (std::size_t jj = 0; jj <= r; ++jj) {
            const std::size_t j = r - jj;
            acc += Rational(binomial(static_cast<long>(r), static_cast<long>(j))) * raw[j] * neg_pow;
            neg_pow *= -mean;
        }
        central[r] = acc;
    }
    central[1] = 0;
    return central;
}

double scaled_central_moment(const Rational& central_r, const Rational& variance, int r) {
    if (variance.sign() <= 0) throw std::domain_error("scaled_central_moment: nonpositive variance");
    const Rational ratio = central_r / pow(variance, static_cast<unsigned>(r / 2));
    if (r % 2 == 0) return ratio.to_double();
    mpfr_t x, s;
    mpfr_inits2(256, x, s, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(x, ratio.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(s, variance.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(s, s, MPFR_RNDN);
    mpfr_div(x, x, s, MPFR_RNDN);
    const double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clears(x, s, static_cast<mpfr_ptr>(nullptr));
    return out;
}

}  // namespace qsm
