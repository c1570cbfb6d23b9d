#include "doctest.h"

#include <cmath>

#include "qsm/moments.hpp"
#include "qsm/pgf_engine.hpp"
#include "published/values.hpp"
#include "published/forms.hpp"
#include "test_support.hpp"

using namespace qsm;
using namespace qsm::testing;
using namespace qsm::published;

namespace {

// E[X^r] straight from the distribution.
Rational direct_raw(const UniPoly& p, int r) {
    Rational acc;
    for (int k = 0; k <= p.degree(); ++k) acc += pow(Rational(k), static_cast<unsigned>(r)) * p.coeff(static_cast<std::size_t>(k));
    return acc;
}

Rational direct_central(const UniPoly& p, int r) {
    const Rational mu = direct_raw(p, 1);
    Rational acc;
    for (int k = 0; k <= p.degree(); ++k)
        acc += pow(Rational(k) - mu, static_cast<unsigned>(r)) * p.coeff(static_cast<std::size_t>(k));
    return acc;
}

std::vector<VariantId> small_variants() {
    return {VariantId(Family::Comp1Pivot),     VariantId(Family::SwapV1),   VariantId(Family::SwapV2),
            VariantId(Family::SwapV3),         VariantId(Family::SwapV4),   VariantId(Family::SwapV5),
            VariantId(Family::CompDual),       VariantId(Family::SwapDual), VariantId(Family::CompThreePivot),
            VariantId(Family::CompKPivotLinear, 4)};
}

void check_means(Family f, const std::vector<const char*>& golden) {
    MomentEngine engine;
    const auto seq = engine.moment_sequence(VariantId(f), 1, MomentKind::mean, 20);
    REQUIRE(seq.upto() == 20);
    for (int n = 1; n <= 20; ++n) {
        CAPTURE(n);
        CHECK(seq.at(n) == Q(golden[static_cast<std::size_t>(n - 1)]));
    }
}

}  // namespace

TEST_CASE("mean lists match the published values") {
    check_means(Family::SwapV4, kInPlaceMeans);
    check_means(Family::SwapV5, kMedianOfTwoMeans);
    check_means(Family::CompDual, kDualPivotMeans);
    check_means(Family::CompThreePivot, kThreePivotMeans);
}

TEST_CASE("moments agree with direct summation over the distribution") {
    MomentEngine engine(default_engine(), {MomentPath::full_pgf});
    for (const auto& v : small_variants())
        for (int n = 1; n <= 9; ++n) {
            const UniPoly p = pgf(v, n);
            CAPTURE(variant_key(v));
            CAPTURE(n);
            for (int r = 1; r <= 5; ++r) {
                CHECK(engine.raw_moment(v, n, r) == direct_raw(p, r));
                CHECK(engine.central_moment(v, n, r) == direct_central(p, r));
            }
        }
}

TEST_CASE("truncated path equals the full path for orders 1..4") {
    MomentEngine full(default_engine(), {MomentPath::full_pgf});
    MomentEngine trunc(default_engine(), {MomentPath::truncated});
    for (const auto& v : small_variants())
        for (int n = 1; n <= 12; ++n)
            for (int r = 1; r <= 4; ++r) {
                CAPTURE(variant_key(v));
                CAPTURE(n);
                CAPTURE(r);
                CHECK(trunc.central_moment(v, n, r) == full.central_moment(v, n, r));
                CHECK(trunc.raw_moment(v, n, r) == full.raw_moment(v, n, r));
            }
}

TEST_CASE("series truncated at order R carries exact moments up to R") {
    PgfEngine pe;
    for (int order = 1; order <= 4; ++order)
        for (int n = 1; n <= 15; ++n) {
            const auto f = pe.truncated(VariantId(Family::SwapV2), n, order).factorial_moments();
            const UniPoly p = pe.pgf(VariantId(Family::SwapV2), n);
            const auto raw = factorial_to_raw(f);
            for (int r = 0; r <= order; ++r) CHECK(raw[static_cast<std::size_t>(r)] == direct_raw(p, r));
        }
}

TEST_CASE("factorial, raw and central conversions") {
    // Binomial(3, 1/2): factorial moments 1, 3/2, 3/2, 3/4.
    const std::vector<Rational> f = {Q("1"), Q("3/2"), Q("3/2"), Q("3/4")};
    const auto raw = factorial_to_raw(f);
    CHECK(raw == std::vector<Rational>{Q("1"), Q("3/2"), Q("3"), Q("27/4")});
    const auto central = raw_to_central(raw);
    CHECK(central == std::vector<Rational>{Q("1"), Q("0"), Q("3/4"), Q("0")});
    CHECK_THROWS(raw_to_central(std::vector<Rational>{Q("2")}));
    CHECK(scaled_central_moment(Q("2"), Q("4"), 4) == doctest::Approx(0.125));
    CHECK(scaled_central_moment(Q("2"), Q("4"), 3) == doctest::Approx(0.25));
}

TEST_CASE("small exact moments") {
    MomentEngine engine;
    const VariantId c1(Family::Comp1Pivot);
    CHECK(engine.central_moment(c1, 2, 2) == Q("0"));
    CHECK(engine.central_moment(c1, 3, 2) == Q("2/9"));
    CHECK(engine.raw_moment(c1, 3, 1) == Q("8/3"));
    CHECK(engine.raw_moment(c1, 1, 0) == Q("1"));
    CHECK_THROWS(engine.central_moment(c1, 3, 0));
    CHECK_THROWS(engine.moment_sequence(c1, 1, MomentKind::mean, 0));
    CHECK_THROWS_AS(engine.scaled_moment_profile(c1, 2, 4), std::domain_error);
    CHECK_THROWS(engine.scaled_moment_profile(c1, 10, 2));
}

TEST_CASE("large-n truncated series for in-place swaps") {
    MomentEngine engine;
    const VariantId v4(Family::SwapV4);
    const auto s = engine.truncated_factorial_series(v4, 100, 10);
    CHECK(s.coeff(1) == Q(kInPlaceW1At100));
    CHECK(s.coeff(2) == Q(kInPlaceW2At100));
    CHECK(s.coeff(3) == Q(kInPlaceW3At100));
    CHECK(s.coeff(1) == v4_mean().form(1).evaluate(100));
    CHECK(engine.central_moment(v4, 100, 2) == v4_m2().form(1).evaluate(100));

    const auto profile = engine.scaled_moment_profile(v4, 100, 10);
    REQUIRE(profile.size() == kInPlaceScaledAt100.size());
    for (std::size_t i = 0; i < profile.size(); ++i) {
        CAPTURE(i + 3);
        CHECK(std::abs(profile[i] / kInPlaceScaledAt100[i] - 1) < 5e-6);
    }
}

TEST_CASE("variant comparisons") {
    MomentEngine engine;
    const auto v1 = VariantId(Family::SwapV1), v2 = VariantId(Family::SwapV2);
    for (int n = 3; n <= 20; ++n) {
        CAPTURE(n);
        CHECK(engine.raw_moment(v1, n, 1) == engine.raw_moment(v2, n, 1));
        CHECK(engine.central_moment(v2, n, 2) < engine.central_moment(v1, n, 2));
        if (n >= 4)
            CHECK(engine.raw_moment(VariantId(Family::CompThreePivot), n, 1) <
                  engine.raw_moment(VariantId(Family::CompDual), n, 1));
    }
    const auto v4 = VariantId(Family::SwapV4), v5 = VariantId(Family::SwapV5);
    for (int n = 14; n <= 20; ++n) CHECK(engine.raw_moment(v5, n, 1) < engine.raw_moment(v4, n, 1));
    CHECK(engine.raw_moment(v5, 13, 1) > engine.raw_moment(v4, 13, 1));
}

TEST_CASE("comparison skewness approaches its limit") {
    MomentEngine engine;
    const auto profile = engine.scaled_moment_profile(VariantId(Family::Comp1Pivot), 50, 4);
    CHECK(std::abs(profile[0] - kComparisonSkewLimit) < 0.2);
    CHECK(std::abs(profile[1] - kComparisonKurtosisLimit) < 0.5);
}
