#include "doctest.h"

#include "qsm/moments.hpp"
#include "qsm/recurrence.hpp"
#include "published/recurrence.hpp"
#include "test_support.hpp"

using namespace qsm;
using namespace qsm::testing;
using namespace qsm::published;

namespace {

std::vector<Rational> means(Family f, int upto) {
    static MomentEngine engine;
    return engine.moment_sequence(VariantId(f), 1, MomentKind::mean, upto).values;
}

std::vector<Rational> rationals(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

RecurrenceOperator n_minus_one() { return {1, {UniPoly(Rational(-1)), UniPoly(Rational(1))}}; }

}  // namespace

TEST_CASE("constant sequence gives N - 1") {
    const std::vector<Rational> data(20, Q("7/3"));
    const auto op = find_recurrence(data, 2);
    CHECK(op == n_minus_one());
    CHECK(op.display() == "N - 1");
}

TEST_CASE("apply_operator residuals") {
    CHECK(apply_operator(n_minus_one(), rationals({1, 2}), 1) == Q("1"));
    CHECK(apply_operator(n_minus_one(), std::vector<Rational>(5, Q("3")), 4) == Q("0"));
    CHECK_THROWS_AS(apply_operator(n_minus_one(), rationals({1, 2}), 2), std::out_of_range);
    CHECK_THROWS_AS(apply_operator(n_minus_one(), rationals({1, 2}), 0), std::out_of_range);
}

TEST_CASE("factorials: first-order operator with a linear coefficient") {
    std::vector<Rational> data;
    Rational f(1);
    for (int n = 1; n <= 20; ++n) data.push_back(f *= Rational(n));
    const auto op = find_recurrence(data, 3);
    CHECK(op.order == 1);
    CHECK(op.degree() == 1);
    for (int n = 1; n + 1 <= 20; ++n) CHECK(apply_operator(op, data, n) == Q("0"));
    CHECK(op.display() == "N - (n + 1)");
}

TEST_CASE("harmonic numbers need order two") {
    std::vector<Rational> data;
    Rational h;
    for (int n = 1; n <= 30; ++n) data.push_back(h += Rational(BigInt(1), BigInt(n)));
    const auto op = find_recurrence(data, 4);
    CHECK(op.order == 2);
    CHECK(op.degree() == 1);
}

TEST_CASE("errors") {
    const std::vector<Rational> few(5, Q("1"));
    try {
        find_recurrence(few, 2);
        FAIL("expected insufficient data");
    } catch (const RecurrenceError& e) {
        CHECK(e.reason() == RecurrenceError::Reason::insufficient_data);
    }
    std::vector<Rational> fib = rationals({1, 1});
    for (int i = 2; i < 30; ++i) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    std::vector<Rational> twos;
    for (int i = 0; i < 30; ++i) twos.push_back(fib[static_cast<std::size_t>(i)] * fib[static_cast<std::size_t>(i)] + Rational(i * i * i));
    try {
        find_recurrence(twos, 1);
        FAIL("expected none found");
    } catch (const RecurrenceError& e) {
        CHECK(e.reason() == RecurrenceError::Reason::none_found);
    }
    CHECK_THROWS_AS(find_recurrence(twos, 0), std::invalid_argument);
}

TEST_CASE("three-pivot comparison means satisfy the published operator") {
    const auto data = means(Family::CompThreePivot, 40);
    const auto op = find_recurrence(data, 8);
    INFO(op.display());
    REQUIRE(op.order == 4);
    const auto monic = op.monic();
    const auto ref = three_pivot_operator();
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CAPTURE(i);
        CHECK(monic[i].num * ref[i].den == ref[i].num * monic[i].den);
    }
    for (int n = 1; n + 4 <= 40; ++n) CHECK(apply_operator(op, data, n) == Q("0"));

    const std::vector<Rational> seeds(data.begin(), data.begin() + 4);
    CHECK(extend_sequence(op, seeds, 40) == data);
}

TEST_CASE("median-of-two swap means: the operator predicts unseen terms") {
    const auto data = means(Family::SwapV5, 100);
    const std::vector<Rational> head(data.begin(), data.begin() + 80);
    const auto op = find_recurrence(head, 11);
    INFO(op.display());
    const auto extended = extend_sequence(op, head, 100);
    for (int n = 81; n <= 100; ++n) {
        CAPTURE(n);
        CHECK(extended[static_cast<std::size_t>(n - 1)] == data[static_cast<std::size_t>(n - 1)]);
    }
}
