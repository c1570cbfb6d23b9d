#pragma once

#include <span>
#include <vector>

#include "qsm/rational.hpp"
#include "qsm/unipoly.hpp"

namespace qsm {

// Power series in w truncated after w^order. Arithmetic between two series
// requires equal orders and never produces terms above the order.
class TruncSeries {
public:
    explicit TruncSeries(int order);
    TruncSeries(int order, std::vector<Rational> coeffs);

    static TruncSeries one(int order);
    // p(1 + w) truncated.
    static TruncSeries from_poly(const UniPoly& p, int order);
    // (1 + w)^m truncated.
    static TruncSeries binomial_power(std::size_t m, int order);

    int order() const { return order_; }
    const Rational& coeff(int r) const { return c_.at(static_cast<std::size_t>(r)); }
    std::span<const Rational> coeffs() const { return c_; }

    // Multiply by t^m = (1 + w)^m.
    TruncSeries times_t_pow(std::size_t m) const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator*=(const Rational& s);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator*(TruncSeries a, const Rational& s) { return a *= s; }
    friend TruncSeries operator*(const Rational& s, TruncSeries a) { return a *= s; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

    // r! * coeff(r) for r = 0..order.
    std::vector<Rational> factorial_moments() const;

private:
    void check_compatible(const TruncSeries& o) const;
    int order_;
    std::vector<Rational> c_;
};

}  // namespace qsm
