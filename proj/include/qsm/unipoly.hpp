#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qsm/rational.hpp"

namespace qsm {

// Dense univariate polynomial over Rational. Index i holds the coefficient
// of x^i. Never stores a trailing zero; the zero polynomial is empty.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(Rational constant);  // NOLINT(google-explicit-constructor)
    explicit UniPoly(std::vector<Rational> coeffs);

    static UniPoly monomial(const Rational& coeff, std::size_t degree);

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    // Zero beyond the degree.
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(); }
    std::span<const Rational> coeffs() const { return c_; }
    // Lowest index with a nonzero coefficient; 0 for the zero polynomial.
    std::size_t valuation() const;

    Rational eval(const Rational& x) const;
    // Multiply by x^shift.
    UniPoly shifted(std::size_t shift) const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const Rational& s);

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
    friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);

    friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

    // Euclidean division; throws on a zero divisor.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

private:
    void trim();
    std::vector<Rational> c_;
};

UniPoly poly_mul(const UniPoly& a, const UniPoly& b);

// Monic greatest common divisor; gcd(0, 0) = 0.
UniPoly poly_gcd(UniPoly a, UniPoly b);

// Sum of i^r * coeff_i: the r-th raw moment when p is a PGF.
Rational theta_derivative(const UniPoly& p, unsigned r);

// Renders with the given variable name, highest degree first.
std::string to_string(const UniPoly& p, std::string_view var = "t");

}  // namespace qsm
