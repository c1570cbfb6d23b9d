#include "qsm/trunc_series.hpp"

#include <stdexcept>

namespace qsm {

TruncSeries::TruncSeries(int order) : order_(order) {
    if (order < 0) throw std::invalid_argument("TruncSeries: negative order");
    c_.resize(static_cast<std::size_t>(order) + 1);
}

TruncSeries::TruncSeries(int order, std::vector<Rational> coeffs) : TruncSeries(order) {
    for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = std::move(coeffs[i]);
}

TruncSeries TruncSeries::one(int order) {
    TruncSeries s(order);
    s.c_[0] = 1;
    return s;
}

TruncSeries TruncSeries::from_poly(const UniPoly& p, int order) {
    TruncSeries s(order);
    const auto c = p.coeffs();
    BigInt binom;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        for (std::size_t r = 0; r <= i && r < s.c_.size(); ++r) {
            mpz_bin_uiui(binom.get_mpz_t(), i, r);
            s.c_[r] += c[i] * Rational(binom);
        }
    }
    return s;
}

TruncSeries TruncSeries::binomial_power(std::size_t m, int order) {
    TruncSeries s(order);
    BigInt binom;
    for (std::size_t r = 0; r <= m && r < s.c_.size(); ++r) {
        mpz_bin_uiui(binom.get_mpz_t(), m, r);
        s.c_[r] = Rational(binom);
    }
    return s;
}

TruncSeries TruncSeries::times_t_pow(std::size_t m) const {
    if (m == 0) return *this;
    return *this * binomial_power(m, order_);
}

void TruncSeries::check_compatible(const TruncSeries& o) const {
    if (o.order_ != order_) throw std::invalid_argument("TruncSeries: order mismatch");
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    TruncSeries out(a.order_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < a.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
}

std::vector<Rational> TruncSeries::factorial_moments() const {
    std::vector<Rational> f(c_.size());
    BigInt fact = 1;
    for (std::size_t r = 0; r < c_.size(); ++r) {
        if (r > 0) fact *= static_cast<unsigned long>(r);
        f[r] = c_[r] * Rational(fact);
    }
    return f;
}

}  // namespace qsm
