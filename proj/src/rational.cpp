#include "qsm/rational.hpp"

#include <mpfr.h>

#include <ostream>
#include <stdexcept>

namespace qsm {

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        BigInt v;
        if (part.empty() || v.set_str(part, 10) != 0)
            throw std::invalid_argument("Rational::parse: malformed '" + s + "'");
        return v;
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    const BigInt den = parse_int(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("Rational::parse: nonpositive denominator in '" + s + "'");
    return Rational(parse_int(s.substr(0, slash)), den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

double Rational::to_double() const {
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q_.get_mpq_t(), MPFR_RNDN);
    const double d = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return d;
}

std::string Rational::to_decimal(int digits) const {
    mpfr_t x;
    mpfr_init2(x, 256);
    mpfr_set_q(x, q_.get_mpq_t(), MPFR_RNDN);
    char* buf = nullptr;
    const std::string fmt = "%." + std::to_string(digits) + "Rg";
    mpfr_asprintf(&buf, fmt.c_str(), x);
    std::string out(buf);
    mpfr_free_str(buf);
    mpfr_clear(x);
    return out;
}

Rational pow(const Rational& base, unsigned exponent) {
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace qsm
