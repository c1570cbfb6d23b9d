#include "qsm/unipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qsm {

namespace {

// Scales a rational vector to integers over a common denominator.
BigInt to_integer_coeffs(std::span<const Rational> in, std::vector<BigInt>& out) {
    BigInt den = 1;
    for (const auto& c : in) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.raw().get_den_mpz_t());
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        BigInt scale;
        mpz_divexact(scale.get_mpz_t(), den.get_mpz_t(), in[i].raw().get_den_mpz_t());
        mpz_mul(out[i].get_mpz_t(), in[i].raw().get_num_mpz_t(), scale.get_mpz_t());
    }
    return den;
}

}  // namespace

UniPoly::UniPoly(Rational constant) {
    if (!constant.is_zero()) c_.push_back(std::move(constant));
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Rational& coeff, std::size_t degree) {
    if (coeff.is_zero()) return {};
    std::vector<Rational> c(degree + 1);
    c[degree] = coeff;
    return UniPoly(std::move(c));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::size_t UniPoly::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return i;
    return 0;
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::shifted(std::size_t shift) const {
    if (is_zero() || shift == 0) return *this;
    UniPoly out;
    out.c_.reserve(c_.size() + shift);
    out.c_.resize(shift);
    out.c_.insert(out.c_.end(), c_.begin(), c_.end());
    return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

// Convolution runs over integers scaled by each operand's common
// denominator, so the inner loop is mpz multiply-add with no gcd work.
// Each output coefficient is canonicalized once at the end.
UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.c_.size() == 1) return b * a.c_[0];
    if (b.c_.size() == 1) return a * b.c_[0];

    std::vector<BigInt> ia, ib;
    const BigInt da = to_integer_coeffs(a.c_, ia);
    const BigInt db = to_integer_coeffs(b.c_, ib);
    std::vector<BigInt> prod(ia.size() + ib.size() - 1);
    for (std::size_t i = 0; i < ia.size(); ++i) {
        if (ia[i] == 0) continue;
        for (std::size_t j = 0; j < ib.size(); ++j)
            mpz_addmul(prod[i + j].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
    }
    const BigInt den = da * db;
    std::vector<Rational> c;
    c.reserve(prod.size());
    for (auto& p : prod) c.emplace_back(p, den);
    return UniPoly(std::move(c));
}

UniPoly poly_mul(const UniPoly& a, const UniPoly& b) { return a * b; }

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("UniPoly::divmod: zero divisor");
    UniPoly rem = *this;
    const auto dd = static_cast<std::size_t>(divisor.degree());
    if (rem.degree() < divisor.degree()) return {UniPoly(), rem};
    std::vector<Rational> quot(rem.c_.size() - dd);
    const Rational lead = divisor.c_.back();
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        const auto shift = static_cast<std::size_t>(rem.degree()) - dd;
        const Rational f = rem.c_.back() / lead;
        quot[shift] = f;
        for (std::size_t i = 0; i <= dd; ++i) rem.c_[i + shift] -= f * divisor.c_[i];
        rem.trim();
    }
    return {UniPoly(std::move(quot)), rem};
}

UniPoly poly_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    const Rational lead = a.coeff(static_cast<std::size_t>(a.degree()));
    return a * (Rational(1) / lead);
}

Rational theta_derivative(const UniPoly& p, unsigned r) {
    const auto c = p.coeffs();
    if (r == 0) {
        Rational s;
        for (const auto& x : c) s += x;
        return s;
    }
    std::vector<BigInt> ints;
    const BigInt den = to_integer_coeffs(c, ints);
    BigInt acc, ipow;
    for (std::size_t i = 1; i < ints.size(); ++i) {
        if (ints[i] == 0) continue;
        mpz_ui_pow_ui(ipow.get_mpz_t(), i, r);
        mpz_addmul(acc.get_mpz_t(), ipow.get_mpz_t(), ints[i].get_mpz_t());
    }
    return Rational(acc, den);
}

std::string to_string(const UniPoly& p, std::string_view var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k].is_zero()) continue;
        Rational mag = c[k].sign() < 0 ? -c[k] : c[k];
        os << (first ? (c[k].sign() < 0 ? "-" : "") : (c[k].sign() < 0 ? " - " : " + "));
        first = false;
        const bool unit = mag == Rational(1);
        if (k == 0) {
            os << mag;
        } else {
            if (!unit) os << mag << '*';
            os << var;
            if (k > 1) os << '^' << k;
        }
    }
    return os.str();
}

}  // namespace qsm
