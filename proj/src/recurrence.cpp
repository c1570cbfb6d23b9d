#include "qsm/recurrence.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "qsm/linalg.hpp"

namespace qsm {

namespace {

using Vec = std::vector<Rational>;

// Unknown (i, j) is the n^j coefficient of c_i.
std::size_t slot(int i, int j, int deg) { return static_cast<std::size_t>(i * (deg + 1) + j); }

RationalMatrix window(std::span<const Rational> data, int ord, int deg, int rows) {
    RationalMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>((ord + 1) * (deg + 1)));
    for (int r = 0; r < rows; ++r) {
        const long n = r + 1;
        for (int i = 0; i <= ord; ++i) {
            Rational npow(1);
            for (int j = 0; j <= deg; ++j) {
                m(static_cast<std::size_t>(r), slot(i, j, deg)) = npow * data[static_cast<std::size_t>(n + i - 1)];
                npow *= Rational(n);
            }
        }
    }
    return m;
}

RecurrenceOperator to_operator(const Vec& v, int ord, int deg) {
    BigInt l = 1, g = 0;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    for (const auto& x : v) {
        const BigInt z = x.num() * (l / x.den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    RecurrenceOperator op{ord, {}};
    for (int i = 0; i <= ord; ++i) {
        std::vector<Rational> c(static_cast<std::size_t>(deg + 1));
        for (int j = 0; j <= deg; ++j) {
            const Rational& x = v[slot(i, j, deg)];
            c[static_cast<std::size_t>(j)] = Rational(BigInt(x.num() * (l / x.den()) / g));
        }
        op.coeffs.emplace_back(std::move(c));
    }
    const UniPoly& lead = op.coeffs.back();
    if (!lead.is_zero() && lead.coeff(static_cast<std::size_t>(lead.degree())).sign() < 0)
        for (auto& c : op.coeffs) c *= Rational(-1);
    return op;
}

// Among the span of basis, a vector whose c_ord has least degree.
Vec reduce_leading_degree(std::vector<Vec> basis, int ord, int deg) {
    std::size_t row = 0;
    for (int j = deg; j >= 0 && row < basis.size(); --j) {
        const std::size_t col = slot(ord, j, deg);
        auto it = std::find_if(basis.begin() + static_cast<long>(row), basis.end(),
                               [&](const Vec& b) { return !b[col].is_zero(); });
        if (it == basis.end()) continue;
        std::iter_swap(basis.begin() + static_cast<long>(row), it);
        for (std::size_t r = row + 1; r < basis.size(); ++r) {
            if (basis[r][col].is_zero()) continue;
            const Rational f = basis[r][col] / basis[row][col];
            for (std::size_t c = 0; c < basis[r].size(); ++c) basis[r][c] -= f * basis[row][c];
        }
        ++row;
    }
    // the last pivoted row has the least degree; rows past it have c_ord = 0
    return row > 0 ? basis[row - 1] : basis.front();
}

std::string wrap(const UniPoly& p) {
    const std::string s = to_string(p, "n");
    const auto terms = std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const Rational& c) { return !c.is_zero(); });
    return terms <= 1 ? s : "(" + s + ")";
}

}  // namespace

long RecurrenceOperator::degree() const {
    long d = 0;
    for (const auto& c : coeffs) d = std::max(d, c.degree());
    return d;
}

std::vector<RecurrenceOperator::Ratio> RecurrenceOperator::monic() const {
    const UniPoly& lead = coeffs.at(static_cast<std::size_t>(order));
    std::vector<Ratio> out;
    for (const auto& c : coeffs) {
        if (c.is_zero()) {
            out.push_back({UniPoly(), UniPoly(Rational(1))});
            continue;
        }
        const UniPoly g = poly_gcd(c, lead);
        UniPoly num = c.divmod(g).first, den = lead.divmod(g).first;
        const Rational lc = den.coeff(static_cast<std::size_t>(den.degree()));
        num *= Rational(1) / lc;
        den *= Rational(1) / lc;
        out.push_back({std::move(num), std::move(den)});
    }
    return out;
}

std::string RecurrenceOperator::display() const {
    const auto m = monic();
    std::ostringstream os;
    bool first = true;
    for (int i = order; i >= 0; --i) {
        const auto& [num, den] = m[static_cast<std::size_t>(i)];
        if (num.is_zero()) continue;
        std::string shift = i == 0 ? "" : i == 1 ? "N" : "N^" + std::to_string(i);
        const bool neg = num.coeff(static_cast<std::size_t>(num.degree())).sign() < 0;
        const UniPoly mag = neg ? num * Rational(-1) : num;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        const bool unit = den.degree() == 0 && mag == UniPoly(Rational(1));
        if (unit) {
            os << (shift.empty() ? "1" : shift);
            continue;
        }
        os << wrap(mag);
        if (den.degree() > 0) os << "/" << wrap(den);
        if (!shift.empty()) os << "*" << shift;
    }
    return first ? "0" : os.str();
}

RecurrenceOperator find_recurrence(std::span<const Rational> data, int max_c) {
    if (max_c < 1) throw std::invalid_argument("find_recurrence: max_c must be >= 1");
    const int len = static_cast<int>(data.size());
    bool any_cell = false;
    for (int ord = 1; ord <= max_c; ++ord)
        for (int deg = 0; ord + deg <= max_c; ++deg) {
            const int unknowns = (ord + 1) * (deg + 1);
            const int offsets = len - ord;
            if (offsets < unknowns - 1 + kRecurrenceHoldout) continue;
            any_cell = true;

            std::optional<Vec> candidate;
            int rows = unknowns - 1;
            for (;;) {
                auto ns = nullspace(window(data, ord, deg, rows));
                if (ns.empty()) break;
                if (ns.size() == 1) {
                    candidate = std::move(ns.front());
                    break;
                }
                if (offsets - rows > kRecurrenceHoldout) {
                    ++rows;
                    continue;
                }
                candidate = reduce_leading_degree(std::move(ns), ord, deg);
                break;
            }
            if (!candidate) continue;

            RecurrenceOperator op = to_operator(*candidate, ord, deg);
            if (op.coeffs.back().is_zero()) continue;
            bool ok = true;
            for (int n = rows + 1; n <= offsets && ok; ++n) ok = apply_operator(op, data, n).is_zero();
            if (ok) return op;
        }
    if (!any_cell)
        throw RecurrenceError(RecurrenceError::Reason::insufficient_data,
                              "insufficient data for (ord,deg) search: " + std::to_string(len) + " terms");
    throw RecurrenceError(RecurrenceError::Reason::none_found,
                          "none found within maxC = " + std::to_string(max_c));
}

Rational apply_operator(const RecurrenceOperator& op, std::span<const Rational> data, int offset) {
    if (offset < 1 || offset + op.order > static_cast<int>(data.size()))
        throw std::out_of_range("apply_operator: offset " + std::to_string(offset) + " out of range");
    Rational acc;
    const Rational n(offset);
    for (int i = 0; i <= op.order; ++i)
        acc += op.coeffs[static_cast<std::size_t>(i)].eval(n) * data[static_cast<std::size_t>(offset + i - 1)];
    return acc;
}

std::vector<Rational> extend_sequence(const RecurrenceOperator& op, std::vector<Rational> seeds, int upto) {
    if (static_cast<int>(seeds.size()) < op.order)
        throw std::invalid_argument("extend_sequence: need at least order seed values");
    while (static_cast<int>(seeds.size()) < upto) {
        const int n = static_cast<int>(seeds.size()) - op.order + 1;
        const Rational nn(n);
        Rational acc;
        for (int i = 0; i < op.order; ++i)
            acc += op.coeffs[static_cast<std::size_t>(i)].eval(nn) * seeds[static_cast<std::size_t>(n + i - 1)];
        const Rational lead = op.coeffs[static_cast<std::size_t>(op.order)].eval(nn);
        if (lead.is_zero())
            throw std::domain_error("extend_sequence: leading coefficient vanishes at n = " + std::to_string(n));
        seeds.push_back(-acc / lead);
    }
    return seeds;
}

}  // namespace qsm
