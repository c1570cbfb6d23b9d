#include "qsm/closed_form.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "qsm/combinatorics.hpp"
#include "qsm/linalg.hpp"

namespace qsm {

namespace {

// Multisets of harmonic orders {k: b_k} with sum k*b_k <= budget, k >= min_k.
void harmonic_parts(int budget, int min_k, std::map<int, int>& cur, std::vector<std::map<int, int>>& out) {
    out.push_back(cur);
    for (int k = min_k; k <= budget; ++k) {
        ++cur[k];
        harmonic_parts(budget - k, k, cur, out);
        if (--cur[k] == 0) cur.erase(k);
    }
}

bool basis_less(const BasisMonomial& a, const BasisMonomial& b) {
    const int wa = a.harmonic_weight(), wb = b.harmonic_weight();
    if (wa != wb) return wa < wb;
    if (a.pow_h != b.pow_h) return a.pow_h < b.pow_h;
    // 1/n^p after the nonnegative powers
    const bool ia = a.pow_n < 0, ib = b.pow_n < 0;
    if (ia != ib) return ib;
    return ia ? a.pow_n > b.pow_n : a.pow_n < b.pow_n;
}

}  // namespace

int BasisMonomial::harmonic_weight() const {
    int w = 0;
    for (const auto& [k, b] : pow_h) w += k * b;
    return w;
}

Rational BasisMonomial::evaluate(long n) const {
    Rational v(1);
    if (pow_n > 0)
        v = pow(Rational(n), static_cast<unsigned>(pow_n));
    else if (pow_n < 0)
        v = Rational(1) / pow(Rational(n), static_cast<unsigned>(-pow_n));
    for (const auto& [k, b] : pow_h) v *= pow(harmonic(k, n), static_cast<unsigned>(b));
    return v;
}

std::string BasisMonomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << '*';
        first = false;
    };
    if (pow_n > 0) {
        sep();
        os << 'n';
        if (pow_n > 1) os << '^' << pow_n;
    }
    for (const auto& [k, b] : pow_h) {
        sep();
        os << 'H' << k << "(n)";
        if (b > 1) os << '^' << b;
    }
    if (pow_n < 0) {
        if (first) os << '1';
        os << "/n";
        if (pow_n < -1) os << '^' << -pow_n;
        first = false;
    }
    if (first) os << '1';
    return os.str();
}

std::vector<BasisMonomial> build_basis(int r, bool allow_inverse_n, int max_inverse_power) {
    if (r < 1) throw std::invalid_argument("build_basis: order must be >= 1");
    if (allow_inverse_n && max_inverse_power < 1)
        throw std::invalid_argument("build_basis: inverse power must be >= 1");
    std::vector<std::map<int, int>> parts;
    std::map<int, int> cur;
    harmonic_parts(r, 1, cur, parts);

    std::vector<BasisMonomial> basis;
    for (const auto& h : parts) {
        for (int a = 0; a <= r; ++a) basis.push_back({a, h});
        if (allow_inverse_n)
            for (int p = 1; p <= max_inverse_power; ++p) basis.push_back({-p, h});
    }
    std::sort(basis.begin(), basis.end(), basis_less);
    return basis;
}

Rational ClosedForm::evaluate(long n) const {
    if (n < validity_from)
        throw std::domain_error("ClosedForm::evaluate: n = " + std::to_string(n) + " is below validity_from = " +
                                std::to_string(validity_from));
    Rational acc;
    for (const auto& [m, c] : terms) acc += c * m.evaluate(n);
    return acc;
}

std::string ClosedForm::display() const {
    if (terms.empty()) return "0";
    std::vector<const std::pair<const BasisMonomial, Rational>*> order;
    for (const auto& t : terms) order.push_back(&t);
    // highest weight first reads closest to the usual presentation
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return basis_less(b->first, a->first); });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        const Rational& c = t->second;
        Rational mag = c.sign() < 0 ? -c : c;
        if (first)
            os << (c.sign() < 0 ? "-" : "");
        else
            os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        const std::string mono = t->first.to_string();
        const bool unit = mono == "1";
        if (unit)
            os << mag.to_string();
        else if (mag == Rational(1))
            os << mono;
        else
            os << mag.to_string() << '*' << mono;
    }
    return os.str();
}

ClosedForm fit(const MomentSequence& data, const std::vector<BasisMonomial>& basis, int skip) {
    if (skip < 0) throw std::invalid_argument("fit: skip must be >= 0");
    if (basis.empty()) throw std::invalid_argument("fit: empty basis");
    const std::size_t m = basis.size();
    const auto need = static_cast<int>(m) + skip + kHoldoutGuard;
    if (data.upto() < need)
        throw FitError(FitError::Reason::underdetermined, "underdetermined: " + std::to_string(data.upto()) +
                                                              " data points, need " + std::to_string(need));

    RationalMatrix a(m, m);
    std::vector<Rational> b(m);
    for (std::size_t i = 0; i < m; ++i) {
        const long n = skip + 1 + static_cast<long>(i);
        for (std::size_t j = 0; j < m; ++j) a(i, j) = basis[j].evaluate(n);
        b[i] = data.at(static_cast<int>(n));
    }
    const auto x = solve_square(a, b);
    if (!x) throw FitError(FitError::Reason::underdetermined, "underdetermined: singular interpolation system");

    ClosedForm cf;
    cf.validity_from = skip + 1;
    for (std::size_t j = 0; j < m; ++j)
        if (!(*x)[j].is_zero()) cf.terms.emplace(basis[j], (*x)[j]);

    for (int n = skip + 1 + static_cast<int>(m); n <= data.upto(); ++n)
        if (cf.evaluate(n) != data.at(n))
            throw FitError(FitError::Reason::no_solution, "no solution in basis: holdout fails at n = " + std::to_string(n));
    return cf;
}

AutoFit fit_auto(const MomentSequence& data, int r, bool allow_inverse_n, int skip) {
    constexpr int kSkipCap = 12;
    if (skip < 0) skip = r;
    std::optional<FitError> last;
    const int max_inverse = allow_inverse_n ? 2 : 0;
    for (int inv = allow_inverse_n ? 1 : 0; inv <= max_inverse; ++inv) {
        const auto basis = build_basis(r, inv > 0, std::max(inv, 1));
        for (int s = skip; s <= std::max(skip, kSkipCap); s += 2) {
            try {
                return {fit(data, basis, s), s, inv, basis.size()};
            } catch (const FitError& e) {
                last = e;
                if (e.reason() == FitError::Reason::underdetermined) break;
            }
        }
    }
    throw *last;
}

}  // namespace qsm
