#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsm/rational.hpp"
#include "qsm/unipoly.hpp"

namespace qsm {

// sum_{i=0}^{order} c_i(n) a_{n+i} = 0, sequences indexed from a_1.
// Coefficients are integer polynomials with content 1 and the leading
// coefficient of c_order positive.
struct RecurrenceOperator {
    int order = 0;
    std::vector<UniPoly> coeffs;  // coeffs[i] multiplies N^i

    long degree() const;

    struct Ratio {
        UniPoly num, den;  // den monic, gcd(num, den) = 1
    };
    // c_i / c_order, reduced.
    std::vector<Ratio> monic() const;
    // e.g. "N^2 - (2*n + 1)/(n + 1)*N + n/(n + 1)"
    std::string display() const;

    friend bool operator==(const RecurrenceOperator&, const RecurrenceOperator&) = default;
};

class RecurrenceError : public std::runtime_error {
public:
    enum class Reason { none_found, insufficient_data };
    RecurrenceError(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

inline constexpr int kRecurrenceHoldout = 8;

// Smallest order, then smallest degree, with order + degree <= max_c whose
// operator annihilates every offset of data. data[0] is a_1.
RecurrenceOperator find_recurrence(std::span<const Rational> data, int max_c);

// sum_i c_i(offset) a_{offset+i}.
Rational apply_operator(const RecurrenceOperator& op, std::span<const Rational> data, int offset);

// Continues seeds (a_1..a_m, m >= order) up to a_upto by solving for the
// highest shift. Throws if the leading coefficient vanishes on the way.
std::vector<Rational> extend_sequence(const RecurrenceOperator& op, std::vector<Rational> seeds, int upto);

}  // namespace qsm
