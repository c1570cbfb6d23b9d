#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsm/moments.hpp"
#include "qsm/rational.hpp"

namespace qsm {

// n^pow_n * prod_k H_k(n)^pow_h[k]. pow_n < 0 encodes 1/n^{-pow_n}.
struct BasisMonomial {
    int pow_n = 0;
    std::map<int, int> pow_h;

    // sum_k k * pow_h[k]
    int harmonic_weight() const;
    Rational evaluate(long n) const;
    // "n^2*H1(n)^2", "1/n", "1"
    std::string to_string() const;

    friend auto operator<=>(const BasisMonomial&, const BasisMonomial&) = default;
    friend bool operator==(const BasisMonomial&, const BasisMonomial&) = default;
};

// Ansatz for an order-r moment: every n^a * prod H_k^{b_k} with
// 0 <= a <= r and sum k*b_k <= r, plus n^{-p} * prod H_k^{b_k} for
// p = 1..max_inverse_power when allow_inverse_n. Ordered by harmonic part
// first, then by power of n.
std::vector<BasisMonomial> build_basis(int r, bool allow_inverse_n, int max_inverse_power = 1);

struct ClosedForm {
    std::map<BasisMonomial, Rational> terms;  // zero coefficients are dropped
    int validity_from = 1;

    Rational evaluate(long n) const;
    // Expanded display, e.g. "n*H1(n) + H1(n) - 2*n".
    std::string display() const;

    friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

class FitError : public std::runtime_error {
public:
    enum class Reason { no_solution, underdetermined };
    FitError(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

inline constexpr int kHoldoutGuard = 5;

// Interpolates on n = skip+1 .. skip+|basis| and verifies every remaining
// point exactly. Throws FitError.
ClosedForm fit(const MomentSequence& data, const std::vector<BasisMonomial>& basis, int skip);

struct AutoFit {
    ClosedForm form;
    int skip = 0;
    int inverse_power = 0;  // 0 when the polynomial basis sufficed
    std::size_t basis_size = 0;
};

// Retries with skip, skip+2, skip+4, ... up to 12, then (if allowed) with
// the inverse power of n raised by one. Throws the last FitError.
AutoFit fit_auto(const MomentSequence& data, int r, bool allow_inverse_n, int skip = -1);

}  // namespace qsm
