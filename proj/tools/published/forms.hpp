#pragma once

// Published closed forms, written out by hand in factored form and expanded
// by a tiny expression algebra that is independent of the fitter.

#include <map>

#include "qsm/closed_form.hpp"
#include "qsm/rational.hpp"

namespace qsm::published {

struct Expr {
    std::map<BasisMonomial, Rational> terms;

    Expr() = default;
    Expr(long c) : Expr(Rational(c)) {}
    Expr(const Rational& c) {
        if (!c.is_zero()) terms[BasisMonomial{}] = c;
    }

    static Expr mono(BasisMonomial m) {
        Expr e;
        e.terms[std::move(m)] = 1;
        return e;
    }

    ClosedForm form(int validity_from) const { return {terms, validity_from}; }
};

inline Expr& operator+=(Expr& a, const Expr& b) {
    for (const auto& [m, c] : b.terms) {
        Rational& slot = a.terms[m];
        slot += c;
        if (slot.is_zero()) a.terms.erase(m);
    }
    return a;
}
inline Expr operator+(Expr a, const Expr& b) { return a += b; }
inline Expr operator-(const Expr& a) {
    Expr out = a;
    for (auto& [m, c] : out.terms) c = -c;
    return out;
}
inline Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
inline Expr operator*(const Expr& a, const Expr& b) {
    Expr out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            BasisMonomial m = ma;
            m.pow_n += mb.pow_n;
            for (const auto& [k, e] : mb.pow_h) m.pow_h[k] += e;
            Expr term;
            term.terms[m] = ca * cb;
            out += term;
        }
    return out;
}

inline Expr frac(long p, long q) { return Expr(Rational(p, q)); }
inline Expr pw(const Expr& e, int k) {
    Expr out(1);
    for (int i = 0; i < k; ++i) out = out * e;
    return out;
}

inline const Expr n_{Expr::mono({1, {}})};
inline Expr H(int k) { return Expr::mono({0, {{k, 1}}}); }
inline Expr inv_n() { return Expr::mono({-1, {}}); }

// Number of comparisons, single pivot (also the dual-pivot comparison count).
inline Expr comp1_mean() { return 2 * (n_ + 1) * H(1) - 4 * n_; }
inline Expr comp1_m2() { return n_ * (7 * n_ + 13) - 2 * (n_ + 1) * H(1) - 4 * pw(n_ + 1, 2) * H(2); }
inline Expr comp1_m3() {
    return -n_ * (19 * pw(n_, 2) + 81 * n_ + 104) + H(1) * (14 * n_ + 14) + 12 * pw(n_ + 1, 2) * H(2) +
           16 * pw(n_ + 1, 3) * H(3);
}
inline Expr comp1_m4() {
    return frac(1, 9) * n_ * (2260 * pw(n_, 3) + 9658 * pw(n_, 2) + 15497 * n_ + 11357) -
           2 * (n_ + 1) * (42 * pw(n_, 2) + 78 * n_ + 77) * H(1) + 12 * pw(n_ + 1, 2) * pw(H(1), 2) +
           (-4 * (42 * pw(n_, 2) + 78 * n_ + 31) * pw(n_ + 1, 2) + 48 * pw(n_ + 1, 3) * H(1)) * H(2) +
           48 * pw(n_ + 1, 4) * pw(H(2), 2) - 96 * pw(n_ + 1, 3) * H(3) - 96 * pw(n_ + 1, 4) * H(4);
}

// Swaps, pivot moved past each smaller element.
inline Expr v1_mean() { return (n_ + 1) * H(1) - 2 * n_; }
inline Expr v1_m2() { return 2 * n_ * (n_ + 2) - (n_ + 1) * H(1) - pw(n_ + 1, 2) * H(2); }
inline Expr v1_m3() {
    return -frac(9, 4) * n_ * pw(n_ + 3, 2) + (4 * n_ + 4) * H(1) + 3 * pw(n_ + 1, 2) * H(2) +
           2 * pw(n_ + 1, 3) * H(3);
}
inline Expr v1_m4() {
    return frac(1, 18) * n_ * (335 * pw(n_, 3) + 1568 * pw(n_, 2) + 3067 * n_ + 2770) -
           3 * (n_ + 1) * (4 * pw(n_, 2) + 8 * n_ + 9) * H(1) + 3 * pw(n_ + 1, 2) * pw(H(1), 2) +
           (-(12 * pw(n_, 2) + 24 * n_ + 19) * pw(n_ + 1, 2) + 6 * pw(n_ + 1, 3) * H(1)) * H(2) +
           3 * pw(n_ + 1, 4) * pw(H(2), 2) - 12 * pw(n_ + 1, 3) * H(3) - 6 * pw(n_ + 1, 4) * H(4);
}

// Swaps, random pivot index.
inline Expr v2_mean() { return v1_mean(); }
inline Expr v2_m2() { return frac(1, 6) * n_ * (11 * n_ + 17) - frac(1, 3) * (n_ + 1) * H(1) - pw(n_ + 1, 2) * H(2); }
inline Expr v2_m3() {
    return -frac(1, 6) * n_ * (14 * pw(n_, 2) + 57 * n_ + 73) + (2 * n_ + 2) * H(1) + pw(n_ + 1, 2) * H(2) +
           2 * pw(n_ + 1, 3) * H(3);
}
inline Expr v2_m4() {
    return frac(1, 90) * n_ * (1496 * pw(n_, 3) + 5531 * pw(n_, 2) + 8527 * n_ + 6922) -
           frac(1, 15) * (n_ + 1) * (55 * pw(n_, 2) + 85 * n_ + 173) * H(1) +
           frac(1, 3) * pw(n_ + 1, 2) * pw(H(1), 2) +
           (-frac(1, 3) * (33 * pw(n_, 2) + 51 * n_ + 25) * pw(n_ + 1, 2) + 2 * pw(n_ + 1, 3) * H(1)) * H(2) +
           3 * pw(n_ + 1, 4) * pw(H(2), 2) - 4 * pw(n_ + 1, 3) * H(3) - 6 * pw(n_ + 1, 4) * H(4);
}

// Lomuto partition swaps.
inline Expr v3_mean() { return (n_ + 1) * H(1) - frac(4, 3) * n_ - frac(1, 3); }
inline Expr v3_m2() {
    return 2 * pw(n_, 2) + frac(187, 45) * n_ + frac(7, 45) - frac(2, 3) * inv_n() -
           (pw(n_, 2) + 2 * n_ + 1) * H(2) - (n_ + 1) * H(1);
}

// In-place partition that skips self-swaps.
inline Expr v4_mean() { return (n_ + 2) * H(1) - frac(5, 2) * n_ - frac(1, 2); }
// As printed; exhaustive enumeration refutes it at every n (see v4_m2).
inline Expr v4_m2_printed() {
    return 2 * pw(n_, 2) - frac(215, 12) * n_ + frac(1, 12) + (11 * n_ + 14) * H(1) -
           (pw(n_, 2) - 2 * n_ - 2) * H(2) - (2 * n_ + 2) * pw(H(1), 2);
}
// The printed form with the H2 factor read as n^2+2n+2; agrees with
// enumeration for n >= 2.
inline Expr v4_m2() {
    return 2 * pw(n_, 2) - frac(215, 12) * n_ + frac(1, 12) + (11 * n_ + 14) * H(1) -
           (pw(n_, 2) + 2 * n_ + 2) * H(2) - (2 * n_ + 2) * pw(H(1), 2);
}

// Dual-pivot swaps.
inline Expr dual_swap_mean() { return frac(4, 5) * (n_ + 1) * H(1) - frac(39, 25) * n_ - frac(1, 100); }

}  // namespace qsm::published
