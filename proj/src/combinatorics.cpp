#include "qsm/combinatorics.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qsm {

namespace {

constexpr long kHarmonicTableCap = 4096;

struct HarmonicTables {
    std::mutex mu;
    std::map<int, std::vector<Rational>> by_k;  // by_k[k][n] = H_k(n)
};

HarmonicTables& harmonic_tables() {
    static HarmonicTables t;
    return t;
}

// sum_{i=lo..hi} 1/i^k as an unreduced num/den pair.
void split_sum(int k, long lo, long hi, BigInt& num, BigInt& den) {
    if (lo == hi) {
        num = 1;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(lo), static_cast<unsigned long>(k));
        return;
    }
    const long mid = lo + (hi - lo) / 2;
    BigInt n1, d1, n2, d2;
    split_sum(k, lo, mid, n1, d1);
    split_sum(k, mid + 1, hi, n2, d2);
    num = n1 * d2 + n2 * d1;
    den = d1 * d2;
}

struct StirlingTriangle {
    std::mutex mu;
    std::vector<std::vector<BigInt>> rows{{BigInt(1)}};
};

}  // namespace

Rational harmonic(int k, long n) {
    if (k <= 0) throw std::invalid_argument("harmonic: k must be >= 1");
    if (n < 0) throw std::invalid_argument("harmonic: n must be >= 0");

    auto& tables = harmonic_tables();
    const long tabulated = std::min(n, kHarmonicTableCap);
    Rational head;
    {
        std::lock_guard lock(tables.mu);
        auto& tab = tables.by_k[k];
        if (tab.empty()) tab.emplace_back();
        while (static_cast<long>(tab.size()) <= tabulated) {
            const auto i = static_cast<unsigned long>(tab.size());
            BigInt ipow;
            mpz_ui_pow_ui(ipow.get_mpz_t(), i, static_cast<unsigned long>(k));
            tab.push_back(tab.back() + Rational(BigInt(1), ipow));
        }
        head = tab[static_cast<std::size_t>(tabulated)];
    }
    if (n == tabulated) return head;
    BigInt num, den;
    split_sum(k, tabulated + 1, n, num, den);
    return head + Rational(num, den);
}

BigInt stirling2(int r, int j) {
    if (r < 0 || j < 0 || j > r) throw std::invalid_argument("stirling2: need 0 <= j <= r");
    static StirlingTriangle tri;
    std::lock_guard lock(tri.mu);
    while (static_cast<int>(tri.rows.size()) <= r) {
        const auto& prev = tri.rows.back();
        const std::size_t m = prev.size();  // new row index
        std::vector<BigInt> row(m + 1);
        for (std::size_t i = 1; i <= m; ++i) {
            BigInt left = i < m ? prev[i] : BigInt(0);
            row[i] = BigInt(static_cast<unsigned long>(i) * left) + prev[i - 1];
        }
        tri.rows.push_back(std::move(row));
    }
    return tri.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
}

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

BigInt falling_factorial(long a, long m) {
    if (m < 0) throw std::invalid_argument("falling_factorial: negative length");
    BigInt out = 1;
    for (long s = 0; s < m; ++s) out *= a - s;
    return out;
}

BigInt factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

}  // namespace qsm
