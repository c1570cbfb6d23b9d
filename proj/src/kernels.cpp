#include "qsm/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsm/combinatorics.hpp"

namespace qsm {

namespace {

void require_rank(int n, int k, const char* what) {
    if (k < 1 || k > n) throw std::invalid_argument(std::string(what) + ": rank out of range");
}

}  // namespace

// Term j (j smaller elements before the pivot) has probability
//   C(i-1, j) * prod_{s<j} (k-1-s)/(n-1-s) * prod_{s<=i-j-2} (n-k-s)/(n-1-j-s)
// and the two denominators telescope to the falling factorial (n-1)_{i-1}.
UniPoly per_prob(int n, int k, int i) {
    if (n < 2) throw std::invalid_argument("per_prob: n must be >= 2");
    require_rank(n, k, "per_prob");
    require_rank(n, i, "per_prob");
    const int lo = std::max(k - 1 - n + i, 0);
    const int hi = std::min(i - 1, k - 1);
    const BigInt den = falling_factorial(n - 1, i - 1);
    std::vector<Rational> c(static_cast<std::size_t>(i + k - 1));
    for (int j = lo; j <= hi; ++j) {
        const BigInt num = binomial(i - 1, j) * falling_factorial(k - 1, j) *
                           falling_factorial(n - k, i - 1 - j);
        c[static_cast<std::size_t>(i + k - 2 - 2 * j)] += Rational(num, den);
    }
    return UniPoly(std::move(c));
}

UniPoly ip_prob(int n, int k) {
    if (n < 2) throw std::invalid_argument("ip_prob: n must be >= 2");
    require_rank(n, k, "ip_prob");
    if (k == n) return UniPoly(Rational(1));
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1);
    const Rational lead(BigInt(n - k), BigInt(n - 1));
    for (int s = 1; s <= k; ++s)
        c[static_cast<std::size_t>(s)] = lead * Rational(binomial(k - 1, k - s), binomial(n - 2, k - s));
    return UniPoly(std::move(c));
}

Rational pivot_weight_v5(int n, int k) {
    if (n < 1) throw std::invalid_argument("pivot_weight_v5: n must be >= 1");
    require_rank(n, k, "pivot_weight_v5");
    if (n == 1) return 1;  // first and last coincide
    if (2 * k > n + 1) k = n + 1 - k;
    if (n % 2 == 0) {
        const long m = n / 2;
        return Rational(BigInt(4 * k - 3), BigInt((2 * m - 1) * 2 * m));
    }
    const long m = (n + 1) / 2;
    if (k == m) return Rational(BigInt(2), BigInt(2 * m - 1));
    return Rational(BigInt(4 * k - 3), BigInt((2 * m - 1) * (2 * m - 2)));
}

}  // namespace qsm
