#pragma once

#include "qsm/rational.hpp"

namespace qsm {

// H_k(n) = sum_{i=1..n} 1/i^k. Values up to an internal cap are memoized in
// grow-only per-k tables; beyond the cap the tail is summed by binary
// splitting from the last tabulated value. Safe to call concurrently.
Rational harmonic(int k, long n);

// Stirling number of the second kind, from a cached triangle.
BigInt stirling2(int r, int j);

BigInt binomial(long n, long k);
// a (a-1) ... (a-m+1); 1 when m == 0.
BigInt falling_factorial(long a, long m);
BigInt factorial(long n);

}  // namespace qsm
