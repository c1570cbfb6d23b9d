#pragma once

#include "qsm/rational.hpp"
#include "qsm/unipoly.hpp"

namespace qsm {

// Swap-count PGF of the first Variant II partition when the pivot sits at
// position i and has rank k in a random permutation of length n. The count
// is the number of elements before the pivot and larger, plus those after
// it and smaller.
UniPoly per_prob(int n, int k, int i);

// Swap-count PGF of the first Lomuto partition without self-swaps, pivot
// (last element) of rank k. Constant 1 when k == n.
UniPoly ip_prob(int n, int k);

// Probability that the more central of the first and last elements has
// rank k, ties broken by a fair coin.
Rational pivot_weight_v5(int n, int k);

}  // namespace qsm
