#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qsm/rational.hpp"
#include "qsm/unipoly.hpp"

namespace qsm::testing {

inline Rational Q(const char* text) { return Rational::parse(text); }

// Sparse literal: {{"2/3", 3}, {"1/3", 2}} -> 2/3 t^3 + 1/3 t^2
inline UniPoly poly(std::initializer_list<std::pair<const char*, std::size_t>> terms) {
    UniPoly p;
    for (const auto& [c, d] : terms) p += UniPoly::monomial(Q(c), d);
    return p;
}

inline UniPoly random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree), num(-20, 20), den(1, 9);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = Rational(BigInt(num(rng)), BigInt(den(rng)));
    return UniPoly(std::move(c));
}

// All permutations of 1..n in lexicographic order.
inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    std::vector<std::vector<int>> out;
    do out.push_back(p); while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace qsm::testing
