#pragma once

// The published monic operator annihilating the three-pivot comparison means.

#include <array>
#include <initializer_list>

#include "qsm/unipoly.hpp"

namespace qsm::published {

inline UniPoly in_n(std::initializer_list<long> low_to_high) {
    std::vector<Rational> c;
    for (long x : low_to_high) c.emplace_back(x);
    return UniPoly(std::move(c));
}

inline UniPoly product(std::initializer_list<UniPoly> fs) {
    UniPoly out(Rational(1));
    for (const auto& f : fs) out = out * f;
    return out;
}

struct RatioRef {
    UniPoly num, den;
};

// Coefficients of N^0..N^4, each num/den.
inline std::array<RatioRef, 5> three_pivot_operator() {
    const UniPoly n = in_n({0, 1}), n1 = in_n({1, 1}), n2 = in_n({2, 1}), n3 = in_n({3, 1}), n4 = in_n({4, 1});
    const UniPoly t1 = in_n({1, 3});
    return {{
        {product({in_n({4, 3}), in_n({12, -5, 1})}), product({n4, n3, t1})},
        {product({in_n({-24, -59, 12, -13, -12})}), product({t1, n4, n3, n2})},
        {product({in_n({3}), n1, in_n({5, 6}), n}), product({n4, n3, t1})},
        {product({in_n({-1}), n1, in_n({7, 12})}), product({n4, t1})},
        {in_n({1}), in_n({1})},
    }};
}

}  // namespace qsm::published
