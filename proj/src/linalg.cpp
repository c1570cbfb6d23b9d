#include "qsm/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace qsm {

std::optional<std::vector<Rational>> solve_square(const RationalMatrix& a, const std::vector<Rational>& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_square: shape mismatch");

    // Each row scaled to integers; column n holds the right-hand side.
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l = b[i].den();
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).den().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j).num() * (l / a(i, j).den());
        m[i][n] = b[i].num() * (l / b[i].den());
    }

    // Fraction-free elimination; every division below is exact.
    BigInt prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = n;
        for (std::size_t r = k; r < n; ++r)
            if (m[r][k] != 0 && (pr == n || mpz_sizeinbase(m[r][k].get_mpz_t(), 2) <
                                                 mpz_sizeinbase(m[pr][k].get_mpz_t(), 2)))
                pr = r;
        if (pr == n) return std::nullopt;
        std::swap(m[pr], m[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                BigInt& x = m[i][j];
                x *= m[k][k];
                mpz_submul(x.get_mpz_t(), m[i][k].get_mpz_t(), m[k][j].get_mpz_t());
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }

    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s(m[i][n]);
        for (std::size_t c = i + 1; c < n; ++c) s -= Rational(m[i][c]) * x[c];
        x[i] = s / Rational(m[i][i]);
    }
    return x;
}

std::vector<std::vector<Rational>> nullspace(RationalMatrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!a(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr == rows) continue;
        if (pr != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(pr, j), a(r, j));
        const Rational inv = Rational(1) / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qsm
