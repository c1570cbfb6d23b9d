#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qsm/rational.hpp"

namespace qsm {

// Dense row-major matrix over Rational.
class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

// Solves a square system exactly: rows are cleared of denominators and
// reduced by fraction-free elimination, pivoting on the shortest nonzero
// entry. Returns nullopt if the matrix is singular.
std::optional<std::vector<Rational>> solve_square(const RationalMatrix& a, const std::vector<Rational>& b);

// Basis of the right nullspace from the reduced row echelon form; one
// vector per free column, with that column set to 1. Deterministic.
std::vector<std::vector<Rational>> nullspace(RationalMatrix a);

}  // namespace qsm
