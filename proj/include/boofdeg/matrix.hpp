#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "boofdeg/rational.hpp"

namespace boofdeg {

/// Dense rectangular matrix of exact rationals, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<Rational> multiply(std::span<const Rational> v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RankNullspace {
    std::size_t rank = 0;
    /// Basis of {v : M v = 0}; one vector per non-pivot column.
    std::vector<std::vector<Rational>> basis;
};

/// Exact rank and nullspace via fraction-free (Bareiss) elimination.
/// Every returned basis vector is re-checked against M before return.
RankNullspace rank_nullspace(const RationalMatrix& m);

}  // namespace boofdeg
