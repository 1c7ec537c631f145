#pragma once

#include "gkmfiber/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gkmfiber {

using RationalVector = std::vector<Rational>;

// Dense row-major matrix over the rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    // Entries in row-major order; also serves as a total-order key.
    const RationalVector& data() const { return data_; }

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& other) const;
    RationalVector operator*(std::span<const Rational> v) const;

    bool operator==(const RationalMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    RationalVector data_;
};

// Reduced row echelon form, computed in place. Returns pivot columns in order.
std::vector<std::size_t> reduce_to_rref(RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);
std::size_t rank(const std::vector<RationalVector>& vectors, std::size_t length);

// Exact kernel basis. One vector per free column of the RREF, with a 1 in that column.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

Rational determinant(const RationalMatrix& m);

// Throws InvalidArgument for non-square or singular input.
RationalMatrix inverse(const RationalMatrix& m);

// Some x with a * x = b, or nullopt when inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& a, std::span<const Rational> b);

bool is_zero_vector(std::span<const Rational> v);

// Row space grown one vector at a time. Each stored row is normalized at its pivot
// and has zeros at the pivots of earlier rows.
class IncrementalBasis {
public:
    explicit IncrementalBasis(std::size_t length) : length_(length) {}

    std::size_t length() const { return length_; }
    std::size_t rank() const { return rows_.size(); }
    // Adds v when it is independent of the stored rows. Returns whether the rank grew.
    bool add(std::span<const Rational> v);
    bool contains(std::span<const Rational> v) const;

private:
    struct SparseRow {
        std::size_t pivot;
        std::vector<std::pair<std::size_t, Rational>> entries;
    };
    RationalVector reduce(std::span<const Rational> v) const;

    std::size_t length_;
    std::vector<SparseRow> rows_;
};

} // namespace gkmfiber
