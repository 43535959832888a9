#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dmass {

using FpVector = std::vector<std::uint32_t>;

// Dense row-major matrix over the prime field F_p.
class FpMatrix {
public:
    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::uint32_t p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void set_column(std::size_t c, const FpVector& v);
    void append_row(const FpVector& v);

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref();

private:
    std::uint32_t p_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> data_;
};

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);

// Basis of {x : A x = 0}.
std::vector<FpVector> nullspace(FpMatrix a);

std::size_t rank(FpMatrix a);

// Incrementally maintained span with an echelon basis, for membership
// queries and greedy basis extraction.
class FpSpan {
public:
    FpSpan(std::uint32_t p, std::size_t dim) : p_(p), dim_(dim) {}

    std::size_t dimension() const { return rows_.size(); }
    std::size_t ambient() const { return dim_; }

    // Adds v; returns false if v was already in the span.
    bool insert(const FpVector& v);
    bool contains(const FpVector& v) const;

private:
    FpVector reduce(FpVector v) const;

    std::uint32_t p_;
    std::size_t dim_;
    std::vector<FpVector> rows_;       // each normalized at its pivot
    std::vector<std::size_t> pivots_;
};

}  // namespace dmass
