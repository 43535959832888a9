#pragma once

#include "dmass/field.hpp"
#include "dmass/fp_linalg.hpp"

#include <stdexcept>
#include <vector>

namespace dmass {

// Raised when an answer depends on pi-digits beyond the truncation level.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of F[[pi]] / pi^N with F a finite field.
class Series {
public:
    Series(FieldSpec field, unsigned precision);

    static Series constant(const FieldElement& c, unsigned precision);
    static Series monomial(const FieldElement& c, unsigned exponent, unsigned precision);

    const FieldSpec& field() const { return field_; }
    unsigned precision() const { return static_cast<unsigned>(coeffs_.size()); }

    const FieldElement& operator[](unsigned i) const { return coeffs_.at(i); }
    void set(unsigned i, const FieldElement& c);

    // Index of the first nonzero digit; precision() for zero.
    unsigned valuation() const;
    bool is_zero() const { return valuation() == precision(); }
    bool is_unit() const { return !coeffs_[0].is_zero(); }

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series operator-() const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series scaled(const FieldElement& c) const;

    Series inverse() const;
    // Multiply by pi^k (top digits fall off).
    Series shift_up(unsigned k) const;
    // Divide by pi^k; requires valuation >= k, top k digits become 0.
    Series shift_down(unsigned k) const;
    // Coefficientwise Fr_q^k.
    Series frobenius(unsigned k = 1) const;

    friend bool operator==(const Series& a, const Series& b);
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

private:
    void check_same(const Series& o) const;
    FieldSpec field_;
    std::vector<FieldElement> coeffs_;
};

class SeriesMatrix {
public:
    SeriesMatrix(FieldSpec field, unsigned precision, std::size_t rows, std::size_t cols);

    static SeriesMatrix identity(const FieldSpec& field, unsigned precision, std::size_t n);
    // diag(pi^e_0, ..., pi^e_{n-1}).
    static SeriesMatrix diagonal_powers(const FieldSpec& field, unsigned precision,
                                        const std::vector<unsigned>& exponents);

    const FieldSpec& field() const { return field_; }
    unsigned precision() const { return precision_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Series& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Series& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    SeriesMatrix operator+(const SeriesMatrix& o) const;
    SeriesMatrix operator-(const SeriesMatrix& o) const;
    SeriesMatrix operator*(const SeriesMatrix& o) const;
    SeriesMatrix scaled(const FieldElement& c) const;
    SeriesMatrix shift_up(unsigned k) const;
    SeriesMatrix frobenius(unsigned k = 1) const;
    SeriesMatrix transpose() const;
    // Inverse of a matrix whose reduction mod pi is invertible.
    SeriesMatrix inverse() const;
    // Horizontal concatenation [this | o].
    SeriesMatrix concat(const SeriesMatrix& o) const;

    bool is_zero() const;
    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);
    friend bool operator!=(const SeriesMatrix& a, const SeriesMatrix& b) { return !(a == b); }

    // F_p coordinates, ordered (row, col, pi-digit, F_p-digit).
    FpVector digits() const;
    static SeriesMatrix from_digits(const FieldSpec& field, unsigned precision, std::size_t rows,
                                    std::size_t cols, const FpVector& digits);

private:
    void check_shape(const SeriesMatrix& o) const;
    FieldSpec field_;
    unsigned precision_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Series> entries_;
};

struct SmithForm {
    // pi-adic valuations of the diagonal; precision() marks a zero entry.
    std::vector<unsigned> exponents;
    // Invertible U with U * A * V = diag(pi^exponents) for some invertible V.
    SeriesMatrix left;
};

SmithForm smith_form(const SeriesMatrix& a);

// Length of R^n / colspan(a) for a square a; throws TruncationError when
// the cokernel is not visible below the truncation level.
unsigned colength(const SeriesMatrix& a);

// Whether every column of `vectors` lies in the column span of `lattice`.
// `lattice` must be square of full rank below the truncation level.
bool span_contains(const SeriesMatrix& lattice, const SeriesMatrix& vectors);

bool same_span(const SeriesMatrix& a, const SeriesMatrix& b);

}  // namespace dmass
