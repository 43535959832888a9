#include "dmass/fp_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace dmass {

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
    std::uint64_t r = 1;
    std::uint64_t b = a % p;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1U) r = r * b % p;
        b = b * b % p;
        e >>= 1U;
    }
    return static_cast<std::uint32_t>(r);
}

void FpMatrix::set_column(std::size_t c, const FpVector& v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r] % p_;
}

void FpMatrix::append_row(const FpVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    for (auto x : v) data_.push_back(x % p_);
    ++rows_;
}

std::vector<std::size_t> FpMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    const std::uint64_t p = p_;
    for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
        std::size_t piv = lead;
        while (piv < rows_ && at(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != lead) {
            for (std::size_t k = 0; k < cols_; ++k) std::swap(at(piv, k), at(lead, k));
        }
        const std::uint64_t inv = fp_inverse(at(lead, c), p_);
        std::uint32_t* lrow = &data_[lead * cols_];
        for (std::size_t k = c; k < cols_; ++k) {
            lrow[k] = static_cast<std::uint32_t>(lrow[k] * inv % p);
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == lead) continue;
            std::uint32_t* row = &data_[r * cols_];
            const std::uint64_t f = row[c];
            if (f == 0) continue;
            const std::uint64_t nf = p - f;
            for (std::size_t k = c; k < cols_; ++k) {
                if (lrow[k] != 0) {
                    row[k] = static_cast<std::uint32_t>((row[k] + nf * lrow[k]) % p);
                }
            }
        }
        pivots.push_back(c);
        ++lead;
    }
    return pivots;
}

std::vector<FpVector> nullspace(FpMatrix a) {
    const auto pivots = a.rref();
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<FpVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        FpVector v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const std::uint32_t x = a.at(i, free);
            v[pivots[i]] = x == 0 ? 0 : a.p() - x;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(FpMatrix a) { return a.rref().size(); }

FpVector FpSpan::reduce(FpVector v) const {
    const std::uint64_t p = p_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::uint64_t f = v[pivots_[i]];
        if (f == 0) continue;
        const FpVector& row = rows_[i];
        for (std::size_t k = 0; k < dim_; ++k) {
            if (row[k] != 0) v[k] = static_cast<std::uint32_t>((v[k] + (p - f) * row[k]) % p);
        }
    }
    return v;
}

bool FpSpan::insert(const FpVector& v) {
    if (v.size() != dim_) throw std::invalid_argument("vector length mismatch");
    FpVector r = reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && r[piv] == 0) ++piv;
    if (piv == dim_) return false;
    const std::uint64_t inv = fp_inverse(r[piv], p_);
    for (auto& x : r) x = static_cast<std::uint32_t>(x * inv % p_);
    // Keep existing rows reduced at the new pivot so reduce() stays one pass.
    for (auto& row : rows_) {
        const std::uint64_t f = row[piv];
        if (f == 0) continue;
        for (std::size_t k = 0; k < dim_; ++k) {
            if (r[k] != 0) row[k] = static_cast<std::uint32_t>((row[k] + (p_ - f) * r[k]) % p_);
        }
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
}

bool FpSpan::contains(const FpVector& v) const {
    if (v.size() != dim_) throw std::invalid_argument("vector length mismatch");
    for (auto x : reduce(v)) {
        if (x != 0) return false;
    }
    return true;
}

}  // namespace dmass
