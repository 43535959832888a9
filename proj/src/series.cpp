#include "dmass/series.hpp"

#include <algorithm>

namespace dmass {

// ---------------------------------------------------------------------------
// Series

Series::Series(FieldSpec field, unsigned precision) : field_(std::move(field)) {
    if (precision == 0) throw std::invalid_argument("series precision must be positive");
    coeffs_.assign(precision, field_.zero());
}

Series Series::constant(const FieldElement& c, unsigned precision) {
    return monomial(c, 0, precision);
}

Series Series::monomial(const FieldElement& c, unsigned exponent, unsigned precision) {
    Series s(c.spec(), precision);
    if (exponent < precision) s.coeffs_[exponent] = c;
    return s;
}

void Series::set(unsigned i, const FieldElement& c) {
    if (c.spec() != field_) throw FieldError("series digit from a different field");
    coeffs_.at(i) = c;
}

void Series::check_same(const Series& o) const {
    if (field_ != o.field_ || precision() != o.precision()) {
        throw std::invalid_argument("series arithmetic across different truncated rings");
    }
}

unsigned Series::valuation() const {
    for (unsigned i = 0; i < precision(); ++i) {
        if (!coeffs_[i].is_zero()) return i;
    }
    return precision();
}

Series Series::operator+(const Series& o) const {
    check_same(o);
    Series r(*this);
    for (unsigned i = 0; i < precision(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

Series Series::operator-(const Series& o) const {
    check_same(o);
    Series r(*this);
    for (unsigned i = 0; i < precision(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

Series Series::operator-() const {
    Series r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Series Series::operator*(const Series& o) const {
    check_same(o);
    const unsigned n = precision();
    Series r(field_, n);
    for (unsigned i = 0; i < n; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (unsigned j = 0; i + j < n; ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return r;
}

Series Series::scaled(const FieldElement& c) const {
    Series r(*this);
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

Series Series::inverse() const {
    if (!is_unit()) throw std::domain_error("inverse of a non-unit series");
    const unsigned n = precision();
    Series r(field_, n);
    const FieldElement a0inv = coeffs_[0].inverse();
    r.coeffs_[0] = a0inv;
    for (unsigned k = 1; k < n; ++k) {
        FieldElement acc = field_.zero();
        for (unsigned i = 1; i <= k; ++i) acc += coeffs_[i] * r.coeffs_[k - i];
        r.coeffs_[k] = -(acc * a0inv);
    }
    return r;
}

Series Series::shift_up(unsigned k) const {
    Series r(field_, precision());
    for (unsigned i = 0; i + k < precision(); ++i) r.coeffs_[i + k] = coeffs_[i];
    return r;
}

Series Series::shift_down(unsigned k) const {
    Series r(field_, precision());
    for (unsigned i = 0; i < k && i < precision(); ++i) {
        if (!coeffs_[i].is_zero()) throw std::domain_error("series not divisible by pi^k");
    }
    for (unsigned i = k; i < precision(); ++i) r.coeffs_[i - k] = coeffs_[i];
    return r;
}

Series Series::frobenius(unsigned k) const {
    Series r(*this);
    for (auto& c : r.coeffs_) c = c.frobenius(k);
    return r;
}

bool operator==(const Series& a, const Series& b) {
    a.check_same(b);
    for (unsigned i = 0; i < a.precision(); ++i) {
        if (a.coeffs_[i] != b.coeffs_[i]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// SeriesMatrix

SeriesMatrix::SeriesMatrix(FieldSpec field, unsigned precision, std::size_t rows,
                           std::size_t cols)
    : field_(std::move(field)), precision_(precision), rows_(rows), cols_(cols) {
    entries_.assign(rows * cols, Series(field_, precision_));
}

SeriesMatrix SeriesMatrix::identity(const FieldSpec& field, unsigned precision, std::size_t n) {
    SeriesMatrix m(field, precision, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Series::constant(field.one(), precision);
    return m;
}

SeriesMatrix SeriesMatrix::diagonal_powers(const FieldSpec& field, unsigned precision,
                                           const std::vector<unsigned>& exponents) {
    SeriesMatrix m(field, precision, exponents.size(), exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        m(i, i) = Series::monomial(field.one(), exponents[i], precision);
    }
    return m;
}

void SeriesMatrix::check_shape(const SeriesMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
}

SeriesMatrix SeriesMatrix::operator+(const SeriesMatrix& o) const {
    check_shape(o);
    SeriesMatrix r(*this);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
    return r;
}

SeriesMatrix SeriesMatrix::operator-(const SeriesMatrix& o) const {
    check_shape(o);
    SeriesMatrix r(*this);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= o.entries_[i];
    return r;
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    SeriesMatrix r(field_, precision_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Series& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Series& b = o(k, j);
                if (b.is_zero()) continue;
                r(i, j) += a * b;
            }
        }
    }
    return r;
}

SeriesMatrix SeriesMatrix::scaled(const FieldElement& c) const {
    SeriesMatrix r(*this);
    for (auto& e : r.entries_) e = e.scaled(c);
    return r;
}

SeriesMatrix SeriesMatrix::shift_up(unsigned k) const {
    SeriesMatrix r(*this);
    for (auto& e : r.entries_) e = e.shift_up(k);
    return r;
}

SeriesMatrix SeriesMatrix::frobenius(unsigned k) const {
    SeriesMatrix r(*this);
    for (auto& e : r.entries_) e = e.frobenius(k);
    return r;
}

SeriesMatrix SeriesMatrix::transpose() const {
    SeriesMatrix r(field_, precision_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    }
    return r;
}

SeriesMatrix SeriesMatrix::concat(const SeriesMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("concat row mismatch");
    SeriesMatrix r(field_, precision_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
}

SeriesMatrix SeriesMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = rows_;
    SeriesMatrix a(*this);
    SeriesMatrix inv = identity(field_, precision_, n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && !a(piv, k).is_unit()) ++piv;
        if (piv == n) throw std::domain_error("matrix is not invertible over the truncated ring");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        }
        const Series s = a(k, k).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) = a(k, j) * s;
            inv(k, j) = inv(k, j) * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) continue;
            const Series f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

bool SeriesMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Series& s) { return s.is_zero(); });
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
        if (a.entries_[i] != b.entries_[i]) return false;
    }
    return true;
}

FpVector SeriesMatrix::digits() const {
    const unsigned n = field_.degree();
    FpVector out;
    out.reserve(entries_.size() * precision_ * n);
    for (const auto& e : entries_) {
        for (unsigned t = 0; t < precision_; ++t) {
            for (auto c : e[t].coeffs()) out.push_back(c);
        }
    }
    return out;
}

SeriesMatrix SeriesMatrix::from_digits(const FieldSpec& field, unsigned precision,
                                       std::size_t rows, std::size_t cols,
                                       const FpVector& digits) {
    const unsigned n = field.degree();
    if (digits.size() != rows * cols * precision * n) {
        throw std::invalid_argument("digit vector length mismatch");
    }
    SeriesMatrix m(field, precision, rows, cols);
    std::size_t pos = 0;
    for (auto& e : m.entries_) {
        for (unsigned t = 0; t < precision; ++t) {
            e.set(t, field.from_coeffs(std::span<const std::uint32_t>(&digits[pos], n)));
            pos += n;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Smith normal form over F[[pi]]/pi^N

SmithForm smith_form(const SeriesMatrix& input) {
    SeriesMatrix a(input);
    const std::size_t n = a.rows();
    const std::size_t m = a.cols();
    const unsigned N = a.precision();
    SeriesMatrix u = SeriesMatrix::identity(a.field(), N, n);
    std::vector<unsigned> exps;

    for (std::size_t k = 0; k < std::min(n, m); ++k) {
        std::size_t pi = k;
        std::size_t pj = k;
        unsigned best = N;
        for (std::size_t i = k; i < n; ++i) {
            for (std::size_t j = k; j < m; ++j) {
                const unsigned v = a(i, j).valuation();
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (best == N) {
            for (std::size_t r = k; r < std::min(n, m); ++r) exps.push_back(N);
            break;
        }
        if (pi != k) {
            for (std::size_t j = 0; j < m; ++j) std::swap(a(k, j), a(pi, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(u(k, j), u(pi, j));
        }
        if (pj != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pj));
        }
        // Normalize the pivot to exactly pi^best.
        const Series unit = a(k, k).shift_down(best);
        const Series uinv = unit.inverse();
        for (std::size_t j = 0; j < m; ++j) a(k, j) = a(k, j) * uinv;
        for (std::size_t j = 0; j < n; ++j) u(k, j) = u(k, j) * uinv;

        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) continue;
            const Series f = a(i, k).shift_down(best);
            for (std::size_t j = 0; j < m; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < n; ++j) u(i, j) -= f * u(k, j);
        }
        for (std::size_t j = k + 1; j < m; ++j) {
            if (a(k, j).is_zero()) continue;
            const Series f = a(k, j).shift_down(best);
            for (std::size_t i = 0; i < n; ++i) a(i, j) -= f * a(i, k);
        }
        exps.push_back(best);
    }
    return SmithForm{std::move(exps), std::move(u)};
}

unsigned colength(const SeriesMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("colength of a non-square matrix");
    const SmithForm s = smith_form(a);
    unsigned total = 0;
    for (auto e : s.exponents) {
        if (e >= a.precision()) {
            throw TruncationError("cokernel not determined below pi^" +
                                  std::to_string(a.precision()) + " (insufficient truncation)");
        }
        total += e;
    }
    return total;
}

bool span_contains(const SeriesMatrix& lattice, const SeriesMatrix& vectors) {
    if (lattice.rows() != lattice.cols() || vectors.rows() != lattice.rows()) {
        throw std::invalid_argument("span_contains shape mismatch");
    }
    const SmithForm s = smith_form(lattice);
    for (auto e : s.exponents) {
        if (e >= lattice.precision()) {
            throw TruncationError("lattice not of full rank below the truncation level");
        }
    }
    const SeriesMatrix y = s.left * vectors;
    for (std::size_t k = 0; k < y.rows(); ++k) {
        for (std::size_t c = 0; c < y.cols(); ++c) {
            if (y(k, c).valuation() < s.exponents[k]) return false;
        }
    }
    return true;
}

bool same_span(const SeriesMatrix& a, const SeriesMatrix& b) {
    return span_contains(a, b) && span_contains(b, a);
}

}  // namespace dmass
