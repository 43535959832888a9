#pragma once

#include "dmass/field.hpp"
#include "dmass/rational.hpp"

#include <array>
#include <optional>
#include <vector>

namespace dmass {

struct CurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Polynomial over a finite field, low degree first, no trailing zeros.
using FqPoly = std::vector<FieldElement>;

enum class CurveKind { ProjectiveLine, Elliptic, Hyperelliptic };

// Smooth projective curve over F_q given by one of three models.  Elliptic
// and hyperelliptic models are both stored as y^2 + h(x) y = f(x).
class CurveModel {
public:
    static CurveModel projective_line(FieldSpec base);
    // Weierstrass coefficients a1, a2, a3, a4, a6.
    static CurveModel elliptic(FieldSpec base, const std::array<FieldElement, 5>& a);
    // y^2 + h y = f with g = floor((deg f - 1)/2).  `infinity_over_base`, when
    // given, fixes the number of points at infinity over F_q (0, 1 or 2);
    // otherwise it is read off the model.
    static CurveModel hyperelliptic(FieldSpec base, FqPoly f, FqPoly h, unsigned genus,
                                    std::optional<unsigned> infinity_over_base = std::nullopt);

    CurveKind kind() const { return kind_; }
    const FieldSpec& base() const { return base_; }
    std::uint64_t q() const { return base_.q(); }
    unsigned genus() const { return genus_; }
    const FqPoly& f() const { return f_; }
    const FqPoly& h() const { return h_; }

    // Number of points at infinity over F_{q^m}.
    unsigned points_at_infinity(unsigned m) const;

    // Weierstrass discriminant; elliptic models only.
    FieldElement discriminant() const;

private:
    CurveModel(CurveKind kind, FieldSpec base) : kind_(kind), base_(std::move(base)) {}
    void validate_hyperelliptic();

    CurveKind kind_;
    FieldSpec base_;
    unsigned genus_ = 0;
    FqPoly f_;
    FqPoly h_;
    std::optional<std::array<FieldElement, 5>> weierstrass_;
    std::optional<unsigned> infinity_override_;
};

// #X(F_{q^m}): per-x fibre sizes over the affine line plus the points at
// infinity.  Splits the x-range over `threads` workers.
BigInt count_points(const CurveModel& curve, unsigned m, unsigned threads = 0);

// Same count by enumerating every affine pair (x, y).
BigInt count_points_naive(const CurveModel& curve, unsigned m);

struct ZetaData {
    std::uint64_t q = 0;
    unsigned g = 0;
    std::vector<BigInt> counts;     // N_1 .. N_2g
    std::vector<BigInt> numerator;  // p_0 .. p_2g
    BigInt class_number;
};

// P(T) from N_1..N_2g; throws CurveError on non-integral coefficients or a
// failed functional equation.
std::vector<BigInt> zeta_numerator(const std::vector<BigInt>& counts, std::uint64_t q, unsigned g);

ZetaData make_zeta(const std::vector<BigInt>& counts, std::uint64_t q, unsigned g);
ZetaData compute_zeta(const CurveModel& curve);

BigInt class_number(const ZetaData& z);

// P(q^i) / ((1 - q^i)(1 - q^(i+1))).
Rational zeta_special(const ZetaData& z, unsigned i);

// N_m for any m >= 1, from P(T) by the power-sum recurrence.
BigInt count_from_numerator(const ZetaData& z, unsigned m);

// Number of closed points of degree r.
BigInt places_of_degree(const ZetaData& z, unsigned r);

// Power series coefficients of P(T)/((1-T)(1-qT)) through T^bound.
std::vector<BigInt> zeta_series(const ZetaData& z, unsigned bound);

}  // namespace dmass
