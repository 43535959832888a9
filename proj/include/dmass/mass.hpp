#pragma once

#include "dmass/csa.hpp"
#include "dmass/curve.hpp"
#include "dmass/orders.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dmass {

// Configuration error; `path` names the offending field ("level[1].e").
struct MassError : std::runtime_error {
    MassError(std::string where, const std::string& message)
        : std::runtime_error(message), path(std::move(where)) {}
    std::string path;
};

struct LevelPlace {
    PlaceRef place;
    unsigned e = 1;
};

struct MassConfig {
    ZetaData zeta;
    PlaceRef inf;
    PlaceRef o;
    AlgebraSpec algebra;
    TypeVector f;
    std::vector<LevelPlace> level;
};

struct MassReport {
    unsigned d = 0;
    std::uint64_t q = 0;
    BigInt h_of_A;
    BigInt t_super_o;
    Rational t_sub_o;
    bool t_sub_o_integral = false;
    Rational zeta_product;
    Rational mass;
    Rational lower_bound;
    Rational upper_bound;
    // deg(inf) > 1: the closed form is applied beyond its stated range.
    bool extrapolated = false;
    std::optional<BigInt> d_of_n;
    std::optional<Rational> singular_count;
    // singular_count == d_of_n * mass, when both are present.
    std::optional<bool> identity_holds;
};

// Throws MassError on any violated constraint.
void validate_config(const MassConfig& c);

// q_x = q^deg(x).
BigInt residue_size(const ZetaData& z, const PlaceRef& x);

// Product over x in Ram - {o} of (q_x^j - 1), 1 <= j <= d-1, e_x not dividing j.
BigInt t_super_o(const MassConfig& c);

// prod_{j<=d} (q_o^j - 1) / prod_i prod_{j<=f_i} (q_o^j - 1).
Rational t_sub_o(const BigInt& q_o, unsigned d, const TypeVector& f);

// #Pic(Gamma(X - inf, O_X)) = h_X deg(inf).
BigInt h_of_A(const ZetaData& z, const PlaceRef& inf);

// prod_{i=1}^{d-1} zeta_X(-i).
Rational zeta_product(const ZetaData& z, unsigned d);

// #GL_d(O_x / pi_x^e) for residue field of size q_x.
BigInt gl_order(const BigInt& q_x, unsigned d, unsigned e);

// prod_x #GL_d(O_x / pi_x^e_x) / (q - 1); `level` must be nonempty.
BigInt d_of_n(const std::vector<LevelPlace>& level, unsigned d, const ZetaData& z);

MassReport mass(const MassConfig& c);

// Needs f = (1, 1), hence d = 2, and a nonempty level.
Rational singular_count(const MassConfig& c);

// mass() plus the d(n) and singular-count fields.
MassReport singular_report(const MassConfig& c);

// Valid d = 2, f = (1, 1) configurations with nonempty level over P^1/F_q,
// q in {2, 3, 4, 5}, and y^2 + y = x^3 over F_2.
std::vector<MassConfig> random_singular_configs(std::size_t count, std::uint64_t seed);

}  // namespace dmass
