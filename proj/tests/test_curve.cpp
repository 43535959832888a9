#include "doctest.h"

#include "dmass/curve.hpp"

#include <cmath>
#include <random>

using namespace dmass;

namespace {

CurveModel weierstrass(const FieldSpec& k, std::array<long long, 5> a) {
    return CurveModel::elliptic(k, {k.from_int(a[0]), k.from_int(a[1]), k.from_int(a[2]),
                                    k.from_int(a[3]), k.from_int(a[4])});
}

FqPoly poly(const FieldSpec& k, std::initializer_list<long long> c) {
    FqPoly out;
    for (auto v : c) out.push_back(k.from_int(v));
    return out;
}

std::vector<CurveModel> random_hyperelliptic(std::uint32_t p, unsigned g, std::size_t want,
                                             std::uint64_t seed) {
    const FieldSpec k = make_field(p, 1, 1);
    std::mt19937_64 rng(seed);
    std::vector<CurveModel> out;
    for (int tries = 0; tries < 2000 && out.size() < want; ++tries) {
        const unsigned df = 2 * g + 1 + static_cast<unsigned>(rng() % 2);
        FqPoly f;
        for (unsigned i = 0; i <= df; ++i) f.push_back(k.from_index(rng() % p));
        f.back() = k.one();
        FqPoly h;
        const unsigned dh = static_cast<unsigned>(rng() % (g + 2));
        for (unsigned i = 0; i <= dh; ++i) h.push_back(k.from_index(rng() % p));
        try {
            out.push_back(CurveModel::hyperelliptic(k, f, h, g));
        } catch (const CurveError&) {
        }
    }
    return out;
}

}  // namespace

TEST_CASE("point counts on small curves") {
    const FieldSpec f2 = make_field(2, 1, 1);
    const FieldSpec f3 = make_field(3, 1, 1);
    CHECK(count_points(CurveModel::projective_line(f2), 1) == 3);
    CHECK(count_points(CurveModel::projective_line(f3), 2) == 10);
    CHECK(count_points_naive(CurveModel::projective_line(f3), 2) == 10);

    const CurveModel e = weierstrass(f2, {0, 0, 1, 0, 0});
    CHECK(count_points(e, 1) == 3);
    CHECK(count_points_naive(e, 1) == 3);
    CHECK(count_points(e, 2) == 9);
    CHECK(count_points_naive(e, 2) == 9);
}

TEST_CASE("zeta numerators from counts") {
    CHECK(zeta_numerator({}, 2, 0) == std::vector<BigInt>{1});
    CHECK(zeta_numerator({3, 9}, 2, 1) == std::vector<BigInt>{1, 0, 2});
    CHECK(zeta_numerator({5, 5}, 2, 1) == std::vector<BigInt>{1, 2, 2});
    // N_2 inconsistent with N_1 violates the functional equation.
    CHECK_THROWS_AS(zeta_numerator({3, 7}, 2, 1), CurveError);
    CHECK_THROWS_AS(zeta_numerator({3}, 2, 1), CurveError);

    const FieldSpec f2 = make_field(2, 1, 1);
    const CurveModel e5 = weierstrass(f2, {0, 0, 1, 1, 0});
    CHECK(count_points_naive(e5, 1) == 5);
    const ZetaData z5 = compute_zeta(e5);
    CHECK(z5.numerator == std::vector<BigInt>{1, 2, 2});
    CHECK(class_number(z5) == 5);
}

TEST_CASE("class numbers and special values") {
    const FieldSpec f2 = make_field(2, 1, 1);
    const ZetaData p1 = compute_zeta(CurveModel::projective_line(f2));
    CHECK(class_number(p1) == 1);
    CHECK(zeta_special(p1, 1) == Rational(1, 3));
    CHECK(zeta_special(p1, 2) == Rational(1, 21));

    const ZetaData e = compute_zeta(weierstrass(f2, {0, 0, 1, 0, 0}));
    CHECK(e.numerator == std::vector<BigInt>{1, 0, 2});
    CHECK(e.class_number == 3);
    CHECK(zeta_special(e, 1) == Rational(3));
}

TEST_CASE("places of each degree") {
    const ZetaData p1 = compute_zeta(CurveModel::projective_line(make_field(2, 1, 1)));
    CHECK(places_of_degree(p1, 1) == 3);
    CHECK(places_of_degree(p1, 2) == 1);
    const ZetaData p13 = compute_zeta(CurveModel::projective_line(make_field(3, 1, 1)));
    CHECK(places_of_degree(p13, 2) == 3);
    // Irreducible monic polynomials of degree r over F_2, plus infinity at r = 1.
    CHECK(places_of_degree(p1, 3) == 2);
    CHECK(places_of_degree(p1, 4) == 3);
    CHECK(places_of_degree(p1, 6) == 9);
}

TEST_CASE("elliptic models reject zero discriminant") {
    const FieldSpec f3 = make_field(3, 1, 1);
    CHECK_THROWS_AS(weierstrass(f3, {0, 0, 0, 0, 0}), CurveError);
    const FieldSpec f2 = make_field(2, 1, 1);
    CHECK_THROWS_AS(weierstrass(f2, {0, 0, 0, 0, 1}), CurveError);
}

TEST_CASE("hyperelliptic validation") {
    const FieldSpec f3 = make_field(3, 1, 1);
    CHECK_NOTHROW(CurveModel::hyperelliptic(f3, poly(f3, {1, 0, 0, 0, 0, 1}), {}, 2));
    CHECK_THROWS_AS(CurveModel::hyperelliptic(f3, poly(f3, {1, 0, 0, 0, 0, 1}), {}, 1), CurveError);
    // x^2 (x - 1) has a repeated root.
    CHECK_THROWS_AS(CurveModel::hyperelliptic(f3, poly(f3, {0, 0, 2, 1}), {}, 1), CurveError);
    const FieldSpec f2 = make_field(2, 1, 1);
    CHECK_THROWS_AS(CurveModel::hyperelliptic(f2, poly(f2, {1, 0, 0, 1}), {}, 1), CurveError);
    // Odd-degree models have one point at infinity; other overrides are refused.
    CHECK_THROWS_AS(CurveModel::hyperelliptic(f3, poly(f3, {1, 0, 0, 0, 0, 1}), {}, 2, 2U),
                    CurveError);
}

TEST_CASE("fast and naive counts agree and satisfy the functional equation") {
    for (std::uint32_t p : {2U, 3U}) {
        for (unsigned g : {1U, 2U}) {
            const auto curves = random_hyperelliptic(p, g, 6, 100 * p + g);
            CHECK(curves.size() == 6);
            for (const auto& c : curves) {
                for (unsigned m = 1; m <= 2 * g; ++m) {
                    if (std::pow(double(p), 2.0 * m) > 2e5) break;
                    CHECK(count_points(c, m) == count_points_naive(c, m));
                }
                const ZetaData z = compute_zeta(c);
                for (unsigned j = 0; j <= g; ++j) {
                    CHECK(z.numerator[2 * g - j] == ipow(BigInt(z.q), g - j) * z.numerator[j]);
                }
                CHECK(z.class_number > 0);
                // Counts predicted by P(T) match direct counting two degrees beyond 2g.
                for (unsigned m = 1; m <= 2 * g + 2; ++m) {
                    if (std::pow(double(p), double(m)) > double(kEnumerationCap)) break;
                    CHECK(count_from_numerator(z, m) == count_points(c, m));
                }
            }
        }
    }
}

TEST_CASE("points at infinity follow the model and the override") {
    const FieldSpec f3 = make_field(3, 1, 1);
    // y^2 = x^4 + x + 1 and y^2 = 2x^4 + x + 1: leading coefficient a square or not.
    const CurveModel split = CurveModel::hyperelliptic(f3, poly(f3, {1, 1, 0, 0, 1}), {}, 1);
    const CurveModel inert = CurveModel::hyperelliptic(f3, poly(f3, {1, 1, 0, 0, 2}), {}, 1);
    CHECK(split.points_at_infinity(1) == 2);
    CHECK(inert.points_at_infinity(1) == 0);
    CHECK(inert.points_at_infinity(2) == 2);
    const CurveModel forced =
        CurveModel::hyperelliptic(f3, poly(f3, {1, 1, 0, 0, 2}), {}, 1, 0U);
    CHECK(compute_zeta(forced).numerator == compute_zeta(inert).numerator);
    // A wrong override is caught by the functional equation.
    const CurveModel wrong = CurveModel::hyperelliptic(f3, poly(f3, {1, 1, 0, 0, 2}), {}, 1, 2U);
    CHECK_THROWS_AS(compute_zeta(wrong), CurveError);
}

TEST_CASE("truncated Euler product matches the rational zeta function") {
    const FieldSpec f2 = make_field(2, 1, 1);
    const FieldSpec f3 = make_field(3, 1, 1);
    std::vector<ZetaData> zs = {
        compute_zeta(CurveModel::projective_line(f2)),
        compute_zeta(weierstrass(f2, {0, 0, 1, 0, 0})),
        compute_zeta(weierstrass(f3, {0, 0, 0, 2, 1})),
    };
    for (const auto& c : random_hyperelliptic(3, 2, 2, 9)) zs.push_back(compute_zeta(c));
    const unsigned bound = 6;
    for (const auto& z : zs) {
        // prod over places of (1 - T^deg)^(-1), truncated at T^bound.
        std::vector<BigInt> series(bound + 1, 0);
        series[0] = 1;
        for (unsigned r = 1; r <= bound; ++r) {
            const BigInt count = places_of_degree(z, r);
            CHECK(count >= 0);
            for (BigInt c = 0; c < count; ++c) {
                for (unsigned n = r; n <= bound; ++n) series[n] += series[n - r];
            }
        }
        CHECK(series == zeta_series(z, bound));
        for (unsigned i = 1; i <= 4; ++i) CHECK(zeta_special(z, i) > Rational(0));
    }
}
