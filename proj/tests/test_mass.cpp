#include "doctest.h"

#include "dmass/mass.hpp"
#include "dmass/random.hpp"

using namespace dmass;

namespace {

ZetaData p1(std::uint32_t q) {
    const auto pe = prime_power(q);
    return compute_zeta(CurveModel::projective_line(make_field(pe->first, pe->second, 1)));
}

ZetaData elliptic_f2() {
    const FieldSpec f2 = make_field(2, 1, 1);
    const FieldElement z = f2.zero(), one = f2.one();
    return compute_zeta(CurveModel::elliptic(f2, {z, z, one, z, z}));
}

const PlaceRef kInf{"inf", 1};
const PlaceRef kO{"o", 1};
const PlaceRef kX1{"x1", 1};

MassConfig quaternion_config(std::uint32_t q, TypeVector f = {1, 1}) {
    return {p1(q), kInf, kO, AlgebraSpec(2, {{kO, Rational(1, 2)}, {kX1, Rational(1, 2)}}),
            std::move(f), {}};
}

// Units of M_d(F_q[pi]/pi^e) by exhaustive enumeration (d = 2).
std::uint64_t brute_units(const FieldSpec& k, unsigned e) {
    const auto elems = enumerate(k);
    std::vector<Series> ring;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < e; ++i) total *= elems.size();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Series s(k, e);
        std::uint64_t rest = idx;
        for (unsigned i = 0; i < e; ++i) {
            s.set(i, elems[rest % elems.size()]);
            rest /= elems.size();
        }
        ring.push_back(s);
    }
    std::uint64_t units = 0;
    for (const auto& a : ring) {
        for (const auto& b : ring) {
            for (const auto& c : ring) {
                for (const auto& d : ring) units += (a * d - b * c).is_unit() ? 1 : 0;
            }
        }
    }
    return units;
}

}  // namespace

TEST_CASE("T^o examples") {
    CHECK(t_super_o(quaternion_config(2)) == 1);
    CHECK(t_super_o(quaternion_config(3)) == 2);
    const MassConfig split{p1(2), kInf, kO, AlgebraSpec(1, {}), {1}, {}};
    CHECK(t_super_o(split) == 1);
    const MassConfig cubic{p1(2), kInf, kO,
                           AlgebraSpec(3, {{kO, Rational(1, 3)}, {kX1, Rational(2, 3)}}), {1, 1, 1}, {}};
    CHECK(t_super_o(cubic) == 3);
}

TEST_CASE("T_o examples") {
    for (unsigned d = 1; d <= 5; ++d) {
        TypeVector f(d, 0);
        f[0] = d;
        for (int q : {2, 3, 4, 7}) CHECK(t_sub_o(q, d, f) == Rational(1));
    }
    CHECK(t_sub_o(2, 2, {1, 1}) == Rational(3));
    CHECK(t_sub_o(2, 3, {1, 1, 1}) == Rational(21));
    for (unsigned d = 1; d <= 4; ++d) {
        for (const auto& f : all_types(d)) {
            for (int q : {2, 3, 5}) {
                const Rational t = t_sub_o(q, d, f);
                CHECK(t.is_integer());
                CHECK(t > Rational(0));
            }
        }
    }
}

TEST_CASE("h(A) examples") {
    CHECK(h_of_A(p1(2), {"inf", 1}) == 1);
    CHECK(h_of_A(p1(2), {"inf", 2}) == 2);
    CHECK(h_of_A(elliptic_f2(), {"inf", 1}) == 3);
}

TEST_CASE("quaternion mass family equals 1/(q-1)") {
    for (std::uint32_t q : {2U, 3U, 4U, 5U, 7U}) {
        const MassReport r = mass(quaternion_config(q));
        CHECK(r.mass == Rational(1, q - 1));
        CHECK(r.lower_bound == r.mass);
        CHECK(r.upper_bound == Rational(q + 1) * r.mass);
        CHECK_FALSE(r.extrapolated);
    }
    const MassReport r2 = mass(quaternion_config(2));
    CHECK(r2.mass == Rational(1));
    CHECK(r2.upper_bound == Rational(3));
    CHECK(r2.t_sub_o == Rational(3));
    CHECK(r2.zeta_product == Rational(1, 3));
    CHECK(mass(quaternion_config(2, {2, 0})).mass == Rational(1, 3));
    CHECK(mass(quaternion_config(2, {0, 2})).mass == Rational(1, 3));
}

TEST_CASE("degenerate and extrapolated configurations") {
    const MassConfig trivial{elliptic_f2(), kInf, kO, AlgebraSpec(1, {}), {1}, {}};
    CHECK(mass(trivial).mass == Rational(3));
    MassConfig wide = quaternion_config(2);
    wide.inf = {"inf", 2};
    const MassReport r = mass(wide);
    CHECK(r.extrapolated);
    CHECK(r.mass == Rational(2));
}

TEST_CASE("configuration errors") {
    MassConfig bad_inf = quaternion_config(2);
    bad_inf.algebra = AlgebraSpec(2, {{kO, Rational(1, 2)}, {kInf, Rational(1, 2)}});
    CHECK_THROWS_AS(mass(bad_inf), MassError);

    MassConfig bad_o = quaternion_config(2);
    bad_o.algebra = AlgebraSpec(2, {{kX1, Rational(1, 2)}, {{"x2", 2}, Rational(1, 2)}});
    CHECK_THROWS_AS(mass(bad_o), MassError);

    MassConfig bad_f = quaternion_config(2, {1, 0});
    CHECK_THROWS_AS(mass(bad_f), MassError);

    MassConfig too_many = quaternion_config(2);
    too_many.level = {{{"y", 1}, 1}};
    try {
        mass(too_many);
        FAIL("expected a place-count error");
    } catch (const MassError& err) {
        CHECK(err.path == "places");
    }

    MassConfig in_ram = quaternion_config(2);
    in_ram.level = {{kX1, 1}};
    try {
        singular_count(in_ram);
        FAIL("expected a level error");
    } catch (const MassError& err) {
        CHECK(err.path == "level[0]");
    }

    CHECK_THROWS_AS(singular_count(quaternion_config(2)), MassError);
    CHECK_THROWS_AS(d_of_n({}, 2, p1(2)), MassError);
}

TEST_CASE("d(n) agrees with unit enumeration") {
    const ZetaData z = p1(2);
    CHECK(d_of_n({{{"a", 1}, 1}}, 2, z) == 6);
    CHECK(d_of_n({{{"b", 2}, 1}}, 2, z) == 180);
    CHECK(d_of_n({{{"a", 1}, 2}}, 2, z) == 96);
    CHECK(brute_units(make_field(2, 1, 1), 1) == 6);
    CHECK(brute_units(make_field(2, 2, 1), 1) == 180);
    CHECK(brute_units(make_field(2, 1, 1), 2) == 96);
    CHECK(brute_units(make_field(3, 1, 1), 1) == gl_order(3, 2, 1));
    CHECK(brute_units(make_field(3, 1, 1), 2) == gl_order(3, 2, 2));
}

TEST_CASE("singular count examples") {
    MassConfig c = quaternion_config(2);
    c.level = {{{"y", 2}, 1}};
    const MassReport r = singular_report(c);
    CHECK(*r.singular_count == Rational(180));
    CHECK(*r.d_of_n == 180);
    CHECK(*r.identity_holds);
}

TEST_CASE("singular count equals d(n) times mass on random configurations") {
    const auto configs = random_singular_configs(40, kDefaultSeed);
    REQUIRE(configs.size() == 40);
    std::set<std::uint64_t> qs;
    for (const auto& c : configs) {
        const MassReport r = singular_report(c);
        CHECK(*r.identity_holds);
        CHECK(*r.singular_count == Rational(*r.d_of_n) * r.mass);
        CHECK(r.singular_count->is_integer());
        CHECK(*r.singular_count > Rational(0));
        CHECK(r.mass > Rational(0));
        CHECK(r.lower_bound <= r.upper_bound);
        qs.insert(c.zeta.q);
    }
    CHECK(qs.size() >= 3);
}
