#include "dmass/mass.hpp"

#include "dmass/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dmass {

BigInt residue_size(const ZetaData& z, const PlaceRef& x) {
    return ipow(BigInt(z.q), x.degree);
}

void validate_config(const MassConfig& c) {
    const unsigned d = c.algebra.d();
    if (c.zeta.q < 2) throw MassError("zeta", "zeta data is missing");
    if (c.inf.degree == 0) throw MassError("inf.degree", "place degree must be positive");
    if (c.o.degree == 0) throw MassError("o.degree", "place degree must be positive");
    if (c.inf.id == c.o.id) throw MassError("o", "o and inf must be distinct places");
    try {
        validate_type(c.f, d);
    } catch (const OrderError& err) {
        throw MassError("f", err.what());
    }
    try {
        if (!c.algebra.invariant(c.inf).is_zero()) {
            throw MassError("algebra", "D must be split at inf");
        }
        if (c.algebra.invariant(c.o) != Rational(1, d).mod_one()) {
            throw MassError("algebra", "D must have invariant 1/d at o");
        }
    } catch (const AlgebraError& err) {
        throw MassError("algebra", err.what());
    }

    std::set<std::string> reserved{c.inf.id, c.o.id};
    for (const auto& x : c.algebra.ramified()) reserved.insert(x.id);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < c.level.size(); ++i) {
        const auto& lp = c.level[i];
        const std::string path = "level[" + std::to_string(i) + "]";
        if (lp.e == 0) throw MassError(path + ".e", "level multiplicity must be positive");
        if (lp.place.degree == 0) throw MassError(path + ".degree", "place degree must be positive");
        if (reserved.count(lp.place.id)) {
            throw MassError(path, "level place '" + lp.place.id + "' lies in Ram, o or inf");
        }
        if (!seen.insert(lp.place.id).second) {
            throw MassError(path, "level place '" + lp.place.id + "' listed twice");
        }
    }

    std::vector<PlaceRef> all{c.inf, c.o};
    for (const auto& x : c.algebra.ramified()) all.push_back(x);
    for (const auto& lp : c.level) all.push_back(lp.place);
    try {
        validate_places(all, c.zeta);
    } catch (const AlgebraError& err) {
        throw MassError("places", err.what());
    }
}

BigInt t_super_o(const MassConfig& c) {
    const unsigned d = c.algebra.d();
    BigInt out = 1;
    for (const auto& x : c.algebra.ramified()) {
        if (x.id == c.o.id) continue;
        const unsigned e = local_index(c.algebra, x).e;
        const BigInt qx = residue_size(c.zeta, x);
        for (unsigned j = 1; j < d; ++j) {
            if (j % e != 0) out *= ipow(qx, j) - 1;
        }
    }
    return out;
}

Rational t_sub_o(const BigInt& q_o, unsigned d, const TypeVector& f) {
    validate_type(f, d);
    BigInt num = 1, den = 1;
    for (unsigned j = 1; j <= d; ++j) num *= ipow(q_o, j) - 1;
    for (unsigned fi : f) {
        for (unsigned j = 1; j <= fi; ++j) den *= ipow(q_o, j) - 1;
    }
    return Rational(num, den);
}

BigInt h_of_A(const ZetaData& z, const PlaceRef& inf) {
    return z.class_number * inf.degree;
}

Rational zeta_product(const ZetaData& z, unsigned d) {
    Rational out(1);
    for (unsigned i = 1; i < d; ++i) out *= zeta_special(z, i);
    return out;
}

BigInt gl_order(const BigInt& q_x, unsigned d, unsigned e) {
    if (e == 0) throw MassError("e", "level multiplicity must be positive");
    BigInt out = 1;
    const BigInt qd = ipow(q_x, d);
    for (unsigned j = 0; j < d; ++j) out *= qd - ipow(q_x, j);
    return out * ipow(q_x, d * d * (e - 1));
}

BigInt d_of_n(const std::vector<LevelPlace>& level, unsigned d, const ZetaData& z) {
    if (level.empty()) throw MassError("level", "the level must be nonempty");
    BigInt prod = 1;
    for (const auto& lp : level) prod *= gl_order(residue_size(z, lp.place), d, lp.e);
    const BigInt units = BigInt(z.q) - 1;
    if (prod % units != 0) throw MassError("level", "unit group order not divisible by q - 1");
    return prod / units;
}

MassReport mass(const MassConfig& c) {
    validate_config(c);
    MassReport r;
    r.d = c.algebra.d();
    r.q = c.zeta.q;
    r.h_of_A = h_of_A(c.zeta, c.inf);
    r.t_super_o = t_super_o(c);
    r.t_sub_o = t_sub_o(residue_size(c.zeta, c.o), r.d, c.f);
    r.t_sub_o_integral = r.t_sub_o.is_integer();
    r.zeta_product = zeta_product(c.zeta, r.d);
    r.mass = Rational(r.h_of_A) * Rational(r.t_super_o) * r.t_sub_o * r.zeta_product;
    r.lower_bound = r.mass;
    const BigInt q(c.zeta.q);
    r.upper_bound = Rational(ipow(q, r.d) - 1, q - 1) * r.mass;
    r.extrapolated = c.inf.degree > 1;
    return r;
}

Rational singular_count(const MassConfig& c) {
    validate_config(c);
    if (c.algebra.d() != 2) throw MassError("algebra.d", "the singular count needs d = 2");
    if (c.f != TypeVector{1, 1}) throw MassError("f", "the singular count needs f = (1, 1)");
    if (c.level.empty()) throw MassError("level", "the singular count needs a nonempty level");
    Rational out = Rational(d_of_n(c.level, 2, c.zeta)) * Rational(h_of_A(c.zeta, c.inf)) *
                   zeta_special(c.zeta, 1) * Rational(residue_size(c.zeta, c.o) + 1);
    for (const auto& x : c.algebra.ramified()) {
        if (x.id != c.o.id) out *= Rational(residue_size(c.zeta, x) - 1);
    }
    return out;
}

MassReport singular_report(const MassConfig& c) {
    const Rational count = singular_count(c);
    MassReport r = mass(c);
    r.d_of_n = d_of_n(c.level, r.d, c.zeta);
    r.singular_count = count;
    r.identity_holds = count == Rational(*r.d_of_n) * r.mass;
    return r;
}

std::vector<MassConfig> random_singular_configs(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ZetaData> curves;
    for (std::uint32_t q : {2U, 3U, 4U, 5U}) {
        const auto pe = prime_power(q);
        curves.push_back(compute_zeta(CurveModel::projective_line(make_field(pe->first, pe->second, 1))));
    }
    {
        const FieldSpec f2 = make_field(2, 1, 1);
        const FieldElement z = f2.zero(), one = f2.one();
        curves.push_back(compute_zeta(CurveModel::elliptic(f2, {z, z, one, z, z})));
    }

    std::vector<MassConfig> out;
    while (out.size() < count) {
        const ZetaData& zeta = curves[uniform_below(rng, curves.size())];
        std::vector<PlaceRef> pool;
        for (unsigned deg = 1; deg <= 3; ++deg) {
            const BigInt avail = places_of_degree(zeta, deg);
            const unsigned n = static_cast<unsigned>(std::min<BigInt>(avail, 4));
            for (unsigned i = 0; i < n; ++i) {
                pool.push_back({"P" + std::to_string(deg) + "." + std::to_string(i), deg});
            }
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t extra_ram = uniform_below(rng, 2) == 0 ? 1 : 3;
        const std::size_t levels = 1 + uniform_below(rng, 2);
        if (pool.size() < 2 + extra_ram + levels) continue;

        std::size_t next = 0;
        const PlaceRef inf = pool[next++];
        const PlaceRef o = pool[next++];
        InvariantList inv{{o, Rational(1, 2)}};
        for (std::size_t i = 0; i < extra_ram; ++i) inv.emplace_back(pool[next++], Rational(1, 2));
        std::vector<LevelPlace> level;
        for (std::size_t i = 0; i < levels; ++i) {
            level.push_back({pool[next++], 1 + static_cast<unsigned>(uniform_below(rng, 2))});
        }
        MassConfig c{zeta, inf, o, AlgebraSpec(2, inv), {1, 1}, level};
        validate_config(c);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace dmass
