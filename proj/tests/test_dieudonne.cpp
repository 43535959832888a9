#include "doctest.h"

#include "dmass/dieudonne.hpp"
#include "dmass/random.hpp"

using namespace dmass;

namespace {

SkewSeries random_skew(const FieldSpec& k, unsigned T, std::mt19937_64& rng) {
    SkewSeries s(k, T);
    for (unsigned i = 0; i < T; ++i) s.set(i, k.from_index(uniform_below(rng, k.size())));
    return s;
}

}  // namespace

TEST_CASE("tau commutes past field elements as Frobenius") {
    const FieldSpec fields[] = {make_field(2, 1, 2), make_field(2, 1, 3), make_field(2, 2, 2),
                                make_field(2, 1, 6), make_field(2, 2, 3), make_field(3, 1, 2),
                                make_field(3, 1, 3), make_field(5, 1, 2), make_field(7, 1, 2)};
    for (const auto& k : fields) {
        REQUIRE(k.size() <= 64);
        const SkewSeries tau = SkewSeries::monomial(k.one(), 1, 4);
        for (const auto& a : enumerate(k)) {
            const SkewSeries lhs = tau * SkewSeries::monomial(a, 0, 4);
            const SkewSeries rhs = SkewSeries::monomial(a.pow(k.q()), 0, 4) * tau;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("skew multiplication is associative and distributive") {
    std::mt19937_64 rng(kDefaultSeed);
    for (const auto& k : {make_field(2, 1, 4), make_field(3, 1, 2), make_field(2, 2, 2)}) {
        for (int trial = 0; trial < 30; ++trial) {
            const SkewSeries a = random_skew(k, 6, rng);
            const SkewSeries b = random_skew(k, 6, rng);
            const SkewSeries c = random_skew(k, 6, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) * c == a * c + b * c);
        }
    }
}

TEST_CASE("embedding matrices") {
    const FormalEmbedding e = build_embedding(3, {2, 0, 1}, 2, 6);
    const FieldElement& lam = e.lambda;
    CHECK(e.phi_lambda(0, 0)[0] == lam);
    CHECK(e.phi_lambda(1, 1)[0] == lam);
    CHECK(e.phi_lambda(2, 2)[0] == lam.pow(4));
    CHECK(e.phi_lambda(0, 1).is_zero());
    CHECK(e.phi_pi(1, 1) == SkewSeries::monomial(e.k.one(), 1, 6));
    CHECK(embedding_relations_hold(e));

    const FormalEmbedding e2 = build_embedding(2, {1, 1}, 3, 4);
    CHECK(e2.phi_lambda(1, 1)[0] == e2.lambda.pow(3));
    CHECK(embedding_relations_hold(e2));

    const FormalEmbedding e1 = build_embedding(1, {1}, 2, 2);
    CHECK(e1.phi_pi(0, 0) == SkewSeries::monomial(e1.k.one(), 1, 2));
    CHECK(embedding_relations_hold(e1));

    // The embedded generator has exact degree d over F_q.
    CHECK(e.lambda.frobenius(3) == e.lambda);
    CHECK(e.lambda.frobenius(1) != e.lambda);

    CHECK_THROWS_AS(build_embedding(2, {1, 0}, 2, 4), DieudonneError);
    CHECK_THROWS_AS(build_embedding(2, {1, 1}, 2, 5), DieudonneError);
    CHECK_THROWS_AS(build_embedding(2, {1, 1}, 2, 2), DieudonneError);
    CHECK_THROWS_AS(build_embedding(2, {1, 1}, 6, 4), DieudonneError);
}

TEST_CASE("monomial twists exist for small types") {
    for (std::size_t d = 1; d <= 5; ++d) {
        for (const auto& f : all_types(d)) CHECK(find_monomial_twist(f).has_value());
    }
    CHECK_FALSE(find_monomial_twist({1, 2, 3, 0, 0, 0}).has_value());
}

TEST_CASE("centralizer examples") {
    const CentralizerBasis c11 = centralizer_basis(build_embedding(2, {1, 1}, 2, 4));
    CHECK(c11.basis.size() == 7);
    const CentralizerBasis c201 = centralizer_basis(build_embedding(3, {2, 0, 1}, 2, 6));
    CHECK(c201.basis.size() == 16);
    for (unsigned N = 2; N <= 4; ++N) {
        CHECK(centralizer_basis(build_embedding(1, {1}, 3, N)).basis.size() == N);
    }
}

TEST_CASE("centralizers match block orders") {
    for (std::uint64_t q : {2ULL, 3ULL}) {
        for (std::size_t d = 1; d <= 3; ++d) {
            for (const auto& f : all_types(d)) {
                CAPTURE(q);
                CAPTURE(f);
                const FormalEmbedding e = build_embedding(static_cast<unsigned>(d), f, q,
                                                          static_cast<unsigned>(2 * d));
                const CentralizerBasis c = centralizer_basis(e);
                CHECK(c.basis.size() == c.expected_dimension);
                CHECK(c.contains_identity);
                CHECK(c.closed_under_products);
                const BlockOrderCertificate cert = match_block_order(c, e);
                CHECK(cert.valid());
                CHECK(cert.pairs_checked == c.basis.size() * c.basis.size());
            }
        }
    }
    // Deeper truncation and a non-prime q.
    for (const auto& f : all_types(2)) {
        const FormalEmbedding e = build_embedding(2, f, 4, 6);
        const CentralizerBasis c = centralizer_basis(e);
        CHECK(c.basis.size() == c.expected_dimension);
        CHECK(match_block_order(c, e).valid());
    }
}

TEST_CASE("maximal type is matched by a transpose") {
    const FormalEmbedding e = build_embedding(3, {3, 0, 0}, 2, 6);
    const CentralizerBasis c = centralizer_basis(e);
    CHECK(c.basis.size() == 18);
    for (unsigned x : c.twist.eps) CHECK(x == 0);
    CHECK(match_block_order(c, e).valid());
}

TEST_CASE("module type examples") {
    const FieldSpec k = make_field(2, 1, 2);
    const auto slot = diagonal_module({0, 2}, {0, 0}, k, 3);
    CHECK(slot.pi_maps[0] == SeriesMatrix::identity(k, 3, 2));
    CHECK(type_of_module(slot) == TypeVector{0, 2});
    CHECK(is_exceptional(slot));

    for (std::size_t d = 1; d <= 3; ++d) {
        for (const auto& f : all_types(d)) {
            const auto m = standard_exceptional_module(f, k, 3);
            CHECK(type_of_module(m) == f);
            CHECK(is_exceptional(m));
        }
        const auto etale = cyclic_module(static_cast<unsigned>(d), 0, k, 3);
        CHECK(type_of_module(etale) == TypeVector(d, 0));
        CHECK_FALSE(is_exceptional(etale));
        const auto super = cyclic_module(static_cast<unsigned>(d), 1, k, 3);
        CHECK(is_superspecial(super));
    }

    const auto special = standard_exceptional_module({1, 1, 1}, k, 3);
    CHECK(is_special(special));
    CHECK(is_superspecial(special));
    const auto twisted = diagonal_module({1, 1}, {1, 0}, k, 3);
    CHECK(type_of_module(twisted) == TypeVector{2, 2});
    CHECK_FALSE(is_exceptional(twisted));
}

TEST_CASE("module validation rejects broken data") {
    const FieldSpec k = make_field(3, 1, 2);
    auto m = standard_exceptional_module({1, 1}, k, 3);
    auto no_cycle = m;
    no_cycle.pi_maps[0] = SeriesMatrix::identity(k, 3, 2);
    CHECK_THROWS_AS(validate_module(no_cycle), DieudonneError);

    auto no_commute = m;
    no_commute.phi_maps[0] = SeriesMatrix::identity(k, 3, 2);
    CHECK_THROWS_AS(validate_module(no_commute), DieudonneError);

    auto degenerate = m;
    degenerate.phi_maps[0] = SeriesMatrix(k, 3, 2, 2);
    degenerate.phi_maps[1] = SeriesMatrix(k, 3, 2, 2);
    CHECK_THROWS_AS(validate_module(degenerate), TruncationError);
}

TEST_CASE("generated modules obey the predicate laws") {
    const auto modules = generate_modules(120, 3, kDefaultSeed);
    REQUIRE(modules.size() >= 100);
    std::size_t exceptional = 0, special = 0, super = 0;
    for (const auto& m : modules) {
        CHECK_NOTHROW(validate_module(m));
        for (std::size_t i = 0; i < m.d(); ++i) {
            const std::size_t j = (i + 1) % m.d();
            CHECK(m.phi_maps[j] * m.pi_maps[i].frobenius() == m.pi_maps[j] * m.phi_maps[i]);
        }
        const bool ex = is_exceptional(m);
        const bool sp = is_special(m);
        CHECK(is_superspecial(m) == (sp && ex));
        if (ex) {
            const TypeVector f = type_of_module(m);
            CHECK(std::accumulate(f.begin(), f.end(), 0U) == m.d());
        }
        exceptional += ex;
        special += sp;
        super += is_superspecial(m);
    }
    CHECK(exceptional > 0);
    CHECK(special > 0);
    CHECK(super > 0);
    CHECK(exceptional < modules.size());
}

TEST_CASE("local lattice conditions") {
    const FieldSpec k = make_field(2, 1, 3);
    const unsigned N = 4;
    const LocalLattice unit{SeriesMatrix::identity(k, N, 3), 0};
    CHECK(classify_local_behavior(unit, LocalRole::Etale, 3).holds);
    CHECK_FALSE(classify_local_behavior(unit, LocalRole::Zero, 3).holds);

    for (unsigned d = 1; d <= 3; ++d) {
        for (const auto& f : all_types(d)) {
            const auto total = total_lattice(standard_exceptional_module(f, k, N));
            const LocalCheck zero = classify_local_behavior(total, LocalRole::Zero, d);
            CHECK(zero.holds);
            CHECK(zero.length == d);
            CHECK_FALSE(classify_local_behavior(total, LocalRole::Etale, d).holds);
        }
        const LocalLattice pole = pole_model(d, k, N);
        CHECK(classify_local_behavior(pole, LocalRole::Pole, d).holds);
        CHECK_FALSE(classify_local_behavior(pole, LocalRole::Etale, d).holds);
        CHECK_FALSE(classify_local_behavior(unit, LocalRole::Pole, 3).holds);
    }
    const LocalLattice too_deep{SeriesMatrix::identity(k, N, 2).shift_up(2), 0};
    CHECK_FALSE(classify_local_behavior(too_deep, LocalRole::Zero, 2).holds);
    CHECK_THROWS_AS(classify_local_behavior({SeriesMatrix(k, N, 2, 2), 0}, LocalRole::Zero, 2),
                    TruncationError);
}
