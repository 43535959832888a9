#include "doctest.h"

#include "dmass/orders.hpp"
#include "dmass/random.hpp"

using namespace dmass;

namespace {

SeriesMatrix from_rows(const TruncatedDVR& R, std::vector<std::vector<std::vector<long long>>> rows) {
    const std::size_t n = rows.size();
    SeriesMatrix m(R.residue, R.N, n, rows[0].size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            for (std::size_t t = 0; t < rows[i][j].size(); ++t) {
                m(i, j).set(static_cast<unsigned>(t), R.residue.from_int(rows[i][j][t]));
            }
        }
    }
    return m;
}

SeriesMatrix random_unit_matrix(const TruncatedDVR& R, std::size_t d, std::mt19937_64& rng) {
    for (;;) {
        SeriesMatrix g(R.residue, R.N, d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                for (unsigned t = 0; t < R.N; ++t) {
                    g(i, j).set(t, R.residue.from_index(uniform_below(rng, R.residue.size())));
                }
            }
        }
        try {
            g.inverse();
            return g;
        } catch (const std::domain_error&) {
        }
    }
}

}  // namespace

TEST_CASE("block membership examples") {
    const TruncatedDVR R(make_field(2, 1, 1), 3);
    std::mt19937_64 rng(1);
    const BlockOrder full({3, 0, 0}, R);
    for (int i = 0; i < 20; ++i) {
        SeriesMatrix m(R.residue, R.N, 3, 3);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c) m(r, c).set(0, R.residue.from_index(rng() % 2));
        }
        CHECK(block_membership(m, {3, 0, 0}));
    }
    CHECK(block_membership(from_rows(R, {{{1}, {0, 1}}, {{1}, {1}}}), {1, 1}));
    CHECK_FALSE(block_membership(from_rows(R, {{{1}, {1}}, {{1}, {1}}}), {1, 1}));
    CHECK_THROWS_AS(block_membership(from_rows(R, {{{1}, {1}}, {{1}, {1}}}), {1, 1, 1}),
                    OrderError);
    CHECK_THROWS_AS(BlockOrder({1, 0}, R), OrderError);
}

TEST_CASE("all_types lists compositions") {
    CHECK(all_types(1).size() == 1);
    CHECK(all_types(2).size() == 3);
    CHECK(all_types(3).size() == 10);
    CHECK(all_types(4).size() == 35);
}

TEST_CASE("standard chains have the requested type") {
    const TruncatedDVR R(make_field(2, 1, 1), 3);
    for (std::size_t d = 1; d <= 4; ++d) {
        for (const auto& f : all_types(d)) {
            const LatticeChain chain = standard_chain(f, R);
            CHECK(type_of_chain(chain) == f);
            CHECK(type_of_chain_by_residue_rank(chain) == f);
        }
    }
    const LatticeChain c11 = standard_chain({1, 1}, R);
    CHECK(c11.lattices[1] == SeriesMatrix::diagonal_powers(R.residue, R.N, {1, 0}));
    CHECK_THROWS_AS(standard_chain({1, 1}, TruncatedDVR(R.residue, 1)), OrderError);
}

TEST_CASE("chain types agree with the residue-rank oracle on moved chains") {
    const TruncatedDVR R(make_field(3, 1, 1), 3);
    std::mt19937_64 rng(17);
    for (std::size_t d = 2; d <= 3; ++d) {
        for (const auto& f : all_types(d)) {
            const SeriesMatrix g = random_unit_matrix(R, d, rng);
            LatticeChain chain = standard_chain(f, R);
            for (auto& l : chain.lattices) l = g * l;
            CHECK(type_of_chain(chain) == f);
            CHECK(type_of_chain_by_residue_rank(chain) == f);
        }
    }
}

TEST_CASE("hand-built chains") {
    const TruncatedDVR R(make_field(2, 1, 1), 3);
    // Lambda_1 scales only the first coordinate, later lattices are pi R^d.
    for (std::size_t d = 2; d <= 3; ++d) {
        LatticeChain chain{R, {}, {}};
        std::vector<unsigned> first(d, 0);
        first[0] = 1;
        chain.lattices.push_back(SeriesMatrix::identity(R.residue, R.N, d));
        chain.lattices.push_back(SeriesMatrix::diagonal_powers(R.residue, R.N, first));
        for (std::size_t i = 2; i < d; ++i) {
            chain.lattices.push_back(SeriesMatrix::identity(R.residue, R.N, d).shift_up(1));
        }
        chain.shifts.assign(d, 0);
        TypeVector expect(d, 0);
        expect[0] = 1;
        expect[1] = static_cast<unsigned>(d - 1);
        CHECK(type_of_chain(chain) == expect);
        CHECK(type_of_chain_by_residue_rank(chain) == expect);
    }
    // Shifts are accounted for: pi Lambda represented as (shift 1, identity).
    LatticeChain shifted{R, {SeriesMatrix::identity(R.residue, R.N, 2),
                             SeriesMatrix::identity(R.residue, R.N, 2)},
                         {0, 1}};
    CHECK(type_of_chain(shifted) == TypeVector{2, 0});
    // Not descending.
    LatticeChain bad{R, {SeriesMatrix::diagonal_powers(R.residue, R.N, {1, 0}),
                         SeriesMatrix::identity(R.residue, R.N, 2)},
                     {0, 0}};
    CHECK_THROWS_AS(type_of_chain(bad), OrderError);
}

TEST_CASE("chain stabilizer examples") {
    const TruncatedDVR R2(make_field(2, 1, 1), 3);
    CHECK(chain_stabilizer(standard_chain({1, 1}, R2)).size() == 11);
    for (std::size_t d = 1; d <= 3; ++d) {
        TypeVector f(d, 0);
        f[0] = static_cast<unsigned>(d);
        CHECK(chain_stabilizer(standard_chain(f, R2)).size() == d * d * 3);
    }
    const TruncatedDVR R(make_field(2, 1, 1), 2);
    CHECK(chain_stabilizer(standard_chain({2, 0, 1}, R)).size() == 16);
}

TEST_CASE("stabilizers equal block orders") {
    for (std::uint64_t q : {2ULL, 4ULL}) {
        const auto pe = prime_power(q);
        const FieldSpec k = make_field(pe->first, pe->second, 1);
        for (unsigned N = 2; N <= 3; ++N) {
            const TruncatedDVR R(k, N);
            for (std::size_t d = 1; d <= 3; ++d) {
                if (q == 4 && (d == 3 && N == 3)) continue;
                for (const auto& f : all_types(d)) {
                    CAPTURE(f);
                    const BlockOrder order(f, R);
                    const auto stab = chain_stabilizer(standard_chain(f, R));
                    CHECK(stab.size() == order.dimension());
                    for (const auto& g : stab) CHECK(order.contains(g));
                    CHECK(fq_span_contains(stab, order.basis()));
                }
            }
        }
    }
}

TEST_CASE("block orders sit between pi M_d(R) and M_d(R) and are closed") {
    const TruncatedDVR base(make_field(2, 1, 1), 3);
    for (unsigned N = 1; N <= 3; ++N) {
        const TruncatedDVR R(base.residue, N);
        for (std::size_t d = 1; d <= 4; ++d) {
            TypeVector full(d, 0);
            full[0] = static_cast<unsigned>(d);
            const BlockOrder maximal(full, R);
            for (const auto& f : all_types(d)) {
                CAPTURE(f);
                CAPTURE(N);
                const BlockOrder order(f, R);
                const ClosureReport rep = closure_test(order, kDefaultSeed);
                CHECK(rep.ok());
                CHECK(rep.trials >= (rep.exhaustive ? 1U : 10000U));
                for (const auto& b : maximal.basis()) CHECK(order.contains(b.shift_up(1)));
                for (const auto& b : order.basis()) CHECK(maximal.contains(b));
            }
        }
    }
}

TEST_CASE("member counts match exhaustive enumeration") {
    const FieldSpec k = make_field(2, 1, 1);
    for (unsigned N = 1; N <= 3; ++N) {
        const TruncatedDVR R(k, N);
        for (std::size_t d = 1; d <= 3; ++d) {
            const std::size_t bits = d * d * N;
            if (bits > 20) continue;
            for (const auto& f : all_types(d)) {
                const BlockOrder order(f, R);
                std::uint64_t members = 0;
                for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << bits); ++idx) {
                    SeriesMatrix m(k, N, d, d);
                    std::size_t bit = 0;
                    for (std::size_t r = 0; r < d; ++r) {
                        for (std::size_t c = 0; c < d; ++c) {
                            for (unsigned t = 0; t < N; ++t, ++bit) {
                                if ((idx >> bit) & 1U) m(r, c).set(t, k.one());
                            }
                        }
                    }
                    members += order.contains(m) ? 1 : 0;
                }
                const BlockCounts bc = block_counts(f);
                CHECK(members == (std::uint64_t{1} << (N * bc.r + (N - 1) * bc.s)));
            }
        }
    }
}

TEST_CASE("cyclic conjugation of block orders") {
    const TruncatedDVR R(make_field(2, 1, 1), 3);
    const ConjugationCertificate c11 = conjugate_type({1, 1}, R);
    CHECK(c11.verified);
    CHECK(c11.to == TypeVector{1, 1});
    CHECK(c11.u == from_rows(R, {{{0}, {0, 1}}, {{1}, {0}}}));

    const ConjugationCertificate c201 = conjugate_type({2, 0, 1}, R);
    CHECK(c201.verified);
    CHECK(c201.to == TypeVector{0, 1, 2});

    const ConjugationCertificate cmax = conjugate_type({3, 0, 0}, R);
    CHECK(cmax.verified);
    CHECK(cmax.to == TypeVector{0, 0, 3});

    for (std::size_t d = 1; d <= 4; ++d) {
        for (const auto& f : all_types(d)) CHECK(conjugate_type(f, R).verified);
    }
}
