#pragma once

#include "dmass/series.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace dmass {

struct OrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// R_N = F_q[[pi]] / pi^N.
struct TruncatedDVR {
    FieldSpec residue;  // F_q, with m = 1
    unsigned N = 1;

    TruncatedDVR(FieldSpec k, unsigned n);
    Series zero() const { return Series(residue, N); }
    Series one() const { return Series::constant(residue.one(), N); }
    Series pi_power(unsigned k) const { return Series::monomial(residue.one(), k, N); }
};

using TypeVector = std::vector<unsigned>;

// Throws OrderError unless f has d entries summing to d.
void validate_type(const TypeVector& f, std::size_t d);

// Every type vector of length d with entries summing to d.
std::vector<TypeVector> all_types(std::size_t d);

// Block index of each coordinate: the first f_0 coordinates are block 0,
// the next f_1 block 1, and so on.
std::vector<unsigned> coordinate_blocks(const TypeVector& f);

// Number of (row, col) positions in R and in pi R for M_d(f, R).
struct BlockCounts {
    std::size_t r = 0;  // block row >= block col
    std::size_t s = 0;  // block row < block col
};
BlockCounts block_counts(const TypeVector& f);

// Entries in block position (i, j) lie in R if i >= j and in pi R if i < j.
bool block_membership(const SeriesMatrix& m, const TypeVector& f);

class BlockOrder {
public:
    BlockOrder(TypeVector f, TruncatedDVR ring);

    std::size_t d() const { return f_.size(); }
    const TypeVector& type() const { return f_; }
    const TruncatedDVR& ring() const { return ring_; }
    const std::vector<unsigned>& blocks() const { return blocks_; }

    // Lowest pi-exponent allowed at (r, c): 1 above the block diagonal, else 0.
    unsigned min_valuation(std::size_t r, std::size_t c) const {
        return blocks_[r] < blocks_[c] ? 1 : 0;
    }
    bool contains(const SeriesMatrix& m) const { return block_membership(m, f_); }

    // pi^t E_rc for all allowed (r, c, t): an F_q-basis.
    std::vector<SeriesMatrix> basis() const;
    // F_q-dimension N r + (N - 1) s.
    std::size_t dimension() const;

    SeriesMatrix random_member(std::mt19937_64& rng) const;

private:
    TypeVector f_;
    TruncatedDVR ring_;
    std::vector<unsigned> blocks_;
};

// Descending chain Lambda_0 > Lambda_1 > ... > Lambda_{d-1} > pi Lambda_0.
// Each lattice is pi^shift times the column span of a full-rank matrix.
struct LatticeChain {
    TruncatedDVR ring;
    std::vector<SeriesMatrix> lattices;
    std::vector<int> shifts;
};

// Lambda_i scales the coordinates of blocks 0..i-1 by pi.
LatticeChain standard_chain(const TypeVector& f, const TruncatedDVR& ring);

// Throws OrderError unless each Lambda_{i+1} lies in Lambda_i and
// pi Lambda_0 lies in Lambda_{d-1}.
void validate_chain(const LatticeChain& chain);

// Dimensions of Lambda_i / Lambda_{i+1} (with Lambda_d = pi Lambda_0).
TypeVector type_of_chain(const LatticeChain& chain);

// Same dimensions from ranks mod pi; valid when pi R^d lies in every lattice
// and shifts are zero.
TypeVector type_of_chain_by_residue_rank(const LatticeChain& chain);

// F_q-basis of {g in M_d(R_N) : g Lambda_i in Lambda_i for all i}.
std::vector<SeriesMatrix> chain_stabilizer(const LatticeChain& chain);

// Whether every matrix of `vectors` lies in the F_q-span of `basis`.
bool fq_span_contains(const std::vector<SeriesMatrix>& basis,
                      const std::vector<SeriesMatrix>& vectors);

// Greedy F_q-basis of the F_p-span of the given digit vectors, as matrices.
std::vector<SeriesMatrix> fq_basis_from_fp(const FieldSpec& k, unsigned precision,
                                           std::size_t rows, std::size_t cols,
                                           const std::vector<FpVector>& fp_vectors);

// u M_d(f) u^{-1} = M_d(sigma f) with (sigma f)_i = f_{i+1}.
struct ConjugationCertificate {
    TypeVector from;
    TypeVector to;
    std::vector<std::size_t> perm;   // u e_c = pi^eps_c e_perm[c]
    std::vector<unsigned> eps;
    SeriesMatrix u;
    bool verified = false;
};

ConjugationCertificate conjugate_type(const TypeVector& f, const TruncatedDVR& ring);

struct ClosureReport {
    bool contains_identity = false;
    bool closed_under_addition = false;
    bool closed_under_multiplication = false;
    bool exhaustive = false;
    std::uint64_t trials = 0;
    bool ok() const {
        return contains_identity && closed_under_addition && closed_under_multiplication;
    }
};

// All pairs of members when their number is at most `exhaustive_cap`;
// otherwise `sample_trials` random pairs.
ClosureReport closure_test(const BlockOrder& order, std::uint64_t seed,
                           std::uint64_t exhaustive_cap = std::uint64_t{1} << 20,
                           std::uint64_t sample_trials = 10000);

// Closure of the F_q-span of `basis` under multiplication, checked on all
// basis pairs, plus membership of the identity.
bool span_closed_under_products(const std::vector<SeriesMatrix>& basis);

}  // namespace dmass
