#pragma once

#include "dmass/orders.hpp"
#include "dmass/series.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dmass {

struct DieudonneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of k{{tau}} / tau^T with tau a = Fr_q(a) tau.
class SkewSeries {
public:
    SkewSeries(FieldSpec k, unsigned precision);
    static SkewSeries monomial(const FieldElement& c, unsigned exponent, unsigned precision);

    const FieldSpec& field() const { return field_; }
    unsigned precision() const { return static_cast<unsigned>(coeffs_.size()); }
    const FieldElement& operator[](unsigned i) const { return coeffs_.at(i); }
    void set(unsigned i, const FieldElement& c);

    bool is_zero() const;
    SkewSeries operator+(const SkewSeries& o) const;
    SkewSeries operator-(const SkewSeries& o) const;
    SkewSeries operator*(const SkewSeries& o) const;
    SkewSeries& operator+=(const SkewSeries& o) { return *this = *this + o; }
    SkewSeries& operator-=(const SkewSeries& o) { return *this = *this - o; }
    friend bool operator==(const SkewSeries& a, const SkewSeries& b);
    friend bool operator!=(const SkewSeries& a, const SkewSeries& b) { return !(a == b); }

private:
    void check_same(const SkewSeries& o) const;
    FieldSpec field_;
    std::vector<FieldElement> coeffs_;
};

class SkewMatrix {
public:
    SkewMatrix(FieldSpec k, unsigned precision, std::size_t n);
    static SkewMatrix identity(const FieldSpec& k, unsigned precision, std::size_t n);
    static SkewMatrix diagonal(const std::vector<SkewSeries>& entries);

    const FieldSpec& field() const { return field_; }
    unsigned precision() const { return precision_; }
    std::size_t size() const { return n_; }
    SkewSeries& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
    const SkewSeries& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

    SkewMatrix operator+(const SkewMatrix& o) const;
    SkewMatrix operator-(const SkewMatrix& o) const;
    SkewMatrix operator*(const SkewMatrix& o) const;
    bool is_zero() const;
    friend bool operator==(const SkewMatrix& a, const SkewMatrix& b);

    // F_p coordinates ordered (row, col, tau-digit, F_p-digit).
    FpVector digits() const;
    static SkewMatrix from_digits(const FieldSpec& k, unsigned precision, std::size_t n,
                                  const FpVector& digits);

private:
    FieldSpec field_;
    unsigned precision_;
    std::size_t n_;
    std::vector<SkewSeries> entries_;
};

// Phi(Pi) = tau Id and Phi(lambda) = diag(lambda^(q^j)), the exponent j
// being the block index of the row.
struct FormalEmbedding {
    unsigned d = 0;
    TypeVector f;
    unsigned N = 0;       // pi-depth
    unsigned T = 0;       // tau-depth, T = d N
    FieldSpec base;       // F_q
    FieldSpec small;      // F_{q^d}
    FieldSpec k;          // F_{q^(2d)}
    FieldElement lambda;  // image in k of the generator of F_{q^d}
    std::vector<unsigned> blocks;
    SkewMatrix phi_pi;
    SkewMatrix phi_lambda;

    // Phi(a) for a in F_{q^d}, at the given tau precision.
    SkewMatrix phi(const FieldElement& a, unsigned precision) const;
};

// Requires sum f = d, T = d N with N >= 2, and F_{q^(2d)} within the field caps.
FormalEmbedding build_embedding(unsigned d, const TypeVector& f, std::uint64_t q, unsigned T);

// Checks that Phi is a ring map on F_{q^d} with Phi(Pi) Phi(a) = Phi(Fr(a)) Phi(Pi),
// over all of F_{q^d} or a fixed sample of it.
bool embedding_relations_hold(const FormalEmbedding& e);

// Monomial anti-automorphism data X -> g X^T g^{-1} of M_d(f, R), with
// g e_c = pi^eps_c e_perm[c].
struct MonomialTwist {
    std::vector<std::size_t> perm;
    std::vector<unsigned> eps;
};

std::optional<MonomialTwist> find_monomial_twist(const TypeVector& f);

struct CentralizerBasis {
    std::vector<SkewMatrix> basis;                 // F_q-basis of representatives
    std::vector<std::vector<unsigned>> threshold;  // tau-digits kept per entry
    MonomialTwist twist;
    unsigned guard = 0;                            // working tau precision
    std::size_t expected_dimension = 0;            // N r + (N - 1) s
    bool closed_under_products = false;
    bool contains_identity = false;
};

// Solves B Phi(lambda) = Phi(lambda) B and B Phi(Pi) = Phi(Pi) B as one
// F_p-linear system over all tau-digits, then reduces modulo the ideal that
// corresponds to pi^N M_d(R).  Throws TruncationError if the dimension
// moves when the working precision is raised.
CentralizerBasis centralizer_basis(const FormalEmbedding& e);

struct BlockOrderCertificate {
    MonomialTwist twist;
    std::vector<SeriesMatrix> images;
    bool images_in_order = false;
    bool bijective = false;
    bool anti_multiplicative = false;
    std::size_t pairs_checked = 0;
    std::size_t pairs_matched = 0;
    bool valid() const { return images_in_order && bijective && anti_multiplicative; }
};

// Theta(B) = g psi(B)^T g^{-1}, psi(B) = D^{-1} B D, D = diag(tau^j), checked
// to be a bijection onto M_d(f, R_N) reversing all basis products.
BlockOrderCertificate match_block_order(const CentralizerBasis& c, const FormalEmbedding& e);

// Graded module M_0, ..., M_{d-1}, each k[[pi]]^n truncated at pi^N, with
// Pi_i(x) = P_i x and phi_i(x) = F_i Fr(x), both M_i -> M_{i+1}.
struct GradedDieudonneModule {
    FieldSpec k;
    unsigned N = 0;
    std::vector<SeriesMatrix> pi_maps;
    std::vector<SeriesMatrix> phi_maps;

    std::size_t d() const { return pi_maps.size(); }
    std::size_t rank() const { return pi_maps.empty() ? 0 : pi_maps.front().rows(); }
};

// Throws DieudonneError unless Pi_{i+d-1} ... Pi_i = pi and phi_{i+1} Pi_i =
// Pi_{i+1} phi_i; throws TruncationError if some phi_i is not visibly injective.
void validate_module(const GradedDieudonneModule& m);

TypeVector type_of_module(const GradedDieudonneModule& m);
bool is_exceptional(const GradedDieudonneModule& m);
bool is_special(const GradedDieudonneModule& m);
bool is_superspecial(const GradedDieudonneModule& m);

// P_i = diag(pi on block i of g), F_i = P_i diag(pi^c).
GradedDieudonneModule diagonal_module(const TypeVector& g, const std::vector<unsigned>& c,
                                      const FieldSpec& k, unsigned N);
// Inclusions of the standard chain of type f, phi_i = Pi_i twisted by Frobenius.
GradedDieudonneModule standard_exceptional_module(const TypeVector& f, const FieldSpec& k,
                                                  unsigned N);
// P_i = C with C e_r = e_{r+1}, C e_{d-1} = pi e_0, and F_i = C^a.
GradedDieudonneModule cyclic_module(unsigned d, unsigned a, const FieldSpec& k, unsigned N);
// Change of basis by random G_i in GL_n(k[[pi]]).
GradedDieudonneModule twist_module(const GradedDieudonneModule& m, std::mt19937_64& rng);

// Mixed family of at least `count` valid modules with d <= max_d.
std::vector<GradedDieudonneModule> generate_modules(std::size_t count, unsigned max_d,
                                                    std::uint64_t seed);

// A lattice M = k[[pi]]^n with phi(x) = pi^s F Fr(x).
struct LocalLattice {
    SeriesMatrix F;
    int s = 0;
};

enum class LocalRole { Pole, Zero, Etale };

struct LocalCheck {
    bool holds = false;
    long long length = 0;  // length of M / phi(M), negative when phi(M) is larger
    std::string detail;
};

// Pole: phi^(d deg)(M) = pi^{-1} M.  Zero: pi M in phi(M) in M with
// M / phi(M) of length d.  Etale: phi(M) = M.
LocalCheck classify_local_behavior(const LocalLattice& m, LocalRole role, unsigned d,
                                   unsigned degree = 1);

// Direct sum of the M_i with phi acting blockwise.
LocalLattice total_lattice(const GradedDieudonneModule& m);

// Basis e_0..e_{d-1}, phi(e_i) = e_{i+1}, phi(e_{d-1}) = pi^{-1} e_0.
LocalLattice pole_model(unsigned d, const FieldSpec& k, unsigned N);

}  // namespace dmass
