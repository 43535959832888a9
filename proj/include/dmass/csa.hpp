#pragma once

#include "dmass/curve.hpp"
#include "dmass/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dmass {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed point, known only by label and degree.
struct PlaceRef {
    std::string id;
    unsigned degree = 1;

    friend bool operator==(const PlaceRef& a, const PlaceRef& b) {
        return a.id == b.id && a.degree == b.degree;
    }
};

using InvariantList = std::vector<std::pair<PlaceRef, Rational>>;

// Central simple algebra of dimension d^2 over the function field, given by
// its local invariants.  Invariants are stored in [0, 1); places with zero
// invariant are dropped.
class AlgebraSpec {
public:
    // Reduces every invariant mod 1 and checks denominators divide d and
    // the invariants sum to an integer.
    AlgebraSpec(unsigned d, const InvariantList& invariants);

    unsigned d() const { return d_; }
    Rational invariant(const PlaceRef& x) const;
    // Places with nonzero invariant, ordered by label.
    std::vector<PlaceRef> ramified() const;
    // (place, invariant) pairs for the ramified places, ordered by label.
    InvariantList entries() const;
    Rational invariant_sum() const;

    friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b);

private:
    unsigned d_;
    std::map<std::string, std::pair<PlaceRef, Rational>> inv_;
};

struct LocalIndex {
    unsigned e = 1;      // local index of the division part
    unsigned kappa = 1;  // matrix size, e * kappa = d
};

LocalIndex local_index(const AlgebraSpec& a, const PlaceRef& x);

// inv = 1/d at inf, 0 at o, inv_x(D) elsewhere; needs inv_inf(D) = 0, inv_o(D) = 1/d.
AlgebraSpec bar_algebra_exceptional(const AlgebraSpec& D, const PlaceRef& o, const PlaceRef& inf);

// inv = 1/d at inf, -1/d at o, inv_x(D) elsewhere; needs inv_o(D) = 0.
AlgebraSpec bar_algebra_supersingular(const AlgebraSpec& D, const PlaceRef& o,
                                      const PlaceRef& inf);

// Pointwise inv_x(A) + inv_x(D) mod 1.
AlgebraSpec end_algebra_invariants(const InvariantList& a, const AlgebraSpec& D);

// The invariants (o: -1/d, inf: 1/d) of the endomorphism algebra A.
InvariantList standard_end_algebra(unsigned d, const PlaceRef& o, const PlaceRef& inf);

// Class of -s/r in [0, 1); requires r >= 1 and gcd(r, s) = 1.
Rational simple_module_invariant(long long r, long long s);

// Checks that labels are unique, each label has one degree, and no degree
// is used by more places than the curve has.
void validate_places(const std::vector<PlaceRef>& places, const ZetaData& zeta);

}  // namespace dmass
