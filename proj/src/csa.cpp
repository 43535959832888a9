#include "dmass/csa.hpp"

#include <numeric>

namespace dmass {

AlgebraSpec::AlgebraSpec(unsigned d, const InvariantList& invariants) : d_(d) {
    if (d == 0) throw AlgebraError("algebra degree d must be positive");
    for (const auto& [place, value] : invariants) {
        if (place.degree == 0) throw AlgebraError("place '" + place.id + "' has degree 0");
        auto it = inv_.find(place.id);
        if (it != inv_.end()) {
            throw AlgebraError("place '" + place.id + "' listed twice");
        }
        const Rational r = value.mod_one();
        if (d % r.den() != 0) {
            throw AlgebraError("invariant " + r.to_string() + " at '" + place.id +
                               "' has denominator not dividing d = " + std::to_string(d));
        }
        if (!r.is_zero()) inv_.emplace(place.id, std::make_pair(place, r));
    }
    if (!invariant_sum().is_integer()) {
        throw AlgebraError("invariants sum to " + invariant_sum().to_string() +
                           ", which is not an integer");
    }
}

Rational AlgebraSpec::invariant(const PlaceRef& x) const {
    auto it = inv_.find(x.id);
    if (it == inv_.end()) return Rational(0);
    if (it->second.first.degree != x.degree) {
        throw AlgebraError("place '" + x.id + "' used with two different degrees");
    }
    return it->second.second;
}

std::vector<PlaceRef> AlgebraSpec::ramified() const {
    std::vector<PlaceRef> out;
    for (const auto& [id, entry] : inv_) out.push_back(entry.first);
    return out;
}

InvariantList AlgebraSpec::entries() const {
    InvariantList out;
    for (const auto& [id, entry] : inv_) out.push_back(entry);
    return out;
}

Rational AlgebraSpec::invariant_sum() const {
    Rational s(0);
    for (const auto& [id, entry] : inv_) s += entry.second;
    return s;
}

bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    if (a.d_ != b.d_ || a.inv_.size() != b.inv_.size()) return false;
    for (const auto& [id, entry] : a.inv_) {
        auto it = b.inv_.find(id);
        if (it == b.inv_.end() || !(it->second.first == entry.first) ||
            it->second.second != entry.second) {
            return false;
        }
    }
    return true;
}

LocalIndex local_index(const AlgebraSpec& a, const PlaceRef& x) {
    const Rational inv = a.invariant(x);
    const BigInt den = inv.den();
    if (a.d() % den != 0) throw AlgebraError("local index does not divide d");
    LocalIndex li;
    li.e = static_cast<unsigned>(den);
    li.kappa = a.d() / li.e;
    return li;
}

namespace {

void check_distinct(const PlaceRef& o, const PlaceRef& inf) {
    if (o.id == inf.id) throw AlgebraError("o and infinity must be distinct places");
}

InvariantList copy_others(const AlgebraSpec& D, const PlaceRef& o, const PlaceRef& inf) {
    InvariantList out;
    for (const auto& [place, value] : D.entries()) {
        if (place.id != o.id && place.id != inf.id) out.emplace_back(place, value);
    }
    return out;
}

}  // namespace

AlgebraSpec bar_algebra_exceptional(const AlgebraSpec& D, const PlaceRef& o, const PlaceRef& inf) {
    check_distinct(o, inf);
    const unsigned d = D.d();
    if (!D.invariant(inf).is_zero()) throw AlgebraError("D must be split at infinity");
    if (D.invariant(o) != Rational(1, d).mod_one()) {
        throw AlgebraError("D must have invariant 1/d at o");
    }
    InvariantList out = copy_others(D, o, inf);
    out.emplace_back(inf, Rational(1, d));
    out.emplace_back(o, Rational(0));
    return AlgebraSpec(d, out);
}

AlgebraSpec bar_algebra_supersingular(const AlgebraSpec& D, const PlaceRef& o,
                                      const PlaceRef& inf) {
    check_distinct(o, inf);
    const unsigned d = D.d();
    if (!D.invariant(o).is_zero()) throw AlgebraError("D must be unramified at o");
    InvariantList out = copy_others(D, o, inf);
    out.emplace_back(inf, Rational(1, d));
    out.emplace_back(o, Rational(-1, d));
    return AlgebraSpec(d, out);
}

AlgebraSpec end_algebra_invariants(const InvariantList& a, const AlgebraSpec& D) {
    std::map<std::string, std::pair<PlaceRef, Rational>> sum;
    for (const auto& [place, value] : D.entries()) sum[place.id] = {place, value};
    for (const auto& [place, value] : a) {
        auto it = sum.find(place.id);
        if (it == sum.end()) {
            sum[place.id] = {place, value};
        } else {
            if (it->second.first.degree != place.degree) {
                throw AlgebraError("place '" + place.id + "' used with two different degrees");
            }
            it->second.second += value;
        }
    }
    InvariantList out;
    for (const auto& [id, entry] : sum) out.push_back(entry);
    return AlgebraSpec(D.d(), out);
}

InvariantList standard_end_algebra(unsigned d, const PlaceRef& o, const PlaceRef& inf) {
    return {{o, Rational(-1, d)}, {inf, Rational(1, d)}};
}

Rational simple_module_invariant(long long r, long long s) {
    if (r < 1) throw AlgebraError("r must be positive");
    if (std::gcd(r, s) != 1) throw AlgebraError("r and s must be coprime");
    return Rational(-s, r).mod_one();
}

void validate_places(const std::vector<PlaceRef>& places, const ZetaData& zeta) {
    std::map<std::string, unsigned> degree_of;
    std::map<unsigned, BigInt> used;
    for (const auto& x : places) {
        if (x.degree == 0) throw AlgebraError("place '" + x.id + "' has degree 0");
        auto [it, fresh] = degree_of.emplace(x.id, x.degree);
        if (!fresh) {
            if (it->second != x.degree) {
                throw AlgebraError("place '" + x.id + "' used with two different degrees");
            }
            continue;
        }
        ++used[x.degree];
    }
    for (const auto& [deg, count] : used) {
        const BigInt avail = places_of_degree(zeta, deg);
        if (count > avail) {
            throw AlgebraError("configuration uses " + to_string(count) + " places of degree " +
                               std::to_string(deg) + " but the curve has only " +
                               to_string(avail));
        }
    }
}

}  // namespace dmass
