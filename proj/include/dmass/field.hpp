#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmass {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr unsigned kMaxFieldDegree = 16;
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;

namespace detail {
struct FieldData;
struct FieldFactory;
}

class FieldElement;

// F_{q^m} with q = p^e, realized as F_p[x]/(modulus), deg modulus = e*m.
// Specs compare by value, so two independently built copies of the same
// field interoperate.
class FieldSpec {
public:
    std::uint32_t p() const;
    unsigned e() const;
    unsigned m() const;
    unsigned degree() const;      // e*m, dimension over F_p
    std::uint64_t q() const;      // p^e
    std::uint64_t size() const;   // p^(e*m)
    const std::vector<std::uint32_t>& modulus() const;  // low degree first, monic

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long v) const;
    FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
    FieldElement from_index(std::uint64_t index) const;
    // Class of x; generates the field over F_p.
    FieldElement variable() const;

    // Fr_q as an F_p-linear map, column j = image of x^j.
    const std::vector<std::vector<std::uint32_t>>& frobenius_matrix() const;

    std::string describe() const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b);
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

private:
    friend FieldSpec make_field(std::uint32_t p, unsigned e, unsigned m);
    friend FieldSpec field_with_modulus(std::uint32_t, unsigned, unsigned,
                                        std::vector<std::uint32_t>);
    friend class FieldElement;
    friend struct detail::FieldFactory;
    explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> data_;
};

// Lexicographically smallest monic irreducible modulus of degree e*m over F_p,
// comparing coefficient lists from the leading term down.
FieldSpec make_field(std::uint32_t p, unsigned e, unsigned m);

// Explicit modulus (low degree first, monic); verified irreducible.
FieldSpec field_with_modulus(std::uint32_t p, unsigned e, unsigned m,
                             std::vector<std::uint32_t> modulus);

bool is_prime(std::uint64_t n);

// (p, e) with q = p^e, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q);

class FieldElement {
public:
    const FieldSpec& spec() const { return spec_; }
    std::span<const std::uint32_t> coeffs() const { return {c_.data(), spec_.degree()}; }
    std::uint64_t index() const;

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inverse() const;
    FieldElement pow(std::uint64_t exp) const;
    // a^q, and its k-th iterate a^(q^k).
    FieldElement frobenius() const;
    FieldElement frobenius(unsigned k) const;

    // Tr to F_p, as an integer in [0, p).
    std::uint32_t absolute_trace() const;
    // a^((size-1)/2) in {0, 1, -1}; odd characteristic only.
    int quadratic_character() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    std::string to_string() const;

private:
    friend class FieldSpec;
    explicit FieldElement(FieldSpec s) : spec_(std::move(s)) {}
    void check_same(const FieldElement& o) const;

    FieldSpec spec_;
    std::array<std::uint32_t, kMaxFieldDegree> c_{};
};

// Every element once, in increasing index order (index = sum c_i p^i).
std::vector<FieldElement> enumerate(const FieldSpec& spec);

// Ring embedding F_{q^a} -> F_{q^b}, a | b, sending x to the first root of
// the source modulus in the target (enumeration order).  Cached per pair.
class FieldEmbedding {
public:
    FieldEmbedding(FieldSpec source, FieldSpec target, FieldElement root);

    const FieldSpec& source() const { return source_; }
    const FieldSpec& target() const { return target_; }
    const FieldElement& root() const { return root_; }

    FieldElement operator()(const FieldElement& a) const;
    // Inverse image when a lies in the image, by table lookup.
    std::optional<FieldElement> preimage(const FieldElement& a) const;

private:
    FieldSpec source_;
    FieldSpec target_;
    FieldElement root_;
    std::vector<FieldElement> powers_;  // root^0 .. root^(deg-1)
    std::shared_ptr<const std::vector<std::pair<std::uint64_t, std::uint64_t>>> inverse_;
};

FieldEmbedding embed(const FieldSpec& source, const FieldSpec& target);

}  // namespace dmass
