#include "dmass/rational.hpp"

#include <stdexcept>

namespace dmass {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    value_ = boost::multiprecision::cpp_rational(num, den);
}

Rational Rational::from_strings(const std::string& num, const std::string& den) {
    return Rational(parse_bigint(num), parse_bigint(den));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw std::domain_error("division by zero rational");
    }
    value_ /= o.value_;
    return *this;
}

Rational Rational::mod_one() const {
    BigInt n = num();
    BigInt d = den();
    BigInt r = n % d;
    if (r < 0) {
        r += d;
    }
    return Rational(r, d);
}

std::string Rational::to_string() const {
    if (is_integer()) {
        return dmass::to_string(num());
    }
    return dmass::to_string(num()) + "/" + dmass::to_string(den());
}

BigInt ipow(const BigInt& base, unsigned exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1U) {
            result *= b;
        }
        b *= b;
        exp >>= 1U;
    }
    return result;
}

BigInt parse_bigint(const std::string& s) {
    if (s.empty()) {
        throw std::invalid_argument("empty integer string");
    }
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) {
        throw std::invalid_argument("malformed integer '" + s + "'");
    }
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            throw std::invalid_argument("malformed integer '" + s + "'");
        }
    }
    BigInt v(s[0] == '+' ? s.substr(1) : s);
    return v;
}

std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace dmass
