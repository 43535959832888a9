#include "dmass/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace dmass {

namespace detail {

struct FieldData {
    std::uint32_t p = 0;
    unsigned e = 0;
    unsigned m = 0;
    unsigned n = 0;
    std::uint64_t q = 0;
    std::uint64_t size = 0;
    std::vector<std::uint32_t> modulus;                 // n+1 entries, monic
    std::vector<std::vector<std::uint32_t>> frob;       // frob[j] = (x^j)^q
};

struct FieldFactory {
    static FieldSpec wrap(std::shared_ptr<const FieldData> d) { return FieldSpec(std::move(d)); }
};

}  // namespace detail

namespace {

using Poly = std::vector<std::uint32_t>;  // over F_p, low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = [&] {
        // f is monic everywhere we call this, but keep it general.
        std::uint64_t inv = 1;
        std::uint64_t b = f.back() % p;
        std::uint64_t e = p - 2;
        while (e) {
            if (e & 1U) inv = inv * b % p;
            b = b * b % p;
            e >>= 1U;
        }
        return inv;
    }();
    while (a.size() > df) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * f[i]) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) {
        return {};
    }
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
        }
    }
    Poly r(acc.begin(), acc.end());
    return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& f, std::uint32_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), f, p);
    while (exp) {
        if (exp & 1U) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        exp >>= 1U;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t n = f.size() - 1;
    if (n == 1) {
        return true;
    }
    // gcd(x^(p^i) - x, f) = 1 for 1 <= i <= n/2.
    Poly xp{0, 1};
    for (std::size_t i = 1; i <= n / 2; ++i) {
        xp = poly_powmod(xp, p, f, p);
        Poly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) {
            return false;
        }
        Poly g = poly_gcd(f, diff, p);
        if (g.size() > 1) {
            return false;
        }
    }
    return true;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > (std::uint64_t{1} << 62) / base) {
            throw FieldError("field size exceeds the supported range");
        }
        r *= base;
    }
    return r;
}

FieldSpec build(std::uint32_t p, unsigned e, unsigned m, Poly modulus);

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1 || p > 0xFFFFFFFFULL) return std::nullopt;
    return std::make_pair(static_cast<std::uint32_t>(p), e);
}

// ---------------------------------------------------------------------------
// FieldSpec

std::uint32_t FieldSpec::p() const { return data_->p; }
unsigned FieldSpec::e() const { return data_->e; }
unsigned FieldSpec::m() const { return data_->m; }
unsigned FieldSpec::degree() const { return data_->n; }
std::uint64_t FieldSpec::q() const { return data_->q; }
std::uint64_t FieldSpec::size() const { return data_->size; }
const std::vector<std::uint32_t>& FieldSpec::modulus() const { return data_->modulus; }
const std::vector<std::vector<std::uint32_t>>& FieldSpec::frobenius_matrix() const {
    return data_->frob;
}

bool operator==(const FieldSpec& a, const FieldSpec& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->p == b.data_->p && a.data_->e == b.data_->e && a.data_->m == b.data_->m &&
           a.data_->modulus == b.data_->modulus;
}

FieldElement FieldSpec::zero() const { return FieldElement(*this); }

FieldElement FieldSpec::one() const { return from_int(1); }

FieldElement FieldSpec::from_int(long long v) const {
    FieldElement r(*this);
    const long long p = data_->p;
    long long c = v % p;
    if (c < 0) c += p;
    r.c_[0] = static_cast<std::uint32_t>(c);
    return r;
}

FieldElement FieldSpec::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    Poly a(coeffs.begin(), coeffs.end());
    for (auto& c : a) c %= data_->p;
    a = poly_mod(std::move(a), data_->modulus, data_->p);
    FieldElement r(*this);
    std::copy(a.begin(), a.end(), r.c_.begin());
    return r;
}

FieldElement FieldSpec::from_index(std::uint64_t index) const {
    if (index >= data_->size) {
        throw FieldError("element index out of range");
    }
    FieldElement r(*this);
    for (unsigned i = 0; i < data_->n; ++i) {
        r.c_[i] = static_cast<std::uint32_t>(index % data_->p);
        index /= data_->p;
    }
    return r;
}

FieldElement FieldSpec::variable() const {
    const std::uint32_t x[] = {0, 1};
    return from_coeffs(x);
}

std::string FieldSpec::describe() const {
    std::ostringstream os;
    os << "F_" << data_->size << " (p=" << data_->p << ", e=" << data_->e << ", m=" << data_->m
       << ")";
    return os.str();
}

FieldSpec make_field(std::uint32_t p, unsigned e, unsigned m) {
    if (!is_prime(p)) {
        throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    }
    if (p >= (1U << 16)) {
        throw FieldError("characteristic above the desk-scale cap (2^16)");
    }
    if (e == 0 || m == 0) {
        throw FieldError("exponent and extension degree must be positive");
    }
    const unsigned n = e * m;
    if (n > kMaxFieldDegree) {
        throw FieldError("e*m = " + std::to_string(n) + " exceeds the desk-scale cap of 16");
    }
    checked_pow(p, n);

    // Cache: specs are immutable, and modulus search is the expensive part.
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, unsigned, unsigned>, FieldSpec> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, e, m});
        if (it != cache.end()) return it->second;
    }

    Poly f(n + 1, 0);
    f[n] = 1;
    const std::uint64_t tails = checked_pow(p, n);
    bool found = false;
    for (std::uint64_t t = 0; t < tails && !found; ++t) {
        std::uint64_t v = t;
        for (unsigned i = 0; i < n; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (n > 1 && f[0] == 0) continue;  // divisible by x
        found = is_irreducible(f, p);
    }
    if (!found) {
        throw FieldError("no irreducible modulus found");  // unreachable for prime p
    }
    FieldSpec spec = build(p, e, m, f);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_tuple(p, e, m), spec);
    return spec;
}

FieldSpec field_with_modulus(std::uint32_t p, unsigned e, unsigned m,
                             std::vector<std::uint32_t> modulus) {
    if (!is_prime(p)) throw FieldError("characteristic is not prime");
    if (e == 0 || m == 0) throw FieldError("exponent and extension degree must be positive");
    const unsigned n = e * m;
    if (n > kMaxFieldDegree) throw FieldError("e*m exceeds the desk-scale cap of 16");
    if (modulus.size() != n + 1 || modulus.back() != 1) {
        throw FieldError("modulus must be monic of degree e*m");
    }
    for (auto c : modulus) {
        if (c >= p) throw FieldError("modulus coefficient out of range");
    }
    if (!is_irreducible(modulus, p)) {
        throw FieldError("modulus is reducible over F_p");
    }
    checked_pow(p, n);
    return build(p, e, m, std::move(modulus));
}

namespace {

FieldSpec build(std::uint32_t p, unsigned e, unsigned m, Poly modulus) {
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->e = e;
    d->m = m;
    d->n = e * m;
    d->q = checked_pow(p, e);
    d->size = checked_pow(p, d->n);
    d->modulus = std::move(modulus);
    d->frob.assign(d->n, std::vector<std::uint32_t>(d->n, 0));
    for (unsigned j = 0; j < d->n; ++j) {
        Poly xj(j + 1, 0);
        xj[j] = 1;
        Poly img = poly_powmod(xj, d->q, d->modulus, p);
        for (unsigned i = 0; i < img.size(); ++i) d->frob[j][i] = img[i];
    }
    return detail::FieldFactory::wrap(std::move(d));
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldElement

void FieldElement::check_same(const FieldElement& o) const {
    if (spec_ != o.spec_) {
        throw FieldError("arithmetic across different fields: " + spec_.describe() + " vs " +
                         o.spec_.describe());
    }
}

std::uint64_t FieldElement::index() const {
    std::uint64_t idx = 0;
    for (unsigned i = spec_.degree(); i-- > 0;) {
        idx = idx * spec_.p() + c_[i];
    }
    return idx;
}

bool FieldElement::is_zero() const {
    for (unsigned i = 0; i < spec_.degree(); ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

bool FieldElement::is_one() const { return *this == spec_.one(); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    FieldElement r(spec_);
    const std::uint32_t p = spec_.p();
    for (unsigned i = 0; i < spec_.degree(); ++i) {
        std::uint32_t s = c_[i] + o.c_[i];
        r.c_[i] = s >= p ? s - p : s;
    }
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    FieldElement r(spec_);
    const std::uint32_t p = spec_.p();
    for (unsigned i = 0; i < spec_.degree(); ++i) {
        r.c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p - o.c_[i];
    }
    return r;
}

FieldElement FieldElement::operator-() const { return spec_.zero() - *this; }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    const unsigned n = spec_.degree();
    const std::uint64_t p = spec_.p();
    const auto& f = spec_.modulus();
    std::array<std::uint64_t, 2 * kMaxFieldDegree> acc{};
    for (unsigned i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        // p < 2^16 and n <= 16, so the sums stay below 2^36.
        for (unsigned j = 0; j < n; ++j) {
            acc[i + j] += std::uint64_t{c_[i]} * o.c_[j];
        }
    }
    for (auto& a : acc) a %= p;
    for (unsigned k = 2 * n - 1; k-- > n;) {
        const std::uint64_t c = acc[k];
        if (c == 0) continue;
        acc[k] = 0;
        for (unsigned i = 0; i < n; ++i) {
            acc[k - n + i] = (acc[k - n + i] + (p - c) * f[i]) % p;
        }
    }
    FieldElement r(spec_);
    for (unsigned i = 0; i < n; ++i) r.c_[i] = static_cast<std::uint32_t>(acc[i] % p);
    return r;
}

FieldElement FieldElement::pow(std::uint64_t exp) const {
    FieldElement result = spec_.one();
    FieldElement b = *this;
    while (exp) {
        if (exp & 1U) result *= b;
        b *= b;
        exp >>= 1U;
    }
    return result;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) {
        throw FieldError("inverse of zero");
    }
    return pow(spec_.size() - 2);
}

FieldElement FieldElement::frobenius() const {
    const unsigned n = spec_.degree();
    const std::uint64_t p = spec_.p();
    const auto& fr = spec_.frobenius_matrix();
    std::array<std::uint64_t, kMaxFieldDegree> acc{};
    for (unsigned j = 0; j < n; ++j) {
        if (c_[j] == 0) continue;
        for (unsigned i = 0; i < n; ++i) {
            acc[i] = (acc[i] + std::uint64_t{c_[j]} * fr[j][i]) % p;
        }
    }
    FieldElement r(spec_);
    for (unsigned i = 0; i < n; ++i) r.c_[i] = static_cast<std::uint32_t>(acc[i]);
    return r;
}

FieldElement FieldElement::frobenius(unsigned k) const {
    FieldElement r = *this;
    for (unsigned i = 0; i < k % spec_.m(); ++i) r = r.frobenius();
    return r;
}

std::uint32_t FieldElement::absolute_trace() const {
    FieldElement acc = *this;
    FieldElement cur = *this;
    for (unsigned i = 1; i < spec_.degree(); ++i) {
        cur = cur.pow(spec_.p());
        acc += cur;
    }
    // The trace lies in F_p, i.e. is a constant.
    return acc.c_[0];
}

int FieldElement::quadratic_character() const {
    if (spec_.p() == 2) {
        throw FieldError("quadratic character requested in characteristic 2");
    }
    if (is_zero()) return 0;
    return pow((spec_.size() - 1) / 2).is_one() ? 1 : -1;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    for (unsigned i = 0; i < a.spec_.degree(); ++i) {
        if (a.c_[i] != b.c_[i]) return false;
    }
    return true;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    os << '[';
    for (unsigned i = 0; i < spec_.degree(); ++i) {
        if (i) os << ',';
        os << c_[i];
    }
    os << ']';
    return os.str();
}

std::vector<FieldElement> enumerate(const FieldSpec& spec) {
    if (spec.size() > kEnumerationCap) {
        throw FieldError("field of size " + std::to_string(spec.size()) +
                         " exceeds the enumeration cap 2^20");
    }
    std::vector<FieldElement> out;
    out.reserve(spec.size());
    for (std::uint64_t i = 0; i < spec.size(); ++i) out.push_back(spec.from_index(i));
    return out;
}

// ---------------------------------------------------------------------------
// Embeddings

FieldEmbedding::FieldEmbedding(FieldSpec source, FieldSpec target, FieldElement root)
    : source_(std::move(source)), target_(std::move(target)), root_(std::move(root)) {
    FieldElement pw = target_.one();
    for (unsigned i = 0; i < source_.degree(); ++i) {
        powers_.push_back(pw);
        pw *= root_;
    }
    auto table = std::make_shared<std::vector<std::pair<std::uint64_t, std::uint64_t>>>();
    if (source_.size() <= kEnumerationCap) {
        table->reserve(source_.size());
        for (std::uint64_t i = 0; i < source_.size(); ++i) {
            table->emplace_back((*this)(source_.from_index(i)).index(), i);
        }
        std::sort(table->begin(), table->end());
    }
    inverse_ = std::move(table);
}

FieldElement FieldEmbedding::operator()(const FieldElement& a) const {
    if (a.spec() != source_) {
        throw FieldError("embedding applied to an element of the wrong field");
    }
    FieldElement r = target_.zero();
    const auto c = a.coeffs();
    if (source_.degree() == 1) {
        return target_.from_int(c[0]);
    }
    for (unsigned i = 0; i < source_.degree(); ++i) {
        if (c[i] != 0) r += target_.from_int(c[i]) * powers_[i];
    }
    return r;
}

std::optional<FieldElement> FieldEmbedding::preimage(const FieldElement& a) const {
    if (a.spec() != target_) {
        throw FieldError("preimage requested for an element of the wrong field");
    }
    const std::uint64_t key = a.index();
    auto it = std::lower_bound(inverse_->begin(), inverse_->end(),
                               std::make_pair(key, std::uint64_t{0}));
    if (it == inverse_->end() || it->first != key) return std::nullopt;
    return source_.from_index(it->second);
}

FieldEmbedding embed(const FieldSpec& source, const FieldSpec& target) {
    if (source.p() != target.p() || source.e() != target.e()) {
        throw FieldError("embedding requires a common base field F_q");
    }
    if (target.m() % source.m() != 0) {
        throw FieldError("embedding requires the source degree to divide the target degree");
    }
    using Key = std::tuple<std::uint32_t, unsigned, unsigned, unsigned, std::vector<std::uint32_t>,
                           std::vector<std::uint32_t>>;
    static std::mutex mu;
    static std::map<Key, FieldEmbedding> cache;
    Key key{source.p(), source.e(), source.m(), target.m(), source.modulus(), target.modulus()};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const auto& f = source.modulus();
    std::optional<FieldElement> root;
    if (source.degree() == 1) {
        // x - a with a = -f[0].
        root = target.from_int(source.p() - f[0]);
    } else {
        if (target.size() > kEnumerationCap) {
            throw FieldError("embedding search exceeds the enumeration cap");
        }
        for (std::uint64_t i = 0; i < target.size() && !root; ++i) {
            FieldElement z = target.from_index(i);
            FieldElement acc = target.zero();
            for (std::size_t k = f.size(); k-- > 0;) {
                acc = acc * z + target.from_int(f[k]);
            }
            if (acc.is_zero()) root = z;
        }
    }
    if (!root) {
        throw FieldError("source modulus has no root in the target field");
    }
    FieldEmbedding emb(source, target, *root);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), emb);
    return emb;
}

}  // namespace dmass
