#include "dmass/curve.hpp"

#include <algorithm>
#include <thread>

namespace dmass {

namespace {

void trim(FqPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int degree(const FqPoly& a) { return static_cast<int>(a.size()) - 1; }

FieldElement coeff(const FqPoly& a, int i, const FieldSpec& k) {
    return (i >= 0 && i < static_cast<int>(a.size())) ? a[i] : k.zero();
}

FqPoly add(const FqPoly& a, const FqPoly& b, const FieldSpec& k) {
    FqPoly r(std::max(a.size(), b.size()), k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

FqPoly mul(const FqPoly& a, const FqPoly& b, const FieldSpec& k) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1, k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

FqPoly scale(const FqPoly& a, const FieldElement& c) {
    FqPoly r;
    for (const auto& x : a) r.push_back(x * c);
    trim(r);
    return r;
}

FqPoly derivative(const FqPoly& a, const FieldSpec& k) {
    FqPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) {
        r.push_back(a[i] * k.from_int(static_cast<long long>(i)));
    }
    trim(r);
    return r;
}

FqPoly poly_mod(FqPoly a, const FqPoly& b) {
    const FieldElement lead_inv = b.back().inverse();
    while (!a.empty() && a.size() >= b.size()) {
        const FieldElement c = a.back() * lead_inv;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    return a;
}

FqPoly poly_gcd(FqPoly a, FqPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        FqPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

FieldElement eval(const FqPoly& a, const FieldElement& x) {
    FieldElement acc = x.spec().zero();
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

// Number of v in K with v^2 + c v = d.
unsigned fibre(const FieldElement& c, const FieldElement& d) {
    const FieldSpec& k = c.spec();
    if (k.p() == 2) {
        if (c.is_zero()) return 1;
        const FieldElement t = d * (c * c).inverse();
        return t.absolute_trace() == 0 ? 2 : 0;
    }
    const FieldElement disc = c * c + k.from_int(4) * d;
    return static_cast<unsigned>(1 + disc.quadratic_character());
}

struct Lifted {
    FieldSpec ext;
    FqPoly f;
    FqPoly h;
};

Lifted lift(const CurveModel& curve, unsigned m) {
    const FieldSpec& base = curve.base();
    FieldSpec ext = m == 1 ? base : make_field(base.p(), base.e(), m);
    if (ext.size() > kEnumerationCap) {
        throw CurveError("q^m = " + std::to_string(ext.size()) + " exceeds the enumeration cap");
    }
    const FieldEmbedding emb = embed(base, ext);
    Lifted out{ext, {}, {}};
    for (const auto& c : curve.f()) out.f.push_back(emb(c));
    for (const auto& c : curve.h()) out.h.push_back(emb(c));
    return out;
}

}  // namespace

CurveModel CurveModel::projective_line(FieldSpec base) {
    if (base.m() != 1) throw CurveError("curve base must be F_q itself (m = 1)");
    return CurveModel(CurveKind::ProjectiveLine, std::move(base));
}

CurveModel CurveModel::elliptic(FieldSpec base, const std::array<FieldElement, 5>& a) {
    if (base.m() != 1) throw CurveError("curve base must be F_q itself (m = 1)");
    for (const auto& c : a) {
        if (c.spec() != base) throw CurveError("Weierstrass coefficient from a different field");
    }
    CurveModel c(CurveKind::Elliptic, base);
    c.weierstrass_ = a;
    c.genus_ = 1;
    c.h_ = {a[2], a[0]};
    c.f_ = {a[4], a[3], a[1], base.one()};
    trim(c.h_);
    trim(c.f_);
    if (c.discriminant().is_zero()) throw CurveError("Weierstrass discriminant vanishes");
    return c;
}

CurveModel CurveModel::hyperelliptic(FieldSpec base, FqPoly f, FqPoly h, unsigned genus,
                                     std::optional<unsigned> infinity_over_base) {
    if (base.m() != 1) throw CurveError("curve base must be F_q itself (m = 1)");
    for (const auto& c : f) {
        if (c.spec() != base) throw CurveError("coefficient of f from a different field");
    }
    for (const auto& c : h) {
        if (c.spec() != base) throw CurveError("coefficient of h from a different field");
    }
    CurveModel c(CurveKind::Hyperelliptic, std::move(base));
    trim(f);
    trim(h);
    c.f_ = std::move(f);
    c.h_ = std::move(h);
    c.genus_ = genus;
    c.infinity_override_ = infinity_over_base;
    c.validate_hyperelliptic();
    return c;
}

void CurveModel::validate_hyperelliptic() {
    const FieldSpec& k = base_;
    const int df = degree(f_);
    if (df < 1) throw CurveError("f must have positive degree");
    const int g_model = (df - 1) / 2;
    if (g_model != static_cast<int>(genus_)) {
        throw CurveError("stated genus " + std::to_string(genus_) + " does not match deg f = " +
                         std::to_string(df) + " (expected " + std::to_string(g_model) + ")");
    }
    const int g = g_model;
    if (degree(h_) > g + 1) throw CurveError("deg h exceeds g + 1");

    if (k.p() == 2) {
        if (h_.empty()) throw CurveError("h = 0 gives a singular curve in characteristic 2");
        const FqPoly fd = derivative(f_, k);
        const FqPoly hd = derivative(h_, k);
        const FqPoly cond = add(mul(fd, fd, k), mul(mul(hd, hd, k), f_, k), k);
        if (degree(poly_gcd(h_, cond)) > 0) throw CurveError("affine model is singular");
        const FieldElement c = coeff(h_, g + 1, k);
        const FieldElement f1 = coeff(f_, 2 * g + 1, k);
        const FieldElement h1 = coeff(h_, g, k);
        const FieldElement f0 = coeff(f_, 2 * g + 2, k);
        if (c.is_zero() && (f1 * f1 + h1 * h1 * f0).is_zero()) {
            throw CurveError("model is singular at infinity");
        }
    } else {
        const FqPoly big = add(mul(h_, h_, k), scale(f_, k.from_int(4)), k);
        const int db = degree(big);
        if (db != 2 * g + 1 && db != 2 * g + 2) {
            throw CurveError("h^2 + 4f has degree incompatible with the genus");
        }
        if (degree(poly_gcd(big, derivative(big, k))) > 0) {
            throw CurveError("h^2 + 4f is not squarefree; the model is singular");
        }
    }

    if (infinity_override_) {
        const unsigned v = *infinity_override_;
        if (v > 2) throw CurveError("points at infinity must be 0, 1 or 2");
        const bool ramified = coeff(h_, g + 1, k).is_zero() && coeff(f_, 2 * g + 2, k).is_zero();
        if (ramified && v != 1) {
            throw CurveError("odd-degree model has exactly one point at infinity");
        }
    }
}

unsigned CurveModel::points_at_infinity(unsigned m) const {
    switch (kind_) {
        case CurveKind::ProjectiveLine:
        case CurveKind::Elliptic:
            return 1;
        case CurveKind::Hyperelliptic:
            break;
    }
    if (infinity_override_) {
        const unsigned v = *infinity_override_;
        if (v == 0) return m % 2 == 0 ? 2 : 0;
        return v;
    }
    const int g = static_cast<int>(genus_);
    FieldSpec ext = m == 1 ? base_ : make_field(base_.p(), base_.e(), m);
    const FieldEmbedding emb = embed(base_, ext);
    return fibre(emb(coeff(h_, g + 1, base_)), emb(coeff(f_, 2 * g + 2, base_)));
}

FieldElement CurveModel::discriminant() const {
    if (!weierstrass_) throw CurveError("discriminant is defined for Weierstrass models only");
    const auto& [a1, a2, a3, a4, a6] = *weierstrass_;
    const FieldSpec& k = base_;
    auto n = [&](long long v) { return k.from_int(v); };
    const FieldElement b2 = a1 * a1 + n(4) * a2;
    const FieldElement b4 = n(2) * a4 + a1 * a3;
    const FieldElement b6 = a3 * a3 + n(4) * a6;
    const FieldElement b8 = a1 * a1 * a6 + n(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -(b2 * b2 * b8) - n(8) * b4 * b4 * b4 - n(27) * b6 * b6 + n(9) * b2 * b4 * b6;
}

BigInt count_points(const CurveModel& curve, unsigned m, unsigned threads) {
    if (m == 0) throw CurveError("extension degree must be positive");
    if (curve.kind() == CurveKind::ProjectiveLine) {
        const BigInt qm = ipow(BigInt(curve.q()), m);
        return qm + 1;
    }
    const Lifted L = lift(curve, m);
    const std::uint64_t n = L.ext.size();
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, n / 4096)));

    std::vector<std::uint64_t> partial(threads, 0);
    auto work = [&](unsigned t) {
        const std::uint64_t lo = n * t / threads;
        const std::uint64_t hi = n * (t + 1) / threads;
        std::uint64_t acc = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const FieldElement x = L.ext.from_index(i);
            acc += fibre(eval(L.h, x), eval(L.f, x));
        }
        partial[t] = acc;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    BigInt total = curve.points_at_infinity(m);
    for (auto v : partial) total += v;
    return total;
}

BigInt count_points_naive(const CurveModel& curve, unsigned m) {
    if (curve.kind() == CurveKind::ProjectiveLine) {
        // Affine line plus one point, counted by enumeration.
        FieldSpec ext = m == 1 ? curve.base() : make_field(curve.base().p(), curve.base().e(), m);
        return BigInt(enumerate(ext).size()) + 1;
    }
    const Lifted L = lift(curve, m);
    const auto elems = enumerate(L.ext);
    BigInt total = curve.points_at_infinity(m);
    for (const auto& x : elems) {
        const FieldElement hx = eval(L.h, x);
        const FieldElement fx = eval(L.f, x);
        for (const auto& y : elems) {
            if ((y * y + hx * y - fx).is_zero()) ++total;
        }
    }
    return total;
}

std::vector<BigInt> zeta_numerator(const std::vector<BigInt>& counts, std::uint64_t q, unsigned g) {
    if (counts.size() != 2 * static_cast<std::size_t>(g)) {
        throw CurveError("expected exactly 2g = " + std::to_string(2 * g) + " point counts");
    }
    std::vector<BigInt> s(2 * g + 1);
    for (unsigned m = 1; m <= 2 * g; ++m) s[m] = ipow(BigInt(q), m) + 1 - counts[m - 1];
    std::vector<BigInt> p(2 * g + 1);
    p[0] = 1;
    for (unsigned k = 1; k <= 2 * g; ++k) {
        BigInt acc = 0;
        for (unsigned i = 1; i <= k; ++i) acc += s[i] * p[k - i];
        if (acc % k != 0) {
            throw CurveError("point counts give a non-integral zeta coefficient at T^" +
                             std::to_string(k));
        }
        p[k] = -acc / k;
    }
    for (unsigned j = 0; j <= g; ++j) {
        if (p[2 * g - j] != ipow(BigInt(q), g - j) * p[j]) {
            throw CurveError("functional equation fails at coefficient " + std::to_string(j) +
                             "; counts are inconsistent with genus " + std::to_string(g));
        }
    }
    return p;
}

ZetaData make_zeta(const std::vector<BigInt>& counts, std::uint64_t q, unsigned g) {
    ZetaData z;
    z.q = q;
    z.g = g;
    z.counts = counts;
    z.numerator = zeta_numerator(counts, q, g);
    z.class_number = class_number(z);
    if (z.class_number <= 0) throw CurveError("class number P(1) must be positive");
    return z;
}

ZetaData compute_zeta(const CurveModel& curve) {
    std::vector<BigInt> counts;
    for (unsigned m = 1; m <= 2 * curve.genus(); ++m) counts.push_back(count_points(curve, m));
    return make_zeta(counts, curve.q(), curve.genus());
}

BigInt class_number(const ZetaData& z) {
    BigInt h = 0;
    for (const auto& c : z.numerator) h += c;
    return h;
}

Rational zeta_special(const ZetaData& z, unsigned i) {
    if (i == 0) throw CurveError("special values are taken at s = -i with i >= 1");
    const BigInt x = ipow(BigInt(z.q), i);
    BigInt val = 0;
    for (std::size_t k = z.numerator.size(); k-- > 0;) val = val * x + z.numerator[k];
    const BigInt den = (1 - x) * (1 - x * z.q);
    return Rational(val, den);
}

BigInt count_from_numerator(const ZetaData& z, unsigned m) {
    if (m == 0) throw CurveError("extension degree must be positive");
    const unsigned two_g = 2 * z.g;
    std::vector<BigInt> s(m + 1);
    for (unsigned n = 1; n <= m; ++n) {
        // s_n + p_1 s_{n-1} + ... + p_{n-1} s_1 + n p_n = 0.
        BigInt acc = n <= two_g ? BigInt(n) * z.numerator[n] : BigInt(0);
        for (unsigned i = 1; i < n && i <= two_g; ++i) acc += z.numerator[i] * s[n - i];
        s[n] = -acc;
    }
    return ipow(BigInt(z.q), m) + 1 - s[m];
}

BigInt places_of_degree(const ZetaData& z, unsigned r) {
    if (r == 0) throw CurveError("place degree must be positive");
    auto mobius = [](unsigned n) {
        int mu = 1;
        for (unsigned p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
        return n > 1 ? -mu : mu;
    };
    BigInt acc = 0;
    for (unsigned d = 1; d <= r; ++d) {
        if (r % d) continue;
        const int mu = mobius(r / d);
        if (mu != 0) acc += mu * count_from_numerator(z, d);
    }
    if (acc % r != 0) throw CurveError("place count is not integral");
    return acc / r;
}

std::vector<BigInt> zeta_series(const ZetaData& z, unsigned bound) {
    // 1/((1-T)(1-qT)) has coefficients (q^(n+1) - 1)/(q - 1).
    std::vector<BigInt> geo(bound + 1);
    BigInt pw = 1;
    BigInt sum = 0;
    for (unsigned n = 0; n <= bound; ++n) {
        sum += pw;
        geo[n] = sum;
        pw *= z.q;
    }
    std::vector<BigInt> out(bound + 1, 0);
    for (unsigned n = 0; n <= bound; ++n) {
        for (unsigned k = 0; k <= n && k < z.numerator.size(); ++k) out[n] += z.numerator[k] * geo[n - k];
    }
    return out;
}

}  // namespace dmass
