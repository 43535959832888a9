#include "dmass/dieudonne.hpp"

#include "dmass/random.hpp"

#include <algorithm>
#include <numeric>

namespace dmass {

SkewSeries::SkewSeries(FieldSpec k, unsigned precision)
    : field_(std::move(k)), coeffs_(precision, field_.zero()) {
    if (precision == 0) throw DieudonneError("skew series precision must be positive");
}

SkewSeries SkewSeries::monomial(const FieldElement& c, unsigned exponent, unsigned precision) {
    SkewSeries s(c.spec(), precision);
    if (exponent < precision) s.coeffs_[exponent] = c;
    return s;
}

void SkewSeries::set(unsigned i, const FieldElement& c) {
    if (c.spec() != field_) throw DieudonneError("coefficient from a different field");
    coeffs_.at(i) = c;
}

bool SkewSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const FieldElement& c) { return c.is_zero(); });
}

void SkewSeries::check_same(const SkewSeries& o) const {
    if (field_ != o.field_ || coeffs_.size() != o.coeffs_.size()) {
        throw DieudonneError("skew series with different fields or precisions");
    }
}

SkewSeries SkewSeries::operator+(const SkewSeries& o) const {
    check_same(o);
    SkewSeries r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

SkewSeries SkewSeries::operator-(const SkewSeries& o) const {
    check_same(o);
    SkewSeries r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

// (sum a_i tau^i)(sum b_j tau^j) = sum a_i Fr^i(b_j) tau^(i+j).
SkewSeries SkewSeries::operator*(const SkewSeries& o) const {
    check_same(o);
    const unsigned T = precision();
    SkewSeries r(field_, T);
    for (unsigned i = 0; i < T; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (unsigned j = 0; i + j < T; ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j].frobenius(i);
        }
    }
    return r;
}

bool operator==(const SkewSeries& a, const SkewSeries& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
}

SkewMatrix::SkewMatrix(FieldSpec k, unsigned precision, std::size_t n)
    : field_(k), precision_(precision), n_(n), entries_(n * n, SkewSeries(k, precision)) {}

SkewMatrix SkewMatrix::identity(const FieldSpec& k, unsigned precision, std::size_t n) {
    SkewMatrix m(k, precision, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i).set(0, k.one());
    return m;
}

SkewMatrix SkewMatrix::diagonal(const std::vector<SkewSeries>& entries) {
    if (entries.empty()) throw DieudonneError("empty diagonal");
    SkewMatrix m(entries[0].field(), entries[0].precision(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

SkewMatrix SkewMatrix::operator+(const SkewMatrix& o) const {
    if (n_ != o.n_) throw DieudonneError("matrix size mismatch");
    SkewMatrix r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
    return r;
}

SkewMatrix SkewMatrix::operator-(const SkewMatrix& o) const {
    if (n_ != o.n_) throw DieudonneError("matrix size mismatch");
    SkewMatrix r = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= o.entries_[i];
    return r;
}

SkewMatrix SkewMatrix::operator*(const SkewMatrix& o) const {
    if (n_ != o.n_ || precision_ != o.precision_) throw DieudonneError("matrix shape mismatch");
    SkewMatrix r(field_, precision_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t l = 0; l < n_; ++l) {
            const SkewSeries& a = (*this)(i, l);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                const SkewSeries& b = o(l, j);
                if (!b.is_zero()) r(i, j) += a * b;
            }
        }
    }
    return r;
}

bool SkewMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const SkewSeries& s) { return s.is_zero(); });
}

bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
    return a.n_ == b.n_ && a.precision_ == b.precision_ && a.entries_ == b.entries_;
}

FpVector SkewMatrix::digits() const {
    const unsigned deg = field_.degree();
    FpVector v;
    v.reserve(entries_.size() * precision_ * deg);
    for (const auto& e : entries_) {
        for (unsigned i = 0; i < precision_; ++i) {
            const auto c = e[i].coeffs();
            v.insert(v.end(), c.begin(), c.end());
        }
    }
    return v;
}

SkewMatrix SkewMatrix::from_digits(const FieldSpec& k, unsigned precision, std::size_t n,
                                   const FpVector& digits) {
    const unsigned deg = k.degree();
    if (digits.size() != n * n * precision * deg) throw DieudonneError("digit vector has wrong length");
    SkewMatrix m(k, precision, n);
    std::size_t pos = 0;
    for (auto& e : m.entries_) {
        for (unsigned i = 0; i < precision; ++i, pos += deg) {
            e.set(i, k.from_coeffs(std::span<const std::uint32_t>(digits.data() + pos, deg)));
        }
    }
    return m;
}

namespace {

SkewMatrix scaled(const SkewMatrix& m, const FieldElement& c) {
    SkewMatrix r = m;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            for (unsigned t = 0; t < m.precision(); ++t) {
                if (!m(i, j)[t].is_zero()) r(i, j).set(t, c * m(i, j)[t]);
            }
        }
    }
    return r;
}

}  // namespace

SkewMatrix FormalEmbedding::phi(const FieldElement& a, unsigned precision) const {
    if (a.spec() != small) throw DieudonneError("element is not in F_{q^d}");
    const FieldEmbedding emb = embed(small, k);
    const FieldElement image = emb(a);
    std::vector<SkewSeries> diag;
    for (std::size_t r = 0; r < d; ++r) {
        diag.push_back(SkewSeries::monomial(image.frobenius(blocks[r]), 0, precision));
    }
    return SkewMatrix::diagonal(diag);
}

FormalEmbedding build_embedding(unsigned d, const TypeVector& f, std::uint64_t q, unsigned T) {
    if (d == 0) throw DieudonneError("d must be positive");
    try {
        validate_type(f, d);
    } catch (const OrderError& err) {
        throw DieudonneError(err.what());
    }
    const auto pe = prime_power(q);
    if (!pe) throw DieudonneError("q = " + std::to_string(q) + " is not a prime power");
    if (T < 2 * d) throw DieudonneError("truncation T must be at least 2d");
    if (T % d != 0) throw DieudonneError("truncation T must equal d N");
    if (pe->second * 2 * d > kMaxFieldDegree) {
        throw DieudonneError("F_{q^(2d)} exceeds the supported field degree");
    }
    const FieldSpec small = make_field(pe->first, pe->second, d);
    const FieldSpec k = make_field(pe->first, pe->second, 2 * d);
    const FieldElement lambda = embed(small, k)(small.variable());
    FormalEmbedding e{d,
                      f,
                      T / d,
                      T,
                      make_field(pe->first, pe->second, 1),
                      small,
                      k,
                      lambda,
                      coordinate_blocks(f),
                      SkewMatrix(k, T, d),
                      SkewMatrix(k, T, d)};
    e.phi_pi = SkewMatrix::diagonal(
        std::vector<SkewSeries>(d, SkewSeries::monomial(k.one(), 1, T)));
    e.phi_lambda = e.phi(small.variable(), T);
    return e;
}

bool embedding_relations_hold(const FormalEmbedding& e) {
    const unsigned T = e.T;
    std::vector<FieldElement> elems = enumerate(e.small);
    if (elems.size() > 64) {
        std::mt19937_64 rng(kDefaultSeed);
        std::shuffle(elems.begin(), elems.end(), rng);
        elems.erase(elems.begin() + 64, elems.end());
    }
    if (!(e.phi_pi == SkewMatrix::diagonal(std::vector<SkewSeries>(
                          e.d, SkewSeries::monomial(e.k.one(), 1, T))))) {
        return false;
    }
    for (const auto& a : elems) {
        const SkewMatrix pa = e.phi(a, T);
        if (!(e.phi_pi * pa == e.phi(a.frobenius(), T) * e.phi_pi)) return false;
    }
    const std::size_t pairs = std::min<std::size_t>(elems.size(), 16);
    for (std::size_t i = 0; i < pairs; ++i) {
        for (std::size_t j = 0; j < pairs; ++j) {
            const SkewMatrix pa = e.phi(elems[i], T);
            const SkewMatrix pb = e.phi(elems[j], T);
            if (!(e.phi(elems[i] * elems[j], T) == pa * pb)) return false;
            if (!(e.phi(elems[i] + elems[j], T) == pa + pb)) return false;
        }
    }
    return true;
}

std::optional<MonomialTwist> find_monomial_twist(const TypeVector& f) {
    const std::size_t d = f.size();
    if (d == 0 || d > 6) return std::nullopt;
    const auto b = coordinate_blocks(f);
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (unsigned mask = 0; mask < (1U << d); ++mask) {
            bool ok = true;
            for (std::size_t r = 0; r < d && ok; ++r) {
                for (std::size_t c = 0; c < d && ok; ++c) {
                    const int er = (mask >> r) & 1U;
                    const int ec = (mask >> c) & 1U;
                    const int lhs = ec - er + (b[r] < b[c] ? 1 : 0);
                    const int rhs = b[perm[c]] < b[perm[r]] ? 1 : 0;
                    ok = lhs == rhs;
                }
            }
            if (ok) {
                MonomialTwist t{perm, std::vector<unsigned>(d)};
                for (std::size_t i = 0; i < d; ++i) t.eps[i] = (mask >> i) & 1U;
                return t;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

namespace {

// Tau-digits of entry (r, c) that survive reduction mod pi^N after the twist.
std::vector<std::vector<unsigned>> thresholds(const FormalEmbedding& e, const MonomialTwist& t) {
    const long long d = e.d;
    std::vector<std::vector<unsigned>> out(e.d, std::vector<unsigned>(e.d));
    for (std::size_t r = 0; r < e.d; ++r) {
        for (std::size_t c = 0; c < e.d; ++c) {
            const long long L = d * (static_cast<long long>(e.N) - t.eps[c] + t.eps[r]) -
                                e.blocks[c] + e.blocks[r];
            out[r][c] = static_cast<unsigned>(L);
        }
    }
    return out;
}

struct Solve {
    std::vector<FpVector> projected;  // F_p-spanning set after reduction
    std::size_t fp_dimension = 0;
};

// Both commutators are entrywise because Phi(Pi) and Phi(lambda) are diagonal,
// so the joint system is block diagonal with one block per entry.
Solve solve_centralizer(const FormalEmbedding& e, unsigned T,
                        const std::vector<std::vector<unsigned>>& keep) {
    const FieldSpec& k = e.k;
    const unsigned deg = k.degree();
    const std::size_t d = e.d;
    const std::size_t entry_len = std::size_t{T} * deg;
    const std::size_t total = d * d * entry_len;

    std::vector<FieldElement> basis_elems;
    for (unsigned t = 0; t < deg; ++t) {
        std::vector<std::uint32_t> c(deg, 0);
        c[t] = 1;
        basis_elems.push_back(k.from_coeffs(c));
    }
    std::vector<FieldElement> lam(d, k.zero());
    for (std::size_t r = 0; r < d; ++r) lam[r] = e.lambda.frobenius(e.blocks[r]);

    Solve out;
    FpSpan span(k.p(), total);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            FpMatrix sys(k.p(), std::size_t{2 * T - 1} * deg, entry_len);
            for (unsigned i = 0; i < T; ++i) {
                const FieldElement lam_c = lam[c].frobenius(i);
                for (unsigned t = 0; t < deg; ++t) {
                    const FieldElement& x = basis_elems[t];
                    const std::size_t col = std::size_t{i} * deg + t;
                    if (i + 1 < T) {
                        const FieldElement tau_comm = x - x.frobenius();
                        const auto v = tau_comm.coeffs();
                        for (unsigned s = 0; s < deg; ++s) sys.at(std::size_t{i} * deg + s, col) = v[s];
                    }
                    const FieldElement lam_comm = x * lam_c - lam[r] * x;
                    const auto w = lam_comm.coeffs();
                    for (unsigned s = 0; s < deg; ++s) {
                        sys.at(std::size_t{T - 1 + i} * deg + s, col) = w[s];
                    }
                }
            }
            const std::size_t offset = (r * d + c) * entry_len;
            for (const auto& v : nullspace(std::move(sys))) {
                FpVector g(total, 0);
                for (unsigned i = 0; i < keep[r][c] && i < T; ++i) {
                    for (unsigned s = 0; s < deg; ++s) {
                        g[offset + std::size_t{i} * deg + s] = v[std::size_t{i} * deg + s];
                    }
                }
                if (span.insert(g)) out.projected.push_back(std::move(g));
            }
        }
    }
    out.fp_dimension = span.dimension();
    return out;
}

SkewMatrix project(const SkewMatrix& m, const std::vector<std::vector<unsigned>>& keep) {
    SkewMatrix r = m;
    const FieldElement zero = m.field().zero();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            for (unsigned t = keep[i][j]; t < m.precision(); ++t) r(i, j).set(t, zero);
        }
    }
    return r;
}

SeriesMatrix apply_theta(const SkewMatrix& b, const FormalEmbedding& e, const MonomialTwist& t,
                         const FieldEmbedding& emb_q) {
    const long long d = e.d;
    SeriesMatrix out(e.base, e.N, e.d, e.d);
    for (std::size_t r = 0; r < e.d; ++r) {
        for (std::size_t c = 0; c < e.d; ++c) {
            for (unsigned i = 0; i < b.precision(); ++i) {
                const FieldElement& beta = b(r, c)[i];
                if (beta.is_zero()) continue;
                const long long shift = static_cast<long long>(i) + e.blocks[c] - e.blocks[r];
                if (shift < 0 || shift % d != 0) {
                    throw DieudonneError("centralizer element has a digit off the expected support");
                }
                const long long exponent = shift / d + t.eps[c] - static_cast<long long>(t.eps[r]);
                if (exponent < 0) throw DieudonneError("twisted image leaves the integral matrices");
                if (exponent >= static_cast<long long>(e.N)) continue;
                const auto coeff = emb_q.preimage(beta);
                if (!coeff) throw DieudonneError("centralizer coefficient is not in F_q");
                Series& target = out(t.perm[c], t.perm[r]);
                const unsigned ex = static_cast<unsigned>(exponent);
                target.set(ex, target[ex] + *coeff);
            }
        }
    }
    return out;
}

}  // namespace

CentralizerBasis centralizer_basis(const FormalEmbedding& e) {
    if (e.T != e.d * e.N) throw DieudonneError("truncation T must equal d N");
    if (e.N < 2) throw DieudonneError("truncation T must be at least 2d");
    const auto twist = find_monomial_twist(e.f);
    if (!twist) throw DieudonneError("no bijection found: the type admits no monomial anti-automorphism");

    CentralizerBasis out;
    out.twist = *twist;
    out.threshold = thresholds(e, out.twist);
    out.guard = e.d * (e.N + 2) + 1;
    const BlockCounts bc = block_counts(e.f);
    out.expected_dimension = e.N * bc.r + (e.N - 1) * bc.s;

    const Solve main = solve_centralizer(e, out.guard, out.threshold);
    const Solve wider = solve_centralizer(e, out.guard + e.d, out.threshold);
    if (main.fp_dimension != wider.fp_dimension) {
        throw TruncationError("insufficient truncation: centralizer dimension depends on precision");
    }

    // Greedy F_q-basis of the reduced solution space.
    const std::size_t dim = main.projected.empty() ? 0 : main.projected.front().size();
    const FieldElement gen = embed(e.base, e.k)(e.base.variable());
    FpSpan span(e.k.p(), dim);
    for (const auto& v : main.projected) {
        if (span.contains(v)) continue;
        SkewMatrix m = SkewMatrix::from_digits(e.k, out.guard, e.d, v);
        FieldElement s = e.k.one();
        for (unsigned j = 0; j < e.base.degree(); ++j) {
            span.insert(scaled(m, s).digits());
            s *= gen;
        }
        out.basis.push_back(std::move(m));
    }

    out.contains_identity =
        span.contains(project(SkewMatrix::identity(e.k, out.guard, e.d), out.threshold).digits());
    out.closed_under_products = true;
    for (const auto& a : out.basis) {
        for (const auto& b : out.basis) {
            if (!span.contains(project(a * b, out.threshold).digits())) {
                out.closed_under_products = false;
                return out;
            }
        }
    }
    return out;
}

BlockOrderCertificate match_block_order(const CentralizerBasis& c, const FormalEmbedding& e) {
    BlockOrderCertificate cert;
    cert.twist = c.twist;
    const FieldEmbedding emb_q = embed(e.base, e.k);
    try {
        for (const auto& b : c.basis) cert.images.push_back(apply_theta(b, e, c.twist, emb_q));
    } catch (const DieudonneError& err) {
        throw DieudonneError(std::string("no bijection found: ") + err.what());
    }
    cert.images_in_order = std::all_of(cert.images.begin(), cert.images.end(),
                                       [&](const SeriesMatrix& m) { return block_membership(m, e.f); });
    std::vector<FpVector> digits;
    for (const auto& m : cert.images) digits.push_back(m.digits());
    const BlockOrder order(e.f, TruncatedDVR(e.base, e.N));
    const std::size_t rank = fq_basis_from_fp(e.base, e.N, e.d, e.d, digits).size();
    cert.bijective = rank == c.basis.size() && rank == order.dimension();

    for (std::size_t i = 0; i < c.basis.size(); ++i) {
        for (std::size_t j = 0; j < c.basis.size(); ++j) {
            ++cert.pairs_checked;
            const SeriesMatrix lhs = apply_theta(c.basis[i] * c.basis[j], e, c.twist, emb_q);
            if (lhs == cert.images[j] * cert.images[i]) ++cert.pairs_matched;
        }
    }
    cert.anti_multiplicative = cert.pairs_checked > 0 && cert.pairs_matched == cert.pairs_checked;
    return cert;
}

// ---------------------------------------------------------------------------
// Graded modules

namespace {

SeriesMatrix pi_identity(const FieldSpec& k, unsigned N, std::size_t n) {
    return SeriesMatrix::identity(k, N, n).shift_up(1);
}

}  // namespace

void validate_module(const GradedDieudonneModule& m) {
    const std::size_t d = m.d();
    if (d == 0) throw DieudonneError("module has no graded pieces");
    if (m.phi_maps.size() != d) throw DieudonneError("need one phi_i per graded piece");
    if (m.N < 2) throw DieudonneError("module truncation must be at least 2");
    const std::size_t n = m.rank();
    for (std::size_t i = 0; i < d; ++i) {
        for (const SeriesMatrix* a : {&m.pi_maps[i], &m.phi_maps[i]}) {
            if (a->rows() != n || a->cols() != n || a->precision() != m.N || a->field() != m.k) {
                throw DieudonneError("graded piece " + std::to_string(i) + " has the wrong shape");
            }
        }
    }
    const SeriesMatrix pi = pi_identity(m.k, m.N, n);
    for (std::size_t i = 0; i < d; ++i) {
        SeriesMatrix cycle = SeriesMatrix::identity(m.k, m.N, n);
        for (std::size_t s = 0; s < d; ++s) cycle = m.pi_maps[(i + s) % d] * cycle;
        if (cycle != pi) {
            throw DieudonneError("Pi maps around the cycle from M_" + std::to_string(i) +
                                 " are not multiplication by pi");
        }
        const std::size_t j = (i + 1) % d;
        if (m.phi_maps[j] * m.pi_maps[i].frobenius() != m.pi_maps[j] * m.phi_maps[i]) {
            throw DieudonneError("phi and Pi do not commute at M_" + std::to_string(i));
        }
        for (unsigned ex : smith_form(m.phi_maps[i]).exponents) {
            if (ex >= m.N) {
                throw TruncationError("insufficient truncation: phi_" + std::to_string(i) +
                                      " is not visibly injective");
            }
        }
    }
}

TypeVector type_of_module(const GradedDieudonneModule& m) {
    TypeVector out;
    for (const auto& F : m.phi_maps) out.push_back(colength(F));
    return out;
}

bool is_exceptional(const GradedDieudonneModule& m) {
    for (std::size_t i = 0; i < m.d(); ++i) {
        if (!same_span(m.phi_maps[i], m.pi_maps[i])) return false;
    }
    return true;
}

bool is_special(const GradedDieudonneModule& m) {
    const TypeVector f = type_of_module(m);
    return std::all_of(f.begin(), f.end(), [](unsigned x) { return x == 1; });
}

bool is_superspecial(const GradedDieudonneModule& m) {
    return is_special(m) && is_exceptional(m);
}

GradedDieudonneModule diagonal_module(const TypeVector& g, const std::vector<unsigned>& c,
                                      const FieldSpec& k, unsigned N) {
    const std::size_t d = g.size();
    validate_type(g, d);
    if (c.size() != d) throw DieudonneError("twist exponents need d entries");
    const auto blocks = coordinate_blocks(g);
    GradedDieudonneModule m{k, N, {}, {}};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<unsigned> p(d), f(d);
        for (std::size_t r = 0; r < d; ++r) {
            p[r] = blocks[r] == i ? 1 : 0;
            f[r] = p[r] + c[r];
        }
        m.pi_maps.push_back(SeriesMatrix::diagonal_powers(k, N, p));
        m.phi_maps.push_back(SeriesMatrix::diagonal_powers(k, N, f));
    }
    validate_module(m);
    return m;
}

GradedDieudonneModule standard_exceptional_module(const TypeVector& f, const FieldSpec& k,
                                                  unsigned N) {
    return diagonal_module(f, std::vector<unsigned>(f.size(), 0), k, N);
}

GradedDieudonneModule cyclic_module(unsigned d, unsigned a, const FieldSpec& k, unsigned N) {
    if (d == 0) throw DieudonneError("d must be positive");
    SeriesMatrix C(k, N, d, d);
    for (std::size_t r = 0; r + 1 < d; ++r) C(r + 1, r) = Series::constant(k.one(), N);
    C(0, d - 1) = Series::monomial(k.one(), 1, N);
    SeriesMatrix F = SeriesMatrix::identity(k, N, d);
    for (unsigned i = 0; i < a; ++i) F = C * F;
    GradedDieudonneModule m{k, N, std::vector<SeriesMatrix>(d, C), std::vector<SeriesMatrix>(d, F)};
    validate_module(m);
    return m;
}

namespace {

SeriesMatrix random_invertible(const FieldSpec& k, unsigned N, std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        SeriesMatrix g(k, N, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (unsigned t = 0; t < N; ++t) g(i, j).set(t, k.from_index(uniform_below(rng, k.size())));
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

GradedDieudonneModule twist_module(const GradedDieudonneModule& m, std::mt19937_64& rng) {
    const std::size_t d = m.d();
    std::vector<SeriesMatrix> G;
    for (std::size_t i = 0; i < d; ++i) G.push_back(random_invertible(m.k, m.N, m.rank(), rng));
    GradedDieudonneModule out{m.k, m.N, {}, {}};
    for (std::size_t i = 0; i < d; ++i) {
        const SeriesMatrix& next = G[(i + 1) % d];
        out.pi_maps.push_back(next * m.pi_maps[i] * G[i].inverse());
        out.phi_maps.push_back(next * m.phi_maps[i] * G[i].frobenius().inverse());
    }
    return out;
}

std::vector<GradedDieudonneModule> generate_modules(std::size_t count, unsigned max_d,
                                                    std::uint64_t seed) {
    if (max_d == 0) throw DieudonneError("max_d must be positive");
    std::mt19937_64 rng(seed);
    const FieldSpec fields[] = {make_field(2, 1, 2), make_field(3, 1, 2)};
    const unsigned N = 3;
    std::vector<GradedDieudonneModule> out;
    while (out.size() < count) {
        const FieldSpec& k = fields[uniform_below(rng, 2)];
        const unsigned d = 1 + static_cast<unsigned>(uniform_below(rng, max_d));
        GradedDieudonneModule base{k, N, {}, {}};
        switch (uniform_below(rng, 3)) {
            case 0: {
                const auto types = all_types(d);
                base = standard_exceptional_module(types[uniform_below(rng, types.size())], k, N);
                break;
            }
            case 1: {
                const auto types = all_types(d);
                std::vector<unsigned> c(d);
                for (auto& x : c) x = static_cast<unsigned>(uniform_below(rng, 2));
                base = diagonal_module(types[uniform_below(rng, types.size())], c, k, N);
                break;
            }
            default:
                base = cyclic_module(d, static_cast<unsigned>(uniform_below(rng, 3)), k, N);
                break;
        }
        GradedDieudonneModule moved = twist_module(base, rng);
        validate_module(moved);
        out.push_back(std::move(moved));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Local conditions

LocalCheck classify_local_behavior(const LocalLattice& m, LocalRole role, unsigned d,
                                   unsigned degree) {
    if (m.F.rows() != m.F.cols()) throw DieudonneError("phi matrix must be square");
    if (d == 0 || degree == 0) throw DieudonneError("d and degree must be positive");
    const unsigned N = m.F.precision();
    auto exponents_of = [N](const SeriesMatrix& a) {
        const auto ex = smith_form(a).exponents;
        for (unsigned x : ex) {
            if (x >= N) throw TruncationError("insufficient truncation for the local check");
        }
        return ex;
    };
    const long long n = static_cast<long long>(m.F.rows());
    LocalCheck out;
    const auto ex = exponents_of(m.F);
    out.length = m.s * n;
    for (unsigned x : ex) out.length += x;

    switch (role) {
        case LocalRole::Etale:
            out.holds = m.s == 0 && std::all_of(ex.begin(), ex.end(), [](unsigned x) { return x == 0; });
            out.detail = out.holds ? "phi(M) = M" : "phi(M) differs from M";
            break;
        case LocalRole::Zero: {
            bool sandwich = true;
            for (unsigned x : ex) {
                const long long v = m.s + static_cast<long long>(x);
                sandwich = sandwich && v >= 0 && v <= 1;
            }
            out.holds = sandwich && out.length == static_cast<long long>(d);
            out.detail = !sandwich ? "phi(M) is not between pi M and M"
                                   : "M / phi(M) has length " + std::to_string(out.length);
            break;
        }
        case LocalRole::Pole: {
            const unsigned t = d * degree;
            SeriesMatrix W = m.F;
            for (unsigned i = 1; i < t; ++i) W = W * m.F.frobenius(i);
            const long long target = -1 - static_cast<long long>(t) * m.s;
            const auto wex = exponents_of(W);
            out.holds = target >= 0 && std::all_of(wex.begin(), wex.end(), [&](unsigned x) {
                            return static_cast<long long>(x) == target;
                        });
            out.detail = out.holds ? "phi^" + std::to_string(t) + "(M) = pi^-1 M"
                                   : "phi^" + std::to_string(t) + "(M) differs from pi^-1 M";
            break;
        }
    }
    return out;
}

LocalLattice total_lattice(const GradedDieudonneModule& m) {
    const std::size_t d = m.d();
    const std::size_t n = m.rank();
    SeriesMatrix F(m.k, m.N, d * n, d * n);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t j = (i + 1) % d;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) F(j * n + r, i * n + c) = m.phi_maps[i](r, c);
        }
    }
    return {F, 0};
}

LocalLattice pole_model(unsigned d, const FieldSpec& k, unsigned N) {
    if (d == 0) throw DieudonneError("d must be positive");
    SeriesMatrix F(k, N, d, d);
    for (std::size_t r = 0; r + 1 < d; ++r) F(r + 1, r) = Series::monomial(k.one(), 1, N);
    F(0, d - 1) = Series::constant(k.one(), N);
    return {F, -1};
}

}  // namespace dmass
