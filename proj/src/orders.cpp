#include "dmass/orders.hpp"

#include "dmass/random.hpp"

#include <numeric>

namespace dmass {

TruncatedDVR::TruncatedDVR(FieldSpec k, unsigned n) : residue(std::move(k)), N(n) {
    if (residue.m() != 1) throw OrderError("residue field must be F_q itself (m = 1)");
    if (N == 0) throw OrderError("truncation level N must be positive");
}

void validate_type(const TypeVector& f, std::size_t d) {
    if (f.size() != d) {
        throw OrderError("type vector has " + std::to_string(f.size()) + " entries, expected " +
                         std::to_string(d));
    }
    const std::size_t sum = std::accumulate(f.begin(), f.end(), std::size_t{0});
    if (sum != d) {
        throw OrderError("type entries sum to " + std::to_string(sum) + ", expected " +
                         std::to_string(d));
    }
}

std::vector<TypeVector> all_types(std::size_t d) {
    std::vector<TypeVector> out;
    TypeVector cur(d, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == d) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            cur[i] = v;
            self(self, i + 1, left - v);
        }
    };
    if (d > 0) rec(rec, 0, static_cast<unsigned>(d));
    return out;
}

std::vector<unsigned> coordinate_blocks(const TypeVector& f) {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < f.size(); ++i) out.insert(out.end(), f[i], i);
    return out;
}

BlockCounts block_counts(const TypeVector& f) {
    const auto b = coordinate_blocks(f);
    BlockCounts bc;
    for (auto r : b) {
        for (auto c : b) (r < c ? bc.s : bc.r) += 1;
    }
    return bc;
}

bool block_membership(const SeriesMatrix& m, const TypeVector& f) {
    validate_type(f, f.size());
    if (m.rows() != f.size() || m.cols() != f.size()) {
        throw OrderError("matrix size does not match the type vector");
    }
    const auto b = coordinate_blocks(f);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (b[r] < b[c] && m(r, c).valuation() == 0) return false;
        }
    }
    return true;
}

BlockOrder::BlockOrder(TypeVector f, TruncatedDVR ring)
    : f_(std::move(f)), ring_(std::move(ring)) {
    validate_type(f_, f_.size());
    if (f_.empty()) throw OrderError("d must be positive");
    blocks_ = coordinate_blocks(f_);
}

std::vector<SeriesMatrix> BlockOrder::basis() const {
    const std::size_t n = d();
    std::vector<SeriesMatrix> out;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            for (unsigned t = min_valuation(r, c); t < ring_.N; ++t) {
                SeriesMatrix m(ring_.residue, ring_.N, n, n);
                m(r, c) = ring_.pi_power(t);
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

std::size_t BlockOrder::dimension() const {
    const BlockCounts bc = block_counts(f_);
    return ring_.N * bc.r + (ring_.N - 1) * bc.s;
}

SeriesMatrix BlockOrder::random_member(std::mt19937_64& rng) const {
    const std::size_t n = d();
    const FieldSpec& k = ring_.residue;
    SeriesMatrix m(k, ring_.N, n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            for (unsigned t = min_valuation(r, c); t < ring_.N; ++t) {
                m(r, c).set(t, k.from_index(uniform_below(rng, k.size())));
            }
        }
    }
    return m;
}

LatticeChain standard_chain(const TypeVector& f, const TruncatedDVR& ring) {
    const std::size_t d = f.size();
    validate_type(f, d);
    if (ring.N < 2) throw OrderError("lattice chains need truncation level N >= 2");
    const auto b = coordinate_blocks(f);
    LatticeChain chain{ring, {}, {}};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<unsigned> exps(d);
        for (std::size_t c = 0; c < d; ++c) exps[c] = b[c] < i ? 1 : 0;
        chain.lattices.push_back(SeriesMatrix::diagonal_powers(ring.residue, ring.N, exps));
        chain.shifts.push_back(0);
    }
    return chain;
}

namespace {

// pi^shift * colspan(a) as a matrix, when shift >= 0.
SeriesMatrix absolute(const SeriesMatrix& a, int shift) {
    if (shift < 0) throw OrderError("negative lattice shift in a chain");
    return a.shift_up(static_cast<unsigned>(shift));
}

}  // namespace

void validate_chain(const LatticeChain& chain) {
    const std::size_t d = chain.lattices.size();
    if (d == 0 || chain.shifts.size() != d) throw OrderError("malformed lattice chain");
    for (const auto& l : chain.lattices) {
        if (l.rows() != d || l.cols() != d) throw OrderError("chain lattices must be d x d");
    }
    for (std::size_t i = 0; i < d; ++i) {
        const SeriesMatrix outer = absolute(chain.lattices[i], chain.shifts[i]);
        const SeriesMatrix inner = i + 1 < d
                                       ? absolute(chain.lattices[i + 1], chain.shifts[i + 1])
                                       : absolute(chain.lattices[0], chain.shifts[0] + 1);
        if (!span_contains(outer, inner)) {
            throw OrderError("lattice " + std::to_string((i + 1) % d) +
                             " of the chain does not lie in lattice " + std::to_string(i));
        }
    }
}

TypeVector type_of_chain(const LatticeChain& chain) {
    validate_chain(chain);
    const std::size_t d = chain.lattices.size();
    std::vector<long long> len(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        len[i] = static_cast<long long>(colength(chain.lattices[i])) +
                 static_cast<long long>(chain.shifts[i]) * static_cast<long long>(d);
    }
    len[d] = len[0] + static_cast<long long>(d);
    TypeVector f(d);
    for (std::size_t i = 0; i < d; ++i) f[i] = static_cast<unsigned>(len[i + 1] - len[i]);
    return f;
}

TypeVector type_of_chain_by_residue_rank(const LatticeChain& chain) {
    const std::size_t d = chain.lattices.size();
    const FieldSpec& k = chain.ring.residue;
    const unsigned e = k.degree();
    auto residue_rank = [&](const SeriesMatrix& a) {
        FpMatrix m(k.p(), d * e, d * e);
        std::size_t col = 0;
        for (std::size_t c = 0; c < d; ++c) {
            FieldElement scale = k.one();
            for (unsigned j = 0; j < e; ++j, ++col) {
                for (std::size_t r = 0; r < d; ++r) {
                    const FieldElement v = a(r, c)[0] * scale;
                    for (unsigned t = 0; t < e; ++t) m.at(r * e + t, col) = v.coeffs()[t];
                }
                scale *= k.variable();
            }
        }
        return rank(m) / e;
    };
    std::vector<std::size_t> rk(d + 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (chain.shifts[i] != 0) throw OrderError("residue-rank oracle needs zero shifts");
        rk[i] = residue_rank(chain.lattices[i]);
    }
    TypeVector f(d);
    for (std::size_t i = 0; i < d; ++i) f[i] = static_cast<unsigned>(rk[i] - rk[i + 1]);
    return f;
}

std::vector<SeriesMatrix> fq_basis_from_fp(const FieldSpec& k, unsigned precision,
                                           std::size_t rows, std::size_t cols,
                                           const std::vector<FpVector>& fp_vectors) {
    const std::size_t dim = rows * cols * precision * k.degree();
    FpSpan span(k.p(), dim);
    std::vector<SeriesMatrix> out;
    for (const auto& v : fp_vectors) {
        if (span.contains(v)) continue;
        SeriesMatrix m = SeriesMatrix::from_digits(k, precision, rows, cols, v);
        FieldElement scale = k.one();
        for (unsigned j = 0; j < k.degree(); ++j) {
            span.insert(m.scaled(scale).digits());
            scale *= k.variable();
        }
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

FpSpan fq_span(const std::vector<SeriesMatrix>& basis, std::size_t dim) {
    const FieldSpec& k = basis.front().field();
    FpSpan span(k.p(), dim);
    for (const auto& b : basis) {
        FieldElement scale = k.one();
        for (unsigned j = 0; j < k.degree(); ++j) {
            span.insert(b.scaled(scale).digits());
            scale *= k.variable();
        }
    }
    return span;
}

std::size_t digit_count(const SeriesMatrix& m) {
    return m.rows() * m.cols() * m.precision() * m.field().degree();
}

}  // namespace

bool fq_span_contains(const std::vector<SeriesMatrix>& basis,
                      const std::vector<SeriesMatrix>& vectors) {
    if (vectors.empty()) return true;
    if (basis.empty()) {
        for (const auto& v : vectors) {
            if (!v.is_zero()) return false;
        }
        return true;
    }
    const FpSpan span = fq_span(basis, digit_count(basis.front()));
    for (const auto& v : vectors) {
        if (!span.contains(v.digits())) return false;
    }
    return true;
}

bool span_closed_under_products(const std::vector<SeriesMatrix>& basis) {
    if (basis.empty()) return false;
    const SeriesMatrix& first = basis.front();
    const FpSpan span = fq_span(basis, digit_count(first));
    if (!span.contains(SeriesMatrix::identity(first.field(), first.precision(), first.rows()).digits())) {
        return false;
    }
    for (const auto& a : basis) {
        for (const auto& b : basis) {
            if (!span.contains((a * b).digits())) return false;
        }
    }
    return true;
}

std::vector<SeriesMatrix> chain_stabilizer(const LatticeChain& chain) {
    validate_chain(chain);
    const std::size_t d = chain.lattices.size();
    const FieldSpec& k = chain.ring.residue;
    const unsigned N = chain.ring.N;
    const unsigned e = k.degree();
    const std::size_t unknowns = d * d * N * e;

    std::vector<SmithForm> forms;
    for (const auto& l : chain.lattices) {
        SmithForm s = smith_form(l);
        for (auto x : s.exponents) {
            if (x >= N) throw TruncationError("chain lattice is singular at this truncation level");
        }
        forms.push_back(std::move(s));
    }

    // Column j of the constraint matrix is the image of the j-th F_p-basis
    // matrix under g -> (low digits of U_i g Lambda_i).
    std::vector<FpVector> columns;
    for (std::size_t j = 0; j < unknowns; ++j) {
        FpVector unit(unknowns, 0);
        unit[j] = 1;
        const SeriesMatrix g = SeriesMatrix::from_digits(k, N, d, d, unit);
        FpVector col;
        for (std::size_t i = 0; i < d; ++i) {
            const SeriesMatrix y = forms[i].left * g * chain.lattices[i];
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    for (unsigned t = 0; t < forms[i].exponents[r]; ++t) {
                        for (auto v : y(r, c)[t].coeffs()) col.push_back(v);
                    }
                }
            }
        }
        columns.push_back(std::move(col));
    }
    const std::size_t rows = columns.front().size();
    FpMatrix sys(k.p(), rows, unknowns);
    for (std::size_t j = 0; j < unknowns; ++j) sys.set_column(j, columns[j]);
    return fq_basis_from_fp(k, N, d, d, nullspace(std::move(sys)));
}

ConjugationCertificate conjugate_type(const TypeVector& f, const TruncatedDVR& ring) {
    const std::size_t d = f.size();
    validate_type(f, d);
    ConjugationCertificate cert{f, {}, {}, {}, SeriesMatrix(ring.residue, ring.N, d, d), false};
    for (std::size_t i = 0; i < d; ++i) cert.to.push_back(f[(i + 1) % d]);

    const auto b = coordinate_blocks(f);
    cert.perm.assign(d, 0);
    cert.eps.assign(d, 0);
    const std::size_t head = f[0];
    for (std::size_t c = 0; c < d; ++c) {
        if (head == 0) {
            cert.perm[c] = c;
        } else if (b[c] == 0) {
            cert.perm[c] = d - head + c;
        } else {
            cert.perm[c] = c - head;
            cert.eps[c] = 1;
        }
        cert.u(cert.perm[c], c) = ring.pi_power(cert.eps[c]);
    }

    const BlockOrder src(f, ring);
    const BlockOrder dst(cert.to, ring);
    // Move an entry by pi^(shift); fails if that would leave R.
    auto move = [](const Series& s, int shift, bool& ok) {
        if (shift >= 0) return s.shift_up(static_cast<unsigned>(shift));
        if (s.valuation() < static_cast<unsigned>(-shift)) {
            ok = false;
            return s;
        }
        return s.shift_down(static_cast<unsigned>(-shift));
    };
    bool ok = true;
    for (const auto& m : src.basis()) {
        SeriesMatrix img(ring.residue, ring.N, d, d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                const int shift = static_cast<int>(cert.eps[r]) - static_cast<int>(cert.eps[c]);
                img(cert.perm[r], cert.perm[c]) = move(m(r, c), shift, ok);
            }
        }
        ok = ok && dst.contains(img) && cert.u * m == img * cert.u;
    }
    for (const auto& m : dst.basis()) {
        SeriesMatrix pre(ring.residue, ring.N, d, d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                const int shift = static_cast<int>(cert.eps[c]) - static_cast<int>(cert.eps[r]);
                pre(r, c) = move(m(cert.perm[r], cert.perm[c]), shift, ok);
            }
        }
        ok = ok && src.contains(pre) && cert.u * pre == m * cert.u;
    }
    cert.verified = ok;
    return cert;
}

ClosureReport closure_test(const BlockOrder& order, std::uint64_t seed,
                           std::uint64_t exhaustive_cap, std::uint64_t sample_trials) {
    ClosureReport rep;
    const std::size_t n = order.d();
    const TruncatedDVR& ring = order.ring();
    const FieldSpec& k = ring.residue;
    rep.contains_identity = order.contains(SeriesMatrix::identity(k, ring.N, n));

    // Number of members is q^dim; pairs are q^(2 dim).
    const std::size_t dim = order.dimension();
    long double pairs = 1;
    for (std::size_t i = 0; i < 2 * dim; ++i) pairs *= static_cast<long double>(k.size());
    bool add_ok = true;
    bool mul_ok = true;
    if (pairs <= static_cast<long double>(exhaustive_cap)) {
        rep.exhaustive = true;
        const auto basis = order.basis();
        std::uint64_t members = 1;
        for (std::size_t i = 0; i < dim; ++i) members *= k.size();
        std::vector<SeriesMatrix> all;
        all.reserve(members);
        for (std::uint64_t idx = 0; idx < members; ++idx) {
            SeriesMatrix m(k, ring.N, n, n);
            std::uint64_t rest = idx;
            for (const auto& b : basis) {
                const FieldElement c = k.from_index(rest % k.size());
                rest /= k.size();
                if (!c.is_zero()) m = m + b.scaled(c);
            }
            all.push_back(std::move(m));
        }
        for (const auto& a : all) {
            for (const auto& b : all) {
                add_ok = add_ok && order.contains(a + b);
                mul_ok = mul_ok && order.contains(a * b);
                ++rep.trials;
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        for (std::uint64_t t = 0; t < sample_trials; ++t) {
            const SeriesMatrix a = order.random_member(rng);
            const SeriesMatrix b = order.random_member(rng);
            add_ok = add_ok && order.contains(a + b);
            mul_ok = mul_ok && order.contains(a * b);
            ++rep.trials;
        }
    }
    rep.closed_under_addition = add_ok;
    rep.closed_under_multiplication = mul_ok;
    return rep;
}

}  // namespace dmass
