#pragma once

// Additive codes over F_q: a block of s field symbols per coordinate,
// one s x k encoder matrix per coordinate. Constructors for folded
// Reed-Solomon, seeded random linear codes, and an extension-field
// Reed-Solomon outer code, plus exact brute-force minimum distance.

#include "codeforge/common.hpp"
#include "codeforge/gf.hpp"
#include "codeforge/linalg.hpp"

#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace codeforge {

struct CodeMeta {
    std::string kind;  // "frs" | "rlc" | "rs_outer" | "ael" | ""
    std::optional<std::uint64_t> seed;
};

// Codeword: n blocks of s symbols, stored flat (block j = symbols
// [j*s, (j+1)*s)).
struct Codeword {
    std::uint32_t n = 0, s = 0;
    std::vector<gf_elem> symbols;

    bool block_nonzero(std::uint32_t j) const {
        for (std::uint32_t t = 0; t < s; ++t)
            if (symbols[static_cast<std::size_t>(j) * s + t]) return true;
        return false;
    }

    std::uint32_t block_weight() const {
        std::uint32_t w = 0;
        for (std::uint32_t j = 0; j < n; ++j)
            if (block_nonzero(j)) ++w;
        return w;
    }

    bool operator==(const Codeword& o) const { return n == o.n && s == o.s && symbols == o.symbols; }
};

class AdditiveCode {
public:
    // Validates shapes and injectivity of the stacked (sn) x k encoder.
    static AdditiveCode create(FieldPtr field, std::uint32_t k, std::uint32_t s, std::uint32_t n,
                               std::vector<Matrix> encoders, CodeMeta meta = {}) {
        if (n == 0 || s == 0 || k == 0) throw Error(Errc::ShapeMismatch, "k, s, n must be positive");
        if (encoders.size() != n) throw Error(Errc::ShapeMismatch, "encoder count != n");
        for (const Matrix& e : encoders) {
            if (e.rows() != s || e.cols() != k) throw Error(Errc::ShapeMismatch, "encoder shape != s x k");
            if (*e.field() != *field) throw Error(Errc::ShapeMismatch, "encoder field mismatch");
        }
        AdditiveCode c;
        c.field_ = std::move(field);
        c.k_ = k;
        c.s_ = s;
        c.n_ = n;
        c.encoders_ = std::move(encoders);
        c.meta_ = std::move(meta);
        if (rref(c.stacked()).rank != k)
            throw Error(Errc::NotInjective, "stacked encoder has rank < k");
        return c;
    }

    const FieldPtr& field() const { return field_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t s() const { return s_; }
    std::uint32_t n() const { return n_; }
    const std::vector<Matrix>& encoders() const { return encoders_; }
    const Matrix& encoder(std::uint32_t i) const { return encoders_[i]; }
    const CodeMeta& meta() const { return meta_; }

    Rat rate() const { return Rat(k_, static_cast<long long>(s_) * n_); }

    Matrix stacked() const {
        Matrix m(field_, s_ * n_, k_);
        for (std::uint32_t i = 0; i < n_; ++i)
            for (std::uint32_t r = 0; r < s_; ++r)
                for (std::uint32_t c = 0; c < k_; ++c)
                    m.at(i * s_ + r, c) = encoders_[i].at(r, c);
        return m;
    }

    Codeword encode(std::span<const gf_elem> x) const {
        if (x.size() != k_) throw Error(Errc::ShapeMismatch, "message length != k");
        Codeword cw;
        cw.n = n_;
        cw.s = s_;
        cw.symbols.reserve(static_cast<std::size_t>(n_) * s_);
        for (std::uint32_t i = 0; i < n_; ++i) {
            auto block = encoders_[i].apply(x);
            cw.symbols.insert(cw.symbols.end(), block.begin(), block.end());
        }
        return cw;
    }

    // Message with index idx in [0, q^k), base-q digits, coordinate 0 least
    // significant. The canonical message order for all deterministic scans.
    std::vector<gf_elem> message_at(std::uint64_t idx) const {
        std::vector<gf_elem> x(k_);
        for (std::uint32_t j = 0; j < k_; ++j) {
            x[j] = static_cast<gf_elem>(idx % field_->q());
            idx /= field_->q();
        }
        return x;
    }

    BigInt message_count() const {
        BigInt c = 1;
        for (std::uint32_t i = 0; i < k_; ++i) c *= field_->q();
        return c;
    }

private:
    FieldPtr field_;
    std::uint32_t k_ = 0, s_ = 0, n_ = 0;
    std::vector<Matrix> encoders_;
    CodeMeta meta_;
};

// ---------------------------------------------------------------------------
// Exact minimum distance by exhaustive message scan.
// ---------------------------------------------------------------------------

struct DistanceResult {
    Rat delta;                           // min block weight / n
    std::uint32_t weight = 0;            // witness block weight
    std::vector<gf_elem> witness;        // minimum-weight nonzero message
};

inline DistanceResult min_distance(const AdditiveCode& code, const Budget& budget = default_budget(),
                                   std::uint32_t workers = 1) {
    BigInt total = code.message_count();
    if (total > budget.max_messages)
        throw budget_error(total, "min_distance message scan over budget");
    const std::uint64_t count = static_cast<std::uint64_t>(total);

    struct Best {
        std::uint32_t weight = UINT32_MAX;
        std::uint64_t index = UINT64_MAX;
    };
    auto scan = [&code](std::uint64_t lo, std::uint64_t hi) {
        Best b;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint32_t w = code.encode(code.message_at(idx)).block_weight();
            if (w < b.weight) {
                b.weight = w;
                b.index = idx;
            }
        }
        return b;
    };
    // Deterministic merge: (weight, index) lexicographic minimum, so the
    // result is independent of the worker count.
    auto merge = [](Best a, Best b) {
        if (b.weight < a.weight || (b.weight == a.weight && b.index < a.index)) return b;
        return a;
    };

    Best best;
    if (workers <= 1 || count < 1024) {
        best = scan(1, count);
    } else {
        std::vector<Best> partial(workers);
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (count - 1 + workers - 1) / workers;
        for (std::uint32_t w = 0; w < workers; ++w) {
            std::uint64_t lo = 1 + static_cast<std::uint64_t>(w) * chunk;
            std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, count);
            if (lo >= hi) { partial[w] = Best{}; continue; }
            threads.emplace_back([&, w, lo, hi] { partial[w] = scan(lo, hi); });
        }
        for (auto& t : threads) t.join();
        for (const Best& b : partial) best = merge(best, b);
    }

    DistanceResult out;
    out.weight = best.weight;
    out.witness = code.message_at(best.index);
    out.delta = Rat(best.weight, code.n());
    return out;
}

// ---------------------------------------------------------------------------
// Folded Reed-Solomon.
// ---------------------------------------------------------------------------

struct FrsParams {
    gf_elem gamma = 0;             // primitive element
    std::vector<gf_elem> evals;    // alpha_1..alpha_n

    // alpha_i = gamma^{s(i-1)}: distinct powers of a primitive element, so
    // the evaluation points alpha_i gamma^t are sn distinct nonzero values.
    static FrsParams defaults(const Field& f, std::uint32_t s, std::uint32_t n) {
        FrsParams p;
        p.gamma = f.generator();
        p.evals.resize(n);
        for (std::uint32_t i = 0; i < n; ++i)
            p.evals[i] = f.pow(p.gamma, static_cast<std::uint64_t>(s) * i);
        return p;
    }
};

// Encoder i row t is the Vandermonde row of the point alpha_i gamma^t;
// messages are coefficient vectors of polynomials of degree < k.
inline AdditiveCode folded_rs(FieldPtr field, std::uint32_t s, std::uint32_t n, std::uint32_t k,
                              std::optional<FrsParams> params = std::nullopt) {
    const Field& f = *field;
    if (f.q() <= static_cast<std::uint64_t>(s) * n)
        throw Error(Errc::FieldTooSmall, "folded RS requires q > s*n");
    if (k > s * n) throw Error(Errc::ShapeMismatch, "folded RS requires k <= s*n");
    FrsParams p = params ? *params : FrsParams::defaults(f, s, n);
    if (p.evals.size() != n) throw Error(Errc::BadEvaluationPoints, "need n evaluation points");
    if (p.gamma == 0 || f.order(p.gamma) != f.q() - 1)
        throw Error(Errc::BadEvaluationPoints, "gamma is not primitive");

    // all sn points distinct and nonzero
    std::vector<std::vector<gf_elem>> points(n, std::vector<gf_elem>(s));
    std::vector<bool> seen(f.q(), false);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t t = 0; t < s; ++t) {
            gf_elem pt = f.mul(p.evals[i], f.pow(p.gamma, t));
            if (pt == 0 || seen[pt])
                throw Error(Errc::BadEvaluationPoints,
                            "evaluation points must be nonzero and distinct");
            seen[pt] = true;
            points[i][t] = pt;
        }

    std::vector<Matrix> encoders;
    encoders.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        Matrix e(field, s, k);
        for (std::uint32_t t = 0; t < s; ++t) {
            gf_elem pw = 1;
            for (std::uint32_t c = 0; c < k; ++c) {
                e.at(t, c) = pw;
                pw = f.mul(pw, points[i][t]);
            }
        }
        encoders.push_back(std::move(e));
    }
    return AdditiveCode::create(std::move(field), k, s, n, std::move(encoders), {"frs", std::nullopt});
}

// ---------------------------------------------------------------------------
// Seeded random linear codes.
// ---------------------------------------------------------------------------

// Uniform encoder entries from the seeded generator; the whole code is
// resampled (same stream) when the stacked matrix is singular.
inline AdditiveCode random_linear_code(FieldPtr field, std::uint32_t k, std::uint32_t s,
                                       std::uint32_t n, std::uint64_t seed) {
    constexpr int kMaxRetries = 64;
    Rng rng(seed);
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        std::vector<Matrix> encoders;
        encoders.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            Matrix e(field, s, k);
            for (std::uint32_t r = 0; r < s; ++r)
                for (std::uint32_t c = 0; c < k; ++c)
                    e.at(r, c) = static_cast<gf_elem>(rng.below(field->q()));
            encoders.push_back(std::move(e));
        }
        try {
            return AdditiveCode::create(field, k, s, n, std::move(encoders), {"rlc", seed});
        } catch (const Error& e) {
            if (e.code() != Errc::NotInjective) throw;
        }
    }
    throw Error(Errc::RetriesExhausted, "random code injectivity failed 64 times");
}

// ---------------------------------------------------------------------------
// Extension-field Reed-Solomon outer code.
// ---------------------------------------------------------------------------

namespace ext {

// F_{q^t} realized as F_q[y]/(g) for the canonical least monic irreducible
// g of degree t over F_q (coefficients compared from the constant term
// upward, F_q codes ordered as integers). Elements are coefficient vectors.
struct ExtField {
    FieldPtr base;
    std::uint32_t deg;
    std::vector<gf_elem> modulus;  // length deg+1, monic

    using Elem = std::vector<gf_elem>;  // length deg

    Elem from_code(std::uint64_t code) const {
        Elem e(deg);
        for (std::uint32_t i = 0; i < deg; ++i) {
            e[i] = static_cast<gf_elem>(code % base->q());
            code /= base->q();
        }
        return e;
    }

    Elem zero() const { return Elem(deg, 0); }

    bool is_zero(const Elem& a) const {
        for (gf_elem c : a)
            if (c) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem out(deg);
        for (std::uint32_t i = 0; i < deg; ++i) out[i] = base->add(a[i], b[i]);
        return out;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        const Field& f = *base;
        std::vector<gf_elem> prod(2 * deg - 1, 0);
        for (std::uint32_t i = 0; i < deg; ++i) {
            if (!a[i]) continue;
            for (std::uint32_t j = 0; j < deg; ++j)
                if (b[j]) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
        }
        // reduce mod the monic modulus
        for (std::uint32_t d = 2 * deg - 2; d >= deg; --d) {
            gf_elem lead = prod[d];
            if (lead) {
                for (std::uint32_t i = 0; i <= deg; ++i)
                    prod[d - deg + i] = f.sub(prod[d - deg + i], f.mul(lead, modulus[i]));
            }
            if (d == deg) break;
        }
        prod.resize(deg);
        return prod;
    }

    Elem pow(const Elem& a, std::uint64_t e) const {
        Elem r = zero();
        r[0] = 1;
        Elem b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    // Multiplication by e as an F_q-linear map on coefficient vectors:
    // column j holds the coefficients of e * y^j.
    Matrix mul_matrix(const Elem& e) const {
        Matrix m(base, deg, deg);
        for (std::uint32_t j = 0; j < deg; ++j) {
            Elem yj = zero();
            yj[j] = 1;
            Elem col = mul(e, yj);
            for (std::uint32_t i = 0; i < deg; ++i) m.at(i, j) = col[i];
        }
        return m;
    }
};

inline ExtField make_ext(FieldPtr base, std::uint32_t deg) {
    if (deg < 1) throw Error(Errc::DegreeZero, "extension degree must be >= 1");
    const Field& f = *base;
    ExtField ef;
    ef.base = base;
    ef.deg = deg;
    if (deg == 1) {
        ef.modulus = {0, 1};  // y
        return ef;
    }
    // search candidates in (c_0, ..., c_{deg-1}) order, constant term most
    // significant; irreducibility over F_q by trial division
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < deg; ++i) count *= f.q();
    auto poly_mod_q = [&f](std::vector<gf_elem> a, const std::vector<gf_elem>& b) {
        while (!a.empty() && a.back() == 0) a.pop_back();
        while (a.size() >= b.size()) {
            gf_elem lead = a.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = f.sub(a[shift + i], f.mul(lead, b[i]));
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return a;
    };
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<gf_elem> g(deg + 1, 0);
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < deg; ++i) {
            g[deg - 1 - i] = static_cast<gf_elem>(v % f.q());
            v /= f.q();
        }
        g[deg] = 1;
        bool irreducible = true;
        for (std::uint32_t d = 1; 2 * d <= deg && irreducible; ++d) {
            std::uint64_t dcount = 1;
            for (std::uint32_t i = 0; i < d; ++i) dcount *= f.q();
            for (std::uint64_t di = 0; di < dcount; ++di) {
                std::vector<gf_elem> h(d + 1, 0);
                std::uint64_t dv = di;
                for (std::uint32_t i = 0; i < d; ++i) {
                    h[i] = static_cast<gf_elem>(dv % f.q());
                    dv /= f.q();
                }
                h[d] = 1;
                if (poly_mod_q(g, h).empty()) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) {
            ef.modulus = std::move(g);
            return ef;
        }
    }
    throw Error(Errc::DomainError, "no irreducible modulus over F_q found");  // unreachable
}

}  // namespace ext

// Reed-Solomon over F_{q^{k_in}} with K message symbols and evaluation
// points enumerated by element code 0..n-1, flattened to F_q blocks of
// length k_in. A block is zero iff the extension symbol is zero, so the
// MDS distance survives flattening: delta >= 1 - (K-1)/n.
inline AdditiveCode rs_outer_additive(FieldPtr field, std::uint32_t k_in, std::uint32_t n,
                                      std::uint32_t K) {
    if (K == 0 || K > n) throw Error(Errc::ShapeMismatch, "need 1 <= K <= n");
    BigInt ext_size = 1;
    for (std::uint32_t i = 0; i < k_in; ++i) ext_size *= field->q();
    if (ext_size < n) throw Error(Errc::FieldTooSmall, "q^k_in < n evaluation points");

    ext::ExtField ef = ext::make_ext(field, k_in);
    std::vector<Matrix> encoders;
    encoders.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        ext::ExtField::Elem beta = ef.from_code(i);
        Matrix enc(field, k_in, static_cast<std::uint32_t>(K) * k_in);
        ext::ExtField::Elem bpow = ef.from_code(1);  // beta^0 = 1
        for (std::uint32_t j = 0; j < K; ++j) {
            Matrix mj = ef.mul_matrix(bpow);
            for (std::uint32_t r = 0; r < k_in; ++r)
                for (std::uint32_t c = 0; c < k_in; ++c) enc.at(r, j * k_in + c) = mj.at(r, c);
            bpow = ef.mul(bpow, beta);
        }
        encoders.push_back(std::move(enc));
    }
    return AdditiveCode::create(std::move(field), K * k_in, k_in, n, std::move(encoders),
                                {"rs_outer", std::nullopt});
}

}  // namespace codeforge
