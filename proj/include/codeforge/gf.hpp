#pragma once

// Exact arithmetic in prime-power fields F_q, q = p^m <= 2^16.
//
// Construction is deterministic: the modulus is the lexicographically least
// monic irreducible polynomial of degree m over F_p, coefficients compared
// from the constant term upward. Multiplication, inversion and powering run
// on log/antilog tables built from the least primitive element, so cross-run
// and cross-platform results are bit-identical.

#include "codeforge/common.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <vector>

namespace codeforge {

// Element codes are packed base-p digit vectors, least significant digit =
// constant term. Code 0 is the field zero, code 1 the field one.
using gf_elem = std::uint16_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over F_p as coefficient vectors, constant term first.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    poly_trim(a);
    while (a.size() >= b.size()) {
        // b is monic, so elimination needs no inverse.
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint32_t sub = (lead * b[i]) % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        poly_trim(a);
    }
    return a;
}

inline bool poly_is_zero(const Poly& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

// Irreducibility by trial division against every monic polynomial of
// degree 1..deg/2.
inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            g[d] = 1;
            Poly r = poly_mod(f, g, p);
            if (poly_is_zero(r)) return false;
        }
    }
    return true;
}

}  // namespace detail

class Field {
public:
    // q = p^m is capped at 2^16 so all arithmetic is table-driven.
    static constexpr std::uint32_t kMaxQ = 1u << 16;

    static FieldPtr create(std::uint32_t p, std::uint32_t m) {
        if (m < 1) throw Error(Errc::DegreeZero, "extension degree must be >= 1");
        if (!detail::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            if (q > kMaxQ) throw Error(Errc::CapExceeded, "p^m exceeds the 2^16 field cap");
        }
        return std::shared_ptr<const Field>(new Field(p, m, static_cast<std::uint32_t>(q)));
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }

    // Monic modulus, length m+1, constant term first. For m = 1 this is x.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    // Least code with multiplicative order q-1.
    gf_elem generator() const { return generator_; }

    bool operator==(const Field& other) const { return p_ == other.p_ && m_ == other.m_; }
    bool operator!=(const Field& other) const { return !(*this == other); }

    void check_element(std::uint32_t a) const {
        if (a >= q_) throw Error(Errc::DomainError, "element code out of range");
    }

    gf_elem add(gf_elem a, gf_elem b) const {
        if (p_ == 2) return a ^ b;
        std::uint32_t out = 0, pw = 1;
        std::uint32_t x = a, y = b;
        for (std::uint32_t i = 0; i < m_; ++i) {
            out += ((x % p_ + y % p_) % p_) * pw;
            x /= p_;
            y /= p_;
            pw *= p_;
        }
        return static_cast<gf_elem>(out);
    }

    gf_elem neg(gf_elem a) const {
        if (p_ == 2) return a;
        std::uint32_t out = 0, pw = 1, x = a;
        for (std::uint32_t i = 0; i < m_; ++i) {
            out += ((p_ - x % p_) % p_) * pw;
            x /= p_;
            pw *= p_;
        }
        return static_cast<gf_elem>(out);
    }

    gf_elem sub(gf_elem a, gf_elem b) const { return add(a, neg(b)); }

    gf_elem mul(gf_elem a, gf_elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    gf_elem inv(gf_elem a) const {
        if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
        return exp_[(q_ - 1) - log_[a]];
    }

    gf_elem pow(gf_elem a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        std::uint64_t em = e % (q_ - 1);
        return exp_[(static_cast<std::uint64_t>(log_[a]) * em) % (q_ - 1)];
    }

    // Multiplicative order of a nonzero element.
    std::uint32_t order(gf_elem a) const {
        if (a == 0) throw Error(Errc::DomainError, "order of zero");
        std::uint32_t n = q_ - 1;
        std::uint32_t l = log_[a];
        // order = (q-1)/gcd(q-1, log a)
        std::uint32_t g = std::gcd(n, l == 0 ? n : l);
        return n / g;
    }

    enum class ArithOp { Add, Sub, Mul, Inv, Pow };

    // CLI-facing dispatcher; b is the exponent for Pow and ignored for Inv.
    gf_elem arith(ArithOp op, gf_elem a, std::uint64_t b) const {
        check_element(a);
        if (op != ArithOp::Pow) check_element(static_cast<std::uint32_t>(b));
        switch (op) {
            case ArithOp::Add: return add(a, static_cast<gf_elem>(b));
            case ArithOp::Sub: return sub(a, static_cast<gf_elem>(b));
            case ArithOp::Mul: return mul(a, static_cast<gf_elem>(b));
            case ArithOp::Inv: return inv(a);
            case ArithOp::Pow: return pow(a, b);
        }
        throw Error(Errc::DomainError, "unknown arith op");
    }

private:
    Field(std::uint32_t p, std::uint32_t m, std::uint32_t q) : p_(p), m_(m), q_(q) {
        find_modulus();
        find_generator();
        build_tables();
    }

    // Slow-path multiply via polynomial convolution mod the modulus; used
    // only while bootstrapping the tables.
    gf_elem slow_mul(gf_elem a, gf_elem b) const {
        if (m_ == 1) return static_cast<gf_elem>((static_cast<std::uint64_t>(a) * b) % p_);
        std::vector<std::uint32_t> da(m_), db(m_), prod(2 * m_ - 1, 0);
        std::uint32_t x = a, y = b;
        for (std::uint32_t i = 0; i < m_; ++i, x /= p_, y /= p_) {
            da[i] = x % p_;
            db[i] = y % p_;
        }
        for (std::uint32_t i = 0; i < m_; ++i)
            for (std::uint32_t j = 0; j < m_; ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        detail::Poly r = detail::poly_mod(prod, modulus_, p_);
        std::uint32_t out = 0, pw = 1;
        for (std::size_t i = 0; i < r.size(); ++i, pw *= p_) out += r[i] * pw;
        return static_cast<gf_elem>(out);
    }

    gf_elem slow_pow(gf_elem a, std::uint64_t e) const {
        gf_elem r = 1, base = a;
        while (e) {
            if (e & 1) r = slow_mul(r, base);
            base = slow_mul(base, base);
            e >>= 1;
        }
        return r;
    }

    void find_modulus() {
        if (m_ == 1) {
            modulus_ = {0, 1};
            return;
        }
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < m_; ++i) count *= p_;
        // Candidates ordered by (c_0, c_1, ..., c_{m-1}) with the constant
        // term most significant.
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            detail::Poly f(m_ + 1, 0);
            std::uint64_t v = idx;
            for (std::uint32_t i = 0; i < m_; ++i) {
                f[m_ - 1 - i] = static_cast<std::uint32_t>(v % p_);
                v /= p_;
            }
            f[m_] = 1;
            if (detail::poly_irreducible(f, p_)) {
                modulus_ = f;
                return;
            }
        }
        throw Error(Errc::DomainError, "no irreducible modulus found");  // unreachable
    }

    void find_generator() {
        std::uint32_t n = q_ - 1;
        std::vector<std::uint32_t> prime_factors;
        std::uint32_t t = n;
        for (std::uint32_t d = 2; d * d <= t; ++d) {
            if (t % d == 0) {
                prime_factors.push_back(d);
                while (t % d == 0) t /= d;
            }
        }
        if (t > 1) prime_factors.push_back(t);
        for (std::uint32_t g = 1; g < q_; ++g) {
            bool primitive = true;
            for (std::uint32_t r : prime_factors) {
                if (slow_pow(static_cast<gf_elem>(g), n / r) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                generator_ = static_cast<gf_elem>(g);
                return;
            }
        }
        throw Error(Errc::DomainError, "no primitive element found");  // unreachable
    }

    void build_tables() {
        const std::uint32_t n = q_ - 1;
        exp_.assign(2 * n, 1);
        log_.assign(q_, 0);
        gf_elem cur = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            exp_[i] = cur;
            log_[cur] = i;
            cur = slow_mul(cur, generator_);
        }
        for (std::uint32_t i = n; i < 2 * n; ++i) exp_[i] = exp_[i - n];
    }

    std::uint32_t p_, m_, q_;
    std::vector<std::uint32_t> modulus_;
    gf_elem generator_ = 1;
    std::vector<gf_elem> exp_;
    std::vector<std::uint32_t> log_;
};

inline FieldPtr field_create(std::uint32_t p, std::uint32_t m) { return Field::create(p, m); }

inline gf_elem primitive_element(const Field& f) { return f.generator(); }

}  // namespace codeforge
