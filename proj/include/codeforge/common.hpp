#pragma once

// Shared plumbing for the codeforge library: error taxonomy, exact
// arithmetic aliases, deterministic RNG, budgets, and content hashing.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace codeforge {

using BigInt = boost::multiprecision::cpp_int;

// All ratios and thresholds in certificates are exact rationals; floats
// appear only in spectral bounds, which carry explicit tolerances.
using Rat = boost::rational<long long>;

inline std::string rat_str(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline long double rat_ld(const Rat& r) {
    return static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
}

// Ceiling of a nonnegative rational.
inline long long rat_ceil(const Rat& r) {
    long long n = r.numerator(), d = r.denominator();
    if (n <= 0) return 0;
    return (n + d - 1) / d;
}

enum class Errc {
    NotPrime,
    DegreeZero,
    DivisionByZero,
    AmbientMismatch,
    BudgetExceeded,
    NotInjective,
    FieldTooSmall,
    BadEvaluationPoints,
    RetriesExhausted,
    ShapeMismatch,
    CapExceeded,
    ViolationFound,
    InvalidWitness,
    NotViolating,
    IdentityViolated,
    PreconditionFailed,
    AttemptsExhausted,
    DomainError,
    ParseError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::DegreeZero: return "DegreeZero";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::AmbientMismatch: return "AmbientMismatch";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::NotInjective: return "NotInjective";
        case Errc::FieldTooSmall: return "FieldTooSmall";
        case Errc::BadEvaluationPoints: return "BadEvaluationPoints";
        case Errc::RetriesExhausted: return "RetriesExhausted";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::ViolationFound: return "ViolationFound";
        case Errc::InvalidWitness: return "InvalidWitness";
        case Errc::NotViolating: return "NotViolating";
        case Errc::IdentityViolated: return "IdentityViolated";
        case Errc::PreconditionFailed: return "PreconditionFailed";
        case Errc::AttemptsExhausted: return "AttemptsExhausted";
        case Errc::DomainError: return "DomainError";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

inline Error budget_error(const BigInt& refused, const std::string& what) {
    return Error(Errc::BudgetExceeded, what + " (exact count refused: " + refused.str() + ")");
}

// Enumeration and scan caps. CODE_FORGE_BUDGET overrides the subspace cap.
struct Budget {
    std::uint64_t max_subspaces = 10'000'000;     // enumerate_subspaces / tau_profile
    std::uint64_t max_messages = 1ull << 24;      // min_distance message scan
    std::uint64_t max_scan = 1ull << 24;          // decode exhaustive scans
    std::uint64_t max_dense_dim = 4096;           // sigma2 dense cap
};

inline Budget default_budget() {
    Budget b;
    if (const char* env = std::getenv("CODE_FORGE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) b.max_subspaces = v;
    }
    return b;
}

// Deterministic RNG. mt19937_64 output is fully specified by the standard;
// sampling goes through rejection so results do not depend on libstdc++'s
// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw Error(Errc::DomainError, "Rng::below(0)");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    bool coin() { return (gen_() >> 63) != 0; }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) / 9007199254740992.0; }

    // Derives an independent stream seed; used to split one user seed
    // across attempts/trials without correlated streams.
    static std::uint64_t split(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

// FNV-1a 64-bit, used for artifact content hashes in manifests and
// certificate/code cross-references. Integrity check, not cryptography.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::string hash_hex(std::string_view data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace codeforge
