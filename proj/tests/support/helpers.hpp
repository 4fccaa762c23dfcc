#pragma once

// Shared test fixtures and independent oracles. Everything here is
// test-only and deliberately naive: oracles must stay independent of the
// implementation paths they check.

#include "codeforge/codes.hpp"
#include "codeforge/design.hpp"

#include <optional>
#include <vector>

namespace codeforge::testing {

// The standing tiny code used across decode and design suites
// (q=2, k=3, s=2, n=4; fixed seed).
inline AdditiveCode tiny_corpus_code() {
    return random_linear_code(Field::create(2, 1), 3, 2, 4, 42);
}

// Seeded random code with parameters drawn in the AC-2 ranges
// (q=2, k <= 4, s <= 3, n <= 5), redrawing until injectivity is possible.
inline AdditiveCode random_tiny_code(std::uint64_t seed) {
    Rng rng(seed);
    while (true) {
        std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(4));
        std::uint32_t s = 1 + static_cast<std::uint32_t>(rng.below(3));
        std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(4));
        if (k > s * n) continue;
        return random_linear_code(Field::create(2, 1), k, s, n, rng.next());
    }
}

inline Subspace random_subspace_of(FieldPtr f, std::uint32_t ambient, std::uint32_t max_rows,
                                   Rng& rng) {
    std::uint32_t rows = static_cast<std::uint32_t>(rng.below(max_rows + 1));
    Matrix m(f, rows, ambient);
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < ambient; ++j)
            m.at(i, j) = static_cast<gf_elem>(rng.below(f->q()));
    return Subspace::from_span(m);
}

inline LocalProfile random_profile(FieldPtr f, std::uint32_t dim_v, std::uint32_t n, Rng& rng) {
    std::vector<Subspace> parts;
    for (std::uint32_t i = 0; i < n; ++i) parts.push_back(random_subspace_of(f, dim_v, dim_v, rng));
    return LocalProfile::make(dim_v, std::move(parts));
}

// Coordinate maps of the composition Enc_i o M.
inline std::vector<Matrix> compose_all(const AdditiveCode& code, const Matrix& m) {
    std::vector<Matrix> out;
    out.reserve(code.n());
    for (std::uint32_t i = 0; i < code.n(); ++i) out.push_back(code.encoder(i) * m);
    return out;
}

// Oracle: decides profile containment by exhausting every message subspace
// A of dimension dim V and every invertible phi. Tractable only for
// dim V <= 2 over F_2; used to validate the constructive directions.
inline std::optional<ContainmentWitness> exhaustive_containment_search(const AdditiveCode& code,
                                                                       const LocalProfile& profile) {
    const FieldPtr& f = code.field();
    const std::uint32_t v = profile.dim_v;
    if (f->q() != 2 || v > 2) throw Error(Errc::DomainError, "oracle limited to dim V <= 2 over F_2");
    if (v == 0) return ContainmentWitness{Subspace::zero(f, code.k()), Matrix(f, 0, 0)};

    std::vector<Matrix> phis;
    if (v == 1) {
        phis.push_back(Matrix(f, 1, 1, {1}));
    } else {
        for (std::uint32_t bits = 0; bits < 16; ++bits) {
            Matrix m(f, 2, 2,
                     {static_cast<gf_elem>(bits & 1), static_cast<gf_elem>((bits >> 1) & 1),
                      static_cast<gf_elem>((bits >> 2) & 1), static_cast<gf_elem>((bits >> 3) & 1)});
            if (rref(m).rank == 2) phis.push_back(std::move(m));
        }
    }
    SubspaceEnumerator en(f, code.k(), v);
    for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
        Subspace a = en.at(idx);
        if (a.dim() != v) continue;
        for (const Matrix& phi : phis) {
            ContainmentWitness w{a, phi};
            if (check_witness(code, profile, w).ok) return w;
        }
    }
    return std::nullopt;
}

}  // namespace codeforge::testing
