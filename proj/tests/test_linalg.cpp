#include <catch2/catch_amalgamated.hpp>

#include "codeforge/linalg.hpp"

#include <set>
#include <vector>

using namespace codeforge;

namespace {

Matrix mk(FieldPtr f, std::uint32_t r, std::uint32_t c, std::vector<gf_elem> data) {
    return Matrix(std::move(f), r, c, std::move(data));
}

Subspace random_subspace(FieldPtr f, std::uint32_t ambient, std::uint32_t max_dim, Rng& rng) {
    std::uint32_t rows = static_cast<std::uint32_t>(rng.below(max_dim + 1));
    Matrix m(f, rows, ambient);
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < ambient; ++j)
            m.at(i, j) = static_cast<gf_elem>(rng.below(f->q()));
    return Subspace::from_span(m);
}

// Exhaustive membership oracle: dimension via counting vectors of F_2^k
// lying in the subspace.
std::uint32_t dim_by_counting(const Subspace& s) {
    REQUIRE(s.field()->q() == 2);
    std::uint32_t count = 0;
    const std::uint32_t k = s.ambient();
    for (std::uint32_t v = 0; v < (1u << k); ++v) {
        std::vector<gf_elem> vec(k);
        for (std::uint32_t j = 0; j < k; ++j) vec[j] = (v >> j) & 1;
        if (s.contains_vector(vec)) ++count;
    }
    std::uint32_t d = 0;
    while ((1u << d) < count) ++d;
    REQUIRE((1u << d) == count);
    return d;
}

}  // namespace

TEST_CASE("rref canonical forms") {
    auto f2 = Field::create(2, 1);
    Matrix id = Matrix::identity(f2, 3);
    RrefResult rr = rref(id);
    CHECK(rr.canonical == id);
    CHECK(rr.rank == 3);

    Matrix z(f2, 2, 3);
    CHECK(rref(z).rank == 0);

    Matrix dup = mk(f2, 2, 2, {1, 1, 1, 1});
    RrefResult rd = rref(dup);
    CHECK(rd.rank == 1);
    CHECK(rd.canonical == mk(f2, 1, 2, {1, 1}));
}

TEST_CASE("rref is idempotent on random matrices") {
    for (std::uint32_t q : {2u, 3u, 4u}) {
        auto f = q == 4 ? Field::create(2, 2) : Field::create(q, 1);
        Rng rng(0xabc + q);
        for (int t = 0; t < 100; ++t) {
            std::uint32_t r = 1 + static_cast<std::uint32_t>(rng.below(4));
            std::uint32_t c = 1 + static_cast<std::uint32_t>(rng.below(5));
            Matrix m(f, r, c);
            for (std::uint32_t i = 0; i < r; ++i)
                for (std::uint32_t j = 0; j < c; ++j) m.at(i, j) = static_cast<gf_elem>(rng.below(q));
            Matrix once = rref(m).canonical;
            Matrix twice = rref(once).canonical;
            REQUIRE(once == twice);
        }
    }
}

TEST_CASE("kernel basics") {
    auto f2 = Field::create(2, 1);
    CHECK(kernel(Matrix::identity(f2, 3)).dim() == 0);
    CHECK(kernel(Matrix(f2, 2, 4)).dim() == 4);
    Subspace k = kernel(mk(f2, 1, 2, {1, 1}));
    CHECK(k.dim() == 1);
    CHECK(k.basis() == mk(f2, 1, 2, {1, 1}));
}

TEST_CASE("rank-nullity on random matrices") {
    auto f3 = Field::create(3, 1);
    Rng rng(77);
    for (int t = 0; t < 200; ++t) {
        std::uint32_t r = 1 + static_cast<std::uint32_t>(rng.below(4));
        std::uint32_t c = 1 + static_cast<std::uint32_t>(rng.below(5));
        Matrix m(f3, r, c);
        for (std::uint32_t i = 0; i < r; ++i)
            for (std::uint32_t j = 0; j < c; ++j) m.at(i, j) = static_cast<gf_elem>(rng.below(3));
        REQUIRE(kernel(m).dim() + rref(m).rank == c);
        // every kernel basis vector maps to zero
        Subspace k = kernel(m);
        for (std::uint32_t i = 0; i < k.dim(); ++i) {
            auto y = m.apply(k.basis().row(i));
            for (gf_elem v : y) REQUIRE(v == 0);
        }
    }
}

TEST_CASE("subspace operations: basics") {
    auto f2 = Field::create(2, 1);
    Subspace a = Subspace::from_span(mk(f2, 1, 2, {1, 0}));
    Subspace b = Subspace::from_span(mk(f2, 1, 2, {1, 1}));
    CHECK(intersect(a, a) == a);
    CHECK(sum(a, Subspace::zero(f2, 2)) == a);
    CHECK(intersect(a, b).dim() == 0);
    CHECK(sum(a, b) == Subspace::full(f2, 2));
}

TEST_CASE("modular dimension identity against exhaustive membership oracle") {
    auto f2 = Field::create(2, 1);
    Rng rng(1234);
    for (int t = 0; t < 100; ++t) {
        Subspace a = random_subspace(f2, 4, 4, rng);
        Subspace b = random_subspace(f2, 4, 4, rng);
        Subspace in = intersect(a, b);
        Subspace su = sum(a, b);
        REQUIRE(in.dim() + su.dim() == a.dim() + b.dim());
        // oracle: count vectors in intersection directly
        std::uint32_t oracle_dim = 0;
        {
            std::uint32_t count = 0;
            for (std::uint32_t v = 0; v < 16; ++v) {
                std::vector<gf_elem> vec(4);
                for (std::uint32_t j = 0; j < 4; ++j) vec[j] = (v >> j) & 1;
                if (a.contains_vector(vec) && b.contains_vector(vec)) ++count;
            }
            while ((1u << oracle_dim) < count) ++oracle_dim;
            REQUIRE((1u << oracle_dim) == count);
        }
        REQUIRE(in.dim() == oracle_dim);
        REQUIRE(dim_by_counting(in) == in.dim());
    }
}

TEST_CASE("modularity exhaustive on F_2^3") {
    auto f2 = Field::create(2, 1);
    SubspaceEnumerator en(f2, 3, 3);
    std::vector<Subspace> all;
    all.push_back(Subspace::zero(f2, 3));
    for (std::uint64_t i = 0; i < en.size(); ++i) all.push_back(en.at(i));
    for (const auto& a : all)
        for (const auto& b : all)
            REQUIRE(intersect(a, b).dim() + sum(a, b).dim() == a.dim() + b.dim());
}

TEST_CASE("annihilator and joint kernel are mutually inverse") {
    auto f2 = Field::create(2, 1);
    CHECK(annihilator(Subspace::zero(f2, 3)) == Subspace::full(f2, 3));
    CHECK(annihilator(Subspace::full(f2, 3)).dim() == 0);

    // exhaustive duality on F_2^4
    SubspaceEnumerator en(f2, 4, 4);
    for (std::uint64_t i = 0; i < en.size(); ++i) {
        Subspace a = en.at(i);
        REQUIRE(joint_kernel(annihilator(a)) == a);
        REQUIRE(annihilator(joint_kernel(a)) == a);
        REQUIRE(annihilator(a).dim() == 4 - a.dim());
    }
}

TEST_CASE("quotient map: kernel and pushforward identity") {
    auto f2 = Field::create(2, 1);

    SECTION("trivial kernels") {
        Matrix m = quotient_map(3, Subspace::zero(f2, 3));
        CHECK(m.rows() == 3);
        CHECK(kernel(m).dim() == 0);
        Matrix m2 = quotient_map(3, Subspace::full(f2, 3));
        CHECK(m2.rows() == 0);
    }

    SECTION("exhaustive pushforward on F_2^4") {
        SubspaceEnumerator en(f2, 4, 4);
        std::vector<Subspace> all;
        all.push_back(Subspace::zero(f2, 4));
        for (std::uint64_t i = 0; i < en.size(); ++i) all.push_back(en.at(i));
        for (const auto& w : all) {
            Matrix m = quotient_map(4, w);
            REQUIRE(kernel(m) == w);
            // section property
            Matrix s = quotient_section(4, w);
            Matrix ms = m * s.transpose();
            REQUIRE(ms == Matrix::identity(f2, 4 - w.dim()));
            for (const auto& u : all) {
                Subspace img = image(m, u);
                REQUIRE(img.dim() == sum(u, w).dim() - w.dim());
            }
        }
    }
}

TEST_CASE("matrix inverse round trip") {
    auto f4 = Field::create(2, 2);
    Rng rng(5150);
    for (int t = 0; t < 50; ++t) {
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(4));
        Matrix m(f4, n, n);
        // draw until invertible
        while (true) {
            for (auto i = 0u; i < n; ++i)
                for (auto j = 0u; j < n; ++j) m.at(i, j) = static_cast<gf_elem>(rng.below(4));
            if (rref(m).rank == n) break;
        }
        Matrix mi = inverse(m);
        REQUIRE(m * mi == Matrix::identity(f4, n));
        REQUIRE(mi * m == Matrix::identity(f4, n));
    }
    Matrix sing(f4, 2, 2);
    sing.at(0, 0) = 1;
    CHECK_THROWS_AS(inverse(sing), Error);
}

TEST_CASE("coordinates_in_basis solves row coordinates") {
    auto f3 = Field::create(3, 1);
    Rng rng(99);
    for (int t = 0; t < 50; ++t) {
        Subspace s = random_subspace(f3, 5, 3, rng);
        if (s.dim() == 0) continue;
        // random combos of basis rows
        Matrix combo(f3, 2, 5);
        Matrix coeff(f3, 2, s.dim());
        for (std::uint32_t i = 0; i < 2; ++i)
            for (std::uint32_t j = 0; j < s.dim(); ++j)
                coeff.at(i, j) = static_cast<gf_elem>(rng.below(3));
        combo = coeff * s.basis();
        Matrix solved = coordinates_in_basis(s.basis(), combo);
        REQUIRE(solved == coeff);
    }
}

TEST_CASE("subspace counts: product formula matches enumeration") {
    // (3,1,2) -> 7, (4,2,2) -> 50, r=0 -> empty
    CHECK(subspace_count(3, 1, 2) == 7);
    CHECK(subspace_count(4, 2, 2) == 50);
    CHECK(subspace_count(4, 0, 2) == 0);

    auto f2 = Field::create(2, 1);
    SubspaceEnumerator e1(f2, 3, 1);
    CHECK(e1.size() == 7);
    SubspaceEnumerator e2(f2, 4, 2);
    CHECK(e2.size() == 50);
}

TEST_CASE("enumeration has no duplicates and matches counts (ambient <= 5, q in {2,3,4})") {
    for (std::uint32_t q : {2u, 3u, 4u}) {
        auto f = q == 4 ? Field::create(2, 2) : Field::create(q, 1);
        for (std::uint32_t ambient = 1; ambient <= 5; ++ambient) {
            for (std::uint32_t r = 0; r <= ambient; ++r) {
                SubspaceEnumerator en(f, ambient, r);
                REQUIRE(BigInt(en.size()) == subspace_count(ambient, r, q));
                std::set<std::vector<gf_elem>> seen;
                for (std::uint64_t i = 0; i < en.size(); ++i) {
                    Subspace s = en.at(i);
                    REQUIRE(s.dim() >= 1);
                    REQUIRE(s.dim() <= r);
                    // canonicity: rref fixpoint
                    REQUIRE(rref(s.basis()).canonical == s.basis());
                    auto key = s.basis().data();
                    key.push_back(static_cast<gf_elem>(s.dim()));
                    REQUIRE(seen.insert(key).second);
                }
            }
        }
    }
}

TEST_CASE("enumeration order is by dimension then deterministic") {
    auto f2 = Field::create(2, 1);
    SubspaceEnumerator en(f2, 4, 2);
    std::uint32_t last_dim = 1;
    for (std::uint64_t i = 0; i < en.size(); ++i) {
        Subspace s = en.at(i);
        REQUIRE(s.dim() >= last_dim);
        last_dim = s.dim();
    }
    // restartability: re-created enumerator yields identical stream
    SubspaceEnumerator en2(f2, 4, 2);
    for (std::uint64_t i = 0; i < en.size(); ++i) REQUIRE(en.at(i) == en2.at(i));
}

TEST_CASE("enumeration budget guard reports the exact refused count") {
    auto f16 = Field::create(2, 4);
    Budget tight;
    tight.max_subspaces = 100;
    try {
        SubspaceEnumerator en(f16, 3, 2, tight);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BudgetExceeded);
        CHECK(std::string(e.what()).find("546") != std::string::npos);
    }
}

TEST_CASE("ambient mismatch is rejected") {
    auto f2 = Field::create(2, 1);
    Subspace a = Subspace::full(f2, 2);
    Subspace b = Subspace::full(f2, 3);
    CHECK_THROWS_AS(intersect(a, b), Error);
    CHECK_THROWS_AS(sum(a, b), Error);
}
