#include <catch2/catch_amalgamated.hpp>

#include "codeforge/gf.hpp"

#include <cstdint>
#include <vector>

using namespace codeforge;

TEST_CASE("field construction picks the canonical modulus") {
    auto f4 = Field::create(2, 2);
    // the unique irreducible quadratic over F_2
    CHECK(f4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(f4->q() == 4);

    auto f5 = Field::create(5, 1);
    CHECK(f5->q() == 5);
    CHECK(f5->modulus() == std::vector<std::uint32_t>{0, 1});

    CHECK_THROWS_AS(Field::create(4, 1), Error);
    CHECK_THROWS_AS(Field::create(1, 1), Error);
    CHECK_THROWS_AS(Field::create(2, 0), Error);
    CHECK_THROWS_AS(Field::create(2, 17), Error);  // q cap
}

TEST_CASE("extension arithmetic matches hand reduction in F_4") {
    auto f4 = Field::create(2, 2);
    // x * x = x + 1 mod x^2+x+1, i.e. codes mul(2,2) = 3
    CHECK(f4->mul(2, 2) == 3);
    CHECK(f4->inv(1) == 1);
    CHECK(f4->add(2, 3) == 1);
}

TEST_CASE("Fermat powering in F_5") {
    auto f5 = Field::create(5, 1);
    // oracle: repeated multiplication
    gf_elem acc = 1;
    for (int i = 0; i < 4; ++i) acc = f5->mul(acc, 2);
    CHECK(acc == 1);
    CHECK(f5->pow(2, 4) == 1);
    CHECK(f5->pow(2, 3) == 3);
}

TEST_CASE("primitive elements are least and full-order") {
    CHECK(Field::create(2, 1)->generator() == 1);
    CHECK(Field::create(5, 1)->generator() == 2);
    // F_4: x (code 2) has order 3; oracle by exhaustive powering
    auto f4 = Field::create(2, 2);
    CHECK(f4->generator() == 2);
    gf_elem g = f4->generator();
    gf_elem cur = g;
    std::uint32_t ord = 1;
    while (cur != 1) {
        cur = f4->mul(cur, g);
        ++ord;
    }
    CHECK(ord == f4->q() - 1);
}

TEST_CASE("primitive element order is exactly q-1, exhaustively for q <= 256") {
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 8}, {3, 1}, {3, 2}, {3, 4}, {5, 2}, {7, 2}, {13, 1}, {251, 1}}) {
        auto f = Field::create(p, m);
        gf_elem g = f->generator();
        gf_elem cur = 1;
        for (std::uint32_t e = 1; e + 1 < f->q(); ++e) {
            cur = f->mul(cur, g);
            REQUIRE(cur != 1);  // no smaller positive power hits 1
        }
        cur = f->mul(cur, g);
        REQUIRE(cur == 1);
    }
}

TEST_CASE("field axioms hold on random triples") {
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {3, 2}, {7, 1}, {2, 8}}) {
        auto f = Field::create(p, m);
        Rng rng(0x90f1e5d + p * 100 + m);
        for (int t = 0; t < 1000; ++t) {
            gf_elem a = static_cast<gf_elem>(rng.below(f->q()));
            gf_elem b = static_cast<gf_elem>(rng.below(f->q()));
            gf_elem c = static_cast<gf_elem>(rng.below(f->q()));
            REQUIRE(f->add(a, b) == f->add(b, a));
            REQUIRE(f->mul(a, b) == f->mul(b, a));
            REQUIRE(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
            REQUIRE(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
            REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            REQUIRE(f->sub(f->add(a, b), b) == a);
            if (a != 0) REQUIRE(f->mul(a, f->inv(a)) == 1);
        }
    }
}

TEST_CASE("division by zero is rejected") {
    auto f = Field::create(2, 2);
    CHECK_THROWS_AS(f->inv(0), Error);
    try {
        f->inv(0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DivisionByZero);
    }
}

TEST_CASE("pow handles edge exponents") {
    auto f = Field::create(3, 2);
    CHECK(f->pow(0, 0) == 1);
    CHECK(f->pow(0, 5) == 0);
    CHECK(f->pow(5, 0) == 1);
    for (gf_elem a = 1; a < f->q(); ++a) REQUIRE(f->pow(a, f->q() - 1) == 1);
}
