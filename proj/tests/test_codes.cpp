#include <catch2/catch_amalgamated.hpp>

#include "codeforge/codes.hpp"

#include <set>
#include <vector>

using namespace codeforge;

namespace {

AdditiveCode repetition(FieldPtr f, std::uint32_t n) {
    std::vector<Matrix> encoders(n, Matrix(f, 1, 1, {1}));
    return AdditiveCode::create(f, 1, 1, n, std::move(encoders));
}

}  // namespace

TEST_CASE("code construction validates shape and injectivity") {
    auto f2 = Field::create(2, 1);

    AdditiveCode rep = repetition(f2, 4);
    CHECK(rep.rate() == Rat(1, 4));

    // identity split: k = s*n, encoders are row slices of the identity
    std::vector<Matrix> slices;
    for (std::uint32_t i = 0; i < 3; ++i) {
        Matrix e(f2, 2, 6);
        e.at(0, 2 * i) = 1;
        e.at(1, 2 * i + 1) = 1;
        slices.push_back(e);
    }
    AdditiveCode split = AdditiveCode::create(f2, 6, 2, 3, std::move(slices));
    CHECK(split.rate() == Rat(1));

    // zero stacked column -> not injective
    std::vector<Matrix> bad(4, Matrix(f2, 1, 2, {1, 0}));
    try {
        AdditiveCode::create(f2, 2, 1, 4, std::move(bad));
        FAIL("expected NotInjective");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInjective);
    }
}

TEST_CASE("encode basics and linearity") {
    auto f2 = Field::create(2, 1);
    AdditiveCode rep = repetition(f2, 5);

    std::vector<gf_elem> zero{0};
    CHECK(rep.encode(zero).block_weight() == 0);
    std::vector<gf_elem> one{1};
    Codeword cw = rep.encode(one);
    CHECK(cw.block_weight() == 5);
    for (gf_elem s : cw.symbols) CHECK(s == 1);

    // encode(x+y) = encode(x) + encode(y): recompute directly per block
    auto f4 = Field::create(2, 2);
    AdditiveCode rc = random_linear_code(f4, 3, 2, 4, 11);
    Rng rng(21);
    for (int t = 0; t < 50; ++t) {
        std::vector<gf_elem> x(3), y(3), xy(3);
        for (int j = 0; j < 3; ++j) {
            x[j] = static_cast<gf_elem>(rng.below(4));
            y[j] = static_cast<gf_elem>(rng.below(4));
            xy[j] = f4->add(x[j], y[j]);
        }
        Codeword cx = rc.encode(x), cy = rc.encode(y), cxy = rc.encode(xy);
        for (std::size_t i = 0; i < cxy.symbols.size(); ++i)
            REQUIRE(cxy.symbols[i] == f4->add(cx.symbols[i], cy.symbols[i]));
    }
}

TEST_CASE("min distance on closed-form codes") {
    auto f2 = Field::create(2, 1);
    CHECK(min_distance(repetition(f2, 6)).delta == Rat(1));

    std::vector<Matrix> slices;
    for (std::uint32_t i = 0; i < 4; ++i) {
        Matrix e(f2, 1, 4);
        e.at(0, i) = 1;
        slices.push_back(e);
    }
    AdditiveCode split = AdditiveCode::create(f2, 4, 1, 4, std::move(slices));
    CHECK(min_distance(split).delta == Rat(1, 4));
}

TEST_CASE("min distance vs independent codeword-set oracle") {
    auto f2 = Field::create(2, 1);
    AdditiveCode code = random_linear_code(f2, 3, 2, 4, 1729);
    DistanceResult d = min_distance(code);

    // witness re-encodes to the reported weight
    CHECK(code.encode(d.witness).block_weight() == d.weight);

    // oracle: enumerate the full codeword set, min over distinct pairs of
    // the block Hamming distance
    std::vector<Codeword> words;
    for (std::uint64_t i = 0; i < 8; ++i) words.push_back(code.encode(code.message_at(i)));
    std::uint32_t best = UINT32_MAX;
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b) {
            std::uint32_t diff = 0;
            for (std::uint32_t j = 0; j < code.n(); ++j) {
                for (std::uint32_t t = 0; t < code.s(); ++t)
                    if (words[a].symbols[j * code.s() + t] != words[b].symbols[j * code.s() + t]) {
                        ++diff;
                        break;
                    }
            }
            best = std::min(best, diff);
        }
    REQUIRE(Rat(best, code.n()) == d.delta);
}

TEST_CASE("min distance respects worker partitioning") {
    auto f2 = Field::create(2, 1);
    AdditiveCode code = random_linear_code(f2, 4, 2, 5, 4242);
    DistanceResult d1 = min_distance(code, default_budget(), 1);
    DistanceResult d3 = min_distance(code, default_budget(), 3);
    CHECK(d1.delta == d3.delta);
    CHECK(d1.witness == d3.witness);
}

TEST_CASE("min distance budget guard") {
    auto f16 = Field::create(2, 4);
    AdditiveCode code = folded_rs(f16, 4, 3, 3);
    Budget tight;
    tight.max_messages = 100;
    CHECK_THROWS_AS(min_distance(code, tight), Error);
}

TEST_CASE("plain Reed-Solomon is MDS (q=8, n=7, k=3)") {
    auto f8 = Field::create(2, 3);
    AdditiveCode rs = folded_rs(f8, 1, 7, 3);
    // oracle: exhaustive weight scan; MDS prediction 1 - (k-1)/n
    CHECK(min_distance(rs).delta == Rat(5, 7));
}

TEST_CASE("folded RS with k <= s has full distance") {
    auto f16 = Field::create(2, 4);
    AdditiveCode frs = folded_rs(f16, 4, 3, 3);
    CHECK(frs.rate() == Rat(1, 4));
    // a nonzero polynomial of degree < 3 cannot vanish on 4 block points
    CHECK(min_distance(frs).delta == Rat(1));
}

TEST_CASE("folded RS default evaluation points satisfy distinctness") {
    auto f16 = Field::create(2, 4);
    const Field& f = *f16;
    FrsParams p = FrsParams::defaults(f, 4, 3);
    std::set<gf_elem> pts;
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t t = 0; t < 4; ++t) {
            gf_elem pt = f.mul(p.evals[i], f.pow(p.gamma, t));
            REQUIRE(pt != 0);
            REQUIRE(pts.insert(pt).second);
        }
}

TEST_CASE("folded RS rejects bad parameters") {
    auto f4 = Field::create(2, 2);
    CHECK_THROWS_AS(folded_rs(f4, 2, 2, 2), Error);  // q = 4 <= s*n = 4
    auto f16 = Field::create(2, 4);
    FrsParams bad = FrsParams::defaults(*f16, 2, 3);
    bad.evals[1] = bad.evals[0];  // collision
    CHECK_THROWS_AS(folded_rs(f16, 2, 3, 2, bad), Error);
    FrsParams nonprim = FrsParams::defaults(*f16, 2, 3);
    nonprim.gamma = 1;
    CHECK_THROWS_AS(folded_rs(f16, 2, 3, 2, nonprim), Error);
}

TEST_CASE("random linear codes are deterministic per seed") {
    auto f2 = Field::create(2, 1);
    AdditiveCode a = random_linear_code(f2, 2, 16, 4, 7);
    AdditiveCode b = random_linear_code(f2, 2, 16, 4, 7);
    for (std::uint32_t i = 0; i < 4; ++i) REQUIRE(a.encoder(i) == b.encoder(i));
    CHECK(a.rate() == Rat(1, 32));

    AdditiveCode c = random_linear_code(f2, 2, 16, 4, 8);
    bool differs = false;
    for (std::uint32_t i = 0; i < 4 && !differs; ++i) differs = !(a.encoder(i) == c.encoder(i));
    CHECK(differs);
}

TEST_CASE("extension field helper: canonical modulus and field axioms") {
    auto f2 = Field::create(2, 1);
    ext::ExtField e4 = ext::make_ext(f2, 2);
    CHECK(e4.modulus == std::vector<gf_elem>{1, 1, 1});  // y^2+y+1

    Rng rng(31337);
    for (int t = 0; t < 200; ++t) {
        auto a = e4.from_code(rng.below(4));
        auto b = e4.from_code(rng.below(4));
        auto c = e4.from_code(rng.below(4));
        REQUIRE(e4.mul(a, b) == e4.mul(b, a));
        REQUIRE(e4.mul(e4.mul(a, b), c) == e4.mul(a, e4.mul(b, c)));
        REQUIRE(e4.mul(a, e4.add(b, c)) == e4.add(e4.mul(a, b), e4.mul(a, c)));
    }
    // nonzero elements satisfy a^(q^deg - 1) = 1
    for (std::uint64_t code = 1; code < 4; ++code) {
        auto a = e4.from_code(code);
        REQUIRE(e4.pow(a, 3) == e4.from_code(1));
    }
}

TEST_CASE("outer RS code over the extension field") {
    auto f2 = Field::create(2, 1);

    SECTION("K = 1 is repetition over the extension: delta = 1") {
        AdditiveCode rep = rs_outer_additive(f2, 2, 4, 1);
        CHECK(min_distance(rep).delta == Rat(1));
    }

    SECTION("(q=2, k_in=2, n=4, K=2): k=4, R=1/2, delta >= 3/4") {
        AdditiveCode outer = rs_outer_additive(f2, 2, 4, 2);
        CHECK(outer.k() == 4);
        CHECK(outer.s() == 2);
        CHECK(outer.rate() == Rat(1, 2));
        // exhaustive over 16 messages
        CHECK(min_distance(outer).delta >= Rat(3, 4));
    }

    SECTION("rate identity R = K/n independent of k_in") {
        for (std::uint32_t k_in : {2u, 3u, 4u}) {
            AdditiveCode outer = rs_outer_additive(f2, k_in, 4, 2);
            REQUIRE(outer.rate() == Rat(2, 4));
        }
    }

    SECTION("field too small") {
        CHECK_THROWS_AS(rs_outer_additive(f2, 1, 4, 2), Error);  // q^1 = 2 < 4
    }
}

TEST_CASE("rate is exact for every constructed code") {
    auto f8 = Field::create(2, 3);
    CHECK(folded_rs(f8, 1, 7, 3).rate() == Rat(3, 7));
    CHECK(folded_rs(f8, 2, 3, 4).rate() == Rat(4, 6));
    auto f2 = Field::create(2, 1);
    CHECK(random_linear_code(f2, 2, 16, 4, 7).rate() == Rat(2, 64));
}
