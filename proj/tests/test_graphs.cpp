#include <catch2/catch_amalgamated.hpp>

#include "codeforge/graphs.hpp"

#include <vector>

using namespace codeforge;

TEST_CASE("complete bipartite graph") {
    BipartiteGraph g1 = BipartiteGraph::complete(1);
    CHECK(g1.d() == 1);

    BipartiteGraph g = BipartiteGraph::complete(4);
    CHECK(g.d() == 4);
    g.validate();  // consistency by construction

    // sigma2 = 0 for all n: the deflated matrix is exactly zero
    for (std::uint32_t n : {1u, 2u, 3u, 5u, 8u}) {
        SpectralCertificate cert = sigma2(BipartiteGraph::complete(n));
        REQUIRE(cert.lambda_bound <= 1e-9);
    }
}

TEST_CASE("random regular graphs are deterministic and consistent") {
    BipartiteGraph a = BipartiteGraph::random_regular(16, 3, 99);
    BipartiteGraph b = BipartiteGraph::random_regular(16, 3, 99);
    CHECK(a.left() == b.left());
    a.validate();

    BipartiteGraph c = BipartiteGraph::random_regular(16, 3, 100);
    CHECK(a.left() != c.left());
}

TEST_CASE("matching has sigma2 = 1") {
    BipartiteGraph m = BipartiteGraph::random_regular(8, 1, 5);
    SpectralCertificate cert = sigma2(m);
    CHECK(cert.lambda_bound >= 1.0 - 1e-9);
    CHECK(cert.lambda_bound <= 1.0);
}

TEST_CASE("disconnected union of two complete halves has sigma2 = 1") {
    // left/right [0..3] complete among first half, [4..7] among second
    std::uint32_t n = 8, d = 4;
    std::vector<std::vector<EdgeRef>> left(n, std::vector<EdgeRef>(d));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t l = 0; l < d; ++l) {
            std::uint32_t base = i < 4 ? 0u : 4u;
            left[i][l] = {base + l, i % 4};
        }
    BipartiteGraph g = BipartiteGraph::from_left(n, d, left);
    SpectralCertificate cert = sigma2(g);
    CHECK(cert.lambda_bound >= 1.0 - 1e-9);
}

TEST_CASE("random regular (n=64, d=8, seed=7) is a decent expander") {
    BipartiteGraph g = BipartiteGraph::random_regular(64, 8, 7);
    SpectralCertificate exact = sigma2(g, 1e-9, SpectralMethod::ExactSvd);
    CHECK(exact.lambda_bound < 0.7);
    // power iteration agrees with the dense oracle
    SpectralCertificate power = sigma2(g, 1e-9, SpectralMethod::PowerIteration);
    CHECK(std::abs(power.lambda_bound - exact.lambda_bound) < 1e-6);
}

TEST_CASE("spectral cap is enforced") {
    BipartiteGraph g = BipartiteGraph::random_regular(32, 2, 1);
    CHECK_THROWS_AS(sigma2(g, 1e-9, SpectralMethod::Auto, 16), Error);
}

TEST_CASE("mixing check basics") {
    BipartiteGraph g = BipartiteGraph::complete(6);
    SpectralCertificate cert = sigma2(g);

    SECTION("constant x gives lhs = 0") {
        std::vector<double> x(6, 3.25);
        MixingReport rep = mixing_check(g, cert, x);
        CHECK(rep.lhs == 0.0);
        CHECK(rep.mu == 3.25);
    }

    SECTION("complete bipartite: every y_j equals mu") {
        Rng rng(8);
        std::vector<double> x(6);
        for (auto& v : x) v = rng.unit() * 2 - 1;
        MixingReport rep = mixing_check(g, cert, x);
        CHECK(rep.lhs <= 1e-18);
    }
}

TEST_CASE("double counting: averaging preserves the mean") {
    BipartiteGraph g = BipartiteGraph::random_regular(20, 4, 3);
    Rng rng(12);
    std::vector<double> x(20);
    for (auto& v : x) v = rng.unit() * 2 - 1;
    double mu = 0;
    for (double v : x) mu += v;
    mu /= 20;
    double mu_y = 0;
    for (std::uint32_t j = 0; j < 20; ++j) {
        double yj = 0;
        for (const EdgeRef& e : g.right()[j]) yj += x[e.vertex];
        mu_y += yj / g.d();
    }
    mu_y /= 20;
    CHECK(std::abs(mu - mu_y) < 1e-12);
}

TEST_CASE("mixing holds across 500 random graph/vector trials") {
    Rng rng(0xac5);
    int done = 0;
    while (done < 500) {
        std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(63));
        std::uint32_t kind = static_cast<std::uint32_t>(rng.below(3));
        BipartiteGraph g = kind == 0   ? BipartiteGraph::complete(n)
                           : kind == 1 ? BipartiteGraph::random_regular(n, 1, rng.next())
                                       : BipartiteGraph::random_regular(
                                             n, 2 + static_cast<std::uint32_t>(rng.below(7)), rng.next());
        SpectralCertificate cert = sigma2(g, 1e-9);
        std::vector<double> x(g.n());
        for (auto& v : x) v = rng.unit() * 2 - 1;
        REQUIRE_NOTHROW(mixing_check(g, cert, x));
        // random +-1 vectors against the certified lambda
        for (auto& v : x) v = rng.coin() ? 1.0 : -1.0;
        MixingReport rep = mixing_check(g, cert, x);
        REQUIRE(rep.lhs <= cert.lambda_bound * cert.lambda_bound + 1e-9);
        ++done;
    }
}

TEST_CASE("broken cross-consistency is rejected with the edge named") {
    std::uint32_t n = 2, d = 2;
    std::vector<std::vector<EdgeRef>> left(n, std::vector<EdgeRef>(d));
    left[0][0] = {0, 0};
    left[0][1] = {1, 0};
    left[1][0] = {0, 0};  // claims the same right slot as left (0,0)
    left[1][1] = {1, 1};
    try {
        BipartiteGraph::from_left(n, d, left);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        CHECK(std::string(e.what()).find("(0, 0)") != std::string::npos);
    }
}
