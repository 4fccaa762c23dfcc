#include <catch2/catch_amalgamated.hpp>

#include "codeforge/cli.hpp"
#include "support/helpers.hpp"

#include <filesystem>
#include <string>
#include <vector>

using namespace codeforge;
namespace fs = std::filesystem;

namespace {

int run(std::initializer_list<std::string> args) {
    return cli::run_cli(std::vector<std::string>(args));
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("codeforge_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}) == 2);
    CHECK(run({"no-such-command"}) == 2);
    CHECK(run({"field", "--p", "2"}) == 2);       // missing --m
    CHECK(run({"field", "--p", "4", "--m", "1"}) == 2);  // composite p
}

TEST_CASE("field subcommand writes the artifact and manifest") {
    TempDir tmp("field");
    CHECK(run({"field", "--p", "2", "--m", "2", "--out", tmp.sub("f")}) == 0);
    io::json f = io::load_file(tmp.sub("f") + "/field.json");
    CHECK(f["p"] == 2);
    CHECK(f["modulus"] == std::vector<int>{1, 1, 1});
    io::json manifest = io::load_file(tmp.sub("f") + "/manifest.json");
    CHECK(manifest["command"] == "field");
    REQUIRE(manifest["artifacts"].size() == 1);
    // the recorded hash matches the file content
    std::string content = io::read_file(tmp.sub("f") + "/field.json");
    CHECK(manifest["artifacts"][0]["hash"] == hash_hex(content));
}

TEST_CASE("full pipeline through the CLI surface") {
    TempDir tmp("pipeline");

    REQUIRE(run({"build-outer", "--p", "2", "--m", "1", "--k-in", "2", "--n", "4", "--K", "2",
                 "--out", tmp.sub("outer")}) == 0);
    REQUIRE(run({"search-inner", "--p", "2", "--m", "1", "--k-in", "2", "--s", "16", "--d", "4",
                 "--r", "2", "--epsilon", "1/2", "--seed", "7", "--out", tmp.sub("inner")}) == 0);
    REQUIRE(run({"build-graph", "--kind", "complete", "--n", "4", "--out", tmp.sub("graph")}) == 0);
    REQUIRE(run({"compose-ael", "--outer", tmp.sub("outer") + "/outer.json", "--inner",
                 tmp.sub("inner") + "/inner.json", "--inner-cert",
                 tmp.sub("inner") + "/inner.cert.json", "--graph", tmp.sub("graph") + "/graph.json",
                 "--r", "2", "--epsilon", "1/100", "--out", tmp.sub("bundle")}) == 0);

    io::json report = io::load_file(tmp.sub("bundle") + "/report.json");
    CHECK(report["verdict"] == "pass");
    CHECK(report["hypothesis_holds"] == true);
    CHECK(report["rate"] == io::to_json(Rat(1, 64)));

    // the bundle directory carries the full artifact set
    for (const char* name :
         {"code.json", "outer.json", "inner.json", "graph.json", "certificates.json", "report.json"})
        REQUIRE(fs::exists(fs::path(tmp.sub("bundle")) / name));

    // report re-verifies the bundle
    CHECK(run({"report", "--bundle", tmp.sub("bundle")}) == 0);
}

TEST_CASE("identical seeds give byte-identical artifacts") {
    TempDir tmp("determinism");
    auto search = [&](const std::string& dir) {
        return run({"search-inner", "--p", "2", "--m", "1", "--k-in", "2", "--s", "8", "--d", "3",
                    "--r", "1", "--epsilon", "1/2", "--seed", "99", "--out", tmp.sub(dir)});
    };
    REQUIRE(search("a") == 0);
    REQUIRE(search("b") == 0);
    CHECK(io::read_file(tmp.sub("a") + "/inner.json") == io::read_file(tmp.sub("b") + "/inner.json"));
    CHECK(io::read_file(tmp.sub("a") + "/inner.cert.json") ==
          io::read_file(tmp.sub("b") + "/inner.cert.json"));
}

TEST_CASE("certify-design and check-decoding round trip") {
    TempDir tmp("decode");
    // a standing tiny code written by hand
    AdditiveCode code = testing::tiny_corpus_code();
    io::write_file(tmp.sub("code.json"), io::canonical_dump(io::to_json(code)));

    REQUIRE(run({"certify-design", "--code", tmp.sub("code.json"), "--r", "4", "--out",
                 tmp.sub("cert")}) == 0);
    std::string cert_path = tmp.sub("cert") + "/certificate.json";
    REQUIRE(fs::exists(cert_path));

    CHECK(run({"check-decoding", "--code", tmp.sub("code.json"), "--cert", cert_path, "--what",
               "list", "--r", "3", "--out", tmp.sub("ld")}) == 0);
    io::json ld = io::load_file(tmp.sub("ld") + "/report.json");
    CHECK(ld["pass"] == true);

    CHECK(run({"check-decoding", "--code", tmp.sub("code.json"), "--cert", cert_path, "--what",
               "recover", "--ell", "2", "--epsilon", "1/2", "--out", tmp.sub("lr")}) == 0);

    CHECK(run({"check-decoding", "--code", tmp.sub("code.json"), "--cert", cert_path, "--what",
               "curve", "--ell", "1", "--r", "4", "--epsilon", "1/2", "--trials", "20", "--seed",
               "3", "--out", tmp.sub("cv")}) == 0);

    // a certificate bound to a different code is rejected (exit 2)
    AdditiveCode other = random_linear_code(code.field(), 3, 2, 4, 777);
    io::write_file(tmp.sub("other.json"), io::canonical_dump(io::to_json(other)));
    CHECK(run({"check-decoding", "--code", tmp.sub("other.json"), "--cert", cert_path, "--what",
               "list", "--r", "2"}) == 2);
}

TEST_CASE("verify-lemmas runs all four suites") {
    CHECK(run({"verify-lemmas", "--seed", "7", "--trials", "40"}) == 0);
}

TEST_CASE("plan-params prints and serializes the plan") {
    TempDir tmp("plan");
    REQUIRE(run({"plan-params", "--ell", "2", "--R", "1/2", "--epsilon", "1/2", "--q", "2", "--out",
                 tmp.sub("plan")}) == 0);
    io::json plan = io::load_file(tmp.sub("plan") + "/plan.json");
    CHECK(plan["list_bound"] == 4);
    CHECK(plan["eps1_ok"] == true);
    CHECK(run({"plan-params", "--ell", "1", "--R", "1/2", "--epsilon", "1/2"}) == 2);
}

TEST_CASE("failed searches exit with 1 and report the best seen") {
    CHECK(run({"search-inner", "--p", "2", "--m", "1", "--k-in", "2", "--s", "1", "--d", "8", "--r",
               "2", "--epsilon", "0", "--attempts", "3", "--seed", "5"}) == 1);
}

TEST_CASE("budget flag caps the subspace scans") {
    TempDir tmp("budget");
    AdditiveCode code = testing::tiny_corpus_code();
    io::write_file(tmp.sub("code.json"), io::canonical_dump(io::to_json(code)));
    CHECK(run({"certify-design", "--code", tmp.sub("code.json"), "--r", "3", "--budget", "2"}) == 2);
}
