#pragma once

// Batch front door. Every subcommand reads/writes the JSON artifact
// formats from io.hpp; runs with --out also write a manifest listing each
// produced artifact with its content hash.
//
// Exit contract: 0 = all verdicts pass, 1 = a verification verdict failed
// (witness emitted in the report), 2 = usage, parse, or budget error.

#include "codeforge/ael.hpp"
#include "codeforge/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace codeforge::cli {

constexpr const char* kVersion = "0.1.0";

// Rationals on the command line: "num/den" or a bare integer.
inline Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(text));
        long long num = std::stoll(text.substr(0, slash));
        long long den = std::stoll(text.substr(slash + 1));
        if (den <= 0) throw Error(Errc::DomainError, "denominator must be positive");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "cannot parse rational: " + text);
    }
}

namespace detail {

namespace fs = std::filesystem;

inline std::string dbl_str(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

class ArtifactWriter {
public:
    ArtifactWriter(std::string command, const std::string& out_dir)
        : start_(std::chrono::steady_clock::now()) {
        manifest_.command = std::move(command);
        manifest_.version = kVersion;
        if (!out_dir.empty()) dir_ = fs::path(out_dir);
    }

    bool enabled() const { return dir_.has_value(); }
    io::RunManifest& manifest() { return manifest_; }

    void input(const std::string& path) { manifest_.inputs.push_back(path); }
    void verdict(const std::string& key, const io::json& v) { manifest_.verdicts[key] = v; }

    void write(const std::string& name, const io::json& j) {
        if (!dir_) return;
        fs::create_directories(*dir_);
        std::string content = io::canonical_dump(j);
        io::write_file((*dir_ / name).string(), content);
        manifest_.artifacts.push_back({name, hash_hex(content)});
    }

    // Writes manifest.json (wall time lives only here) and passes the code
    // through.
    int finish(int code) {
        if (dir_) {
            manifest_.wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
                    .count();
            fs::create_directories(*dir_);
            io::write_file((*dir_ / "manifest.json").string(),
                           io::canonical_dump(io::to_json(manifest_)));
        }
        return code;
    }

private:
    std::chrono::steady_clock::time_point start_;
    std::optional<fs::path> dir_;
    io::RunManifest manifest_;
};

inline AdditiveCode load_code(const std::string& path) { return io::code_from_json(io::load_file(path)); }

inline AdditiveCode random_small_code(Rng& rng) {
    while (true) {
        std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(4));
        std::uint32_t s = 1 + static_cast<std::uint32_t>(rng.below(3));
        std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(4));
        if (k > s * n) continue;
        return random_linear_code(Field::create(2, 1), k, s, n, rng.next());
    }
}

// ---- verify-lemmas suites -------------------------------------------------

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::uint64_t count = 0;
    std::string detail;
};

inline SuiteResult suite_quotient_identity(std::uint64_t seed, std::uint64_t trials) {
    SuiteResult res{"quotient-identity", true, 0, ""};
    Rng rng(Rng::split(seed, 1));
    auto f2 = Field::create(2, 1);
    auto f3 = Field::create(3, 1);
    try {
        while (res.count < trials) {
            FieldPtr f = rng.coin() ? f2 : f3;
            std::uint32_t dim_v = 1 + static_cast<std::uint32_t>(rng.below(4));
            std::uint32_t parts = 1 + static_cast<std::uint32_t>(rng.below(5));
            std::vector<Subspace> vs;
            for (std::uint32_t i = 0; i < parts; ++i) {
                std::uint32_t rows = static_cast<std::uint32_t>(rng.below(dim_v + 1));
                Matrix m(f, rows, dim_v);
                for (std::uint32_t a = 0; a < rows; ++a)
                    for (std::uint32_t b = 0; b < dim_v; ++b)
                        m.at(a, b) = static_cast<gf_elem>(rng.below(f->q()));
                vs.push_back(Subspace::from_span(m));
            }
            LocalProfile profile = LocalProfile::make(dim_v, std::move(vs));
            auto rand_sub = [&](std::uint32_t amb) {
                std::uint32_t rows = static_cast<std::uint32_t>(rng.below(amb + 1));
                Matrix m(f, rows, amb);
                for (std::uint32_t a = 0; a < rows; ++a)
                    for (std::uint32_t b = 0; b < amb; ++b)
                        m.at(a, b) = static_cast<gf_elem>(rng.below(f->q()));
                return Subspace::from_span(m);
            };
            Rat alpha(static_cast<long long>(rng.below(7)) - 3, 1 + static_cast<long long>(rng.below(6)));
            quotient_potential_identity(rand_sub(dim_v), rand_sub(dim_v), profile, alpha);
            ++res.count;
        }
    } catch (const Error& e) {
        res.pass = false;
        res.detail = e.what();
    }
    return res;
}

inline SuiteResult suite_strictification(std::uint64_t seed, std::uint64_t trials) {
    SuiteResult res{"strictification", true, 0, ""};
    Rng rng(Rng::split(seed, 2));
    try {
        std::uint64_t rounds = std::min<std::uint64_t>(trials, 12);
        for (std::uint64_t t = 0; t < rounds; ++t) {
            AdditiveCode code = random_small_code(rng);
            std::uint32_t r = std::min(code.k(), 2u);
            DesignCertificate cert = tau_profile(code, r);
            auto [profile, witness] = profile_from_witness(code, cert.witness_at(r));
            Rat alpha = cert.tau_at(r) - Rat(1, 2LL * code.n() * 2);
            Subspace full_v = Subspace::full(code.field(), profile.dim_v);
            if (potential(full_v, profile, alpha).value >= Rat(0)) continue;
            // strictify_profile verifies strictness exhaustively before
            // returning
            LocalProfile out = strictify_profile(profile, alpha);
            if (out.dim_v == 0) throw Error(Errc::IdentityViolated, "strictified to dimension 0");
            ++res.count;
        }
    } catch (const Error& e) {
        res.pass = false;
        res.detail = e.what();
    }
    return res;
}

inline SuiteResult suite_mixing(std::uint64_t seed, std::uint64_t trials) {
    SuiteResult res{"mixing", true, 0, ""};
    Rng rng(Rng::split(seed, 3));
    try {
        while (res.count < trials) {
            std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(63));
            std::uint32_t kind = static_cast<std::uint32_t>(rng.below(3));
            BipartiteGraph g = kind == 0   ? BipartiteGraph::complete(n)
                               : kind == 1 ? BipartiteGraph::random_regular(n, 1, rng.next())
                                           : BipartiteGraph::random_regular(
                                                 n, 2 + static_cast<std::uint32_t>(rng.below(7)),
                                                 rng.next());
            SpectralCertificate cert = sigma2(g, 1e-9);
            std::vector<double> x(g.n());
            for (auto& v : x) v = rng.unit() * 2 - 1;
            mixing_check(g, cert, x);  // throws MixingViolation on failure
            ++res.count;
        }
    } catch (const Error& e) {
        res.pass = false;
        res.detail = e.what();
    }
    return res;
}

inline SuiteResult suite_equivalence(std::uint64_t seed, std::uint64_t trials) {
    SuiteResult res{"equivalence", true, 0, ""};
    Rng rng(Rng::split(seed, 4));
    try {
        std::uint64_t rounds = std::min<std::uint64_t>(trials, 8);
        for (std::uint64_t t = 0; t < rounds; ++t) {
            AdditiveCode code = random_small_code(rng);
            for (std::uint32_t r : {1u, 2u}) {
                EquivalenceReport rep = equivalence_check(code, r);
                if (!rep.ok) {
                    res.pass = false;
                    res.detail = "mismatch on seeded code (trial " + std::to_string(t) + ", r " +
                                 std::to_string(r) + ")";
                    return res;
                }
                ++res.count;
            }
        }
    } catch (const Error& e) {
        res.pass = false;
        res.detail = e.what();
    }
    return res;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommand handlers.
// ---------------------------------------------------------------------------

int run_report(const std::string& bundle_dir);

inline int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"additive-code construction and exact subspace-design certification"};
    app.require_subcommand(1);

    // common knobs, shared storage
    std::string out_dir;
    std::uint64_t seed = 0, trials = 100, budget_flag = 0, attempts = 200;
    std::uint32_t workers = 1;
    std::string mode_str = "exhaustive";
    std::uint32_t p = 2, m = 1, s = 1, n = 1, k = 1, k_in = 2, d = 1, r = 1, big_k = 1, ell = 2, a = 1;
    std::uint32_t q_opt = 0;
    std::string eps_str = "1/2", rate_str = "1/2", tol_str = "1e-9";
    std::string code_path, cert_path, outer_path, inner_path, graph_path, bundle_dir, kind = "complete",
                what = "list";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "output directory for artifacts + manifest");
        sub->add_option("--workers", workers, "worker count for partitionable scans");
        sub->add_option("--budget", budget_flag, "subspace enumeration cap override");
    };

    CLI::App* c_field = app.add_subcommand("field", "construct a finite field descriptor");
    c_field->add_option("--p", p, "characteristic")->required();
    c_field->add_option("--m", m, "extension degree")->required();
    add_common(c_field);

    CLI::App* c_frs = app.add_subcommand("build-frs", "build a folded Reed-Solomon code");
    c_frs->add_option("--p", p)->required();
    c_frs->add_option("--m", m)->required();
    c_frs->add_option("--s", s, "folding")->required();
    c_frs->add_option("--n", n, "length")->required();
    c_frs->add_option("--k", k, "message dimension")->required();
    add_common(c_frs);

    CLI::App* c_outer = app.add_subcommand("build-outer", "build the extension-field RS outer code");
    c_outer->add_option("--p", p)->required();
    c_outer->add_option("--m", m)->required();
    c_outer->add_option("--k-in", k_in, "folding / inner message dimension")->required();
    c_outer->add_option("--n", n, "length")->required();
    c_outer->add_option("--K", big_k, "message symbols over the extension")->required();
    add_common(c_outer);

    CLI::App* c_inner = app.add_subcommand("search-inner", "search a certified random inner code");
    c_inner->add_option("--p", p)->required();
    c_inner->add_option("--m", m)->required();
    c_inner->add_option("--k-in", k_in)->required();
    c_inner->add_option("--s", s)->required();
    c_inner->add_option("--d", d, "inner length = graph degree")->required();
    c_inner->add_option("--r", r)->required();
    c_inner->add_option("--epsilon", eps_str)->required();
    c_inner->add_option("--attempts", attempts);
    c_inner->add_option("--seed", seed);
    add_common(c_inner);

    CLI::App* c_graph = app.add_subcommand("build-graph", "build a bipartite routing graph");
    c_graph->add_option("--kind", kind, "complete | random");
    c_graph->add_option("--n", n)->required();
    c_graph->add_option("--d", d, "degree (random graphs)");
    c_graph->add_option("--seed", seed);
    c_graph->add_option("--tol", tol_str, "spectral tolerance");
    add_common(c_graph);

    CLI::App* c_compose = app.add_subcommand("compose-ael", "compose and certify the routed code");
    c_compose->add_option("--outer", outer_path)->required();
    c_compose->add_option("--inner", inner_path)->required();
    c_compose->add_option("--graph", graph_path)->required();
    c_compose->add_option("--inner-cert", cert_path, "inner design certificate (else recomputed)");
    c_compose->add_option("--r", r)->required();
    c_compose->add_option("--epsilon", eps_str)->required();
    add_common(c_compose);

    CLI::App* c_certify = app.add_subcommand("certify-design", "exhaustive design certificate");
    c_certify->add_option("--code", code_path)->required();
    c_certify->add_option("--r", r)->required();
    add_common(c_certify);

    CLI::App* c_lemmas = app.add_subcommand("verify-lemmas", "run the lemma verification suites");
    c_lemmas->add_option("--seed", seed);
    c_lemmas->add_option("--trials", trials);
    add_common(c_lemmas);

    CLI::App* c_decode = app.add_subcommand("check-decoding", "verify decoding consequences");
    c_decode->add_option("--code", code_path)->required();
    c_decode->add_option("--cert", cert_path, "design certificate (else recomputed)");
    c_decode->add_option("--what", what, "list | recover | curve");
    c_decode->add_option("--r", r);
    c_decode->add_option("--ell", ell);
    c_decode->add_option("--epsilon", eps_str);
    c_decode->add_option("--mode", mode_str, "exhaustive | sampled");
    c_decode->add_option("--seed", seed);
    c_decode->add_option("--trials", trials);
    c_decode->add_option("--a", a, "curve agreement threshold");
    add_common(c_decode);

    CLI::App* c_plan = app.add_subcommand("plan-params", "list-recovery parameter plan");
    c_plan->add_option("--ell", ell)->required();
    c_plan->add_option("--R", rate_str)->required();
    c_plan->add_option("--epsilon", eps_str)->required();
    c_plan->add_option("--q", q_opt, "field size for the alphabet exponent");
    add_common(c_plan);

    CLI::App* c_report = app.add_subcommand("report", "render and re-verify a certificate bundle");
    c_report->add_option("--bundle", bundle_dir, "directory with bundle artifacts")->required();

    std::vector<const char*> argv;
    argv.push_back("codeforge");
    for (const auto& v : args) argv.push_back(v.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Budget budget = default_budget();
    if (budget_flag > 0) budget.max_subspaces = budget_flag;
    ScanMode mode = mode_str == "sampled" ? ScanMode::Sampled : ScanMode::Exhaustive;

    try {
        // ---- field ---------------------------------------------------------
        if (c_field->parsed()) {
            detail::ArtifactWriter w("field", out_dir);
            FieldPtr f = Field::create(p, m);
            w.write("field.json", io::to_json(*f));
            std::cout << "q = " << f->q() << ", modulus = " << io::json(f->modulus()).dump()
                      << ", generator = " << f->generator() << "\n";
            return w.finish(0);
        }

        // ---- build-frs -----------------------------------------------------
        if (c_frs->parsed()) {
            detail::ArtifactWriter w("build-frs", out_dir);
            AdditiveCode code = folded_rs(Field::create(p, m), s, n, k);
            w.write("code.json", io::to_json(code));
            std::cout << "folded RS: k=" << k << " s=" << s << " n=" << n
                      << " rate=" << rat_str(code.rate()) << "\n";
            return w.finish(0);
        }

        // ---- build-outer ---------------------------------------------------
        if (c_outer->parsed()) {
            detail::ArtifactWriter w("build-outer", out_dir);
            AdditiveCode code = rs_outer_additive(Field::create(p, m), k_in, n, big_k);
            w.write("outer.json", io::to_json(code));
            DistanceResult dist = min_distance(code, budget, workers);
            w.verdict("delta", io::to_json(dist.delta));
            std::cout << "outer code: rate=" << rat_str(code.rate())
                      << " delta=" << rat_str(dist.delta) << "\n";
            return w.finish(0);
        }

        // ---- search-inner --------------------------------------------------
        if (c_inner->parsed()) {
            detail::ArtifactWriter w("search-inner", out_dir);
            w.manifest().seed = seed;
            InnerSearchResult res = search_inner_code(Field::create(p, m), k_in, s, d, r,
                                                      parse_rat(eps_str),
                                                      static_cast<std::uint32_t>(attempts), seed,
                                                      budget, workers);
            if (!res.warning.empty()) std::cerr << "warning: " << res.warning << "\n";
            w.write("inner.json", io::to_json(res.code));
            w.write("inner.cert.json", io::to_json(res.cert, io::code_hash(res.code)));
            w.verdict("attempts", res.attempts);
            w.verdict("target", io::to_json(res.target));
            std::cout << "inner code found after " << res.attempts << " attempt(s); tau_hat(" << r
                      << ") = " << rat_str(res.cert.tau_at(r)) << " <= " << rat_str(res.target)
                      << "\n";
            return w.finish(0);
        }

        // ---- build-graph ---------------------------------------------------
        if (c_graph->parsed()) {
            detail::ArtifactWriter w("build-graph", out_dir);
            w.manifest().seed = seed;
            BipartiteGraph g = kind == "complete" ? BipartiteGraph::complete(n)
                                                  : BipartiteGraph::random_regular(n, d, seed);
            SpectralCertificate cert = sigma2(g, std::stod(tol_str), SpectralMethod::Auto,
                                              budget.max_dense_dim);
            w.write("graph.json", io::to_json(g, cert));
            std::cout << "graph: n=" << g.n() << " d=" << g.d() << " lambda <= " << cert.lambda_bound
                      << " (" << cert.method << ")\n";
            return w.finish(0);
        }

        // ---- compose-ael ---------------------------------------------------
        if (c_compose->parsed()) {
            detail::ArtifactWriter w("compose-ael", out_dir);
            w.input(outer_path);
            w.input(inner_path);
            w.input(graph_path);
            AdditiveCode outer = detail::load_code(outer_path);
            AdditiveCode inner = detail::load_code(inner_path);
            auto [graph, graph_cert] = io::graph_from_json(io::load_file(graph_path));
            std::optional<DesignCertificate> inner_cert;
            if (!cert_path.empty()) {
                w.input(cert_path);
                inner_cert = io::certificate_from_json(io::load_file(cert_path), inner.field(),
                                                       io::code_hash(inner));
            }
            DistanceResult outer_dist = min_distance(outer, budget, workers);
            AelParams params{outer, inner,      graph,      r, parse_rat(eps_str),
                             outer_dist.delta,  inner_cert, graph_cert};
            AelCertification cert = ael_certify(params, budget, workers);

            w.write("code.json", io::to_json(cert.composed));
            w.write("outer.json", io::to_json(outer));
            w.write("inner.json", io::to_json(inner));
            w.write("graph.json", io::to_json(graph, cert.graph_cert));
            io::json certs{{"outer_distance", io::to_json(outer_dist)},
                           {"inner_cert", io::to_json(cert.inner_cert, io::code_hash(inner))},
                           {"graph_cert", io::to_json(cert.graph_cert)}};
            if (cert.composed_cert)
                certs["composed_cert"] = io::to_json(*cert.composed_cert, io::code_hash(cert.composed));
            w.write("certificates.json", certs);
            w.write("report.json", io::to_json(cert.report));
            w.verdict("verdict", cert.report.verdict);

            std::cout << "hypothesis: lambda " << cert.report.lambda_bound << " < "
                      << cert.report.hypothesis_rhs << " ? "
                      << (cert.report.hypothesis_holds ? "yes" : "no") << "\n";
            for (const TauComparison& c : cert.report.taus)
                std::cout << "  tau_ael(" << c.r << ") = " << rat_str(c.tau_ael)
                          << " <= " << rat_str(c.bound) << " : " << (c.pass ? "pass" : "FAIL")
                          << "\n";
            std::cout << "rate = " << rat_str(cert.report.rate) << " (expected "
                      << rat_str(cert.report.rate_expected) << ")\n";
            std::cout << "verdict: " << cert.report.verdict << "\n";
            return w.finish(cert.report.verdict == "fail" ? 1 : 0);
        }

        // ---- certify-design --------------------------------------------------
        if (c_certify->parsed()) {
            detail::ArtifactWriter w("certify-design", out_dir);
            w.input(code_path);
            AdditiveCode code = detail::load_code(code_path);
            DesignCertificate cert = tau_profile(code, r, budget, workers);
            w.write("certificate.json", io::to_json(cert, io::code_hash(code)));
            for (std::uint32_t rr = 1; rr <= r; ++rr)
                std::cout << "tau_hat(" << rr << ") = " << rat_str(cert.tau_at(rr)) << "\n";
            std::cout << "subspaces scanned: " << cert.subspaces_scanned << "\n";
            return w.finish(0);
        }

        // ---- verify-lemmas ---------------------------------------------------
        if (c_lemmas->parsed()) {
            detail::ArtifactWriter w("verify-lemmas", out_dir);
            w.manifest().seed = seed;
            std::vector<detail::SuiteResult> suites{
                detail::suite_quotient_identity(seed, trials),
                detail::suite_strictification(seed, trials),
                detail::suite_mixing(seed, trials),
                detail::suite_equivalence(seed, trials),
            };
            bool all = true;
            io::json rep = io::json::array();
            for (const auto& sres : suites) {
                all = all && sres.pass;
                std::cout << sres.name << ": " << (sres.pass ? "pass" : "FAIL") << " ("
                          << sres.count << " checks)"
                          << (sres.detail.empty() ? "" : " " + sres.detail) << "\n";
                rep.push_back(io::json{{"suite", sres.name},
                                       {"pass", sres.pass},
                                       {"checks", sres.count},
                                       {"detail", sres.detail}});
            }
            w.write("report.json", io::json{{"check", "verify-lemmas"}, {"suites", rep}, {"seed", seed}});
            w.verdict("pass", all);
            return w.finish(all ? 0 : 1);
        }

        // ---- check-decoding --------------------------------------------------
        if (c_decode->parsed()) {
            detail::ArtifactWriter w("check-decoding", out_dir);
            w.manifest().seed = seed;
            w.input(code_path);
            AdditiveCode code = detail::load_code(code_path);
            Rat eps = parse_rat(eps_str);
            std::uint32_t cert_r = r;
            if (what == "recover") cert_r = std::max(cert_r, static_cast<std::uint32_t>(
                                                                 rat_ceil(Rat(ell) / eps)));
            DesignCertificate cert;
            if (!cert_path.empty()) {
                w.input(cert_path);
                cert = io::certificate_from_json(io::load_file(cert_path), code.field(),
                                                 io::code_hash(code));
            } else {
                cert = tau_profile(code, cert_r, budget, workers);
            }

            bool pass = false;
            io::json rep;
            if (what == "list") {
                ListDecodingReport lrep =
                    list_decoding_check(code, cert, r, mode, seed, trials, budget);
                pass = lrep.pass;
                rep = io::to_json(lrep);
                std::cout << "list-decoding r=" << r << ": min " << rat_str(lrep.minimum)
                          << " >= bound " << rat_str(lrep.bound) << " : "
                          << (pass ? "pass" : "FAIL") << "\n";
            } else if (what == "recover") {
                ListRecoveryReport rrep =
                    list_recovery_check(code, cert, ell, eps, mode, seed, trials, budget);
                pass = rrep.inconclusive || rrep.pass;
                rep = io::to_json(rrep);
                if (rrep.inconclusive)
                    std::cout << "list-recovery: inconclusive (certificate covers r < "
                              << rrep.r_required << ")\n";
                else
                    std::cout << "list-recovery ell=" << ell << ": worst " << rrep.worst_count
                              << " <= " << rrep.list_bound << " : " << (pass ? "pass" : "FAIL")
                              << "\n";
            } else if (what == "curve") {
                DecodingQuery query;
                query.ell = ell;
                query.a = a;
                query.trials = trials;
                query.mode = mode;
                CurveDecodingReport crep = curve_decoding_check(code, cert, query, r, eps, seed, budget);
                pass = crep.pass;
                rep = io::to_json(crep);
                std::cout << "curve-decoding ell=" << ell << " r=" << r << ": "
                          << crep.violations.size() << " violation(s) in " << crep.trials
                          << " trials (" << crep.vacuous << " vacuous) : "
                          << (pass ? "pass" : "FAIL") << "\n";
            } else {
                throw Error(Errc::DomainError, "--what must be list | recover | curve");
            }
            w.write("report.json", rep);
            w.verdict("pass", pass);
            return w.finish(pass ? 0 : 1);
        }

        // ---- plan-params -------------------------------------------------------
        if (c_plan->parsed()) {
            detail::ArtifactWriter w("plan-params", out_dir);
            RecoveryPlan plan = recovery_parameter_plan(ell, parse_rat(rate_str), parse_rat(eps_str),
                                                        q_opt);
            w.write("plan.json", io::to_json(plan));
            std::cout << plan.summary << "\n";
            if (!plan.eps1_ok) {
                std::cout << "eps1 < eps/2: the split does not satisfy the corollary's requirement\n";
                return w.finish(1);
            }
            return w.finish(0);
        }

        // ---- report --------------------------------------------------------
        if (c_report->parsed()) {
            return run_report(bundle_dir);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Errc::ViolationFound:
            case Errc::IdentityViolated:
            case Errc::AttemptsExhausted:
                return 1;
            default:
                return 2;
        }
    }
    return 2;
}

// Renders a bundle directory and independently re-verifies everything
// re-verifiable in it. Declared separately so tests can call it directly.
inline int run_report(const std::string& bundle_dir) {
    namespace fs = std::filesystem;
    fs::path dir(bundle_dir);
    if (!fs::exists(dir)) {
        std::cerr << "error: no such bundle directory: " << bundle_dir << "\n";
        return 2;
    }
    struct Row {
        std::string claim;
        std::string verdict;
        std::string reverify;
        bool ok;
    };
    std::vector<Row> rows;
    bool all_ok = true;
    auto add = [&](const std::string& claim, const std::string& verdict, bool ok,
                   const std::string& how) {
        rows.push_back({claim, verdict, how, ok});
        all_ok = all_ok && ok;
    };

    auto has = [&](const char* name) { return fs::exists(dir / name); };
    std::optional<AdditiveCode> composed, outer, inner;
    if (has("code.json")) composed = io::code_from_json(io::load_file((dir / "code.json").string()));
    if (has("outer.json")) outer = io::code_from_json(io::load_file((dir / "outer.json").string()));
    if (has("inner.json")) inner = io::code_from_json(io::load_file((dir / "inner.json").string()));

    if (has("certificates.json")) {
        io::json certs = io::load_file((dir / "certificates.json").string());
        if (outer && certs.contains("outer_distance")) {
            Rat stored = io::rat_from_json(certs.at("outer_distance").at("delta"));
            DistanceResult re = min_distance(*outer);
            add("outer relative distance delta_out = " + rat_str(stored),
                rat_str(stored), re.delta == stored, "recomputed by exhaustive message scan");
        }
        if (inner && certs.contains("inner_cert")) {
            DesignCertificate ic = io::certificate_from_json(certs.at("inner_cert"), inner->field(),
                                                             io::code_hash(*inner));
            std::string why;
            bool ok = verify_certificate(*inner, ic, &why);
            add("inner design bound tau_hat(r) certified by witness subspaces", "certified", ok,
                ok ? "every witness ratio re-evaluated exactly" : why);
        }
        if (composed && certs.contains("composed_cert")) {
            DesignCertificate cc = io::certificate_from_json(certs.at("composed_cert"),
                                                             composed->field(),
                                                             io::code_hash(*composed));
            std::string why;
            bool ok = verify_certificate(*composed, cc, &why);
            add("composed design bound tau_hat(r) certified by witness subspaces", "certified", ok,
                ok ? "every witness ratio re-evaluated exactly" : why);
        }
        if (has("graph.json") && certs.contains("graph_cert")) {
            auto [graph, stored_cert] = io::graph_from_json(io::load_file((dir / "graph.json").string()));
            SpectralCertificate stored = io::spectral_from_json(certs.at("graph_cert"));
            SpectralCertificate re = sigma2(graph, stored.tolerance);
            bool ok = re.lambda_bound <= stored.lambda_bound + stored.tolerance;
            add("second singular value lambda <= " + detail::dbl_str(stored.lambda_bound),
                "certified", ok, "recomputed spectral bound " + detail::dbl_str(re.lambda_bound));
        }
    }

    if (has("report.json")) {
        io::json rep = io::load_file((dir / "report.json").string());
        if (rep.contains("check") && rep.at("check") == "list-decoding" && composed) {
            // re-evaluate the extremal witness
            auto word = rep.at("witness_word").get<std::vector<gf_elem>>();
            auto msgs = rep.at("witness_messages").get<std::vector<std::uint64_t>>();
            Rat minimum = io::rat_from_json(rep.at("minimum"));
            Rat bound = io::rat_from_json(rep.at("bound"));
            std::uint32_t total = 0;
            for (std::uint64_t mi : msgs) {
                Codeword cw = composed->encode(composed->message_at(mi));
                std::uint32_t miss = 0;
                for (std::uint32_t j = 0; j < composed->n(); ++j)
                    for (std::uint32_t t = 0; t < composed->s(); ++t)
                        if (cw.symbols[j * composed->s() + t] != word[j * composed->s() + t]) {
                            ++miss;
                            break;
                        }
                total += miss;
            }
            bool ok = Rat(total, composed->n()) == minimum && minimum >= bound;
            add("average-radius sum over the extremal tuple >= (r-1)(1 - tau_hat(r-1))",
                rep.at("pass").get<bool>() ? "pass" : "fail", ok,
                "witness tuple re-encoded and re-summed");
        }
        if (rep.contains("verdict")) {
            std::string verdict = rep.at("verdict").get<std::string>();
            bool hyp = rep.value("hypothesis_holds", false);
            add("composition hypothesis lambda < eps * q^{-r^2/2} * sqrt(delta_out)",
                hyp ? "holds" : "not applicable", true, "floating-point with outward rounding");
            if (rep.contains("taus"))
                for (const io::json& c : rep.at("taus")) {
                    Rat ta = io::rat_from_json(c.at("tau_ael"));
                    Rat tb = io::rat_from_json(c.at("bound"));
                    add("tau_ael(" + std::to_string(c.at("r").get<int>()) + ") <= tau_inner + eps",
                        c.at("pass").get<bool>() ? "pass" : "fail", ta <= tb,
                        rat_str(ta) + " <= " + rat_str(tb) + ", exact rationals");
                }
            if (rep.value("distance_computed", false)) {
                Rat da = io::rat_from_json(rep.at("delta_ael"));
                Rat db = io::rat_from_json(rep.at("delta_bound"));
                add("distance corollary delta >= 1 - tau_hat(1)",
                    rep.at("distance_ok").get<bool>() ? "pass" : "fail", da >= db,
                    rat_str(da) + " >= " + rat_str(db));
            }
            all_ok = all_ok && verdict != "fail";
        }
    }

    if (rows.empty()) {
        std::cerr << "error: nothing re-verifiable found in " << bundle_dir << "\n";
        return 2;
    }
    std::cout << "claim | verdict | re-verification\n";
    std::cout << "----- | ------- | ---------------\n";
    for (const Row& row : rows)
        std::cout << row.claim << " | " << row.verdict << " | "
                  << (row.ok ? "confirmed: " : "MISMATCH: ") << row.reverify << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace codeforge::cli
