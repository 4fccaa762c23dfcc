#pragma once

// JSON artifact formats. All artifacts serialize canonically (sorted keys,
// two-space indent, trailing newline), so identical values give
// byte-identical files; certificates embed the content hash of the code
// they certify and refuse to load against anything else.

#include "codeforge/ael.hpp"
#include "codeforge/codes.hpp"
#include "codeforge/common.hpp"
#include "codeforge/decode.hpp"
#include "codeforge/design.hpp"
#include "codeforge/graphs.hpp"
#include "codeforge/linalg.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace codeforge::io {

using nlohmann::json;

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_string(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::ParseError, "cannot write " + path);
    out << content;
}

inline json load_file(const std::string& path) { return parse_string(read_file(path)); }

template <typename T>
T get_field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(Errc::ParseError, std::string("missing key: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad value for key ") + key + ": " + e.what());
    }
}

// --------------------------------------------------------------------------
// Rationals: {"num": int, "den": int}, always normalized with den > 0.
// --------------------------------------------------------------------------

inline json to_json(const Rat& r) { return json{{"num", r.numerator()}, {"den", r.denominator()}}; }

inline Rat rat_from_json(const json& j) {
    long long num = get_field<long long>(j, "num");
    long long den = get_field<long long>(j, "den");
    if (den <= 0) throw Error(Errc::ParseError, "rational with nonpositive denominator");
    return Rat(num, den);
}

// --------------------------------------------------------------------------
// Fields and matrices.
// --------------------------------------------------------------------------

inline json to_json(const Field& f) {
    return json{{"p", f.p()}, {"m", f.m()}, {"modulus", f.modulus()}};
}

inline FieldPtr field_from_json(const json& j) {
    FieldPtr f = Field::create(get_field<std::uint32_t>(j, "p"), get_field<std::uint32_t>(j, "m"));
    auto modulus = get_field<std::vector<std::uint32_t>>(j, "modulus");
    if (modulus != f->modulus())
        throw Error(Errc::ParseError, "modulus is not the canonical least irreducible polynomial");
    return f;
}

inline json to_json(const Matrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

inline Matrix matrix_from_json(const json& j, FieldPtr field) {
    auto rows = get_field<std::uint32_t>(j, "rows");
    auto cols = get_field<std::uint32_t>(j, "cols");
    auto data = get_field<std::vector<gf_elem>>(j, "data");
    try {
        return Matrix(std::move(field), rows, cols, std::move(data));
    } catch (const Error& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

inline json to_json(const Subspace& s) { return to_json(s.basis()); }

inline Subspace subspace_from_json(const json& j, FieldPtr field) {
    return Subspace::from_canonical(matrix_from_json(j, std::move(field)));
}

// --------------------------------------------------------------------------
// Codes.
// --------------------------------------------------------------------------

inline json to_json(const AdditiveCode& code) {
    json encoders = json::array();
    for (const Matrix& e : code.encoders()) encoders.push_back(to_json(e));
    json meta{{"kind", code.meta().kind}};
    if (code.meta().seed) meta["seed"] = *code.meta().seed;
    return json{{"field", to_json(*code.field())}, {"k", code.k()},        {"s", code.s()},
                {"n", code.n()},                   {"encoders", encoders}, {"meta", meta}};
}

inline AdditiveCode code_from_json(const json& j) {
    FieldPtr field = field_from_json(j.at("field"));
    auto k = get_field<std::uint32_t>(j, "k");
    auto s = get_field<std::uint32_t>(j, "s");
    auto n = get_field<std::uint32_t>(j, "n");
    if (!j.contains("encoders") || !j.at("encoders").is_array())
        throw Error(Errc::ParseError, "missing encoders array");
    std::vector<Matrix> encoders;
    for (const json& e : j.at("encoders")) encoders.push_back(matrix_from_json(e, field));
    CodeMeta meta;
    if (j.contains("meta")) {
        meta.kind = j.at("meta").value("kind", "");
        if (j.at("meta").contains("seed")) meta.seed = j.at("meta").at("seed").get<std::uint64_t>();
    }
    try {
        return AdditiveCode::create(std::move(field), k, s, n, std::move(encoders), std::move(meta));
    } catch (const Error& e) {
        throw Error(Errc::ParseError, std::string("invalid code artifact: ") + e.what());
    }
}

// Content hash of the canonical serialization; certificates reference it.
inline std::string code_hash(const AdditiveCode& code) {
    return hash_hex(canonical_dump(to_json(code)));
}

// --------------------------------------------------------------------------
// Graphs.
// --------------------------------------------------------------------------

inline json to_json(const SpectralCertificate& c) {
    return json{{"lambda_bound", c.lambda_bound}, {"tolerance", c.tolerance}, {"method", c.method}};
}

inline SpectralCertificate spectral_from_json(const json& j) {
    SpectralCertificate c;
    c.lambda_bound = get_field<double>(j, "lambda_bound");
    c.tolerance = get_field<double>(j, "tolerance");
    c.method = get_field<std::string>(j, "method");
    if (c.lambda_bound < 0 || c.lambda_bound > 1 || c.tolerance <= 0)
        throw Error(Errc::ParseError, "spectral certificate out of range");
    return c;
}

inline json to_json(const BipartiteGraph& g,
                    const std::optional<SpectralCertificate>& cert = std::nullopt) {
    json left = json::array();
    for (const auto& adj : g.left()) {
        json row = json::array();
        for (const EdgeRef& e : adj) row.push_back(json::array({e.vertex, e.pos}));
        left.push_back(std::move(row));
    }
    json out{{"n", g.n()}, {"d", g.d()}, {"left_adj", left}};
    if (cert) out["certificate"] = to_json(*cert);
    return out;
}

inline std::pair<BipartiteGraph, std::optional<SpectralCertificate>> graph_from_json(const json& j) {
    auto n = get_field<std::uint32_t>(j, "n");
    auto d = get_field<std::uint32_t>(j, "d");
    if (!j.contains("left_adj") || !j.at("left_adj").is_array())
        throw Error(Errc::ParseError, "missing left_adj");
    std::vector<std::vector<EdgeRef>> left;
    for (const json& row : j.at("left_adj")) {
        std::vector<EdgeRef> adj;
        for (const json& e : row) {
            if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "edge must be [vertex, pos]");
            adj.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>()});
        }
        left.push_back(std::move(adj));
    }
    BipartiteGraph g = BipartiteGraph::from_left(n, d, std::move(left));
    std::optional<SpectralCertificate> cert;
    if (j.contains("certificate")) cert = spectral_from_json(j.at("certificate"));
    return {std::move(g), std::move(cert)};
}

// --------------------------------------------------------------------------
// Design certificates.
// --------------------------------------------------------------------------

inline json to_json(const DesignCertificate& cert, const std::string& code_hash_hex) {
    json entries = json::array();
    for (std::uint32_t r = 1; r <= cert.r_max; ++r)
        entries.push_back(json{{"r", r},
                               {"tau", to_json(cert.tau_at(r))},
                               {"witness", to_json(cert.witness_at(r))}});
    return json{{"code_hash", code_hash_hex},
                {"entries", entries},
                {"r_max", cert.r_max},
                {"subspaces_scanned", cert.subspaces_scanned}};
}

inline DesignCertificate certificate_from_json(const json& j, FieldPtr field,
                                               const std::string& expected_code_hash) {
    std::string stored = get_field<std::string>(j, "code_hash");
    if (!expected_code_hash.empty() && stored != expected_code_hash)
        throw Error(Errc::ParseError, "certificate references code hash " + stored +
                                          " but the code file hashes to " + expected_code_hash);
    DesignCertificate cert;
    cert.r_max = get_field<std::uint32_t>(j, "r_max");
    cert.subspaces_scanned = get_field<std::uint64_t>(j, "subspaces_scanned");
    if (!j.contains("entries") || j.at("entries").size() != cert.r_max)
        throw Error(Errc::ParseError, "certificate entries do not match r_max");
    std::uint32_t expect_r = 1;
    for (const json& e : j.at("entries")) {
        if (get_field<std::uint32_t>(e, "r") != expect_r++)
            throw Error(Errc::ParseError, "certificate entries out of order");
        cert.tau.push_back(rat_from_json(e.at("tau")));
        cert.witness.push_back(subspace_from_json(e.at("witness"), field));
    }
    return cert;
}

// --------------------------------------------------------------------------
// Reports.
// --------------------------------------------------------------------------

inline json to_json(const DistanceResult& d) {
    return json{{"delta", to_json(d.delta)}, {"weight", d.weight}, {"witness_message", d.witness}};
}

inline json to_json(const MixingReport& r) {
    return json{{"mu", r.mu}, {"lhs", r.lhs}, {"bound", r.bound}};
}

inline json to_json(const TheoremReport& rep) {
    json taus = json::array();
    for (const TauComparison& c : rep.taus)
        taus.push_back(json{{"r", c.r},
                            {"tau_ael", to_json(c.tau_ael)},
                            {"tau_inner", to_json(c.tau_inner)},
                            {"bound", to_json(c.bound)},
                            {"pass", c.pass}});
    json out{{"lambda_bound", rep.lambda_bound},
             {"hypothesis_rhs", rep.hypothesis_rhs},
             {"hypothesis_holds", rep.hypothesis_holds},
             {"r", rep.r},
             {"epsilon", to_json(rep.epsilon)},
             {"delta_out", to_json(rep.delta_out)},
             {"rate", to_json(rep.rate)},
             {"rate_expected", to_json(rep.rate_expected)},
             {"rate_ok", rep.rate_ok},
             {"conclusion_computed", rep.conclusion_computed},
             {"taus", taus},
             {"conclusion_pass", rep.conclusion_pass},
             {"distance_computed", rep.distance_computed},
             {"verdict", rep.verdict}};
    if (!rep.conclusion_note.empty()) out["conclusion_note"] = rep.conclusion_note;
    if (rep.distance_computed) {
        out["delta_ael"] = to_json(rep.delta_ael);
        out["delta_bound"] = to_json(rep.delta_bound);
        out["distance_ok"] = rep.distance_ok;
    }
    return out;
}

inline json to_json(const ListDecodingReport& rep) {
    return json{{"check", "list-decoding"},
                {"r", rep.r},
                {"bound", to_json(rep.bound)},
                {"minimum", to_json(rep.minimum)},
                {"pass", rep.pass},
                {"mode", rep.mode == ScanMode::Exhaustive ? "exhaustive" : "sampled"},
                {"seed", rep.seed},
                {"scanned", rep.scanned},
                {"witness_word", rep.witness_word},
                {"witness_messages", rep.witness_messages}};
}

inline json to_json(const ListRecoveryReport& rep) {
    json out{{"check", "list-recovery"},
             {"ell", rep.ell},
             {"epsilon", to_json(rep.epsilon)},
             {"r_required", rep.r_required},
             {"inconclusive", rep.inconclusive},
             {"pass", rep.pass},
             {"mode", rep.mode == ScanMode::Exhaustive ? "exhaustive" : "sampled"},
             {"seed", rep.seed},
             {"scanned", rep.scanned}};
    if (!rep.inconclusive) {
        out["radius"] = to_json(rep.radius);
        out["list_bound"] = rep.list_bound;
        out["worst_count"] = rep.worst_count;
        out["worst_lists"] = rep.worst_lists;
    }
    return out;
}

inline json to_json(const CurveDecodingReport& rep) {
    json violations = json::array();
    for (const CurveTrialWitness& v : rep.violations)
        violations.push_back(json{{"trial", v.trial},
                                  {"agreement_set", v.agreement_set},
                                  {"best_agreement", v.best_agreement}});
    return json{{"check", "curve-decoding"},
                {"ell", rep.ell},
                {"r", rep.r},
                {"a", rep.a},
                {"epsilon", to_json(rep.epsilon)},
                {"radius", to_json(rep.radius)},
                {"b_threshold", to_json(rep.b_threshold)},
                {"trials", rep.trials},
                {"vacuous", rep.vacuous},
                {"seed", rep.seed},
                {"violations", violations},
                {"pass", rep.pass}};
}

inline json to_json(const EquivalenceReport& rep) {
    auto threshold = [](const EquivalenceThresholdReport& tr) {
        json mismatches = json::array();
        for (const EquivalenceMismatch& m : tr.mismatches)
            mismatches.push_back(json{{"subspace_index", m.subspace_index},
                                      {"ratio", to_json(m.ratio)},
                                      {"phi", to_json(m.phi)},
                                      {"direction", m.direction}});
        return json{{"tau", to_json(tr.tau)},
                    {"scanned", tr.scanned},
                    {"mismatches", mismatches},
                    {"violation_exists", tr.violation_exists}};
    };
    return json{{"check", "equivalence"},
                {"r", rep.r},
                {"tau_hat", to_json(rep.tau_hat)},
                {"at_tau", threshold(rep.at_tau)},
                {"below_tau", threshold(rep.below_tau)},
                {"ok", rep.ok}};
}

inline json to_json(const RecoveryPlan& plan) {
    return json{{"ell", plan.ell},
                {"rate", to_json(plan.rate)},
                {"epsilon", to_json(plan.epsilon)},
                {"list_bound", plan.list_bound},
                {"eps0", to_json(plan.eps0)},
                {"eps1", to_json(plan.eps1)},
                {"eps1_ok", plan.eps1_ok},
                {"design_r", plan.design_r},
                {"r_squared", plan.r_squared},
                {"alphabet_exponent", plan.alphabet_exponent == 0 ? "" : plan.alphabet_exponent.str()},
                {"summary", plan.summary}};
}

// --------------------------------------------------------------------------
// Run manifests.
// --------------------------------------------------------------------------

struct ManifestEntry {
    std::string path;
    std::string hash;
};

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint32_t workers = 1;
    std::string version;
    double wall_ms = 0;
    json verdicts = json::object();
    std::vector<ManifestEntry> artifacts;
};

inline json to_json(const RunManifest& m) {
    json artifacts = json::array();
    for (const ManifestEntry& a : m.artifacts)
        artifacts.push_back(json{{"path", a.path}, {"hash", a.hash}});
    return json{{"command", m.command},   {"inputs", m.inputs}, {"seed", m.seed},
                {"budget", m.budget},     {"workers", m.workers}, {"version", m.version},
                {"wall_ms", m.wall_ms},   {"verdicts", m.verdicts}, {"artifacts", artifacts}};
}

}  // namespace codeforge::io
