#pragma once

// Subspace-design certification and the local-profile calculus.
//
// A code is certified by exhausting message-space subspaces A' of dimension
// <= r and maximizing the average kernel-intersection ratio
//
//     ratio(A') = [ (1/n) sum_i dim(A' inter ker Enc_i) ] / dim(A').
//
// tau_hat(r) is that maximum as an exact rational; the certificate carries
// the maximizing subspace per r and re-verifies by direct re-evaluation.
//
// The potential function ties certificates to local profiles:
//
//     Phi(U, (V_1..V_n), alpha) = alpha dim U - (1/n) sum_i (dim U - dim(U inter V_i)),
//
// and the operations below make the quotient identity, the strictification
// step, the containment pushforward, and the equivalence between "no
// violating profile" and "tau-subspace design" machine-checkable, all in
// exact arithmetic.

#include "codeforge/codes.hpp"
#include "codeforge/common.hpp"
#include "codeforge/linalg.hpp"

#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace codeforge {

// ---------------------------------------------------------------------------
// Certificates.
// ---------------------------------------------------------------------------

struct DesignCertificate {
    std::uint32_t r_max = 0;
    std::vector<Rat> tau;           // tau[r-1] = tau_hat(r), nondecreasing
    std::vector<Subspace> witness;  // witness[r-1] attains tau_hat(r)
    std::uint64_t subspaces_scanned = 0;

    const Rat& tau_at(std::uint32_t r) const {
        if (r < 1 || r > r_max) throw Error(Errc::DomainError, "certificate does not cover r");
        return tau[r - 1];
    }
    const Subspace& witness_at(std::uint32_t r) const {
        if (r < 1 || r > r_max) throw Error(Errc::DomainError, "certificate does not cover r");
        return witness[r - 1];
    }
};

// (1/n) sum_i dim(A inter ker Enc_i) / dim(A), exact.
inline Rat design_ratio(const AdditiveCode& code, const Subspace& a,
                        const std::vector<Subspace>* kernels = nullptr) {
    if (a.ambient() != code.k()) throw Error(Errc::AmbientMismatch, "subspace not in message space");
    if (a.dim() == 0) throw Error(Errc::DomainError, "ratio of the trivial subspace is undefined");
    long long total = 0;
    for (std::uint32_t i = 0; i < code.n(); ++i) {
        Subspace ki = kernels ? (*kernels)[i] : kernel(code.encoder(i));
        // modular identity: dim(A inter K) = dim A + dim K - dim(A + K)
        total += a.dim() + ki.dim() - sum(a, ki).dim();
    }
    return Rat(total, static_cast<long long>(code.n()) * a.dim());
}

inline DesignCertificate tau_profile(const AdditiveCode& code, std::uint32_t r_max,
                                     const Budget& budget = default_budget(),
                                     std::uint32_t workers = 1) {
    if (r_max < 1) throw Error(Errc::DomainError, "r_max must be >= 1");
    const std::uint32_t r_eff = std::min(r_max, code.k());
    BigInt count_big = subspace_count(code.k(), r_eff, code.field()->q());
    if (count_big > budget.max_subspaces)
        throw budget_error(count_big, "tau_profile subspace scan over budget");

    std::vector<Subspace> kernels;
    kernels.reserve(code.n());
    for (std::uint32_t i = 0; i < code.n(); ++i) kernels.push_back(kernel(code.encoder(i)));

    SubspaceEnumerator en(code.field(), code.k(), r_eff, budget);
    const std::uint64_t count = en.size();

    struct Best {
        Rat ratio{-1};
        std::uint64_t index = UINT64_MAX;
        std::optional<Subspace> sub;
    };
    auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<Best> best(r_eff);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            Subspace a = en.at(idx);
            long long total = 0;
            for (std::uint32_t i = 0; i < code.n(); ++i)
                total += a.dim() + kernels[i].dim() - sum(a, kernels[i]).dim();
            Rat ratio(total, static_cast<long long>(code.n()) * a.dim());
            Best& b = best[a.dim() - 1];
            if (ratio > b.ratio) {
                b.ratio = ratio;
                b.index = idx;
                b.sub = std::move(a);
            }
        }
        return best;
    };
    // Merge keeps the first subspace (enumeration order) attaining the
    // maximum, so results are independent of the partitioning.
    auto merge_into = [](std::vector<Best>& acc, std::vector<Best>& part) {
        for (std::size_t d = 0; d < acc.size(); ++d) {
            Best& a = acc[d];
            Best& p = part[d];
            if (p.ratio > a.ratio || (p.ratio == a.ratio && p.index < a.index)) a = std::move(p);
        }
    };

    std::vector<Best> best(r_eff);
    if (workers <= 1 || count < 256) {
        best = scan(0, count);
    } else {
        std::vector<std::vector<Best>> partial(workers);
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (count + workers - 1) / workers;
        for (std::uint32_t w = 0; w < workers; ++w) {
            std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
            std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, count);
            if (lo >= hi) continue;
            threads.emplace_back([&, w, lo, hi] { partial[w] = scan(lo, hi); });
        }
        for (auto& t : threads) t.join();
        for (auto& p : partial)
            if (!p.empty()) merge_into(best, p);
    }

    DesignCertificate cert;
    cert.r_max = r_max;
    cert.subspaces_scanned = count;
    Best running;
    for (std::uint32_t r = 1; r <= r_eff; ++r) {
        Best& b = best[r - 1];
        if (b.ratio > running.ratio || (b.ratio == running.ratio && b.index < running.index))
            running = b;
        cert.tau.push_back(running.ratio);
        cert.witness.push_back(*running.sub);
    }
    for (std::uint32_t r = r_eff + 1; r <= r_max; ++r) {
        // no subspaces of dimension > k exist, so the max is unchanged
        cert.tau.push_back(cert.tau.back());
        cert.witness.push_back(cert.witness.back());
    }
    return cert;
}

// Re-evaluates every certificate witness against the code; the certificate
// is self-verifying given the code.
inline bool verify_certificate(const AdditiveCode& code, const DesignCertificate& cert,
                               std::string* why = nullptr) {
    std::vector<Subspace> kernels;
    for (std::uint32_t i = 0; i < code.n(); ++i) kernels.push_back(kernel(code.encoder(i)));
    Rat prev(0);
    for (std::uint32_t r = 1; r <= cert.r_max; ++r) {
        const Subspace& w = cert.witness_at(r);
        if (w.dim() == 0 || w.dim() > std::min(r, code.k())) {
            if (why) *why = "witness dimension out of range at r=" + std::to_string(r);
            return false;
        }
        if (design_ratio(code, w, &kernels) != cert.tau_at(r)) {
            if (why) *why = "witness ratio does not reproduce tau_hat at r=" + std::to_string(r);
            return false;
        }
        if (r > 1 && cert.tau_at(r) < prev) {
            if (why) *why = "tau_hat not nondecreasing at r=" + std::to_string(r);
            return false;
        }
        prev = cert.tau_at(r);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Local profiles and the potential function.
// ---------------------------------------------------------------------------

struct LocalProfile {
    std::uint32_t dim_v = 0;
    std::vector<Subspace> parts;  // all with ambient dim_v

    static LocalProfile make(std::uint32_t dim_v, std::vector<Subspace> parts) {
        for (const Subspace& p : parts)
            if (p.ambient() != dim_v) throw Error(Errc::AmbientMismatch, "profile part ambient != dim V");
        return {dim_v, std::move(parts)};
    }
    std::uint32_t n() const { return static_cast<std::uint32_t>(parts.size()); }
    const FieldPtr& field() const { return parts.front().field(); }
};

// Containment witness: the message subspace A and the isomorphism phi from
// V-coordinates to functionals on A (rows in A's canonical basis).
struct ContainmentWitness {
    Subspace a;
    Matrix phi;  // dim V x dim A, invertible
};

struct ProfileEvaluation {
    Rat alpha;
    Rat value;
};

inline ProfileEvaluation potential(const Subspace& u, const LocalProfile& profile, const Rat& alpha) {
    if (u.ambient() != profile.dim_v) throw Error(Errc::AmbientMismatch, "U ambient != dim V");
    const long long n = profile.n();
    Rat phi = alpha * static_cast<long long>(u.dim());
    long long codim_total = 0;
    for (const Subspace& vi : profile.parts) {
        long long inter = u.dim() + vi.dim() - sum(u, vi).dim();
        codim_total += u.dim() - inter;
    }
    phi -= Rat(codim_total, n);
    return {alpha, phi};
}

struct WitnessCheck {
    bool ok = true;
    int first_failing = -1;  // coordinate index of the first failure
    std::string reason;
};

// Core check against arbitrary coordinate maps F_q^k' -> F_q^s: for each i,
// every vector of the joint kernel of phi(V_i), embedded into F_q^k' via
// A's basis, must be annihilated by maps[i].
inline WitnessCheck check_witness_maps(const std::vector<Matrix>& maps, const LocalProfile& profile,
                                       const ContainmentWitness& witness) {
    WitnessCheck out;
    if (maps.size() != profile.parts.size()) {
        out.ok = false;
        out.reason = "profile length != coordinate count";
        return out;
    }
    if (witness.a.dim() != profile.dim_v) {
        out.ok = false;
        out.reason = "dim A != dim V";
        return out;
    }
    if (witness.phi.rows() != profile.dim_v || witness.phi.cols() != witness.a.dim()) {
        out.ok = false;
        out.reason = "phi shape mismatch";
        return out;
    }
    if (profile.dim_v > 0 && rref(witness.phi).rank != profile.dim_v) {
        out.ok = false;
        out.reason = "phi not invertible";
        return out;
    }
    const Matrix& basis = witness.a.basis();
    for (std::size_t i = 0; i < maps.size(); ++i) {
        Subspace phi_vi = Subspace::from_span(profile.parts[i].basis() * witness.phi);
        Subspace jk = joint_kernel(phi_vi);  // in A-coordinates
        Matrix embedded = jk.basis() * basis;
        for (std::uint32_t row = 0; row < embedded.rows(); ++row) {
            auto y = maps[i].apply(embedded.row(row));
            for (gf_elem v : y) {
                if (v) {
                    out.ok = false;
                    out.first_failing = static_cast<int>(i);
                    out.reason = "joint kernel of phi(V_i) not inside ker(Enc_i)";
                    return out;
                }
            }
        }
    }
    return out;
}

inline WitnessCheck check_witness(const AdditiveCode& code, const LocalProfile& profile,
                                  const ContainmentWitness& witness) {
    if (witness.a.ambient() != code.k())
        return {false, -1, "witness subspace not in the message space"};
    return check_witness_maps(code.encoders(), profile, witness);
}

// Canonical contained profile of a message subspace A under arbitrary
// coordinate maps: V = F_q^{dim A}, V_i = annihilator of (A inter ker maps_i)
// in A-coordinates, phi = identity.
inline std::pair<LocalProfile, ContainmentWitness> profile_from_witness_maps(
    const std::vector<Matrix>& maps, const Subspace& a) {
    if (a.dim() < 1) throw Error(Errc::DomainError, "witness subspace must be nonzero");
    const std::uint32_t dim_a = a.dim();
    Matrix basis_t = a.basis().transpose();  // k x a
    std::vector<Subspace> parts;
    parts.reserve(maps.size());
    for (const Matrix& map : maps) {
        Matrix map_on_a = map * basis_t;      // s x a
        Subspace ker_a = kernel(map_on_a);    // (A inter ker map) in A-coords
        parts.push_back(annihilator(ker_a));
    }
    LocalProfile profile = LocalProfile::make(dim_a, std::move(parts));
    ContainmentWitness witness{a, Matrix::identity(a.field(), dim_a)};
    return {std::move(profile), std::move(witness)};
}

inline std::pair<LocalProfile, ContainmentWitness> profile_from_witness(const AdditiveCode& code,
                                                                        const Subspace& a) {
    if (a.ambient() != code.k()) throw Error(Errc::AmbientMismatch, "subspace not in message space");
    return profile_from_witness_maps(code.encoders(), a);
}

// ---------------------------------------------------------------------------
// Quotient machinery.
// ---------------------------------------------------------------------------

// Quotients a contained profile by W <= V: the new profile lives on
// V/W (realized as F_q^{dim V - dim W} through quotient_map) with parts
// M(V_i + W) = M(V_i); the new witness is A' = joint kernel of phi(W)
// inside A, with phi' the restriction along the quotient section.
inline std::pair<LocalProfile, ContainmentWitness> quotient_profile(const AdditiveCode& code,
                                                                    const LocalProfile& profile,
                                                                    const Subspace& w,
                                                                    const ContainmentWitness& witness) {
    if (w.ambient() != profile.dim_v) throw Error(Errc::AmbientMismatch, "W not inside V");
    WitnessCheck pre = check_witness(code, profile, witness);
    if (!pre.ok) throw Error(Errc::InvalidWitness, pre.reason);

    const std::uint32_t v = profile.dim_v;
    Matrix m = quotient_map(v, w);
    Matrix section = quotient_section(v, w);

    std::vector<Subspace> parts;
    parts.reserve(profile.parts.size());
    for (const Subspace& vi : profile.parts) parts.push_back(image(m, vi));
    LocalProfile out_profile = LocalProfile::make(v - w.dim(), std::move(parts));

    // A' = phi(W)^circ inside A, expressed first in A-coordinates.
    Subspace phi_w = Subspace::from_span(w.basis() * witness.phi);
    Subspace a_coords = joint_kernel(phi_w);
    Subspace a_new = Subspace::from_span(a_coords.basis() * witness.a.basis());
    // coordinates of A''s canonical basis inside A's basis
    Matrix c_prime = coordinates_in_basis(witness.a.basis(), a_new.basis());
    Matrix phi_new = section * witness.phi * c_prime.transpose();

    ContainmentWitness out_witness{std::move(a_new), std::move(phi_new)};
    WitnessCheck post = check_witness(code, out_profile, out_witness);
    if (!post.ok)
        throw Error(Errc::IdentityViolated, "quotient witness failed validation: " + post.reason);
    return {std::move(out_profile), std::move(out_witness)};
}

struct QuotientIdentityReport {
    Rat lhs;  // Phi(U+W) - Phi(W)
    Rat rhs;  // Phi(M(U)) on the quotient profile
    bool equal = false;
};

// Phi_V(U+W, .) - Phi_V(W, .) = Phi_{V/W}(M(U), (M(V_i)), alpha), both
// sides computed independently with exact rationals.
inline QuotientIdentityReport quotient_potential_identity(const Subspace& u, const Subspace& w,
                                                          const LocalProfile& profile,
                                                          const Rat& alpha) {
    if (u.ambient() != profile.dim_v || w.ambient() != profile.dim_v)
        throw Error(Errc::AmbientMismatch, "U/W ambient != dim V");
    Rat lhs = potential(sum(u, w), profile, alpha).value - potential(w, profile, alpha).value;

    Matrix m = quotient_map(profile.dim_v, w);
    std::vector<Subspace> parts;
    parts.reserve(profile.parts.size());
    for (const Subspace& vi : profile.parts) parts.push_back(image(m, vi));
    LocalProfile quotient = LocalProfile::make(profile.dim_v - w.dim(), std::move(parts));
    Rat rhs = potential(image(m, u), quotient, alpha).value;

    QuotientIdentityReport rep{lhs, rhs, lhs == rhs};
    if (!rep.equal)
        throw Error(Errc::IdentityViolated,
                    "quotient potential identity failed: " + rat_str(lhs) + " != " + rat_str(rhs));
    return rep;
}

// Quotients by the maximal-dimension maximizer of Phi (ties broken by
// enumeration order) and verifies exhaustively that the result is strictly
// violating on every nonzero subspace.
inline LocalProfile strictify_profile(const LocalProfile& profile, const Rat& alpha,
                                      const Budget& budget = default_budget()) {
    const std::uint32_t v = profile.dim_v;
    const FieldPtr& field = profile.field();
    Subspace full = Subspace::full(field, v);
    if (potential(full, profile, alpha).value >= Rat(0))
        throw Error(Errc::NotViolating, "profile does not violate at the given alpha");

    // maximize Phi over all subspaces, including {0} (value 0)
    Rat best_value(0);
    Subspace best = Subspace::zero(field, v);
    SubspaceEnumerator en(field, v, v, budget);
    for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
        Subspace s = en.at(idx);
        Rat val = potential(s, profile, alpha).value;
        if (val > best_value || (val == best_value && s.dim() > best.dim())) {
            best_value = val;
            best = std::move(s);
        }
    }

    Matrix m = quotient_map(v, best);
    std::vector<Subspace> parts;
    parts.reserve(profile.parts.size());
    for (const Subspace& vi : profile.parts) parts.push_back(image(m, vi));
    LocalProfile out = LocalProfile::make(v - best.dim(), std::move(parts));

    // exhaustive strictness scan
    SubspaceEnumerator check(field, out.dim_v, out.dim_v, budget);
    for (std::uint64_t idx = 0; idx < check.size(); ++idx)
        if (potential(check.at(idx), out, alpha).value >= Rat(0))
            throw Error(Errc::IdentityViolated, "strictified profile not strictly violating");
    return out;
}

// ---------------------------------------------------------------------------
// Pushforward dichotomy.
// ---------------------------------------------------------------------------

struct PushforwardResult {
    bool ma_zero = false;
    std::optional<Subspace> u;               // nonzero subspace of V
    std::optional<ProfileEvaluation> eval;   // Phi(U, profile, tau_hat(r)) >= 0
};

// Given a certified inner code, a linear map M into its message space, and
// a profile contained through Enc_i o M: either M(A) = 0, or the subspace
// U = phi^{-1}((ker M|_A)^perp) has nonnegative potential at tau_hat(r).
inline PushforwardResult pushforward_dichotomy(const AdditiveCode& inner,
                                               const DesignCertificate& cert, const Matrix& m,
                                               const LocalProfile& profile,
                                               const ContainmentWitness& witness, std::uint32_t r) {
    if (r < profile.dim_v) throw Error(Errc::DomainError, "need r >= dim V");
    if (cert.r_max < r) throw Error(Errc::DomainError, "certificate does not cover r");
    if (m.rows() != inner.k()) throw Error(Errc::ShapeMismatch, "M does not map into the inner message space");
    if (m.cols() != witness.a.ambient()) throw Error(Errc::ShapeMismatch, "M domain != witness ambient");

    std::vector<Matrix> composed;
    composed.reserve(inner.n());
    for (std::uint32_t i = 0; i < inner.n(); ++i) composed.push_back(inner.encoder(i) * m);
    WitnessCheck pre = check_witness_maps(composed, profile, witness);
    if (!pre.ok)
        throw Error(Errc::PreconditionFailed,
                    "composed-kernel condition fails at coordinate " + std::to_string(pre.first_failing));

    Matrix ma = m * witness.a.basis().transpose();  // A-coords -> F_q^k
    if (rref(ma).rank == 0) return {true, std::nullopt, std::nullopt};

    Subspace ker_ma = kernel(ma);                 // in A-coordinates
    Subspace ann = annihilator(ker_ma);           // (ker M|_A)^perp in A^*
    Subspace u = Subspace::from_span(ann.basis() * inverse(witness.phi));
    ProfileEvaluation eval = potential(u, profile, cert.tau_at(r));
    if (eval.value < Rat(0))
        throw Error(Errc::IdentityViolated, "pushforward produced negative potential");
    return {false, std::move(u), std::move(eval)};
}

// ---------------------------------------------------------------------------
// Equivalence check.
// ---------------------------------------------------------------------------

struct EquivalenceMismatch {
    std::uint64_t subspace_index;
    Rat ratio;
    Rat phi;
    int direction;  // 1: ratio > tau but Phi >= 0; 2: Phi < 0 but ratio <= tau
};

struct EquivalenceThresholdReport {
    Rat tau;
    std::uint64_t scanned = 0;
    std::vector<EquivalenceMismatch> mismatches;
    bool violation_exists = false;  // some subspace yields Phi < 0 at this tau
};

struct EquivalenceReport {
    std::uint32_t r = 0;
    Rat tau_hat;
    EquivalenceThresholdReport at_tau;    // threshold tau_hat(r): tight, no violation
    EquivalenceThresholdReport below_tau; // tau_hat(r) - 1/(2n r!): witness violates
    bool ok = false;
};

// Runs both directions of the design/profile equivalence at tau_hat(r) and
// at a threshold strictly between tau_hat(r) and the next lower achievable
// ratio (all ratios have denominator dividing n * d for d <= r, so
// tau_hat - 1/(2 n r!) separates them).
inline EquivalenceReport equivalence_check(const AdditiveCode& code, std::uint32_t r,
                                           const Budget& budget = default_budget()) {
    if (r < 1 || r > 12) throw Error(Errc::DomainError, "equivalence_check supports 1 <= r <= 12");
    DesignCertificate cert = tau_profile(code, r, budget);

    long long fact = 1;
    for (std::uint32_t i = 2; i <= r; ++i) fact *= i;
    Rat eta(1, 2LL * code.n() * fact);

    std::vector<Subspace> kernels;
    for (std::uint32_t i = 0; i < code.n(); ++i) kernels.push_back(kernel(code.encoder(i)));

    EquivalenceReport rep;
    rep.r = r;
    rep.tau_hat = cert.tau_at(r);

    auto run = [&](const Rat& tau) {
        EquivalenceThresholdReport tr;
        tr.tau = tau;
        SubspaceEnumerator en(code.field(), code.k(), std::min(r, code.k()), budget);
        for (std::uint64_t idx = 0; idx < en.size(); ++idx) {
            Subspace a = en.at(idx);
            Rat ratio = design_ratio(code, a, &kernels);
            auto [profile, witness] = profile_from_witness(code, a);
            if (!check_witness(code, profile, witness).ok)
                throw Error(Errc::IdentityViolated, "canonical witness failed validation");
            Subspace full_v = Subspace::full(code.field(), profile.dim_v);
            Rat phi = potential(full_v, profile, tau).value;
            if (phi < Rat(0)) tr.violation_exists = true;
            if (ratio > tau && !(phi < Rat(0)))
                tr.mismatches.push_back({idx, ratio, phi, 1});
            if (phi < Rat(0) && !(ratio > tau))
                tr.mismatches.push_back({idx, ratio, phi, 2});
            ++tr.scanned;
        }
        return tr;
    };

    rep.at_tau = run(rep.tau_hat);
    rep.below_tau = run(rep.tau_hat - eta);
    rep.ok = rep.at_tau.mismatches.empty() && rep.below_tau.mismatches.empty() &&
             !rep.at_tau.violation_exists && rep.below_tau.violation_exists;
    return rep;
}

// ---------------------------------------------------------------------------
// Inner-code search.
// ---------------------------------------------------------------------------

struct InnerSearchResult {
    AdditiveCode code;
    DesignCertificate cert;
    std::uint32_t attempts = 0;  // attempts consumed (successful draw included)
    Rat target;                  // R + epsilon bound that was certified
    std::string warning;         // nonempty if r exceeds the guidance eps*s/4
};

// Draws seeded random linear codes and certifies each until one satisfies
// tau_hat(r') <= R + epsilon for all r' <= r.
inline InnerSearchResult search_inner_code(FieldPtr field, std::uint32_t k_in, std::uint32_t s,
                                           std::uint32_t d, std::uint32_t r, const Rat& epsilon,
                                           std::uint32_t max_attempts, std::uint64_t seed,
                                           const Budget& budget = default_budget(),
                                           std::uint32_t workers = 1) {
    const Rat rate(k_in, static_cast<long long>(s) * d);
    const Rat target = rate + epsilon;
    std::string warning;
    if (Rat(r) > epsilon * Rat(s, 4))
        warning = "r = " + std::to_string(r) + " exceeds eps*s/4 = " + rat_str(epsilon * Rat(s, 4)) +
                  "; the random-code guarantee does not cover this range";

    std::optional<Rat> best_seen;
    for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
        AdditiveCode code = random_linear_code(field, k_in, s, d, Rng::split(seed, attempt));
        DesignCertificate cert = tau_profile(code, r, budget, workers);
        if (!best_seen || cert.tau_at(r) < *best_seen) best_seen = cert.tau_at(r);
        bool ok = true;
        for (std::uint32_t rp = 1; rp <= r && ok; ++rp) ok = cert.tau_at(rp) <= target;
        if (ok) return {std::move(code), std::move(cert), attempt + 1, target, warning};
    }
    throw Error(Errc::AttemptsExhausted,
                "no code with tau_hat(r) <= " + rat_str(target) + " in " +
                    std::to_string(max_attempts) + " attempts; best tau_hat(r) seen: " +
                    (best_seen ? rat_str(*best_seen) : "none"));
}

}  // namespace codeforge
