#pragma once

// Brute-force and sampled verifiers for the decoding consequences of a
// design certificate: average-radius list decoding, list recovery, and
// curve decoding. Exhaustive modes are the oracles; sampled modes are
// deterministic per seed. Distances are exact rationals; bounds with real
// exponents are compared with outward rounding (a violation is declared
// only strictly above the rounded-up bound).

#include "codeforge/codes.hpp"
#include "codeforge/common.hpp"
#include "codeforge/design.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace codeforge {

enum class ScanMode { Exhaustive, Sampled };

struct DecodingQuery {
    std::uint32_t ell = 1;       // list size / curve degree
    std::uint32_t r_tuple = 2;   // tuple size / design dimension in use
    std::uint32_t a = 1;         // curve-decoding agreement threshold
    std::uint64_t trials = 100;  // sampling budget
    ScanMode mode = ScanMode::Exhaustive;
};

namespace detail {

// Flat received word with index decoded base q, symbol 0 least significant.
inline std::vector<gf_elem> word_at(std::uint64_t idx, std::uint32_t len, std::uint32_t q) {
    std::vector<gf_elem> w(len);
    for (std::uint32_t i = 0; i < len; ++i) {
        w[i] = static_cast<gf_elem>(idx % q);
        idx /= q;
    }
    return w;
}

// Number of blocks where two flat (n*s) vectors differ.
inline std::uint32_t block_mismatches(std::span<const gf_elem> a, std::span<const gf_elem> b,
                                      std::uint32_t n, std::uint32_t s) {
    std::uint32_t miss = 0;
    for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t t = 0; t < s; ++t)
            if (a[static_cast<std::size_t>(j) * s + t] != b[static_cast<std::size_t>(j) * s + t]) {
                ++miss;
                break;
            }
    return miss;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Average-radius list decoding.
// ---------------------------------------------------------------------------

struct ListDecodingReport {
    std::uint32_t r = 0;
    Rat bound{0};    // (r-1)(1 - tau_hat(r-1))
    Rat minimum{1};  // min over (y, r distinct codewords) of sum_i dist(y, c_i)
    bool pass = false;
    ScanMode mode = ScanMode::Exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t scanned = 0;
    std::vector<gf_elem> witness_word;           // extremal received word (flat)
    std::vector<std::uint64_t> witness_messages; // message indices of the tuple
};

inline ListDecodingReport list_decoding_check(const AdditiveCode& code,
                                              const DesignCertificate& cert, std::uint32_t r,
                                              ScanMode mode = ScanMode::Exhaustive,
                                              std::uint64_t seed = 0, std::uint64_t trials = 1000,
                                              const Budget& budget = default_budget()) {
    if (r < 1) throw Error(Errc::DomainError, "need r >= 1");
    if (r >= 2 && cert.r_max < r - 1)
        throw Error(Errc::DomainError, "certificate does not cover r-1");
    const std::uint32_t n = code.n(), s = code.s(), q = code.field()->q();
    const std::uint64_t word_len = static_cast<std::uint64_t>(n) * s;

    ListDecodingReport rep;
    rep.r = r;
    rep.mode = mode;
    rep.seed = seed;
    rep.bound = r >= 2 ? Rat(r - 1) * (Rat(1) - cert.tau_at(r - 1)) : Rat(0);
    rep.minimum = Rat(r);  // sums are at most r

    BigInt cw_count = code.message_count();
    if (BigInt(r) > cw_count) throw Error(Errc::DomainError, "fewer than r codewords exist");
    const std::uint64_t m = static_cast<std::uint64_t>(cw_count);
    std::vector<std::vector<gf_elem>> words(m);
    for (std::uint64_t i = 0; i < m; ++i) words[i] = code.encode(code.message_at(i)).symbols;

    auto consider = [&](const std::vector<gf_elem>& y, const std::vector<std::uint64_t>& tuple) {
        std::uint32_t total = 0;
        for (std::uint64_t ci : tuple) total += detail::block_mismatches(y, words[ci], n, s);
        Rat sum(total, n);
        if (sum < rep.minimum) {
            rep.minimum = sum;
            rep.witness_word = y;
            rep.witness_messages = tuple;
        }
        ++rep.scanned;
    };

    if (mode == ScanMode::Exhaustive) {
        BigInt received = 1;
        for (std::uint64_t i = 0; i < word_len; ++i) received *= q;
        BigInt work = received * detail::binomial(m, r);
        if (work > budget.max_scan) throw budget_error(work, "list-decoding exhaustive scan over budget");

        const std::uint64_t received_count = received.convert_to<std::uint64_t>();
        std::vector<std::uint64_t> tuple(r);
        for (std::uint32_t i = 0; i < r; ++i) tuple[i] = i;
        while (true) {
            for (std::uint64_t yi = 0; yi < received_count; ++yi)
                consider(detail::word_at(yi, static_cast<std::uint32_t>(word_len), q), tuple);
            // next combination
            std::int64_t i = static_cast<std::int64_t>(r) - 1;
            while (i >= 0 && tuple[static_cast<std::size_t>(i)] == m - r + static_cast<std::uint64_t>(i))
                --i;
            if (i < 0) break;
            ++tuple[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < r; ++j)
                tuple[j] = tuple[j - 1] + 1;
        }
    } else {
        Rng rng(seed);
        for (std::uint64_t t = 0; t < trials; ++t) {
            std::vector<gf_elem> y(word_len);
            for (auto& v : y) v = static_cast<gf_elem>(rng.below(q));
            std::vector<std::uint64_t> tuple;
            while (tuple.size() < r) {
                std::uint64_t c = rng.below(m);
                if (std::find(tuple.begin(), tuple.end(), c) == tuple.end()) tuple.push_back(c);
            }
            std::sort(tuple.begin(), tuple.end());
            consider(y, tuple);
        }
    }
    rep.pass = rep.minimum >= rep.bound;
    return rep;
}

// ---------------------------------------------------------------------------
// List recovery.
// ---------------------------------------------------------------------------

struct ListRecoveryReport {
    std::uint32_t ell = 0;
    Rat epsilon{0};
    std::uint32_t r_required = 0;  // ceil(ell / eps)
    bool inconclusive = false;     // certificate does not cover r_required
    Rat radius{0};                 // 1 - tau_hat(r) - eps
    double list_bound = 0;         // outward-rounded allowance
    std::uint64_t worst_count = 0;
    bool pass = false;
    ScanMode mode = ScanMode::Exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t scanned = 0;
    std::vector<std::vector<std::uint64_t>> worst_lists;  // n lists of ell block-coded symbols
};

inline ListRecoveryReport list_recovery_check(const AdditiveCode& code,
                                              const DesignCertificate& cert, std::uint32_t ell,
                                              const Rat& epsilon,
                                              ScanMode mode = ScanMode::Exhaustive,
                                              std::uint64_t seed = 0, std::uint64_t trials = 500,
                                              const Budget& budget = default_budget()) {
    if (ell < 1) throw Error(Errc::DomainError, "need ell >= 1");
    if (epsilon <= Rat(0)) throw Error(Errc::DomainError, "need epsilon > 0");
    const std::uint32_t n = code.n(), s = code.s(), q = code.field()->q();

    ListRecoveryReport rep;
    rep.ell = ell;
    rep.epsilon = epsilon;
    rep.mode = mode;
    rep.seed = seed;
    rep.r_required = static_cast<std::uint32_t>(rat_ceil(Rat(ell) / epsilon));
    if (cert.r_max < rep.r_required) {
        rep.inconclusive = true;
        return rep;
    }
    const Rat tau = cert.tau_at(rep.r_required);
    rep.radius = Rat(1) - tau - epsilon;

    // list bound (ell / (tau + eps))^{(tau + eps)/eps}, rounded outward
    const long double te = rat_ld(tau + epsilon);
    const long double bound = std::pow(static_cast<long double>(ell) / te, te / rat_ld(epsilon));
    rep.list_bound = static_cast<double>(bound * (1.0L + 1e-9L) + 1e-9L);

    // alphabet symbols as block codes
    std::uint64_t sigma = 1;
    for (std::uint32_t t = 0; t < s; ++t) sigma *= q;
    if (ell > sigma) throw Error(Errc::DomainError, "ell exceeds the alphabet size");

    const std::uint64_t m = static_cast<std::uint64_t>(code.message_count());
    // block code of codeword i at coordinate j
    std::vector<std::vector<std::uint64_t>> block_code(m, std::vector<std::uint64_t>(n));
    for (std::uint64_t i = 0; i < m; ++i) {
        Codeword cw = code.encode(code.message_at(i));
        for (std::uint32_t j = 0; j < n; ++j) {
            std::uint64_t v = 0;
            for (std::uint32_t t = s; t-- > 0;) v = v * q + cw.symbols[static_cast<std::size_t>(j) * s + t];
            block_code[i][j] = v;
        }
    }

    auto consider = [&](const std::vector<std::vector<std::uint64_t>>& lists) {
        std::uint64_t count = 0;
        for (std::uint64_t i = 0; i < m; ++i) {
            std::uint32_t miss = 0;
            for (std::uint32_t j = 0; j < n; ++j) {
                const auto& lj = lists[j];
                if (std::find(lj.begin(), lj.end(), block_code[i][j]) == lj.end()) ++miss;
            }
            if (Rat(miss, n) < rep.radius) ++count;
        }
        if (count > rep.worst_count || rep.scanned == 0) {
            rep.worst_count = count;
            rep.worst_lists = lists;
        }
        ++rep.scanned;
    };

    if (mode == ScanMode::Exhaustive) {
        // all size-ell symbol subsets, in lexicographic order
        std::vector<std::vector<std::uint64_t>> subsets;
        std::vector<std::uint64_t> comb(ell);
        for (std::uint32_t i = 0; i < ell; ++i) comb[i] = i;
        while (true) {
            subsets.push_back(comb);
            std::int64_t i = static_cast<std::int64_t>(ell) - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == sigma - ell + static_cast<std::uint64_t>(i))
                --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < ell; ++j)
                comb[j] = comb[j - 1] + 1;
        }
        BigInt work = 1;
        for (std::uint32_t j = 0; j < n; ++j) work *= subsets.size();
        if (work > budget.max_scan) throw budget_error(work, "list-recovery exhaustive scan over budget");

        std::vector<std::size_t> odo(n, 0);
        while (true) {
            std::vector<std::vector<std::uint64_t>> lists(n);
            for (std::uint32_t j = 0; j < n; ++j) lists[j] = subsets[odo[j]];
            consider(lists);
            std::int64_t j = static_cast<std::int64_t>(n) - 1;
            while (j >= 0 && odo[static_cast<std::size_t>(j)] + 1 == subsets.size()) {
                odo[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) break;
            ++odo[static_cast<std::size_t>(j)];
        }
    } else {
        Rng rng(seed);
        for (std::uint64_t t = 0; t < trials; ++t) {
            std::vector<std::vector<std::uint64_t>> lists(n);
            for (std::uint32_t j = 0; j < n; ++j) {
                // partial shuffle for ell distinct symbols
                std::vector<std::uint64_t> pool(sigma);
                for (std::uint64_t v = 0; v < sigma; ++v) pool[v] = v;
                for (std::uint32_t i = 0; i < ell; ++i) {
                    std::uint64_t pick = i + rng.below(sigma - i);
                    std::swap(pool[i], pool[pick]);
                }
                lists[j].assign(pool.begin(), pool.begin() + ell);
            }
            consider(lists);
        }
    }
    rep.pass = static_cast<double>(rep.worst_count) <= rep.list_bound;
    return rep;
}

// ---------------------------------------------------------------------------
// Curve decoding (sampled, planted instances).
// ---------------------------------------------------------------------------

struct CurveTrialWitness {
    std::uint64_t trial = 0;
    std::uint32_t agreement_set = 0;  // |A|
    std::uint64_t best_agreement = 0;
};

struct CurveDecodingReport {
    std::uint32_t ell = 0, r = 0, a = 0;
    Rat epsilon{0};
    Rat radius{0};      // 1 - tau_hat(r) - eps
    Rat b_threshold{0}; // eps/(r+eps) * a
    std::uint64_t trials = 0, vacuous = 0;
    std::uint64_t seed = 0;
    std::vector<CurveTrialWitness> violations;
    bool pass = false;
};

// Planted-instance sampling: each trial plants a codeword curve on a random
// subset of the alphabet points, fills the rest of f with arbitrary
// codewords, and perturbs the curve coefficients; whenever the agreement
// set A reaches size a, the exhaustive tuple search must find a codeword
// curve agreeing with f on at least eps/(r+eps) * a points of A.
inline CurveDecodingReport curve_decoding_check(const AdditiveCode& code,
                                                const DesignCertificate& cert,
                                                const DecodingQuery& query, std::uint32_t r,
                                                const Rat& epsilon, std::uint64_t seed,
                                                const Budget& budget = default_budget()) {
    const std::uint32_t ell = query.ell;
    if (r < 1) throw Error(Errc::DomainError, "need r >= 1");
    if (epsilon < Rat(ell + 1, r))
        throw Error(Errc::DomainError, "need epsilon >= (ell+1)/r");
    if (cert.r_max < r) throw Error(Errc::DomainError, "certificate does not cover r");
    const std::uint32_t n = code.n(), s = code.s(), q = code.field()->q();
    const Field& f = *code.field();
    const std::uint64_t word_len = static_cast<std::uint64_t>(n) * s;

    CurveDecodingReport rep;
    rep.ell = ell;
    rep.r = r;
    rep.a = query.a;
    rep.epsilon = epsilon;
    rep.seed = seed;
    rep.trials = query.trials;
    rep.radius = Rat(1) - cert.tau_at(r) - epsilon;
    rep.b_threshold = epsilon / (Rat(r) + epsilon) * query.a;

    const std::uint64_t m = static_cast<std::uint64_t>(code.message_count());
    BigInt tuples = 1;
    for (std::uint32_t j = 0; j <= ell; ++j) tuples *= m;
    if (BigInt(query.trials) * tuples > budget.max_scan)
        throw budget_error(BigInt(query.trials) * tuples, "curve-decoding tuple search over budget");

    std::vector<std::vector<gf_elem>> words(m);
    for (std::uint64_t i = 0; i < m; ++i) words[i] = code.encode(code.message_at(i)).symbols;

    // curve(alpha) = sum_j vec_j alpha^j, symbol-wise
    auto curve_eval = [&](const std::vector<const std::vector<gf_elem>*>& coeffs, gf_elem alpha) {
        std::vector<gf_elem> out(word_len, 0);
        gf_elem apow = 1;
        for (const auto* vec : coeffs) {
            if (apow) {
                for (std::uint64_t t = 0; t < word_len; ++t)
                    out[t] = f.add(out[t], f.mul((*vec)[t], apow));
            }
            apow = f.mul(apow, alpha);
        }
        return out;
    };

    for (std::uint64_t trial = 0; trial < query.trials; ++trial) {
        Rng rng(Rng::split(seed, trial));
        // planted curve coefficients (codewords)
        std::vector<std::uint64_t> planted(ell + 1);
        std::vector<const std::vector<gf_elem>*> planted_vecs;
        for (auto& idx : planted) {
            idx = rng.below(m);
            planted_vecs.push_back(&words[idx]);
        }
        // f: planted on a random subset, arbitrary codewords elsewhere
        std::vector<std::vector<gf_elem>> fmap(q);
        for (std::uint32_t av = 0; av < q; ++av) {
            if (rng.coin()) fmap[av] = curve_eval(planted_vecs, static_cast<gf_elem>(av));
            else fmap[av] = words[rng.below(m)];
        }
        // u_j: the planted coefficients with a few corrupted blocks
        std::vector<std::vector<gf_elem>> u;
        for (std::uint32_t j = 0; j <= ell; ++j) {
            std::vector<gf_elem> uj = words[planted[j]];
            std::uint64_t corruptions = rng.below(3);
            for (std::uint64_t c = 0; c < corruptions; ++c) {
                std::uint32_t block = static_cast<std::uint32_t>(rng.below(n));
                for (std::uint32_t t = 0; t < s; ++t)
                    uj[static_cast<std::size_t>(block) * s + t] = static_cast<gf_elem>(rng.below(q));
            }
            u.push_back(std::move(uj));
        }
        std::vector<const std::vector<gf_elem>*> u_vecs;
        for (const auto& uj : u) u_vecs.push_back(&uj);

        // agreement set A
        std::vector<gf_elem> aset;
        for (std::uint32_t av = 0; av < q; ++av) {
            std::vector<gf_elem> yv = curve_eval(u_vecs, static_cast<gf_elem>(av));
            std::uint32_t miss = detail::block_mismatches(yv, fmap[av], n, s);
            if (Rat(miss, n) <= rep.radius) aset.push_back(static_cast<gf_elem>(av));
        }
        if (aset.size() < query.a) {
            ++rep.vacuous;
            continue;
        }

        // exhaustive search over codeword curves
        std::uint64_t best = 0;
        std::vector<std::uint64_t> tuple(ell + 1, 0);
        while (true) {
            std::vector<const std::vector<gf_elem>*> coeffs;
            for (std::uint64_t idx : tuple) coeffs.push_back(&words[idx]);
            std::uint64_t agree = 0;
            for (gf_elem av : aset)
                if (curve_eval(coeffs, av) == fmap[av]) ++agree;
            best = std::max(best, agree);
            std::int64_t j = static_cast<std::int64_t>(ell);
            while (j >= 0 && tuple[static_cast<std::size_t>(j)] + 1 == m) {
                tuple[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) break;
            ++tuple[static_cast<std::size_t>(j)];
        }
        if (Rat(static_cast<long long>(best)) < rep.b_threshold)
            rep.violations.push_back({trial, static_cast<std::uint32_t>(aset.size()), best});
    }
    rep.pass = rep.violations.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Parameter planning for list recovery.
// ---------------------------------------------------------------------------

struct RecoveryPlan {
    std::uint32_t ell = 0;
    Rat rate{0};
    Rat epsilon{0};
    std::uint64_t list_bound = 0;  // L
    Rat eps0{0};                   // eps^2 / (4 L log2(ell/eps)), rounded down
    Rat eps1{0};                   // eps - eps0
    bool eps1_ok = false;          // eps1 >= eps/2, required by the split
    std::uint32_t design_r = 0;    // ceil(ell / eps1)
    std::uint64_t r_squared = 0;
    BigInt alphabet_exponent;      // q^{r^2} when q is given, else 0
    std::string summary;
};

// Splits epsilon into eps0 + eps1 for the list-recovery corollary:
// L = ceil((ell/(R+eps))^{(R+eps)/eps}), eps0 = eps^2/(4 L log2(ell/eps)).
// The log base is fixed to 2 and eps0 is rounded down to a dyadic rational
// (resolution 2^-40), which keeps eps1 on the safe side of eps/2.
inline RecoveryPlan recovery_parameter_plan(std::uint32_t ell, const Rat& rate, const Rat& epsilon,
                                            std::uint32_t q = 0) {
    if (ell < 2) throw Error(Errc::DomainError, "plan requires ell >= 2");
    if (!(rate > Rat(0) && rate < Rat(1))) throw Error(Errc::DomainError, "plan requires 0 < R < 1");
    if (!(epsilon > Rat(0) && epsilon < Rat(1)))
        throw Error(Errc::DomainError, "plan requires 0 < epsilon < 1");

    RecoveryPlan plan;
    plan.ell = ell;
    plan.rate = rate;
    plan.epsilon = epsilon;

    const long double re = rat_ld(rate + epsilon);
    const long double l_real = std::pow(static_cast<long double>(ell) / re, re / rat_ld(epsilon));
    plan.list_bound = static_cast<std::uint64_t>(std::ceil(l_real * (1.0L - 1e-12L)));

    const long double lg = std::log2(rat_ld(Rat(ell) / epsilon));
    const long double eps0_real =
        rat_ld(epsilon) * rat_ld(epsilon) / (4.0L * plan.list_bound * lg);
    const long long scale = 1LL << 40;
    long long num = static_cast<long long>(eps0_real * static_cast<long double>(scale));
    if (num < 1) num = 1;
    plan.eps0 = Rat(num, scale);
    plan.eps1 = epsilon - plan.eps0;
    plan.eps1_ok = plan.eps1 >= epsilon / 2;

    plan.design_r = static_cast<std::uint32_t>(rat_ceil(Rat(ell) / plan.eps1));
    plan.r_squared = static_cast<std::uint64_t>(plan.design_r) * plan.design_r;
    plan.alphabet_exponent = 0;
    if (q > 0) {
        BigInt e = 1;
        for (std::uint64_t i = 0; i < plan.r_squared; ++i) e *= q;
        plan.alphabet_exponent = e;
    }
    plan.summary = "L = " + std::to_string(plan.list_bound) + ", eps0 = " + rat_str(plan.eps0) +
                   " (dyadic, log base 2), eps1 = " + rat_str(plan.eps1) +
                   ", design dimension r = " + std::to_string(plan.design_r) +
                   ", alphabet exponent poly(r,1/eps)*q^" + std::to_string(plan.r_squared);
    return plan;
}

}  // namespace codeforge
