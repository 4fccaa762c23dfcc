#pragma once

// d-regular bipartite graphs with explicit per-vertex edge orderings (the
// routing fabric of the AEL composition) and numerically certified second
// singular values. Parallel edges are allowed; the normalized biadjacency
// carries multiplicity/d entries.

#include "codeforge/common.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace codeforge {

struct EdgeRef {
    std::uint32_t vertex;  // partner vertex on the other side
    std::uint32_t pos;     // slot index in the partner's adjacency list

    bool operator==(const EdgeRef& o) const { return vertex == o.vertex && pos == o.pos; }
};

class BipartiteGraph {
public:
    static BipartiteGraph complete(std::uint32_t n) {
        if (n < 1) throw Error(Errc::DomainError, "need n >= 1");
        BipartiteGraph g;
        g.n_ = n;
        g.d_ = n;
        g.left_.assign(n, std::vector<EdgeRef>(n));
        g.right_.assign(n, std::vector<EdgeRef>(n));
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t l = 0; l < n; ++l) {
                g.left_[i][l] = {l, i};
                g.right_[i][l] = {l, i};
            }
        g.validate();
        return g;
    }

    // Union of d independently seeded uniform permutations; edge l at left
    // vertex i goes to pi_l(i), and sits at slot l on the right as well.
    static BipartiteGraph random_regular(std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
        if (n < 1 || d < 1) throw Error(Errc::DomainError, "need n, d >= 1");
        BipartiteGraph g;
        g.n_ = n;
        g.d_ = d;
        g.left_.assign(n, std::vector<EdgeRef>(d));
        g.right_.assign(n, std::vector<EdgeRef>(d));
        for (std::uint32_t l = 0; l < d; ++l) {
            Rng rng(Rng::split(seed, l));
            std::vector<std::uint32_t> perm(n);
            for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
            for (std::uint32_t i = n; i > 1; --i) {
                std::uint32_t j = static_cast<std::uint32_t>(rng.below(i));
                std::swap(perm[i - 1], perm[j]);
            }
            for (std::uint32_t i = 0; i < n; ++i) {
                g.left_[i][l] = {perm[i], l};
                g.right_[perm[i]][l] = {i, l};
            }
        }
        g.validate();
        return g;
    }

    // Rebuild from a serialized left adjacency; throws ParseError naming the
    // first inconsistent edge slot.
    static BipartiteGraph from_left(std::uint32_t n, std::uint32_t d,
                                    std::vector<std::vector<EdgeRef>> left) {
        if (left.size() != n) throw Error(Errc::ParseError, "left adjacency size != n");
        BipartiteGraph g;
        g.n_ = n;
        g.d_ = d;
        g.left_ = std::move(left);
        g.right_.assign(n, std::vector<EdgeRef>(d, {UINT32_MAX, UINT32_MAX}));
        for (std::uint32_t i = 0; i < n; ++i) {
            if (g.left_[i].size() != d)
                throw Error(Errc::ParseError, "left vertex " + std::to_string(i) + " degree != d");
            for (std::uint32_t l = 0; l < d; ++l) {
                EdgeRef e = g.left_[i][l];
                if (e.vertex >= n || e.pos >= d)
                    throw Error(Errc::ParseError, "edge out of range at left (" + std::to_string(i) +
                                                      ", " + std::to_string(l) + ")");
                if (g.right_[e.vertex][e.pos].vertex != UINT32_MAX)
                    throw Error(Errc::ParseError,
                                "cross-consistency broken: right slot (" + std::to_string(e.vertex) +
                                    ", " + std::to_string(e.pos) + ") claimed twice, second claim by left (" +
                                    std::to_string(i) + ", " + std::to_string(l) + ")");
                g.right_[e.vertex][e.pos] = {i, l};
            }
        }
        g.validate();
        return g;
    }

    std::uint32_t n() const { return n_; }
    std::uint32_t d() const { return d_; }
    const std::vector<std::vector<EdgeRef>>& left() const { return left_; }
    const std::vector<std::vector<EdgeRef>>& right() const { return right_; }

    // Cross-consistency: left[i][l] = (j, l') iff right[j][l'] = (i, l).
    void validate() const {
        for (std::uint32_t i = 0; i < n_; ++i)
            for (std::uint32_t l = 0; l < d_; ++l) {
                EdgeRef e = left_[i][l];
                if (e.vertex >= n_ || e.pos >= d_ || !(right_[e.vertex][e.pos] == EdgeRef{i, l}))
                    throw Error(Errc::ParseError, "cross-consistency broken at left (" +
                                                      std::to_string(i) + ", " + std::to_string(l) + ")");
            }
        for (std::uint32_t j = 0; j < n_; ++j)
            for (std::uint32_t l = 0; l < d_; ++l) {
                EdgeRef e = right_[j][l];
                if (e.vertex >= n_ || e.pos >= d_ || !(left_[e.vertex][e.pos] == EdgeRef{j, l}))
                    throw Error(Errc::ParseError, "cross-consistency broken at right (" +
                                                      std::to_string(j) + ", " + std::to_string(l) + ")");
            }
    }

    // Normalized biadjacency: entry (j, i) = multiplicity(i -> j) / d, so
    // A x averages left values onto right vertices.
    Eigen::MatrixXd normalized_biadjacency() const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
        for (std::uint32_t j = 0; j < n_; ++j)
            for (std::uint32_t l = 0; l < d_; ++l) a(j, right_[j][l].vertex) += 1.0 / d_;
        return a;
    }

private:
    std::uint32_t n_ = 0, d_ = 0;
    std::vector<std::vector<EdgeRef>> left_, right_;
};

struct SpectralCertificate {
    double lambda_bound = 1.0;  // in [0, 1]
    double tolerance = 1e-9;
    std::string method;         // "exact-svd" | "power-iteration"
};

enum class SpectralMethod { Auto, ExactSvd, PowerIteration };

// Certified bound on the second singular value of the normalized
// biadjacency. The top singular pair is known exactly (value 1, vectors
// all-ones), so we deflate it and bound the operator norm of the residual:
// exact dense SVD for n <= 512, power iteration (1e4 iteration cap) above.
// The certificate is estimate + tol, clamped into [0, 1].
inline SpectralCertificate sigma2(const BipartiteGraph& g, double tol = 1e-9,
                                  SpectralMethod method = SpectralMethod::Auto,
                                  std::uint64_t dense_cap = default_budget().max_dense_dim) {
    if (g.n() > dense_cap) throw Error(Errc::CapExceeded, "graph larger than the dense spectral cap");
    if (tol <= 0) throw Error(Errc::DomainError, "tolerance must be positive");
    const std::uint32_t n = g.n();
    Eigen::MatrixXd b = g.normalized_biadjacency();
    b.array() -= 1.0 / n;  // deflate the known top pair (sigma = 1, ones/sqrt(n))

    if (method == SpectralMethod::Auto)
        method = n <= 512 ? SpectralMethod::ExactSvd : SpectralMethod::PowerIteration;

    double estimate = 0.0;
    std::string tag;
    if (method == SpectralMethod::ExactSvd) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
        estimate = n > 0 ? svd.singularValues()(0) : 0.0;
        tag = "exact-svd";
    } else {
        // power iteration on B^T B from a fixed seeded start vector
        Rng rng(0x51e2a5);
        Eigen::VectorXd v(n);
        for (std::uint32_t i = 0; i < n; ++i) v(i) = rng.unit() - 0.5;
        if (v.norm() == 0) v.setOnes();
        v.normalize();
        double prev = 0.0;
        for (int it = 0; it < 10000; ++it) {
            Eigen::VectorXd w = b.transpose() * (b * v);
            double nu = w.norm();
            if (nu == 0) {
                prev = 0;
                break;
            }
            v = w / nu;
            if (std::abs(nu - prev) < tol * tol * 0.01 && it > 2) {
                prev = nu;
                break;
            }
            prev = nu;
        }
        estimate = std::sqrt(prev);
        tag = "power-iteration";
    }

    SpectralCertificate cert;
    cert.lambda_bound = std::min(1.0, std::max(0.0, estimate + tol));
    cert.tolerance = tol;
    cert.method = tag;
    return cert;
}

struct MixingReport {
    double mu = 0;     // mean of x
    double lhs = 0;    // (1/n) sum_j (y_j - mu)^2
    double bound = 0;  // lambda^2 * ||x||_inf^2
};

struct MixingViolation : Error {
    MixingReport report;
    explicit MixingViolation(MixingReport r)
        : Error(Errc::ViolationFound, "expander mixing bound violated"), report(r) {}
};

// Checks (1/n) sum_j (y_j - mu)^2 <= lambda^2 ||x||_inf^2 where y averages
// x over each right vertex's neighbors. Throws MixingViolation (with the
// full report) if the certified bound fails beyond numerical slack.
inline MixingReport mixing_check(const BipartiteGraph& g, const SpectralCertificate& cert,
                                 std::span<const double> x) {
    if (x.size() != g.n()) throw Error(Errc::ShapeMismatch, "x length != n");
    const std::uint32_t n = g.n();
    MixingReport rep;
    double xmax = 0;
    for (double v : x) {
        rep.mu += v;
        xmax = std::max(xmax, std::abs(v));
    }
    rep.mu /= n;
    for (std::uint32_t j = 0; j < n; ++j) {
        double yj = 0;
        for (const EdgeRef& e : g.right()[j]) yj += x[e.vertex];
        yj /= g.d();
        rep.lhs += (yj - rep.mu) * (yj - rep.mu);
    }
    rep.lhs /= n;
    rep.bound = cert.lambda_bound * cert.lambda_bound * xmax * xmax;
    const double slack = 1e-12 * (1.0 + rep.bound);
    if (rep.lhs > rep.bound + slack) throw MixingViolation(rep);
    return rep;
}

}  // namespace codeforge
