#pragma once

// Exact linear algebra over F_q.
//
// Subspaces are the universal currency of the verifier: every subspace is
// stored as the unique reduced row-echelon basis of its row space, so
// equality is bit-equality and enumeration order is canonical. Functionals
// are row vectors under the standard dot pairing, which makes annihilator
// and joint kernel the same kernel computation.

#include "codeforge/common.hpp"
#include "codeforge/gf.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace codeforge {

class Matrix {
public:
    Matrix() = default;

    Matrix(FieldPtr field, std::uint32_t rows, std::uint32_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * cols, 0) {}

    Matrix(FieldPtr field, std::uint32_t rows, std::uint32_t cols, std::vector<gf_elem> data)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != static_cast<std::size_t>(rows_) * cols_)
            throw Error(Errc::ShapeMismatch, "matrix data length != rows*cols");
        for (gf_elem v : data_) field_->check_element(v);
    }

    static Matrix identity(FieldPtr field, std::uint32_t n) {
        Matrix m(std::move(field), n, n);
        for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const FieldPtr& field() const { return field_; }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    const std::vector<gf_elem>& data() const { return data_; }

    gf_elem& at(std::uint32_t r, std::uint32_t c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    gf_elem at(std::uint32_t r, std::uint32_t c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::span<const gf_elem> row(std::uint32_t r) const {
        return {data_.data() + static_cast<std::size_t>(r) * cols_, cols_};
    }

    bool is_zero() const {
        for (gf_elem v : data_)
            if (v) return false;
        return true;
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_ &&
               (!field_ || !other.field_ || *field_ == *other.field_);
    }
    bool operator!=(const Matrix& other) const { return !(*this == other); }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::uint32_t r = 0; r < rows_; ++r)
            for (std::uint32_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error(Errc::ShapeMismatch, "matrix product shape mismatch");
        const Field& f = *a.field_;
        Matrix out(a.field_, a.rows_, b.cols_);
        for (std::uint32_t i = 0; i < a.rows_; ++i)
            for (std::uint32_t k = 0; k < a.cols_; ++k) {
                gf_elem aik = a.at(i, k);
                if (!aik) continue;
                for (std::uint32_t j = 0; j < b.cols_; ++j)
                    out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
            }
        return out;
    }

    // Vertical stack; operands must agree on cols and field.
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw Error(Errc::ShapeMismatch, "vstack column mismatch");
        Matrix out(a.field_, a.rows_ + b.rows_, a.cols_);
        std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
        std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
        return out;
    }

    // y = M x for a column vector x.
    std::vector<gf_elem> apply(std::span<const gf_elem> x) const {
        if (x.size() != cols_) throw Error(Errc::ShapeMismatch, "apply: vector length mismatch");
        const Field& f = *field_;
        std::vector<gf_elem> y(rows_, 0);
        for (std::uint32_t i = 0; i < rows_; ++i) {
            gf_elem acc = 0;
            for (std::uint32_t j = 0; j < cols_; ++j) {
                gf_elem m = at(i, j);
                if (m && x[j]) acc = f.add(acc, f.mul(m, x[j]));
            }
            y[i] = acc;
        }
        return y;
    }

private:
    FieldPtr field_;
    std::uint32_t rows_ = 0, cols_ = 0;
    std::vector<gf_elem> data_;
};

struct RrefResult {
    Matrix canonical;            // zero rows dropped
    std::uint32_t rank = 0;
    std::vector<std::uint32_t> pivots;
};

inline RrefResult rref(const Matrix& m) {
    const Field& f = *m.field();
    Matrix w = m;
    std::vector<std::uint32_t> pivots;
    std::uint32_t r = 0;
    for (std::uint32_t c = 0; c < w.cols() && r < w.rows(); ++c) {
        std::uint32_t sel = r;
        while (sel < w.rows() && w.at(sel, c) == 0) ++sel;
        if (sel == w.rows()) continue;
        if (sel != r)
            for (std::uint32_t j = 0; j < w.cols(); ++j) std::swap(w.at(sel, j), w.at(r, j));
        gf_elem piv_inv = f.inv(w.at(r, c));
        for (std::uint32_t j = c; j < w.cols(); ++j) w.at(r, j) = f.mul(w.at(r, j), piv_inv);
        for (std::uint32_t i = 0; i < w.rows(); ++i) {
            if (i == r) continue;
            gf_elem factor = w.at(i, c);
            if (!factor) continue;
            for (std::uint32_t j = c; j < w.cols(); ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix canon(m.field(), r, w.cols());
    for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t j = 0; j < w.cols(); ++j) canon.at(i, j) = w.at(i, j);
    return {std::move(canon), r, std::move(pivots)};
}

// Canonical linear subspace of F_q^ambient. dim() == basis().rows().
class Subspace {
public:
    static Subspace zero(FieldPtr field, std::uint32_t ambient) {
        Subspace s;
        s.basis_ = Matrix(std::move(field), 0, ambient);
        return s;
    }

    static Subspace full(FieldPtr field, std::uint32_t ambient) {
        Subspace s;
        s.basis_ = Matrix::identity(std::move(field), ambient);
        return s;
    }

    // Row space of an arbitrary spanning matrix, canonicalized.
    static Subspace from_span(const Matrix& rows) {
        Subspace s;
        s.basis_ = rref(rows).canonical;
        return s;
    }

    // Accepts a matrix that must already be in canonical form.
    static Subspace from_canonical(Matrix basis) {
        RrefResult rr = rref(basis);
        if (rr.canonical != basis)
            throw Error(Errc::ParseError, "subspace basis is not in canonical reduced row-echelon form");
        Subspace s;
        s.basis_ = std::move(basis);
        return s;
    }

    // Trusted path for constructions that are canonical by shape (the
    // enumerator); skips the rref round trip.
    static Subspace from_canonical_trusted(Matrix basis) {
        Subspace s;
        s.basis_ = std::move(basis);
        return s;
    }

    const Matrix& basis() const { return basis_; }
    const FieldPtr& field() const { return basis_.field(); }
    std::uint32_t ambient() const { return basis_.cols(); }
    std::uint32_t dim() const { return basis_.rows(); }

    bool operator==(const Subspace& other) const { return basis_ == other.basis_; }
    bool operator!=(const Subspace& other) const { return !(*this == other); }

    bool contains_vector(std::span<const gf_elem> v) const {
        if (v.size() != ambient()) throw Error(Errc::AmbientMismatch, "vector length != ambient");
        const Field& f = *field();
        std::vector<gf_elem> w(v.begin(), v.end());
        for (std::uint32_t r = 0; r < dim(); ++r) {
            std::uint32_t c = 0;
            while (c < ambient() && basis_.at(r, c) == 0) ++c;
            if (c == ambient() || !w[c]) continue;
            gf_elem factor = w[c];
            for (std::uint32_t j = c; j < ambient(); ++j)
                w[j] = f.sub(w[j], f.mul(factor, basis_.at(r, j)));
        }
        for (gf_elem x : w)
            if (x) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        for (std::uint32_t r = 0; r < other.dim(); ++r)
            if (!contains_vector(other.basis_.row(r))) return false;
        return true;
    }

private:
    Matrix basis_;
};

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient() || *a.field() != *b.field())
        throw Error(Errc::AmbientMismatch, "subspace ambient/field mismatch");
}

// {x : Mx = 0}, canonical.
inline Subspace kernel(const Matrix& m) {
    RrefResult rr = rref(m);
    const std::uint32_t k = m.cols();
    std::vector<bool> is_pivot(k, false);
    for (std::uint32_t p : rr.pivots) is_pivot[p] = true;
    const Field& f = *m.field();
    Matrix basis(m.field(), k - rr.rank, k);
    std::uint32_t row = 0;
    for (std::uint32_t c = 0; c < k; ++c) {
        if (is_pivot[c]) continue;
        basis.at(row, c) = 1;
        for (std::uint32_t i = 0; i < rr.rank; ++i)
            basis.at(row, rr.pivots[i]) = f.neg(rr.canonical.at(i, c));
        ++row;
    }
    return Subspace::from_span(basis);
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    return Subspace::from_span(Matrix::vstack(a.basis(), b.basis()));
}

// A^perp: functionals (row vectors) vanishing on A.
inline Subspace annihilator(const Subspace& a) { return kernel(a.basis()); }

// B^circ: vectors killed by every functional in B. Under the dot pairing
// this is the same computation as the annihilator.
inline Subspace joint_kernel(const Subspace& b) { return kernel(b.basis()); }

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    return joint_kernel(sum(annihilator(a), annihilator(b)));
}

// Image M(U) of a subspace under the column-vector map x -> Mx.
inline Subspace image(const Matrix& m, const Subspace& u) {
    if (m.cols() != u.ambient()) throw Error(Errc::AmbientMismatch, "image: map/subspace mismatch");
    return Subspace::from_span(u.basis() * m.transpose());
}

// Surjective M: F_q^ambient -> F_q^{ambient - dim W} with ker(M) = W,
// built from the complement of W's pivot columns: M(x) reads the free
// coordinates of the canonical representative of x + W.
inline Matrix quotient_map(std::uint32_t ambient, const Subspace& w) {
    if (w.ambient() != ambient) throw Error(Errc::AmbientMismatch, "quotient_map ambient mismatch");
    const Field& f = *w.field();
    RrefResult rr = rref(w.basis());
    std::vector<bool> is_pivot(ambient, false);
    for (std::uint32_t p : rr.pivots) is_pivot[p] = true;
    Matrix m(w.field(), ambient - w.dim(), ambient);
    std::uint32_t row = 0;
    for (std::uint32_t c = 0; c < ambient; ++c) {
        if (is_pivot[c]) continue;
        m.at(row, c) = 1;
        for (std::uint32_t i = 0; i < rr.rank; ++i)
            m.at(row, rr.pivots[i]) = f.neg(rr.canonical.at(i, c));
        ++row;
    }
    return m;
}

// Right inverse S of quotient_map(ambient, w): places target coordinates
// into the free columns, so quotient_map * S = identity.
inline Matrix quotient_section(std::uint32_t ambient, const Subspace& w) {
    if (w.ambient() != ambient) throw Error(Errc::AmbientMismatch, "quotient_section ambient mismatch");
    std::vector<bool> is_pivot(ambient, false);
    for (std::uint32_t p : rref(w.basis()).pivots) is_pivot[p] = true;
    Matrix s(w.field(), ambient - w.dim(), ambient);
    std::uint32_t row = 0;
    for (std::uint32_t c = 0; c < ambient; ++c) {
        if (is_pivot[c]) continue;
        s.at(row, c) = 1;
        ++row;
    }
    return s;
}

// Inverse of a square invertible matrix via rref([A | I]).
inline Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error(Errc::ShapeMismatch, "inverse of non-square matrix");
    const std::uint32_t n = a.rows();
    if (n == 0) return a;
    Matrix aug(a.field(), n, 2 * n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    RrefResult rr = rref(aug);
    if (rr.rank != n || rr.pivots[n - 1] != n - 1)
        throw Error(Errc::DomainError, "matrix is singular");
    Matrix out(a.field(), n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) out.at(i, j) = rr.canonical.at(i, n + j);
    return out;
}

// Coordinates of each row of `vectors` in the row basis `basis`
// (rows independent; every row of `vectors` must lie in the row space).
inline Matrix coordinates_in_basis(const Matrix& basis, const Matrix& vectors) {
    if (basis.cols() != vectors.cols())
        throw Error(Errc::AmbientMismatch, "coordinates_in_basis ambient mismatch");
    // Solve X * basis = vectors by eliminating [basis^T | vectors^T].
    const Field& f = *basis.field();
    const std::uint32_t n = basis.cols(), r = basis.rows(), t = vectors.rows();
    Matrix aug(basis.field(), n, r + t);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < r; ++j) aug.at(i, j) = basis.at(j, i);
        for (std::uint32_t j = 0; j < t; ++j) aug.at(i, r + j) = vectors.at(j, i);
    }
    RrefResult rr = rref(aug);
    Matrix x(basis.field(), t, r);
    for (std::uint32_t i = 0; i < rr.rank; ++i) {
        std::uint32_t p = rr.pivots[i];
        if (p >= r) throw Error(Errc::DomainError, "vector not in span of basis");
        for (std::uint32_t j = 0; j < t; ++j) x.at(j, p) = rr.canonical.at(i, r + j);
    }
    // Consistency: any pivot beyond column r means an unsolvable system.
    (void)f;
    return x;
}

// ---------------------------------------------------------------------------
// Deterministic subspace enumeration.
//
// Order: dimension ascending, then pivot-column set lexicographic, then the
// free entries as a base-q odometer (row-major positions, first position
// most significant). Random access by index makes the stream restartable
// and partitionable.
// ---------------------------------------------------------------------------

// Number of subspaces of F_q^ambient of dimension 1..r (Gaussian binomials,
// exact).
inline BigInt subspace_count(std::uint32_t ambient, std::uint32_t r, std::uint32_t q) {
    BigInt total = 0;
    const std::uint32_t rmax = std::min(r, ambient);
    for (std::uint32_t d = 1; d <= rmax; ++d) {
        BigInt num = 1, den = 1;
        for (std::uint32_t i = 0; i < d; ++i) {
            BigInt qa = 1, qb = 1;
            for (std::uint32_t e = 0; e < ambient - i; ++e) qa *= q;
            for (std::uint32_t e = 0; e < i + 1; ++e) qb *= q;
            num *= qa - 1;
            den *= qb - 1;
        }
        total += num / den;
    }
    return total;
}

class SubspaceEnumerator {
public:
    SubspaceEnumerator(FieldPtr field, std::uint32_t ambient, std::uint32_t r,
                       const Budget& budget = default_budget())
        : field_(std::move(field)), ambient_(ambient) {
        if (r > ambient) r = ambient;
        BigInt total = subspace_count(ambient_, r, field_->q());
        if (total > budget.max_subspaces)
            throw budget_error(total, "subspace enumeration over budget");
        for (std::uint32_t d = 1; d <= r; ++d) {
            std::vector<std::uint32_t> pivots(d);
            for (std::uint32_t i = 0; i < d; ++i) pivots[i] = i;
            while (true) {
                Block b;
                b.dim = d;
                b.pivots = pivots;
                b.offset = size_;
                std::uint64_t free_count = free_positions(pivots).size();
                b.count = 1;
                for (std::uint64_t i = 0; i < free_count; ++i) b.count *= field_->q();
                size_ += b.count;
                blocks_.push_back(std::move(b));
                // next d-combination of [0, ambient) in lexicographic order
                std::int32_t i = static_cast<std::int32_t>(d) - 1;
                while (i >= 0 && pivots[static_cast<std::uint32_t>(i)] ==
                                     ambient_ - d + static_cast<std::uint32_t>(i))
                    --i;
                if (i < 0) break;
                ++pivots[static_cast<std::uint32_t>(i)];
                for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < d; ++j)
                    pivots[j] = pivots[j - 1] + 1;
            }
        }
    }

    std::uint64_t size() const { return size_; }
    std::uint32_t ambient() const { return ambient_; }
    const FieldPtr& field() const { return field_; }

    Subspace at(std::uint64_t index) const {
        if (index >= size_) throw Error(Errc::DomainError, "subspace index out of range");
        // locate block
        std::size_t lo = 0, hi = blocks_.size();
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (blocks_[mid].offset <= index) lo = mid;
            else hi = mid;
        }
        const Block& b = blocks_[lo];
        std::uint64_t rem = index - b.offset;
        Matrix basis(field_, b.dim, ambient_);
        for (std::uint32_t i = 0; i < b.dim; ++i) basis.at(i, b.pivots[i]) = 1;
        auto frees = free_positions(b.pivots);
        // first free position most significant
        for (std::size_t i = frees.size(); i-- > 0;) {
            basis.at(frees[i].first, frees[i].second) = static_cast<gf_elem>(rem % field_->q());
            rem /= field_->q();
        }
        // Canonical by construction: pivots are leading ones, free entries
        // live strictly right of their row's pivot in non-pivot columns.
        return Subspace::from_canonical_trusted(std::move(basis));
    }

private:
    struct Block {
        std::uint32_t dim;
        std::vector<std::uint32_t> pivots;
        std::uint64_t offset;
        std::uint64_t count;
    };

    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_positions(
        const std::vector<std::uint32_t>& pivots) const {
        std::vector<bool> is_pivot(ambient_, false);
        for (std::uint32_t p : pivots) is_pivot[p] = true;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t i = 0; i < pivots.size(); ++i)
            for (std::uint32_t c = pivots[i] + 1; c < ambient_; ++c)
                if (!is_pivot[c]) out.emplace_back(i, c);
        return out;
    }

    FieldPtr field_;
    std::uint32_t ambient_;
    std::vector<Block> blocks_;
    std::uint64_t size_ = 0;
};

}  // namespace codeforge
