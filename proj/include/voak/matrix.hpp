#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "voak/field.hpp"
#include "voak/polynomial.hpp"

namespace voak {

// Dense matrix over an exact field, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr f, size_t rows, size_t cols)
        : spec_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(spec_)) {}

    static Matrix identity(const FieldPtr& f, size_t n) {
        Matrix m(f, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }
    static Matrix from_rows(const FieldPtr& f, const std::vector<std::vector<Scalar>>& rows) {
        size_t r = rows.size(), c = r ? rows[0].size() : 0;
        Matrix m(f, r, c);
        for (size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw usage_error("ragged rows");
            for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }
    // Convenience: integer entries mapped into f.
    static Matrix from_ints(const FieldPtr& f, const std::vector<std::vector<long>>& rows) {
        size_t r = rows.size(), c = r ? rows[0].size() : 0;
        Matrix m(f, r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) m.at(i, j) = Scalar::from_long(f, rows[i][j]);
        return m;
    }

    const FieldPtr& spec() const { return spec_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Scalar& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    std::vector<Scalar> row(size_t i) const {
        return {e_.begin() + long(i * cols_), e_.begin() + long((i + 1) * cols_)};
    }
    std::vector<Scalar> col(size_t j) const {
        std::vector<Scalar> c;
        c.reserve(rows_);
        for (size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
        return c;
    }
    std::vector<Scalar> flatten() const { return e_; }
    static Matrix from_flat(const FieldPtr& f, size_t n, const std::vector<Scalar>& v) {
        Matrix m(f, n, n);
        m.e_ = v;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw usage_error("matrix shape mismatch");
        Matrix r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw usage_error("matrix shape mismatch");
        Matrix r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] - b.e_[i];
        return r;
    }
    friend Matrix operator*(const Scalar& s, const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.e_) x = s * x;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw usage_error("matrix shape mismatch");
        Matrix r(a.spec_, a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
            }
        return r;
    }
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        if (v.size() != cols_) throw usage_error("matrix/vector shape mismatch");
        std::vector<Scalar> r(rows_, Scalar::zero(spec_));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }
    Scalar trace() const {
        Scalar t = Scalar::zero(spec_);
        for (size_t i = 0; i < rows_ && i < cols_; ++i) t = t + at(i, i);
        return t;
    }

private:
    FieldPtr spec_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix mat;
    size_t rank = 0;
    std::vector<size_t> pivots;
};

// Canonical reduced row echelon form.
inline RrefResult rref(const Matrix& m) {
    RrefResult out{m, 0, {}};
    Matrix& a = out.mat;
    size_t r = 0;
    for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        size_t piv = r;
        while (piv < a.rows() && a.at(piv, c).is_zero()) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r)
            for (size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
        Scalar inv = a.at(r, c).inv();
        for (size_t j = c; j < a.cols(); ++j) a.at(r, j) = inv * a.at(r, j);
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Scalar f = a.at(i, c);
            for (size_t j = c; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

// A subspace of F^n held as a canonical RREF basis, supporting incremental
// span growth, membership, and quotient coordinates.
class Subspace {
public:
    Subspace(FieldPtr f, size_t ambient) : spec_(std::move(f)), ambient_(ambient) {}

    static Subspace span(const FieldPtr& f, size_t ambient,
                         const std::vector<std::vector<Scalar>>& vectors) {
        Subspace s(f, ambient);
        for (const auto& v : vectors) s.add(v);
        return s;
    }

    const FieldPtr& spec() const { return spec_; }
    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return rows_.size(); }
    const std::vector<std::vector<Scalar>>& basis() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Reduce v against the current basis; remainder has zeros in all pivot
    // coordinates.
    std::vector<Scalar> reduce(std::vector<Scalar> v) const {
        if (v.size() != ambient_) throw usage_error("subspace ambient dimension mismatch");
        for (size_t k = 0; k < rows_.size(); ++k) {
            const Scalar& c = v[pivots_[k]];
            if (c.is_zero()) continue;
            Scalar f = c; // pivot entries are 1
            const auto& row = rows_[k];
            for (size_t j = pivots_[k]; j < ambient_; ++j)
                if (!row[j].is_zero()) v[j] = v[j] - f * row[j];
        }
        return v;
    }

    bool contains(const std::vector<Scalar>& v) const {
        auto r = reduce(v);
        for (const auto& x : r)
            if (!x.is_zero()) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        for (const auto& row : other.rows_)
            if (!contains(row)) return false;
        return true;
    }

    // Insert v into the span; returns true if the dimension grew.
    bool add(std::vector<Scalar> v) {
        v = reduce(std::move(v));
        size_t lead = ambient_;
        for (size_t j = 0; j < ambient_; ++j)
            if (!v[j].is_zero()) { lead = j; break; }
        if (lead == ambient_) return false;
        Scalar inv = v[lead].inv();
        for (size_t j = lead; j < ambient_; ++j) v[j] = inv * v[j];
        // Back-substitute into existing rows to keep RREF canonical.
        for (size_t k = 0; k < rows_.size(); ++k) {
            Scalar c = rows_[k][lead];
            if (c.is_zero()) continue;
            for (size_t j = lead; j < ambient_; ++j)
                rows_[k][j] = rows_[k][j] - c * v[j];
        }
        size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + long(pos), std::move(v));
        pivots_.insert(pivots_.begin() + long(pos), lead);
        return true;
    }

    void add_all(const std::vector<std::vector<Scalar>>& vectors) {
        for (const auto& v : vectors) add(v);
    }

    // Indices of the non-pivot coordinates: a canonical basis of the
    // quotient F^n / S represented by coordinate vectors.
    std::vector<size_t> complement_coords() const {
        std::vector<size_t> out;
        size_t k = 0;
        for (size_t j = 0; j < ambient_; ++j) {
            if (k < pivots_.size() && pivots_[k] == j) {
                ++k;
            } else {
                out.push_back(j);
            }
        }
        return out;
    }

    // Coordinates of v + S in the complement basis; linear, kernel exactly S.
    std::vector<Scalar> quotient_coords(const std::vector<Scalar>& v) const {
        auto r = reduce(v);
        std::vector<Scalar> out;
        for (size_t j : complement_coords()) out.push_back(r[j]);
        return out;
    }

private:
    FieldPtr spec_;
    size_t ambient_ = 0;
    std::vector<std::vector<Scalar>> rows_;
    std::vector<size_t> pivots_; // strictly increasing
};

inline Subspace span_union(const Subspace& s, const std::vector<std::vector<Scalar>>& vectors) {
    Subspace out = s;
    out.add_all(vectors);
    return out;
}

// Exact solution of A x = b, or nullopt when b is outside the column span.
inline std::optional<std::vector<Scalar>> solve(const Matrix& a, const std::vector<Scalar>& b) {
    if (b.size() != a.rows()) throw usage_error("solve: shape mismatch");
    Matrix aug(a.spec(), a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult r = rref(aug);
    std::vector<Scalar> x(a.cols(), Scalar::zero(a.spec()));
    for (size_t k = 0; k < r.pivots.size(); ++k) {
        if (r.pivots[k] == a.cols()) return std::nullopt; // pivot in augmented column
        x[r.pivots[k]] = r.mat.at(k, a.cols());
    }
    return x;
}

// Basis of the kernel of A, canonical (one vector per free column).
inline std::vector<std::vector<Scalar>> nullspace(const Matrix& a) {
    RrefResult r = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t p : r.pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t j = 0; j < a.cols(); ++j) {
        if (is_pivot[j]) continue;
        std::vector<Scalar> v(a.cols(), Scalar::zero(a.spec()));
        v[j] = Scalar::one(a.spec());
        for (size_t k = 0; k < r.pivots.size(); ++k)
            v[r.pivots[k]] = -r.mat.at(k, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Basis (as matrices) of {X : X A_i = A_i X for every generator}.  An empty
// generator list yields the full matrix algebra.
inline std::vector<Matrix> commutant(const std::vector<Matrix>& generators, const FieldPtr& f,
                                     size_t n) {
    for (const auto& g : generators)
        if (g.rows() != n || g.cols() != n) throw usage_error("commutant: non-square generator");
    size_t nn = n * n;
    Matrix sys(f, generators.size() * nn, nn);
    // Row (g, i, j): sum_k X_ik A_kj - A_ik X_kj = 0.
    for (size_t g = 0; g < generators.size(); ++g) {
        const Matrix& a = generators[g];
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                size_t row = (g * n + i) * n + j;
                for (size_t k = 0; k < n; ++k) {
                    sys.at(row, i * n + k) = sys.at(row, i * n + k) + a.at(k, j);
                    sys.at(row, k * n + j) = sys.at(row, k * n + j) - a.at(i, k);
                }
            }
    }
    std::vector<Matrix> out;
    for (auto& v : nullspace(sys)) out.push_back(Matrix::from_flat(f, n, v));
    return out;
}

// Least-degree monic p with p(M) = 0, found by growing the Krylov span of
// the powers I, M, M^2, ... until the first linear dependence.
inline Poly minimal_polynomial(const Matrix& m) {
    if (m.rows() != m.cols()) throw usage_error("minimal_polynomial: non-square matrix");
    const FieldPtr& f = m.spec();
    size_t n = m.rows(), nn = n * n;
    std::vector<std::vector<Scalar>> powers; // flattened M^k
    Matrix cur = Matrix::identity(f, n);
    Subspace span(f, nn);
    while (true) {
        std::vector<Scalar> flat = cur.flatten();
        if (span.contains(flat)) {
            // cur = sum c_k M^k over previous powers: solve for coefficients.
            Matrix sys(f, nn, powers.size());
            for (size_t k = 0; k < powers.size(); ++k)
                for (size_t i = 0; i < nn; ++i) sys.at(i, k) = powers[k][i];
            auto sol = solve(sys, flat);
            std::vector<Scalar> coeffs;
            for (const auto& c : *sol) coeffs.push_back(-c);
            coeffs.push_back(Scalar::one(f));
            return Poly(f, std::move(coeffs));
        }
        span.add(flat);
        powers.push_back(std::move(flat));
        cur = cur * m;
    }
}

// p(M) for monic/arbitrary p.
inline Matrix eval_poly(const Poly& p, const Matrix& m) {
    Matrix acc(m.spec(), m.rows(), m.cols());
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * m;
        Scalar c = p.coeff(i);
        for (size_t d = 0; d < m.rows(); ++d) acc.at(d, d) = acc.at(d, d) + c;
    }
    return acc;
}

} // namespace voak
