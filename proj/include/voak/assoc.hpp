#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "voak/matrix.hpp"
#include "voak/polynomial.hpp"

namespace voak {

// Finite-dimensional associative algebra given by structure constants
// e_i e_j = sum_k c[i][j][k] e_k.  Associativity and the two-sided identity
// are verified at construction.
class SCAlgebra {
public:
    SCAlgebra(FieldPtr f, size_t dim, std::vector<Scalar> sc, std::vector<Scalar> identity)
        : spec_(std::move(f)), dim_(dim), c_(std::move(sc)), id_(std::move(identity)) {
        if (c_.size() != dim_ * dim_ * dim_ || id_.size() != dim_)
            throw usage_error("SCAlgebra: wrong tensor/identity size");
        verify();
    }

    const FieldPtr& spec() const { return spec_; }
    size_t dim() const { return dim_; }
    const Scalar& c(size_t i, size_t j, size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
    const std::vector<Scalar>& identity() const { return id_; }

    std::vector<Scalar> mult(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
        std::vector<Scalar> out(dim_, Scalar::zero(spec_));
        for (size_t i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (size_t j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                Scalar xy = x[i] * y[j];
                for (size_t k = 0; k < dim_; ++k)
                    if (!c(i, j, k).is_zero()) out[k] = out[k] + xy * c(i, j, k);
            }
        }
        return out;
    }

    // Matrix of left multiplication by x in the algebra basis.
    Matrix left_mult(const std::vector<Scalar>& x) const {
        Matrix m(spec_, dim_, dim_);
        for (size_t j = 0; j < dim_; ++j) {
            std::vector<Scalar> ej(dim_, Scalar::zero(spec_));
            ej[j] = Scalar::one(spec_);
            auto col = mult(x, ej);
            for (size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    std::vector<Scalar> basis_element(size_t i) const {
        std::vector<Scalar> e(dim_, Scalar::zero(spec_));
        e[i] = Scalar::one(spec_);
        return e;
    }

    // The regular representation: action matrices for every basis element.
    std::vector<Matrix> regular_action() const {
        std::vector<Matrix> out;
        for (size_t i = 0; i < dim_; ++i) out.push_back(left_mult(basis_element(i)));
        return out;
    }

    // The center as a subspace of coordinate vectors.
    Subspace center() const {
        // x central <=> (L_{e_i} - R_{e_i}) x = 0 for all i
        Matrix sys(spec_, dim_ * dim_, dim_);
        for (size_t i = 0; i < dim_; ++i)
            for (size_t k = 0; k < dim_; ++k)
                for (size_t j = 0; j < dim_; ++j)
                    sys.at(i * dim_ + k, j) = c(i, j, k) - c(j, i, k);
        auto ker = nullspace(sys);
        Subspace z(spec_, dim_);
        for (auto& v : ker) z.add(v);
        return z;
    }

private:
    void verify() {
        for (size_t i = 0; i < dim_; ++i) {
            auto ei = basis_element(i);
            if (mult(id_, ei) != ei || mult(ei, id_) != ei)
                throw usage_error("SCAlgebra: identity is not two-sided");
            for (size_t j = 0; j < dim_; ++j)
                for (size_t k = 0; k < dim_; ++k) {
                    auto ej = basis_element(j);
                    auto ek = basis_element(k);
                    if (mult(mult(ei, ej), ek) != mult(ei, mult(ej, ek)))
                        throw usage_error("SCAlgebra: structure constants not associative");
                }
        }
    }

    FieldPtr spec_;
    size_t dim_;
    std::vector<Scalar> c_;
    std::vector<Scalar> id_;
};

// A module given by the matrices through which a distinguished spanning set
// of the algebra acts.  When built from an SCAlgebra basis the homomorphism
// property is verified.
struct MatrixModule {
    FieldPtr spec;
    size_t dim = 0;
    std::vector<Matrix> action;

    static MatrixModule from_algebra_basis(const SCAlgebra& A, std::vector<Matrix> action) {
        if (action.size() != A.dim()) throw usage_error("module: need one matrix per basis element");
        MatrixModule m;
        m.spec = A.spec();
        m.dim = action.empty() ? 0 : action[0].rows();
        m.action = std::move(action);
        for (size_t i = 0; i < A.dim(); ++i)
            for (size_t j = 0; j < A.dim(); ++j) {
                Matrix lhs = m.action[i] * m.action[j];
                Matrix rhs(m.spec, m.dim, m.dim);
                for (size_t k = 0; k < A.dim(); ++k)
                    if (!A.c(i, j, k).is_zero()) rhs = rhs + A.c(i, j, k) * m.action[k];
                if (!(lhs == rhs)) throw usage_error("module: action is not a homomorphism");
            }
        return m;
    }

    static MatrixModule from_generators(FieldPtr f, std::vector<Matrix> gens) {
        MatrixModule m;
        m.spec = std::move(f);
        m.dim = gens.empty() ? 0 : gens[0].rows();
        m.action = std::move(gens);
        return m;
    }
};

namespace detail {
// guard for the trace-form method (Dickson): char 0 or p > dim
inline void require_trace_form_valid(const FieldPtr& f, size_t dim, const char* who) {
    long p = f->characteristic();
    if (p != 0 && p <= long(dim))
        throw unsupported_error(std::string(who) +
                                ": trace-form radical needs char 0 or p > dim; got p=" +
                                std::to_string(p) + ", dim=" + std::to_string(dim));
}
} // namespace detail

// Jacobson radical as the kernel of the trace form (x,y) -> tr(L_x L_y),
// valid in characteristic 0 or p > dim.  The result is verified to be a
// nilpotent two-sided ideal before it is returned.
inline Subspace radical(const SCAlgebra& A) {
    detail::require_trace_form_valid(A.spec(), A.dim(), "radical");
    size_t d = A.dim();
    std::vector<Matrix> L;
    for (size_t i = 0; i < d; ++i) L.push_back(A.left_mult(A.basis_element(i)));
    Matrix T(A.spec(), d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) T.at(i, j) = (L[i] * L[j]).trace();
    Subspace rad(A.spec(), d);
    for (auto& v : nullspace(T)) rad.add(v);

    // verification: two-sided ideal, nilpotent
    for (const auto& r : rad.basis())
        for (size_t i = 0; i < d; ++i) {
            if (!rad.contains(A.mult(A.basis_element(i), r)) ||
                !rad.contains(A.mult(r, A.basis_element(i))))
                throw usage_error("radical: trace-form kernel is not an ideal");
        }
    std::vector<std::vector<Scalar>> layer(rad.basis().begin(), rad.basis().end());
    for (size_t pow = 0; pow < d && !layer.empty(); ++pow) {
        std::vector<std::vector<Scalar>> next;
        Subspace seen(A.spec(), d);
        for (const auto& x : layer)
            for (const auto& r : rad.basis()) {
                auto y = A.mult(x, r);
                if (seen.add(y)) next.push_back(std::move(y));
            }
        layer = std::move(next);
    }
    if (!layer.empty()) throw usage_error("radical: candidate is not nilpotent");
    return rad;
}

// Enumerate field elements 0..q-1 deterministically (finite fields).
inline Scalar element_by_index(const FieldPtr& f, long idx) {
    if (f->ext_degree() <= 1) return Scalar::from_long(f, idx);
    const FieldPtr& base = f->base;
    long qbase = mpz_class(base->order()).get_si();
    std::vector<Scalar> coeffs;
    long x = idx;
    for (int i = 0; i < f->ext_degree(); ++i) {
        coeffs.push_back(element_by_index(base, x % qbase));
        x /= qbase;
    }
    return Scalar::from_coeffs(f, coeffs);
}

struct SemisimpleReport {
    bool semisimple = false;
    size_t radical_dim = 0;
    // Wedderburn block count, when the center analysis supports it
    std::optional<int> blocks;
};

namespace detail {
// number of irreducible factors of a squarefree monic polynomial over Q,
// degree <= 4 (rational roots, then quadratic/quartic case analysis)
inline std::optional<int> q_factor_count(Poly m) {
    const FieldPtr& F = m.spec();
    int count = 0;
    bool found = true;
    while (found && m.degree() > 0) {
        found = false;
        for (const mpq_class& r : rational_roots(m.coeffs())) {
            Poly lin(F, {Scalar::from_mpq(F, -r), Scalar::one(F)});
            ++count;
            m = m.divmod(lin).first;
            found = true;
            break;
        }
    }
    if (m.degree() <= 0) return count;
    if (m.degree() == 2 || m.degree() == 3) return count + 1; // no roots left
    if (m.degree() == 4) return count + (m.is_irreducible() ? 1 : 2);
    return std::nullopt;
}
} // namespace detail

inline SemisimpleReport is_semisimple(const SCAlgebra& A) {
    SemisimpleReport rep;
    Subspace rad = radical(A);
    rep.radical_dim = rad.dim();
    rep.semisimple = rad.dim() == 0;
    if (!rep.semisimple) return rep;

    Subspace Z = A.center();
    const FieldPtr& F = A.spec();
    mpz_class q = F->order();
    if (q != 0) {
        // finite field: count idempotents in the (etale) center by
        // enumeration; blocks = log2(#idempotents)
        mpz_class total = 1;
        for (size_t i = 0; i < Z.dim(); ++i) total *= q;
        if (total > 100000) return rep; // enumeration too big
        long qi = q.get_si();
        size_t zd = Z.dim();
        std::vector<size_t> digits(zd, 0);
        long idem = 0;
        while (true) {
            std::vector<Scalar> x(A.dim(), Scalar::zero(F));
            for (size_t i = 0; i < zd; ++i) {
                Scalar ci = element_by_index(F, long(digits[i]));
                for (size_t j = 0; j < A.dim(); ++j)
                    x[j] = x[j] + ci * Z.basis()[i][j];
            }
            if (A.mult(x, x) == x) ++idem;
            size_t pos = 0;
            while (pos < zd && ++digits[pos] == size_t(qi)) digits[pos++] = 0;
            if (pos == zd) break;
            if (zd == 0) break;
        }
        int blocks = 0;
        while ((1L << blocks) < idem) ++blocks;
        if ((1L << blocks) == idem) rep.blocks = blocks;
        return rep;
    }
    // char 0: if some center element generates the center, count the
    // irreducible factors of its minimal polynomial (degree <= 4 supported)
    std::mt19937_64 rng(0x5EED);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<Scalar> z(A.dim(), Scalar::zero(F));
        for (size_t i = 0; i < Z.dim(); ++i) {
            long coef = attempt == 0 ? (i == 0 ? 1 : 0) : long(rng() % 9) - 4;
            for (size_t j = 0; j < A.dim(); ++j)
                z[j] = z[j] + Scalar::from_long(F, coef) * Z.basis()[i][j];
        }
        Poly m = minimal_polynomial(A.left_mult(z));
        if (size_t(m.degree()) != Z.dim()) continue;
        auto cnt = detail::q_factor_count(m);
        if (cnt) rep.blocks = *cnt;
        return rep;
    }
    return rep;
}

struct EndoReport {
    std::vector<Matrix> commutant;   // basis of End(M) over the action
    std::vector<Poly> min_polys;     // one per commutant basis element
    bool division = false;           // every probed nonzero element invertible
    std::string division_mode;       // "exhaustive" or "probabilistic"
    bool absolutely_simple_criterion = false; // commutant = scalars
};

// Commutant of the action matrices with algebraicity witnesses and the
// division-ring probe: an element is invertible iff its minimal polynomial
// has a nonzero constant term.
inline EndoReport endomorphisms(const MatrixModule& M, uint64_t seed = 0x5EED) {
    EndoReport rep;
    const FieldPtr& F = M.spec;
    rep.commutant = commutant(M.action, F, M.dim);
    for (const Matrix& X : rep.commutant) rep.min_polys.push_back(minimal_polynomial(X));
    rep.absolutely_simple_criterion = rep.commutant.size() == 1;

    auto invertible = [&](const Matrix& X) {
        if (X.is_zero()) return true; // zero is not a counterexample candidate
        Poly m = minimal_polynomial(X);
        return !m.coeff(0).is_zero();
    };

    size_t cd = rep.commutant.size();
    mpz_class q = F->order();
    bool exhaustive = false;
    if (q != 0) {
        mpz_class total = 1;
        for (size_t i = 0; i < cd; ++i) total *= q;
        if (total <= 4000) exhaustive = true;
    }
    rep.division = true;
    if (exhaustive) {
        rep.division_mode = "exhaustive";
        long qi = q.get_si();
        std::vector<long> digits(cd, 0);
        while (true) {
            Matrix X(F, M.dim, M.dim);
            for (size_t i = 0; i < cd; ++i)
                X = X + element_by_index(F, digits[i]) * rep.commutant[i];
            if (!invertible(X)) {
                rep.division = false;
                break;
            }
            size_t pos = 0;
            while (pos < cd && ++digits[pos] == qi) digits[pos++] = 0;
            if (pos == cd) break;
        }
    } else {
        rep.division_mode = "probabilistic";
        for (const Matrix& X : rep.commutant)
            if (!invertible(X)) {
                rep.division = false;
                break;
            }
        std::mt19937_64 rng(seed);
        for (int t = 0; rep.division && t < 50; ++t) {
            Matrix X(F, M.dim, M.dim);
            for (size_t i = 0; i < cd; ++i) {
                Scalar coef = q != 0
                                  ? element_by_index(F, long(rng() % q.get_ui()))
                                  : Scalar::from_long(F, long(rng() % 19) - 9);
                X = X + coef * rep.commutant[i];
            }
            if (!invertible(X)) rep.division = false;
        }
    }
    return rep;
}

// Span-closure of {identity, generators} under multiplication: the image of
// the algebra inside End(M), returned as a basis of matrices.
inline std::vector<Matrix> image_algebra_basis(const MatrixModule& M) {
    const FieldPtr& F = M.spec;
    size_t d = M.dim;
    Subspace span(F, d * d);
    std::vector<Matrix> basis;
    auto push = [&](const Matrix& X) {
        if (span.add(X.flatten())) basis.push_back(X);
    };
    push(Matrix::identity(F, d));
    for (const Matrix& g : M.action) push(g);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) push(basis[i] * basis[j]);
    return basis;
}

// Structure constants of the matrix span (a faithful associative algebra).
inline SCAlgebra algebra_of_matrices(const FieldPtr& F, const std::vector<Matrix>& basis) {
    size_t n = basis.size(), d = basis[0].rows();
    Matrix B(F, d * d, n);
    for (size_t j = 0; j < n; ++j) {
        auto fl = basis[j].flatten();
        for (size_t i = 0; i < d * d; ++i) B.at(i, j) = fl[i];
    }
    std::vector<Scalar> sc(n * n * n, Scalar::zero(F));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto prod = (basis[i] * basis[j]).flatten();
            auto sol = solve(B, prod);
            if (!sol) throw usage_error("matrix span is not multiplicatively closed");
            for (size_t k = 0; k < n; ++k) sc[(i * n + j) * n + k] = (*sol)[k];
        }
    auto idsol = solve(B, Matrix::identity(F, d).flatten());
    if (!idsol) throw usage_error("matrix span does not contain the identity");
    return SCAlgebra(F, n, std::move(sc), *idsol);
}

// Simplicity: the image algebra is semisimple (radical zero — it acts
// faithfully by construction) and the commutant passes the division probe;
// semisimple + isotypic-with-division-commutant forces a single simple
// summand.
inline bool is_simple_module(const MatrixModule& M, uint64_t seed = 0x5EED) {
    if (M.dim == 0) return false;
    auto basis = image_algebra_basis(M);
    SCAlgebra img = algebra_of_matrices(M.spec, basis);
    Subspace rad = radical(img);
    if (rad.dim() != 0) return false;
    EndoReport endo = endomorphisms(M, seed);
    return endo.division;
}

// Theorem-level criterion: End(M) = F scalars.
inline bool is_absolutely_simple(const MatrixModule& M, uint64_t seed = 0x5EED) {
    if (!is_simple_module(M, seed)) return false;
    return commutant(M.action, M.spec, M.dim).size() == 1;
}

} // namespace voak
