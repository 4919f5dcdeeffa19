#pragma once

#include <string>
#include <vector>

#include "voak/assoc.hpp"
#include "voak/zhu.hpp"

namespace voak {

inline void require_extension(const FieldPtr& base, const FieldPtr& K, const char* who) {
    if (!K->equals(*base) && !K->extends(*base))
        throw usage_error(std::string(who) + ": " + K->name() + " does not extend " +
                          base->name());
}

// Separability of a simple extension: gcd(m, m') = 1.  Automatic over finite
// fields and Q, but checked so an inseparable request is refused explicitly.
inline bool is_separable_extension(const FieldPtr& K) {
    if (K->kind != FieldKind::extension) return true;
    Poly m(K->base, K->minpoly);
    Poly g = gcd(m, m.derivative());
    return g.degree() == 0;
}

inline SCAlgebra extend_algebra(const SCAlgebra& A, const FieldPtr& K) {
    require_extension(A.spec(), K, "extend_algebra");
    size_t d = A.dim();
    std::vector<Scalar> sc;
    sc.reserve(d * d * d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k) sc.push_back(embed(A.c(i, j, k), K));
    std::vector<Scalar> id;
    for (const Scalar& x : A.identity()) id.push_back(embed(x, K));
    return SCAlgebra(K, d, std::move(sc), std::move(id));
}

inline Matrix extend_matrix(const Matrix& m, const FieldPtr& K) {
    Matrix out(K, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = embed(m.at(i, j), K);
    return out;
}

inline MatrixModule extend_module(const MatrixModule& M, const FieldPtr& K) {
    require_extension(M.spec, K, "extend_module");
    std::vector<Matrix> action;
    for (const Matrix& g : M.action) action.push_back(extend_matrix(g, K));
    return MatrixModule::from_generators(K, std::move(action));
}

inline VOAConfig extend_voa(const VOAConfig& cfg, const FieldPtr& K) {
    require_extension(cfg.field, K, "extend_voa");
    VOAConfig out = cfg;
    out.field = K;
    switch (cfg.family) {
        case Family::heisenberg: break;
        case Family::virasoro: out.central_charge = embed(cfg.central_charge, K); break;
        case Family::affine_sl2: out.level = embed(cfg.level, K); break;
    }
    return out;
}

inline ModuleConfig extend_module_config(const ModuleConfig& m, const FieldPtr& K) {
    ModuleConfig out = m;
    switch (m.kind) {
        case ModuleKind::heisenberg_fock:
            for (auto& l : out.fock_lambda) l = embed(l, K);
            break;
        case ModuleKind::virasoro_verma: out.verma_h = embed(m.verma_h, K); break;
        case ModuleKind::sl2_weyl: break;
    }
    return out;
}

// A(V)-side action on the top level M(0): o(u) matrices for the truncated
// Zhu quotient basis words.
inline MatrixModule top_level_action(Space& module_space, const std::vector<Word>& zhu_basis) {
    std::vector<Matrix> mats;
    for (const Word& bw : zhu_basis) {
        GradedVector u;
        u.add_term(bw, Scalar::one(module_space.field()));
        mats.push_back(module_space.o_matrix(u, 0));
    }
    return MatrixModule::from_generators(module_space.field(), std::move(mats));
}

// Both sides of the "M irreducible over V^K iff M(0)^K simple over A(V^K)"
// equivalence, at truncation.  Side (b) is a truncated proxy: division
// commutant of the grade-preserving mode operators on M_{<= depth}, plus
// generation of every graded piece from M(0) by modes.
struct ExtensionIrreducibilityReport {
    bool supported = true;
    bool side_a_top_simple = false;   // M(0)^K simple over the extended Zhu image
    bool side_b_division = false;     // commutant of mode operators is division
    bool side_b_generated = false;    // each M(t) = span of modes applied to M(0)
    bool side_b_irreducible_proxy() const { return side_b_division && side_b_generated; }
    bool agree() const { return side_a_top_simple == side_b_irreducible_proxy(); }
};

inline ExtensionIrreducibilityReport lemma36_check(const VOAConfig& cfg, const ModuleConfig& mod,
                                                   const FieldPtr& K, int depth,
                                                   const std::vector<int>& schedule,
                                                   uint64_t seed = 0x5EED) {
    require_extension(cfg.field, K, "lemma36_check");
    if (!is_separable_extension(K))
        throw unsupported_error("lemma36_check: inseparable extension");
    ExtensionIrreducibilityReport rep;

    // extended VOA and module
    VOAConfig kcfg = extend_voa(cfg, K);
    Space VK(kcfg);
    Space MK(kcfg, extend_module_config(mod, K));

    // side (a): Zhu quotient basis over K, o(u)-action on M(0)^K
    ZhuAlgebra ZK(VK, 0, schedule);
    int max_w = std::min(depth, ZK.stabilized_through());
    std::vector<Word> zbasis;
    for (int w = 0; w <= max_w; ++w)
        for (const Word& bw : ZK.quotient().quotient_words(w)) zbasis.push_back(bw);
    MatrixModule top = top_level_action(MK, zbasis);
    rep.side_a_top_simple = is_simple_module(top, seed);

    // side (b): grade-preserving endomorphisms of M_{<= depth} commuting
    // with every mode operator u_k whose source and target grades both fit
    // the window (module maps preserve grades, so the unknown is block
    // diagonal; the grade-shifting modes supply the constraints)
    std::vector<int> dims, offs; // per grade: dimension, unknown offset
    int nunk = 0;
    for (int t = 0; t <= depth; ++t) {
        dims.push_back(MK.dim(t));
        offs.push_back(nunk);
        nunk += dims.back() * dims.back();
    }
    std::vector<std::vector<Scalar>> sysrows;
    auto mode_block = [&](const GradedVector& u, int k, int t, int tp) {
        Matrix A(K, size_t(dims[size_t(tp)]), size_t(dims[size_t(t)]));
        auto bt = MK.basis(t);
        for (size_t j = 0; j < bt.size(); ++j) {
            GradedVector v;
            v.add_term(bt[j], Scalar::one(K));
            auto col = MK.coords(MK.mode(u, k, v), tp);
            for (size_t i = 0; i < col.size(); ++i) A.at(i, j) = col[i];
        }
        return A;
    };
    for (int wu = 1; wu <= depth; ++wu)
        for (const Word& uw : VK.basis(wu)) {
            GradedVector u;
            u.add_term(uw, Scalar::one(K));
            for (int t = 0; t <= depth; ++t)
                for (int tp = 0; tp <= depth; ++tp) {
                    int k = wu - 1 + t - tp; // u_k : M(t) -> M(tp)
                    Matrix A = mode_block(u, k, t, tp);
                    if (A.is_zero()) continue;
                    // X_{tp} A - A X_t = 0
                    int dt = dims[size_t(t)], dp = dims[size_t(tp)];
                    for (int i = 0; i < dp; ++i)
                        for (int j = 0; j < dt; ++j) {
                            std::vector<Scalar> row(size_t(nunk), Scalar::zero(K));
                            for (int m = 0; m < dp; ++m)
                                row[size_t(offs[size_t(tp)] + i * dp + m)] =
                                    row[size_t(offs[size_t(tp)] + i * dp + m)] +
                                    A.at(size_t(m), size_t(j));
                            for (int m = 0; m < dt; ++m)
                                row[size_t(offs[size_t(t)] + m * dt + j)] =
                                    row[size_t(offs[size_t(t)] + m * dt + j)] -
                                    A.at(size_t(i), size_t(m));
                            sysrows.push_back(std::move(row));
                        }
                }
        }
    if (sysrows.empty()) sysrows.emplace_back(size_t(nunk), Scalar::zero(K));
    Matrix sys = Matrix::from_rows(K, sysrows);
    int total = 0;
    for (int t = 0; t <= depth; ++t) total += dims[size_t(t)];
    std::vector<Matrix> comm;
    for (const auto& sol : nullspace(sys)) {
        Matrix X(K, size_t(total), size_t(total));
        int base = 0;
        for (int t = 0; t <= depth; ++t) {
            int d = dims[size_t(t)];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    X.at(size_t(base + i), size_t(base + j)) =
                        sol[size_t(offs[size_t(t)] + i * d + j)];
            base += d;
        }
        comm.push_back(std::move(X));
    }
    rep.side_b_division = true;
    {
        // division probe over the block-diagonal commutant
        mpz_class q = K->order();
        std::mt19937_64 rng(seed);
        auto invertible = [&](const Matrix& X) {
            if (X.is_zero()) return true;
            return !minimal_polynomial(X).coeff(0).is_zero();
        };
        for (const Matrix& X : comm)
            if (!invertible(X)) rep.side_b_division = false;
        for (int t = 0; rep.side_b_division && t < 50; ++t) {
            Matrix X(K, size_t(total), size_t(total));
            for (const Matrix& C : comm) {
                Scalar coef = q != 0 ? element_by_index(K, long(rng() % q.get_ui()))
                                     : Scalar::from_long(K, long(rng() % 19) - 9);
                X = X + coef * C;
            }
            if (!invertible(X)) rep.side_b_division = false;
        }
    }

    rep.side_b_generated = true;
    for (int t = 1; t <= depth; ++t) {
        Subspace reach(K, size_t(MK.dim(t)));
        for (int wu = 1; wu <= VK.config().truncation && reach.dim() < size_t(MK.dim(t)); ++wu) {
            int k = wu - t - 1; // u_k : M(0) -> M(t)
            for (const Word& uw : VK.basis(wu)) {
                GradedVector u;
                u.add_term(uw, Scalar::one(K));
                for (const Word& m0 : MK.basis(0)) {
                    GradedVector v;
                    v.add_term(m0, Scalar::one(K));
                    reach.add(MK.coords(MK.mode(u, k, v), t));
                }
            }
        }
        if (reach.dim() != size_t(MK.dim(t))) rep.side_b_generated = false;
    }
    return rep;
}

// Proposition-level functoriality: the truncated A_n(V^K) structure constants
// equal the embedded A_n(V) ones, entry by entry on the common basis.
inline bool filtered_data_equal_embedded(const FilteredAlgebraData& base,
                                         const FilteredAlgebraData& ext, const FieldPtr& K) {
    if (base.basis.size() != ext.basis.size()) return false;
    for (size_t i = 0; i < base.basis.size(); ++i)
        if (!(base.basis[i] == ext.basis[i])) return false;
    if (base.gr_dims != ext.gr_dims || base.identity_index != ext.identity_index) return false;
    for (size_t i = 0; i < base.basis.size(); ++i)
        for (size_t j = 0; j < base.basis.size(); ++j) {
            const auto& a = base.sc[i][j];
            const auto& b = ext.sc[i][j];
            if (a.has_value() != b.has_value()) return false;
            if (!a) continue;
            for (size_t k = 0; k < a->size(); ++k)
                if (embed((*a)[k], K) != (*b)[k]) return false;
        }
    return true;
}

} // namespace voak
