#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "voak/voa.hpp"

namespace voak {

namespace detail {
inline mpz_class binom_nn(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return r;
}
} // namespace detail

// Res_z Y(u,z)v (1+z)^{wt u + n + s} / z^{2n+2+t}
//   = sum_{i=0}^{W} C(W,i) u_{i-2n-2-t} v,  W = wt u + n + s.
// Homogeneous of weight wt u + wt v + 2n + 1 + t; rejected if that
// exceeds the cutoff (never silently clipped).
inline GradedVector circ(Space& V, const GradedVector& u, const GradedVector& v,
                         int n, int s, int t) {
    if (n < 0 || s < 0 || s > t) throw usage_error("circ: need n >= 0, 0 <= s <= t");
    int wu = 0, wv = 0;
    if (!u.homogeneous(&wu) || !v.homogeneous(&wv))
        throw usage_error("circ: u, v must be homogeneous");
    int top = wu + wv + 2 * n + 1 + t;
    if (top > V.config().truncation)
        throw truncation_error("circ: top weight " + std::to_string(top) + " exceeds cutoff");
    const FieldPtr& F = V.field();
    int W = wu + n + s;
    GradedVector out;
    for (int i = 0; i <= W; ++i) {
        Scalar c = Scalar::from_mpz(F, detail::binom_nn(W, i));
        out.add_scaled(V.mode(u, i - 2 * n - 2 - t, v), c);
    }
    return out;
}

// u *_n v = sum_{m=0}^{n} (-1)^m C(m+n,n) sum_{i=0}^{wt u + n} C(wt u + n, i)
//           u_{i-n-m-1} v.  Weight support <= wt u + wt v + 2n.
inline GradedVector star(Space& V, const GradedVector& u, const GradedVector& v, int n) {
    if (n < 0) throw usage_error("star: need n >= 0");
    const FieldPtr& F = V.field();
    GradedVector out;
    for (const auto& [uw, uc] : u.terms) {
        int wu = uw.weight();
        GradedVector uh;
        uh.add_term(uw, Scalar::one(F));
        for (int m = 0; m <= n; ++m) {
            mpz_class outer = detail::binom_nn(m + n, n);
            if (m % 2 == 1) outer = -outer;
            for (int i = 0; i <= wu + n; ++i) {
                int wtop = wu + v.max_weight() + n + m - i;
                if (wtop > V.config().truncation && wtop >= 0) {
                    // only an error if the term can actually be nonzero
                    GradedVector term = V.mode(uh, i - n - m - 1, v);
                    if (!term.is_zero())
                        throw truncation_error("star: term of weight " + std::to_string(wtop) +
                                               " exceeds cutoff");
                    continue;
                }
                Scalar c = Scalar::from_mpz(F, outer * detail::binom_nn(wu + n, i)) * uc;
                out.add_scaled(V.mode(uh, i - n - m - 1, v), c);
            }
        }
    }
    return out;
}

// The truncated span O_n(V)^(N) inside V_{<= N}.  Every spanning element is
// charge-homogeneous with a well-defined top weight (circle elements span a
// descending range of weights; (L(-1)+L(0))u spans two).  Row reduction with
// weight-descending column blocks therefore proceeds one top-weight block at
// a time: a row keeps a dense "lead" at its top weight plus its lower-weight
// residue, and a row whose lead is eliminated re-enters at the residue's top
// weight.  The affine family's h_0-charge refines each block further.
class ZhuQuotient {
public:
    ZhuQuotient(Space& V, int n, int N) : V_(V), n_(n), N_(N) {
        if (V.is_module()) throw usage_error("ZhuQuotient: needs the vacuum space");
        if (N > V.config().truncation) throw usage_error("ZhuQuotient: N exceeds space cutoff");
        build();
    }

    int n() const { return n_; }
    int N() const { return N_; }
    Space& space() const { return V_; }

    int dim_V(int w) const { return int(basis_[size_t(w)].size()); }
    int pivots_at(int w) const {
        int c = 0;
        for (const auto& [sec, blk] : blocks_[size_t(w)]) (void)sec, c += int(blk.rows.size());
        return c;
    }
    int gr_dim(int w) const { return dim_V(w) - pivots_at(w); }
    int filtration_dim(int d) const {
        int c = 0;
        for (int w = 0; w <= d; ++w) c += gr_dim(w);
        return c;
    }

    // Non-pivot basis words at weight w, in canonical order: representatives
    // of the degree-w slice of gr(A_n).
    std::vector<Word> quotient_words(int w) const {
        std::vector<bool> ispiv(basis_[size_t(w)].size(), false);
        for (const auto& [sec, blk] : blocks_[size_t(w)])
            for (const auto& row : blk.rows)
                ispiv[size_t(blk.cols[size_t(row.pivcol)])] = true;
        std::vector<Word> out;
        for (size_t i = 0; i < basis_[size_t(w)].size(); ++i)
            if (!ispiv[i]) out.push_back(basis_[size_t(w)][i]);
        return out;
    }

    // Canonical representative of v + O_n(V)^(N): all pivot coordinates zero.
    GradedVector project(const GradedVector& v) const {
        std::vector<std::vector<Scalar>> coords(size_t(N_) + 1);
        for (int w = 0; w <= N_; ++w)
            coords[size_t(w)].assign(basis_[size_t(w)].size(), Scalar::zero(V_.field()));
        for (const auto& [word, c] : v.terms) {
            if (word.weight() > N_)
                throw truncation_error("project: vector has weight above the cutoff");
            coords[size_t(word.weight())][index_.at(word)] = c;
        }
        for (int w = N_; w >= 1; --w)
            for (const auto& [sec, blk] : blocks_[size_t(w)]) {
                (void)sec;
                for (const auto& row : blk.rows) {
                    Scalar c = coords[size_t(w)][size_t(blk.cols[size_t(row.pivcol)])];
                    if (c.is_zero()) continue;
                    for (size_t j = 0; j < blk.cols.size(); ++j)
                        if (!row.lead[j].is_zero())
                            coords[size_t(w)][size_t(blk.cols[j])] =
                                coords[size_t(w)][size_t(blk.cols[j])] - c * row.lead[j];
                    for (const auto& [word, tc] : row.tail.terms)
                        coords[size_t(word.weight())][index_.at(word)] =
                            coords[size_t(word.weight())][index_.at(word)] - c * tc;
                }
            }
        GradedVector out;
        for (int w = 0; w <= N_; ++w)
            for (size_t i = 0; i < coords[size_t(w)].size(); ++i)
                out.add_term(basis_[size_t(w)][i], coords[size_t(w)][i]);
        return out;
    }

    bool contains(const GradedVector& v) const { return project(v).is_zero(); }

    // Reduce a single-grade coordinate vector against the weight-w lead
    // block only (the gr-level quotient), ignoring lower-weight residues.
    std::vector<Scalar> reduce_lead(int w, std::vector<Scalar> coords) const {
        for (const auto& [sec, blk] : blocks_[size_t(w)]) {
            (void)sec;
            for (const auto& row : blk.rows) {
                Scalar c = coords[size_t(blk.cols[size_t(row.pivcol)])];
                if (c.is_zero()) continue;
                for (size_t j = 0; j < blk.cols.size(); ++j)
                    if (!row.lead[j].is_zero())
                        coords[size_t(blk.cols[j])] =
                            coords[size_t(blk.cols[j])] - c * row.lead[j];
            }
        }
        return coords;
    }

    // The recorded spanning elements (for subspace-containment checks).
    const std::vector<GradedVector>& generators() const { return gens_kept_; }

private:
    struct Row {
        std::vector<Scalar> lead; // dense over the block's columns
        GradedVector tail;        // residue, all weights < w
        int pivcol = -1;          // local pivot column; lead in RREF blockwise
    };
    struct Block {
        std::vector<int> cols; // global column indices at weight w (one sector)
        std::vector<Row> rows;
    };

    void build() {
        const FieldPtr& F = V_.field();
        basis_.resize(size_t(N_) + 1);
        blocks_.resize(size_t(N_) + 1);
        for (int w = 0; w <= N_; ++w) {
            basis_[size_t(w)] = V_.basis(w);
            for (size_t i = 0; i < basis_[size_t(w)].size(); ++i)
                index_[basis_[size_t(w)][i]] = i;
            for (size_t i = 0; i < basis_[size_t(w)].size(); ++i)
                blocks_[size_t(w)][V_.sector(basis_[size_t(w)][i])].cols.push_back(int(i));
        }

        // spanning elements, grouped by top weight
        std::vector<std::vector<GradedVector>> gens(size_t(N_) + 1);
        auto keep = [&](GradedVector g) {
            if (g.is_zero()) return;
            gens_kept_.push_back(g);
            gens[size_t(g.max_weight())].push_back(std::move(g));
        };
        for (int wu = 1; wu < N_; ++wu)
            for (const Word& uw : basis_[size_t(wu)]) {
                GradedVector u;
                u.add_term(uw, Scalar::one(F));
                keep(V_.lminus1(u) + u.scaled(Scalar::from_long(F, wu)));
            }
        for (int wu = 0; wu <= N_; ++wu)
            for (int wv = 0; wu + wv + 2 * n_ + 1 <= N_; ++wv) {
                int tmax = N_ - wu - wv - 2 * n_ - 1;
                for (const Word& uw : basis_[size_t(wu)]) {
                    GradedVector u;
                    u.add_term(uw, Scalar::one(F));
                    for (const Word& vw : basis_[size_t(wv)]) {
                        GradedVector v;
                        v.add_term(vw, Scalar::one(F));
                        for (int t = 0; t <= tmax; ++t)
                            for (int s = 0; s <= t; ++s)
                                keep(circ(V_, u, v, n_, s, t));
                    }
                }
            }

        for (int w = N_; w >= 1; --w)
            for (GradedVector& g : gens[size_t(w)]) insert_row(std::move(g));
    }

    // Insert a spanning element at its top weight, keeping each block's lead
    // part in reduced row-echelon form; eliminated rows re-enter lower down.
    void insert_row(GradedVector g) {
        if (g.is_zero()) return;
        int w = g.max_weight();
        if (w == 0) throw usage_error("quotient relation hit weight 0 (vacuum class collapsed)");
        int sec = V_.sector(g.terms.begin()->first);
        Block& blk = blocks_[size_t(w)][sec];
        std::vector<Scalar> lv(blk.cols.size(), Scalar::zero(V_.field()));
        GradedVector tail;
        {
            std::map<int, size_t> pos;
            for (size_t j = 0; j < blk.cols.size(); ++j) pos[blk.cols[j]] = j;
            for (const auto& [word, c] : g.terms) {
                if (word.weight() == w)
                    lv[pos.at(int(index_.at(word)))] = c;
                else
                    tail.add_term(word, c);
            }
        }
        for (const Row& row : blk.rows) {
            Scalar c = lv[size_t(row.pivcol)];
            if (c.is_zero()) continue;
            for (size_t j = 0; j < lv.size(); ++j)
                if (!row.lead[j].is_zero()) lv[j] = lv[j] - c * row.lead[j];
            tail.add_scaled(row.tail, -c);
        }
        int piv = -1;
        for (size_t j = 0; j < lv.size(); ++j)
            if (!lv[j].is_zero()) {
                piv = int(j);
                break;
            }
        if (piv < 0) {
            insert_row(std::move(tail)); // pure lower-weight relation
            return;
        }
        Scalar inv = lv[size_t(piv)].inv();
        for (auto& x : lv) x = x * inv;
        tail = tail.scaled(inv);
        for (Row& row : blk.rows) {
            Scalar c = row.lead[size_t(piv)];
            if (c.is_zero()) continue;
            for (size_t j = 0; j < lv.size(); ++j)
                if (!lv[j].is_zero()) row.lead[j] = row.lead[j] - c * lv[j];
            row.tail.add_scaled(tail, -c);
        }
        blk.rows.push_back(Row{std::move(lv), std::move(tail), piv});
    }

    Space& V_;
    int n_, N_;
    std::vector<std::vector<Word>> basis_;
    std::map<Word, size_t> index_;
    std::vector<std::map<int, Block>> blocks_; // weight -> sector -> block
    std::vector<GradedVector> gens_kept_;
};

// The truncated A_n(V) with its level filtration: per-degree dimensions
// stabilized across a cutoff schedule, quotient basis words, and structure
// constants of *_n where the products fit the cutoff.
struct FilteredAlgebraData {
    int n = 0;
    int final_N = 0;
    std::vector<int> schedule;
    // max degree whose filtration dims agreed on the last two cutoffs
    int stabilized_through = -1;
    std::vector<int> gr_dims;         // degree -> dim of gr_w, w <= stabilized_through
    std::vector<int> filtration_dims; // degree -> dim F_w A
    std::vector<Word> basis;          // quotient words of weight <= stabilized_through
    std::vector<int> basis_weight;
    // sc[i][j]: coordinates of [b_i] *_n [b_j] over `basis`, when computable
    std::vector<std::vector<std::optional<std::vector<Scalar>>>> sc;
    int identity_index = -1; // position of the vacuum word in `basis`
};

class ZhuAlgebra {
public:
    // Builds quotients along the cutoff schedule (ascending) and keeps the
    // largest; `space` must have truncation >= schedule back.
    ZhuAlgebra(Space& space, int n, std::vector<int> schedule)
        : V_(space), n_(n), schedule_(std::move(schedule)) {
        if (schedule_.size() < 2) throw usage_error("stabilization needs >= 2 cutoffs");
        std::vector<int> prev_dims;
        for (size_t i = 0; i + 2 < schedule_.size(); ++i) {
            ZhuQuotient q(V_, n_, schedule_[i]);
            dims_history_.push_back(gr_profile(q));
        }
        penult_ = std::make_unique<ZhuQuotient>(V_, n_, schedule_[schedule_.size() - 2]);
        dims_history_.push_back(gr_profile(*penult_));
        final_ = std::make_unique<ZhuQuotient>(V_, n_, schedule_.back());
        dims_history_.push_back(gr_profile(*final_));
        const auto& a = dims_history_[dims_history_.size() - 2];
        const auto& b = dims_history_.back();
        stabilized_ = -1;
        for (int d = 0; d < int(std::min(a.size(), b.size())); ++d) {
            if (a[size_t(d)] != b[size_t(d)]) break;
            stabilized_ = d;
        }
    }

    const ZhuQuotient& quotient() const { return *final_; }
    const ZhuQuotient& penultimate() const { return *penult_; }
    int stabilized_through() const { return stabilized_; }
    int n() const { return n_; }
    Space& space() const { return V_; }

    FilteredAlgebraData data(int max_degree) const {
        FilteredAlgebraData d;
        d.n = n_;
        d.final_N = schedule_.back();
        d.schedule = schedule_;
        d.stabilized_through = stabilized_;
        max_degree = std::min(max_degree, stabilized_);
        for (int w = 0; w <= max_degree; ++w) {
            d.gr_dims.push_back(final_->gr_dim(w));
            d.filtration_dims.push_back(final_->filtration_dim(w));
            for (const Word& word : final_->quotient_words(w)) {
                if (word.factors.empty() && word.top == 0)
                    d.identity_index = int(d.basis.size());
                d.basis.push_back(word);
                d.basis_weight.push_back(w);
            }
        }
        const FieldPtr& F = V_.field();
        std::map<Word, size_t> pos;
        for (size_t i = 0; i < d.basis.size(); ++i) pos[d.basis[i]] = i;
        d.sc.assign(d.basis.size(), std::vector<std::optional<std::vector<Scalar>>>(d.basis.size()));
        for (size_t i = 0; i < d.basis.size(); ++i)
            for (size_t j = 0; j < d.basis.size(); ++j) {
                if (d.basis_weight[i] + d.basis_weight[j] + 2 * n_ > final_->N()) continue;
                GradedVector u, v;
                u.add_term(d.basis[i], Scalar::one(F));
                v.add_term(d.basis[j], Scalar::one(F));
                GradedVector p = final_->project(star(V_, u, v, n_));
                std::vector<Scalar> row(d.basis.size(), Scalar::zero(F));
                bool inside = true;
                for (const auto& [word, c] : p.terms) {
                    auto it = pos.find(word);
                    if (it == pos.end()) {
                        inside = false; // representative leaks past max_degree
                        break;
                    }
                    row[it->second] = c;
                }
                if (inside) d.sc[i][j] = std::move(row);
            }
        return d;
    }

private:
    std::vector<int> gr_profile(const ZhuQuotient& q) const {
        std::vector<int> dims;
        for (int w = 0; w <= q.N(); ++w) dims.push_back(q.gr_dim(w));
        return dims;
    }

    Space& V_;
    int n_;
    std::vector<int> schedule_;
    std::vector<std::vector<int>> dims_history_;
    std::unique_ptr<ZhuQuotient> penult_, final_;
    int stabilized_ = -1;
};

struct CheckReport {
    bool ok = true;
    int cases = 0;
    std::vector<std::string> failures;
    void record(bool pass, const std::string& what) {
        ++cases;
        if (!pass) {
            ok = false;
            if (failures.size() < 10) failures.push_back(what);
        }
    }
};

// [1] *_n b = b *_n [1] = b in the quotient, for quotient words b within budget.
inline CheckReport check_identity(const ZhuQuotient& q, int max_w) {
    Space& V = q.space();
    CheckReport rep;
    GradedVector one = V.vacuum();
    for (int w = 0; w <= std::min(max_w, q.N() - 2 * q.n()); ++w)
        for (const Word& bw : q.quotient_words(w)) {
            GradedVector b;
            b.add_term(bw, Scalar::one(V.field()));
            GradedVector pb = q.project(b);
            rep.record(q.project(star(V, one, b, q.n())) == pb,
                       "1 * b != b for " + word_to_string(bw, V.config()));
            rep.record(q.project(star(V, b, one, q.n())) == pb,
                       "b * 1 != b for " + word_to_string(bw, V.config()));
        }
    return rep;
}

// (a * b) * c == a * (b * c) in the quotient, on quotient-word triples whose
// intermediate products fit the cutoff.
inline CheckReport check_associativity(const ZhuQuotient& q, int max_w, size_t budget = 4000) {
    Space& V = q.space();
    const FieldPtr& F = V.field();
    int n = q.n();
    CheckReport rep;
    std::vector<std::pair<int, Word>> words;
    for (int w = 0; w <= max_w; ++w)
        for (const Word& bw : q.quotient_words(w)) words.emplace_back(w, bw);
    for (const auto& [wa, aw] : words)
        for (const auto& [wb, bw] : words)
            for (const auto& [wc, cw] : words) {
                if (wa + wb + wc + 4 * n > q.N()) continue;
                if (rep.cases >= int(budget)) return rep;
                GradedVector a, b, c;
                a.add_term(aw, Scalar::one(F));
                b.add_term(bw, Scalar::one(F));
                c.add_term(cw, Scalar::one(F));
                GradedVector lhs = q.project(star(V, star(V, a, b, n), c, n));
                GradedVector rhs = q.project(star(V, a, star(V, b, c, n), n));
                rep.record(lhs == rhs, "associativity fails on (" +
                                           word_to_string(aw, V.config()) + ", " +
                                           word_to_string(bw, V.config()) + ", " +
                                           word_to_string(cw, V.config()) + ")");
            }
    return rep;
}

// u*v - v*u == Res_z Y(u,z)v (1+z)^{wt u - 1} == sum_i C(wt u - 1, i) u_i v
// mod O(V)   (n = 0 congruence)
inline CheckReport check_commutator_congruence(const ZhuQuotient& q, int max_w) {
    if (q.n() != 0) throw usage_error("commutator congruence is an O_0 statement");
    Space& V = q.space();
    const FieldPtr& F = V.field();
    CheckReport rep;
    std::vector<std::pair<int, Word>> words;
    for (int w = 0; w <= max_w; ++w)
        for (const Word& bw : q.quotient_words(w)) words.emplace_back(w, bw);
    for (const auto& [wu, uw] : words)
        for (const auto& [wv, vw] : words) {
            if (wu + wv > q.N()) continue;
            GradedVector u, v;
            u.add_term(uw, Scalar::one(F));
            v.add_term(vw, Scalar::one(F));
            GradedVector d = star(V, u, v, 0) - star(V, v, u, 0);
            for (int i = 0; i <= wu + wv - 1; ++i)
                d.add_scaled(V.mode(u, i, v),
                             -Scalar::from_mpz(F, detail::binom_nn(wu - 1, i)));
            rep.record(q.contains(d), "commutator congruence fails on (" +
                                          word_to_string(uw, V.config()) + ", " +
                                          word_to_string(vw, V.config()) + ")");
        }
    return rep;
}

// Theorem-level surjection A_n -> A_0: checked as O_n^(N) subset O_0^(N).
inline CheckReport check_On_in_O0(const ZhuQuotient& qn, const ZhuQuotient& q0) {
    CheckReport rep;
    for (const GradedVector& g : qn.generators())
        rep.record(q0.contains(g), "O_n generator not in O_0");
    return rep;
}

// ---------------------------------------------------------------------------
// C2(V) = span{ u_{-m-2} v : m >= 0 } and the Poisson algebra R(V) = V/C2(V).
// C2 is graded, so the truncated computation is exact per weight.

class C2Quotient {
public:
    C2Quotient(Space& V, int N) : V_(V), N_(N) {
        if (V.is_module()) throw usage_error("C2Quotient: needs the vacuum space");
        if (N > V.config().truncation) throw usage_error("C2Quotient: N exceeds space cutoff");
        build();
    }

    int N() const { return N_; }
    Space& space() const { return V_; }
    int dim_V(int w) const { return int(basis_[size_t(w)].size()); }
    int r_dim(int w) const { return dim_V(w) - span_[size_t(w)].dim(); }

    std::vector<Word> quotient_words(int w) const {
        std::vector<Word> out;
        auto free_cols = span_[size_t(w)].complement_coords();
        for (auto j : free_cols) out.push_back(basis_[size_t(w)][size_t(j)]);
        return out;
    }

    // canonical representative mod C2 (per-weight reduction)
    GradedVector project(const GradedVector& v) const {
        GradedVector out;
        std::map<int, std::vector<Scalar>> comps;
        for (const auto& [word, c] : v.terms) {
            int w = word.weight();
            if (w > N_) throw truncation_error("C2 project: weight above cutoff");
            auto& cc = comps[w];
            if (cc.empty()) cc.assign(basis_[size_t(w)].size(), Scalar::zero(V_.field()));
            cc[index_.at(word)] = c;
        }
        for (auto& [w, cc] : comps) {
            auto red = span_[size_t(w)].reduce(cc);
            for (size_t i = 0; i < red.size(); ++i) out.add_term(basis_[size_t(w)][i], red[i]);
        }
        return out;
    }

    bool contains_grade(int w, const std::vector<Scalar>& coords) const {
        auto red = span_[size_t(w)].reduce(coords);
        for (const auto& x : red)
            if (!x.is_zero()) return false;
        return true;
    }

    const Subspace& span_at(int w) const { return span_[size_t(w)]; }

private:
    void build() {
        const FieldPtr& F = V_.field();
        basis_.resize(size_t(N_) + 1);
        for (int w = 0; w <= N_; ++w) {
            basis_[size_t(w)] = V_.basis(w);
            for (size_t i = 0; i < basis_[size_t(w)].size(); ++i)
                index_[basis_[size_t(w)][i]] = i;
            span_.emplace_back(F, basis_[size_t(w)].size());
        }
        for (int wu = 0; wu <= N_; ++wu)
            for (int wv = 0; wu + wv + 1 <= N_; ++wv)
                for (const Word& uw : basis_[size_t(wu)]) {
                    GradedVector u;
                    u.add_term(uw, Scalar::one(F));
                    for (const Word& vw : basis_[size_t(wv)]) {
                        GradedVector v;
                        v.add_term(vw, Scalar::one(F));
                        for (int m = 0; wu + wv + m + 1 <= N_; ++m) {
                            GradedVector g = V_.mode(u, -m - 2, v);
                            if (g.is_zero()) continue;
                            int w = wu + wv + m + 1;
                            span_[size_t(w)].add(coords_at(g, w));
                        }
                    }
                }
    }

    std::vector<Scalar> coords_at(const GradedVector& v, int w) const {
        std::vector<Scalar> out(basis_[size_t(w)].size(), Scalar::zero(V_.field()));
        for (const auto& [word, c] : v.terms) out[index_.at(word)] = c;
        return out;
    }

    Space& V_;
    int N_;
    std::vector<std::vector<Word>> basis_;
    std::map<Word, size_t> index_;
    std::vector<Subspace> span_;
};

// R(V) Poisson axioms on truncated basis tuples: commutativity of the
// product, antisymmetry of the bracket, and the Leibniz rule.
inline CheckReport check_poisson(const C2Quotient& c2, int max_w) {
    Space& V = c2.space();
    const FieldPtr& F = V.field();
    CheckReport rep;
    std::vector<std::pair<int, Word>> words;
    for (int w = 0; w <= max_w; ++w)
        for (const Word& bw : c2.quotient_words(w)) words.emplace_back(w, bw);
    auto vec = [&](const Word& w) {
        GradedVector v;
        v.add_term(w, Scalar::one(F));
        return v;
    };
    for (const auto& [wu, uw] : words)
        for (const auto& [wv, vw] : words) {
            GradedVector u = vec(uw), v = vec(vw);
            if (wu + wv <= c2.N())
                rep.record(c2.project(V.mode(u, -1, v) - V.mode(v, -1, u)).is_zero(),
                           "R(V) product not commutative");
            if (wu + wv - 1 <= c2.N() && wu + wv >= 1)
                rep.record(c2.project(V.mode(u, 0, v) + V.mode(v, 0, u)).is_zero(),
                           "R(V) bracket not antisymmetric");
        }
    for (const auto& [wa, aw] : words)
        for (const auto& [wb, bw] : words)
            for (const auto& [wc, cw] : words) {
                if (wa + wb + wc - 1 > c2.N() || wa + wb + wc < 1) continue;
                GradedVector a = vec(aw), b = vec(bw), c = vec(cw);
                GradedVector lhs = V.mode(a, 0, V.mode(b, -1, c));
                GradedVector rhs = V.mode(V.mode(a, 0, b), -1, c) +
                                   V.mode(b, -1, V.mode(a, 0, c));
                rep.record(c2.project(lhs - rhs).is_zero(), "Leibniz rule fails");
            }
    return rep;
}

// phi: R(V)_w -> gr_w A(V), induced by the identity on V_w.  Checks:
// well-definedness (C2 cap V_w dies against the weight-w lead block),
// degreewise surjectivity (automatic once well-defined; dims recorded),
// and multiplicativity on quotient-word pairs.
struct PhiReport {
    bool well_defined = true;
    bool surjective = true;
    bool multiplicative = true;
    std::vector<int> r_dims, gr_dims;
    bool ok() const { return well_defined && surjective && multiplicative; }
};

inline PhiReport phi_check(const ZhuQuotient& q, const C2Quotient& c2, int max_w) {
    Space& V = q.space();
    const FieldPtr& F = V.field();
    PhiReport rep;
    for (int w = 0; w <= max_w; ++w) {
        rep.r_dims.push_back(c2.r_dim(w));
        rep.gr_dims.push_back(q.gr_dim(w));
        // C2 rows at weight w must reduce to zero against the O-lead block
        for (const auto& row : c2.span_at(w).basis()) {
            auto red = q.reduce_lead(w, row);
            for (const auto& x : red)
                if (!x.is_zero()) {
                    rep.well_defined = false;
                    break;
                }
        }
        // surjectivity: phi hits every class since both sides are quotients
        // of V_w along compatible kernels; dims must satisfy r >= gr
        if (c2.r_dim(w) < q.gr_dim(w)) rep.surjective = false;
    }
    // multiplicativity: phi(u bar . v bar) = phi(u) phi(v) in gr
    std::vector<std::pair<int, Word>> words;
    for (int w = 0; w <= max_w; ++w)
        for (const Word& bw : c2.quotient_words(w)) words.emplace_back(w, bw);
    for (const auto& [wu, uw] : words)
        for (const auto& [wv, vw] : words) {
            int w = wu + wv;
            if (w > max_w || w > q.N()) continue;
            GradedVector u, v;
            u.add_term(uw, Scalar::one(F));
            v.add_term(vw, Scalar::one(F));
            GradedVector prod = V.mode(u, -1, v); // representative of u bar . v bar
            GradedVector sp = q.project(star(V, u, v, 0));
            // gr-product = weight-w component of the projected star product
            GradedVector diff = prod;
            for (const auto& [word, c] : sp.terms)
                if (word.weight() == w) diff.add_term(word, -c);
            std::vector<Scalar> coords(V.basis(w).size(), Scalar::zero(F));
            auto bw_ = V.basis(w);
            std::map<Word, size_t> pos;
            for (size_t i = 0; i < bw_.size(); ++i) pos[bw_[i]] = i;
            for (const auto& [word, c] : diff.terms) coords[pos.at(word)] = c;
            auto red = q.reduce_lead(w, coords);
            for (const auto& x : red)
                if (!x.is_zero()) {
                    rep.multiplicative = false;
                    break;
                }
        }
    return rep;
}

} // namespace voak
