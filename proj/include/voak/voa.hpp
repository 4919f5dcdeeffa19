#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "voak/field.hpp"
#include "voak/matrix.hpp"

namespace voak {

enum class Family { heisenberg, virasoro, affine_sl2 };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::heisenberg: return "heisenberg";
        case Family::virasoro: return "virasoro";
        case Family::affine_sl2: return "affine_sl2";
    }
    return "?";
}

// One of the three strongly finitely generated families, over an exact field,
// with a weight cutoff N for basis enumeration.
struct VOAConfig {
    Family family;
    FieldPtr field;
    int truncation = 8; // N

    int rank = 1;                    // heisenberg
    Scalar central_charge;           // virasoro c
    Scalar level;                    // affine sl2 k

    static VOAConfig heisenberg(FieldPtr f, int rank, int truncation) {
        if (rank < 1) throw usage_error("heisenberg rank must be >= 1");
        VOAConfig c;
        c.family = Family::heisenberg;
        c.field = std::move(f);
        c.rank = rank;
        c.truncation = truncation;
        return c;
    }
    static VOAConfig virasoro(FieldPtr f, Scalar c0, int truncation) {
        long p = f->characteristic();
        if (p == 3) throw unsupported_error("virasoro needs characteristic not in {2,3} (1/12)");
        VOAConfig c;
        c.family = Family::virasoro;
        c.field = std::move(f);
        c.central_charge = std::move(c0);
        c.truncation = truncation;
        return c;
    }
    static VOAConfig affine_sl2(FieldPtr f, Scalar k, int truncation) {
        if ((k + Scalar::from_long(f, 2)).is_zero())
            throw unsupported_error("affine sl2 requires k + 2 invertible (critical level)");
        VOAConfig c;
        c.family = Family::affine_sl2;
        c.field = std::move(f);
        c.level = std::move(k);
        c.truncation = truncation;
        return c;
    }

    int num_generators() const {
        switch (family) {
            case Family::heisenberg: return rank;
            case Family::virasoro: return 1;
            case Family::affine_sl2: return 3; // e < h < f
        }
        return 0;
    }
    // Conformal weight of the generators.
    int gen_weight() const { return family == Family::virasoro ? 2 : 1; }
    // h_0-charge (affine only) used to block-split linear algebra.
    int gen_charge(int g) const {
        if (family != Family::affine_sl2) return 0;
        return g == 0 ? 2 : (g == 2 ? -2 : 0);
    }
    bool same_voa(const VOAConfig& o) const {
        if (family != o.family || !field->equals(*o.field)) return false;
        switch (family) {
            case Family::heisenberg: return rank == o.rank;
            case Family::virasoro: return central_charge == o.central_charge;
            case Family::affine_sl2: return level == o.level;
        }
        return false;
    }
};

enum class ModuleKind { heisenberg_fock, virasoro_verma, sl2_weyl };

// An admissible module for one of the families, graded by total mode depth.
struct ModuleConfig {
    ModuleKind kind;
    std::vector<Scalar> fock_lambda; // heisenberg_fock: length = rank
    Scalar verma_h;                  // virasoro_verma
    int weyl_dim = 1;                // sl2_weyl: dimension of the top sl2-module

    static ModuleConfig fock(std::vector<Scalar> lambda) {
        ModuleConfig m;
        m.kind = ModuleKind::heisenberg_fock;
        m.fock_lambda = std::move(lambda);
        return m;
    }
    static ModuleConfig verma(Scalar h) {
        ModuleConfig m;
        m.kind = ModuleKind::virasoro_verma;
        m.verma_h = std::move(h);
        return m;
    }
    static ModuleConfig weyl(int d) {
        if (d < 1) throw usage_error("sl2 Weyl top dimension must be >= 1");
        ModuleConfig m;
        m.kind = ModuleKind::sl2_weyl;
        m.weyl_dim = d;
        return m;
    }
};

// A PBW basis word a^1_{-n_1} ... a^r_{-n_r} applied to the vacuum or to a
// module top vector.  Factors are stored in application order, depths weakly
// decreasing, ties broken by generator id.
struct Word {
    std::vector<std::pair<int, int>> factors; // (depth n_i >= 1, generator id)
    int top = 0;                              // top-space index; 0 in the vacuum space

    int weight() const {
        int w = 0;
        for (const auto& [n, g] : factors) w += n;
        return w;
    }
    size_t length() const { return factors.size(); }

    friend bool operator<(const Word& a, const Word& b) {
        return std::tie(a.factors, a.top) < std::tie(b.factors, b.top);
    }
    friend bool operator==(const Word& a, const Word& b) {
        return a.factors == b.factors && a.top == b.top;
    }
};

// A finite exact linear combination of basis words.  All mode arithmetic in
// this engine is exact; weight cutoffs are enforced only where spans and
// quotients are formed.
struct GradedVector {
    std::map<Word, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    void add_scaled(const GradedVector& v, const Scalar& c) {
        if (c.is_zero()) return;
        for (const auto& [w, x] : v.terms) add_term(w, c * x);
    }
    GradedVector scaled(const Scalar& c) const {
        GradedVector r;
        r.add_scaled(*this, c);
        return r;
    }
    friend GradedVector operator+(const GradedVector& a, const GradedVector& b) {
        GradedVector r = a;
        for (const auto& [w, x] : b.terms) r.add_term(w, x);
        return r;
    }
    friend GradedVector operator-(const GradedVector& a, const GradedVector& b) {
        GradedVector r = a;
        for (const auto& [w, x] : b.terms) r.add_term(w, -x);
        return r;
    }
    friend bool operator==(const GradedVector& a, const GradedVector& b) {
        return a.terms == b.terms;
    }

    int max_weight() const {
        int m = 0;
        for (const auto& [w, c] : terms) {
            (void)c;
            m = std::max(m, w.weight());
        }
        return m;
    }
    bool homogeneous(int* weight_out = nullptr) const {
        int w = -1;
        for (const auto& [word, c] : terms) {
            (void)c;
            if (w < 0)
                w = word.weight();
            else if (w != word.weight())
                return false;
        }
        if (weight_out && w >= 0) *weight_out = w;
        return true;
    }
};

// The state space a computation lives in: the VOA itself (vacuum) or an
// admissible module over it.  Holds the mode memo table; use one Space per
// thread (or guard it) -- results are value-identical either way.
class Space {
public:
    explicit Space(VOAConfig cfg) : cfg_(std::move(cfg)) {}
    Space(VOAConfig cfg, ModuleConfig mod) : cfg_(std::move(cfg)), mod_(std::move(mod)) {
        validate_module();
    }

    const VOAConfig& config() const { return cfg_; }
    const FieldPtr& field() const { return cfg_.field; }
    bool is_module() const { return mod_.has_value(); }
    const ModuleConfig& module_config() const { return *mod_; }

    int top_dim() const {
        if (!mod_) return 1;
        return mod_->kind == ModuleKind::sl2_weyl ? mod_->weyl_dim : 1;
    }
    // Minimum depth a word factor may have in a basis word.
    int min_depth() const {
        return (!mod_ && cfg_.family == Family::virasoro) ? 2 : 1;
    }

    GradedVector vacuum(int top = 0) const {
        GradedVector v;
        Word w;
        w.top = top;
        v.add_term(w, Scalar::one(cfg_.field));
        return v;
    }

    // Canonical ordered basis of the weight-w slice (V_w or M(w)).
    std::vector<Word> basis(int w) const {
        if (w < 0 || w > cfg_.truncation)
            throw truncation_error("basis weight outside [0, N]");
        std::vector<Word> out;
        std::vector<std::pair<int, int>> cur;
        enumerate(w, w, std::make_pair(1 << 28, -1), cur, out);
        std::vector<Word> withtops;
        for (const auto& word : out)
            for (int t = 0; t < top_dim(); ++t) {
                Word w2 = word;
                w2.top = t;
                withtops.push_back(std::move(w2));
            }
        std::sort(withtops.begin(), withtops.end());
        return withtops;
    }

    int dim(int w) const { return int(basis(w).size()); }

    // h_0-charge of a word (affine family); 0 elsewhere.
    int sector(const Word& w) const {
        if (cfg_.family != Family::affine_sl2) return 0;
        int s = 0;
        for (const auto& [n, g] : w.factors) s += cfg_.gen_charge(g);
        if (mod_ && mod_->kind == ModuleKind::sl2_weyl) s += mod_->weyl_dim - 1 - 2 * w.top;
        return s;
    }

    // Action of a single generator mode.  For the virasoro family the index
    // m is the L-index (L_m = omega_{m+1}); for the current algebras it is
    // the ordinary mode index x_m.
    GradedVector gmode(int gen, int m, const GradedVector& v) {
        GradedVector out;
        for (const auto& [w, c] : v.terms) out.add_scaled(gmode_word(gen, m, w), c);
        return out;
    }

    // u_k v where u is a vacuum-space vector of the VOA and v lives here.
    GradedVector mode(const GradedVector& u, int k, const GradedVector& v) {
        GradedVector out;
        for (const auto& [uw, uc] : u.terms) {
            if (uw.top != 0) throw usage_error("mode: u must be a VOA (vacuum-space) vector");
            GradedVector partial;
            for (const auto& [vw, vc] : v.terms) partial.add_scaled(mode_word(uw, k, vw), vc);
            out.add_scaled(partial, uc);
        }
        return out;
    }

    // The conformal vector of the family, built by straightening so that the
    // pinned normalizations live in one place.
    GradedVector omega() {
        if (mod_) {
            Space vac(cfg_);
            return vac.omega();
        }
        const FieldPtr& F = cfg_.field;
        GradedVector vac = vacuum();
        switch (cfg_.family) {
            case Family::virasoro:
                return gmode(0, -2, vac);
            case Family::heisenberg: {
                GradedVector sum;
                Scalar half = Scalar::from_long(F, 2).inv();
                for (int a = 0; a < cfg_.rank; ++a)
                    sum.add_scaled(gmode(a, -1, gmode(a, -1, vac)), half);
                return sum;
            }
            case Family::affine_sl2: {
                // <h,h>=2, <e,f>=1, Casimir scalar 2h with h=2.
                Scalar denom = (Scalar::from_long(F, 2) * (cfg_.level + Scalar::from_long(F, 2))).inv();
                Scalar half = Scalar::from_long(F, 2).inv();
                GradedVector sum = gmode(0, -1, gmode(2, -1, vac)); // e_{-1} f_{-1} 1
                sum = sum + gmode(2, -1, gmode(0, -1, vac));        // f_{-1} e_{-1} 1
                sum.add_scaled(gmode(1, -1, gmode(1, -1, vac)), half);
                return sum.scaled(denom);
            }
        }
        return {};
    }

    // L(-1)v = omega_0 v, the translation operator.
    GradedVector lminus1(const GradedVector& v) {
        if (!omega_) omega_ = omega();
        return mode(*omega_, 0, v);
    }

    // Matrix of o(u) = u_{wt u - 1} on the weight-t slice of this space.
    Matrix o_matrix(const GradedVector& u, int t) {
        int wu = 0;
        if (!u.homogeneous(&wu)) throw usage_error("o(u): u must be homogeneous");
        auto b = basis(t);
        std::map<Word, size_t> index;
        for (size_t i = 0; i < b.size(); ++i) index[b[i]] = i;
        Matrix m(cfg_.field, b.size(), b.size());
        for (size_t j = 0; j < b.size(); ++j) {
            GradedVector bj;
            bj.add_term(b[j], Scalar::one(cfg_.field));
            GradedVector img = mode(u, wu - 1, bj);
            for (const auto& [w, c] : img.terms) {
                auto it = index.find(w);
                if (it == index.end()) throw usage_error("o(u): image left the grade slice");
                m.at(it->second, j) = c;
            }
        }
        return m;
    }

    // Coordinates in the canonical basis of one weight slice.
    std::vector<Scalar> coords(const GradedVector& v, int w) const {
        auto b = basis(w);
        std::map<Word, size_t> index;
        for (size_t i = 0; i < b.size(); ++i) index[b[i]] = i;
        std::vector<Scalar> out(b.size(), Scalar::zero(cfg_.field));
        for (const auto& [word, c] : v.terms) {
            if (word.weight() != w) continue;
            out[index.at(word)] = c;
        }
        return out;
    }

    void clear_memo() { memo_.clear(); }

private:
    void validate_module() {
        switch (mod_->kind) {
            case ModuleKind::heisenberg_fock:
                if (cfg_.family != Family::heisenberg ||
                    int(mod_->fock_lambda.size()) != cfg_.rank)
                    throw usage_error("fock module needs a heisenberg VOA and rank-length lambda");
                break;
            case ModuleKind::virasoro_verma:
                if (cfg_.family != Family::virasoro)
                    throw usage_error("verma module needs a virasoro VOA");
                break;
            case ModuleKind::sl2_weyl:
                if (cfg_.family != Family::affine_sl2)
                    throw usage_error("weyl module needs an affine sl2 VOA");
                break;
        }
    }

    // Enumerate factor multisets with total depth w, parts >= min_depth,
    // weakly decreasing (depth, then gen id ascending at ties).
    void enumerate(int remaining, int maxn, std::pair<int, int> bound,
                   std::vector<std::pair<int, int>>& cur, std::vector<Word>& out) const {
        if (remaining == 0) {
            Word w;
            w.factors = cur;
            out.push_back(std::move(w));
            return;
        }
        for (int n = std::min(remaining, maxn); n >= min_depth(); --n) {
            for (int g = 0; g < cfg_.num_generators(); ++g) {
                // next factor must not precede the previous one in normal order
                if (n > bound.first || (n == bound.first && g < bound.second)) continue;
                cur.emplace_back(n, g);
                enumerate(remaining - n, n, {n, g}, cur, out);
                cur.pop_back();
            }
        }
    }

    // Family commutation relation [x_m, y_n] applied to a tail vector.
    GradedVector bracket_apply(int g1, int m, int g2, int n, const GradedVector& tail) {
        const FieldPtr& F = cfg_.field;
        GradedVector out;
        switch (cfg_.family) {
            case Family::heisenberg: {
                if (g1 == g2 && m + n == 0)
                    out.add_scaled(tail, Scalar::from_long(F, m));
                break;
            }
            case Family::virasoro: {
                out.add_scaled(gmode(0, m + n, tail), Scalar::from_long(F, m - n));
                if (m + n == 0) {
                    mpz_class num = mpz_class(m) * m * m - m;
                    Scalar coeff = Scalar::from_mpz(F, num) * Scalar::from_long(F, 12).inv() *
                                   cfg_.central_charge;
                    out.add_scaled(tail, coeff);
                }
                break;
            }
            case Family::affine_sl2: {
                // e=0, h=1, f=2; [h,e]=2e, [h,f]=-2f, [e,f]=h.
                int bg = -1;
                long bc = 0;
                if (g1 == 1 && g2 == 0) { bg = 0; bc = 2; }
                else if (g1 == 0 && g2 == 1) { bg = 0; bc = -2; }
                else if (g1 == 1 && g2 == 2) { bg = 2; bc = -2; }
                else if (g1 == 2 && g2 == 1) { bg = 2; bc = 2; }
                else if (g1 == 0 && g2 == 2) { bg = 1; bc = 1; }
                else if (g1 == 2 && g2 == 0) { bg = 1; bc = -1; }
                if (bg >= 0)
                    out.add_scaled(gmode(bg, m + n, tail), Scalar::from_long(F, bc));
                // <h,h>=2, <e,f>=<f,e>=1
                long form = 0;
                if (g1 == 1 && g2 == 1) form = 2;
                if ((g1 == 0 && g2 == 2) || (g1 == 2 && g2 == 0)) form = 1;
                if (form != 0 && m + n == 0)
                    out.add_scaled(tail, Scalar::from_long(F, m * form) * cfg_.level);
                break;
            }
        }
        return out;
    }

    GradedVector apply_to_top(int gen, int m, int top) {
        const FieldPtr& F = cfg_.field;
        GradedVector out;
        if (!mod_) {
            // vacuum: x_m 1 = 0 for m >= 0; L_m 1 = 0 for m >= -1.
            int creation_threshold = (cfg_.family == Family::virasoro) ? -2 : -1;
            if (m > creation_threshold) return out;
            Word w;
            w.factors = {{-m, gen}};
            out.add_term(w, Scalar::one(F));
            return out;
        }
        if (m >= 1) return out;
        if (m <= -1) {
            Word w;
            w.top = top;
            w.factors = {{-m, gen}};
            out.add_term(w, Scalar::one(F));
            return out;
        }
        // zero modes on the top space
        switch (mod_->kind) {
            case ModuleKind::heisenberg_fock: {
                Word w;
                w.top = top;
                out.add_term(w, mod_->fock_lambda[size_t(gen)]);
                return out;
            }
            case ModuleKind::virasoro_verma: {
                Word w;
                w.top = top;
                out.add_term(w, mod_->verma_h);
                return out;
            }
            case ModuleKind::sl2_weyl: {
                // Weight basis v_0..v_{d-1}: h v_i = (d-1-2i) v_i,
                // f v_i = v_{i+1}, e v_i = i(d-i) v_{i-1}.
                int d = mod_->weyl_dim, i = top;
                Word w;
                if (gen == 1) {
                    w.top = i;
                    out.add_term(w, Scalar::from_long(F, d - 1 - 2 * i));
                } else if (gen == 2) {
                    if (i + 1 < d) {
                        w.top = i + 1;
                        out.add_term(w, Scalar::one(F));
                    }
                } else {
                    if (i > 0) {
                        w.top = i - 1;
                        out.add_term(w, Scalar::from_long(F, long(i) * (d - i)));
                    }
                }
                return out;
            }
        }
        return out;
    }

    GradedVector gmode_word(int gen, int m, const Word& w) {
        if (w.factors.empty()) return apply_to_top(gen, m, w.top);
        auto [n1, g1] = w.factors.front();
        int depth = -m;
        if (depth >= 1 && (depth > n1 || (depth == n1 && gen <= g1))) {
            Word w2 = w;
            w2.factors.insert(w2.factors.begin(), {depth, gen});
            GradedVector out;
            out.add_term(w2, Scalar::one(cfg_.field));
            return out;
        }
        // commute past the first factor: x_m a = a x_m + [x_m, a]
        Word rest = w;
        rest.factors.erase(rest.factors.begin());
        GradedVector tail;
        tail.add_term(rest, Scalar::one(cfg_.field));
        GradedVector inner = gmode(gen, m, tail);
        GradedVector out = gmode(g1, -n1, inner);
        out.add_scaled(bracket_apply(gen, m, g1, -n1, tail), Scalar::one(cfg_.field));
        return out;
    }

    // State-mode index of a leading word factor: for the current algebras a
    // factor (n, g) is the state g_{-n} 1 with state modes g_j; for virasoro
    // the factor (n, L) is omega_{-n+1} with state modes omega_j = L(j-1).
    int state_mode_of_factor(int n) const {
        return cfg_.family == Family::virasoro ? -n + 1 : -n;
    }
    GradedVector gen_state_mode(int gen, int state_idx, const GradedVector& v) {
        return cfg_.family == Family::virasoro ? gmode(gen, state_idx - 1, v)
                                               : gmode(gen, state_idx, v);
    }

    GradedVector mode_word(const Word& u, int k, const Word& vw) {
        const FieldPtr& F = cfg_.field;
        if (u.factors.empty()) {
            GradedVector out;
            if (k == -1) out.add_term(vw, Scalar::one(F));
            return out;
        }
        auto key = std::make_tuple(u, k, vw);
        auto memo_it = memo_.find(key);
        if (memo_it != memo_.end()) return memo_it->second;

        GradedVector result;
        auto [n1, g1] = u.factors.front();
        bool primitive = u.factors.size() == 1 &&
                         n1 == (cfg_.family == Family::virasoro ? 2 : 1);
        GradedVector v;
        v.add_term(vw, Scalar::one(F));
        if (primitive) {
            result = cfg_.family == Family::virasoro ? gmode(g1, k - 1, v) : gmode(g1, k, v);
        } else {
            // iterate identity: (a_{m0} b)_k =
            //   sum_i (-1)^i C(m0,i) ( a_{m0-i} b_{k+i} - (-1)^{m0} b_{m0+k-i} a_i )
            Word rest = u;
            rest.factors.erase(rest.factors.begin());
            int m0 = state_mode_of_factor(n1);
            int wt_rest = rest.weight();
            int wt_gen = cfg_.gen_weight();
            int wt_v = vw.weight();
            int sign_m0 = (m0 % 2 == 0) ? 1 : -1;

            int imax1 = wt_rest + wt_v - k - 1;
            for (int i = 0; i <= imax1; ++i) {
                mpz_class bin = binom_z(m0, i);
                if (bin == 0) continue;
                GradedVector inner = mode_word(rest, k + i, vw);
                if (inner.is_zero()) continue;
                Scalar c = Scalar::from_mpz(F, (i % 2 == 0) ? bin : -bin);
                result.add_scaled(gen_state_mode(g1, m0 - i, inner), c);
            }
            int imax2 = wt_gen + wt_v - 1;
            for (int i = 0; i <= imax2; ++i) {
                mpz_class bin = binom_z(m0, i);
                if (bin == 0) continue;
                GradedVector av = gen_state_mode(g1, i, v);
                if (av.is_zero()) continue;
                long sgn = ((i % 2 == 0) ? 1 : -1) * sign_m0;
                Scalar c = Scalar::from_mpz(F, sgn > 0 ? -bin : bin);
                GradedVector outer;
                for (const auto& [w2, c2] : av.terms)
                    outer.add_scaled(mode_word(rest, m0 + k - i, w2), c2);
                result.add_scaled(outer, c);
            }
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

    static mpz_class binom_z(long m, long i) {
        mpz_class r = 1;
        for (long j = 0; j < i; ++j) {
            r *= m - j;
            mpz_class d(j + 1);
            r /= d;
        }
        return r;
    }

    VOAConfig cfg_;
    std::optional<ModuleConfig> mod_;
    std::optional<GradedVector> omega_;
    std::map<std::tuple<Word, int, Word>, GradedVector> memo_;
};

// Formats a word like "h1(-2).h1(-1)|0>" for reports.
inline std::string word_to_string(const Word& w, const VOAConfig& cfg) {
    std::ostringstream os;
    for (const auto& [n, g] : w.factors) {
        std::string gname;
        switch (cfg.family) {
            case Family::heisenberg: gname = "h" + std::to_string(g + 1); break;
            case Family::virasoro: gname = "L"; break;
            case Family::affine_sl2: gname = g == 0 ? "e" : (g == 1 ? "h" : "f"); break;
        }
        os << gname << "(-" << n << ").";
    }
    os << "|" << w.top << ">";
    return os.str();
}

struct AxiomReport {
    bool ok = true;
    std::vector<std::string> failures;
    void fail(std::string msg) {
        ok = false;
        if (failures.size() < 20) failures.push_back(std::move(msg));
    }
};

// Spot-checks the defining identities on all basis pairs (u, v) with
// wt u + wt v <= depth: grading of u_k v, L(0) eigenvalues via omega,
// the L(-1)-derivative shift, the creation property and vacuum modes.
// `module_space` may equal `voa_space` to test the adjoint module.
inline AxiomReport check_axioms(Space& voa_space, Space& module_space, int depth) {
    AxiomReport rep;
    const VOAConfig& cfg = voa_space.config();
    const FieldPtr& F = cfg.field;
    depth = std::min(depth, cfg.truncation);
    GradedVector om = voa_space.omega();

    auto single = [&](const Word& w) {
        GradedVector v;
        v.add_term(w, Scalar::one(F));
        return v;
    };

    // creation: u_{-1} 1 = u, u_k 1 = 0 for k >= 0 (vacuum space)
    for (int s = 0; s <= depth; ++s)
        for (const Word& uw : voa_space.basis(s)) {
            GradedVector u = single(uw);
            GradedVector back = voa_space.mode(u, -1, voa_space.vacuum());
            if (!(back == u))
                rep.fail("creation: u_{-1}|0> != u for " + word_to_string(uw, cfg));
            for (int k = 0; k <= s + 1; ++k)
                if (!voa_space.mode(u, k, voa_space.vacuum()).is_zero())
                    rep.fail("creation: u_k|0> != 0, k=" + std::to_string(k) + " for " +
                             word_to_string(uw, cfg));
        }

    for (int s = 0; s <= depth; ++s) {
        auto ub = voa_space.basis(s);
        for (const Word& uw : ub) {
            GradedVector u = single(uw);
            // L(-1)-derivative: (L(-1)u)_k = -k u_{k-1}
            GradedVector du = voa_space.lminus1(u);
            for (int t = 0; s + t <= depth; ++t) {
                for (const Word& vw : module_space.basis(t)) {
                    GradedVector v = single(vw);
                    // vacuum module element: 1_k v = delta_{k,-1} v
                    int klo = s + t - 1 - cfg.truncation, khi = s + t + 3;
                    for (int k = klo; k <= khi; ++k) {
                        GradedVector uv = module_space.mode(u, k, v);
                        int expect = s + t - k - 1;
                        for (const auto& [w2, c2] : uv.terms) {
                            (void)c2;
                            if (w2.weight() != expect) {
                                rep.fail("grading: u_k v not homogeneous of weight " +
                                         std::to_string(expect));
                                break;
                            }
                        }
                        GradedVector lhs = module_space.mode(du, k, v);
                        GradedVector rhs =
                            module_space.mode(u, k - 1, v).scaled(Scalar::from_long(F, -k));
                        if (!(lhs == rhs))
                            rep.fail("derivative: (L(-1)u)_k v != -k u_{k-1} v at k=" +
                                     std::to_string(k) + ", u=" + word_to_string(uw, cfg));
                    }
                }
            }
        }
    }

    // L(0) acts as the grade on every basis word up to depth
    for (int t = 0; t <= depth; ++t)
        for (const Word& vw : module_space.basis(t)) {
            GradedVector v = single(vw);
            GradedVector l0v = module_space.mode(om, 1, v);
            GradedVector want = v.scaled(Scalar::from_long(F, t));
            if (module_space.is_module()) {
                // modules are graded by depth above the top; L(0) = depth + L(0)|top
                Word topw;
                topw.top = vw.top;
                GradedVector shift;
                switch (module_space.module_config().kind) {
                    case ModuleKind::virasoro_verma:
                        shift = v.scaled(module_space.module_config().verma_h);
                        break;
                    case ModuleKind::heisenberg_fock: {
                        Scalar s2 = Scalar::zero(F);
                        for (const Scalar& l : module_space.module_config().fock_lambda)
                            s2 = s2 + l * l;
                        shift = v.scaled(s2 * Scalar::from_long(F, 2).inv());
                        break;
                    }
                    case ModuleKind::sl2_weyl: {
                        // Casimir/(2(k+2)) on the d-dim rep: (d^2-1)/(4(k+2))
                        long d = module_space.module_config().weyl_dim;
                        Scalar num = Scalar::from_long(F, d * d - 1);
                        Scalar den = (Scalar::from_long(F, 4) *
                                      (cfg.level + Scalar::from_long(F, 2)));
                        shift = v.scaled(num * den.inv());
                        break;
                    }
                }
                want = want + shift;
            }
            if (!(l0v == want))
                rep.fail("L(0): wrong eigenvalue on " + word_to_string(vw, cfg) +
                         " at grade " + std::to_string(t));
        }

    return rep;
}

} // namespace voak
