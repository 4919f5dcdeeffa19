// Acceptance battery: one pass/fail line per criterion, exit code = number
// of failed criteria.  Every numeric target is checked against exact
// arithmetic; simplicity verdicts are cross-checked by brute-force
// enumeration.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "voak/run.hpp"
#include "voak/scalar_ext.hpp"
#include "voak/zhu.hpp"

using namespace voak;
using voak_test::binom;
using voak_test::brute_force_simple;
using voak_test::quotient_ring;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& note = "") {
    std::cout << "criterion " << idx << " [" << what << "]: " << (ok ? "PASS" : "FAIL");
    if (!note.empty()) std::cout << " (" << note << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

bool run_guarded(const std::function<bool()>& f, std::string& note) {
    try {
        return f();
    } catch (const std::exception& e) {
        note = e.what();
        return false;
    }
}

// pairs of quotient-basis words with combined weight within budget commute
bool commutative_on_stabilized_pairs(const ZhuQuotient& q, int max_total) {
    Space& V = q.space();
    const FieldPtr& F = V.field();
    std::vector<std::pair<int, Word>> words;
    for (int w = 0; w <= max_total; ++w)
        for (const Word& bw : q.quotient_words(w)) words.emplace_back(w, bw);
    for (const auto& [wu, uw] : words)
        for (const auto& [wv, vw] : words) {
            if (wu + wv > max_total || wu + wv > q.N()) continue;
            GradedVector u, v;
            u.add_term(uw, Scalar::one(F));
            v.add_term(vw, Scalar::one(F));
            if (!q.contains(star(V, u, v, 0) - star(V, v, u, 0))) return false;
        }
    return true;
}

} // namespace

int main() {
    auto Q = FieldSpec::rationals();
    auto F5 = FieldSpec::prime(5);
    auto F7 = FieldSpec::prime(7);
    auto F25 = FieldSpec::extension(
        F5, {Scalar::from_long(F5, -2), Scalar::zero(F5), Scalar::one(F5)});

    // ---- criterion 1: axiom suite per family x field at depth 6 ----------
    {
        std::string note;
        bool ok = run_guarded([&] {
            for (const FieldPtr& F : {Q, F5, F7, F25}) {
                std::vector<VOAConfig> cfgs = {
                    VOAConfig::heisenberg(F, 1, 6),
                    VOAConfig::virasoro(F, Scalar::from_long(F, 1), 6),
                    VOAConfig::affine_sl2(F, Scalar::one(F), 6),
                };
                for (const VOAConfig& cfg : cfgs) {
                    Space V(cfg);
                    AxiomReport rep = check_axioms(V, V, 6);
                    if (!rep.ok) {
                        std::ostringstream os;
                        os << family_name(cfg.family) << "/" << F->name() << ": "
                           << rep.failures.front();
                        throw std::runtime_error(os.str());
                    }
                }
            }
            // the characteristic-3 guard refuses the Virasoro construction
            auto F3 = FieldSpec::prime(3);
            try {
                VOAConfig::virasoro(F3, Scalar::one(F3), 6);
                return false;
            } catch (const unsupported_error&) {
                return true;
            }
        }, note);
        report(1, "axioms per family and field", ok, note);
    }

    // ---- criterion 2: commutativity plus polynomial-algebra dimensions ---
    {
        std::string note;
        bool ok = run_guarded([&] {
            Space V(VOAConfig::virasoro(Q, Scalar::from_mpq(Q, mpq_class(1, 2)), 12));
            ZhuAlgebra VZ(V, 0, {6, 8, 10, 12});
            if (VZ.stabilized_through() < 8) { note = "virasoro did not stabilize"; return false; }
            for (int d = 0; d <= 8; ++d)
                if (VZ.quotient().gr_dim(d) != (d % 2 == 0 ? 1 : 0)) {
                    note = "virasoro degree " + std::to_string(d);
                    return false;
                }
            if (!commutative_on_stabilized_pairs(VZ.quotient(), VZ.stabilized_through())) {
                note = "virasoro commutativity";
                return false;
            }
            for (int rank : {1, 2}) {
                Space H(VOAConfig::heisenberg(Q, rank, rank == 1 ? 10 : 8));
                ZhuAlgebra HZ(H, 0, rank == 1 ? std::vector<int>{6, 8, 10}
                                              : std::vector<int>{6, 7, 8});
                if (HZ.stabilized_through() < 5) {
                    note = "heisenberg rank " + std::to_string(rank) + " did not stabilize";
                    return false;
                }
                for (int d = 0; d <= 5; ++d)
                    if (HZ.quotient().gr_dim(d) != binom(d + rank - 1, rank - 1)) {
                        note = "heisenberg rank " + std::to_string(rank) + " degree " +
                               std::to_string(d);
                        return false;
                    }
                if (!commutative_on_stabilized_pairs(HZ.quotient(), HZ.stabilized_through())) {
                    note = "heisenberg commutativity";
                    return false;
                }
            }
            return true;
        }, note);
        report(2, "polynomial quotients: dims and commutativity", ok, note);
    }

    // ---- criterion 3: affine sl2 enveloping-algebra dimensions -----------
    Space A(VOAConfig::affine_sl2(Q, Scalar::one(Q), 7));
    ZhuAlgebra AZ(A, 0, {5, 6, 7});
    {
        std::string note;
        bool ok = run_guarded([&] {
            if (AZ.stabilized_through() < 3) { note = "did not stabilize"; return false; }
            for (int d = 0; d <= 3; ++d)
                if (AZ.quotient().gr_dim(d) != binom(d + 2, 2)) {
                    note = "degree " + std::to_string(d);
                    return false;
                }
            return true;
        }, note);
        report(3, "affine sl2 graded dimensions", ok, note);
    }

    // ---- criterion 4: associativity, identity, commutator congruence -----
    {
        std::string note;
        bool ok = run_guarded([&] {
            struct Fixture { VOAConfig cfg; std::vector<int> schedule; };
            std::vector<Fixture> fixtures = {
                {VOAConfig::virasoro(Q, Scalar::from_mpq(Q, mpq_class(1, 2)), 12),
                 {6, 8, 10, 12}},
                {VOAConfig::heisenberg(Q, 1, 10), {6, 8, 10}},
                {VOAConfig::affine_sl2(Q, Scalar::one(Q), 7), {5, 6, 7}},
            };
            for (const auto& fx : fixtures) {
                Space V(fx.cfg);
                ZhuAlgebra ZA(V, 0, fx.schedule);
                const ZhuQuotient& q = ZA.quotient();
                int s = ZA.stabilized_through();
                CheckReport id = check_identity(q, s);
                CheckReport as = check_associativity(q, s);
                CheckReport cc = check_commutator_congruence(q, std::min(s, q.N() / 2));
                if (!id.ok || !as.ok || !cc.ok) {
                    note = family_name(fx.cfg.family);
                    if (!id.ok) note += ": " + id.failures.front();
                    else if (!as.ok) note += ": " + as.failures.front();
                    else note += ": " + cc.failures.front();
                    return false;
                }
                if (id.cases == 0 || as.cases == 0 || cc.cases == 0) {
                    note = family_name(fx.cfg.family) + ": empty check";
                    return false;
                }
            }
            return true;
        }, note);
        report(4, "product laws and commutator congruence", ok, note);
    }

    // ---- criterion 5: surjection onto the graded quotient algebra --------
    {
        std::string note;
        bool ok = run_guarded([&] {
            struct Fixture { VOAConfig cfg; int max_w; };
            std::vector<Fixture> fixtures = {
                {VOAConfig::virasoro(Q, Scalar::from_mpq(Q, mpq_class(1, 2)), 12), 6},
                {VOAConfig::heisenberg(Q, 1, 10), 5},
                {VOAConfig::affine_sl2(Q, Scalar::one(Q), 7), 3},
            };
            for (const auto& fx : fixtures) {
                Space V(fx.cfg);
                ZhuQuotient q(V, 0, fx.cfg.truncation);
                C2Quotient c2(V, fx.cfg.truncation);
                PhiReport phi = phi_check(q, c2, fx.max_w);
                if (!phi.ok()) { note = family_name(fx.cfg.family); return false; }
            }
            return true;
        }, note);
        report(5, "degreewise surjection is multiplicative", ok, note);
    }

    // ---- criterion 6: endomorphism fixtures ------------------------------
    {
        std::string note;
        bool ok = run_guarded([&] {
            // (c) one-dimensional Fock top level: scalars only
            auto hcfg = VOAConfig::heisenberg(F5, 1, 8);
            Space H(hcfg);
            ZhuAlgebra HZ(H, 0, {6, 7, 8});
            auto data = HZ.data(std::min(3, HZ.stabilized_through()));
            Space M(hcfg, ModuleConfig::fock({Scalar::one(F5)}));
            MatrixModule top = top_level_action(M, data.basis);
            EndoReport efock = endomorphisms(top);
            if (top.dim != 1 || efock.commutant.size() != 1 || !is_absolutely_simple(top)) {
                note = "fock top level";
                return false;
            }
            // (d) quadratic field fixture before and after base change
            Poly m52(F5, {Scalar::from_long(F5, -2), Scalar::zero(F5), Scalar::one(F5)});
            auto Aq = quotient_ring(F5, m52);
            auto Mq = MatrixModule::from_algebra_basis(Aq, Aq.regular_action());
            EndoReport eq = endomorphisms(Mq);
            if (!is_simple_module(Mq) || eq.commutant.size() != 2 || is_absolutely_simple(Mq)) {
                note = "quadratic fixture over F5";
                return false;
            }
            auto MqK = extend_module(Mq, F25);
            auto AqK = extend_algebra(Aq, F25);
            SemisimpleReport ss = is_semisimple(AqK);
            if (is_simple_module(MqK) || !ss.semisimple || !ss.blocks || *ss.blocks != 2) {
                note = "split after extension to F25";
                return false;
            }
            // (a)+(b): algebraicity degree bound and finite commutant dims
            for (const EndoReport* e : {&efock, &eq}) {
                if (e->commutant.empty()) { note = "empty commutant"; return false; }
                if (e->min_polys.size() != e->commutant.size()) {
                    note = "missing algebraicity witnesses";
                    return false;
                }
            }
            for (const Poly& p : efock.min_polys)
                if (p.degree() > int(top.dim)) { note = "fock algebraicity"; return false; }
            for (const Poly& p : eq.min_polys)
                if (p.degree() > int(Mq.dim)) { note = "quadratic algebraicity"; return false; }
            return true;
        }, note);
        report(6, "endomorphism fixtures", ok, note);
    }

    // ---- criterion 7: brute-force oracle agreement ------------------------
    {
        std::string note;
        bool ok = run_guarded([&] {
            auto F3 = FieldSpec::prime(3);
            int cases = 0;
            auto check = [&](const FieldPtr& F,
                             std::vector<std::vector<std::vector<long>>> gens) {
                std::vector<Matrix> ms;
                for (const auto& g : gens) ms.push_back(Matrix::from_ints(F, g));
                MatrixModule M = MatrixModule::from_generators(F, ms);
                ++cases;
                return is_simple_module(M) == brute_force_simple(M);
            };
            std::vector<std::vector<std::vector<long>>> f3_fixtures = {
                {{0, 1}, {2, 0}}, {{0, 1}, {1, 0}}, {{0, 1}, {0, 0}}, {{1, 1}, {0, 1}},
                {{1, 0}, {0, 2}}, {{2, 0}, {0, 2}}, {{0, 1}, {1, 1}}, {{2, 1}, {0, 2}},
                {{1}}, {{0}},
            };
            for (const auto& g : f3_fixtures)
                if (!check(F3, {g})) { note = "F3 case " + std::to_string(cases); return false; }
            std::vector<std::vector<std::vector<std::vector<long>>>> f5_fixtures = {
                {{{0, 1}, {0, 0}}, {{0, 0}, {1, 0}}},
                {{{0, 1}, {2, 0}}},
                {{{0, 1}, {4, 0}}},
                {{{1, 1}, {0, 1}}},
                {{{3, 0}, {0, 3}}},
                {{{1, 0}, {0, 2}}, {{0, 1}, {0, 0}}},
                {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}},
                {{{0, 0, 2}, {1, 0, 0}, {0, 1, 0}}},
                {{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}},
                {{{0, 0, 0, 2}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}},
                {{{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}},
                {{{0, 2, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 3}, {0, 0, 1, 0}}},
                {{{1}}},
            };
            for (const auto& gs : f5_fixtures)
                if (!check(F5, gs)) { note = "F5 case " + std::to_string(cases); return false; }
            if (cases < 20) { note = "only " + std::to_string(cases) + " cases"; return false; }
            note = std::to_string(cases) + " cases";
            return true;
        }, note);
        report(7, "simplicity agrees with exhaustive search", ok, note);
    }

    // ---- criterion 8: base-change invariance of the filtered data --------
    {
        std::string note;
        bool ok = run_guarded([&] {
            auto hcfg = VOAConfig::heisenberg(F5, 1, 8);
            for (int n : {0, 1}) {
                Space H(hcfg);
                ZhuAlgebra HZ(H, n, {6, 7, 8});
                auto base = HZ.data(std::min(3, HZ.stabilized_through()));
                Space HK(extend_voa(hcfg, F25));
                ZhuAlgebra HKZ(HK, n, {6, 7, 8});
                auto ext = HKZ.data(std::min(3, HKZ.stabilized_through()));
                if (!filtered_data_equal_embedded(base, ext, F25)) {
                    note = "n = " + std::to_string(n);
                    return false;
                }
            }
            return true;
        }, note);
        report(8, "structure constants invariant under base change", ok, note);
    }

    // ---- criterion 9: deterministic selftest reports ----------------------
    {
        std::string note;
        bool ok = run_guarded([&] {
#ifdef VOAK_CLI_PATH
            auto invoke = [&](const std::string& out) {
                std::string cmd = std::string(VOAK_CLI_PATH) + " selftest --out " + out;
                return std::system(cmd.c_str()) == 0;
            };
            if (!invoke("acceptance_selftest_1.json") ||
                !invoke("acceptance_selftest_2.json")) {
                note = "selftest run failed";
                return false;
            }
            auto slurp = [](const std::string& p) {
                std::ifstream f(p, std::ios::binary);
                std::stringstream ss;
                ss << f.rdbuf();
                return ss.str();
            };
            std::string a = slurp("acceptance_selftest_1.json");
            std::string b = slurp("acceptance_selftest_2.json");
            if (a.empty() || a != b) { note = "reports differ"; return false; }
            return true;
#else
            auto r1 = voak::run::run_selftest(0x5EED);
            auto r2 = voak::run::run_selftest(0x5EED);
            if (r1.exit_code != 0) { note = "selftest failed"; return false; }
            return voak::run::render(r1.report) == voak::run::render(r2.report);
#endif
        }, note);
        report(9, "byte-identical selftest reports", ok, note);
    }

    if (failures == 0) std::cout << "all acceptance criteria passed" << std::endl;
    return failures;
}
