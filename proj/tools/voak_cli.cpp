// Command-line front end: exact computations on truncated vertex algebras.
//
// Commands: describe, zhu, c2, endo, extend, selftest.
// Exit codes: 0 success, 1 a verification check failed, 2 usage error,
// 3 unsupported request (bad field, inseparable extension, cutoff too small).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voak/run.hpp"

namespace {

using voak::run::KeyValues;
using voak::run::RunResult;

void emit(const RunResult& r, const std::string& out_path) {
    std::string text = voak::run::render(r.report);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw voak::usage_error("cannot write output file: " + out_path);
        f << text;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact truncated vertex algebra toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, schedule_str, ext_str;
    int n = 0, max_degree = -1, depth = 2;
    std::uint64_t seed = 0x5EED;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "flat key=value config file");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_path, "write the JSON report to a file");
    };

    auto* describe = app.add_subcommand("describe", "graded dimensions and axiom checks");
    add_common(describe, true);

    auto* zhu = app.add_subcommand("zhu", "truncated level-n associative quotient");
    add_common(zhu, true);
    zhu->add_option("--n", n, "quotient level (default 0)");
    zhu->add_option("--schedule", schedule_str, "comma-separated cutoff schedule");
    zhu->add_option("--max-degree", max_degree, "report degrees up to this bound");

    auto* c2 = app.add_subcommand("c2", "degree-two Poisson quotient and comparison map");
    add_common(c2, true);
    c2->add_option("--max-degree", max_degree, "check degrees up to this bound");

    auto* endo = app.add_subcommand("endo", "endomorphisms of the module top level");
    add_common(endo, true);
    endo->add_option("--n", n, "quotient level (default 0)");
    endo->add_option("--schedule", schedule_str, "comma-separated cutoff schedule");
    endo->add_option("--seed", seed, "seed for the division-ring probe");

    auto* extend = app.add_subcommand("extend", "base-change invariance and irreducibility transfer");
    add_common(extend, true);
    extend->add_option("--ext", ext_str, "minimal polynomial in t, e.g. t^2-2")->required();
    extend->add_option("--n", n, "quotient level (default 0)");
    extend->add_option("--depth", depth, "grade window for the module comparison");
    extend->add_option("--schedule", schedule_str, "comma-separated cutoff schedule");
    extend->add_option("--seed", seed, "seed for the division-ring probe");

    auto* selftest = app.add_subcommand("selftest", "deterministic fixed battery");
    add_common(selftest, false);
    selftest->add_option("--seed", seed, "seed for randomized probes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        KeyValues kv;
        if (!config_path.empty()) kv = voak::run::parse_config_file(config_path);
        std::vector<int> schedule;
        if (!schedule_str.empty()) schedule = voak::run::parse_schedule(schedule_str);

        RunResult result;
        if (describe->parsed()) result = voak::run::run_describe(kv);
        else if (zhu->parsed()) result = voak::run::run_zhu(kv, n, schedule, max_degree);
        else if (c2->parsed()) result = voak::run::run_c2(kv, max_degree);
        else if (endo->parsed()) result = voak::run::run_endo(kv, n, schedule, seed);
        else if (extend->parsed()) result = voak::run::run_extend(kv, ext_str, n, depth, schedule, seed);
        else result = voak::run::run_selftest(seed);

        emit(result, out_path);
        return result.exit_code;
    } catch (const voak::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const voak::unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const voak::truncation_error& e) {
        std::cerr << "unsupported at this cutoff: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
