#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "voak/run.hpp"

using namespace voak;
using namespace voak::run;

TEST_CASE("config text parsing") {
    auto kv = parse_config_text("family = virasoro\n# comment\nc = 1/2 # trailing\n\nfield=Q\n");
    REQUIRE(kv.at("family") == "virasoro");
    REQUIRE(kv.at("c") == "1/2");
    REQUIRE(kv.at("field") == "Q");
    REQUIRE_THROWS_AS(parse_config_text("no equals sign"), usage_error);
    REQUIRE_THROWS_AS(parse_config_text("= value"), usage_error);
}

TEST_CASE("field grammar round-trips through the field name") {
    REQUIRE(parse_field("Q")->kind == FieldKind::rationals);
    REQUIRE(parse_field("F7")->characteristic() == 7);
    auto F25 = parse_field("F5[t]/(t^2-2)");
    REQUIRE(F25->characteristic() == 5);
    REQUIRE(F25->ext_degree() == 2);
    REQUIRE(F25->order() == 25);
    // the printed name parses back to an equal field
    REQUIRE(parse_field(F25->name())->equals(*F25));
    auto Qi = parse_field("Q[s]/(s^2+1)");
    Scalar i = Scalar::generator(Qi);
    REQUIRE(i * i == Scalar::from_long(Qi, -1));

    REQUIRE_THROWS_AS(parse_field(""), usage_error);
    REQUIRE_THROWS_AS(parse_field("R"), usage_error);
    REQUIRE_THROWS_AS(parse_field("F6"), usage_error);
    REQUIRE_THROWS_AS(parse_field("F2"), unsupported_error);
    REQUIRE_THROWS(parse_field("F5[t]/(t^2-4)")); // reducible
}

TEST_CASE("scalar and schedule parsing") {
    auto Q = FieldSpec::rationals();
    REQUIRE(parse_scalar(Q, "-3/4", "x") == Scalar::from_mpq(Q, mpq_class(-3, 4)));
    REQUIRE(parse_scalar(Q, "7", "x") == Scalar::from_long(Q, 7));
    REQUIRE_THROWS_AS(parse_scalar(Q, "abc", "x"), usage_error);
    REQUIRE(parse_schedule("4, 5, 6") == std::vector<int>({4, 5, 6}));
    REQUIRE_THROWS_AS(parse_schedule("6,5"), usage_error);
    REQUIRE_THROWS_AS(parse_schedule("6"), usage_error);
}

TEST_CASE("config to structures") {
    auto kv = parse_config_text(
        "family = heisenberg\nfield = F5\nrank = 2\ntruncate = 6\n"
        "module = fock\nlambda = 1, 2\n");
    VOAConfig cfg = build_voa_config(kv);
    REQUIRE(cfg.family == Family::heisenberg);
    REQUIRE(cfg.rank == 2);
    REQUIRE(cfg.truncation == 6);
    auto mod = build_module_config(kv, cfg);
    REQUIRE(mod.has_value());
    REQUIRE(mod->fock_lambda.size() == 2);
    REQUIRE(mod->fock_lambda[1] == Scalar::from_long(cfg.field, 2));

    auto bad = parse_config_text("family = virasoro\nfield = Q\nmodule = fock\n");
    VOAConfig vcfg = build_voa_config(bad);
    REQUIRE_THROWS_AS(build_module_config(bad, vcfg), usage_error);
}

#ifdef VOAK_CLI_PATH
namespace {

int run_cli(const std::string& args, const std::string& out_file) {
    std::string cmd = std::string(VOAK_CLI_PATH) + " " + args + " >" + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("command-line tool exit codes and determinism") {
    std::string dir = "cli_test_tmp";
    std::system(("mkdir -p " + dir).c_str());
    {
        std::ofstream f(dir + "/heis.cfg");
        f << "family = heisenberg\nfield = F5\nrank = 1\ntruncate = 6\n"
          << "module = fock\nlambda = 1\n";
    }
    {
        std::ofstream f(dir + "/f2.cfg");
        f << "family = heisenberg\nfield = F2\ntruncate = 4\n";
    }
    REQUIRE(run_cli("describe --config " + dir + "/heis.cfg", dir + "/a.json") == 0);
    REQUIRE(run_cli("zhu --config " + dir + "/heis.cfg", dir + "/b.json") == 0);
    REQUIRE(run_cli("c2 --config " + dir + "/heis.cfg", dir + "/c.json") == 0);
    REQUIRE(run_cli("endo --config " + dir + "/heis.cfg", dir + "/d.json") == 0);
    REQUIRE(run_cli("extend --config " + dir + "/heis.cfg --ext t^2-2 --depth 2",
                    dir + "/e.json") == 0);
    // usage problems exit 2, unsupported requests exit 3
    REQUIRE(run_cli("zhu", dir + "/err.txt") == 2);
    REQUIRE(run_cli("describe --config " + dir + "/missing.cfg", dir + "/err.txt") == 2);
    REQUIRE(run_cli("describe --config " + dir + "/f2.cfg", dir + "/err.txt") == 3);
    // selftest twice: byte-identical reports
    REQUIRE(run_cli("selftest", dir + "/s1.json") == 0);
    REQUIRE(run_cli("selftest", dir + "/s2.json") == 0);
    std::string s1 = slurp(dir + "/s1.json");
    REQUIRE_FALSE(s1.empty());
    REQUIRE(s1 == slurp(dir + "/s2.json"));
}
#endif
