#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdint>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "sumset/errors.hpp"
#include "sumset/group.hpp"
#include "sumset/gset.hpp"
#include "sumset/json_io.hpp"
#include "sumset/search.hpp"
#include "sumset/structure.hpp"
#include "sumset/subgroup.hpp"

using namespace sumset;

namespace {

std::string g_cli_path;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the CLI with the given arguments, capturing stdout+stderr.
RunResult run_cli(const std::string& args) {
    RunResult result;
    REQUIRE(!g_cli_path.empty());
    const std::string cmd = "\"" + g_cli_path + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

GSet gs(const GroupPtr& g, std::initializer_list<Elem> elems) {
    return GSet::from_elements(g, elems);
}

} // namespace

int main(int argc, char** argv) {
    std::vector<char*> pass;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--cli=", 0) == 0)
            g_cli_path = arg.substr(6);
        else
            pass.push_back(argv[i]);
    }
    doctest::Context ctx;
    ctx.applyCommandLine(static_cast<int>(pass.size()), pass.data());
    return ctx.run();
}

TEST_CASE("group descriptors") {
    CHECK(parse_factor_list("2x3") == std::vector<std::int64_t>{2, 3});
    CHECK(parse_factor_list("2X3") == std::vector<std::int64_t>{2, 3});
    CHECK(parse_factor_list("2*3") == std::vector<std::int64_t>{2, 3});
    CHECK(parse_factor_list("2,3") == std::vector<std::int64_t>{2, 3});
    CHECK(parse_factor_list("12") == std::vector<std::int64_t>{12});
    CHECK(parse_group_spec("2x3")->to_string() == "2x3");
    CHECK(parse_group_spec("6")->size() == 6);

    CHECK_THROWS_AS(parse_factor_list(""), InvalidSpecError);
    CHECK_THROWS_AS(parse_factor_list("abc"), InvalidSpecError);
    CHECK_THROWS_AS(parse_factor_list("2x"), InvalidSpecError);
    CHECK_THROWS_AS(parse_group_spec("0"), InvalidSpecError);
}

TEST_CASE("rational descriptors") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-1/6") == Rat(-1, 6));
    CHECK(parse_rational("2") == Rat(2));
    CHECK(parse_rational("0") == Rat(0));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidSpecError);
    CHECK_THROWS_AS(parse_rational(""), InvalidSpecError);
    CHECK_THROWS_AS(parse_rational("a/b"), InvalidSpecError);
}

TEST_CASE("set descriptors") {
    const GroupPtr z6 = make_group({6});
    const GroupPtr z23 = make_group({2, 3});

    CHECK(parse_set_spec(z6, "1,3,5") == gs(z6, {1, 3, 5}));
    CHECK(parse_set_spec(z6, "") == GSet(z6));
    CHECK(parse_set_spec(z6, "0x2a") == gs(z6, {1, 3, 5}));
    CHECK(parse_set_spec(z23, "(0,1),(1,2)") == gs(z23, {1, 5}));

    CHECK_THROWS_AS(parse_set_spec(z6, "6"), InvalidSpecError);
    CHECK_THROWS_AS(parse_set_spec(z6, "-1"), InvalidSpecError);
    CHECK_THROWS_AS(parse_set_spec(z6, "0x40"), InvalidSpecError);
    CHECK_THROWS_AS(parse_set_spec(z6, "0xzz"), InvalidSpecError);
    CHECK_THROWS_AS(parse_set_spec(z23, "(1,2,3)"), InvalidSpecError);
    CHECK_THROWS_AS(parse_set_spec(z23, "(2,0)"), InvalidSpecError);
}

TEST_CASE("JSON views") {
    const GroupPtr z6 = make_group({6});

    Json r = rational_json(Rat(-1, 2));
    CHECK(r["num"] == -1);
    CHECK(r["den"] == 2);

    Json s = gset_json(gs(z6, {0, 2, 4}));
    CHECK(s["group"] == "6");
    CHECK(s["elements"] == Json::array({0, 2, 4}));
    CHECK(s["size"] == 3);

    Json k = subgroup_json(Subgroup::from_members(gs(z6, {0, 3})));
    CHECK(k["order"] == 2);
    CHECK(k["index"] == 3);
    CHECK(k["members"] == Json::array({0, 3}));

    auto cert = kneser_certificate(gs(z6, {0, 3}), gs(z6, {0, 3}));
    REQUIRE(cert.has_value());
    Json c = certificate_json(*cert);
    CHECK(c["lhs"] == 2);
    CHECK(c["rhs"] == 2);
    CHECK(c["valid"] == true);
    CHECK(c["stabilizer"]["order"] == 2);

    Json scan = delta_scan_json(delta_scan(make_group({2}), Rat(1, 4), 2));
    CHECK(scan["pair_count"] == 9);
    CHECK(scan["rows"].size() == 9);
    CHECK(scan["delta_star"]["num"] == -1);
    CHECK(scan["delta_star"]["den"] == 2);
    CHECK(scan["unclassified"].empty());
    CHECK(scan["rows"][0]["tag"] == "TypeI");
    CHECK(scan["rows"][0]["k_index"] == 2);

    ClassificationResult res =
        classify_pair(gs(z6, {0, 2, 4}), gs(z6, {0, 2, 4}), Rat(1, 4), 3, Rat(1, 6));
    Json cj = classification_json(res);
    CHECK(cj["tag"] == "TypeI");
    CHECK(cj["subgroup"]["index"] == 2);
    CHECK(cj["periodicity"]["defect"]["num"] == 0);
    CHECK(cj["bohr_interval_route_vacuous"] == true);
    CHECK(!cj.contains("diagnostics"));
}

TEST_CASE("cli: analyze") {
    RunResult r = run_cli("analyze --group 6 --A 0,2,4 --B 0,2,4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("A+B={0,2,4} |A+B|=3") != std::string::npos);
    CHECK(r.output.find("stabilizer={0,2,4} order=3 index=2") != std::string::npos);
    CHECK(r.output.find("regime=critical tame=yes") != std::string::npos);

    RunResult j = run_cli("analyze --group 6 --A 0,2,4 --B 0,2,4 --json");
    CHECK(j.exit_code == 0);
    Json parsed = Json::parse(j.output);
    CHECK(parsed["stabilizer"]["order"] == 3);
    CHECK(parsed["sumset"]["size"] == 3);
}

TEST_CASE("cli: classify") {
    RunResult r = run_cli("classify --group 7 --A 0,1 --B 0,1 --eps 1/4 --d 1 --delta 1/7 --json");
    CHECK(r.exit_code == 0);
    Json parsed = Json::parse(r.output);
    CHECK(parsed["tag"] == "TypeIII_2");
    CHECK(parsed["subgroup"]["index"] == 1);
    CHECK(parsed["cover"]["cover"]["hom"]["modulus"] == 7);

    RunResult all = run_cli("classify --group 6 --A 0,2,4 --B 0,2,4 --eps 1/4 --d 6 --delta 1/6 --all");
    CHECK(all.exit_code == 0);
    CHECK(all.output.find("witnesses=2") != std::string::npos);

    // Precondition violations exit with the usage code.
    RunResult bad = run_cli("classify --group 4 --A 0 --B 0,1 --eps 1/4 --d 1 --delta 0");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("m(A) <= epsilon") != std::string::npos);
}

TEST_CASE("cli: scan") {
    RunResult r = run_cli("scan --group 2 --eps 1/4 --d 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("group;|A|;|B|;sumset;popular;gap_num;gap_den;tag;k_index") !=
          std::string::npos);
    CHECK(r.output.find("# pairs=9") != std::string::npos);
    CHECK(r.output.find("# delta_star=-1/2") != std::string::npos);
    CHECK(r.output.find("# unclassified=0") != std::string::npos);
}

TEST_CASE("cli: verify") {
    RunResult r = run_cli("verify --kneser --max-size 6");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("suite=kneser-exhaustive") != std::string::npos);
    CHECK(r.output.find("anomalies=0") != std::string::npos);
    CHECK(r.output.find("suites=1 total_anomalies=0") != std::string::npos);

    // No suite selected: usage error.
    RunResult none = run_cli("verify");
    CHECK(none.exit_code == 2);
}

TEST_CASE("cli: oracle and gen") {
    RunResult r = run_cli("oracle --group 5 --A 0,1 --B 0,1 --eps 1/4 --delta 0 --json");
    CHECK(r.exit_code == 0);
    Json parsed = Json::parse(r.output);
    CHECK(parsed["move_cost"]["num"] == 0);
    CHECK(parsed["subcritical"] == true);

    RunResult n = run_cli("gen --niveau 4 --shift 1/2");
    CHECK(n.exit_code == 0);
    Json nj = Json::parse(n.output);
    CHECK(nj["set"]["size"] == 5);
    CHECK(nj["min_weight"] == 3);

    RunResult qp = run_cli(
        "gen --qp-pair --group 6 --k 0,3 --c 0,1,3,4 --dset 0,3 --c0 1 --d0 0 --a0 1 --b0 0");
    CHECK(qp.exit_code == 0);
    Json qpj = Json::parse(qp.output);
    CHECK(qpj["a"]["elements"] == Json::array({0, 1, 3}));
    CHECK(qpj["b"]["elements"] == Json::array({0}));

    RunResult neither = run_cli("gen");
    CHECK(neither.exit_code == 2);
}

TEST_CASE("cli: error paths") {
    CHECK(run_cli("").exit_code == 2);                       // missing subcommand
    CHECK(run_cli("analyze --group 6").exit_code == 2);      // missing required options
    CHECK(run_cli("analyze --group 0 --A 0 --B 0").exit_code == 2); // invalid group
    CHECK(run_cli("analyze --group 6 --A 9 --B 0").exit_code == 2); // element out of range
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("nonsense").exit_code == 2);
}
