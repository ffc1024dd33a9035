#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "emlab/chebyshev.hpp"
#include "emlab/errors.hpp"
#include "emlab/graphcore.hpp"
#include "emlab/harness.hpp"
#include "emlab/report.hpp"
#include "emlab/spectra.hpp"

using namespace emlab;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"emlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    CliResult r;
    r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

int run_binary(const std::string& args, std::string& output) {
    const std::string cmd = std::string(EMLAB_BIN_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    output.clear();
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("run configuration round-trips through its text form") {
    RunConfig def;
    CHECK(parse_config(render_config(def)) == def);

    RunConfig cfg;
    cfg.subcommand = "approx";
    cfg.q = 13;
    cfg.m = 6;
    cfg.n = 50;
    cfg.ell = 12;
    cfg.eps = 0.33333333333333331;
    cfg.samples = 7;
    cfg.bins = 17;
    cfg.budget = 99;
    cfg.seed = 0xDEADBEEFull;
    cfg.tol = 1e-7;
    cfg.l1_max = 0.125;
    cfg.petersen = true;
    cfg.in_path = "graphs/in.txt";
    cfg.out_path = "reports/run.json";
    cfg.format = "csv";
    cfg.ell_list = {11, 13};
    cfg.m_list = {4};
    cfg.f_offset = -2.5;
    CHECK(parse_config(render_config(cfg)) == cfg);
    CHECK(render_config(parse_config(render_config(cfg))) == render_config(cfg));

    RunConfig empty_lists;
    empty_lists.ell_list.clear();
    empty_lists.m_list.clear();
    CHECK(parse_config(render_config(empty_lists)) == empty_lists);

    CHECK_THROWS_AS(parse_config("nonsense line"), ParseError);
    CHECK_THROWS_AS(parse_config("mystery = 3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("q = notanumber\n"), ParseError);
    CHECK_THROWS_AS(parse_config("ell_list = 11,x\n"), ParseError);
    CHECK_THROWS_AS(parse_config("petersen = maybe\n"), ParseError);
}

TEST_CASE("report rendering is fixed-form and claims must reference measurements") {
    Report rep;
    rep.set_construction("demo");
    rep.set_seed(7);
    rep.param_int("q", 3);
    rep.measured_int("n", 216);
    rep.measured_real("gap", 2.5);
    rep.measured_flag("connected", true);
    rep.tolerance("cluster", 1e-8);

    CHECK_THROWS_AS(rep.add_claim("bogus", "unrecorded", 1.0, true), Error);

    rep.add_claim("big enough", "n", 100.0, true);
    CHECK(rep.verdict());
    rep.add_claim_na("skipped", "not applicable here");
    CHECK(rep.verdict()); // NA claims do not vote
    rep.add_claim("too big", "n", 1000.0, false);
    CHECK_FALSE(rep.verdict());

    rep.set_wall_clock(1.25);
    const std::string js = rep.to_json();
    CHECK(js.find("\"schema\": \"emlab/1\"") != std::string::npos);
    CHECK(js.find("\"verdict\": \"FAIL\"") != std::string::npos);
    CHECK(js.find("\"wall_clock_sec\": 1.25") != std::string::npos);
    // wall clock is the last field
    CHECK(js.rfind("\"wall_clock_sec\"") > js.rfind("\"verdict\""));

    Report other = rep;
    other.set_wall_clock(99.0);
    CHECK(rep.to_json() != other.to_json());
    CHECK(strip_wall_clock(rep.to_json()) == strip_wall_clock(other.to_json()));
    CHECK(strip_wall_clock(rep.to_csv()) == strip_wall_clock(other.to_csv()));
    CHECK(strip_wall_clock(rep.to_json()).find("wall_clock") == std::string::npos);

    const std::string csv = rep.to_csv();
    CHECK(csv.find("measured.n,216\n") != std::string::npos);
    CHECK(csv.find("claim.too big.satisfied,false\n") != std::string::npos);
    CHECK(csv.find("verdict,FAIL\n") != std::string::npos);

    CHECK_THROWS_AS(rep.render("yaml"), DomainError);
}

TEST_CASE("17 significant digit rendering survives a parse round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 2.1345400686718641, 1e-300, -0.05, 8.5500119999662843e-10}) {
        CHECK(std::stod(real17(v)) == v);
    }
    CHECK(real17(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(real17(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(real17(std::numeric_limits<double>::quiet_NaN()) == "nan");
    // non-finite values stay quoted in JSON
    Report rep;
    rep.measured_real("edge", std::numeric_limits<double>::infinity());
    CHECK(rep.to_json().find("\"edge\": \"inf\"") != std::string::npos);
}

TEST_CASE("cayley command verifies the full pipeline") {
    RunConfig cfg;
    cfg.subcommand = "cayley";
    Report rep = cmd_cayley(cfg);
    CHECK(rep.verdict());
    const Claim* deg = rep.find_claim("degree = 18");
    REQUIRE(deg != nullptr);
    CHECK(deg->applicable);
    CHECK(deg->satisfied);
    REQUIRE(rep.find_claim("multiplicity >= q^2 - 1") != nullptr);
    CHECK(rep.find_claim("multiplicity >= q^2 - 1")->satisfied);
    CHECK(rep.find_claim("multiplicity >= n^(2/5) - 1")->satisfied);
    CHECK(rep.find_claim("multiplicity cluster isolated")->satisfied);
    CHECK(rep.find_claim("connected")->satisfied);
    CHECK(rep.to_json().find("\"n\": 216") != std::string::npos);
}

TEST_CASE("bounded command marks the size-formula claim by applicability") {
    RunConfig small;
    small.q = 5;
    Report rep5 = cmd_bounded(small);
    CHECK(rep5.verdict());
    const Claim* floor5 = rep5.find_claim("multiplicity >= sqrt(n/log2 n)");
    REQUIRE(floor5 != nullptr);
    CHECK_FALSE(floor5->applicable); // m floored to 4, size formula gave 2
    CHECK(rep5.find_claim("multiplicity >= q - 1")->satisfied);
    CHECK(rep5.find_claim("second eigenvalue above y0 floor")->satisfied);

    RunConfig big;
    big.q = 13;
    Report rep13 = cmd_bounded(big);
    CHECK(rep13.verdict());
    const Claim* floor13 = rep13.find_claim("multiplicity >= sqrt(n/log2 n)");
    REQUIRE(floor13 != nullptr);
    CHECK(floor13->applicable);
    CHECK(floor13->satisfied);
    CHECK(std::abs(floor13->bound - std::sqrt(936.0 / std::log2(936.0))) < 1e-12);
}

TEST_CASE("approx command on the fixed base graph") {
    RunConfig cfg;
    cfg.petersen = true;
    cfg.ell = 11;
    cfg.eps = 1.0;
    Report rep = cmd_approx(cfg);
    CHECK(rep.verdict());
    CHECK(rep.to_json().find("\"n\": 640") != std::string::npos);
    CHECK(rep.find_claim("kappa >= 0.001 alpha0^-ell")->satisfied);
    CHECK(rep.find_claim("interval count >= base interval count")->satisfied);
    CHECK(rep.find_claim("f image within map tolerance")->satisfied);
    CHECK(rep.find_claim("f multiplicity transfer")->satisfied);
}

TEST_CASE("km command compares the averaged histogram to the density") {
    RunConfig cfg;
    cfg.n = 100;
    cfg.samples = 1;
    cfg.bins = 1;
    cfg.seed = 3;
    Report rep = cmd_km(cfg);
    CHECK(rep.verdict());
    const std::string csv = rep.to_csv();
    // single bin: the distance is exactly the out-of-range leakage, at least
    // the top eigenvalue and at most a handful of strays
    double l1 = -1.0;
    double leak = -1.0;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("measured.l1_distance,", 0) == 0) l1 = std::stod(line.substr(21));
        if (line.rfind("measured.out_of_range_mass,", 0) == 0) leak = std::stod(line.substr(27));
    }
    CHECK(l1 >= 0.01 - 1e-12);
    CHECK(l1 <= 0.05);
    CHECK(std::abs(l1 - leak) < 1e-12);

    CHECK_THROWS_AS(cmd_km([] { RunConfig c; c.n = 101; return c; }()), DomainError);
    CHECK_THROWS_AS(cmd_km([] { RunConfig c; c.n = 98; return c; }()), DomainError);
    CHECK_THROWS_AS(cmd_km([] { RunConfig c; c.n = 100; c.samples = 0; return c; }()), DomainError);
    CHECK_THROWS_AS(cmd_km([] { RunConfig c; c.n = 100; c.bins = 0; return c; }()), DomainError);
}

TEST_CASE("lemmas command aggregates the grid clauses") {
    RunConfig cfg;
    cfg.ell_list = {11, 12};
    cfg.m_list = {4, 5};
    Report rep = cmd_lemmas(cfg);
    CHECK(rep.verdict());
    for (const char* name : {"chebyshev ratio increasing", "chebyshev power bound",
                             "transfer root isolated and monotone", "transfer linear lower bound",
                             "transfer derivative window"}) {
        const Claim* c = rep.find_claim(name);
        REQUIRE(c != nullptr);
        CHECK(c->satisfied);
    }
    CHECK(rep.has_measured("lambda_star_11"));
    CHECK(rep.has_measured("lambda_star_12"));

    // perturbing the transfer function must break exactly the linear bound
    RunConfig hooked = cfg;
    hooked.f_offset = -std::pow(transfer_alpha0(), 10.0);
    Report broken = cmd_lemmas(hooked);
    CHECK_FALSE(broken.verdict());
    CHECK_FALSE(broken.find_claim("transfer linear lower bound")->satisfied);
    CHECK(broken.find_claim("transfer derivative window")->satisfied);
    CHECK(broken.find_claim("transfer root isolated and monotone")->satisfied);

    CHECK_THROWS_AS(cmd_lemmas([] { RunConfig c; c.ell_list.clear(); return c; }()), DomainError);
    CHECK_THROWS_AS(cmd_lemmas([] { RunConfig c; c.m_list.clear(); return c; }()), DomainError);
    CHECK_THROWS_AS(cmd_lemmas([] { RunConfig c; c.ell_list = {10}; return c; }()), DomainError);
    CHECK_THROWS_AS(cmd_lemmas([] { RunConfig c; c.m_list = {3}; return c; }()), DomainError);
}

TEST_CASE("spectrum command renders eigenvalues from a graph file") {
    const std::string path = temp_path("emlab_test_k4.txt");
    std::ofstream(path) << serialize(complete_graph(4));

    RunConfig cfg;
    cfg.in_path = path;
    cfg.format = "csv";
    const std::string csv = cmd_spectrum(cfg);
    std::istringstream lines(csv);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "index,value");
    CHECK(rows[1].rfind("0,", 0) == 0);
    CHECK(std::abs(std::stod(rows[1].substr(2)) - 3.0) < 1e-12);
    CHECK(std::abs(std::stod(rows[2].substr(2)) + 1.0) < 1e-12);
    CHECK(std::abs(std::stod(rows[4].substr(2)) + 1.0) < 1e-12);

    cfg.format = "json";
    const std::string js = cmd_spectrum(cfg);
    CHECK(js.find("\"values\": [2.9999999") != std::string::npos);

    cfg.format = "xml";
    CHECK_THROWS_AS(cmd_spectrum(cfg), DomainError);
    cfg.format = "csv";
    cfg.in_path = "";
    CHECK_THROWS_AS(cmd_spectrum(cfg), DomainError);
    cfg.in_path = temp_path("emlab_test_missing.txt");
    CHECK_THROWS_AS(cmd_spectrum(cfg), ParseError);

    const std::string bad = temp_path("emlab_test_corrupt.txt");
    std::ofstream(bad) << "not a graph at all\n";
    cfg.in_path = bad;
    CHECK_THROWS_AS(cmd_spectrum(cfg), ParseError);
    std::filesystem::remove(path);
    std::filesystem::remove(bad);
}

TEST_CASE("cli entry point maps outcomes to exit codes") {
    CliResult ok = run_cli({"lemmas", "--ell", "11", "--m", "4"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("\"verdict\": \"PASS\"") != std::string::npos);

    // an unreachable empirical threshold turns into exit 1, not an error
    CliResult fail = run_cli({"km", "--n", "100", "--samples", "1", "--bins", "4", "--seed", "0",
                              "--l1-max", "1e-12"});
    CHECK(fail.code == 1);
    CHECK(fail.out.find("\"verdict\": \"FAIL\"") != std::string::npos);
    CHECK(fail.err.empty());

    CliResult bad_flag = run_cli({"bounded", "--q", "notprime"});
    CHECK(bad_flag.code == 2);
    CliResult bad_q = run_cli({"bounded", "--q", "4"});
    CHECK(bad_q.code == 2);
    CHECK(bad_q.err.find("prime") != std::string::npos);
    CliResult no_sub = run_cli({});
    CHECK(no_sub.code == 2);
    CliResult bad_fmt = run_cli({"lemmas", "--format", "xml"});
    CHECK(bad_fmt.code == 2);
}

TEST_CASE("cli reruns are byte-identical modulo the wall clock") {
    const std::vector<std::string> fixture = {"bounded", "--q", "5"};
    CliResult a = run_cli(fixture);
    CliResult b = run_cli(fixture);
    CHECK(a.code == 0);
    CHECK(strip_wall_clock(a.out) == strip_wall_clock(b.out));
    CHECK(a.out.find("\"wall_clock_sec\": ") != std::string::npos);

    CliResult csv_a = run_cli({"bounded", "--q", "5", "--format", "csv"});
    CliResult csv_b = run_cli({"bounded", "--q", "5", "--format", "csv"});
    CHECK(csv_a.code == 0);
    CHECK(strip_wall_clock(csv_a.out) == strip_wall_clock(csv_b.out));
    CHECK(csv_a.out != a.out);

    CliResult km_a = run_cli({"km", "--n", "100", "--samples", "2", "--bins", "8", "--seed", "5"});
    CliResult km_b = run_cli({"km", "--n", "100", "--samples", "2", "--bins", "8", "--seed", "5"});
    CHECK(strip_wall_clock(km_a.out) == strip_wall_clock(km_b.out));
}

TEST_CASE("cli writes the same bytes to the output file") {
    const std::string path = temp_path("emlab_test_out.json");
    CliResult r = run_cli({"lemmas", "--ell", "11", "--m", "4", "--out", path});
    CHECK(r.code == 0);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == r.out);
    std::filesystem::remove(path);
}

TEST_CASE("installed binary behaves like the in-process entry point") {
    std::string out;
    const int code = run_binary("lemmas --ell 11 --m 4", out);
    CHECK(code == 0);
    CHECK(out.find("\"verdict\": \"PASS\"") != std::string::npos);

    std::string out2;
    const int code2 = run_binary("bounded --q 4", out2);
    CHECK(code2 == 2);
}
