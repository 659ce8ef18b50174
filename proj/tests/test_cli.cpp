#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <odb/asymptotics.hpp>
#include <odb/combinatorics.hpp>
#include <odb/exact.hpp>
#include <odb/rational.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

// Exit-code contract: 0 success, 2 argument error, 1 numeric-convergence
// failure (the last has no cheap deterministic trigger, so it is exercised
// only through the library's ComputeError unit tests).

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(ODB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int st = pclose(pipe);
    if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::vector<double> csv_row(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

// rows after the "# config" comment and the column header
std::vector<std::vector<double>> csv_body(const std::string& text) {
    const std::vector<std::string> ls = lines_of(text);
    REQUIRE(ls.size() >= 2);
    REQUIRE(ls[0].rfind("# config ", 0) == 0);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 2; i < ls.size(); ++i)
        if (!ls[i].empty()) rows.push_back(csv_row(ls[i]));
    return rows;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("no-such-command").code == 2);
    CHECK(run_cli("exact --m 4 --n 3 --p 0").code == 2);           // p outside (0,1)
    CHECK(run_cli("exact --m 4 --n 3 --p 1/2 --route bogus").code == 2);
    CHECK(run_cli("exact --n 3 --p 1/2").code == 2);               // --m required
    CHECK(run_cli("f2 --s-min -12").code == 2);                    // outside [-10, 8]
    CHECK(run_cli("gue cdf --n 2 --s-max 150").code == 2);
    CHECK(run_cli("simulate --p 2/3x").code == 2);                 // unparsable fraction
    CHECK(run_cli("exact --m 6 --n 5 --route brute --p 1/2").code == 2);  // brute cap
}

TEST_CASE("simulate emits a reproducible trace") {
    const std::string args = "simulate --x 3 --t 8 --p 1/2 --seed 42";
    const CmdResult a = run_cli(args);
    const CmdResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const std::vector<std::string> ls = lines_of(a.out);
    REQUIRE(ls.size() >= 2 + 4 * 9);  // comment, header, (x_max+1)*(t_max+1) rows
    CHECK(ls[0].rfind("# config ", 0) == 0);
    CHECK(ls[1] == "x,t,h");
    CHECK(a.out.find("-inf") != std::string::npos);  // sites ahead of the front
    // config echo is valid json
    const nlohmann::json cfg = nlohmann::json::parse(ls[0].substr(9));
    CHECK(cfg.at("cmd") == "simulate");
    CHECK(cfg.at("seed") == 42);

    const CmdResult c = run_cli("simulate --x 3 --t 8 --p 1/2 --seed 43");
    CHECK(c.out != a.out);
}

TEST_CASE("exact accepts fraction and decimal spellings identically") {
    const CmdResult frac = run_cli("exact --m 4 --n 3 --p 1/2 --route partition");
    const CmdResult dec = run_cli("exact --m 4 --n 3 --p 0.5 --route partition");
    CHECK(frac.code == 0);
    CHECK(frac.out == dec.out);

    const CmdResult quarter = run_cli("exact --m 3 --n 2 --p 0.25 --route partition");
    const nlohmann::json j = nlohmann::json::parse(quarter.out);
    CHECK(j.at("p") == "1/4");
    CHECK(j.at("cdf").at(0).at("prob") == "729/4096");  // (3/4)^6
}

TEST_CASE("exact json carries the full exact distribution") {
    const CmdResult r = run_cli("exact --m 4 --n 3 --p 1/2 --route partition");
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("m") == 4);
    CHECK(j.at("n") == 3);
    CHECK(j.at("mode") == "odb");
    CHECK(j.at("route") == "partition");
    CHECK(j.at("exact") == true);
    REQUIRE(j.at("cdf").size() == 5);
    for (int h = 0; h <= 4; ++h) {
        CHECK(j.at("cdf").at(h).at("h") == h);
        const std::string prob = j.at("cdf").at(h).at("prob");
        const auto q = odb::parse_fraction(prob);
        REQUIRE(q.has_value());
        CHECK(*q == odb::cdf_partition_sum(4, 3, odb::Rational(1, 2), h));
    }
}

TEST_CASE("exact routes agree through the cli") {
    const CmdResult brute = run_cli("exact --m 4 --n 3 --p 2/7 --route brute");
    const CmdResult part = run_cli("exact --m 4 --n 3 --p 2/7 --route partition");
    const nlohmann::json jb = nlohmann::json::parse(brute.out);
    const nlohmann::json jp = nlohmann::json::parse(part.out);
    CHECK(jb.at("route") == "brute");
    CHECK(jp.at("route") == "partition");
    CHECK(jb.at("cdf") == jp.at("cdf"));

    const CmdResult fred = run_cli("exact --m 4 --n 3 --p 2/7 --route fredholm");
    const nlohmann::json jf = nlohmann::json::parse(fred.out);
    CHECK(jf.at("exact") == false);
    for (int h = 0; h <= 4; ++h) {
        const double want = odb::to_double(odb::cdf_partition_sum(4, 3, odb::Rational(2, 7), h));
        CHECK(std::abs(double(jf.at("cdf").at(h).at("prob")) - want) < 1e-9);
    }
}

TEST_CASE("exact csv format") {
    const CmdResult r = run_cli("exact --m 3 --n 2 --p 1/2 --route partition --format csv");
    REQUIRE(r.code == 0);
    const std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 2 + 4);
    CHECK(ls[1] == "h,prob");
    const auto rows = csv_body(r.out);
    for (int h = 0; h <= 3; ++h) {
        CHECK(rows[std::size_t(h)][0] == h);
        const double want = odb::to_double(odb::cdf_partition_sum(3, 2, odb::Rational(1, 2), h));
        CHECK(std::abs(rows[std::size_t(h)][1] - want) < 1e-12);
    }
}

TEST_CASE("inhomogeneous route through the cli") {
    const CmdResult r = run_cli("exact --m 3 --p-list 1/5,1/2,2/3 --route inhomogeneous");
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("route") == "inhomogeneous");
    const std::vector<odb::Rational> ps = {odb::Rational(1, 5), odb::Rational(1, 2),
                                           odb::Rational(2, 3)};
    for (int h = 0; h <= 3; ++h) {
        const auto q = odb::parse_fraction(std::string(j.at("cdf").at(h).at("prob")));
        REQUIRE(q.has_value());
        CHECK(*q == odb::inhomo_cdf(3, ps, h));
    }
}

TEST_CASE("f2 grid matches the library on both routes") {
    const CmdResult nys = run_cli("f2 --s-min -2 --s-max 0 --step 1 --route nystrom");
    REQUIRE(nys.code == 0);
    const auto rows = csv_body(nys.out);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        REQUIRE(row.size() == 3);
        CHECK(std::abs(row[1] - odb::f2(row[0])) < 1e-12);
        CHECK(std::abs(row[2] - odb::f2_pdf(row[0])) < 1e-12);
    }
    const CmdResult pnl = run_cli("f2 --s-min -2 --s-max 0 --step 1 --route painleve");
    const auto prows = csv_body(pnl.out);
    REQUIRE(prows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(prows[i][1] - rows[i][1]) < 1e-8);
}

TEST_CASE("critical table matches the determinant route") {
    const CmdResult r = run_cli("critical-table --max-dh 5");
    REQUIRE(r.code == 0);
    const auto rows = csv_body(r.out);
    REQUIRE(rows.size() == 6);
    for (int dh = 0; dh <= 5; ++dh) {
        CHECK(rows[std::size_t(dh)][0] == dh);
        CHECK(rows[std::size_t(dh)][1] ==
              doctest::Approx(odb::critical_prob(dh)).epsilon(1e-12));
    }
}

TEST_CASE("gue subcommands") {
    const CmdResult cdf = run_cli("gue cdf --n 2 --s-min 0 --s-max 1 --step 0.5");
    REQUIRE(cdf.code == 0);
    for (const auto& row : csv_body(cdf.out))
        CHECK(std::abs(row[1] - odb::gue_cdf(2, row[0])) < 1e-12);

    const CmdResult mom = run_cli("gue moments --n 3 --max-j 4");
    REQUIRE(mom.code == 0);
    const auto mrows = csv_body(mom.out);
    REQUIRE(mrows.size() == 4);
    for (int j = 1; j <= 4; ++j)
        CHECK(std::abs(mrows[std::size_t(j - 1)][1] - odb::gue_moment(3, j)) < 1e-10);

    const CmdResult tab = run_cli("gue table2 --n-min 2 --n-max 3");
    REQUIRE(tab.code == 0);
    const auto trows = csv_body(tab.out);
    const std::vector<odb::GueTableRow> want = odb::gue_table2(2, 3);
    REQUIRE(trows.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        REQUIRE(trows[i].size() == 7);
        CHECK(trows[i][0] == want[i].n);
        CHECK(trows[i][1] == doctest::Approx(want[i].mean).epsilon(1e-12));
        CHECK(trows[i][2] == doctest::Approx(want[i].variance).epsilon(1e-12));
        CHECK(trows[i][5] == doctest::Approx(want[i].approx_mean).epsilon(1e-12));
    }
}

TEST_CASE("constants reports the critical flag") {
    const CmdResult r = run_cli("constants --alpha 0.25 --r 4");
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("config").at("cmd") == "constants");
    CHECK(j.at("critical") == true);
    CHECK(j.at("p") == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(j.at("p_c") == doctest::Approx(0.8).epsilon(1e-15));

    const CmdResult sub = run_cli("constants --alpha 0.333333 --r 1");
    const nlohmann::json js = nlohmann::json::parse(sub.out);
    CHECK(js.at("critical") == false);
    CHECK(double(js.at("c1")) > 0.0);
}

TEST_CASE("mc regime report through the cli") {
    const CmdResult r =
        run_cli("mc --regime finite_x --x 1 --t 30 --p 1/2 --n-samples 500 --seed 3");
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("regime") == "finite_x");
    CHECK(j.at("N") == 500);
    CHECK(j.at("ks").is_number());
    CHECK(j.at("pointwise").size() == 33);
}

TEST_CASE("rate grid is positive and matches the library") {
    const CmdResult r = run_cli("rate --p 0.8 --eps-min 0.2 --eps-max 0.4 --step 0.1");
    REQUIRE(r.code == 0);
    const auto rows = csv_body(r.out);
    REQUIRE(rows.size() == 3);
    double prev = 0.0;
    for (const auto& row : rows) {
        CHECK(row[1] > prev);
        CHECK(row[1] == doctest::Approx(odb::rate_gamma(row[0], 0.8)).epsilon(1e-12));
        prev = row[1];
    }
}

TEST_CASE("--out writes below ODB_OUTPUT_DIR") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "odb_cli_out_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const CmdResult direct = run_cli("critical-table --max-dh 2");
    const CmdResult filed = run_cli("critical-table --max-dh 2 --out probs.csv",
                                    "ODB_OUTPUT_DIR=" + dir.string() + " ");
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream f(dir / "probs.csv");
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == direct.out);
    fs::remove_all(dir);
}
