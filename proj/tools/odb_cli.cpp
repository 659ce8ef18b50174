// Command-line front end: every computation in the library as a subcommand
// with machine-readable CSV/JSON output. Exit codes: 0 success, 2 argument
// error, 1 numeric-convergence failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "odb/asymptotics.hpp"
#include "odb/combinatorics.hpp"
#include "odb/exact.hpp"
#include "odb/growth.hpp"
#include "odb/montecarlo.hpp"
#include "odb/paths.hpp"

namespace {

using odb::ArgumentError;
using odb::Rational;

// Probabilities arrive as "a/b" fractions or plain decimal literals; both
// parse to exact rationals (decimal digits over a power of ten), so exact
// routes never see float rounding. Exponent notation is refused.
Rational parse_probability(const std::string& s) {
    if (auto q = odb::parse_fraction(s)) return *q;
    const auto dot = s.find('.');
    if (dot == std::string::npos || s.find_first_of("eE") != std::string::npos ||
        s.find('.', dot + 1) != std::string::npos)
        throw ArgumentError("cannot parse probability '" + s + "' (use a/b or a decimal)");
    std::string digits = s;
    digits.erase(dot, 1);
    if (digits.empty()) throw ArgumentError("cannot parse probability '" + s + "'");
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ArgumentError("cannot parse probability '" + s + "'");
    Rational num(digits, 10);  // explicit base: leading zeros must not mean octal
    Rational den = odb::rational_pow(Rational(10), long(s.size() - dot - 1));
    Rational out = num / den;
    mpq_canonicalize(out.get_mpq_t());
    return out;
}

std::vector<Rational> parse_probability_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_probability(item));
    if (out.empty()) throw ArgumentError("empty probability list");
    return out;
}

// --out is relative to $ODB_OUTPUT_DIR when that is set; empty means stdout.
void write_output(const std::string& out_flag, const std::string& text) {
    if (out_flag.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path p(out_flag);
    const char* dir = std::getenv("ODB_OUTPUT_DIR");
    if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
    std::ofstream f(p);
    if (!f) throw ArgumentError("cannot open output file " + p.string());
    f << text;
}

// One-line config echo placed at the top of every CSV so a run can be
// reproduced from its own output.
std::string config_comment(const nlohmann::json& cfg) { return "# config " + cfg.dump() + "\n"; }

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

std::string table_csv(const odb::DistributionTable& t, const nlohmann::json& cfg) {
    std::string out = config_comment(cfg);
    out += "h,prob\n";
    for (int h = 0; h <= t.h_max(); ++h)
        out += std::to_string(h) + "," + format_double(t.value_at(h)) + "\n";
    return out;
}

struct ExactArgs {
    int m = 0, n = 0;
    std::string p = "1/2";
    std::string p_list;
    std::string route = "partition";
    std::string format = "json";
    std::string out;
};

void run_exact(const ExactArgs& a) {
    nlohmann::json cfg = {{"cmd", "exact"}, {"route", a.route}, {"format", a.format}};
    odb::DistributionTable table;
    if (a.route == "inhomogeneous" || !a.p_list.empty()) {
        const std::vector<Rational> ps = parse_probability_list(a.p_list);
        cfg["m"] = a.m;
        cfg["p_list"] = a.p_list;
        table = odb::inhomo_table(a.m, ps);
    } else {
        const Rational p = parse_probability(a.p);
        cfg["m"] = a.m;
        cfg["n"] = a.n;
        cfg["p"] = odb::to_fraction_string(p);
        if (a.route == "brute") {
            table = odb::brute_force_cdf(a.m, a.n, p, odb::ChainMode::odb);
        } else if (a.route == "partition") {
            table = odb::partition_sum_table(a.m, a.n, p);
        } else if (a.route == "toeplitz") {
            if (a.m > 80)
                std::cerr << "note: Toeplitz determinants above h ~ 80 lose double-precision"
                             " conditioning; prefer --route fredholm\n";
            table = odb::toeplitz_table(a.m, a.n, odb::to_double(p));
        } else if (a.route == "fredholm") {
            table.m = a.m;
            table.n = a.n;
            table.route = "fredholm";
            table.exact = false;
            table.p_exact = p;
            table.p_value = odb::to_double(p);
            const double r = table.p_value / (1.0 - table.p_value);
            if (r < 1.0) {
                for (int h = 0; h <= a.m; ++h)
                    table.cdf_value.push_back(odb::cdf_fredholm(a.m, a.n, table.p_value, h));
            } else {
                const odb::FredholmTables tabs = odb::prepare_fredholm_exact(a.m, a.n, p, 0);
                for (int h = 0; h <= a.m; ++h)
                    table.cdf_value.push_back(odb::cdf_fredholm_exact(tabs, h));
            }
        } else {
            throw ArgumentError("unknown exact route " + a.route);
        }
    }
    if (a.format == "json")
        write_output(a.out, odb::table_to_json(table) + "\n");
    else if (a.format == "csv")
        write_output(a.out, table_csv(table, cfg));
    else
        throw ArgumentError("unknown format " + a.format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corner-growth height model: simulation, exact laws, limit laws"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads,
                   "worker hint (0 = auto); results never depend on it");

    // ---- simulate ----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "evolve the growth automaton, emit x,t,h CSV");
    std::string sim_variant = "odb", sim_p = "1/2", sim_plist, sim_out;
    int sim_x = 10, sim_t = 20;
    std::uint64_t sim_seed = 1;
    sim->add_option("--variant", sim_variant, "odb|weak|strict|inhomogeneous");
    sim->add_option("--x", sim_x, "rightmost site")->check(CLI::NonNegativeNumber);
    sim->add_option("--t", sim_t, "number of steps")->check(CLI::NonNegativeNumber);
    sim->add_option("--p", sim_p, "mark probability (a/b or decimal)");
    sim->add_option("--p-list", sim_plist, "per-site probabilities, comma separated");
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--out", sim_out, "output path (default stdout)");
    sim->callback([&] {
        std::vector<double> probs;
        nlohmann::json cfg = {{"cmd", "simulate"}, {"variant", sim_variant}, {"x", sim_x},
                              {"t", sim_t},        {"seed", sim_seed}};
        if (!sim_plist.empty()) {
            for (const Rational& q : parse_probability_list(sim_plist))
                probs.push_back(odb::to_double(q));
            cfg["p_list"] = sim_plist;
        } else {
            probs.push_back(odb::to_double(parse_probability(sim_p)));
            cfg["p"] = sim_p;
        }
        const odb::HeightTrace trace =
            odb::simulate(odb::variant_from_name(sim_variant), sim_x, sim_t, probs, sim_seed);
        write_output(sim_out, config_comment(cfg) + odb::trace_to_csv(trace));
    });

    // ---- exact -------------------------------------------------------------
    auto* ex = app.add_subcommand("exact", "exact finite-size height distribution");
    ExactArgs ea;
    ex->add_option("--m", ea.m, "lightcone rows (t - x)")->required();
    ex->add_option("--n", ea.n, "lightcone cols (x + 1)");
    ex->add_option("--p", ea.p, "mark probability");
    ex->add_option("--p-list", ea.p_list, "site probabilities (inhomogeneous route)");
    ex->add_option("--route", ea.route, "brute|partition|toeplitz|fredholm|inhomogeneous");
    ex->add_option("--format", ea.format, "json|csv");
    ex->add_option("--out", ea.out, "output path");
    ex->callback([&] { run_exact(ea); });

    // ---- f2 ----------------------------------------------------------------
    auto* f2c = app.add_subcommand("f2", "Tracy-Widom F2 CDF and density grid");
    double f2_lo = -5.0, f2_hi = 2.0, f2_step = 0.25;
    std::string f2_route = "painleve", f2_out;
    f2c->add_option("--s-min", f2_lo);
    f2c->add_option("--s-max", f2_hi);
    f2c->add_option("--step", f2_step)->check(CLI::PositiveNumber);
    f2c->add_option("--route", f2_route, "painleve|nystrom");
    f2c->add_option("--out", f2_out, "output path");
    f2c->callback([&] {
        if (f2_route != "painleve" && f2_route != "nystrom")
            throw ArgumentError("unknown f2 route " + f2_route);
        nlohmann::json cfg = {{"cmd", "f2"},      {"route", f2_route}, {"s_min", f2_lo},
                              {"s_max", f2_hi},   {"step", f2_step}};
        std::string out = config_comment(cfg) + "s,F2(s),f2(s)\n";
        for (double s = f2_lo; s <= f2_hi + 1e-12; s += f2_step) {
            const double F = f2_route == "painleve" ? odb::f2_painleve(s) : odb::f2(s);
            const double d = f2_route == "painleve" ? odb::f2_painleve_pdf(s) : odb::f2_pdf(s);
            out += format_double(s) + "," + format_double(F) + "," + format_double(d) + "\n";
        }
        write_output(f2_out, out);
    });

    // ---- critical-table ----------------------------------------------------
    auto* crit = app.add_subcommand("critical-table",
                                    "critical-regime deficit probabilities Prob(dh >= k)");
    int crit_max = 9;
    std::string crit_out;
    crit->add_option("--max-dh", crit_max)->check(CLI::NonNegativeNumber);
    crit->add_option("--out", crit_out, "output path");
    crit->callback([&] {
        nlohmann::json cfg = {{"cmd", "critical-table"}, {"max_dh", crit_max}};
        std::string out = config_comment(cfg) + "dh,prob\n";
        for (int dh = 0; dh <= crit_max; ++dh)
            out += std::to_string(dh) + "," + format_double(odb::critical_prob(dh)) + "\n";
        write_output(crit_out, out);
    });

    // ---- gue ---------------------------------------------------------------
    auto* gue = app.add_subcommand("gue", "largest-eigenvalue law of the n x n GUE");
    gue->require_subcommand(1);
    auto* gcdf = gue->add_subcommand("cdf", "CDF on an s grid");
    int gcdf_n = 2;
    double gcdf_lo = -3.0, gcdf_hi = 6.0, gcdf_step = 0.25;
    std::string gcdf_out;
    gcdf->add_option("--n", gcdf_n)->required();
    gcdf->add_option("--s-min", gcdf_lo);
    gcdf->add_option("--s-max", gcdf_hi);
    gcdf->add_option("--step", gcdf_step)->check(CLI::PositiveNumber);
    gcdf->add_option("--out", gcdf_out, "output path");
    gcdf->callback([&] {
        nlohmann::json cfg = {{"cmd", "gue cdf"},   {"n", gcdf_n},       {"s_min", gcdf_lo},
                              {"s_max", gcdf_hi},   {"step", gcdf_step}};
        std::string out = config_comment(cfg) + "s,F\n";
        for (double s = gcdf_lo; s <= gcdf_hi + 1e-12; s += gcdf_step)
            out += format_double(s) + "," + format_double(odb::gue_cdf(gcdf_n, s)) + "\n";
        write_output(gcdf_out, out);
    });
    auto* gmom = gue->add_subcommand("moments", "raw moments of the largest eigenvalue");
    int gmom_n = 2, gmom_max = 4;
    std::string gmom_out;
    gmom->add_option("--n", gmom_n)->required();
    gmom->add_option("--max-j", gmom_max);
    gmom->add_option("--out", gmom_out, "output path");
    gmom->callback([&] {
        nlohmann::json cfg = {{"cmd", "gue moments"}, {"n", gmom_n}, {"max_j", gmom_max}};
        std::string out = config_comment(cfg) + "j,moment\n";
        for (int j = 1; j <= gmom_max; ++j)
            out += std::to_string(j) + "," + format_double(odb::gue_moment(gmom_n, j)) + "\n";
        write_output(gmom_out, out);
    });
    auto* gtab = gue->add_subcommand("table2", "central-moment table with tail approximations");
    int gtab_lo = 2, gtab_hi = 9;
    std::string gtab_out;
    gtab->add_option("--n-min", gtab_lo);
    gtab->add_option("--n-max", gtab_hi);
    gtab->add_option("--out", gtab_out, "output path");
    gtab->callback([&] {
        nlohmann::json cfg = {{"cmd", "gue table2"}, {"n_min", gtab_lo}, {"n_max", gtab_hi}};
        std::string out = config_comment(cfg) + "n,mean,var,skew,kurt,approx_mean,approx_var\n";
        for (const odb::GueTableRow& r : odb::gue_table2(gtab_lo, gtab_hi))
            out += std::to_string(r.n) + "," + format_double(r.mean) + "," +
                   format_double(r.variance) + "," + format_double(r.skewness) + "," +
                   format_double(r.excess_kurtosis) + "," + format_double(r.approx_mean) + "," +
                   format_double(r.approx_variance) + "\n";
        write_output(gtab_out, out);
    });

    // ---- constants ---------------------------------------------------------
    auto* cons = app.add_subcommand("constants", "saddle-point constants for a regime");
    double cons_alpha = 1.0, cons_r = 1.0;
    std::string cons_out;
    cons->add_option("--alpha", cons_alpha, "aspect ratio n/m")->required();
    cons->add_option("--r", cons_r, "jump ratio p/(1-p)")->required();
    cons->add_option("--out", cons_out, "output path");
    cons->callback([&] {
        const odb::RegimeConstants rc = odb::regime_constants(cons_alpha, cons_r);
        nlohmann::json j = {{"config", {{"cmd", "constants"}, {"alpha", cons_alpha}, {"r", cons_r}}},
                            {"alpha", rc.alpha},
                            {"r", rc.r},
                            {"p", rc.p},
                            {"p_c", rc.p_c},
                            {"c", rc.c},
                            {"v", rc.v},
                            {"b", rc.b},
                            {"beta", rc.beta},
                            {"c1", rc.c1},
                            {"c2", rc.c2},
                            {"s_scale", rc.s_scale},
                            {"sigma2", rc.sigma2},
                            {"critical", rc.critical}};
        write_output(cons_out, j.dump(2) + "\n");
    });

    // ---- mc ----------------------------------------------------------------
    auto* mc = app.add_subcommand("mc", "Monte Carlo regime report (JSON)");
    std::string mc_regime = "finite_x", mc_p = "1/2", mc_pc, mc_out;
    int mc_x = 1, mc_t = 1000, mc_N = 10000;
    std::uint64_t mc_seed = 1;
    mc->add_option("--regime", mc_regime, "universal|critical|deterministic|finite_x");
    mc->add_option("--x", mc_x);
    mc->add_option("--t", mc_t);
    mc->add_option("--p", mc_p);
    mc->add_option("--p-c", mc_pc, "deterministic regime target density");
    mc->add_option("--n-samples", mc_N)->check(CLI::PositiveNumber);
    mc->add_option("--seed", mc_seed);
    mc->add_option("--out", mc_out, "output path");
    mc->callback([&] {
        std::map<std::string, double> params;
        params["p"] = odb::to_double(parse_probability(mc_p));
        params["x"] = mc_x;
        params["t"] = mc_t;
        if (!mc_pc.empty()) params["p_c"] = odb::to_double(parse_probability(mc_pc));
        const odb::RegimeReport rep = odb::regime_report(mc_regime, params, mc_N, mc_seed);
        write_output(mc_out, rep.to_json() + "\n");
    });

    // ---- rate --------------------------------------------------------------
    auto* rate = app.add_subcommand("rate", "deterministic-regime decay rate gamma(eps)");
    std::string rate_p = "4/5", rate_out;
    double rate_lo = 0.1, rate_hi = 1.0, rate_step = 0.1;
    rate->add_option("--p", rate_p, "mark probability");
    rate->add_option("--eps-min", rate_lo);
    rate->add_option("--eps-max", rate_hi);
    rate->add_option("--step", rate_step)->check(CLI::PositiveNumber);
    rate->add_option("--out", rate_out, "output path");
    rate->callback([&] {
        const double p = odb::to_double(parse_probability(rate_p));
        nlohmann::json cfg = {{"cmd", "rate"},     {"p", rate_p},       {"eps_min", rate_lo},
                              {"eps_max", rate_hi}, {"step", rate_step}};
        std::string out = config_comment(cfg) + "eps,gamma\n";
        for (double e = rate_lo; e <= rate_hi + 1e-12; e += rate_step)
            out += format_double(e) + "," + format_double(odb::rate_gamma(e, p)) + "\n";
        write_output(rate_out, out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const odb::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const odb::ComputeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
