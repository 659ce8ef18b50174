#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <odb/asymptotics.hpp>
#include <odb/errors.hpp>
#include <odb/montecarlo.hpp>
#include <odb/paths.hpp>
#include <odb/rational.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

using namespace odb;

namespace {

double normal_cdf(double s) { return 0.5 * std::erfc(-s / std::sqrt(2.0)); }

// CDF of the density sqrt(2/pi) x^2 exp(-x^2/2) in closed form
double two_letter_cdf_reference(double x) {
    if (x <= 0.0) return 0.0;
    return std::erf(x / std::sqrt(2.0)) -
           std::sqrt(2.0 / std::acos(-1.0)) * x * std::exp(-x * x / 2.0);
}

}  // namespace

TEST_CASE("samplers are pure functions of seed and index") {
    const SampleSet a = sample_heights(Variant::odb, 1, 4, 0.5, 100, 99);
    const SampleSet b = sample_heights(Variant::odb, 1, 4, 0.5, 100, 99);
    REQUIRE(a.values.size() == 100);
    CHECK(a.meta.n_samples == 100);
    CHECK(a.meta.master_seed == 99);
    CHECK(a.values == b.values);

    // counter-keyed streams: a shorter batch is a prefix of a longer one
    const SampleSet big = sample_heights(Variant::odb, 1, 4, 0.5, 1000, 99);
    for (int i = 0; i < 100; ++i) CHECK(a.values[std::size_t(i)] == big.values[std::size_t(i)]);

    const SampleSet c = sample_heights(Variant::odb, 1, 4, 0.5, 100, 100);
    CHECK(a.values != c.values);

    const SampleSet g1 = sample_gue_max_eig(3, 50, 7);
    const SampleSet g2 = sample_gue_max_eig(3, 500, 7);
    for (int i = 0; i < 50; ++i) CHECK(g1.values[std::size_t(i)] == g2.values[std::size_t(i)]);
}

TEST_CASE("height samples follow the exact finite distribution") {
    // x = 1, t = 4: the height law is the 3 x 2 chain-length distribution
    const DistributionTable brute = brute_force_cdf(3, 2, Rational(1, 2), ChainMode::odb);
    const SampleSet s = sample_heights(Variant::odb, 1, 4, 0.5, 20000, 20260815);
    for (int h = 0; h <= 3; ++h) {
        double below = 0.0;
        for (double v : s.values) below += v <= double(h) ? 1.0 : 0.0;
        below /= double(s.values.size());
        CHECK(std::abs(below - to_double(brute.exact_at(h))) < 0.015);
    }
}

TEST_CASE("ks distance on worked examples") {
    const auto uniform = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
    CHECK(ks_distance({0.25, 0.75}, uniform) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(ks_distance({0.5}, uniform) == doctest::Approx(0.5).epsilon(1e-15));
    // duplicates: at 0.9 the ECDF jumps from 1/3 to 1, so the gap below is
    // 0.9 - 1/3
    CHECK(ks_distance({0.9, 0.9, 0.3}, uniform) ==
          doctest::Approx(0.9 - 1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("two-letter limit law cdf") {
    CHECK(two_letter_cdf(0.0) == 0.0);
    CHECK(two_letter_cdf(-1.0) == 0.0);
    CHECK(two_letter_cdf(12.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : {0.3, 0.7, 1.0, 1.6, 2.4, 3.5})
        CHECK(two_letter_cdf(x) == doctest::Approx(two_letter_cdf_reference(x)).epsilon(1e-12));
    double prev = 0.0;
    for (double x = 0.0; x <= 5.0; x += 0.1) {
        CHECK(two_letter_cdf(x) >= prev);
        prev = two_letter_cdf(x);
    }
}

TEST_CASE("discretized walk reproduces the two-letter law") {
    const SampleSet s = sample_two_letter(20000, 4096, 11);
    CHECK(ks_distance(s.values, two_letter_cdf) < 0.03);
    CHECK_THROWS_AS(sample_two_letter(10, 500, 1), ArgumentError);
}

TEST_CASE("brownian functional at x = 0 is a standard gaussian") {
    for (bool gaussian : {false, true}) {
        const SampleSet s = sample_brownian_m(0, 2000, 20000, 4242, gaussian);
        double mean = 0.0, sq = 0.0;
        for (double v : s.values) {
            mean += v;
            sq += v * v;
        }
        mean /= double(s.values.size());
        sq /= double(s.values.size());
        CHECK(std::abs(mean) < 0.03);
        CHECK(std::abs(sq - 1.0) < 0.04);
        CHECK(ks_distance(s.values, normal_cdf) < (gaussian ? 0.02 : 0.03));
    }
    CHECK_THROWS_AS(sample_brownian_m(0, 500, 10, 1), ArgumentError);
    CHECK_THROWS_AS(sample_brownian_m(-1, 2000, 10, 1), ArgumentError);
}

TEST_CASE("gue sampler matches the exact eigenvalue law") {
    const SampleSet g2 = sample_gue_max_eig(2, 20000, 5151);
    CHECK(ks_distance(g2.values, [](double s) { return gue_cdf(2, s); }) < 0.02);
    const SampleSet g3 = sample_gue_max_eig(3, 20000, 5152);
    CHECK(ks_distance(g3.values, [](double s) { return gue_cdf(3, s); }) < 0.02);
    CHECK_THROWS_AS(sample_gue_max_eig(1, 10, 1), ArgumentError);
    CHECK_THROWS_AS(sample_gue_max_eig(9, 10, 1), ArgumentError);
}

TEST_CASE("finite-x regime report") {
    const RegimeReport r =
        regime_report("finite_x", {{"x", 2}, {"t", 40}, {"p", 0.5}}, 2000, 31);
    CHECK(r.regime == "finite_x");
    CHECK(r.n_samples == 2000);
    CHECK(r.params.at("x") == 2.0);
    CHECK(r.params.at("t") == 40.0);
    CHECK(r.ks >= 0.0);
    CHECK(r.ks <= 1.0);
    REQUIRE(r.pointwise.size() == 33);  // s = -5..3 step 0.25
    for (const PointwiseEntry& e : r.pointwise) {
        CHECK(e.theory >= 0.0);
        CHECK(e.theory <= 1.0);
        CHECK(e.ecdf >= 0.0);
        CHECK(e.ecdf <= 1.0);
    }
    const nlohmann::json j = nlohmann::json::parse(r.to_json());
    CHECK(j.at("regime") == "finite_x");
    CHECK(j.at("N") == 2000);
    CHECK(j.contains("ks"));
    CHECK(j.at("pointwise").size() == 33);
}

TEST_CASE("universal regime report") {
    const RegimeReport r =
        regime_report("universal", {{"x", 30}, {"t", 120}, {"p", 0.5}}, 800, 32);
    CHECK(r.regime == "universal");
    CHECK(r.ks >= 0.0);
    CHECK(r.ks <= 1.0);
    REQUIRE(r.pointwise.size() == 45);  // s = -6..5 step 0.25
    // t = 2x + 1 makes the lightcone square: alpha r = 1, no subcritical
    // normalization exists
    CHECK_THROWS_AS(regime_report("universal", {{"x", 29}, {"t", 59}, {"p", 0.5}}, 100, 1),
                    ArgumentError);
}

TEST_CASE("critical regime report") {
    const RegimeReport r = regime_report("critical", {{"t", 60}, {"p", 0.5}}, 2000, 33);
    CHECK(r.regime == "critical");
    CHECK(r.chi2 >= 0.0);
    CHECK(r.ks >= 0.0);
    CHECK(r.pointwise.size() >= 3);
    double mass = 0.0;
    for (const PointwiseEntry& e : r.pointwise) mass = std::max(mass, e.theory);
    CHECK(mass <= 1.0);
}

TEST_CASE("deterministic regime report") {
    const RegimeReport r =
        regime_report("deterministic", {{"p", 0.8}, {"p_c", 0.6}, {"t", 50}}, 1000, 34);
    CHECK(r.regime == "deterministic");
    CHECK(r.freq_full >= 0.0);
    CHECK(r.freq_full <= 1.0);
    CHECK(r.theory_full > 0.0);
    CHECK(r.theory_full < 1.0);
    CHECK(r.slope_theory > 0.0);
    // needs p above the critical density
    CHECK_THROWS_AS(
        regime_report("deterministic", {{"p", 0.5}, {"p_c", 0.6}, {"t", 50}}, 100, 1),
        ArgumentError);
    CHECK_THROWS_AS(regime_report("nonsense", {{"t", 10}}, 100, 1), ArgumentError);
}
