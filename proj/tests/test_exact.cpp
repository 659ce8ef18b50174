#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <odb/combinatorics.hpp>
#include <odb/errors.hpp>
#include <odb/exact.hpp>
#include <odb/paths.hpp>
#include <odb/rational.hpp>
#include <odb/table.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

using namespace odb;

namespace {

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

// Site-dependent analogue of brute_force_cdf: every cell of column j is an
// independent Bernoulli(p_list[j-1]); exact chain-length CDF by enumerating
// all 2^(mn) matrices.
std::vector<Rational> site_dependent_brute(int m, int n, const std::vector<Rational>& p_list) {
    std::vector<Rational> pmf(std::size_t(m) + 1, Rational(0));
    ZeroOneMatrix A = make_matrix(m, n);
    const int cells = m * n;
    for (long mask = 0; mask < (1L << cells); ++mask) {
        Rational w(1);
        for (int c = 0; c < cells; ++c) {
            const int i = c / n + 1;
            const int j = c % n + 1;
            const bool on = (mask >> c) & 1;
            A.at(i, j) = on ? 1 : 0;
            w *= on ? p_list[std::size_t(j - 1)] : Rational(1) - p_list[std::size_t(j - 1)];
        }
        pmf[std::size_t(longest_increasing(A, ChainMode::odb))] += w;
    }
    std::vector<Rational> cdf(pmf.size());
    Rational acc(0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        acc += pmf[k];
        cdf[k] = acc;
    }
    CHECK(cdf.back() == Rational(1));
    return cdf;
}

}  // namespace

TEST_CASE("symbol coefficients by hand at m = n = 1") {
    // (1+z)(1 - r/z)^{-1} = (1+z) sum_j r^j z^{-j}; at r = 1/2 the
    // coefficients of z^1, z^0, z^{-1} are 1, 3/2, 3/4.
    CHECK(phi_coeff_reference(1, 1, 0.5, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi_coeff_reference(1, 1, 0.5, 0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(phi_coeff_reference(1, 1, 0.5, -1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(phi_coeff_reference(1, 1, 0.5, 2) == 0.0);

    CHECK(phi_coeff_exact(1, 1, Rational(1, 2), 1) == Rational(1));
    CHECK(phi_coeff_exact(1, 1, Rational(1, 2), 0) == Rational(3, 2));
    CHECK(phi_coeff_exact(1, 1, Rational(1, 2), -1) == Rational(3, 4));

    SymbolSpec spec;
    spec.kind = SymbolSpec::Kind::phi;
    spec.m = 1;
    spec.n = 1;
    spec.r = 0.5;
    CHECK(std::abs(spec.eval({2.0, 0.0}) - std::complex<double>(4.0, 0.0)) < 1e-14);
    CHECK(spec.pole_radius() == 0.5);
    CHECK_FALSE(spec.excludes_minus_one());

    const SymbolCoeffs sc = symbol_coeffs(spec, -3, 2);
    CHECK(sc.converged);
    CHECK(sc.lo == -3);
    CHECK(rel_diff(sc.at(1), 1.0) < 1e-12);
    CHECK(rel_diff(sc.at(0), 1.5) < 1e-12);
    CHECK(rel_diff(sc.at(-1), 0.75) < 1e-12);
    CHECK(std::abs(sc.at(2)) < 1e-12);   // no z^k with k > n
    CHECK(sc.at(5) == 0.0);              // outside the computed window
}

TEST_CASE("quadrature coefficients match the binomial sum") {
    SymbolSpec spec;
    spec.kind = SymbolSpec::Kind::phi;
    spec.m = 3;
    spec.n = 4;
    spec.r = 1.0 / 3.0;
    const SymbolCoeffs sc = symbol_coeffs(spec, -6, 5);
    CHECK(sc.converged);
    for (int k = -6; k <= 5; ++k) {
        const double ref = phi_coeff_reference(3, 4, 1.0 / 3.0, k);
        CHECK(std::abs(sc.at(k) - ref) < 1e-10);
        const double ex = to_double(phi_coeff_exact(3, 4, Rational(1, 3), k));
        CHECK(rel_diff(ref, ex) < 1e-13);
    }
}

TEST_CASE("symbol coefficient guards") {
    SymbolSpec spec;
    spec.kind = SymbolSpec::Kind::phi;
    spec.m = 2;
    spec.n = 2;
    spec.r = 1.0 / 3.0;
    CHECK_THROWS_AS(symbol_coeffs(spec, 3, 1), ArgumentError);
    CHECK_THROWS_AS(symbol_coeffs(spec, -2, 2, 0.0, 500), ArgumentError);
    CHECK_THROWS_AS(symbol_coeffs(spec, -2, 2, 0.0, 128), ArgumentError);
    CHECK_THROWS_AS(symbol_coeffs(spec, -2, 2, 0.25), ArgumentError);  // radius <= pole

    SymbolSpec bad = spec;
    bad.kind = SymbolSpec::Kind::minus_over_plus;
    CHECK(bad.excludes_minus_one());
    CHECK_THROWS_AS(symbol_coeffs(bad, -2, 2, 1.5), ArgumentError);  // -1 must stay outside
    bad.r = 1.0;
    CHECK_THROWS_AS(symbol_coeffs(bad, -2, 2), ArgumentError);  // no admissible circle

    SymbolSpec inh;
    inh.kind = SymbolSpec::Kind::inhomogeneous;
    inh.m = 2;
    inh.r_list = {0.5, 0.25};
    CHECK(inh.pole_radius() == 1.0);
    CHECK_FALSE(inh.excludes_minus_one());
}

TEST_CASE("toeplitz determinant route agrees with the partition sum") {
    const int m = 6, n = 5;
    const Rational p(2, 5);
    for (int h = 0; h <= m; ++h) {
        const double det_route = cdf_toeplitz(m, n, 0.4, h);
        const double sum_route = to_double(cdf_partition_sum(m, n, p, h));
        CHECK(rel_diff(det_route, sum_route) < 1e-9);
    }

    const DistributionTable t = toeplitz_table(m, n, 0.4);
    CHECK(t.route == "toeplitz");
    CHECK_FALSE(t.exact);
    CHECK(t.h_max() == m);
    CHECK(t.value_at(m) == doctest::Approx(1.0).epsilon(1e-12));
    for (int h = 1; h <= m; ++h) CHECK(t.value_at(h) >= t.value_at(h - 1));

    CHECK_THROWS_AS(cdf_toeplitz(0, 3, 0.4, 1), ArgumentError);
    CHECK_THROWS_AS(cdf_toeplitz(3, 3, 1.2, 1), ArgumentError);
}

TEST_CASE("contour fredholm route agrees with brute force below the critical ratio") {
    const int m = 4, n = 3;
    const Rational p(1, 3);  // r = 1/2 < 1
    const DistributionTable brute = brute_force_cdf(m, n, p, ChainMode::odb);
    for (int h = 0; h <= m; ++h) {
        const double f = cdf_fredholm(m, n, to_double(p), h);
        CHECK(rel_diff(f, to_double(brute.exact_at(h))) < 1e-10);
    }
    // r >= 1 leaves no circle with r inside and -1 outside
    CHECK_THROWS_AS(cdf_fredholm(m, n, 0.5, 2), ComputeError);
    CHECK_THROWS_AS(cdf_fredholm(m, n, 0.6, 2), ComputeError);
}

TEST_CASE("exact-coefficient fredholm route covers every jump ratio") {
    const int m = 5, n = 4;
    for (const Rational& p : {Rational(1, 2), Rational(4, 5)}) {  // r = 1 and r = 4
        const DistributionTable brute = brute_force_cdf(m, n, p, ChainMode::odb);
        const FredholmTables tables = prepare_fredholm_exact(m, n, p, 0);
        CHECK(tables.m == m);
        CHECK(tables.n == n);
        CHECK(tables.h_min == 0);
        for (int h = 0; h <= m; ++h) {
            const double f = cdf_fredholm_exact(tables, h);
            const double want = to_double(brute.exact_at(h));
            // relative precision is lost exactly where the determinant value
            // sits many orders below its entries, so bound the absolute error
            CHECK(std::abs(f - want) < 5e-15 + 1e-11 * want);
        }
        const double want3 = to_double(brute.exact_at(3));
        CHECK(std::abs(cdf_fredholm_exact(m, n, p, 3) - want3) < 5e-15 + 1e-11 * want3);
    }

    const FredholmTables shifted = prepare_fredholm_exact(m, n, Rational(1, 2), 2);
    CHECK(cdf_fredholm_exact(shifted, 2) ==
          doctest::Approx(cdf_fredholm_exact(m, n, Rational(1, 2), 2)).epsilon(1e-13));
    CHECK_THROWS_AS(cdf_fredholm_exact(shifted, 1), ArgumentError);
}

TEST_CASE("inhomogeneous determinant specializes to the homogeneous model") {
    const int m = 4;
    const Rational p(1, 3);
    const std::vector<Rational> ps(3, p);
    for (int h = 0; h <= m; ++h)
        CHECK(inhomo_cdf(m, ps, h) == cdf_partition_sum(m, 3, p, h));
}

TEST_CASE("inhomogeneous determinant matches site-dependent enumeration") {
    const int m = 3, n = 3;
    const std::vector<Rational> ps = {Rational(1, 5), Rational(1, 2), Rational(2, 3)};
    const std::vector<Rational> oracle = site_dependent_brute(m, n, ps);
    for (int h = 0; h <= m; ++h) CHECK(inhomo_cdf(m, ps, h) == oracle[std::size_t(h)]);

    // symmetric function of the site probabilities
    const std::vector<Rational> perm = {Rational(2, 3), Rational(1, 5), Rational(1, 2)};
    for (int h = 0; h <= m; ++h) CHECK(inhomo_cdf(m, perm, h) == inhomo_cdf(m, ps, h));

    const DistributionTable t = inhomo_table(m, ps);
    CHECK(t.route == "inhomogeneous");
    CHECK(t.exact);
    CHECK(t.h_max() == m);
    CHECK(t.exact_at(m) == Rational(1));
    for (int h = 0; h <= m; ++h) CHECK(t.exact_at(h) == oracle[std::size_t(h)]);

    // double front end agrees when the probabilities are dyadic (exactly
    // representable), up to roundoff in the final conversion
    const std::vector<Rational> dy = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    const std::vector<double> dyd = {0.25, 0.5, 0.75};
    for (int h = 0; h <= m; ++h)
        CHECK(rel_diff(inhomo_cdf_value(m, dyd, h), to_double(inhomo_cdf(m, dy, h))) < 1e-14);

    CHECK(inhomo_cdf(m, ps, -1) == Rational(0));
    CHECK(inhomo_cdf(m, ps, m + 3) == Rational(1));
    CHECK_THROWS_AS(inhomo_cdf(0, ps, 1), ArgumentError);
    CHECK_THROWS_AS(inhomo_cdf(m, {}, 1), ArgumentError);
    CHECK_THROWS_AS(inhomo_cdf(m, {Rational(1), Rational(1, 2)}, 1), ArgumentError);
}

TEST_CASE("full-height probability equals the brute tail") {
    const DistributionTable brute = brute_force_cdf(4, 3, Rational(2, 7), ChainMode::odb);
    CHECK(prob_full_height(4, 3, Rational(2, 7)) == Rational(1) - brute.exact_at(3));
    CHECK(prob_full_height(6, 5, Rational(1, 2)) ==
          Rational(1) - cdf_partition_sum(6, 5, Rational(1, 2), 5));
    CHECK_THROWS_AS(prob_full_height(0, 3, Rational(1, 2)), ArgumentError);
}

TEST_CASE("distribution tables survive the json round trip") {
    const DistributionTable ex = partition_sum_table(4, 3, Rational(1, 3));
    const DistributionTable ex2 = table_from_json(table_to_json(ex));
    CHECK(ex2.m == ex.m);
    CHECK(ex2.n == ex.n);
    CHECK(ex2.mode == ex.mode);
    CHECK(ex2.route == ex.route);
    CHECK(ex2.exact);
    CHECK(ex2.p_exact == ex.p_exact);
    REQUIRE(ex2.h_max() == ex.h_max());
    for (int h = 0; h <= ex.h_max(); ++h) {
        CHECK(ex2.exact_at(h) == ex.exact_at(h));
        CHECK(ex2.value_at(h) == ex.value_at(h));
    }

    const DistributionTable num = toeplitz_table(5, 4, 0.3);
    const DistributionTable num2 = table_from_json(table_to_json(num));
    CHECK_FALSE(num2.exact);
    CHECK(num2.route == num.route);
    CHECK(num2.p_value == num.p_value);
    REQUIRE(num2.h_max() == num.h_max());
    for (int h = 0; h <= num.h_max(); ++h) CHECK(num2.value_at(h) == num.value_at(h));
}

TEST_CASE("three exact routes agree digit for digit") {
    const int m = 5, n = 4;
    const Rational p(3, 7);
    const DistributionTable brute = brute_force_cdf(m, n, p, ChainMode::odb);
    const std::vector<Rational> ps(std::size_t(n), p);
    for (int h = 0; h <= m; ++h) {
        const Rational want = brute.exact_at(h);
        CHECK(cdf_partition_sum(m, n, p, h) == want);
        CHECK(inhomo_cdf(m, ps, h) == want);
    }
}
