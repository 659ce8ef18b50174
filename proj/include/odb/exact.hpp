#pragma once

#include <complex>
#include <vector>

#include "odb/rational.hpp"
#include "odb/table.hpp"

namespace odb {

// Laurent symbols whose Fourier coefficients feed the Toeplitz and
// Fredholm determinants. r is the jump ratio p/(1-p).
struct SymbolSpec {
    enum class Kind {
        phi,              // (1+z)^n (1 - r/z)^{-m}
        minus_over_plus,  // (1 - r/z)^{-m} (1+z)^{-n}
        plus_over_minus,  // (1+z)^n (1 - r/z)^{+m}
        inhomogeneous,    // (1 - 1/z)^{-m} prod_j (1 + r_j z)
    };
    Kind kind = Kind::phi;
    int n = 0;
    int m = 0;
    double r = 0.0;
    std::vector<double> r_list;  // inhomogeneous only

    std::complex<double> eval(std::complex<double> z) const;
    // circle radius must exceed this (inner singularity)
    double pole_radius() const;
    // true when the (1+z)^{-n} factor forces the circle inside |z|=1
    bool excludes_minus_one() const { return kind == Kind::minus_over_plus && n > 0; }
};

struct SymbolCoeffs {
    int lo = 0;
    std::vector<double> c;  // c[k] = coefficient of z^{lo+k}
    bool converged = true;  // doubling quad_points moved nothing by > 1e-10 rel
    double max_rel_change = 0.0;

    double at(int idx) const {
        if (idx < lo || idx >= lo + int(c.size())) return 0.0;
        return c[std::size_t(idx - lo)];
    }
};

// Fourier coefficients for indices lo..hi by trapezoidal quadrature on the
// circle |z| = radius (radius <= 0 picks the default rule). quad_points must
// be a power of two >= 256; the result carries a self-convergence flag from
// an internal doubling check.
SymbolCoeffs symbol_coeffs(const SymbolSpec& spec, int lo, int hi, double radius = 0.0,
                           int quad_points = 512);

// Reference value of the homogeneous symbol coefficient phi_k by its finite
// binomial sum (oracle for the quadrature).
double phi_coeff_reference(int m, int n, double r, int k);
Rational phi_coeff_exact(int m, int n, const Rational& r, int k);

// Prob(height <= h) = (1-p)^{mn} D_h(phi) with the h x h Toeplitz
// determinant evaluated by LU at double precision (log-scaled).
double cdf_toeplitz(int m, int n, double p, int h);
DistributionTable toeplitz_table(int m, int n, double p);

// Same probability as det(I - K_h) over the (m-h) x (m-h) block of the
// Fredholm kernel, coefficients by contour quadrature. Needs r < 1 so a
// circle can hold r inside and -1 outside; r >= 1 throws ComputeError.
double cdf_fredholm(int m, int n, double p, int h);

// Exact-coefficient route to the same Fredholm determinant, valid for every
// r > 0. The two coefficient families are h-independent, so one preparation
// at h_min serves every threshold h >= h_min. Entries are stored tilted by a
// balancing diagonal similarity (determinant-invariant) and split into
// mantissa/exponent so the double-precision assembly cannot overflow.
struct FredholmTables {
    int m = 0, n = 0;
    int h_min = 0;
    int i_lo = 0, i_hi = 0;       // coefficient index window
    std::vector<double> a_mant;   // a[i - i_lo]
    std::vector<long> a_exp2;
    std::vector<double> b_mant;   // b[i - i_lo] holds coefficient b_{-i}, i <= m
    std::vector<long> b_exp2;
};
FredholmTables prepare_fredholm_exact(int m, int n, const Rational& p, int h_min);
double cdf_fredholm_exact(const FredholmTables& tables, int h);
double cdf_fredholm_exact(int m, int n, const Rational& p, int h);

// Site-dependent probabilities p_list[j], j = 0..x: exact rational
// Prob(height <= h) = prod_j (1-p_j)^m * D_h of the inhomogeneous symbol.
Rational inhomo_cdf(int m, const std::vector<Rational>& p_list, int h);
double inhomo_cdf_value(int m, const std::vector<double>& p_list, int h);
DistributionTable inhomo_table(int m, const std::vector<Rational>& p_list);

// Exact Prob(height = m) (a full-length path exists); closed form
// sum_{j<n} C(m+j-1, j) p^m q^j, cheap at sizes where the partition sum
// is out of reach.
Rational prob_full_height(int m, int n, const Rational& p);

}  // namespace odb
