#pragma once

#include <vector>

#include "odb/errors.hpp"

namespace odb {

// Saddle-point constants of the growth model at aspect ratio alpha = n/m and
// jump ratio r = p/(1-p). Fields v, b, beta need alpha*r < 1 and are NaN
// otherwise (the critical and supercritical regimes do not use them).
struct RegimeConstants {
    double alpha = 0, r = 0;
    double p = 0, p_c = 0;     // r/(1+r) and 1/(1+alpha)
    double c = 0;              // limiting height per row, h ~ c*m
    double v = 0, b = 0, beta = 0;
    double c1 = 0, c2 = 0;     // time normalization: h ~ c1*t + c2*t^{1/3}*chi
    double s_scale = 0;        // critical-regime scale S*sqrt(m) = sqrt(2/(alpha*(1+alpha)))
    double sigma2 = 0;         // p*(1-p)
    bool critical = false;     // alpha*r == 1
};
RegimeConstants regime_constants(double alpha, double r);

// Airy function on [-20, 200], absolute error <= 1e-12.
double airy_ai(double x);
double airy_ai_prime(double x);

// Tracy-Widom F2 and its density on [-10, 8].
double f2(double s);           // Airy-kernel Fredholm determinant (Nystrom)
double f2_pdf(double s);
double f2_painleve(double s);  // Painleve II route (independent oracle)
double f2_painleve_pdf(double s);

struct DistStats {
    double mean = 0, sd = 0, skewness = 0, excess_kurtosis = 0;
};
DistStats f2_stats();  // moments of the Painleve-route density

// Tail probability Prob(height deficit >= delta_h) in the critical regime;
// the delta_h x delta_h determinant of the confluent kernel.
double critical_prob(int delta_h);
// Tabulated closed forms (rational + pi powers) for delta_h = 0..9.
double critical_prob_closed_form(int delta_h);

// Largest-eigenvalue law of the n x n GUE in the s/sqrt(2) normalization.
double gue_cdf(int n, double s);   // 1 <= n <= 12
double gue_pdf(int n, double s);
double gue_moment(int n, int j);   // integral of s^j against the density
double gue_cdf2_closed(double s);  // printed closed form for n = 2

struct GueApprox {
    double mean = 0, variance = 0;
};
GueApprox gue_approx(int n);  // 2*sqrt(n) + mu_TW/n^{1/6}, var_TW/n^{1/3}

struct GueTableRow {
    int n = 0;
    double mean = 0, variance = 0, skewness = 0, excess_kurtosis = 0;
    double approx_mean = 0, approx_variance = 0;
};
std::vector<GueTableRow> gue_table2(int n_min = 2, int n_max = 9);

// Deterministic-regime rate: -log Prob(height < full) ~ m * gamma(eps).
double rate_gamma(double epsilon, double p);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace odb
