#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "odb/growth.hpp"

namespace odb {

// A batch of scalar samples plus everything needed to regenerate it.
// Every sampler is a pure function of (parameters, master_seed): sample i
// draws from its own counter-derived stream, so results do not depend on
// evaluation order or worker count.
struct SampleMeta {
    std::string regime;
    std::map<std::string, double> params;
    std::uint64_t master_seed = 0;
    int n_samples = 0;
};

struct SampleSet {
    SampleMeta meta;
    std::vector<double> values;
};

// N independent copies of h_t(x) under the given variant.
SampleSet sample_heights(Variant variant, int x, int t, double p, int N,
                         std::uint64_t master_seed);

// Two-sided Kolmogorov-Smirnov distance between the sample ECDF and cdf.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

// The Brownian last-passage functional
//   M_x = sup { f_0(t_0) + sum_i (f_i(t_i) - f_i(t_{i-1})) : 0<=t_0<=...<=t_x=1 }
// over x+1 independent walks of `steps` increments (Rademacher +-1/sqrt(steps)
// by default, Gaussian when requested), maximized by the forward DP
// g_i(k) = max_{j<=k} (g_{i-1}(j) - f_i(j)) + f_i(k).
SampleSet sample_brownian_m(int x, int steps, int N, std::uint64_t master_seed,
                            bool gaussian_increments = false);

// X = 2 max_{[0,1]} B - B(1) from a single discretized walk.
SampleSet sample_two_letter(int N, int steps, std::uint64_t master_seed);

// CDF of the density sqrt(2/pi) x^2 exp(-x^2/2) on x >= 0 (the 2M-N law).
double two_letter_cdf(double x);

// Largest eigenvalue of n x n Hermitian matrices with Gaussian weight
// exp(-tr(A^2)/2): diagonal N(0,1), off-diagonal re/im N(0,1/2).
// Eigenvalues by cyclic complex Jacobi rotations; ComputeError on a
// non-converging sweep cap.
SampleSet sample_gue_max_eig(int n, int N, std::uint64_t master_seed);

struct PointwiseEntry {
    double s = 0.0;
    double ecdf = 0.0;
    double theory = 0.0;
};

// Simulation-versus-theory summary for one scaling regime.
struct RegimeReport {
    std::string regime;
    std::map<std::string, double> params;
    int n_samples = 0;
    double ks = -1.0;            // KS regimes (universal, finite_x)
    double chi2 = -1.0;          // critical: Pearson chi^2 over dh bins
    double freq_full = -1.0;     // deterministic: empirical Prob(h = m)
    double theory_full = -1.0;   // deterministic: exact Prob(h = m)
    double slope_mc = -1.0;      // deterministic: -log(1-freq)/m
    double slope_theory = -1.0;  // deterministic: rate gamma
    std::vector<PointwiseEntry> pointwise;

    std::string to_json() const;
};

// regime in {universal, critical, deterministic, finite_x}; see the
// implementation header comments for the per-regime parameter keys.
RegimeReport regime_report(const std::string& regime,
                           const std::map<std::string, double>& params, int N,
                           std::uint64_t master_seed);

}  // namespace odb
