#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "odb/asymptotics.hpp"
#include "odb/exact.hpp"
#include "odb/montecarlo.hpp"
#include "odb/rng.hpp"

namespace odb {

namespace {

constexpr int kJacobiSweepCap = 60;
constexpr double kJacobiOffTol = 1e-10;
constexpr int kMinWalkSteps = 1000;

// Sequential splitmix64 stream; the seed itself comes from the counter hash,
// so distinct samples get decorrelated streams.
struct Stream {
    std::uint64_t state;
    explicit Stream(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        return mix64(state);
    }
    double uniform() { return u01(next()); }
    double normal() {
        const std::uint64_t w1 = next(), w2 = next();
        return gaussian(w1, w2);
    }
};

// Fair coins drawn 64 per hash word.
struct BitStream {
    Stream st;
    std::uint64_t word = 0;
    int left = 0;
    explicit BitStream(std::uint64_t s) : st(s) {}
    bool next_bit() {
        if (left == 0) {
            word = st.next();
            left = 64;
        }
        --left;
        const bool b = word & 1u;
        word >>= 1;
        return b;
    }
};

constexpr std::int64_t kNegInf = HeightTrace::neg_inf;

// Evolve only the height profile on sites 0..x (the screen property: h_t(x)
// never looks right of x). One Bernoulli coin per site per step.
std::int64_t odb_height_once(int x, int t, double p, bool fair, Stream& st, BitStream& bits) {
    std::vector<std::int64_t> h(std::size_t(x) + 1, kNegInf);
    h[0] = 0;
    for (int step = 0; step < t; ++step) {
        for (int xp = x; xp >= 0; --xp) {
            const bool eps = fair ? bits.next_bit() : (st.uniform() < p);
            std::int64_t cand = h[std::size_t(xp)];
            if (cand != kNegInf && eps) ++cand;
            const std::int64_t left = xp > 0 ? h[std::size_t(xp - 1)] : kNegInf;
            h[std::size_t(xp)] = std::max(left, cand);
        }
    }
    return h[std::size_t(x)];
}

}  // namespace

SampleSet sample_heights(Variant variant, int x, int t, double p, int N,
                         std::uint64_t master_seed) {
    if (x < 0 || t < x) throw ArgumentError("sample_heights: need 0 <= x <= t");
    if (N < 1) throw ArgumentError("sample_heights: N >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("sample_heights: p outside [0,1]");
    SampleSet out;
    out.meta.regime = std::string("heights_") + variant_name(variant);
    out.meta.params = {{"x", double(x)}, {"t", double(t)}, {"p", p}};
    out.meta.master_seed = master_seed;
    out.meta.n_samples = N;
    out.values.reserve(std::size_t(N));
    const bool fair = p == 0.5;
    for (int s = 0; s < N; ++s) {
        const std::uint64_t seed = hash3(master_seed, kStreamHeights, std::uint64_t(s));
        if (variant == Variant::odb) {
            Stream st(seed);
            BitStream bits(seed);
            out.values.push_back(double(odb_height_once(x, t, p, fair, st, bits)));
        } else {
            const HeightTrace trace = simulate(variant, x, t, {p}, seed);
            const std::int64_t h = trace.at(x, t);
            out.values.push_back(h == kNegInf ? -1.0 : double(h));
        }
    }
    return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw ArgumentError("ks_distance: empty sample set");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < samples.size()) {
        std::size_t j = i;
        while (j < samples.size() && samples[j] == samples[i]) ++j;
        const double F = cdf(samples[i]);
        d = std::max(d, F - double(i) / n);
        d = std::max(d, double(j) / n - F);
        i = j;
    }
    return d;
}

SampleSet sample_brownian_m(int x, int steps, int N, std::uint64_t master_seed,
                            bool gaussian_increments) {
    if (x < 0) throw ArgumentError("sample_brownian_m: x >= 0");
    if (steps < kMinWalkSteps) throw ArgumentError("sample_brownian_m: steps >= 1000");
    if (N < 1) throw ArgumentError("sample_brownian_m: N >= 1");
    SampleSet out;
    out.meta.regime = "brownian_m";
    out.meta.params = {{"x", double(x)},
                       {"steps", double(steps)},
                       {"gaussian", gaussian_increments ? 1.0 : 0.0}};
    out.meta.master_seed = master_seed;
    out.meta.n_samples = N;
    out.values.reserve(std::size_t(N));
    const double inc = 1.0 / std::sqrt(double(steps));
    std::vector<double> gprev(std::size_t(steps) + 1), gcur(std::size_t(steps) + 1);
    for (int s = 0; s < N; ++s) {
        const std::uint64_t seed = hash3(master_seed, kStreamWalks, std::uint64_t(s));
        Stream st(seed);
        BitStream bits(seed);
        auto draw = [&]() {
            return gaussian_increments ? st.normal() * inc : (bits.next_bit() ? inc : -inc);
        };
        // walk 0: g_0(k) = f_0(k); the sup over t_0 happens inside the
        // prefix maximum of the next stage
        double f = 0.0;
        gprev[0] = 0.0;
        for (int k = 1; k <= steps; ++k) {
            f += draw();
            gprev[std::size_t(k)] = f;
        }
        double run = 0.0;
        for (int i = 1; i <= x; ++i) {
            f = 0.0;
            run = gprev[0];
            gcur[0] = run;
            for (int k = 1; k <= steps; ++k) {
                f += draw();
                run = std::max(run, gprev[std::size_t(k)] - f);
                gcur[std::size_t(k)] = run + f;
            }
            gprev.swap(gcur);
        }
        out.values.push_back(gprev[std::size_t(steps)]);
    }
    return out;
}

SampleSet sample_two_letter(int N, int steps, std::uint64_t master_seed) {
    if (steps < kMinWalkSteps) throw ArgumentError("sample_two_letter: steps >= 1000");
    if (N < 1) throw ArgumentError("sample_two_letter: N >= 1");
    SampleSet out;
    out.meta.regime = "two_letter";
    out.meta.params = {{"steps", double(steps)}};
    out.meta.master_seed = master_seed;
    out.meta.n_samples = N;
    out.values.reserve(std::size_t(N));
    const double inc = 1.0 / std::sqrt(double(steps));
    for (int s = 0; s < N; ++s) {
        BitStream bits(hash3(master_seed, kStreamWalks, std::uint64_t(s)));
        double f = 0.0, maxf = 0.0;
        for (int k = 0; k < steps; ++k) {
            f += bits.next_bit() ? inc : -inc;
            maxf = std::max(maxf, f);
        }
        out.values.push_back(2.0 * maxf - f);
    }
    return out;
}

double two_letter_cdf(double x) {
    if (x <= 0.0) return 0.0;
    return std::erf(x / std::sqrt(2.0)) -
           std::sqrt(2.0 / M_PI) * x * std::exp(-0.5 * x * x);
}

SampleSet sample_gue_max_eig(int n, int N, std::uint64_t master_seed) {
    if (n < 2 || n > 8) throw ArgumentError("sample_gue_max_eig: n outside [2,8]");
    if (N < 1) throw ArgumentError("sample_gue_max_eig: N >= 1");
    SampleSet out;
    out.meta.regime = "gue_max_eig";
    out.meta.params = {{"n", double(n)}};
    out.meta.master_seed = master_seed;
    out.meta.n_samples = N;
    out.values.reserve(std::size_t(N));
    using C = std::complex<double>;
    std::vector<C> A(std::size_t(n) * std::size_t(n));
    auto at = [&](int i, int j) -> C& { return A[std::size_t(i) * n + std::size_t(j)]; };
    const double off_sd = 1.0 / std::sqrt(2.0);
    for (int s = 0; s < N; ++s) {
        Stream st(hash3(master_seed, kStreamGue, std::uint64_t(s)));
        for (int i = 0; i < n; ++i) {
            at(i, i) = C(st.normal(), 0.0);
            for (int j = i + 1; j < n; ++j) {
                const C z(st.normal() * off_sd, st.normal() * off_sd);
                at(i, j) = z;
                at(j, i) = std::conj(z);
            }
        }
        bool done = false;
        for (int sweep = 0; sweep < kJacobiSweepCap && !done; ++sweep) {
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q) {
                    const C beta = at(p, q);
                    const double ab = std::abs(beta);
                    if (ab < 1e-300) continue;
                    const double tau = (at(q, q).real() - at(p, p).real()) / (2.0 * ab);
                    const double tt =
                        (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                    const C sr = tt * c * (beta / ab);
                    for (int r = 0; r < n; ++r) {  // A <- A U
                        const C tp = at(r, p), tq = at(r, q);
                        at(r, p) = c * tp - std::conj(sr) * tq;
                        at(r, q) = sr * tp + c * tq;
                    }
                    for (int r = 0; r < n; ++r) {  // A <- U^H A
                        const C tp = at(p, r), tq = at(q, r);
                        at(p, r) = c * tp - sr * tq;
                        at(q, r) = std::conj(sr) * tp + c * tq;
                    }
                }
            double off2 = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) off2 += std::norm(at(i, j));
            done = std::sqrt(off2) < kJacobiOffTol;
        }
        if (!done) throw ComputeError("sample_gue_max_eig: Jacobi sweep cap hit");
        double lmax = at(0, 0).real();
        for (int i = 1; i < n; ++i) lmax = std::max(lmax, at(i, i).real());
        out.values.push_back(lmax);
    }
    return out;
}

// ---- regime reports --------------------------------------------------------

namespace {

double param(const std::map<std::string, double>& params, const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw ArgumentError("regime_report: missing parameter " + key);
    return it->second;
}

// KS against a CDF when samples sit on a lattice: one theory call per
// distinct value instead of per sample.
double ks_lattice(std::vector<double> sorted, const std::function<double(double)>& cdf) {
    std::sort(sorted.begin(), sorted.end());
    const double n = double(sorted.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double F = cdf(sorted[i]);
        d = std::max(d, F - double(i) / n);
        d = std::max(d, double(j) / n - F);
        i = j;
    }
    return d;
}

double ecdf_at(const std::vector<double>& sorted, double s) {
    return double(std::upper_bound(sorted.begin(), sorted.end(), s) - sorted.begin()) /
           double(sorted.size());
}

double f2_theory(double s) {
    if (s <= -10.0) return 0.0;
    if (s >= 8.0) return 1.0;
    return f2_painleve(s);
}

// log Prob(h = m) = log sum_{j<n} C(m+j-1, j) p^m q^j, done in log space.
double full_height_log(int m, int n, double p) {
    const double lp = std::log(p), lq = std::log1p(-p);
    double best = -1e300;
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double lc = std::lgamma(double(m + j)) - std::lgamma(double(j + 1)) -
                          std::lgamma(double(m));
        terms[std::size_t(j)] = lc + m * lp + j * lq;
        best = std::max(best, terms[std::size_t(j)]);
    }
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += std::exp(terms[std::size_t(j)] - best);
    return best + std::log(acc);
}

}  // namespace

std::string RegimeReport::to_json() const {
    nlohmann::json j;
    j["regime"] = regime;
    j["params"] = params;
    j["N"] = n_samples;
    j["ks"] = ks >= 0.0 ? nlohmann::json(ks) : nlohmann::json(nullptr);
    if (chi2 >= 0.0) j["chi2"] = chi2;
    if (freq_full >= 0.0) {
        j["freq_full"] = freq_full;
        j["theory_full"] = theory_full;
        j["slope_mc"] = slope_mc;
        j["slope_theory"] = slope_theory;
    }
    j["pointwise"] = nlohmann::json::array();
    for (const PointwiseEntry& e : pointwise)
        j["pointwise"].push_back({{"s", e.s}, {"ecdf", e.ecdf}, {"theory", e.theory}});
    return j.dump(2);
}

RegimeReport regime_report(const std::string& regime,
                           const std::map<std::string, double>& params, int N,
                           std::uint64_t master_seed) {
    RegimeReport rep;
    rep.regime = regime;
    rep.params = params;
    rep.n_samples = N;
    if (regime == "finite_x") {
        const int x = int(param(params, "x")), t = int(param(params, "t"));
        const double p = param(params, "p");
        const SampleSet set = sample_heights(Variant::odb, x, t, p, N, master_seed);
        const double sigma = std::sqrt(p * (1.0 - p));
        std::vector<double> std_samples;
        std_samples.reserve(set.values.size());
        for (double h : set.values)
            std_samples.push_back((h - p * t) / (sigma * std::sqrt(double(t))));
        std::sort(std_samples.begin(), std_samples.end());
        const int ngue = x + 1;
        auto theory = [&](double s) { return gue_cdf(ngue, s); };
        rep.ks = ks_lattice(std_samples, theory);
        for (double s = -5.0; s <= 3.0 + 1e-9; s += 0.25)
            rep.pointwise.push_back({s, ecdf_at(std_samples, s), theory(s)});
    } else if (regime == "universal") {
        const int x = int(param(params, "x")), t = int(param(params, "t"));
        const double p = param(params, "p");
        const int m = t - x, n = x + 1;
        const RegimeConstants rc = regime_constants(double(n) / m, p / (1.0 - p));
        if (rc.critical || double(n) / m * rc.r >= 1.0)
            throw ArgumentError("regime_report: parameters are critical, not universal");
        const SampleSet set = sample_heights(Variant::odb, x, t, p, N, master_seed);
        const double scale = rc.v * std::cbrt(3.0 * rc.b) * std::cbrt(double(m));
        std::vector<double> std_samples;
        std_samples.reserve(set.values.size());
        for (double h : set.values) std_samples.push_back((h - rc.c * m) / scale);
        std::sort(std_samples.begin(), std_samples.end());
        rep.ks = ks_lattice(std_samples, f2_theory);
        for (double s = -6.0; s <= 5.0 + 1e-9; s += 0.25)
            rep.pointwise.push_back({s, ecdf_at(std_samples, s), f2_theory(s)});
    } else if (regime == "critical") {
        const int t = int(param(params, "t"));
        const double p = param(params, "p");
        const int x = int(std::llround(t - p * (t + 1.0)));
        const int m = t - x;
        const SampleSet set = sample_heights(Variant::odb, x, t, p, N, master_seed);
        const int bins = 6;
        std::vector<double> obs(std::size_t(bins) + 1, 0.0);
        for (double h : set.values) {
            const int dh = m - int(h);
            obs[std::size_t(std::min(dh, bins))] += 1.0;
        }
        double chi2 = 0.0, cum_obs = 0.0;
        for (int d = 0; d <= bins; ++d) {
            const double pmf = d < bins ? critical_prob(d) - critical_prob(d + 1)
                                        : critical_prob(bins);
            const double expd = N * pmf;
            if (expd > 5.0) chi2 += (obs[std::size_t(d)] - expd) * (obs[std::size_t(d)] - expd) / expd;
            if (d < bins) {
                cum_obs += obs[std::size_t(d)];
                const double cum_theory = 1.0 - critical_prob(d + 1);
                rep.ks = std::max(rep.ks, std::abs(cum_obs / N - cum_theory));
                rep.pointwise.push_back({double(d), obs[std::size_t(d)] / N, pmf});
            }
        }
        rep.chi2 = chi2;
    } else if (regime == "deterministic") {
        const double p = param(params, "p"), pc = param(params, "p_c");
        const int t = int(param(params, "t"));
        if (!(p > pc && pc > 0.0 && pc < 1.0))
            throw ArgumentError("regime_report: deterministic regime needs p > p_c");
        const int x = int(std::lround((1.0 - pc) * t));
        const int m = t - x, n = x + 1;
        const SampleSet set = sample_heights(Variant::odb, x, t, p, N, master_seed);
        double full = 0.0;
        for (double h : set.values)
            if (int(h) == m) full += 1.0;
        rep.freq_full = full / N;
        rep.theory_full = std::exp(full_height_log(m, n, p));
        rep.slope_mc = rep.freq_full < 1.0 ? -std::log1p(-rep.freq_full) / m : -1.0;
        const double eps = double(n) * p / ((1.0 - p) * m) - 1.0;
        rep.slope_theory = rate_gamma(eps, p);
        rep.pointwise.push_back({0.0, rep.freq_full, rep.theory_full});
    } else {
        throw ArgumentError("regime_report: unknown regime " + regime);
    }
    return rep;
}

}  // namespace odb
