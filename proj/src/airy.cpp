#include <cmath>
#include <mutex>
#include <vector>

#include "airy_internal.hpp"
#include "odb/asymptotics.hpp"

namespace odb {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAiZero = 0.35502805388781723926;       // Ai(0) = 3^{-2/3}/Gamma(2/3)
constexpr double kAiPrimeZero = -0.25881940379280679840;  // Ai'(0) = -3^{-1/3}/Gamma(1/3)
constexpr double kSeriesEdge = 2.5;    // Maclaurin handles |x| <= this
constexpr double kTableStep = 0.25;    // leftward Taylor march step
constexpr double kTableEnd = -25.0;
constexpr int kTableOrder = 26;
constexpr double kKernelCut = 40.0;    // kernel variant treats Ai as 0 past this

// y'' = x y around x = 0, coefficients c_k = c_{k-3} / (k (k-1))
void airy_maclaurin(double x, double& ai, double& aip) {
    if (x == 0.0) {
        ai = kAiZero;
        aip = kAiPrimeZero;
        return;
    }
    double c[3] = {kAiZero, kAiPrimeZero, 0.0};  // latest coefficient per k mod 3
    double sum = kAiZero + kAiPrimeZero * x;
    double dsum = kAiPrimeZero;
    double xkm1 = x * x;  // x^{k-1} entering iteration k = 3
    int tiny = 0;         // k % 3 == 2 terms vanish identically, so require
                          // three consecutive negligible terms before stopping
    for (int k = 3; k <= 90; ++k) {
        const double xk = xkm1 * x;
        const int r = k % 3;
        const double ck = c[r] / (double(k) * (k - 1));
        c[r] = ck;
        sum += ck * xk;
        dsum += k * ck * xkm1;
        tiny = (std::abs(ck * xk) < 1e-19 && std::abs(k * ck * xkm1) < 1e-19) ? tiny + 1 : 0;
        if (k > 15 && tiny >= 3) break;
        xkm1 = xk;
    }
    ai = sum;
    aip = dsum;
}

struct Segment {
    double center;
    double a[kTableOrder + 1];  // Taylor coefficients of Ai at center
};

void fill_segment(Segment& seg, double value, double slope) {
    seg.a[0] = value;
    seg.a[1] = slope;
    for (int k = 0; k + 2 <= kTableOrder; ++k) {
        const double prev = k >= 1 ? seg.a[k - 1] : 0.0;
        seg.a[k + 2] = (seg.center * seg.a[k] + prev) / (double(k + 2) * (k + 1));
    }
}

void eval_segment(const Segment& seg, double tau, double& ai, double& aip) {
    double v = 0.0, d = 0.0;
    for (int k = kTableOrder; k >= 1; --k) {
        v = v * tau + seg.a[k];
        d = d * tau + k * seg.a[k];
    }
    ai = v * tau + seg.a[0];
    aip = d;
}

const std::vector<Segment>& left_table() {
    static std::vector<Segment> table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        double v, d;
        airy_maclaurin(-kSeriesEdge, v, d);
        double center = -kSeriesEdge;
        while (center > kTableEnd + 1e-9) {
            Segment seg;
            seg.center = center;
            fill_segment(seg, v, d);
            table.push_back(seg);
            eval_segment(seg, -kTableStep, v, d);
            center -= kTableStep;
        }
    });
    return table;
}

// Steepest-descent integral for x > kSeriesEdge:
//   Ai(x)  =  e^{-z} / (2 pi) * Int exp(-sqrt(x) t^2) cos(t^3/3) dt
//   Ai'(x) = -e^{-z} / (2 pi) * Int exp(-sqrt(x) t^2) (sqrt(x) cos(t^3/3) + t sin(t^3/3)) dt
// with z = (2/3) x^{3/2}, integrals over the real line.
void airy_saddle(double x, double& ai, double& aip) {
    const double sx = std::sqrt(x);
    const double zeta = (2.0 / 3.0) * x * sx;
    const double pref = std::exp(-zeta) / (2.0 * kPi);
    if (pref == 0.0) {
        ai = 0.0;
        aip = 0.0;
        return;
    }
    const double tmax = std::sqrt(45.0 / sx);
    const int N = 256;
    const double h = 2.0 * tmax / N;
    double s0 = 0.0, s1 = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double t = -tmax + k * h;
        const double w = (k == 0 || k == N) ? 0.5 : 1.0;
        const double g = std::exp(-sx * t * t);
        const double u = t * t * t / 3.0;
        const double cu = std::cos(u);
        s0 += w * g * cu;
        s1 += w * g * (sx * cu + t * std::sin(u));
    }
    ai = pref * s0 * h;
    aip = -pref * s1 * h;
}

}  // namespace

namespace detail {

void airy_eval(double x, double& ai, double& aip, bool kernel_cutoff) {
    if (kernel_cutoff && x > kKernelCut) {
        ai = 0.0;
        aip = 0.0;
        return;
    }
    if (x > kSeriesEdge) {
        airy_saddle(x, ai, aip);
        return;
    }
    if (x >= -kSeriesEdge) {
        airy_maclaurin(x, ai, aip);
        return;
    }
    if (x < kTableEnd) throw ComputeError("airy: argument below the tabulated range");
    const auto& table = left_table();
    std::size_t idx = std::size_t((-kSeriesEdge - x) / kTableStep);
    if (idx >= table.size()) idx = table.size() - 1;
    eval_segment(table[idx], x - table[idx].center, ai, aip);
}

}  // namespace detail

double airy_ai(double x) {
    if (x < -20.0 || x > 200.0) throw ArgumentError("airy_ai: domain is [-20, 200]");
    double ai, aip;
    detail::airy_eval(x, ai, aip, false);
    return ai;
}

double airy_ai_prime(double x) {
    if (x < -20.0 || x > 200.0) throw ArgumentError("airy_ai_prime: domain is [-20, 200]");
    double ai, aip;
    detail::airy_eval(x, ai, aip, false);
    return aip;
}

}  // namespace odb
