#include <cmath>
#include <limits>

#include "odb/asymptotics.hpp"
#include "odb/rational.hpp"

namespace odb {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kCriticalEps = 1e-12;  // |alpha*r - 1| below this counts as critical
}  // namespace

RegimeConstants regime_constants(double alpha, double r) {
    if (!(alpha > 0.0)) throw ArgumentError("regime_constants needs alpha > 0");
    if (!(r >= 0.0)) throw ArgumentError("regime_constants needs r >= 0");
    RegimeConstants out;
    out.alpha = alpha;
    out.r = r;
    out.p = r / (1.0 + r);
    out.p_c = 1.0 / (1.0 + alpha);
    out.sigma2 = out.p * (1.0 - out.p);
    out.s_scale = std::sqrt(2.0 / (alpha * (1.0 + alpha)));
    const double ar = alpha * r;
    out.critical = std::abs(ar - 1.0) < kCriticalEps;
    out.c = (2.0 * std::sqrt(ar) + (1.0 - alpha) * r) / (1.0 + r);
    if (out.critical) out.c = 1.0;
    out.c1 = out.p_c * out.c;
    if (ar < 1.0 && r > 0.0) {
        const double sa = std::sqrt(alpha), sr = std::sqrt(r);
        out.v = (1.0 - std::sqrt(ar)) / (1.0 + std::sqrt(alpha / r));
        out.b = std::pow(sa + sr, 5.0) /
                (3.0 * r * sa * std::pow(1.0 + r, 3.0) * (1.0 - std::sqrt(ar)));
        out.beta = std::pow(ar, 0.25) * std::pow(1.0 + r, 1.5) / ((sa + sr) * (sa + sr));
        out.c2 = std::cbrt(out.p_c) * out.v * std::cbrt(3.0 * out.b);
    } else {
        out.v = out.b = out.beta = out.c2 = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

double rate_gamma(double epsilon, double p) {
    require_probability(p, "p");
    if (!(epsilon > -1.0)) throw ArgumentError("rate_gamma needs epsilon > -1");
    const double e1 = 1.0 + epsilon;
    const double e2 = 1.0 + epsilon - epsilon * p;
    return (1.0 / p - 1.0) * e1 * std::log(e1) - (1.0 / p) * e2 * std::log(e2);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw ArgumentError("gauss_legendre needs n >= 1");
    nodes.assign(std::size_t(n), 0.0);
    weights.assign(std::size_t(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        nodes[std::size_t(i)] = -z;
        nodes[std::size_t(n - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[std::size_t(i)] = w;
        weights[std::size_t(n - 1 - i)] = w;
    }
}

}  // namespace odb
