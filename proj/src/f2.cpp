#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "airy_internal.hpp"
#include "odb/asymptotics.hpp"

namespace odb {

namespace {

constexpr double kF2Lo = -10.0, kF2Hi = 8.0;
constexpr double kMapScale = 10.0;  // phi(u) = s + L (1+u)/(1-u)
constexpr int kNodeStart = 64;
constexpr int kNodeCap = 1024;
constexpr double kNodeTol = 1e-10;
constexpr int kPainleveOrder = 28;
constexpr double kPainleveLeftEnd = -12.0;
constexpr double kPainleveStep = 0.125;

const std::pair<std::vector<double>, std::vector<double>>& gl_cached(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::pair<std::vector<double>, std::vector<double>> nw;
        gauss_legendre(n, nw.first, nw.second);
        it = cache.emplace(n, std::move(nw)).first;
    }
    return it->second;
}

struct NystromResult {
    double det = 0.0;        // det(I - K_Airy) on (s, infinity)
    double resolvent = 0.0;  // v^T (I - K)^{-1} v, the boundary resolvent
};

// The Airy kernel factors through A(x,y) = Ai(x+y-s): K = A^2, so
// det(I-K) = det(I-A) det(I+A) on the mapped Gauss-Legendre grid.
NystromResult airy_nystrom(double s, int N) {
    const auto& [u, w] = gl_cached(N);
    std::vector<double> x(static_cast<std::size_t>(N)), sq(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const double d = 1.0 - u[std::size_t(i)];
        x[std::size_t(i)] = s + kMapScale * (1.0 + u[std::size_t(i)]) / d;
        sq[std::size_t(i)] = std::sqrt(w[std::size_t(i)] * 2.0 * kMapScale / (d * d));
    }
    Eigen::MatrixXd A(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
            const double v =
                sq[std::size_t(i)] * sq[std::size_t(j)] *
                detail::airy_kernel_value(x[std::size_t(i)] + x[std::size_t(j)] - s);
            A(i, j) = v;
            A(j, i) = v;
        }
    const Eigen::MatrixXd Im = Eigen::MatrixXd::Identity(N, N) - A;
    const Eigen::MatrixXd Ip = Eigen::MatrixXd::Identity(N, N) + A;
    Eigen::PartialPivLU<Eigen::MatrixXd> lum(Im), lup(Ip);
    NystromResult out;
    out.det = lum.determinant() * lup.determinant();
    Eigen::VectorXd v(N);
    for (int i = 0; i < N; ++i)
        v(i) = sq[std::size_t(i)] * detail::airy_kernel_value(x[std::size_t(i)]);
    // (I - K)^{-1} = (I + A)^{-1} (I - A)^{-1} since K = A^2
    const Eigen::VectorXd y = lup.solve(lum.solve(v));
    out.resolvent = v.dot(y);
    return out;
}

NystromResult f2_nystrom_converged(double s) {
    if (s < kF2Lo || s > kF2Hi) throw ArgumentError("f2: s outside [-10, 8]");
    NystromResult prev = airy_nystrom(s, kNodeStart);
    for (int N = 2 * kNodeStart; N <= kNodeCap; N *= 2) {
        const NystromResult cur = airy_nystrom(s, N);
        const double dd = std::abs(cur.det - prev.det);
        const double dr = std::abs(cur.det * cur.resolvent - prev.det * prev.resolvent);
        if (dd < kNodeTol && dr < kNodeTol) return cur;
        prev = cur;
    }
    throw ComputeError("f2: Nystrom node doubling did not converge");
}

// ---- Painleve II route ----------------------------------------------------

struct PainleveSegment {
    double s_right = 0.0;  // expansion point; segment covers [s_right - h, s_right]
    double h = 0.0;
    double I0 = 0.0, J0 = 0.0;  // I(s_right), J(s_right) with J = dI/ds
    std::vector<double> q;      // Taylor coefficients of q at s_right
    std::vector<double> u;      // coefficients of q^2
};

// Taylor coefficients of q'' = s q + 2 q^3 expanded at center c.
void painleve_coeffs(double c, double q0, double q1, std::vector<double>& a,
                     std::vector<double>& u) {
    const int K = kPainleveOrder;
    a.assign(std::size_t(K) + 1, 0.0);
    u.assign(std::size_t(K) + 1, 0.0);
    std::vector<double> w(std::size_t(K) + 1, 0.0);  // q^3
    a[0] = q0;
    a[1] = q1;
    for (int k = 0; k + 2 <= K; ++k) {
        // u_k and w_k only need a_0..a_k
        double uk = 0.0;
        for (int i = 0; i <= k; ++i) uk += a[std::size_t(i)] * a[std::size_t(k - i)];
        u[std::size_t(k)] = uk;
        double wk = 0.0;
        for (int i = 0; i <= k; ++i) wk += u[std::size_t(i)] * a[std::size_t(k - i)];
        w[std::size_t(k)] = wk;
        const double am1 = k >= 1 ? a[std::size_t(k - 1)] : 0.0;
        a[std::size_t(k + 2)] =
            (c * a[std::size_t(k)] + am1 + 2.0 * w[std::size_t(k)]) / (double(k + 2) * (k + 1));
    }
    for (int k = K - 1; k <= K; ++k) {
        double uk = 0.0;
        for (int i = 0; i <= k; ++i) uk += a[std::size_t(i)] * a[std::size_t(k - i)];
        u[std::size_t(k)] = uk;
    }
}

struct PainleveTable {
    std::vector<PainleveSegment> segs;  // s_right strictly decreasing
};

const PainleveTable& painleve_table() {
    static PainleveTable table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        const double s0 = kF2Hi;
        const double A = airy_ai(s0), Ap = airy_ai_prime(s0);
        double q = A, qp = Ap;
        // I(s) = int_s^inf (x-s) q^2 dx; at the Airy tail these are exact:
        double I = (2.0 * s0 * s0 * A * A - 2.0 * s0 * Ap * Ap - A * Ap) / 3.0;
        double J = -(Ap * Ap - s0 * A * A);  // J = dI/ds = -int_s^inf q^2
        double c = s0;
        while (c > kPainleveLeftEnd) {
            PainleveSegment seg;
            seg.s_right = c;
            seg.I0 = I;
            seg.J0 = J;
            painleve_coeffs(c, q, qp, seg.q, seg.u);
            double h = kPainleveStep;
            const double scale = std::max({std::abs(q), std::abs(qp), 1e-3});
            for (;;) {
                double tail = 0.0;
                for (int k = kPainleveOrder - 2; k <= kPainleveOrder; ++k)
                    tail += std::abs(seg.q[std::size_t(k)]) * std::pow(h, k);
                if (tail < 1e-17 * scale) break;
                h *= 0.5;
                if (h < 1e-4) throw ComputeError("f2_painleve: step underflow (blow-up)");
            }
            seg.h = h;
            table.segs.push_back(seg);
            // advance to the left end of this segment
            const double tau = -h;
            double qn = 0.0, qpn = 0.0;
            for (int k = kPainleveOrder; k >= 1; --k) {
                qn = qn * tau + seg.q[std::size_t(k)];
                qpn = qpn * tau + k * seg.q[std::size_t(k)];
            }
            qn = qn * tau + seg.q[0];
            double Jn = 0.0, In = 0.0;
            for (int k = kPainleveOrder; k >= 0; --k) {
                Jn = Jn * tau + seg.u[std::size_t(k)] / (k + 1.0);
                In = In * tau + seg.u[std::size_t(k)] / ((k + 1.0) * (k + 2.0));
            }
            Jn = J + Jn * tau;
            In = I + J * tau + In * tau * tau;
            q = qn;
            qp = qpn;
            I = In;
            J = Jn;
            c -= h;
        }
    });
    return table;
}

const PainleveSegment& segment_for(double s) {
    const auto& segs = painleve_table().segs;
    // binary search: first segment with s_right - h <= s
    std::size_t lo = 0, hi = segs.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (segs[mid].s_right - segs[mid].h <= s)
            hi = mid;
        else
            lo = mid + 1;
    }
    return segs[lo];
}

void painleve_eval(double s, double& I, double& J) {
    const PainleveSegment& seg = segment_for(s);
    const double tau = s - seg.s_right;
    double Jn = 0.0, In = 0.0;
    for (int k = kPainleveOrder; k >= 0; --k) {
        Jn = Jn * tau + seg.u[std::size_t(k)] / (k + 1.0);
        In = In * tau + seg.u[std::size_t(k)] / ((k + 1.0) * (k + 2.0));
    }
    J = seg.J0 + Jn * tau;
    I = seg.I0 + seg.J0 * tau + In * tau * tau;
}

}  // namespace

double f2(double s) { return f2_nystrom_converged(s).det; }

double f2_pdf(double s) {
    const NystromResult r = f2_nystrom_converged(s);
    return r.det * r.resolvent;
}

double f2_painleve(double s) {
    if (s < kF2Lo || s > kF2Hi) throw ArgumentError("f2_painleve: s outside [-10, 8]");
    double I, J;
    painleve_eval(s, I, J);
    return std::exp(-I);
}

double f2_painleve_pdf(double s) {
    if (s < kF2Lo || s > kF2Hi) throw ArgumentError("f2_painleve_pdf: s outside [-10, 8]");
    double I, J;
    painleve_eval(s, I, J);
    return -J * std::exp(-I);
}

DistStats f2_stats() {
    static DistStats stats;
    static std::once_flag flag;
    std::call_once(flag, [] {
        std::vector<double> gx, gw;
        gauss_legendre(12, gx, gw);
        double m[5] = {0, 0, 0, 0, 0};
        for (const PainleveSegment& seg : painleve_table().segs) {
            const double a = std::max(seg.s_right - seg.h, kF2Lo);
            const double b = std::min(seg.s_right, kF2Hi);
            if (a >= b) continue;
            for (std::size_t i = 0; i < gx.size(); ++i) {
                const double s = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
                const double wt = 0.5 * (b - a) * gw[i];
                const double tau = s - seg.s_right;
                double Jn = 0.0, In = 0.0;
                for (int k = kPainleveOrder; k >= 0; --k) {
                    Jn = Jn * tau + seg.u[std::size_t(k)] / (k + 1.0);
                    In = In * tau + seg.u[std::size_t(k)] / ((k + 1.0) * (k + 2.0));
                }
                const double J = seg.J0 + Jn * tau;
                const double I = seg.I0 + seg.J0 * tau + In * tau * tau;
                const double pdf = -J * std::exp(-I);
                double sp = 1.0;
                for (int j = 0; j <= 4; ++j) {
                    m[j] += wt * pdf * sp;
                    sp *= s;
                }
            }
        }
        const double mean = m[1] / m[0];
        const double var = m[2] / m[0] - mean * mean;
        const double m3 = m[3] / m[0] - 3.0 * mean * var - mean * mean * mean;
        const double m4c = m[4] / m[0] - 4.0 * mean * (m[3] / m[0]) +
                           6.0 * mean * mean * (m[2] / m[0]) - 3.0 * std::pow(mean, 4.0);
        stats.mean = mean;
        stats.sd = std::sqrt(var);
        stats.skewness = m3 / std::pow(var, 1.5);
        stats.excess_kurtosis = m4c / (var * var) - 3.0;
    });
    return stats;
}

}  // namespace odb
