#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "odb/asymptotics.hpp"

namespace odb {

namespace {

constexpr int kGueMaxN = 12;
constexpr int kPanelOrder = 24;     // Gauss-Legendre order per unit-width panel
constexpr int kMomentOrder = 16;    // order per half-width panel in moment integrals
constexpr double kMomentPanel = 0.5;
constexpr double kGueArgCap = 100.0;

void check_n(int n) {
    if (n < 1 || n > kGueMaxN) throw ArgumentError("gue: n outside [1, 12]");
}

// Harmonic oscillator wavefunctions phi_0..phi_{n-1} at x (orthonormal on R).
void oscillator(int n, double x, std::vector<double>& phi) {
    phi.resize(std::size_t(n));
    phi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (n > 1) phi[1] = x * std::sqrt(2.0) * phi[0];
    for (int k = 1; k + 1 < n; ++k)
        phi[std::size_t(k + 1)] = x * std::sqrt(2.0 / (k + 1)) * phi[std::size_t(k)] -
                                  std::sqrt(double(k) / (k + 1)) * phi[std::size_t(k - 1)];
}

struct GueSystem {
    Eigen::MatrixXd IG;     // I - G with G_ij = int_a^inf phi_i phi_j
    Eigen::VectorXd edge;   // phi_i(a) at the lower endpoint a = s/sqrt(2)
};

GueSystem gue_system(int n, double s) {
    const double a = s / std::sqrt(2.0);
    const double upper = std::max(a, std::sqrt(2.0 * n + 1.0)) + 9.0;
    std::vector<double> gx, gw;
    gauss_legendre(kPanelOrder, gx, gw);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> phi;
    const int panels = int(std::ceil(upper - a));
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double lo = a + (upper - a) * pnl / panels;
        const double hi = a + (upper - a) * (pnl + 1) / panels;
        for (int q = 0; q < kPanelOrder; ++q) {
            const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[std::size_t(q)];
            const double wt = 0.5 * (hi - lo) * gw[std::size_t(q)];
            oscillator(n, x, phi);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) G(i, j) += wt * phi[std::size_t(i)] * phi[std::size_t(j)];
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) G(i, j) = G(j, i);
    GueSystem sys;
    sys.IG = Eigen::MatrixXd::Identity(n, n) - G;
    oscillator(n, a, phi);
    sys.edge.resize(n);
    for (int i = 0; i < n; ++i) sys.edge(i) = phi[std::size_t(i)];
    return sys;
}

double pdf_from_system(const GueSystem& sys) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.IG);
    const double det = lu.determinant();
    const Eigen::VectorXd y = lu.solve(sys.edge);
    // d/ds log det(I-G) = (1/sqrt(2)) phi^T (I-G)^{-1} phi
    return det * sys.edge.dot(y) / std::sqrt(2.0);
}

}  // namespace

double gue_cdf(int n, double s) {
    check_n(n);
    if (std::abs(s) > kGueArgCap) throw ArgumentError("gue_cdf: s out of range");
    return gue_system(n, s).IG.partialPivLu().determinant();
}

double gue_pdf(int n, double s) {
    check_n(n);
    if (std::abs(s) > kGueArgCap) throw ArgumentError("gue_pdf: s out of range");
    return pdf_from_system(gue_system(n, s));
}

double gue_moment(int n, int j) {
    check_n(n);
    if (j < 0 || j > 8) throw ArgumentError("gue_moment: order outside [0, 8]");
    const double range = 2.0 * std::sqrt(double(n)) + 8.0;
    std::vector<double> gx, gw;
    gauss_legendre(kMomentOrder, gx, gw);
    const int panels = int(std::ceil(2.0 * range / kMomentPanel));
    double m0 = 0.0, mj = 0.0;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double lo = -range + 2.0 * range * pnl / panels;
        const double hi = -range + 2.0 * range * (pnl + 1) / panels;
        for (int q = 0; q < kMomentOrder; ++q) {
            const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[std::size_t(q)];
            const double wt = 0.5 * (hi - lo) * gw[std::size_t(q)];
            const double f = pdf_from_system(gue_system(n, s));
            m0 += wt * f;
            mj += wt * f * std::pow(s, j);
        }
    }
    return j == 0 ? m0 : mj / m0;
}

GueApprox gue_approx(int n) {
    check_n(n);
    GueApprox out;
    out.mean = 2.0 * std::sqrt(double(n)) - 1.77109 / std::pow(double(n), 1.0 / 6.0);
    out.variance = 0.8132 / std::cbrt(double(n));
    return out;
}

std::vector<GueTableRow> gue_table2(int n_min, int n_max) {
    if (n_min < 1 || n_max > kGueMaxN || n_min > n_max)
        throw ArgumentError("gue_table2: bad n range");
    std::vector<GueTableRow> rows;
    std::vector<double> gx, gw;
    gauss_legendre(kMomentOrder, gx, gw);
    for (int n = n_min; n <= n_max; ++n) {
        const double range = 2.0 * std::sqrt(double(n)) + 8.0;
        const int panels = int(std::ceil(2.0 * range / kMomentPanel));
        // cache pdf values over the fixed grid, then take central moments
        std::vector<double> svals, fw;
        double m0 = 0.0, m1 = 0.0;
        for (int pnl = 0; pnl < panels; ++pnl) {
            const double lo = -range + 2.0 * range * pnl / panels;
            const double hi = -range + 2.0 * range * (pnl + 1) / panels;
            for (int q = 0; q < kMomentOrder; ++q) {
                const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[std::size_t(q)];
                const double wt = 0.5 * (hi - lo) * gw[std::size_t(q)];
                const double f = pdf_from_system(gue_system(n, s));
                svals.push_back(s);
                fw.push_back(wt * f);
                m0 += wt * f;
                m1 += wt * f * s;
            }
        }
        const double mean = m1 / m0;
        double c2 = 0.0, c3 = 0.0, c4 = 0.0;
        for (std::size_t i = 0; i < svals.size(); ++i) {
            const double d = svals[i] - mean;
            c2 += fw[i] * d * d;
            c3 += fw[i] * d * d * d;
            c4 += fw[i] * d * d * d * d;
        }
        c2 /= m0;
        c3 /= m0;
        c4 /= m0;
        GueTableRow row;
        row.n = n;
        row.mean = mean;
        row.variance = c2;
        row.skewness = c3 / std::pow(c2, 1.5);
        row.excess_kurtosis = c4 / (c2 * c2) - 3.0;
        const GueApprox ap = gue_approx(n);
        row.approx_mean = ap.mean;
        row.approx_variance = ap.variance;
        rows.push_back(row);
    }
    return rows;
}

double gue_cdf2_closed(double s) {
    const double e1 = std::exp(-s * s);
    const double e2 = std::exp(-0.5 * s * s);
    const double er = std::erf(s / std::sqrt(2.0));
    return 0.25 - e1 / (2.0 * M_PI) - s * e2 / (std::pow(2.0, 1.5) * std::sqrt(M_PI)) +
           0.5 * (1.0 - s * e2 / std::sqrt(2.0 * M_PI)) * er + 0.25 * er * er;
}

}  // namespace odb
