#include "odb/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace odb {

namespace {

constexpr double kCoeffSelfCheckTol = 1e-10;  // doubling must move less than this
constexpr int kMinQuadPoints = 256;
constexpr double kPi = 3.14159265358979323846;

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

double default_radius(const SymbolSpec& spec) {
    const double r = spec.pole_radius();
    if (spec.excludes_minus_one()) {
        // midpoint keeps the margin (1-r)/2 from both the pole at r and the
        // zero at -1; anything biased toward either end loses accuracy fast
        const double rho = (1.0 + r) / 2.0;
        if (!(rho > r) || rho >= 1.0)
            throw ArgumentError("symbol_coeffs: no circle holds r inside and -1 outside (r >= 1)");
        return rho;
    }
    return std::max(2.0 * r, r + 1.0);
}

std::vector<double> coeffs_at(const SymbolSpec& spec, double rho, int lo, int hi, int N) {
    std::vector<std::complex<double>> f(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) f[std::size_t(k)] = spec.eval(std::polar(rho, 2.0 * kPi * k / N));
    std::vector<std::complex<double>> root(static_cast<std::size_t>(N));  // e^{-2 pi i j / N}
    for (int j = 0; j < N; ++j) root[std::size_t(j)] = std::polar(1.0, -2.0 * kPi * j / N);
    std::vector<double> out(std::size_t(hi - lo + 1));
    for (int idx = lo; idx <= hi; ++idx) {
        std::complex<double> s = 0.0;
        for (int k = 0; k < N; ++k) {
            const long long jj = (static_cast<long long>(idx) * k) % N;
            s += f[std::size_t(k)] * root[std::size_t(jj < 0 ? jj + N : jj)];
        }
        out[std::size_t(idx - lo)] = s.real() / N * std::pow(rho, -double(idx));
    }
    return out;
}

}  // namespace

std::complex<double> SymbolSpec::eval(std::complex<double> z) const {
    using C = std::complex<double>;
    switch (kind) {
        case Kind::phi:
            return std::pow(C(1.0) + z, double(n)) * std::pow(C(1.0) - r / z, -double(m));
        case Kind::minus_over_plus:
            return std::pow(C(1.0) - r / z, -double(m)) * std::pow(C(1.0) + z, -double(n));
        case Kind::plus_over_minus:
            return std::pow(C(1.0) + z, double(n)) * std::pow(C(1.0) - r / z, double(m));
        case Kind::inhomogeneous: {
            C f = std::pow(C(1.0) - 1.0 / z, -double(m));
            for (double rj : r_list) f *= C(1.0) + rj * z;
            return f;
        }
    }
    return {};
}

double SymbolSpec::pole_radius() const {
    return kind == Kind::inhomogeneous ? 1.0 : r;
}

SymbolCoeffs symbol_coeffs(const SymbolSpec& spec, int lo, int hi, double radius, int quad_points) {
    if (lo > hi) throw ArgumentError("symbol_coeffs: empty index range");
    if (!power_of_two(quad_points) || quad_points < kMinQuadPoints)
        throw ArgumentError("symbol_coeffs: quad_points must be a power of two >= 256");
    if (spec.kind != SymbolSpec::Kind::inhomogeneous && spec.r < 0.0)
        throw ArgumentError("symbol_coeffs: r must be >= 0");
    const double rho = radius <= 0.0 ? default_radius(spec) : radius;
    if (!(rho > spec.pole_radius()))
        throw ArgumentError("symbol_coeffs: radius must exceed the inner singularity");
    if (spec.excludes_minus_one() && rho >= 1.0)
        throw ArgumentError("symbol_coeffs: radius must stay below 1 to keep -1 outside");

    const std::vector<double> coarse = coeffs_at(spec, rho, lo, hi, quad_points);
    std::vector<double> fine = coeffs_at(spec, rho, lo, hi, 2 * quad_points);

    double scale = 0.0;
    for (double v : fine) scale = std::max(scale, std::abs(v));
    double max_rel = 0.0;
    for (std::size_t k = 0; k < fine.size(); ++k) {
        if (!std::isfinite(fine[k]))
            throw ComputeError("symbol_coeffs: quadrature overflowed at the requested indices");
        max_rel = std::max(max_rel, std::abs(fine[k] - coarse[k]) / std::max(scale, 1e-300));
    }

    SymbolCoeffs out;
    out.lo = lo;
    out.c = std::move(fine);
    out.max_rel_change = max_rel;
    out.converged = max_rel <= kCoeffSelfCheckTol;
    return out;
}

double phi_coeff_reference(int m, int n, double r, int k) {
    if (m < 1 || n < 1) throw ArgumentError("phi_coeff_reference needs m,n >= 1");
    if (k > n) return 0.0;
    double sum = 0.0;
    double rp = std::pow(r, std::max(0, -k));
    for (int a = std::max(0, -k); a <= n - k; ++a) {
        sum += mpz_get_d(binomial(n, k + a).get_mpz_t()) *
               mpz_get_d(binomial(m + a - 1, a).get_mpz_t()) * rp;
        rp *= r;
    }
    return sum;
}

Rational phi_coeff_exact(int m, int n, const Rational& r, int k) {
    if (m < 1 || n < 1) throw ArgumentError("phi_coeff_exact needs m,n >= 1");
    if (k > n) return 0;
    Rational sum = 0;
    Rational rp = rational_pow(r, std::max(0, -k));
    for (int a = std::max(0, -k); a <= n - k; ++a) {
        sum += Rational(binomial(n, k + a)) * Rational(binomial(m + a - 1, a)) * rp;
        rp *= r;
    }
    return sum;
}

namespace {

// sign * exp(log_prefactor + log|det T|) with T(j,k) = coeffs[j-k]
double scaled_toeplitz_det(const SymbolCoeffs& coeffs, double log_prefactor, int h) {
    if (h == 0) return std::exp(log_prefactor);
    Eigen::MatrixXd T(h, h);
    for (int j = 0; j < h; ++j)
        for (int k = 0; k < h; ++k) T(j, k) = coeffs.at(j - k);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(T);
    double sign = lu.permutationP().determinant() < 0 ? -1.0 : 1.0;
    double log_abs = 0.0;
    for (int i = 0; i < h; ++i) {
        const double d = lu.matrixLU()(i, i);
        if (d == 0.0) return 0.0;
        if (d < 0.0) sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    return sign * std::exp(log_prefactor + log_abs);
}

void check_mn_p(int m, int n, double p, const char* who) {
    if (m < 1 || n < 1) throw ArgumentError(std::string(who) + " needs m,n >= 1");
    require_probability(p, "p");
}

}  // namespace

double cdf_toeplitz(int m, int n, double p, int h) {
    check_mn_p(m, n, p, "cdf_toeplitz");
    if (h < 0) return 0.0;
    if (h > m) return 1.0;
    const double log_pref = double(m) * n * std::log1p(-p);
    if (h == 0) return std::exp(log_pref);
    SymbolSpec spec;
    spec.kind = SymbolSpec::Kind::phi;
    spec.m = m;
    spec.n = n;
    spec.r = p / (1.0 - p);
    SymbolCoeffs coeffs = symbol_coeffs(spec, -(h - 1), h - 1);
    if (!coeffs.converged)
        throw ComputeError("cdf_toeplitz: symbol coefficients failed the doubling self-check");
    return scaled_toeplitz_det(coeffs, log_pref, h);
}

DistributionTable toeplitz_table(int m, int n, double p) {
    check_mn_p(m, n, p, "toeplitz_table");
    SymbolSpec spec;
    spec.kind = SymbolSpec::Kind::phi;
    spec.m = m;
    spec.n = n;
    spec.r = p / (1.0 - p);
    SymbolCoeffs coeffs =
        m > 1 ? symbol_coeffs(spec, -(m - 2), m - 2) : SymbolCoeffs{};
    if (m > 1 && !coeffs.converged)
        throw ComputeError("toeplitz_table: symbol coefficients failed the doubling self-check");
    const double log_pref = double(m) * n * std::log1p(-p);
    DistributionTable t;
    t.m = m;
    t.n = n;
    t.mode = "odb";
    t.route = "toeplitz";
    t.exact = false;
    t.p_value = p;
    for (int h = 0; h < m; ++h) t.cdf_value.push_back(scaled_toeplitz_det(coeffs, log_pref, h));
    t.cdf_value.push_back(1.0);  // height <= m always
    return t;
}

double cdf_fredholm(int m, int n, double p, int h) {
    check_mn_p(m, n, p, "cdf_fredholm");
    if (h < 0) return 0.0;
    if (h >= m) return 1.0;
    const double r = p / (1.0 - p);
    if (r >= 1.0)
        throw ComputeError(
            "cdf_fredholm: quadrature route needs p < 1/2 (r < 1); "
            "use cdf_toeplitz or the exact-coefficient route");
    const int M = m - h;
    SymbolSpec sa;
    sa.kind = SymbolSpec::Kind::minus_over_plus;
    sa.m = m;
    sa.n = n;
    sa.r = r;
    SymbolSpec sb;
    sb.kind = SymbolSpec::Kind::plus_over_minus;
    sb.m = m;
    sb.n = n;
    sb.r = r;
    SymbolCoeffs a = symbol_coeffs(sa, h + 1, 2 * m - h - 1);
    SymbolCoeffs b = symbol_coeffs(sb, -m, -(h + 1));
    if (!a.converged || !b.converged)
        throw ComputeError("cdf_fredholm: symbol coefficients failed the doubling self-check");
    Eigen::MatrixXd K(M, M);
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < M; ++k) {
            double s = 0.0;
            for (int l = 0; l < M - k; ++l) s += a.at(h + j + l + 1) * b.at(-(h + k + l + 1));
            K(j, k) = s;
        }
    const Eigen::MatrixXd IK = Eigen::MatrixXd::Identity(M, M) - K;
    return IK.determinant();
}

double inhomo_cdf_value(int m, const std::vector<double>& p_list, int h) {
    std::vector<Rational> ps;
    ps.reserve(p_list.size());
    for (double p : p_list) {
        require_probability(p, "p_j");
        ps.emplace_back(p);  // exact binary expansion
    }
    return to_double(inhomo_cdf(m, ps, h));
}

Rational prob_full_height(int m, int n, const Rational& p) {
    if (m < 1 || n < 1) throw ArgumentError("prob_full_height needs m,n >= 1");
    require_probability(p, "p");
    const Rational q = Rational(1) - p;
    Rational s = 0, qj = 1;
    for (int j = 0; j < n; ++j) {
        s += Rational(binomial(m + j - 1, j)) * qj;
        qj *= q;
    }
    return rational_pow(p, m) * s;
}

}  // namespace odb
