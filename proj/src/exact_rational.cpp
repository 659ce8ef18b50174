#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "odb/exact.hpp"

namespace odb {

namespace {

constexpr long kZeroExp = std::numeric_limits<long>::min() / 2;
constexpr int kTiltDenomBits = 12;  // tilt ratio quantized to multiples of 2^-12
constexpr int kMaxKernelExp = 960;  // assembled kernel entries must stay below 2^960

// value = mant * 2^exp2 with |mant| in [0.5, 1); zero gets a sentinel exponent
std::pair<double, long> split_2exp(const Rational& v) {
    if (v == 0) return {0.0, kZeroExp};
    mpf_class f(0, 256);
    f = v;
    long e = 0;
    const double d = mpf_get_d_2exp(&e, f.get_mpf_t());
    return {d, e};
}

double fitted_slope(const std::vector<std::pair<double, long>>& split, int i_lo) {
    // least squares of log2|value| against the coefficient index
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t k = 0; k < split.size(); ++k) {
        if (split[k].first == 0.0) continue;
        const double x = double(i_lo) + double(k);
        const double y = std::log2(std::abs(split[k].first)) + double(split[k].second);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) return 0.0;
    const double den = cnt * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (cnt * sxy - sx * sy) / den;
}

}  // namespace

FredholmTables prepare_fredholm_exact(int m, int n, const Rational& p, int h_min) {
    if (m < 1 || n < 1) throw ArgumentError("prepare_fredholm_exact needs m,n >= 1");
    require_probability(p, "p");
    if (h_min < 0) h_min = 0;
    FredholmTables T;
    T.m = m;
    T.n = n;
    T.h_min = h_min;
    if (h_min >= m) {  // every covered h gives an empty block
        T.i_lo = 1;
        T.i_hi = 0;
        return T;
    }
    const Rational q = Rational(1) - p;
    const Rational r = p / q;
    const Rational inv1pr = Rational(1) / (Rational(1) + r);
    const int i_lo = h_min + 1, i_hi = 2 * m - h_min - 1;
    T.i_lo = i_lo;
    T.i_hi = i_hi;

    // Partial-fraction weights at z = -1: z^m (z-r)^{-m} (1+z)^{-n} has
    // B_k = (1+r)^{-m} [w^{n-k}] (1-w)^m (1 - w/(1+r))^{-m}.
    std::vector<Rational> invp(std::size_t(n), Rational(1));
    for (int b = 1; b < n; ++b) invp[std::size_t(b)] = invp[std::size_t(b - 1)] * inv1pr;
    std::vector<Rational> Tc(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        Rational s = 0;
        for (int a = 0; a <= std::min(c, m); ++a) {
            Rational term = Rational(binomial(m, a)) * Rational(binomial(m + c - a - 1, c - a)) *
                            invp[std::size_t(c - a)];
            s += (a & 1) ? -term : term;
        }
        Tc[std::size_t(c)] = s;
    }
    const Rational invm = rational_pow(inv1pr, m);
    std::vector<Rational> B(std::size_t(n) + 1);  // B[k], k = 1..n
    for (int k = 1; k <= n; ++k) B[std::size_t(k)] = invm * Tc[std::size_t(n - k)];

    // a_i = (-1)^i sum_k B_k C(k+i-1, k-1): the positive-index coefficients
    // of (1 - r/z)^{-m} (1+z)^{-n}
    std::vector<Rational> a(std::size_t(i_hi - i_lo + 1));
    for (int i = i_lo; i <= i_hi; ++i) {
        Rational s = 0;
        for (int k = 1; k <= n; ++k) s += B[std::size_t(k)] * Rational(binomial(k + i - 1, k - 1));
        a[std::size_t(i - i_lo)] = (i & 1) ? -s : s;
    }

    // b_{-i} = [z^{m-i}] (1+z)^n (z-r)^m, zero beyond i = m
    std::vector<Rational> rpow(std::size_t(m) + 1, Rational(1));
    for (int d = 1; d <= m; ++d) rpow[std::size_t(d)] = rpow[std::size_t(d - 1)] * r;
    std::vector<Rational> b(std::size_t(i_hi - i_lo + 1), Rational(0));
    for (int i = i_lo; i <= std::min(i_hi, m); ++i) {
        const int c = m - i;
        Rational s = 0;
        for (int j = std::max(0, c - n); j <= c; ++j) {
            Rational term = Rational(binomial(n, c - j)) * Rational(binomial(m, j)) *
                            rpow[std::size_t(m - j)];
            s += ((m - j) & 1) ? -term : term;
        }
        b[std::size_t(i - i_lo)] = s;
    }

    // Balancing tilt: K(j,k) -> w^{j-k} K(j,k) leaves the determinant alone
    // and maps a_i -> a_i w^i, b_{-i} -> b_{-i} w^{-i}. Choose w so both
    // tilted families have the same (small) log-slope, then store each entry
    // as mantissa * 2^exp so assembly in doubles cannot overflow.
    std::vector<std::pair<double, long>> sa(a.size()), sb(b.size());
    for (std::size_t k = 0; k < a.size(); ++k) sa[k] = split_2exp(a[k]);
    for (std::size_t k = 0; k < b.size(); ++k) sb[k] = split_2exp(b[k]);
    const double slope_a = fitted_slope(sa, i_lo);
    const double slope_b = fitted_slope(sb, i_lo);
    double lw = (slope_b - slope_a) / 2.0;
    lw = std::clamp(lw, -40.0, 40.0);
    long num = std::lround(std::exp2(lw) * double(1 << kTiltDenomBits));
    if (num < 1) num = 1;
    const Rational w = Rational(Integer(num)) / Rational(Integer(1) << kTiltDenomBits);
    const Rational winv = Rational(1) / w;

    Rational wp = rational_pow(w, i_lo);
    Rational wn = rational_pow(winv, i_lo);
    T.a_mant.resize(a.size());
    T.a_exp2.resize(a.size());
    T.b_mant.resize(b.size());
    T.b_exp2.resize(b.size());
    for (int i = i_lo; i <= i_hi; ++i) {
        const std::size_t k = std::size_t(i - i_lo);
        auto [am, ae] = split_2exp(a[k] * wp);
        T.a_mant[k] = am;
        T.a_exp2[k] = ae;
        auto [bm, be] = split_2exp(b[k] * wn);
        T.b_mant[k] = bm;
        T.b_exp2[k] = be;
        if (i < i_hi) {
            wp *= w;
            wn *= winv;
        }
    }
    return T;
}

double cdf_fredholm_exact(const FredholmTables& t, int h) {
    if (h < 0) return 0.0;
    if (h >= t.m) return 1.0;
    if (h < t.h_min) throw ArgumentError("cdf_fredholm_exact: h below the prepared window");
    const int M = t.m - h;
    const int a_lo = h + 1, a_hi = 2 * t.m - h - 1;
    const int b_lo = h + 1, b_hi = t.m;

    long Ea = kZeroExp, Eb = kZeroExp;
    for (int i = a_lo; i <= a_hi; ++i) {
        const std::size_t k = std::size_t(i - t.i_lo);
        if (t.a_mant[k] != 0.0) Ea = std::max(Ea, t.a_exp2[k]);
    }
    for (int i = b_lo; i <= b_hi; ++i) {
        const std::size_t k = std::size_t(i - t.i_lo);
        if (t.b_mant[k] != 0.0) Eb = std::max(Eb, t.b_exp2[k]);
    }
    if (Ea == kZeroExp || Eb == kZeroExp) return 1.0;  // kernel identically zero

    auto scaled = [](double mant, long e, long E) {
        const long d = e - E;
        if (mant == 0.0 || d < -1100) return 0.0;
        return std::ldexp(mant, int(d));
    };
    std::vector<double> av(std::size_t(a_hi - a_lo + 1)), bv(std::size_t(b_hi - b_lo + 1));
    for (int i = a_lo; i <= a_hi; ++i)
        av[std::size_t(i - a_lo)] =
            scaled(t.a_mant[std::size_t(i - t.i_lo)], t.a_exp2[std::size_t(i - t.i_lo)], Ea);
    for (int i = b_lo; i <= b_hi; ++i)
        bv[std::size_t(i - b_lo)] =
            scaled(t.b_mant[std::size_t(i - t.i_lo)], t.b_exp2[std::size_t(i - t.i_lo)], Eb);

    const long rescale = Ea + Eb;
    if (rescale > kMaxKernelExp)
        throw ComputeError("cdf_fredholm_exact: kernel entries exceed double range");
    Eigen::MatrixXd K(M, M);
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < M; ++k) {
            double s = 0.0;
            // a index h+j+l+1, b index h+k+l+1; the b factor vanishes past m
            for (int l = 0; l < M - k; ++l)
                s += av[std::size_t(j + l)] * bv[std::size_t(l + k)];
            const double entry = std::ldexp(s, int(rescale));
            if (!std::isfinite(entry))
                throw ComputeError("cdf_fredholm_exact: kernel entry overflow");
            K(j, k) = entry;
        }
    const Eigen::MatrixXd IK = Eigen::MatrixXd::Identity(M, M) - K;
    return IK.determinant();
}

double cdf_fredholm_exact(int m, int n, const Rational& p, int h) {
    return cdf_fredholm_exact(prepare_fredholm_exact(m, n, p, std::max(h, 0)), h);
}

namespace {

// determinant of a dense rational matrix by exact Gaussian elimination
Rational rational_det(std::vector<std::vector<Rational>>& A) {
    const std::size_t N = A.size();
    Rational det = 1;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        while (piv < N && A[piv][col] == 0) ++piv;
        if (piv == N) return 0;
        if (piv != col) {
            std::swap(A[piv], A[col]);
            det = -det;
        }
        det *= A[col][col];
        for (std::size_t row = col + 1; row < N; ++row) {
            if (A[row][col] == 0) continue;
            const Rational f = A[row][col] / A[col][col];
            for (std::size_t k = col; k < N; ++k) A[row][k] -= f * A[col][k];
        }
    }
    return det;
}

}  // namespace

Rational inhomo_cdf(int m, const std::vector<Rational>& p_list, int h) {
    if (m < 1) throw ArgumentError("inhomo_cdf needs m >= 1");
    if (p_list.empty()) throw ArgumentError("inhomo_cdf needs at least one site probability");
    for (const Rational& pj : p_list) require_probability(pj, "p_j");
    if (h < 0) return 0;
    if (h >= m) return 1;
    const int n = int(p_list.size());

    // elementary symmetric coefficients of prod_j (1 + r_j z)
    std::vector<Rational> poly(std::size_t(n) + 1, Rational(0));
    poly[0] = 1;
    for (int j = 0; j < n; ++j) {
        const Rational rj = p_list[std::size_t(j)] / (Rational(1) - p_list[std::size_t(j)]);
        for (int k = j + 1; k >= 1; --k)
            poly[std::size_t(k)] += rj * poly[std::size_t(k - 1)];
    }
    // phi_k = sum_a C(m+a-1, a) poly[k+a] over 0 <= k+a <= n
    auto phi_at = [&](int k) {
        Rational s = 0;
        for (int a = std::max(0, -k); a <= n - k; ++a)
            s += Rational(binomial(m + a - 1, a)) * poly[std::size_t(k + a)];
        return s;
    };

    Rational det = 1;
    if (h > 0) {
        std::vector<Rational> phi(std::size_t(2 * h - 1));  // indices -(h-1)..(h-1)
        for (int k = -(h - 1); k <= h - 1; ++k) phi[std::size_t(k + h - 1)] = phi_at(k);
        std::vector<std::vector<Rational>> A(static_cast<std::size_t>(h), std::vector<Rational>(static_cast<std::size_t>(h)));
        for (int j = 0; j < h; ++j)
            for (int k = 0; k < h; ++k) A[std::size_t(j)][std::size_t(k)] = phi[std::size_t(j - k + h - 1)];
        det = rational_det(A);
    }
    Rational pref = 1;
    for (const Rational& pj : p_list) pref *= rational_pow(Rational(1) - pj, m);
    return pref * det;
}

DistributionTable inhomo_table(int m, const std::vector<Rational>& p_list) {
    DistributionTable t;
    t.m = m;
    t.n = int(p_list.size());
    t.mode = "odb";
    t.route = "inhomogeneous";
    t.exact = true;
    t.p_exact = p_list.empty() ? Rational(0) : p_list[0];
    t.p_value = p_list.empty() ? 0.0 : to_double(p_list[0]);
    for (int h = 0; h <= m; ++h) {
        Rational c = inhomo_cdf(m, p_list, h);
        t.cdf_value.push_back(to_double(c));
        t.cdf_exact.push_back(std::move(c));
    }
    return t;
}

}  // namespace odb
