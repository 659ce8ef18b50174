#include <mpfr.h>

#include <cmath>
#include <vector>

#include "odb/asymptotics.hpp"

namespace odb {

namespace {

constexpr int kCriticalPrec = 256;  // bits; double LU loses these tiny determinants
constexpr int kCriticalCap = 25;

// Minimal RAII wrapper so kernel matrices can live in std::vector.
struct Mp {
    mpfr_t v;
    Mp() {
        mpfr_init2(v, kCriticalPrec);
        mpfr_set_zero(v, 1);
    }
    Mp(const Mp& o) {
        mpfr_init2(v, kCriticalPrec);
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    Mp& operator=(const Mp& o) {
        mpfr_set(v, o.v, MPFR_RNDN);
        return *this;
    }
    ~Mp() { mpfr_clear(v); }
};

// Entry (j,k) of the discrete critical-window kernel, d = k - j:
//   K(j,k) = (1/2pi) sum_{l=0}^{floor((dh-k-1)/2)} sin(pi d/2) Gamma(l + d/2) / l!
// where for even d the sin*Gamma product is the finite limit
//   (-1)^l pi / (-d/2 - l)!   when l + d/2 <= 0, and 0 otherwise.
void kernel_entry(Mp& out, int j, int k, int dh, const mpfr_t pi) {
    const int d = k - j;
    const int lmax = (dh - k - 1) / 2;
    mpfr_set_zero(out.v, 1);
    mpfr_t term, fac;
    mpfr_init2(term, kCriticalPrec);
    mpfr_init2(fac, kCriticalPrec);
    for (int l = 0; l <= lmax; ++l) {
        if (d % 2 != 0) {
            // sin(pi d/2) = (-1)^((d-1)/2), exact for odd d
            mpfr_set_si(term, 2 * l + d, MPFR_RNDN);
            mpfr_div_ui(term, term, 2, MPFR_RNDN);  // l + d/2, a half-integer
            mpfr_gamma(term, term, MPFR_RNDN);
            mpfr_fac_ui(fac, static_cast<unsigned long>(l), MPFR_RNDN);
            mpfr_div(term, term, fac, MPFR_RNDN);
            const int half = (d - 1) / 2;
            if (half % 2 != 0) mpfr_neg(term, term, MPFR_RNDN);
            mpfr_add(out.v, out.v, term, MPFR_RNDN);
        } else {
            const int z = l + d / 2;
            if (z > 0) continue;  // sin vanishes, Gamma finite
            mpfr_fac_ui(fac, static_cast<unsigned long>(-z), MPFR_RNDN);
            mpfr_div(term, pi, fac, MPFR_RNDN);
            mpfr_fac_ui(fac, static_cast<unsigned long>(l), MPFR_RNDN);
            mpfr_div(term, term, fac, MPFR_RNDN);
            if (l % 2 != 0) mpfr_neg(term, term, MPFR_RNDN);
            mpfr_add(out.v, out.v, term, MPFR_RNDN);
        }
    }
    mpfr_div(out.v, out.v, pi, MPFR_RNDN);
    mpfr_div_ui(out.v, out.v, 2, MPFR_RNDN);
    mpfr_clear(term);
    mpfr_clear(fac);
}

}  // namespace

double critical_prob(int dh) {
    if (dh < 0) throw ArgumentError("critical_prob: dh must be >= 0");
    if (dh > kCriticalCap) throw ArgumentError("critical_prob: dh above supported range");
    if (dh == 0) return 1.0;
    mpfr_t pi;
    mpfr_init2(pi, kCriticalPrec);
    mpfr_const_pi(pi, MPFR_RNDN);
    const std::size_t n = std::size_t(dh);
    std::vector<Mp> M(n * n);
    for (int j = 0; j < dh; ++j)
        for (int k = 0; k < dh; ++k) {
            Mp& e = M[std::size_t(j) * n + std::size_t(k)];
            kernel_entry(e, j, k, dh, pi);
            mpfr_neg(e.v, e.v, MPFR_RNDN);
            if (j == k) mpfr_add_ui(e.v, e.v, 1, MPFR_RNDN);
        }
    mpfr_clear(pi);
    // Gaussian elimination with partial pivoting at extended precision
    mpfr_t factor, tmp;
    mpfr_init2(factor, kCriticalPrec);
    mpfr_init2(tmp, kCriticalPrec);
    int sign = 1;
    bool singular = false;
    for (std::size_t c = 0; c < n && !singular; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (mpfr_cmpabs(M[r * n + c].v, M[piv * n + c].v) > 0) piv = r;
        if (mpfr_zero_p(M[piv * n + c].v)) {
            singular = true;
            break;
        }
        if (piv != c) {
            for (std::size_t cc = 0; cc < n; ++cc) std::swap(M[piv * n + cc], M[c * n + cc]);
            sign = -sign;
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            mpfr_div(factor, M[r * n + c].v, M[c * n + c].v, MPFR_RNDN);
            for (std::size_t cc = c; cc < n; ++cc) {
                mpfr_mul(tmp, factor, M[c * n + cc].v, MPFR_RNDN);
                mpfr_sub(M[r * n + cc].v, M[r * n + cc].v, tmp, MPFR_RNDN);
            }
        }
    }
    double out = 0.0;
    if (!singular) {
        mpfr_set_si(tmp, sign, MPFR_RNDN);
        for (std::size_t c = 0; c < n; ++c) mpfr_mul(tmp, tmp, M[c * n + c].v, MPFR_RNDN);
        out = mpfr_get_d(tmp, MPFR_RNDN);
    }
    mpfr_clear(factor);
    mpfr_clear(tmp);
    return out;
}

double critical_prob_closed_form(int dh) {
    // Rational coefficients of pi^{-k}. The terms are O(1) while the sum
    // shrinks to 1e-20 by dh = 9, so the cancellation must happen at
    // extended precision; double evaluation keeps no correct digits there.
    struct Term {
        long num, den;
        int k;
    };
    static const std::vector<std::vector<Term>> table = {
        {{1, 1, 0}},
        {{1, 2, 0}},
        {{1, 4, 0}, {-1, 2, 1}},
        {{1, 8, 0}, {-3, 8, 1}},
        {{1, 16, 0}, {-29, 96, 1}, {1, 3, 2}},
        {{1, 32, 0}, {-145, 768, 1}, {41, 144, 2}},
        {{1, 64, 0}, {-1249, 10240, 1}, {1169, 3840, 2}, {-32, 135, 3}},
        {{1, 128, 0}, {-8743, 122880, 1}, {198827, 921600, 2}, {-49, 225, 3}},
        {{1, 256, 0},
         {-145603, 3440640, 1},
         {5773487, 34406400, 2},
         {-10289, 36000, 3},
         {4096, 23625, 4}},
        {{1, 512, 0},
         {-436809, 18350080, 1},
         {279234531, 2569011200, 2},
         {-5528469, 25088000, 3},
         {15376, 91875, 4}},
    };
    if (dh < 0 || dh >= int(table.size()))
        throw ArgumentError("critical_prob_closed_form: dh outside tabulated range 0..9");
    mpfr_t pi, term, acc;
    mpfr_init2(pi, kCriticalPrec);
    mpfr_init2(term, kCriticalPrec);
    mpfr_init2(acc, kCriticalPrec);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_zero(acc, 1);
    for (const Term& t : table[std::size_t(dh)]) {
        mpfr_set_si(term, t.num, MPFR_RNDN);
        mpfr_div_si(term, term, t.den, MPFR_RNDN);
        for (int i = 0; i < t.k; ++i) mpfr_div(term, term, pi, MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
    }
    const double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clear(pi);
    mpfr_clear(term);
    mpfr_clear(acc);
    return out;
}

}  // namespace odb
