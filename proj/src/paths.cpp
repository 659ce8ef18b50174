#include "odb/paths.hpp"

#include <algorithm>
#include <array>

namespace odb {

const char* chain_mode_name(ChainMode m) {
    switch (m) {
        case ChainMode::odb: return "odb";
        case ChainMode::weak: return "weak";
        case ChainMode::strict: return "strict";
    }
    return "?";
}

ZeroOneMatrix make_matrix(int m, int n) {
    if (m < 0 || n < 0) throw ArgumentError("matrix dims must be nonnegative");
    ZeroOneMatrix A;
    A.m = m;
    A.n = n;
    A.a.assign(std::size_t(m) * n, 0);
    return A;
}

TwoLineArray two_line_array(const ZeroOneMatrix& A) {
    TwoLineArray w;
    for (int j = 1; j <= A.n; ++j)
        for (int i = 1; i <= A.m; ++i)
            if (A.at(i, j)) w.pairs.emplace_back(j, i);
    return w;
}

ZeroOneMatrix matrix_from_biword(const TwoLineArray& w, int m, int n) {
    ZeroOneMatrix A = make_matrix(m, n);
    for (auto [j, i] : w.pairs) {
        if (i < 1 || i > m || j < 1 || j > n) throw ArgumentError("biword pair out of range");
        A.at(i, j) = 1;
    }
    return A;
}

ZeroOneMatrix lightcone_matrix(const MarkField& field, int x, int t) {
    if (x < 0 || x > t) throw ArgumentError("lightcone needs 0 <= x <= t");
    const int m = t - x, n = x + 1;
    ZeroOneMatrix A = make_matrix(m, n);
    for (int j = 1; j <= n; ++j) {
        const int xp = j - 1;
        for (int i = 1; i <= m; ++i)
            if (field.mark(xp, xp + i - 1)) A.at(i, j) = 1;
    }
    return A;
}

int longest_increasing(const ZeroOneMatrix& A, ChainMode mode) {
    if (A.m == 0 || A.n == 0) return 0;
    const int m = A.m, n = A.n;
    // best[i] = longest admissible chain ending at a processed cell in row i.
    std::vector<int> best(std::size_t(m) + 1, 0);
    std::vector<std::pair<int, int>> deferred;  // (row, value) for strict mode
    for (int j = 1; j <= n; ++j) {
        int run = 0;  // max of best[1..i-1] while i ascends
        deferred.clear();
        for (int i = 1; i <= m; ++i) {
            if (i > 1) run = std::max(run, best[std::size_t(i - 1)]);
            if (!A.at(i, j)) continue;
            switch (mode) {
                case ChainMode::odb:
                    // row strictly up, column weakly up: same-column cells chain
                    best[std::size_t(i)] = std::max(best[std::size_t(i)], run + 1);
                    break;
                case ChainMode::weak:
                    // both weak: may also extend a chain ending in this row
                    best[std::size_t(i)] =
                        std::max(best[std::size_t(i)],
                                 std::max(run, best[std::size_t(i)]) + 1);
                    break;
                case ChainMode::strict:
                    // both strict: only strictly earlier columns may feed in,
                    // so updates wait until the column is done
                    deferred.emplace_back(i, run + 1);
                    break;
            }
        }
        for (auto [i, v] : deferred)
            best[std::size_t(i)] = std::max(best[std::size_t(i)], v);
    }
    return *std::max_element(best.begin(), best.end());
}

PatiencePiles patience_piles(const TwoLineArray& w) {
    PatiencePiles out;
    std::vector<int> tops;  // tops stay weakly increasing left to right
    for (auto [j, i] : w.pairs) {
        (void)j;
        auto it = std::lower_bound(tops.begin(), tops.end(), i);
        const std::size_t k = std::size_t(it - tops.begin());
        if (it == tops.end()) {
            tops.push_back(i);
            out.piles.emplace_back();
        } else {
            tops[k] = i;
        }
        out.piles[k].push_back(i);
    }
    return out;
}

int patience_length(const TwoLineArray& w) { return int(patience_piles(w).piles.size()); }

int l_prime(const MarkField& field, int x, int t) {
    if (x < 0 || x > t) throw ArgumentError("l_prime needs 0 <= x <= t");
    const int K = t - x;
    // Prefix mark counts per column: S[c][k] = #marks (c, t') with t' < k.
    auto column_prefix = [&](int c) {
        std::vector<int> S(std::size_t(K) + 1, 0);
        for (int k = 1; k <= K; ++k) S[std::size_t(k)] = S[std::size_t(k - 1)] + (field.mark(c, k - 1) ? 1 : 0);
        return S;
    };
    std::vector<int> acc = column_prefix(0);  // acc[k] = best over columns <= c with split at k
    for (int c = 1; c <= x; ++c) {
        std::vector<int> S = column_prefix(c);
        std::vector<int> next(std::size_t(K) + 1, 0);
        int run = INT32_MIN;
        for (int k = 0; k <= K; ++k) {
            run = std::max(run, acc[std::size_t(k)] - S[std::size_t(k)]);
            next[std::size_t(k)] = run + S[std::size_t(k)];
        }
        acc.swap(next);
    }
    return acc[std::size_t(K)];
}

double l_double_prime(const MarkField& field, int x, int t, double p) {
    if (x < 0 || x > t) throw ArgumentError("l_double_prime needs 0 <= x <= t");
    const int K = t;
    auto centered_prefix = [&](int c) {
        std::vector<double> S(std::size_t(K) + 1, 0.0);
        int count = 0;
        for (int k = 1; k <= K; ++k) {
            count += field.mark(c, k - 1) ? 1 : 0;
            S[std::size_t(k)] = count - p * k;
        }
        return S;
    };
    std::vector<double> acc = centered_prefix(0);
    for (int c = 1; c <= x; ++c) {
        std::vector<double> S = centered_prefix(c);
        std::vector<double> next(std::size_t(K) + 1, 0.0);
        double run = -1e300;
        for (int k = 0; k <= K; ++k) {
            run = std::max(run, acc[std::size_t(k)] - S[std::size_t(k)]);
            next[std::size_t(k)] = run + S[std::size_t(k)];
        }
        acc.swap(next);
    }
    return acc[std::size_t(K)];
}

namespace {

// Longest-chain DP on a bitmask matrix, identical logic to
// longest_increasing but on packed bits; m*n <= 25.
int chain_of_mask(std::uint32_t mask, int m, int n, ChainMode mode) {
    std::array<int, 26> best{};
    std::array<int, 26> defer_row{};
    std::array<int, 26> defer_val{};
    int ans = 0;
    for (int j = 0; j < n; ++j) {
        int run = 0;
        int ndef = 0;
        for (int i = 0; i < m; ++i) {
            if (i > 0) run = std::max(run, best[std::size_t(i - 1)]);
            if (!(mask >> (i * n + j) & 1u)) continue;
            switch (mode) {
                case ChainMode::odb:
                    best[std::size_t(i)] = std::max(best[std::size_t(i)], run + 1);
                    ans = std::max(ans, best[std::size_t(i)]);
                    break;
                case ChainMode::weak:
                    best[std::size_t(i)] =
                        std::max(best[std::size_t(i)], std::max(run, best[std::size_t(i)]) + 1);
                    ans = std::max(ans, best[std::size_t(i)]);
                    break;
                case ChainMode::strict:
                    defer_row[std::size_t(ndef)] = i;
                    defer_val[std::size_t(ndef)] = run + 1;
                    ++ndef;
                    break;
            }
        }
        for (int d = 0; d < ndef; ++d) {
            best[std::size_t(defer_row[std::size_t(d)])] =
                std::max(best[std::size_t(defer_row[std::size_t(d)])], defer_val[std::size_t(d)]);
            ans = std::max(ans, best[std::size_t(defer_row[std::size_t(d)])]);
        }
    }
    return ans;
}

}  // namespace

DistributionTable brute_force_cdf(int m, int n, const Rational& p, ChainMode mode,
                                  bool force_lower_left_zero) {
    if (m < 1 || n < 1) throw ArgumentError("brute_force_cdf needs m,n >= 1");
    if (m * n > 25) throw ArgumentError("brute_force_cdf capped at m*n <= 25");
    require_probability(p, "p");

    const int cells = m * n;
    const int free_cells = force_lower_left_zero ? cells - 1 : cells;
    // counts[k][L]: configurations with k ones and longest chain exactly L
    const int lmax_possible = cells;
    std::vector<std::uint64_t> counts(std::size_t(free_cells + 1) * (lmax_possible + 1), 0);

    const std::uint32_t total = 1u << cells;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (force_lower_left_zero && (mask & 1u)) continue;
        const int k = __builtin_popcount(mask);
        const int L = chain_of_mask(mask, m, n, mode);
        ++counts[std::size_t(k) * (lmax_possible + 1) + L];
    }

    const Rational q = Rational(1) - p;
    std::vector<Rational> pk(std::size_t(free_cells) + 1), qk(std::size_t(free_cells) + 1);
    pk[0] = 1;
    qk[0] = 1;
    for (int k = 1; k <= free_cells; ++k) {
        pk[std::size_t(k)] = pk[std::size_t(k - 1)] * p;
        qk[std::size_t(k)] = qk[std::size_t(k - 1)] * q;
    }

    int lmax = 0;
    for (int k = 0; k <= free_cells; ++k)
        for (int L = 0; L <= lmax_possible; ++L)
            if (counts[std::size_t(k) * (lmax_possible + 1) + L]) lmax = std::max(lmax, L);

    DistributionTable t;
    t.m = m;
    t.n = n;
    t.mode = chain_mode_name(mode);
    t.route = "brute";
    t.exact = true;
    t.p_exact = p;
    t.p_value = to_double(p);
    Rational cum = 0;
    std::vector<Rational> pmf(std::size_t(lmax) + 1, Rational(0));
    for (int k = 0; k <= free_cells; ++k)
        for (int L = 0; L <= lmax; ++L) {
            const std::uint64_t c = counts[std::size_t(k) * (lmax_possible + 1) + L];
            if (!c) continue;
            pmf[std::size_t(L)] += Rational(Integer(c)) * pk[std::size_t(k)] *
                                   qk[std::size_t(free_cells - k)];
        }
    for (int h = 0; h <= lmax; ++h) {
        cum += pmf[std::size_t(h)];
        t.cdf_exact.push_back(cum);
        t.cdf_value.push_back(to_double(cum));
    }
    return t;
}

}  // namespace odb
