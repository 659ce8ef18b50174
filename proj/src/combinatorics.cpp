#include "odb/combinatorics.hpp"

#include <algorithm>

namespace odb {

namespace {
constexpr int kPartitionBoxCap = 60;  // max cells of the summation box
constexpr int kEnumerateCap = 8;      // max cells for the enumeration oracle
}  // namespace

bool Partition::valid() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) return false;
        if (i > 0 && parts[i] > parts[i - 1]) return false;
    }
    return true;
}

Partition Partition::conjugate() const {
    Partition c;
    if (parts.empty()) return c;
    c.parts.assign(std::size_t(parts[0]), 0);
    for (int p : parts)
        for (int j = 0; j < p; ++j) ++c.parts[std::size_t(j)];
    return c;
}

Integer count_ssyt(const Partition& lam, int M) {
    if (!lam.valid()) throw ArgumentError("count_ssyt: not a partition");
    if (M < 0) throw ArgumentError("count_ssyt: M must be >= 0");
    if (lam.parts.empty()) return 1;
    if (lam.length() > M) return 0;
    const Partition conj = lam.conjugate();
    Integer num = 1, den = 1;
    for (int i = 1; i <= lam.length(); ++i) {
        for (int j = 1; j <= lam.parts[std::size_t(i - 1)]; ++j) {
            const int hook = lam.parts[std::size_t(i - 1)] - j + conj.parts[std::size_t(j - 1)] - i + 1;
            num *= M + j - i;
            den *= hook;
        }
    }
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw ComputeError("count_ssyt: hook-content product not integral");
    return q;
}

namespace {

Integer enumerate_cell(const Partition& lam, std::vector<std::vector<int>>& fill, int i, int j, int M) {
    if (i == lam.length()) return 1;
    const int row_len = lam.parts[std::size_t(i)];
    int ni = i, nj = j + 1;
    if (nj == row_len) {
        ni = i + 1;
        nj = 0;
    }
    int lo = 1;
    if (j > 0) lo = std::max(lo, fill[std::size_t(i)][std::size_t(j - 1)]);            // rows weakly increase
    if (i > 0 && j < lam.parts[std::size_t(i - 1)])
        lo = std::max(lo, fill[std::size_t(i - 1)][std::size_t(j)] + 1);               // columns strictly increase
    Integer total = 0;
    for (int v = lo; v <= M; ++v) {
        fill[std::size_t(i)][std::size_t(j)] = v;
        total += enumerate_cell(lam, fill, ni, nj, M);
    }
    return total;
}

}  // namespace

Integer count_ssyt_enumerate(const Partition& lam, int M) {
    if (!lam.valid()) throw ArgumentError("count_ssyt_enumerate: not a partition");
    if (M < 0) throw ArgumentError("count_ssyt_enumerate: M must be >= 0");
    if (lam.size() > kEnumerateCap) throw ArgumentError("count_ssyt_enumerate: shape too large");
    if (lam.parts.empty()) return 1;
    std::vector<std::vector<int>> fill;
    for (int p : lam.parts) fill.emplace_back(std::size_t(p), 0);
    return enumerate_cell(lam, fill, 0, 0, M);
}

std::vector<Partition> partitions_in_box(int rows, int cols) {
    if (rows < 0 || cols < 0) throw ArgumentError("partitions_in_box: negative box");
    std::vector<Partition> out;
    Partition cur;
    // Depth-first over part values; depth k chooses part k+1 <= previous.
    auto rec = [&](auto&& self, int depth, int maxpart) -> void {
        out.push_back(cur);
        if (depth == rows) return;
        for (int v = 1; v <= maxpart; ++v) {
            cur.parts.push_back(v);
            self(self, depth + 1, v);
            cur.parts.pop_back();
        }
    };
    rec(rec, 0, cols);
    return out;
}

Rational cdf_partition_sum(int m, int n, const Rational& p, int h) {
    if (m < 1 || n < 1) throw ArgumentError("cdf_partition_sum needs m,n >= 1");
    require_probability(p, "p");
    if (h < 0) return 0;
    const int rows = std::min(h, m);
    if (rows * n > kPartitionBoxCap)
        throw ArgumentError("cdf_partition_sum: summation box exceeds cap");
    const Rational q = Rational(1) - p;
    const Rational r = p / q;
    Rational sum = 0;
    for (const Partition& lam : partitions_in_box(rows, n)) {
        const Integer dm = count_ssyt(lam, m);
        const Integer dn = count_ssyt(lam.conjugate(), n);
        if (dm == 0 || dn == 0) continue;
        sum += rational_pow(r, lam.size()) * Rational(dm) * Rational(dn);
    }
    return rational_pow(q, m * n) * sum;
}

DistributionTable partition_sum_table(int m, int n, const Rational& p) {
    DistributionTable t;
    t.m = m;
    t.n = n;
    t.mode = "odb";
    t.route = "partition";
    t.exact = true;
    t.p_exact = p;
    t.p_value = to_double(p);
    for (int h = 0; h <= m; ++h) {
        Rational c = cdf_partition_sum(m, n, p, h);
        t.cdf_value.push_back(to_double(c));
        t.cdf_exact.push_back(std::move(c));
    }
    return t;
}

int rsk_first_row(const TwoLineArray& w) {
    std::vector<int> row;
    for (auto [j, i] : w.pairs) {
        (void)j;
        auto it = std::lower_bound(row.begin(), row.end(), i);
        if (it == row.end())
            row.push_back(i);
        else
            *it = i;
    }
    return int(row.size());
}

}  // namespace odb
