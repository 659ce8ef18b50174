#pragma once

#include <vector>

#include "odb/paths.hpp"
#include "odb/rational.hpp"

namespace odb {

// Integer partition with weakly decreasing positive parts.
struct Partition {
    std::vector<int> parts;

    int size() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    int length() const { return int(parts.size()); }
    Partition conjugate() const;
    bool valid() const;
};

// Number of semistandard Young tableaux of shape lam with entries in
// {1..M}, by the hook-content product. Zero when the shape has more
// than M rows.
Integer count_ssyt(const Partition& lam, int M);

// Same count by direct backtracking enumeration; oracle for shapes of
// size <= 8 cells.
Integer count_ssyt_enumerate(const Partition& lam, int M);

// Every partition fitting in a rows x cols box (at most `rows` parts,
// each <= cols), empty partition included.
std::vector<Partition> partitions_in_box(int rows, int cols);

// Exact Prob(height <= h) for the m x n corner model as a partition sum:
// (1-p)^{mn} * sum over shapes in the min(h,m) x n box of
// r^{|lam|} d_lam(m) d_lam'(n), with r = p/(1-p).
Rational cdf_partition_sum(int m, int n, const Rational& p, int h);

// Distribution table for h = 0..m assembled from cdf_partition_sum.
DistributionTable partition_sum_table(int m, int n, const Rational& p);

// Length of the first row of the insertion tableau when the bottom row
// of the biword is row-bumped (an element bumps the leftmost entry >= it);
// equals the longest strictly increasing subsequence length.
int rsk_first_row(const TwoLineArray& w);

}  // namespace odb
