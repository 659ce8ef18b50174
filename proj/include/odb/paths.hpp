#pragma once

#include <cstdint>
#include <vector>

#include "odb/growth.hpp"
#include "odb/table.hpp"

namespace odb {

// Chain monotonicity mode for longest-path computations:
//   odb    - row index strictly increasing, column index weakly increasing
//   weak   - both weakly increasing
//   strict - both strictly increasing
enum class ChainMode { odb, weak, strict };

const char* chain_mode_name(ChainMode m);

// (0,1)-matrix with row 1 at the BOTTOM (column 1 leftmost). All code that
// cares about the orientation goes through lightcone_matrix, so nothing else
// needs to reason about it.
struct ZeroOneMatrix {
    int m = 0;  // rows
    int n = 0;  // cols
    std::vector<std::uint8_t> a;  // (i-1)*n + (j-1), i = row from bottom

    std::uint8_t at(int i, int j) const { return a[std::size_t(i - 1) * n + (j - 1)]; }
    std::uint8_t& at(int i, int j) { return a[std::size_t(i - 1) * n + (j - 1)]; }
};

ZeroOneMatrix make_matrix(int m, int n);

// Biword of a (0,1)-matrix: pairs (j, i), j weakly increasing, i strictly
// increasing within equal j.
struct TwoLineArray {
    std::vector<std::pair<int, int>> pairs;
};

TwoLineArray two_line_array(const ZeroOneMatrix& A);
ZeroOneMatrix matrix_from_biword(const TwoLineArray& w, int m, int n);

// Backwards-lightcone extraction: cell (i,j) of the (t-x) x (x+1) matrix is
// the mark at column x' = j-1, time t' = x' + i - 1.
ZeroOneMatrix lightcone_matrix(const MarkField& field, int x, int t);

// Exact maximum chain length under the mode's partial order, O(mn) DP.
int longest_increasing(const ZeroOneMatrix& A, ChainMode mode);

// Patience sorting of the biword's bottom row, left to right; a number goes
// on the leftmost pile whose showing (top) number is >= it. Pile count
// equals longest_increasing(A, ChainMode::odb).
struct PatiencePiles {
    std::vector<std::vector<int>> piles;  // each pile bottom -> top
};

PatiencePiles patience_piles(const TwoLineArray& w);
int patience_length(const TwoLineArray& w);

// Column-relaxed longest path: marks grouped per column with only the
// within-column time-increase constraint kept; satisfies |L - L'| <= x.
int l_prime(const MarkField& field, int x, int t);

// Centered variant: same split DP on S^c(k) - p k with the final split at t
// instead of t - x; satisfies |l_prime - p t - l_double_prime| <= 5x. Under
// diffusive scaling this is the Brownian functional M_x evaluated on the
// mark-count walks.
double l_double_prime(const MarkField& field, int x, int t, double p);

// Exact rational distribution of the longest chain over iid Bernoulli(p)
// matrices, by exhaustive enumeration (mn <= 25). With
// force_lower_left_zero the cell (1,1) is pinned to 0 and excluded from the
// product measure.
DistributionTable brute_force_cdf(int m, int n, const Rational& p, ChainMode mode,
                                  bool force_lower_left_zero = false);

}  // namespace odb
