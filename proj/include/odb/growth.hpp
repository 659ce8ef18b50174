#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "odb/errors.hpp"

namespace odb {

enum class Variant { odb, weak, strict, inhomogeneous };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// The random set of marked space-time cells. Marks are Bernoulli(p_x) draws
// keyed by (seed, x, t): lazy by default (nothing stored), or an explicit
// stored grid for tests and forced configurations.
struct MarkField {
    int x_max = 0;
    int t_max = 0;
    std::vector<double> probabilities;  // size 1 (uniform) or x_max+1 (per site)
    std::uint64_t seed = 0;
    bool explicit_marks = false;
    std::vector<std::uint8_t> grid;  // row t * (x_max+1) + x, only when explicit

    double prob_at(int x) const;
    bool mark(int x, int t) const;  // false outside the window
};

MarkField random_mark_field(int x_max, int t_max, std::vector<double> probabilities,
                            std::uint64_t seed);
MarkField explicit_mark_field(int x_max, int t_max,
                              const std::vector<std::pair<int, int>>& marks);

// Height function on the window 0 <= x <= x_max, 0 <= t <= t_max.
// Unreached sites carry the -infinity sentinel; sentinel arithmetic
// saturates (never incremented back into the finite range).
struct HeightTrace {
    static constexpr std::int64_t neg_inf = INT64_MIN / 4;

    int x_max = 0;
    int t_max = 0;
    Variant variant = Variant::odb;
    std::vector<std::int64_t> heights;  // index t * (x_max+1) + x

    std::int64_t at(int x, int t) const { return heights[std::size_t(t) * (x_max + 1) + x]; }
    std::int64_t& at(int x, int t) { return heights[std::size_t(t) * (x_max + 1) + x]; }
};

// Evolves the corner initial condition h_0(0)=0, h_0(x>0)=-inf under the
// variant's update rules, consuming the coin at (x,t) for the step t -> t+1.
HeightTrace simulate(Variant variant, int x_max, int t_max, const MarkField& field);
HeightTrace simulate(Variant variant, int x_max, int t_max,
                     std::vector<double> probabilities, std::uint64_t seed);

// Throws ComputeError on any violated trace invariant (time monotonicity,
// Lipschitz bound, reachability pattern, per-variant height range).
void validate(const HeightTrace& trace);

// CSV export, header "x,t,h", -infinity written as the literal "-inf".
std::string trace_to_csv(const HeightTrace& trace);

}  // namespace odb
