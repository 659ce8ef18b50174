#pragma once

#include <string>
#include <vector>

#include "odb/rational.hpp"

namespace odb {

// Map h -> Prob(H <= h) for h = 0..h_max, exact (rational) or numeric,
// tagged with the route that produced it.
struct DistributionTable {
    int m = 0;
    int n = 0;
    std::string mode = "odb";
    std::string route;  // brute | partition | toeplitz | fredholm | inhomogeneous
    bool exact = false;
    Rational p_exact = 0;
    double p_value = 0.0;  // always set (to_double of p_exact when exact)

    std::vector<Rational> cdf_exact;  // used when exact
    std::vector<double> cdf_value;    // always set

    int h_max() const { return int(cdf_value.size()) - 1; }
    double value_at(int h) const;      // 0 for h < 0, 1 beyond the table
    Rational exact_at(int h) const;    // same, rational (requires exact)
};

// JSON per the shared schema:
// { "m":, "n":, "p":"num/den", "mode":, "route":, "cdf":[{"h":,"prob":...}] }
// exact tables carry "prob" as "num/den" strings, numeric ones as numbers.
std::string table_to_json(const DistributionTable& t);
DistributionTable table_from_json(const std::string& text);

}  // namespace odb
