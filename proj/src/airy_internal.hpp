#pragma once

namespace odb::detail {

// Ai and Ai' without the public domain guard; used by kernel builders.
// x > 40 short-circuits to 0 (|Ai| < 1e-140 there); x below -25 throws.
void airy_eval(double x, double& ai, double& aip, bool kernel_cutoff);

inline double airy_kernel_value(double x) {
    double ai = 0.0, aip = 0.0;
    airy_eval(x, ai, aip, true);
    return ai;
}

}  // namespace odb::detail
