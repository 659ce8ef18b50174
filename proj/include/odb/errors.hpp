#pragma once

#include <stdexcept>
#include <string>

namespace odb {

// Bad arguments or preconditions (wrong dims, out-of-range parameters,
// a route asked to do something it does not support). CLI exit code 2.
struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Numeric failure discovered at run time (quadrature did not converge,
// iteration cap hit, determinant unusable). CLI exit code 1.
struct ComputeError : std::runtime_error {
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace odb
