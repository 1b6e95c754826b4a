// SPDX-License-Identifier: Apache-2.0
//
// Error taxonomy. Everything a caller may want to distinguish gets its own
// type; the CLI maps these onto exit codes (config -> 2, numerical -> 3).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vohd {

// Root of all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad inputs detectable before any numerics run: malformed expressions,
// out-of-range orders, inconsistent grids, unusable CLI configuration.
struct config_error : error {
    using error::error;
};

// Expression text that does not parse. `offset` is the byte position of the
// first offending character (== text size for unexpected end of input).
struct syntax_error : config_error {
    syntax_error(const std::string& what, std::size_t offset)
        : config_error(what + " at offset " + std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

// Numerical failures while evaluating: domain violations, poles, overflow,
// quadrature that will not converge.
struct numerical_error : error {
    using error::error;
};

// Function evaluated outside its domain (ln of a non-positive value,
// division by zero, fractional power of a negative base, ...).
struct domain_error : numerical_error {
    using numerical_error::numerical_error;
};

// Gamma/digamma at a non-positive integer.
struct pole_error : numerical_error {
    using numerical_error::numerical_error;
};

// Result would exceed double range (gamma beyond ~171.6).
struct overflow_error : numerical_error {
    using numerical_error::numerical_error;
};

// Quadrature exhausted its refinement levels without meeting tolerance.
struct convergence_error : numerical_error {
    using numerical_error::numerical_error;
};

// Evaluation point too close to the interval endpoint for the requested
// quantity to mean anything (t=a for type 1, |t-endpoint| < 1e-6 for the
// ln(ln)-bearing types 2/3).
struct degenerate_point_error : numerical_error {
    using numerical_error::numerical_error;
};

}  // namespace vohd
