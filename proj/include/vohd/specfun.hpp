// SPDX-License-Identifier: Apache-2.0
//
// Self-contained special functions: gamma, log-gamma, digamma, beta, and
// pole-safe gamma ratios. Accuracy contracts: gamma/ln_gamma 1e-13 relative
// (x > 0), digamma 1e-12 absolute, beta 1e-12 relative.
#pragma once

namespace vohd::specfun {

// Gamma function. Reflection formula for negative non-integers.
// Throws pole_error at 0, -1, -2, ... and overflow_error for x > 171.6.
double gamma(double x);

// ln Gamma(x) for x > 0. Throws domain_error for x <= 0.
double ln_gamma(double x);

// Digamma (psi) function. Reflection for negative non-integers.
// Throws pole_error at non-positive integers.
double digamma(double x);

// Beta function B(p,q) = Gamma(p)Gamma(q)/Gamma(p+q) for p, q > 0,
// evaluated as exp(ln_gamma(p)+ln_gamma(q)-ln_gamma(p+q)).
double beta(double p, double q);

// Rising product Gamma(x+p)/Gamma(x) = x(x+1)...(x+p-1), p >= 0.
// Well-defined even where Gamma(x) itself sits at a pole.
double gamma_ratio(double x, int p);

// sin(pi*x) with exact argument reduction; exposed for tests.
double sin_pi(double x);

}  // namespace vohd::specfun
